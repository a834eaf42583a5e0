#pragma once

#include <span>
#include <string>
#include <vector>

namespace ks1d {

/// Uniform cell-centred mesh on [0, 1]. Cell i covers [i dx, (i+1) dx];
/// faces are numbered 0..n_cells, faces 0 and n_cells being the walls.
struct Grid {
  int n_cells = 0;
  double dx = 0.0;

  double center(int i) const { return (i + 0.5) * dx; }
  double face(int j) const { return j * dx; }
  std::size_t size() const { return static_cast<std::size_t>(n_cells); }
};

Grid make_grid(int n_cells);

/// Cell averages of the density u and the chemoattractant v at time t.
struct State {
  double t = 0.0;
  std::vector<double> u;
  std::vector<double> v;
};

enum class IcFamily { constant, cosine, bump };
enum class V0Mode { equal_to_u0, constant_mass };

struct InitialCondition {
  IcFamily family = IcFamily::cosine;
  double mass = 1.0;
  double amplitude = 0.5;  // cosine only, in [0, 1)
  double width = 0.1;      // bump only
  double center = 0.5;     // bump only
  V0Mode v0_mode = V0Mode::equal_to_u0;
};

/// Samples the requested family on the cell centres and rescales so that the
/// midpoint-rule mass equals ic.mass.
State make_initial_state(const Grid& grid, const InitialCondition& ic);

/// Throws ConfigError naming the offending field if ic is not admissible.
void validate(const InitialCondition& ic);

/// Midpoint-rule integral sum_i w_i dx with compensated summation.
double cell_integral(std::span<const double> w, const Grid& grid);

std::string to_string(IcFamily family);
std::string to_string(V0Mode mode);
IcFamily ic_family_from_string(const std::string& name);
V0Mode v0_mode_from_string(const std::string& name);

}  // namespace ks1d
