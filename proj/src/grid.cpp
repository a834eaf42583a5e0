#include "ks1d/grid.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "ks1d/errors.hpp"

namespace ks1d {

Grid make_grid(int n_cells) {
  if (n_cells < 4) {
    std::ostringstream os;
    os << "grid needs at least 4 cells, got " << n_cells;
    throw SizeError(os.str());
  }
  return Grid{n_cells, 1.0 / n_cells};
}

double cell_integral(std::span<const double> w, const Grid& grid) {
  if (w.size() != grid.size()) throw SizeError("cell_integral: length does not match grid");
  // Neumaier summation; mass conservation is checked at the 1e-12 level.
  double sum = 0.0;
  double comp = 0.0;
  for (double x : w) {
    const double t = sum + x;
    if (std::abs(sum) >= std::abs(x)) {
      comp += (sum - t) + x;
    } else {
      comp += (x - t) + sum;
    }
    sum = t;
  }
  return (sum + comp) * grid.dx;
}

void validate(const InitialCondition& ic) {
  if (!std::isfinite(ic.mass) || ic.mass <= 0.0) throw ConfigError("ic.mass", "must be positive");
  if (ic.family == IcFamily::cosine && !(ic.amplitude >= 0.0 && ic.amplitude < 1.0)) {
    throw ConfigError("ic.amplitude", "must lie in [0, 1)");
  }
  if (ic.family == IcFamily::bump) {
    if (!std::isfinite(ic.width) || ic.width <= 0.0) throw ConfigError("ic.width", "must be positive");
    if (!(ic.center >= 0.0 && ic.center <= 1.0)) throw ConfigError("ic.center", "must lie in [0, 1]");
  }
}

State make_initial_state(const Grid& grid, const InitialCondition& ic) {
  validate(ic);
  State state;
  state.u.resize(grid.size());
  for (int i = 0; i < grid.n_cells; ++i) {
    const double x = grid.center(i);
    switch (ic.family) {
      case IcFamily::constant:
        state.u[i] = ic.mass;
        break;
      case IcFamily::cosine:
        state.u[i] = ic.mass * (1.0 + ic.amplitude * std::cos(std::numbers::pi * x));
        break;
      case IcFamily::bump: {
        const double z = (x - ic.center) / ic.width;
        state.u[i] = std::exp(-z * z);
        break;
      }
    }
  }
  if (ic.family != IcFamily::constant) {
    const double raw_mass = cell_integral(state.u, grid);
    if (!(raw_mass > 0.0)) throw DomainError("initial condition has no mass on this grid");
    const double scale = ic.mass / raw_mass;
    for (double& x : state.u) x *= scale;
  }
  if (std::any_of(state.u.begin(), state.u.end(), [](double x) { return !(x >= 0.0); })) {
    throw DomainError("initial density is negative somewhere");
  }
  switch (ic.v0_mode) {
    case V0Mode::equal_to_u0:
      state.v = state.u;
      break;
    case V0Mode::constant_mass:
      state.v.assign(grid.size(), ic.mass);
      break;
  }
  return state;
}

std::string to_string(IcFamily family) {
  switch (family) {
    case IcFamily::constant: return "constant";
    case IcFamily::cosine: return "cosine";
    case IcFamily::bump: return "bump";
  }
  return "?";
}

std::string to_string(V0Mode mode) {
  switch (mode) {
    case V0Mode::equal_to_u0: return "equal_to_u0";
    case V0Mode::constant_mass: return "constant_mass";
  }
  return "?";
}

IcFamily ic_family_from_string(const std::string& name) {
  if (name == "constant") return IcFamily::constant;
  if (name == "cosine") return IcFamily::cosine;
  if (name == "bump") return IcFamily::bump;
  throw ConfigError("ic.family", "unknown family '" + name + "'");
}

V0Mode v0_mode_from_string(const std::string& name) {
  if (name == "equal_to_u0") return V0Mode::equal_to_u0;
  if (name == "constant_mass") return V0Mode::constant_mass;
  throw ConfigError("ic.v0_mode", "unknown mode '" + name + "'");
}

}  // namespace ks1d
