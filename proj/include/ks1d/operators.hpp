#pragma once

#include <span>
#include <vector>

#include "ks1d/diffusion_model.hpp"
#include "ks1d/grid.hpp"

namespace ks1d {

// Face fields have n_cells + 1 entries. Gradients and fluxes are zero on the
// two wall faces, which is how the zero-flux boundary condition enters.

/// (w_j - w_{j-1}) / dx on interior faces, 0 on the walls.
std::vector<double> face_gradient(std::span<const double> w, const Grid& grid);

/// (f_{i+1} - f_i) / dx for a face field f.
std::vector<double> cell_divergence(std::span<const double> face_field, const Grid& grid);

/// Neumann Laplacian: cell_divergence(face_gradient(w)).
std::vector<double> laplacian(std::span<const double> w, const Grid& grid);

/// a(u_bar) du/dx - u_bar dv/dx on interior faces with u_bar the arithmetic
/// face average; zero on the walls.
std::vector<double> total_flux(const State& state, const DiffusionModel& model, const Grid& grid);

struct SystemRhs {
  std::vector<double> du_dt;
  std::vector<double> dv_dt;
};

/// Semi-discrete right-hand side of the Keller-Segel system.
SystemRhs system_rhs(const State& state, const DiffusionModel& model, const Grid& grid);

/// v_t taken from the v-equation (Laplacian v - v + u); no time differencing.
std::vector<double> vt_field(const State& state, const Grid& grid);

/// Which right-hand side the integrator advances.
///  keller_segel  - the system above.
///  forced_growth - blowup-detector surrogate: du/dt = u^2 in every cell
///                  (diffusion and taxis off), v-equation unchanged.
enum class Dynamics { keller_segel, forced_growth };

/// Allocation-free kernel behind system_rhs. No finiteness checks.
void evaluate_rhs(std::span<const double> u, std::span<const double> v, const DiffusionModel& model,
                  const Grid& grid, Dynamics dynamics, std::span<double> du_dt, std::span<double> dv_dt);

/// Throws DomainError if any entry of u or v is not finite, SizeError on length mismatch.
void check_state(const State& state, const Grid& grid);

}  // namespace ks1d
