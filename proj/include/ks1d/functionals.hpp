#pragma once

#include <span>

#include "ks1d/diffusion_model.hpp"
#include "ks1d/grid.hpp"

namespace ks1d {

// Quadrature conventions shared by every functional below:
//  - plain integrals use the midpoint rule over cells;
//  - gradient-weighted integrals sum over interior faces,
//      sum_j w(u_bar_j) ((u_j - u_{j-1}) / dx)^2 dx,
//    with u_bar_j the arithmetic face average (the flux stencil);
//  - v_t is taken from the v-equation, never from time differences;
//  - wherever 1/u or b'(u) appears, u is floored at DiffusionModel::kUFloor.

/// One sampled row of every monitored quantity.
struct FunctionalSnapshot {
  double t = 0.0;
  double dt_current = 0.0;
  double mass = 0.0;
  double sup_u = 0.0;
  double min_u = 0.0;
  double min_v = 0.0;
  double entropy = 0.0;  // int u log(1+u)
  double G = 0.0;        // int a(u)^2/u |u_x|^2
  double L_classical = 0.0;
  double L_dissipation = 0.0;
  double F_general = 0.0;
  double F_critical = 0.0;  // NaN unless p = 1
  double D_dissipation = 0.0;
  double R_rate = 0.0;
  // Centred-difference residuals against the previous snapshot; 0 on the first row.
  double F_identity_residual = 0.0;
  double L_identity_residual = 0.0;
  double prop41_gap = 0.0;   // NaN unless p = 1
  double regest3_gap = 0.0;  // NaN unless p = 1
  double cube_norm = 0.0;
  double v_L2 = 0.0;
  double vt_L2 = 0.0;
  double cumulative_vt2 = 0.0;
  double cumulative_R = 0.0;
  double cumulative_L_dissipation = 0.0;
  double energy_residual = 0.0;  // L(0) - L(t) - cumulative_L_dissipation
  bool vacuum_flag = false;
};

double mass(std::span<const double> u, const Grid& grid);
double entropy(std::span<const double> u, const Grid& grid);

/// General gradient weight int a(u)^2/u |u_x|^2; for p = 1 this is
/// int |u_x|^2 / (u (1+u)^2).
double grad_weight(const State& state, const DiffusionModel& model, const Grid& grid);

double classical_L(const State& state, const DiffusionModel& model, const Grid& grid);

/// int v_t^2 + int u |(b'(u) - v)_x|^2, the rate at which classical_L decays.
double classical_dissipation(const State& state, const DiffusionModel& model, const Grid& grid);

double F_general(const State& state, const DiffusionModel& model, const Grid& grid);

/// Critical-case form 1/2 int |u_x|^2/(u(1+u)^2) - int u log(1+u). Equals
/// F_general - mass log 2. Throws UsageError unless p = 1.
double F_critical(const State& state, const DiffusionModel& model, const Grid& grid);

/// int u a(u) |((a(u)/u) u_x)_x - v_xx + (v + v_t)/2|^2.
double D_dissipation(const State& state, const DiffusionModel& model, const Grid& grid);

/// int u a(u) (v + v_t)^2 / 4, the source term in the new functional's balance.
double R_rate(const State& state, const DiffusionModel& model, const Grid& grid);

/// F_critical - G/4 + M^3 + M log(1+M). Nonnegative along exact solutions. p = 1 only.
double prop41_gap(const State& state, const DiffusionModel& model, const Grid& grid);

/// M^{3/2} sqrt(G) + M log(1+M) - int u log(1+u). Nonnegative. p = 1 only.
double regest3_gap(const State& state, const DiffusionModel& model, const Grid& grid);

struct BhnQuantities {
  double l4_pow4 = 0.0;   // ||u||_{L^4}^4
  double h1_sq = 0.0;     // ||u||_{H^1}^2
  double u_log_u = 0.0;   // int |u log u|
  double l1 = 0.0;        // ||u||_{L^1}
};

struct AuxiliaryMonitors {
  double cube_norm = 0.0;  // int (1+u)^3
  double entropy = 0.0;
  double v_L2 = 0.0;
  double vt_L2 = 0.0;
  BhnQuantities bhn;
};

AuxiliaryMonitors auxiliary_monitors(const State& state, const Grid& grid);

/// True if some u_i is below DiffusionModel::kUFloor.
bool has_vacuum(const State& state);

/// Integrands accumulated by the integrator on every accepted step.
struct StepIntegrands {
  double vt2 = 0.0;
  double L_dissipation = 0.0;
  double R = 0.0;
};

StepIntegrands step_integrands(const State& state, const DiffusionModel& model, const Grid& grid);

/// Every state-local field of FunctionalSnapshot. The time-series fields
/// (dt_current, residuals, cumulative integrals) are left at zero.
FunctionalSnapshot sample_functionals(const State& state, const DiffusionModel& model, const Grid& grid);

}  // namespace ks1d
