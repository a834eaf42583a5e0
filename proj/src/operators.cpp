#include "ks1d/operators.hpp"

#include <algorithm>
#include <cmath>

#include "ks1d/errors.hpp"

namespace ks1d {

namespace {

void check_cells(std::span<const double> w, const Grid& grid, const char* what) {
  if (w.size() != grid.size()) throw SizeError(std::string(what) + ": length does not match grid");
}

}  // namespace

void check_state(const State& state, const Grid& grid) {
  check_cells(state.u, grid, "state.u");
  check_cells(state.v, grid, "state.v");
  const auto finite = [](double x) { return std::isfinite(x); };
  if (!std::all_of(state.u.begin(), state.u.end(), finite) ||
      !std::all_of(state.v.begin(), state.v.end(), finite)) {
    throw DomainError("state contains non-finite values");
  }
}

std::vector<double> face_gradient(std::span<const double> w, const Grid& grid) {
  check_cells(w, grid, "face_gradient");
  std::vector<double> g(grid.size() + 1, 0.0);
  const double inv_dx = 1.0 / grid.dx;
  for (std::size_t j = 1; j < grid.size(); ++j) g[j] = (w[j] - w[j - 1]) * inv_dx;
  return g;
}

std::vector<double> cell_divergence(std::span<const double> face_field, const Grid& grid) {
  if (face_field.size() != grid.size() + 1) throw SizeError("cell_divergence: expected n_cells + 1 faces");
  std::vector<double> d(grid.size());
  const double inv_dx = 1.0 / grid.dx;
  for (std::size_t i = 0; i < grid.size(); ++i) d[i] = (face_field[i + 1] - face_field[i]) * inv_dx;
  return d;
}

std::vector<double> laplacian(std::span<const double> w, const Grid& grid) {
  return cell_divergence(face_gradient(w, grid), grid);
}

std::vector<double> total_flux(const State& state, const DiffusionModel& model, const Grid& grid) {
  check_state(state, grid);
  const auto& u = state.u;
  const auto& v = state.v;
  std::vector<double> flux(grid.size() + 1, 0.0);
  const double inv_dx = 1.0 / grid.dx;
  for (std::size_t j = 1; j < grid.size(); ++j) {
    const double ubar = 0.5 * (u[j - 1] + u[j]);
    flux[j] = model.a_unchecked(ubar) * (u[j] - u[j - 1]) * inv_dx - ubar * (v[j] - v[j - 1]) * inv_dx;
  }
  return flux;
}

void evaluate_rhs(std::span<const double> u, std::span<const double> v, const DiffusionModel& model,
                  const Grid& grid, Dynamics dynamics, std::span<double> du_dt, std::span<double> dv_dt) {
  const std::size_t n = grid.size();
  const double inv_dx = 1.0 / grid.dx;
  // Running left-face values; both vanish on face 0.
  double flux_left = 0.0;
  double gv_left = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double flux_right = 0.0;
    double gv_right = 0.0;
    if (i + 1 < n) {
      gv_right = (v[i + 1] - v[i]) * inv_dx;
      if (dynamics == Dynamics::keller_segel) {
        const double ubar = 0.5 * (u[i] + u[i + 1]);
        flux_right = model.a_unchecked(ubar) * (u[i + 1] - u[i]) * inv_dx - ubar * gv_right;
      }
    }
    du_dt[i] = dynamics == Dynamics::keller_segel ? (flux_right - flux_left) * inv_dx : u[i] * u[i];
    dv_dt[i] = (gv_right - gv_left) * inv_dx - v[i] + u[i];
    flux_left = flux_right;
    gv_left = gv_right;
  }
}

SystemRhs system_rhs(const State& state, const DiffusionModel& model, const Grid& grid) {
  check_state(state, grid);
  SystemRhs rhs{std::vector<double>(grid.size()), std::vector<double>(grid.size())};
  evaluate_rhs(state.u, state.v, model, grid, Dynamics::keller_segel, rhs.du_dt, rhs.dv_dt);
  return rhs;
}

std::vector<double> vt_field(const State& state, const Grid& grid) {
  check_state(state, grid);
  std::vector<double> vt = laplacian(state.v, grid);
  for (std::size_t i = 0; i < grid.size(); ++i) vt[i] = vt[i] - state.v[i] + state.u[i];
  return vt;
}

}  // namespace ks1d
