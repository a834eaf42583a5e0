#include "ks1d/functionals.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "ks1d/detail/compensated_sum.hpp"
#include "ks1d/errors.hpp"
#include "ks1d/operators.hpp"

namespace ks1d {

namespace {

using detail::CompensatedSum;

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

double floored(double u) { return std::max(u, DiffusionModel::kUFloor); }

void require_critical(const DiffusionModel& model, const char* what) {
  if (!model.is_critical()) {
    throw UsageError(std::string(what) + " is only defined for the critical exponent p = 1");
  }
}

// sum_j weight(u_bar_j) * ((u_j - u_{j-1})/dx)^2 * dx over interior faces.
template <class Weight>
double face_weighted_gradient(std::span<const double> u, const Grid& grid, Weight weight) {
  CompensatedSum sum;
  const double inv_dx = 1.0 / grid.dx;
  for (std::size_t j = 1; j < grid.size(); ++j) {
    const double g = (u[j] - u[j - 1]) * inv_dx;
    if (g == 0.0) continue;
    sum.add(weight(0.5 * (u[j - 1] + u[j])) * g * g);
  }
  return sum.value() * grid.dx;
}

double critical_grad_weight(std::span<const double> u, const Grid& grid) {
  return face_weighted_gradient(u, grid, [](double ubar) {
    const double w = floored(ubar);
    return 1.0 / (w * (1.0 + w) * (1.0 + w));
  });
}

double critical_F(const State& state, const Grid& grid) {
  return 0.5 * critical_grad_weight(state.u, grid) - entropy(state.u, grid);
}

// sum_i w_i^2 dx
double l2_sq(std::span<const double> w, const Grid& grid) {
  CompensatedSum sum;
  for (double x : w) sum.add(x * x);
  return sum.value() * grid.dx;
}

}  // namespace

double mass(std::span<const double> u, const Grid& grid) { return cell_integral(u, grid); }

double entropy(std::span<const double> u, const Grid& grid) {
  CompensatedSum sum;
  for (double x : u) sum.add(x * std::log1p(x));
  return sum.value() * grid.dx;
}

double grad_weight(const State& state, const DiffusionModel& model, const Grid& grid) {
  check_state(state, grid);
  if (model.is_critical()) return critical_grad_weight(state.u, grid);
  return face_weighted_gradient(state.u, grid, [&](double ubar) {
    const double w = floored(ubar);
    const double a = model.a_unchecked(w);
    return a * a / w;
  });
}

double classical_L(const State& state, const DiffusionModel& model, const Grid& grid) {
  check_state(state, grid);
  CompensatedSum sum;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double u = state.u[i];
    const double v = state.v[i];
    sum.add(model.b(std::max(u, 0.0)) - u * v + 0.5 * v * v);
  }
  const std::vector<double> gv = face_gradient(state.v, grid);
  return sum.value() * grid.dx + 0.5 * l2_sq(gv, grid);
}

double classical_dissipation(const State& state, const DiffusionModel& model, const Grid& grid) {
  return step_integrands(state, model, grid).L_dissipation;
}

double F_general(const State& state, const DiffusionModel& model, const Grid& grid) {
  check_state(state, grid);
  CompensatedSum potential;
  for (double u : state.u) potential.add(u * model.B(std::max(u, 0.0)));
  return 0.5 * grad_weight(state, model, grid) - potential.value() * grid.dx;
}

double F_critical(const State& state, const DiffusionModel& model, const Grid& grid) {
  require_critical(model, "F_critical");
  check_state(state, grid);
  return critical_F(state, grid);
}

double D_dissipation(const State& state, const DiffusionModel& model, const Grid& grid) {
  check_state(state, grid);
  const std::size_t n = grid.size();
  const double inv_dx = 1.0 / grid.dx;
  const auto& u = state.u;
  const auto& v = state.v;

  // Face field (a(u)/u) u_x; it vanishes on the walls.
  std::vector<double> h(n + 1, 0.0);
  for (std::size_t j = 1; j < n; ++j) {
    const double ubar = floored(0.5 * (u[j - 1] + u[j]));
    h[j] = model.a_unchecked(ubar) / ubar * (u[j] - u[j - 1]) * inv_dx;
  }
  const std::vector<double> lap_v = laplacian(v, grid);

  CompensatedSum sum;
  for (std::size_t i = 0; i < n; ++i) {
    const double vt = lap_v[i] - v[i] + u[i];
    const double q = (h[i + 1] - h[i]) * inv_dx - lap_v[i] + 0.5 * (v[i] + vt);
    sum.add(u[i] * model.a_unchecked(u[i]) * q * q);
  }
  return sum.value() * grid.dx;
}

double R_rate(const State& state, const DiffusionModel& model, const Grid& grid) {
  return step_integrands(state, model, grid).R;
}

double prop41_gap(const State& state, const DiffusionModel& model, const Grid& grid) {
  require_critical(model, "prop41_gap");
  check_state(state, grid);
  const double m = mass(state.u, grid);
  return critical_F(state, grid) - 0.25 * critical_grad_weight(state.u, grid) + m * m * m +
         m * std::log1p(m);
}

double regest3_gap(const State& state, const DiffusionModel& model, const Grid& grid) {
  require_critical(model, "regest3_gap");
  check_state(state, grid);
  const double m = mass(state.u, grid);
  const double g = critical_grad_weight(state.u, grid);
  return std::pow(m, 1.5) * std::sqrt(g) + m * std::log1p(m) - entropy(state.u, grid);
}

AuxiliaryMonitors auxiliary_monitors(const State& state, const Grid& grid) {
  check_state(state, grid);
  AuxiliaryMonitors out;
  CompensatedSum cube;
  CompensatedSum l4;
  CompensatedSum ulogu;
  for (double u : state.u) {
    const double w = 1.0 + u;
    cube.add(w * w * w);
    l4.add(u * u * u * u);
    ulogu.add(u > 0.0 ? std::abs(u * std::log(u)) : 0.0);
  }
  out.cube_norm = cube.value() * grid.dx;
  out.entropy = entropy(state.u, grid);
  out.v_L2 = std::sqrt(l2_sq(state.v, grid));
  out.vt_L2 = std::sqrt(l2_sq(vt_field(state, grid), grid));
  out.bhn.l4_pow4 = l4.value() * grid.dx;
  out.bhn.h1_sq = l2_sq(state.u, grid) + l2_sq(face_gradient(state.u, grid), grid);
  out.bhn.u_log_u = ulogu.value() * grid.dx;
  out.bhn.l1 = cell_integral(state.u, grid);
  return out;
}

bool has_vacuum(const State& state) {
  return std::any_of(state.u.begin(), state.u.end(), DiffusionModel::below_floor);
}

StepIntegrands step_integrands(const State& state, const DiffusionModel& model, const Grid& grid) {
  check_state(state, grid);
  const std::size_t n = grid.size();
  const double inv_dx = 1.0 / grid.dx;
  const auto& u = state.u;
  const auto& v = state.v;

  CompensatedSum vt2;
  CompensatedSum drift;
  CompensatedSum rate;
  double gv_left = 0.0;
  double phi_left = model.b_prime_unchecked(std::max(u[0], 0.0)) - v[0];
  for (std::size_t i = 0; i < n; ++i) {
    double gv_right = 0.0;
    if (i + 1 < n) {
      gv_right = (v[i + 1] - v[i]) * inv_dx;
      // (b'(u) - v) across face i+1, weighted by the face-averaged density.
      const double phi_right = model.b_prime_unchecked(std::max(u[i + 1], 0.0)) - v[i + 1];
      const double g = (phi_right - phi_left) * inv_dx;
      drift.add(0.5 * (u[i] + u[i + 1]) * g * g);
      phi_left = phi_right;
    }
    const double vt = (gv_right - gv_left) * inv_dx - v[i] + u[i];
    vt2.add(vt * vt);
    const double s = v[i] + vt;
    rate.add(u[i] * model.a_unchecked(u[i]) * s * s);
    gv_left = gv_right;
  }
  StepIntegrands out;
  out.vt2 = vt2.value() * grid.dx;
  out.L_dissipation = out.vt2 + drift.value() * grid.dx;
  out.R = 0.25 * rate.value() * grid.dx;
  return out;
}

FunctionalSnapshot sample_functionals(const State& state, const DiffusionModel& model, const Grid& grid) {
  check_state(state, grid);
  FunctionalSnapshot s;
  s.t = state.t;
  s.mass = mass(state.u, grid);
  const auto [umin, umax] = std::minmax_element(state.u.begin(), state.u.end());
  s.min_u = *umin;
  s.sup_u = *umax;
  s.min_v = *std::min_element(state.v.begin(), state.v.end());
  s.G = grad_weight(state, model, grid);
  s.L_classical = classical_L(state, model, grid);
  const StepIntegrands integrands = step_integrands(state, model, grid);
  s.L_dissipation = integrands.L_dissipation;
  s.R_rate = integrands.R;
  s.F_general = F_general(state, model, grid);
  s.D_dissipation = D_dissipation(state, model, grid);
  const AuxiliaryMonitors aux = auxiliary_monitors(state, grid);
  s.entropy = aux.entropy;
  s.cube_norm = aux.cube_norm;
  s.v_L2 = aux.v_L2;
  s.vt_L2 = aux.vt_L2;
  if (model.is_critical()) {
    s.F_critical = F_critical(state, model, grid);
    s.prop41_gap = prop41_gap(state, model, grid);
    s.regest3_gap = regest3_gap(state, model, grid);
  } else {
    s.F_critical = kNaN;
    s.prop41_gap = kNaN;
    s.regest3_gap = kNaN;
  }
  s.vacuum_flag = has_vacuum(state);
  return s;
}

}  // namespace ks1d
