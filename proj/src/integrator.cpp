#include "ks1d/integrator.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "ks1d/errors.hpp"

namespace ks1d {

namespace {

// Work arrays for RK4 with step doubling on the stacked (u, v) system.
class Rk4Stepper {
 public:
  Rk4Stepper(const DiffusionModel& model, const Grid& grid, Dynamics dynamics)
      : model_(model), grid_(grid), dynamics_(dynamics), n_(grid.size()) {
    for (auto* buf : {&k1_, &k2_, &k3_, &k4_, &stage_, &k1_base_, &mid_, &full_, &inc1_, &inc2_, &next_carry_}) {
      buf->resize(2 * n_);
    }
  }

  // Writes the step-doubling result into out (size 2n) and returns the error
  // estimate. `out` holds the two-half-step solution. The rounding error of the
  // final addition, plus the incoming `carry`, is left in next_carry().
  double step(std::span<const double> y0, double dt, std::span<const double> carry, std::span<double> out) {
    const std::size_t m = 2 * n_;
    rhs(y0, k1_base_);
    increment(y0, dt, k1_base_, full_);
    increment(y0, 0.5 * dt, k1_base_, inc1_);
    for (std::size_t i = 0; i < m; ++i) mid_[i] = y0[i] + inc1_[i];
    rhs(mid_, k1_);
    increment(mid_, 0.5 * dt, k1_, inc2_);
    double err = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
      const double total = (inc1_[i] + inc2_[i]) + carry[i];
      const double sum = y0[i] + total;
      const double b = sum - y0[i];
      next_carry_[i] = (y0[i] - (sum - b)) + (total - b);
      out[i] = sum;
      const double e = std::abs(out[i] - (y0[i] + full_[i])) / (1.0 + std::abs(out[i]));
      if (!(e <= err)) err = e;  // propagates NaN
    }
    return err;
  }

  std::span<double> next_carry() { return next_carry_; }

 private:
  void rhs(std::span<const double> y, std::span<double> k) {
    evaluate_rhs(y.first(n_), y.subspan(n_), model_, grid_, dynamics_, k.first(n_), k.subspan(n_));
  }

  // Classical RK4 increment with the first stage supplied.
  void increment(std::span<const double> y0, double dt, std::span<const double> k1, std::span<double> inc) {
    const std::size_t m = 2 * n_;
    for (std::size_t i = 0; i < m; ++i) stage_[i] = y0[i] + 0.5 * dt * k1[i];
    rhs(stage_, k2_);
    for (std::size_t i = 0; i < m; ++i) stage_[i] = y0[i] + 0.5 * dt * k2_[i];
    rhs(stage_, k3_);
    for (std::size_t i = 0; i < m; ++i) stage_[i] = y0[i] + dt * k3_[i];
    rhs(stage_, k4_);
    for (std::size_t i = 0; i < m; ++i) inc[i] = dt / 6.0 * (k1[i] + 2.0 * k2_[i] + 2.0 * k3_[i] + k4_[i]);
  }

  const DiffusionModel& model_;
  const Grid& grid_;
  Dynamics dynamics_;
  std::size_t n_;
  std::vector<double> k1_, k2_, k3_, k4_, stage_, k1_base_, mid_, full_, inc1_, inc2_, next_carry_;
};

// `carry` holds the per-component rounding error of earlier updates (compensated
// summation of the state); it is refreshed when the step is accepted.
StepAttempt attempt_with(Rk4Stepper& stepper, const State& state, double dt, const Grid& grid,
                         const StepControl& control, std::vector<double>& y0, std::vector<double>& y,
                         std::vector<double>& carry) {
  const std::size_t n = grid.size();
  y0.resize(2 * n);
  y.resize(2 * n);
  carry.resize(2 * n, 0.0);
  std::copy(state.u.begin(), state.u.end(), y0.begin());
  std::copy(state.v.begin(), state.v.end(), y0.begin() + static_cast<std::ptrdiff_t>(n));

  StepAttempt result;
  result.error = stepper.step(y0, dt, carry, y);
  if (!std::all_of(y.begin(), y.end(), [](double x) { return std::isfinite(x); }) ||
      !std::isfinite(result.error)) {
    result.reason = RejectReason::non_finite;
  } else if (result.error > control.rel_tol) {
    result.reason = RejectReason::error_too_large;
  } else if (std::any_of(y.begin(), y.end(), [](double x) { return x < -kNegativityTol; })) {
    result.reason = RejectReason::negativity;
  }
  if (result.reason != RejectReason::none) {
    result.state = state;
    return result;
  }
  const auto next = stepper.next_carry();
  for (std::size_t i = 0; i < 2 * n; ++i) {
    carry[i] = next[i];
    if (y[i] < 0.0) {
      y[i] = 0.0;
      carry[i] = 0.0;
    }
  }
  result.accepted = true;
  result.state.t = state.t + dt;
  result.state.u.assign(y.begin(), y.begin() + static_cast<std::ptrdiff_t>(n));
  result.state.v.assign(y.begin() + static_cast<std::ptrdiff_t>(n), y.end());
  return result;
}

void check_positive(double value, const char* key) {
  if (!std::isfinite(value) || value <= 0.0) throw ConfigError(key, "must be positive and finite");
}

}  // namespace

void validate(const StepControl& control) {
  if (!(control.cfl_safety > 0.0 && control.cfl_safety < 1.0)) {
    throw ConfigError("control.cfl_safety", "must lie in (0, 1)");
  }
  check_positive(control.rel_tol, "control.rel_tol");
  check_positive(control.dt_min, "control.dt_min");
  check_positive(control.dt_max, "control.dt_max");
  check_positive(control.u_max_threshold, "control.u_max_threshold");
  if (!(control.dt_min < control.dt_max)) throw ConfigError("control.dt_min", "must be smaller than dt_max");
}

double stable_dt(const State& state, const DiffusionModel& model, const Grid& grid, const StepControl& control) {
  check_state(state, grid);
  double a_max = 0.0;
  double gv_max = 0.0;
  const double inv_dx = 1.0 / grid.dx;
  for (std::size_t j = 1; j < grid.size(); ++j) {
    a_max = std::max(a_max, model.a_unchecked(0.5 * (state.u[j - 1] + state.u[j])));
    gv_max = std::max(gv_max, std::abs(state.v[j] - state.v[j - 1]) * inv_dx);
  }
  const double dx2 = grid.dx * grid.dx;
  double dt = dx2 / 2.0;
  if (a_max > 0.0) dt = std::min(dt, dx2 / (2.0 * a_max));
  dt = std::min(dt, grid.dx / (gv_max + 1e-30));
  return control.cfl_safety * dt;
}

StepAttempt attempt_step(const State& state, double dt, const DiffusionModel& model, const Grid& grid,
                         const StepControl& control, Dynamics dynamics) {
  check_state(state, grid);
  if (!(dt > 0.0) || !std::isfinite(dt)) throw DomainError("attempt_step: dt must be positive");
  Rk4Stepper stepper(model, grid, dynamics);
  std::vector<double> y0;
  std::vector<double> y;
  std::vector<double> carry;
  return attempt_with(stepper, state, dt, grid, control, y0, y, carry);
}

std::string to_string(RunStatus status) {
  switch (status) {
    case RunStatus::completed: return "completed";
    case RunStatus::blowup_detected: return "blowup_detected";
    case RunStatus::step_failure: return "step_failure";
  }
  return "?";
}

RunOutcome run_trajectory(const State& initial, const DiffusionModel& model, const Grid& grid,
                          const StepControl& control, double t_end, double sample_interval,
                          Dynamics dynamics) {
  validate(control);
  check_state(initial, grid);
  if (!std::isfinite(t_end) || !(t_end > initial.t)) throw ConfigError("t_end", "must exceed the initial time");
  if (!std::isfinite(sample_interval) || !(sample_interval > 0.0)) {
    throw ConfigError("sample_interval", "must be positive");
  }

  const double t0 = initial.t;
  RunOutcome out;
  State state = initial;

  double cum_vt2 = 0.0;
  double cum_R = 0.0;
  double cum_L = 0.0;
  double last_dt = 0.0;
  StepIntegrands integrands = step_integrands(state, model, grid);

  const FunctionalSnapshot first = sample_functionals(state, model, grid);
  const double L0 = first.L_classical;
  out.snapshots.push_back(first);

  auto& stats = out.stats;
  stats.initial_mass = first.mass;
  stats.min_u_seen = first.min_u;
  stats.max_sup_u = first.sup_u;

  auto record_snapshot = [&]() {
    FunctionalSnapshot s = sample_functionals(state, model, grid);
    s.dt_current = last_dt;
    s.cumulative_vt2 = cum_vt2;
    s.cumulative_R = cum_R;
    s.cumulative_L_dissipation = cum_L;
    s.energy_residual = L0 - s.L_classical - cum_L;
    const FunctionalSnapshot& prev = out.snapshots.back();
    const double span = s.t - prev.t;
    s.F_identity_residual = (s.F_general - prev.F_general) / span + 0.5 * (s.D_dissipation + prev.D_dissipation) -
                            0.5 * (s.R_rate + prev.R_rate);
    s.L_identity_residual =
        (s.L_classical - prev.L_classical) / span + 0.5 * (s.L_dissipation + prev.L_dissipation);
    out.snapshots.push_back(s);
  };
  auto record_final = [&]() {
    if (state.t > out.snapshots.back().t) record_snapshot();
  };

  // Sample times t0 + k * interval, with the last one pinned to t_end.
  long sample_index = 1;
  auto sample_time = [&](long k) {
    const double t = t0 + static_cast<double>(k) * sample_interval;
    return t > t_end - 1e-9 * sample_interval ? t_end : t;
  };
  double next_sample = sample_time(sample_index);

  Rk4Stepper stepper(model, grid, dynamics);
  std::vector<double> y0;
  std::vector<double> y;
  std::vector<double> carry;
  double dt = std::min(stable_dt(state, model, grid, control), control.dt_max);

  out.status = RunStatus::completed;
  while (state.t < t_end) {
    double dt_try = std::min({dt, stable_dt(state, model, grid, control), control.dt_max});
    const double remaining = next_sample - state.t;
    const bool hits_sample = dt_try >= remaining;
    if (hits_sample) dt_try = remaining;

    StepAttempt attempt = attempt_with(stepper, state, dt_try, grid, control, y0, y, carry);
    if (!attempt.accepted) {
      ++stats.rejected_steps;
      dt = 0.5 * dt_try;
      if (dt < control.dt_min) {
        // Growth is judged against the last snapshot strictly before now.
        double reference = out.snapshots.front().sup_u;
        for (auto it = out.snapshots.rbegin(); it != out.snapshots.rend(); ++it) {
          if (it->t < state.t) {
            reference = it->sup_u;
            break;
          }
        }
        const double sup_now = *std::max_element(state.u.begin(), state.u.end());
        if (sup_now > reference) {
          out.status = RunStatus::blowup_detected;
          out.blowup_time_estimate = state.t;
        } else {
          out.status = RunStatus::step_failure;
        }
        record_final();
        break;
      }
      continue;
    }

    ++stats.accepted_steps;
    state = std::move(attempt.state);
    if (hits_sample) state.t = next_sample;
    last_dt = dt_try;

    const StepIntegrands next = step_integrands(state, model, grid);
    cum_vt2 += 0.5 * dt_try * (integrands.vt2 + next.vt2);
    cum_R += 0.5 * dt_try * (integrands.R + next.R);
    cum_L += 0.5 * dt_try * (integrands.L_dissipation + next.L_dissipation);
    integrands = next;

    const auto [umin, umax] = std::minmax_element(state.u.begin(), state.u.end());
    stats.min_u_seen = std::min(stats.min_u_seen, *umin);
    stats.max_sup_u = std::max(stats.max_sup_u, *umax);
    if (dynamics == Dynamics::keller_segel) {
      const double drift = std::abs(mass(state.u, grid) - stats.initial_mass) / stats.initial_mass;
      stats.max_mass_drift = std::max(stats.max_mass_drift, drift);
    }

    if (hits_sample) {
      record_snapshot();
      next_sample = sample_time(++sample_index);
    }

    if (*umax > control.u_max_threshold) {
      out.status = RunStatus::blowup_detected;
      out.blowup_time_estimate = state.t;
      record_final();
      break;
    }

    // Standard fifth-root controller; a step shortened only to land on a
    // sample time does not shrink the next proposal.
    double factor = attempt.error > 0.0 ? 0.9 * std::pow(control.rel_tol / attempt.error, 0.2) : 2.0;
    factor = std::clamp(factor, 0.2, 2.0);
    dt = (hits_sample && dt_try < dt) ? std::max(dt, dt_try * factor) : dt_try * factor;
  }

  out.final_state = state;
  return out;
}

}  // namespace ks1d
