#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ks1d/diffusion_model.hpp"
#include "ks1d/functionals.hpp"
#include "ks1d/grid.hpp"
#include "ks1d/operators.hpp"

namespace ks1d {

struct StepControl {
  double cfl_safety = 0.4;
  double rel_tol = 1e-7;  // step-doubling error tolerance
  double dt_min = 1e-12;
  double dt_max = 0.1;
  double u_max_threshold = 1e6;
};

/// Throws ConfigError naming the offending field.
void validate(const StepControl& control);

/// Accepted states may carry undershoots down to -kNegativityTol; they are
/// clamped to zero. Anything below rejects the step.
inline constexpr double kNegativityTol = 1e-13;

/// cfl_safety * min(dx^2 / (2 max a(u_bar)), dx / (max |v_x| + eps), dx^2 / 2).
double stable_dt(const State& state, const DiffusionModel& model, const Grid& grid, const StepControl& control);

enum class RejectReason { none, non_finite, negativity, error_too_large };

struct StepAttempt {
  bool accepted = false;
  RejectReason reason = RejectReason::none;
  double error = 0.0;  // step-doubling estimate, max_i |y2 - y1| / (1 + |y2|)
  State state;         // advanced state if accepted, otherwise the input
};

/// One classical RK4 step with step-doubling error control: a full step and
/// two half steps are compared and the two-half-step result is kept.
StepAttempt attempt_step(const State& state, double dt, const DiffusionModel& model, const Grid& grid,
                         const StepControl& control, Dynamics dynamics = Dynamics::keller_segel);

enum class RunStatus { completed, blowup_detected, step_failure };

std::string to_string(RunStatus status);

struct RunStatistics {
  long accepted_steps = 0;
  long rejected_steps = 0;
  double min_u_seen = 0.0;  // over accepted states
  double max_sup_u = 0.0;
  double initial_mass = 0.0;
  double max_mass_drift = 0.0;  // max relative |mass(t) - mass(0)| over accepted states
};

struct RunOutcome {
  RunStatus status = RunStatus::completed;
  State final_state;
  std::optional<double> blowup_time_estimate;
  std::vector<FunctionalSnapshot> snapshots;
  RunStatistics stats;
};

/// Advances `initial` to t_end, sampling functionals at t0, every
/// sample_interval and at t_end. Breakdown is reported through the status:
///  blowup_detected - sup u exceeded u_max_threshold, or the step collapsed
///                    below dt_min while sup u was growing;
///  step_failure    - the step collapsed otherwise.
RunOutcome run_trajectory(const State& initial, const DiffusionModel& model, const Grid& grid,
                          const StepControl& control, double t_end, double sample_interval,
                          Dynamics dynamics = Dynamics::keller_segel);

}  // namespace ks1d
