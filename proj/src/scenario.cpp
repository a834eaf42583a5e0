#include "ks1d/scenario.hpp"

#include <cmath>

#include "ks1d/errors.hpp"

namespace ks1d {

void validate(const RunConfig& config) {
  if (!std::isfinite(config.p) || config.p < 0.0) throw ConfigError("p", "must be finite and >= 0");
  if (!(config.quadrature_tol > 0.0 && config.quadrature_tol < 1e-3)) {
    throw ConfigError("quadrature_tol", "must lie in (0, 1e-3)");
  }
  if (config.n_cells < 4) throw ConfigError("n_cells", "must be at least 4");
  if (!std::isfinite(config.t_end) || config.t_end <= 0.0) throw ConfigError("t_end", "must be positive");
  if (!std::isfinite(config.sample_interval) || config.sample_interval <= 0.0) {
    throw ConfigError("sample_interval", "must be positive");
  }
  validate(config.ic);
  validate(config.control);
}

RunOutcome run_scenario(const RunConfig& config) {
  validate(config);
  const DiffusionModel model(config.p, config.quadrature_tol);
  const Grid grid = make_grid(config.n_cells);
  const State initial = make_initial_state(grid, config.ic);
  return run_trajectory(initial, model, grid, config.control, config.t_end, config.sample_interval,
                        config.dynamics);
}

std::string to_string(Dynamics dynamics) {
  switch (dynamics) {
    case Dynamics::keller_segel: return "keller_segel";
    case Dynamics::forced_growth: return "forced_growth";
  }
  return "?";
}

Dynamics dynamics_from_string(const std::string& name) {
  if (name == "keller_segel") return Dynamics::keller_segel;
  if (name == "forced_growth") return Dynamics::forced_growth;
  throw ConfigError("dynamics", "unknown dynamics '" + name + "'");
}

}  // namespace ks1d
