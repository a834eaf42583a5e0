#pragma once

#include <string>

#include "ks1d/grid.hpp"
#include "ks1d/integrator.hpp"
#include "ks1d/operators.hpp"

namespace ks1d {

/// Everything needed to reproduce one trajectory. No randomness is involved.
struct RunConfig {
  double p = 1.0;
  double quadrature_tol = DiffusionModel::kDefaultQuadratureTol;
  int n_cells = 128;
  double t_end = 1.0;
  double sample_interval = 0.01;
  InitialCondition ic;
  StepControl control;
  Dynamics dynamics = Dynamics::keller_segel;
  std::string output;  // output directory for `run`; empty means current directory
};

/// Throws ConfigError naming the first offending key.
void validate(const RunConfig& config);

/// Builds model, grid and initial state from the config and integrates.
RunOutcome run_scenario(const RunConfig& config);

std::string to_string(Dynamics dynamics);
Dynamics dynamics_from_string(const std::string& name);

}  // namespace ks1d
