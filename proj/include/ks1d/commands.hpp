#pragma once

#include <filesystem>
#include <iosfwd>
#include <json.hpp>
#include <span>
#include <string>
#include <vector>

#include "ks1d/scenario.hpp"
#include "ks1d/verifier.hpp"

namespace ks1d {

enum ExitCode : int { kExitOk = 0, kExitBreakdown = 1, kExitConfig = 2, kExitIo = 3 };

/// Named scenarios shared by `verify`, the tests and the acceptance suite.
RunConfig steady_scenario();           // (u, v) = (1, 1), p = 1
RunConfig critical_cosine_scenario();  // p = 1, cosine M = 4, amplitude 0.5, v0 = u0
RunConfig forced_growth_scenario();    // u' = u^2 surrogate from a cosine profile

struct RunResult {
  int exit_code = kExitOk;
  RunOutcome outcome;
  nlohmann::json summary;
};

/// Integrates `config`, writes <out_dir>/snapshots.csv and <out_dir>/summary.json.
/// Exit code 0 for completed or blowup_detected, 1 for step_failure, 3 on I/O errors.
RunResult cmd_run(const RunConfig& config, const std::filesystem::path& out_dir);

struct SweepCell {
  double p = 0.0;
  double mass = 0.0;
  std::string status;  // run status, or "error" if the cell could not be set up
  double max_sup_u = 0.0;
  double t_final = 0.0;
  std::string message;
};

/// Runs every (p, mass) pair of `base` concurrently (at most `jobs` at a time).
/// Per-cell failures are recorded, never thrown.
std::vector<SweepCell> cmd_sweep(const RunConfig& base, std::span<const double> p_values,
                                 std::span<const double> masses, unsigned jobs = 0);

void write_sweep_csv(std::ostream& os, std::span<const SweepCell> cells);

struct VerifyOptions {
  std::vector<int> levels{64, 128, 256};
  std::string family = "all";  // all | constant | cos_pi | cos_2pi | quadratic
  bool trajectories = true;
};

struct VerifyResult {
  bool passed = false;
  nlohmann::json report;
};

/// Key-identity refinement for the selected test functions at p in {0.5, 1, 2},
/// plus trajectory refinement studies (steady scenario for `constant`, the
/// critical cosine scenario otherwise). Only boundary-compatible test
/// functions gate `passed`; the others are reported. Throws SizeError on bad levels.
VerifyResult cmd_verify(const VerifyOptions& options);

nlohmann::json to_json(const ConvergenceReport& report);

/// Full command-line entry point; returns the process exit code.
int cli_main(int argc, char** argv);

}  // namespace ks1d
