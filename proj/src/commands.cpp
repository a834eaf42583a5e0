#include "ks1d/commands.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <atomic>
#include <fstream>
#include <iostream>
#include <mutex>
#include <sstream>
#include <thread>

#include "ks1d/config.hpp"
#include "ks1d/errors.hpp"
#include "ks1d/report.hpp"

namespace ks1d {

namespace fs = std::filesystem;
using nlohmann::json;

RunConfig steady_scenario() {
  RunConfig c;
  c.p = 1.0;
  c.n_cells = 128;
  c.t_end = 1.0;
  c.sample_interval = 0.05;
  c.ic.family = IcFamily::constant;
  c.ic.mass = 1.0;
  c.ic.v0_mode = V0Mode::equal_to_u0;
  return c;
}

RunConfig critical_cosine_scenario() {
  RunConfig c;
  c.p = 1.0;
  c.n_cells = 64;
  // The aggregate at x = 0 stays resolved on n >= 64 up to about t = 0.1.
  c.t_end = 0.1;
  c.sample_interval = 0.005;
  c.ic.family = IcFamily::cosine;
  c.ic.mass = 4.0;
  c.ic.amplitude = 0.5;
  c.ic.v0_mode = V0Mode::equal_to_u0;
  return c;
}

RunConfig forced_growth_scenario() {
  RunConfig c;
  c.p = 1.0;
  c.n_cells = 64;
  c.t_end = 1.0;
  c.sample_interval = 0.01;
  c.ic.family = IcFamily::cosine;
  c.ic.mass = 2.0;
  c.ic.amplitude = 0.5;
  c.dynamics = Dynamics::forced_growth;
  return c;
}

RunResult cmd_run(const RunConfig& config, const fs::path& out_dir) {
  RunResult result;
  result.outcome = run_scenario(config);
  result.summary = run_summary(result.outcome);
  result.summary["config"] = to_json(config);
  result.exit_code = result.outcome.status == RunStatus::step_failure ? kExitBreakdown : kExitOk;

  std::error_code ec;
  if (!out_dir.empty()) fs::create_directories(out_dir, ec);
  if (ec) {
    result.exit_code = kExitIo;
    return result;
  }
  std::ofstream csv(out_dir / "snapshots.csv", std::ios::binary);
  write_snapshot_csv(csv, result.outcome.snapshots);
  std::ofstream js(out_dir / "summary.json", std::ios::binary);
  js << result.summary.dump(2) << '\n';
  csv.close();
  js.close();
  if (!csv || !js) result.exit_code = kExitIo;
  return result;
}

std::vector<SweepCell> cmd_sweep(const RunConfig& base, std::span<const double> p_values,
                                 std::span<const double> masses, unsigned jobs) {
  if (p_values.empty() || masses.empty()) throw ConfigError("sweep", "p and mass lists must be nonempty");
  std::vector<SweepCell> cells;
  for (double p : p_values) {
    for (double m : masses) {
      SweepCell cell;
      cell.p = p;
      cell.mass = m;
      cells.push_back(cell);
    }
  }
  if (jobs == 0) jobs = std::max(1u, std::thread::hardware_concurrency());
  jobs = std::min<unsigned>(jobs, static_cast<unsigned>(cells.size()));

  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < cells.size(); i = next++) {
      SweepCell& cell = cells[i];
      try {
        RunConfig config = base;
        config.p = cell.p;
        config.ic.mass = cell.mass;
        const RunOutcome outcome = run_scenario(config);
        cell.status = to_string(outcome.status);
        cell.max_sup_u = outcome.stats.max_sup_u;
        cell.t_final = outcome.final_state.t;
      } catch (const std::exception& e) {
        cell.status = "error";
        cell.message = e.what();
      }
    }
  };
  std::vector<std::thread> pool;
  for (unsigned j = 0; j < jobs; ++j) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  return cells;
}

void write_sweep_csv(std::ostream& os, std::span<const SweepCell> cells) {
  os << "p,mass,status,max_sup_u,t_final\n";
  for (const auto& c : cells) {
    os << format_double(c.p) << ',' << format_double(c.mass) << ',' << c.status << ','
       << format_double(c.max_sup_u) << ',' << format_double(c.t_final) << '\n';
  }
}

json to_json(const ConvergenceReport& report) {
  json orders = json::array();
  for (double q : report.orders) orders.push_back(std::isfinite(q) ? json(q) : json(nullptr));
  return json{{"label", report.label},       {"resolutions", report.resolutions},
              {"residuals", report.residuals}, {"orders", orders},
              {"target_order", report.target_order}, {"exact", report.exact},
              {"passed", report.passed}};
}

VerifyResult cmd_verify(const VerifyOptions& options) {
  if (options.levels.size() < 3) throw SizeError("verify needs at least 3 refinement levels");
  if (options.levels.front() < 16) throw SizeError("verify levels must be at least 16");

  std::vector<TestFunction> functions;
  for (auto& f : bundled_test_functions()) {
    const bool pick = options.family == "all" || (options.family == "constant" && f.name == "constant") ||
                      (options.family == "cos_pi" && f.name == cosine_function(2.0, 1.0).name) ||
                      (options.family == "cos_2pi" && f.name == cosine_function(2.0, 2.0).name) ||
                      (options.family == "quadratic" && f.name == quadratic_function().name);
    if (pick) functions.push_back(std::move(f));
  }
  if (functions.empty()) throw ConfigError("family", "unknown test function family '" + options.family + "'");

  VerifyResult result;
  result.passed = true;
  json identity = json::array();
  for (const auto& f : functions) {
    for (double p : {0.5, 1.0, 2.0}) {
      const ConvergenceReport r = key_identity_study(f, DiffusionModel(p), options.levels);
      if (f.boundary_compatible) result.passed = result.passed && r.passed;
      json entry = to_json(r);
      entry["gating"] = f.boundary_compatible;
      identity.push_back(entry);
    }
  }
  result.report["key_identity"] = identity;

  json studies = json::array();
  if (options.trajectories) {
    const RunConfig scenario = options.family == "constant" ? steady_scenario() : critical_cosine_scenario();
    const auto runs = refinement_runs(scenario, options.levels);
    std::vector<double> dx;
    for (int n : options.levels) dx.push_back(1.0 / n);
    for (auto selector :
         {ResidualSelector::f_identity, ResidualSelector::l_identity, ResidualSelector::energy_bookkeeping}) {
      std::vector<double> residuals;
      for (const auto& run : runs) residuals.push_back(select_residual(run, selector));
      const ConvergenceReport r = convergence_report(to_string(selector), options.levels, residuals, dx, 1.0);
      result.passed = result.passed && r.passed;
      studies.push_back(to_json(r));
    }
  }
  result.report["refinement_studies"] = studies;
  result.report["passed"] = result.passed;
  return result;
}

namespace {

RunConfig load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::ios_base::failure("cannot open config file " + path);
  std::ostringstream text;
  text << in.rdbuf();
  const std::string s = text.str();
  return parse_config(std::string_view(s));
}

}  // namespace

int cli_main(int argc, char** argv) {
  CLI::App app{"1D quasilinear Keller-Segel simulator and functional auditor"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir;
  auto* run = app.add_subcommand("run", "integrate one configuration and write CSV + JSON summary");
  run->add_option("--config", config_path, "JSON run configuration")->required();
  run->add_option("--out", out_dir, "output directory (overrides the config's `output`)");

  std::vector<double> p_list;
  std::vector<double> mass_list;
  unsigned jobs = 0;
  auto* sweep = app.add_subcommand("sweep", "run a (p, mass) matrix of the base configuration");
  sweep->add_option("--config", config_path, "base JSON configuration")->required();
  sweep->add_option("--p", p_list, "comma-separated diffusion exponents")->required()->delimiter(',');
  sweep->add_option("--mass", mass_list, "comma-separated masses")->required()->delimiter(',');
  sweep->add_option("--out", out_dir, "output directory for sweep.csv");
  sweep->add_option("--jobs", jobs, "concurrent cells (default: hardware threads)");

  VerifyOptions verify_options;
  std::string verify_out;
  bool no_trajectories = false;
  auto* verify = app.add_subcommand("verify", "identity and refinement-order verification");
  verify->add_option("--levels", verify_options.levels, "comma-separated resolutions")->delimiter(',');
  verify->add_option("--family", verify_options.family, "all | constant | cos_pi | cos_2pi | quadratic");
  verify->add_flag("--no-trajectories", no_trajectories, "skip the trajectory refinement studies");
  verify->add_option("--out", verify_out, "write the JSON report here instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (*run) {
      RunConfig config = load_config(config_path);
      const fs::path dir = !out_dir.empty() ? fs::path(out_dir) : fs::path(config.output);
      const RunResult result = cmd_run(config, dir);
      std::cout << result.summary.dump(2) << '\n';
      return result.exit_code;
    }
    if (*sweep) {
      const RunConfig base = load_config(config_path);
      const auto cells = cmd_sweep(base, p_list, mass_list, jobs);
      const fs::path dir = out_dir.empty() ? fs::path(".") : fs::path(out_dir);
      fs::create_directories(dir);
      std::ofstream csv(dir / "sweep.csv", std::ios::binary);
      write_sweep_csv(csv, cells);
      write_sweep_csv(std::cout, cells);
      csv.close();
      return csv ? kExitOk : kExitIo;
    }
    if (*verify) {
      verify_options.trajectories = !no_trajectories;
      const VerifyResult result = cmd_verify(verify_options);
      if (verify_out.empty()) {
        std::cout << result.report.dump(2) << '\n';
      } else {
        std::ofstream out(verify_out, std::ios::binary);
        out << result.report.dump(2) << '\n';
        if (!out) return kExitIo;
      }
      return result.passed ? kExitOk : kExitBreakdown;
    }
  } catch (const ConfigError& e) {
    std::cerr << "configuration error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const SizeError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::ios_base::failure& e) {
    std::cerr << "I/O error: " << e.what() << '\n';
    return kExitIo;
  } catch (const fs::filesystem_error& e) {
    std::cerr << "I/O error: " << e.what() << '\n';
    return kExitIo;
  } catch (const RunFailure& e) {
    std::cerr << "run breakdown: " << e.what() << '\n';
    return kExitBreakdown;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitConfig;
  }
  return kExitOk;
}

}  // namespace ks1d
