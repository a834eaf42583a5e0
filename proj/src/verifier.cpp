#include "ks1d/verifier.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <numbers>
#include <sstream>

#include "ks1d/errors.hpp"

namespace ks1d {

namespace {

constexpr double kPi = std::numbers::pi;

}  // namespace

TestFunction constant_function(double c) {
  TestFunction f;
  f.name = "constant";
  f.phi = [c](double) { return c; };
  f.d1 = [](double) { return 0.0; };
  f.d2 = [](double) { return 0.0; };
  f.d3 = [](double) { return 0.0; };
  f.boundary_compatible = true;
  f.positivity_margin = c;
  return f;
}

TestFunction cosine_function(double offset, double frequency) {
  const double k = frequency * kPi;
  TestFunction f;
  std::ostringstream name;
  name << offset << "+cos(" << frequency << "pi x)";
  f.name = name.str();
  f.phi = [=](double x) { return offset + std::cos(k * x); };
  f.d1 = [=](double x) { return -k * std::sin(k * x); };
  f.d2 = [=](double x) { return -k * k * std::cos(k * x); };
  f.d3 = [=](double x) { return k * k * k * std::sin(k * x); };
  f.boundary_compatible = std::floor(frequency) == frequency;
  f.positivity_margin = offset - 1.0;
  return f;
}

TestFunction quadratic_function() {
  TestFunction f;
  f.name = "2+x(1-x)";
  f.phi = [](double x) { return 2.0 + x * (1.0 - x); };
  f.d1 = [](double x) { return 1.0 - 2.0 * x; };
  f.d2 = [](double) { return -2.0; };
  f.d3 = [](double) { return 0.0; };
  f.boundary_compatible = false;
  f.positivity_margin = 2.0;
  return f;
}

std::vector<TestFunction> bundled_test_functions() {
  return {constant_function(2.0), cosine_function(2.0, 1.0), cosine_function(2.0, 2.0), quadratic_function()};
}

double m_value(double phi, double d1, double d2, const DiffusionModel& model) {
  if (!(phi > 0.0)) throw DomainError("m_operator needs phi > 0");
  const double a = model.a(phi);
  const double ap = model.a_prime(phi);
  const double grad2 = d1 * d1;
  return a * ap / phi * grad2 - a * a / (2.0 * phi * phi) * grad2 + a * a / phi * d2;
}

std::vector<double> m_operator(const TestFunction& f, std::span<const double> nodes, const DiffusionModel& model) {
  std::vector<double> out(nodes.size());
  for (std::size_t k = 0; k < nodes.size(); ++k) {
    const double x = nodes[k];
    out[k] = m_value(f.phi(x), f.d1(x), f.d2(x), model);
  }
  return out;
}

IdentityResidual key_identity_residual(const TestFunction& f, const DiffusionModel& model, int n_nodes) {
  if (n_nodes < 16) throw SizeError("key_identity_residual needs at least 16 nodes");
  const std::size_t n = static_cast<std::size_t>(n_nodes);
  const double h = 1.0 / static_cast<double>(n - 1);
  std::vector<double> x(n);
  for (std::size_t k = 0; k < n; ++k) x[k] = static_cast<double>(k) * h;

  std::vector<double> phi(n);
  std::vector<double> inner(n);  // a(phi)/phi * phi'
  for (std::size_t k = 0; k < n; ++k) {
    phi[k] = f.phi(x[k]);
    if (!(phi[k] > 0.0)) throw DomainError("test function must be positive");
    inner[k] = model.a(phi[k]) / phi[k] * f.d1(x[k]);
  }
  const std::vector<double> m = m_operator(f, x, model);

  // outer[k] = phi a(phi) d_x(inner), defined for k = 1..n-2.
  std::vector<double> outer(n, 0.0);
  for (std::size_t k = 1; k + 1 < n; ++k) {
    outer[k] = phi[k] * model.a(phi[k]) * (inner[k + 1] - inner[k - 1]) / (2.0 * h);
  }

  double residual = 0.0;
  for (std::size_t k = 2; k + 2 < n; ++k) {
    const double lhs = phi[k] * (m[k + 1] - m[k - 1]) / (2.0 * h);
    const double rhs = (outer[k + 1] - outer[k - 1]) / (2.0 * h);
    residual = std::max(residual, std::abs(lhs - rhs));
  }
  return IdentityResidual{n_nodes, h, residual};
}

ConvergenceReport convergence_report(std::string label, std::span<const int> resolutions,
                                     std::span<const double> residuals, std::span<const double> mesh_sizes,
                                     double target_order) {
  ConvergenceReport report;
  report.label = std::move(label);
  report.resolutions.assign(resolutions.begin(), resolutions.end());
  report.residuals.assign(residuals.begin(), residuals.end());
  report.target_order = target_order;
  report.exact = std::all_of(residuals.begin(), residuals.end(), [](double r) { return r <= kExactResidual; });
  for (std::size_t i = 0; i + 1 < residuals.size(); ++i) {
    report.orders.push_back(std::log(residuals[i] / residuals[i + 1]) / std::log(mesh_sizes[i] / mesh_sizes[i + 1]));
  }
  report.passed = report.exact || std::all_of(report.orders.begin(), report.orders.end(),
                                              [&](double q) { return q >= target_order; });
  return report;
}

namespace {

void check_levels(std::span<const int> levels) {
  if (levels.size() < 3) throw SizeError("a refinement study needs at least 3 resolutions");
  for (std::size_t i = 0; i + 1 < levels.size(); ++i) {
    if (levels[i + 1] <= levels[i]) throw SizeError("resolutions must be strictly increasing");
  }
}

}  // namespace

ConvergenceReport key_identity_study(const TestFunction& f, const DiffusionModel& model,
                                     std::span<const int> n_nodes, double target_order) {
  check_levels(n_nodes);
  std::vector<double> residuals;
  std::vector<double> h;
  for (int n : n_nodes) {
    const IdentityResidual r = key_identity_residual(f, model, n);
    residuals.push_back(r.residual);
    h.push_back(r.h);
  }
  std::ostringstream label;
  label << "key_identity[" << f.name << ", p=" << model.p() << "]";
  return convergence_report(label.str(), n_nodes, residuals, h, target_order);
}

std::string to_string(ResidualSelector selector) {
  switch (selector) {
    case ResidualSelector::f_identity: return "f_identity";
    case ResidualSelector::l_identity: return "l_identity";
    case ResidualSelector::energy_bookkeeping: return "energy_bookkeeping";
  }
  return "?";
}

std::vector<RunOutcome> refinement_runs(const RunConfig& scenario, std::span<const int> resolutions) {
  check_levels(resolutions);
  std::vector<std::future<RunOutcome>> pending;
  for (int n : resolutions) {
    RunConfig level = scenario;
    level.n_cells = n;
    level.sample_interval = scenario.sample_interval * resolutions[0] / n;
    pending.push_back(std::async(std::launch::async, [level] { return run_scenario(level); }));
  }
  std::vector<RunOutcome> runs;
  for (std::size_t i = 0; i < pending.size(); ++i) {
    runs.push_back(pending[i].get());
    if (runs.back().status != RunStatus::completed) {
      std::ostringstream os;
      os << "refinement run at n=" << resolutions[i] << " ended with status " << to_string(runs.back().status)
         << " at t=" << runs.back().final_state.t;
      throw RunFailure(runs.back().status, os.str());
    }
  }
  return runs;
}

double select_residual(const RunOutcome& run, ResidualSelector selector) {
  const auto& snaps = run.snapshots;
  double r = 0.0;
  switch (selector) {
    case ResidualSelector::f_identity:
      for (std::size_t k = 1; k < snaps.size(); ++k) r = std::max(r, std::abs(snaps[k].F_identity_residual));
      break;
    case ResidualSelector::l_identity:
      for (std::size_t k = 1; k < snaps.size(); ++k) r = std::max(r, std::abs(snaps[k].L_identity_residual));
      break;
    case ResidualSelector::energy_bookkeeping:
      r = std::abs(snaps.back().energy_residual);
      break;
  }
  return r;
}

ConvergenceReport refinement_study(const RunConfig& scenario, std::span<const int> resolutions,
                                   ResidualSelector selector, double target_order) {
  const std::vector<RunOutcome> runs = refinement_runs(scenario, resolutions);
  std::vector<double> residuals;
  std::vector<double> dx;
  for (std::size_t i = 0; i < runs.size(); ++i) {
    residuals.push_back(select_residual(runs[i], selector));
    dx.push_back(1.0 / resolutions[i]);
  }
  return convergence_report(to_string(selector), resolutions, residuals, dx, target_order);
}

}  // namespace ks1d
