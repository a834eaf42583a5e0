#pragma once

#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "ks1d/diffusion_model.hpp"
#include "ks1d/integrator.hpp"
#include "ks1d/scenario.hpp"

namespace ks1d {

/// Smooth positive function on [0, 1] with analytic derivatives up to order 3.
struct TestFunction {
  std::string name;
  std::function<double(double)> phi;
  std::function<double(double)> d1;
  std::function<double(double)> d2;
  std::function<double(double)> d3;
  bool boundary_compatible = false;  // phi'(0) = phi'(1) = 0
  double positivity_margin = 0.0;    // lower bound for phi on [0, 1]
};

TestFunction constant_function(double c);
TestFunction cosine_function(double offset, double frequency);  // offset + cos(frequency * pi x)
TestFunction quadratic_function();                              // 2 + x (1 - x)

/// constant(2), 2+cos(pi x), 2+cos(2 pi x), 2+x(1-x).
std::vector<TestFunction> bundled_test_functions();

/// Pointwise
///   M(phi) = a a'/phi |phi'|^2 - a^2/(2 phi^2) |phi'|^2 + a^2/phi phi''
/// from analytic derivative values.
double m_value(double phi, double d1, double d2, const DiffusionModel& model);

/// M(phi) at the given nodes, derivatives taken analytically.
std::vector<double> m_operator(const TestFunction& f, std::span<const double> nodes, const DiffusionModel& model);

struct IdentityResidual {
  int n_nodes = 0;
  double h = 0.0;
  double residual = 0.0;
};

/// max over interior nodes (two trimmed per side) of
///   | phi d_x M(phi) - d_x( phi a(phi) d_x( a(phi)/phi phi' ) ) |
/// with both outer derivatives taken by central differences on
/// n_nodes equispaced nodes and phi' analytic.
IdentityResidual key_identity_residual(const TestFunction& f, const DiffusionModel& model, int n_nodes);

struct ConvergenceReport {
  std::string label;
  std::vector<int> resolutions;
  std::vector<double> residuals;
  std::vector<double> orders;  // one per consecutive pair
  double target_order = 0.0;
  bool exact = false;  // every residual at roundoff
  bool passed = false;
};

/// Residuals below this are treated as roundoff.
inline constexpr double kExactResidual = 1e-12;

ConvergenceReport key_identity_study(const TestFunction& f, const DiffusionModel& model,
                                     std::span<const int> n_nodes, double target_order = 1.9);

enum class ResidualSelector { f_identity, l_identity, energy_bookkeeping };

std::string to_string(ResidualSelector selector);

/// Raised when a run inside a refinement study does not complete.
class RunFailure : public std::runtime_error {
 public:
  RunFailure(RunStatus status, const std::string& what) : std::runtime_error(what), status_(status) {}
  RunStatus status() const noexcept { return status_; }

 private:
  RunStatus status_;
};

/// Runs `scenario` at each resolution in parallel; sample_interval is scaled by
/// resolutions[0] / n so the sampling refines with the mesh. Throws RunFailure
/// if any run does not complete.
std::vector<RunOutcome> refinement_runs(const RunConfig& scenario, std::span<const int> resolutions);

/// Residual picked by `selector` from one completed run:
///  f_identity / l_identity - max over snapshot intervals of |residual|,
///  energy_bookkeeping      - |L(0) - L(t_end) - int_0^t_end dissipation|.
double select_residual(const RunOutcome& run, ResidualSelector selector);

ConvergenceReport convergence_report(std::string label, std::span<const int> resolutions,
                                     std::span<const double> residuals, std::span<const double> mesh_sizes,
                                     double target_order);

ConvergenceReport refinement_study(const RunConfig& scenario, std::span<const int> resolutions,
                                   ResidualSelector selector, double target_order = 1.0);

}  // namespace ks1d
