#include <doctest.h>

#include <cmath>
#include <numbers>

#include "ks1d/errors.hpp"
#include "ks1d/functionals.hpp"
#include "ks1d/grid.hpp"
#include "oracles.hpp"

using namespace ks1d;
using doctest::Approx;
constexpr double kLn2 = std::numbers::ln2;

namespace {

State uniform(int n, double u, double v) { return State{0.0, std::vector<double>(n, u), std::vector<double>(n, v)}; }

State cosine_state(int n, double mass) {
  InitialCondition ic;
  ic.mass = mass;
  return make_initial_state(make_grid(n), ic);
}

}  // namespace

TEST_CASE("mass") {
  const Grid g = make_grid(16);
  CHECK(mass(std::vector<double>(16, 2.0), g) == 2.0);
  CHECK(mass(cosine_state(64, 5.0).u, make_grid(64)) == Approx(5.0).epsilon(1e-14));
  CHECK(mass(std::vector<double>{4, 0, 0, 0}, make_grid(4)) == 1.0);
}

TEST_CASE("classical Lyapunov functional and its dissipation") {
  const DiffusionModel m(1);
  const Grid g = make_grid(32);
  CHECK(classical_L(uniform(32, 1, 1), m, g) == Approx(-0.5).epsilon(1e-15));
  CHECK(classical_L(uniform(32, 1, 0), m, g) == 0.0);
  CHECK(classical_L(uniform(32, 3, 0), m, g) == Approx(oracle::b(1.0, 3.0)).epsilon(1e-9));
  CHECK(classical_dissipation(uniform(32, 2, 2), m, g) == 0.0);
  CHECK(classical_dissipation(uniform(32, 3, 0), m, g) == Approx(9.0).epsilon(1e-14));
}

TEST_CASE("F functionals") {
  const DiffusionModel m(1);
  const Grid g = make_grid(32);
  CHECK(F_general(uniform(32, 1, 1), m, g) == 0.0);
  CHECK(F_critical(uniform(32, 1, 1), m, g) == Approx(-kLn2).epsilon(1e-15));
  CHECK(F_general(uniform(32, 3, 3), m, g) == Approx(-3.0 * kLn2).epsilon(1e-14));
  CHECK_THROWS_AS(F_critical(uniform(32, 1, 1), DiffusionModel(2), g), UsageError);
}

TEST_CASE("D and R") {
  const DiffusionModel m(1);
  const Grid g = make_grid(32);
  CHECK(D_dissipation(uniform(32, 1, 1), m, g) == Approx(0.125).epsilon(1e-15));
  CHECK(R_rate(uniform(32, 1, 1), m, g) == Approx(0.125).epsilon(1e-15));
  CHECK(D_dissipation(uniform(32, 1, 0), m, g) == Approx(0.125).epsilon(1e-15));
  CHECK(R_rate(uniform(32, 0, 0), m, g) == 0.0);
  for (double c : {0.5, 2.0, 7.0}) {
    const double expect = c * c * c / (4.0 * (1.0 + c));
    CHECK(D_dissipation(uniform(32, c, c), m, g) == Approx(expect).epsilon(1e-14));
    CHECK(R_rate(uniform(32, c, c), m, g) == Approx(expect).epsilon(1e-14));
  }
  const State s = cosine_state(64, 4.0);
  CHECK(D_dissipation(s, m, make_grid(64)) >= 0.0);
  CHECK(R_rate(s, m, make_grid(64)) >= 0.0);
}

TEST_CASE("gap monitors") {
  const DiffusionModel m(1);
  const Grid g = make_grid(32);
  CHECK(prop41_gap(uniform(32, 1, 1), m, g) == Approx(1.0).epsilon(1e-12));
  CHECK(prop41_gap(uniform(32, 3, 3), m, g) == Approx(27.0).epsilon(1e-12));
  for (double c : {0.5, 1.0, 3.0}) CHECK(std::abs(regest3_gap(uniform(32, c, c), m, g)) <= 1e-13);
  for (double M : {0.5, 1.0, 4.0, 10.0}) {
    const State s = cosine_state(64, M);
    CHECK(regest3_gap(s, m, make_grid(64)) > 0.0);
    CHECK(prop41_gap(s, m, make_grid(64)) > 0.0);
  }
  const State vac{0.0, {4, 0, 0, 0}, {4, 0, 0, 0}};
  CHECK(std::isfinite(prop41_gap(vac, m, make_grid(4))));
  CHECK(std::isfinite(regest3_gap(vac, m, make_grid(4))));
  CHECK(has_vacuum(vac));
  CHECK_FALSE(has_vacuum(uniform(4, 1, 1)));
}

TEST_CASE("auxiliary monitors") {
  const Grid g = make_grid(16);
  const auto one = auxiliary_monitors(uniform(16, 1, 1), g);
  CHECK(one.cube_norm == Approx(8.0).epsilon(1e-15));
  CHECK(one.entropy == Approx(kLn2).epsilon(1e-15));
  CHECK(one.bhn.l4_pow4 == Approx(1.0).epsilon(1e-15));
  CHECK(one.bhn.h1_sq == Approx(1.0).epsilon(1e-15));
  CHECK(one.bhn.u_log_u == 0.0);
  CHECK(one.bhn.l1 == Approx(1.0).epsilon(1e-15));
  const auto zero = auxiliary_monitors(uniform(16, 0, 0), g);
  CHECK(zero.cube_norm == Approx(1.0).epsilon(1e-15));
  CHECK(zero.entropy == 0.0);
  CHECK(zero.v_L2 == 0.0);
  CHECK(zero.vt_L2 == 0.0);
  CHECK(zero.bhn.l1 == 0.0);
  CHECK(auxiliary_monitors(uniform(16, 3, 3), g).entropy == Approx(3.0 * std::log(4.0)).epsilon(1e-14));
}

TEST_CASE("snapshot of a constant state") {
  const DiffusionModel m(1);
  const auto s = sample_functionals(uniform(32, 1, 1), m, make_grid(32));
  CHECK(s.mass == 1.0);
  CHECK(s.sup_u == 1.0);
  CHECK(s.min_u == 1.0);
  CHECK(s.G == 0.0);
  CHECK(s.L_classical == Approx(-0.5).epsilon(1e-15));
  CHECK(s.D_dissipation == Approx(0.125).epsilon(1e-15));
  CHECK(s.R_rate == Approx(0.125).epsilon(1e-15));
  CHECK_FALSE(s.vacuum_flag);
  const auto q = sample_functionals(uniform(32, 1, 1), DiffusionModel(2), make_grid(32));
  CHECK(std::isnan(q.F_critical));
  CHECK(std::isnan(q.prop41_gap));
  CHECK(std::isnan(q.regest3_gap));
}
