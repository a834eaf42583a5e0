#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "ks1d/errors.hpp"
#include "ks1d/functionals.hpp"
#include "ks1d/grid.hpp"
#include "ks1d/integrator.hpp"
#include "ks1d/scenario.hpp"

using namespace ks1d;
using doctest::Approx;

TEST_CASE("stable dt") {
  const DiffusionModel m(1);
  const Grid g = make_grid(64);
  StepControl c;
  const State zero{0.0, std::vector<double>(64, 0.0), std::vector<double>(64, 0.0)};
  CHECK(stable_dt(zero, m, g, c) == Approx(0.4 * g.dx * g.dx / 2.0).epsilon(1e-15));
  const State big{0.0, std::vector<double>(64, 1e3), std::vector<double>(64, 0.0)};
  CHECK(stable_dt(big, m, g, c) == Approx(0.4 * g.dx * g.dx / 2.0).epsilon(1e-15));
  State ramp = zero;
  for (int i = 0; i < 64; ++i) ramp.v[i] = 1e4 * g.center(i);
  const double dt64 = stable_dt(ramp, m, g, c);
  CHECK(dt64 < 0.4 * g.dx * g.dx / 2.0);
  const Grid g2 = make_grid(128);
  State ramp2{0.0, std::vector<double>(128, 0.0), std::vector<double>(128, 0.0)};
  for (int i = 0; i < 128; ++i) ramp2.v[i] = 1e4 * g2.center(i);
  CHECK(dt64 / stable_dt(ramp2, m, g2, c) == Approx(2.0).epsilon(1e-12));
}

TEST_CASE("step attempts") {
  const DiffusionModel m(1);
  const Grid g = make_grid(64);
  StepControl c;
  SUBCASE("steady state is a fixed point") {
    const State s{0.0, std::vector<double>(64, 2.0), std::vector<double>(64, 2.0)};
    const auto r = attempt_step(s, 1e-3, m, g, c);
    CHECK(r.accepted);
    CHECK(r.state.u == s.u);
    CHECK(r.state.v == s.v);
    CHECK(r.state.t == 1e-3);
  }
  SUBCASE("oversized step on a rough state is rejected") {
    State s{0.0, std::vector<double>(64), std::vector<double>(64, 1.0)};
    for (int i = 0; i < 64; ++i) s.u[i] = 1.0 + 0.5 * ((i % 2) ? 1.0 : -1.0);
    const double dt = 10.0 * stable_dt(s, m, g, c);
    const auto r = attempt_step(s, dt, m, g, c);
    CHECK_FALSE(r.accepted);
    CHECK(r.reason != RejectReason::none);
    CHECK(r.state.u == s.u);
  }
  SUBCASE("invalid control") {
    c.rel_tol = 0.0;
    CHECK_THROWS(validate(c));
  }
}

TEST_CASE("trajectories") {
  SUBCASE("steady state stays put") {
    RunConfig cfg;
    cfg.n_cells = 64;
    cfg.t_end = 0.2;
    cfg.sample_interval = 0.05;
    cfg.ic.family = IcFamily::constant;
    cfg.ic.mass = 1.0;
    const auto out = run_scenario(cfg);
    CHECK(out.status == RunStatus::completed);
    REQUIRE(out.snapshots.size() == 5);
    for (const auto& s : out.snapshots) {
      CHECK(std::abs(s.sup_u - 1.0) <= 1e-10);
      CHECK(std::abs(s.min_u - 1.0) <= 1e-10);
    }
    CHECK(out.snapshots.back().t == 0.2);
  }
  SUBCASE("cosine run conserves mass and is deterministic") {
    RunConfig cfg;
    cfg.n_cells = 64;
    cfg.t_end = 0.05;
    cfg.sample_interval = 0.01;
    cfg.ic.mass = 4.0;
    const auto a = run_scenario(cfg);
    const auto b = run_scenario(cfg);
    CHECK(a.status == RunStatus::completed);
    CHECK(a.stats.max_mass_drift <= 1e-12);
    CHECK(a.final_state.u == b.final_state.u);
    CHECK(a.stats.accepted_steps == b.stats.accepted_steps);
    for (std::size_t k = 0; k < a.snapshots.size(); ++k) {
      CHECK(a.snapshots[k].t == Approx(0.01 * static_cast<double>(k)).epsilon(1e-12));
    }
  }
  SUBCASE("time integration error is controlled") {
    RunConfig cfg;
    cfg.n_cells = 32;
    cfg.t_end = 0.05;
    cfg.sample_interval = 0.05;
    cfg.ic.mass = 2.0;
    const auto loose = run_scenario(cfg);
    cfg.control.rel_tol = 1e-11;
    const auto tight = run_scenario(cfg);
    double diff = 0.0;
    for (std::size_t i = 0; i < loose.final_state.u.size(); ++i) {
      diff = std::max(diff, std::abs(loose.final_state.u[i] - tight.final_state.u[i]));
    }
    CHECK(diff <= 1e-6);
  }
  SUBCASE("forced growth blows up near the closed-form time") {
    RunConfig cfg;
    cfg.n_cells = 32;
    cfg.t_end = 1.0;
    cfg.sample_interval = 0.01;
    cfg.dynamics = Dynamics::forced_growth;
    cfg.ic.mass = 2.0;
    const State s0 = make_initial_state(make_grid(32), cfg.ic);
    const double oracle = 1.0 / *std::max_element(s0.u.begin(), s0.u.end());
    const auto out = run_scenario(cfg);
    CHECK(out.status == RunStatus::blowup_detected);
    REQUIRE(out.blowup_time_estimate.has_value());
    // Crossing u_max_threshold precedes the true blowup by 1 / threshold.
    CHECK(*out.blowup_time_estimate >= oracle - 2.0 / cfg.control.u_max_threshold);
    CHECK(*out.blowup_time_estimate <= oracle * (1.0 + 1e-3));
    CHECK(out.stats.max_sup_u > cfg.control.u_max_threshold);
  }
  SUBCASE("bad run configuration") {
    RunConfig cfg;
    cfg.t_end = -1.0;
    CHECK_THROWS_AS(run_scenario(cfg), ConfigError);
  }
}
