#include <doctest.h>

#include <cmath>
#include <numbers>

#include "ks1d/diffusion_model.hpp"
#include "ks1d/errors.hpp"
#include "oracles.hpp"

using ks1d::DiffusionModel;
using doctest::Approx;

TEST_CASE("a and a' reference values") {
  CHECK(DiffusionModel(1).a(0) == 1.0);
  CHECK(DiffusionModel(1).a(3) == 0.25);
  CHECK(DiffusionModel(0.5).a(3) == Approx(0.5).epsilon(1e-15));
  CHECK(DiffusionModel(1).a_prime(0) == -1.0);
  CHECK(DiffusionModel(1).a_prime(1) == -0.25);
  CHECK(DiffusionModel(2).a_prime(1) == Approx(-0.25).epsilon(1e-15));
  CHECK(DiffusionModel(0).a(7.0) == 1.0);
  CHECK(DiffusionModel(0).a_prime(7.0) == 0.0);
}

TEST_CASE("B reference values") {
  CHECK(DiffusionModel(1).B(1) == 0.0);
  CHECK(DiffusionModel(1).B(3) == Approx(std::numbers::ln2).epsilon(1e-15));
  CHECK(DiffusionModel(0).B(3) == Approx(2.0).epsilon(1e-15));
  CHECK(DiffusionModel(1).B_quadrature(3) == Approx(std::numbers::ln2).epsilon(1e-13));
}

TEST_CASE("b and b' for p = 1") {
  const DiffusionModel m(1);
  CHECK(m.b(1) == 0.0);
  CHECK(m.b_prime(1) == 0.0);
  CHECK(m.b_prime(3) == Approx(0.405465108108164381978).epsilon(1e-15));
  CHECK(m.b(3) == Approx(0.523248143764547836516807224935).epsilon(1e-14));
  CHECK(m.b(3) == Approx(3.0 * std::log(3.0) - 4.0 * std::log(2.0)).epsilon(1e-14));
  CHECK(m.b_prime_quadrature(3) == Approx(std::log(1.5)).epsilon(1e-12));
  CHECK(m.b(3) == Approx(oracle::b(1.0, 3.0)).epsilon(1e-9));
}

TEST_CASE("general p primitives match closed forms") {
  // p = 1/2: b'(u) = log((s-1)/(s+1)) - log((sqrt2-1)/(sqrt2+1)), s = sqrt(1+u).
  const auto bp_half = [](double u) {
    const double s = std::sqrt(1.0 + u);
    const double r2 = std::numbers::sqrt2;
    return std::log((s - 1.0) / (s + 1.0)) - std::log((r2 - 1.0) / (r2 + 1.0));
  };
  // p = 2: b'(u) = log(2u/(1+u)) + 1/(1+u) - 1/2.
  const auto bp_two = [](double u) { return std::log(2.0 * u / (1.0 + u)) + 1.0 / (1.0 + u) - 0.5; };
  const DiffusionModel half(0.5);
  const DiffusionModel two(2.0);
  for (double u : {1e-6, 0.1, 0.5, 1.0, 2.5, 10.0, 1e4}) {
    CAPTURE(u);
    CHECK(half.b_prime(u) == Approx(bp_half(u)).epsilon(1e-11));
    CHECK(two.b_prime(u) == Approx(bp_two(u)).epsilon(1e-11));
  }
  CHECK(half.b_prime(0.1) == Approx(-1.97435506815983779758).epsilon(1e-12));
  CHECK(half.b(0.1) == Approx(0.533373921589903207609).epsilon(1e-12));
  CHECK(half.b_prime(10) == Approx(1.14038467032430738266).epsilon(1e-12));
  CHECK(half.b(10) == Approx(7.59902424727846422596).epsilon(1e-12));
  CHECK(two.b_prime(0.1) == Approx(-1.29565718314751609786).epsilon(1e-12));
  CHECK(two.b(0.1) == Approx(0.279525190776157469343).epsilon(1e-12));
  CHECK(two.b_prime(10) == Approx(0.188746091664711358464).epsilon(1e-12));
  CHECK(two.b(10) == Approx(1.47837000755620449373).epsilon(1e-12));
}

TEST_CASE("closed forms agree with independent quadrature") {
  for (double p : {0.0, 0.5, 1.0, 2.0}) {
    const DiffusionModel m(p);
    for (double u : {0.1, 1.0, 10.0}) {
      CAPTURE(p);
      CAPTURE(u);
      CHECK(m.B(u) == Approx(oracle::B(p, u)).epsilon(1e-11));
      CHECK(m.b_prime(u) == Approx(oracle::b_prime(p, u)).epsilon(1e-11));
      CHECK(m.b(u) == Approx(oracle::b(p, u)).epsilon(1e-8));
      CHECK(m.b_prime_quadrature(u) == Approx(oracle::b_prime(p, u)).epsilon(1e-11));
      CHECK(m.B_quadrature(u) == Approx(oracle::B(p, u)).epsilon(1e-11));
    }
  }
}

TEST_CASE("derivative structure: B' = a, (b')' = a/u, b'' = a/u") {
  for (double p : {0.0, 0.5, 1.0, 1.5, 2.0}) {
    const DiffusionModel m(p);
    for (double u : {0.05, 0.7, 1.0, 3.0, 40.0}) {
      CAPTURE(p);
      CAPTURE(u);
      const double h = 1e-4 * u;
      const double dB = (m.B(u + h) - m.B(u - h)) / (2 * h);
      const double dbp = (m.b_prime(u + h) - m.b_prime(u - h)) / (2 * h);
      const double db = (m.b(u + h) - m.b(u - h)) / (2 * h);
      CHECK(dB == Approx(m.a(u)).epsilon(1e-7));
      CHECK(dbp == Approx(m.a(u) / u).epsilon(1e-7));
      CHECK(db == Approx(m.b_prime(u)).epsilon(1e-6).scale(1.0));
      const double da = (m.a(u + h) - m.a(u - h)) / (2 * h);
      CHECK(da == Approx(m.a_prime(u)).epsilon(1e-7).scale(1.0));
    }
  }
}

TEST_CASE("b is convex with minimum 0 at u = 1") {
  for (double p : {0.0, 0.5, 1.0, 2.0}) {
    const DiffusionModel m(p);
    double prev = m.b_prime(1e-3);
    for (double u = 2e-3; u < 50.0; u *= 1.3) {
      const double cur = m.b_prime(u);
      CHECK(cur > prev);
      CHECK(m.b(u) >= 0.0);
      prev = cur;
    }
  }
}

TEST_CASE("domain handling") {
  const DiffusionModel m(1);
  CHECK_THROWS_AS(m.a(-1.0), ks1d::DomainError);
  CHECK_THROWS_AS(m.b_prime(-1e-3), ks1d::DomainError);
  CHECK_THROWS_AS(m.B(std::nan("")), ks1d::DomainError);
  CHECK_THROWS_AS(DiffusionModel(-1.0), ks1d::DomainError);
  CHECK_THROWS_AS(DiffusionModel(1.0, 0.1), ks1d::DomainError);
  CHECK(m.b_prime(0.0) == m.b_prime(DiffusionModel::kUFloor));
  CHECK(std::isfinite(m.b(0.0)));
  CHECK(DiffusionModel::below_floor(1e-13));
  CHECK_FALSE(DiffusionModel::below_floor(1e-12));
  CHECK(DiffusionModel(0.5).b_prime(0.0) == DiffusionModel(0.5).b_prime(DiffusionModel::kUFloor));
}
