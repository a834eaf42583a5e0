#include "ks1d/diffusion_model.hpp"

#include <algorithm>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <sstream>

#include "ks1d/errors.hpp"

namespace ks1d {

namespace {

constexpr std::size_t kTableIntervals = std::size_t{1} << 15;
constexpr unsigned kMaxDepth = 20;

double checked_argument(double u, const char* what) {
  if (!std::isfinite(u) || u < 0.0) {
    std::ostringstream os;
    os << what << ": argument must be finite and >= 0, got " << u;
    throw DomainError(os.str());
  }
  return u;
}

double floored(double u, const char* what) {
  return std::max(checked_argument(u, what), DiffusionModel::kUFloor);
}

}  // namespace

DiffusionModel::DiffusionModel(double p, double quadrature_tol)
    : p_(p), quadrature_tol_(quadrature_tol) {
  if (!std::isfinite(p) || p < 0.0) {
    std::ostringstream os;
    os << "diffusion exponent p must be finite and >= 0, got " << p;
    throw DomainError(os.str());
  }
  if (!(quadrature_tol > 0.0 && quadrature_tol < 1e-3)) {
    std::ostringstream os;
    os << "quadrature_tol must lie in (0, 1e-3), got " << quadrature_tol;
    throw DomainError(os.str());
  }
  if (p == 0.0) {
    kind_ = Kind::constant;
  } else if (p == 1.0) {
    kind_ = Kind::critical;
  } else {
    kind_ = Kind::general;
  }
  if (kind_ != Kind::general) return;

  // s = log u on [-L, L] with s = 0 landing exactly on node N/2, so the
  // anchor b'(1) = 0 is exact in the table.
  auto table = std::make_shared<BPrimeTable>();
  const double half_width = -std::log(kUFloor);
  const std::size_t n = kTableIntervals;
  const std::size_t mid = n / 2;
  table->h = 2.0 * half_width / static_cast<double>(n);
  table->s_lo = -static_cast<double>(mid) * table->h;
  table->s_hi = static_cast<double>(n - mid) * table->h;
  table->values.assign(n + 1, 0.0);
  table->slopes.assign(n + 1, 0.0);
  auto node = [&](std::size_t k) {
    return (static_cast<double>(k) - static_cast<double>(mid)) * table->h;
  };
  for (std::size_t k = mid + 1; k <= n; ++k) {
    table->values[k] = table->values[k - 1] + integrate_a_over_log(node(k - 1), node(k));
  }
  for (std::size_t k = mid; k-- > 0;) {
    table->values[k] = table->values[k + 1] - integrate_a_over_log(node(k), node(k + 1));
  }
  for (std::size_t k = 0; k <= n; ++k) {
    table->slopes[k] = a_unchecked(std::exp(node(k)));
  }
  table_ = std::move(table);
}

double DiffusionModel::a(double u) const {
  return a_unchecked(checked_argument(u, "a"));
}

double DiffusionModel::a_prime(double u) const {
  checked_argument(u, "a'");
  switch (kind_) {
    case Kind::constant: return 0.0;
    case Kind::critical: return -1.0 / ((1.0 + u) * (1.0 + u));
    case Kind::general: break;
  }
  return -p_ * std::pow(1.0 + u, -p_ - 1.0);
}

double DiffusionModel::B(double u) const {
  u = floored(u, "B");
  switch (kind_) {
    case Kind::constant: return u - 1.0;
    case Kind::critical: return std::log((1.0 + u) / 2.0);
    case Kind::general: break;
  }
  // ((1+u)^{1-p} - 2^{1-p}) / (1-p), written to stay accurate for p near 1.
  const double q = 1.0 - p_;
  return std::pow(2.0, q) * std::expm1(q * std::log((1.0 + u) / 2.0)) / q;
}

double DiffusionModel::b_prime(double u) const {
  return b_prime_unchecked(floored(u, "b'"));
}

double DiffusionModel::b_prime_unchecked(double u) const {
  u = std::max(u, kUFloor);
  switch (kind_) {
    case Kind::constant: return std::log(u);
    case Kind::critical: return std::log(2.0 * u / (1.0 + u));
    case Kind::general: break;
  }
  const double s = std::log(u);
  if (s <= table_->s_hi) return table_lookup(std::max(s, table_->s_lo));
  return table_->values.back() + integrate_a_over_log(table_->s_hi, s);
}

double DiffusionModel::b(double u) const {
  u = floored(u, "b");
  // Integration by parts with b'(1) = 0.
  return u * b_prime_unchecked(u) - B(u);
}

double DiffusionModel::B_quadrature(double u) const {
  u = floored(u, "B");
  if (u == 1.0) return 0.0;
  const auto f = [this](double r) { return a_unchecked(r); };
  double error = 0.0;
  double l1 = 0.0;
  const double lo = std::min(u, 1.0);
  const double hi = std::max(u, 1.0);
  const double value = boost::math::quadrature::gauss_kronrod<double, 31>::integrate(
      f, lo, hi, kMaxDepth, quadrature_tol_, &error, &l1);
  if (error > quadrature_tol_ * std::max(1.0, l1)) {
    throw QuadratureError("B quadrature did not converge");
  }
  return u < 1.0 ? -value : value;
}

double DiffusionModel::b_prime_quadrature(double u) const {
  u = floored(u, "b'");
  return integrate_a_over_log(0.0, std::log(u));
}

// int_{s0}^{s1} a(e^s) ds, which equals int a(r)/r dr after r = e^s.
double DiffusionModel::integrate_a_over_log(double s0, double s1) const {
  if (s0 == s1) return 0.0;
  const auto f = [this](double s) { return a_unchecked(std::exp(s)); };
  double error = 0.0;
  double l1 = 0.0;
  const double lo = std::min(s0, s1);
  const double hi = std::max(s0, s1);
  const double value = boost::math::quadrature::gauss_kronrod<double, 31>::integrate(
      f, lo, hi, kMaxDepth, quadrature_tol_, &error, &l1);
  if (error > quadrature_tol_ * std::max(1.0, l1)) {
    throw QuadratureError("b' quadrature did not converge");
  }
  return s1 < s0 ? -value : value;
}

double DiffusionModel::table_lookup(double s) const {
  const auto& t = *table_;
  const std::size_t last = t.values.size() - 2;
  const double pos = (s - t.s_lo) / t.h;
  std::size_t k = pos <= 0.0 ? 0 : static_cast<std::size_t>(pos);
  k = std::min(k, last);
  const double x = pos - static_cast<double>(k);
  const double x2 = x * x;
  const double x3 = x2 * x;
  const double h00 = 2.0 * x3 - 3.0 * x2 + 1.0;
  const double h10 = x3 - 2.0 * x2 + x;
  const double h01 = -2.0 * x3 + 3.0 * x2;
  const double h11 = x3 - x2;
  return h00 * t.values[k] + h10 * t.h * t.slopes[k] + h01 * t.values[k + 1] +
         h11 * t.h * t.slopes[k + 1];
}

}  // namespace ks1d
