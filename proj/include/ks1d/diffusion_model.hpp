#pragma once

#include <cmath>
#include <memory>
#include <vector>

namespace ks1d {

/// Diffusion law a(u) = (1+u)^{-p} together with the primitives used by the
/// fluxes and the functionals:
///
///   B(u)  = int_1^u a(r) dr
///   b'(u) = int_1^u a(r)/r dr        (so b'' = a/u, b'(1) = 0)
///   b(u)  = int_1^u b'(s) ds = u b'(u) - B(u)
///
/// B has a closed form for every p. b' is closed-form for p in {0, 1}; other
/// exponents go through adaptive Gauss-Kronrod quadrature, tabulated once on a
/// log-spaced grid and interpolated with cubic Hermite splines.
///
/// Arguments below kUFloor (but >= 0) are evaluated at kUFloor; negative or
/// non-finite arguments throw DomainError. The object is immutable after
/// construction and may be shared across threads.
class DiffusionModel {
 public:
  static constexpr double kUFloor = 1e-12;
  static constexpr double kDefaultQuadratureTol = 1e-12;

  explicit DiffusionModel(double p, double quadrature_tol = kDefaultQuadratureTol);

  double p() const noexcept { return p_; }
  double quadrature_tol() const noexcept { return quadrature_tol_; }
  bool is_critical() const noexcept { return p_ == 1.0; }

  double a(double u) const;
  double a_prime(double u) const;
  double B(double u) const;
  double b_prime(double u) const;
  double b(double u) const;

  /// a(u) without argument checks, for hot loops. Negative u is read as 0.
  double a_unchecked(double u) const noexcept {
    if (u < 0.0) u = 0.0;
    switch (kind_) {
      case Kind::constant: return 1.0;
      case Kind::critical: return 1.0 / (1.0 + u);
      case Kind::general: break;
    }
    return std::pow(1.0 + u, -p_);
  }

  /// b'(u) for u already known to be finite and >= 0.
  double b_prime_unchecked(double u) const;

  /// Direct quadrature paths, bypassing closed forms and the table.
  double B_quadrature(double u) const;
  double b_prime_quadrature(double u) const;

  /// True when u lies below kUFloor and would be clamped.
  static bool below_floor(double u) noexcept { return u < kUFloor; }

 private:
  enum class Kind { constant, critical, general };

  struct BPrimeTable {
    double s_lo = 0.0;
    double s_hi = 0.0;
    double h = 0.0;
    std::vector<double> values;  // b'(exp(s_k))
    std::vector<double> slopes;  // d/ds b'(exp(s)) = a(exp(s_k))
  };

  double integrate_a_over_log(double s0, double s1) const;
  double table_lookup(double s) const;

  double p_;
  double quadrature_tol_;
  Kind kind_;
  std::shared_ptr<const BPrimeTable> table_;
};

}  // namespace ks1d

