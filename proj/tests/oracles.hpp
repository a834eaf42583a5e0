#pragma once

// Reference computations that do not share code with the library.

#include <cmath>
#include <functional>
#include <vector>

namespace oracle {

inline double simpson_step(const std::function<double(double)>& f, double a, double b, double fa, double fm,
                           double fb, double whole, double tol, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = f(lm);
  const double frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const double delta = left + right - whole;
  if (depth <= 0 || std::abs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
  return simpson_step(f, a, m, fa, flm, fm, left, tol / 2.0, depth - 1) +
         simpson_step(f, m, b, fm, frm, fb, right, tol / 2.0, depth - 1);
}

// Adaptive Simpson with Richardson correction; signed for b < a.
inline double simpson(const std::function<double(double)>& f, double a, double b, double tol = 1e-13) {
  if (a == b) return 0.0;
  if (b < a) return -simpson(f, b, a, tol);
  const double fa = f(a);
  const double fb = f(b);
  const double fm = f(0.5 * (a + b));
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return simpson_step(f, a, b, fa, fm, fb, whole, tol, 50);
}

inline double a_of(double p, double u) { return std::pow(1.0 + u, -p); }

// B(u) = int_1^u a.
inline double B(double p, double u) {
  return simpson([p](double r) { return a_of(p, r); }, 1.0, u);
}

// b'(u) = int_0^{log u} a(e^s) ds.
inline double b_prime(double p, double u) {
  return simpson([p](double s) { return a_of(p, std::exp(s)); }, 0.0, std::log(u));
}

// b(u) = int_1^u b'(s) ds, nested.
inline double b(double p, double u) {
  return simpson([p](double s) { return b_prime(p, s); }, 1.0, u, 1e-11);
}

inline std::vector<double> centers(int n) {
  std::vector<double> x(n);
  for (int i = 0; i < n; ++i) x[i] = (i + 0.5) / n;
  return x;
}

inline double max_abs(const std::vector<double>& w) {
  double m = 0.0;
  for (double x : w) m = std::max(m, std::abs(x));
  return m;
}

}  // namespace oracle
