#pragma once

#include <cmath>
#include <cstdint>

#include "tailcert/errors.hpp"

namespace tailcert {

// 15-point Gauss-Legendre nodes/weights on [-1, 1].
inline constexpr int kGl15 = 15;
inline constexpr double kGl15Nodes[kGl15] = {
    -0.9879925180204854, -0.9372733924007060, -0.8482065834104272,
    -0.7244177313601701, -0.5709721726085388, -0.3941513470775634,
    -0.2011940939974345, 0.0,                 0.2011940939974345,
    0.3941513470775634,  0.5709721726085388,  0.7244177313601701,
    0.8482065834104272,  0.9372733924007060,  0.9879925180204854};
inline constexpr double kGl15Weights[kGl15] = {
    0.0307532419961173, 0.0703660474881081, 0.1071592204671719,
    0.1395706779261543, 0.1662692058169939, 0.1861610000155622,
    0.1984314853271116, 0.2025782419255613, 0.1984314853271116,
    0.1861610000155622, 0.1662692058169939, 0.1395706779261543,
    0.1071592204671719, 0.0703660474881081, 0.0307532419961173};

template <class F>
double gauss15(F&& f, double a, double b) {
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  double acc = 0.0;
  for (int i = 0; i < kGl15; ++i) {
    acc += kGl15Weights[i] * f(mid + half * kGl15Nodes[i]);
  }
  return acc * half;
}

// Composite 15-point Gauss-Legendre over equal panels.
template <class F>
double gauss15_panels(F&& f, double a, double b, int panels) {
  double acc = 0.0;
  const double w = (b - a) / panels;
  for (int k = 0; k < panels; ++k) {
    acc += gauss15(f, a + k * w, a + (k + 1) * w);
  }
  return acc;
}

namespace detail {

template <class F>
double adaptive_simpson_rec(F& f, double a, double b, double fa, double fm,
                            double fb, double whole, double tol, int depth,
                            std::int64_t& budget) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = f(lm);
  const double frm = f(rm);
  const double h = b - a;
  const double left = (h / 12.0) * (fa + 4.0 * flm + fm);
  const double right = (h / 12.0) * (fm + 4.0 * frm + fb);
  const double delta = left + right - whole;
  if (depth > 0 && std::fabs(delta) <= 15.0 * tol) {
    return left + right + delta / 15.0;
  }
  budget -= 2;
  if (budget <= 0 || depth > 60) {
    throw NumericalError("adaptive_simpson: interval budget exhausted");
  }
  return adaptive_simpson_rec(f, a, m, fa, flm, fm, left, 0.5 * tol, depth + 1,
                              budget) +
         adaptive_simpson_rec(f, m, b, fm, frm, fb, right, 0.5 * tol, depth + 1,
                              budget);
}

}  // namespace detail

// Adaptive Simpson quadrature with an absolute tolerance and a hard cap on
// the number of subintervals.
template <class F>
double adaptive_simpson(F&& f, double a, double b, double tol = 1e-10,
                        std::int64_t max_intervals = 1000000) {
  if (a == b) return 0.0;
  const double fa = f(a);
  const double fb = f(b);
  const double m = 0.5 * (a + b);
  const double fm = f(m);
  const double whole = ((b - a) / 6.0) * (fa + 4.0 * fm + fb);
  std::int64_t budget = max_intervals;
  return detail::adaptive_simpson_rec(f, a, b, fa, fm, fb, whole, tol, 0,
                                      budget);
}

// Adaptive Simpson with the tolerance scaled to a coarse first-pass estimate,
// for integrals whose magnitude is not O(1).
template <class F>
double adaptive_simpson_scaled(F&& f, double a, double b,
                               double rel_tol = 1e-10,
                               std::int64_t max_intervals = 1000000) {
  if (a == b) return 0.0;
  const double rough = gauss15_panels(f, a, b, 64);
  const double tol = rel_tol * (1.0 + std::fabs(rough));
  return adaptive_simpson(f, a, b, tol, max_intervals);
}

}  // namespace tailcert
