#include "tailcert/special_functions.hpp"

#include <cmath>
#include <limits>

#include "tailcert/quadrature.hpp"

namespace tailcert {

double xi_eval(XiKind kind, double t) {
  if (kind == XiKind::Xi1) {
    if (!(t >= 0.0 && t <= 1.0)) {
      throw DomainError("xi_eval: Xi1 argument must lie in [0, 1]");
    }
    return std::exp(t) * (1.0 - t);
  }
  if (!(t >= 0.0)) {
    throw DomainError("xi_eval: Xi2 argument must be nonnegative");
  }
  return std::exp(-t) * (1.0 + t);
}

double xi_inverse(XiKind kind, double y, double tol) {
  if (!(tol > 0.0)) throw DomainError("xi_inverse: tol must be positive");
  if (kind == XiKind::Xi1) {
    if (!(y >= 0.0 && y <= 1.0)) {
      throw DomainError("xi_inverse: Xi1 value must lie in [0, 1]");
    }
    if (y == 0.0) return 1.0;
    if (y == 1.0) return 0.0;
    double lo = 0.0, hi = 1.0;
    for (int it = 0; it < 400 && (hi - lo) > tol; ++it) {
      const double mid = 0.5 * (lo + hi);
      if (xi_eval(XiKind::Xi1, mid) > y) {
        lo = mid;
      } else {
        hi = mid;
      }
    }
    return 0.5 * (lo + hi);
  }
  if (!(y > 0.0 && y <= 1.0)) {
    throw DomainError("xi_inverse: Xi2 value must lie in (0, 1]");
  }
  if (y == 1.0) return 0.0;
  double lo = 0.0;
  double hi = 2.0 * std::log(1.0 / y) + 2.0;
  int guard = 0;
  while (xi_eval(XiKind::Xi2, hi) > y) {
    hi *= 2.0;
    if (++guard > 64) {
      throw NumericalError("xi_inverse: failed to bracket Xi2 root");
    }
  }
  for (int it = 0; it < 400 && (hi - lo) > tol; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (xi_eval(XiKind::Xi2, mid) > y) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

double xi1_inverse_complement(double y) {
  if (!(y >= 0.0 && y <= 1.0)) {
    throw DomainError("xi1_inverse_complement: value must lie in [0, 1]");
  }
  if (y == 0.0) return 0.0;
  if (y == 1.0) return 1.0;
  // Solve w e^(1-w) = y. The root satisfies y/e <= w <= y, so bracket
  // there and bisect geometrically to keep relative precision for tiny y.
  const double log_y = std::log(y);
  double lo = std::max(0.999 * y / M_E, 1e-320);
  double hi = std::min(1.0, 1.001 * y);
  auto f = [&](double w) { return std::log(w) + 1.0 - w - log_y; };
  if (f(lo) > 0.0) lo = 1e-320;
  if (f(hi) < 0.0) hi = 1.0;
  for (int it = 0; it < 300 && hi - lo > 1e-18 * hi; ++it) {
    const double mid = std::sqrt(lo * hi);
    if (f(mid) < 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

double xi_inverse_bound(XiKind kind, double y) {
  if (kind == XiKind::Xi1) {
    if (!(y >= 0.0 && y <= 1.0)) {
      throw DomainError("xi_inverse_bound: Xi1 value must lie in [0, 1]");
    }
    return std::min(std::sqrt(2.0 * (1.0 - y)), 1.0 - y / M_E);
  }
  if (!(y > 0.0 && y <= 1.0)) {
    throw DomainError("xi_inverse_bound: Xi2 value must lie in (0, 1]");
  }
  const double L = std::log(1.0 / y);
  if (y < 2.0 / M_E) {
    return L + std::log(1.0 + 4.0 * L);
  }
  return std::sqrt(2.0 * L + 10.0 * std::pow(L, 1.5));
}

namespace {

// Stable evaluation of e^s/(1+s) / (1 + s e^s / log(e + s e^s)^2).
double c0_objective(double s) {
  if (s < 700.0) {
    const double es = std::exp(s);
    const double L = std::log(M_E + s * es);
    return es / ((1.0 + s) * (1.0 + s * es / (L * L)));
  }
  const double L = s + std::log(s);
  return 1.0 / ((1.0 + s) * (std::exp(-s) + s / (L * L)));
}

}  // namespace

C0Scan c0_scan(int grid_points, double refine_tol) {
  if (grid_points < 8) throw DomainError("c0_scan: grid too small");
  if (!(refine_tol > 0.0)) throw DomainError("c0_scan: tol must be positive");
  const double lo = 1e-6, hi = 1e3;
  const double step = std::log(hi / lo) / (grid_points - 1);
  double best_s = lo, best_v = -1.0;
  double sm1 = lo, sp1 = hi;
  for (int i = 0; i < grid_points; ++i) {
    const double s = lo * std::exp(step * i);
    const double v = c0_objective(s);
    if (v > best_v) {
      best_v = v;
      best_s = s;
      sm1 = (i > 0) ? lo * std::exp(step * (i - 1)) : lo;
      sp1 = (i + 1 < grid_points) ? lo * std::exp(step * (i + 1)) : hi;
    }
  }
  // Golden-section refinement on the bracketing neighbours.
  const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
  double a = sm1, b = sp1;
  double c = b - gr * (b - a);
  double d = a + gr * (b - a);
  double fc = c0_objective(c), fd = c0_objective(d);
  while (b - a > refine_tol) {
    if (fc > fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - gr * (b - a);
      fc = c0_objective(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + gr * (b - a);
      fd = c0_objective(d);
    }
  }
  C0Scan out;
  out.argmax = 0.5 * (a + b);
  out.value = c0_objective(out.argmax);
  if (out.value < best_v) {
    out.value = best_v;
    out.argmax = best_s;
  }
  return out;
}

double c0_constant(int grid_points, double refine_tol) {
  return c0_scan(grid_points, refine_tol).value;
}

int ln_star(double n, double cq) {
  if (!(n > 0.0)) throw DomainError("ln_star: n must be positive");
  if (!(cq >= 1.0)) throw DomainError("ln_star: cq must be at least 1");
  int j = 0;
  double x = n;
  while (x > cq) {
    x = std::max(std::log(x), 1.0);
    ++j;
    if (j > 1000) throw NumericalError("ln_star: iteration runaway");
  }
  return j;
}

IntegralBoundPair integral_bound_pair(double a, double b, double r,
                                      bool weighted) {
  if (!(a > 0.0 && b >= a)) {
    throw DomainError("integral_bound_pair: need 0 < a <= b");
  }
  IntegralBoundPair out;
  if (!weighted) {
    const double inv = (r == 1.0) ? std::numeric_limits<double>::infinity()
                                  : 1.0 / std::fabs(1.0 - r);
    const double factor = std::min(inv, std::log(b / a));
    out.lemma_upper =
        factor * (std::pow(a, 1.0 - r) + std::pow(b, 1.0 - r));
    out.quadrature = adaptive_simpson_scaled(
        [r](double x) { return std::pow(x, -r); }, a, b, 1e-9);
    return out;
  }
  if (!(b < 1.0 / M_E)) {
    throw DomainError("integral_bound_pair: weighted form needs b < 1/e");
  }
  if (!(r > 1.0)) {
    throw DomainError("integral_bound_pair: weighted form needs r > 1");
  }
  const double la = std::log(1.0 / a);
  const double lb = std::log(1.0 / b);
  const double head = std::min(1.0, std::log(la / lb)) / lb;
  const double inv_rm1 = 1.0 / (r - 1.0);
  const double tail = std::min(inv_rm1, std::log(b / a)) *
                      std::pow(inv_rm1 + la, -2.0) * std::pow(a, 1.0 - r);
  out.lemma_upper = head + tail;
  out.quadrature = adaptive_simpson_scaled(
      [r](double x) {
        const double lg = std::log(1.0 / x);
        return std::pow(x, -r) / (lg * lg);
      },
      a, b, 1e-9);
  return out;
}

}  // namespace tailcert
