#include "tailcert/stats.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <limits>

#include "tailcert/errors.hpp"

namespace tailcert {

double normal_cdf(double x) {
  return 0.5 * std::erfc(-x * 0.7071067811865475244);
}

namespace {

// Wichura-style rational approximation for the normal quantile.
double normal_quantile_seed(double u) {
  const double q = u - 0.5;
  if (std::fabs(q) <= 0.425) {
    const double r = 0.180625 - q * q;
    const double num =
        q * (((((((2509.0809287301226727 * r + 33430.575583588128105) * r +
                   67265.770927008700853) * r + 45921.953931549871457) * r +
                 13731.693765509461125) * r + 1971.5909503065514427) * r +
               133.14166789178437745) * r + 3.387132872796366608);
    const double den =
        (((((((5226.495278852545703 * r + 28729.085735721942674) * r +
              39307.89580009271061) * r + 21213.794301586595867) * r +
            5394.1960214247511077) * r + 687.1870074920579083) * r +
          42.313330701600911252) * r + 1.0);
    return num / den;
  }
  double r = (q < 0.0) ? u : 1.0 - u;
  r = std::sqrt(-std::log(r));
  double val;
  if (r <= 5.0) {
    r -= 1.6;
    const double num =
        (((((((7.7454501427834140764e-4 * r + 0.0227238449892691845833) * r +
              0.24178072517745061177) * r + 1.27045825245236838258) * r +
            3.64784832476320460504) * r + 5.7694972214606914055) * r +
          4.6303378461565452959) * r + 1.42343711074968357734);
    const double den =
        (((((((1.05075007164441684324e-9 * r + 5.475938084995344946e-4) * r +
              0.0151986665636164571966) * r + 0.14810397642748007459) * r +
            0.68976733498510000455) * r + 1.6763848301838038494) * r +
          2.05319162663775882187) * r + 1.0);
    val = num / den;
  } else {
    r -= 5.0;
    const double num =
        (((((((2.01033439929228813265e-7 * r + 2.71155556874348757815e-5) * r +
              0.0012426609473880784386) * r + 0.026532189526576123093) * r +
            0.29656057182850489123) * r + 1.7848265399172913358) * r +
          5.4637849111641143699) * r + 6.6579046435011037772);
    const double den =
        (((((((2.04426310338993978564e-15 * r + 1.4215117583164458887e-7) * r +
              1.8463183175100546818e-5) * r + 7.868691311456132591e-4) * r +
            0.0148753612908506148525) * r + 0.13692988092273580531) * r +
          0.59983220655588793769) * r + 1.0);
    val = num / den;
  }
  return (q < 0.0) ? -val : val;
}

constexpr double kInvSqrt2Pi = 0.3989422804014326779;

}  // namespace

double normal_quantile(double u) {
  if (!(u > 0.0 && u < 1.0)) {
    throw DomainError("normal_quantile: argument must lie in (0, 1)");
  }
  double x = normal_quantile_seed(u);
  // One Halley step against the erfc-based CDF.
  const double pdf = kInvSqrt2Pi * std::exp(-0.5 * x * x);
  if (pdf > 0.0) {
    const double err = normal_cdf(x) - u;
    const double step = err / pdf;
    x -= step / (1.0 + 0.5 * x * step);
  }
  return x;
}

double log_gamma(double x) { return std::lgamma(x); }

double log_beta(double a, double b) {
  return std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b);
}

namespace {

// Continued fraction for the incomplete beta (Lentz's algorithm).
double betacf(double a, double b, double x) {
  constexpr int kMaxIter = 400;
  constexpr double kEps = 3e-16;
  constexpr double kFpMin = 1e-300;
  const double qab = a + b;
  const double qap = a + 1.0;
  const double qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::fabs(d) < kFpMin) d = kFpMin;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= kMaxIter; ++m) {
    const int m2 = 2 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < kFpMin) d = kFpMin;
    c = 1.0 + aa / c;
    if (std::fabs(c) < kFpMin) c = kFpMin;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < kFpMin) d = kFpMin;
    c = 1.0 + aa / c;
    if (std::fabs(c) < kFpMin) c = kFpMin;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::fabs(del - 1.0) < kEps) return h;
  }
  throw NumericalError("incomplete_beta: continued fraction did not converge");
}

}  // namespace

double incomplete_beta(double a, double b, double x) {
  if (!(a > 0.0 && b > 0.0)) {
    throw DomainError("incomplete_beta: shape parameters must be positive");
  }
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 1.0;
  const double front =
      std::exp(a * std::log(x) + b * std::log1p(-x) - log_beta(a, b));
  if (x < (a + 1.0) / (a + b + 2.0)) {
    return front * betacf(a, b, x) / a;
  }
  return 1.0 - std::exp(b * std::log1p(-x) + a * std::log(x) - log_beta(b, a)) *
                   betacf(b, a, 1.0 - x) / b;
}

double incomplete_beta_inv(double a, double b, double p) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw DomainError("incomplete_beta_inv: probability must lie in [0, 1]");
  }
  if (p == 0.0) return 0.0;
  if (p == 1.0) return 1.0;
  double lo = 0.0, hi = 1.0;
  double x = a / (a + b);
  for (int it = 0; it < 200; ++it) {
    const double f = incomplete_beta(a, b, x) - p;
    if (f > 0.0) {
      hi = x;
    } else {
      lo = x;
    }
    // Newton step with bisection fallback.
    const double logpdf = (a - 1.0) * std::log(x) + (b - 1.0) * std::log1p(-x) -
                          log_beta(a, b);
    double next;
    const double pdf = std::exp(logpdf);
    if (pdf > 1e-300) {
      next = x - f / pdf;
    } else {
      next = 0.5 * (lo + hi);
    }
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (std::fabs(next - x) <= 1e-16 + 1e-12 * x) {
      x = next;
      break;
    }
    x = next;
  }
  return x;
}

BinomialInterval clopper_pearson(std::int64_t successes, std::int64_t trials,
                                 double alpha) {
  if (trials <= 0 || successes < 0 || successes > trials) {
    throw DomainError("clopper_pearson: need 0 <= successes <= trials, trials > 0");
  }
  BinomialInterval ci;
  const double x = static_cast<double>(successes);
  const double n = static_cast<double>(trials);
  if (successes == 0) {
    ci.low = 0.0;
  } else {
    ci.low = incomplete_beta_inv(x, n - x + 1.0, alpha / 2.0);
  }
  if (successes == trials) {
    ci.high = 1.0;
  } else {
    ci.high = incomplete_beta_inv(x + 1.0, n - x, 1.0 - alpha / 2.0);
  }
  return ci;
}

TailEstimate tail_estimate(std::int64_t successes, std::int64_t trials,
                           double alpha) {
  TailEstimate est;
  est.successes = successes;
  est.trials = trials;
  est.p_hat = static_cast<double>(successes) / static_cast<double>(trials);
  const BinomialInterval ci = clopper_pearson(successes, trials, alpha);
  est.ci_low = ci.low;
  est.ci_high = ci.high;
  return est;
}

double ks_two_sample(std::vector<double> a, std::vector<double> b) {
  if (a.empty() || b.empty()) {
    throw DomainError("ks_two_sample: both samples must be nonempty");
  }
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  const double na = static_cast<double>(a.size());
  const double nb = static_cast<double>(b.size());
  std::size_t ia = 0, ib = 0;
  double d = 0.0;
  while (ia < a.size() && ib < b.size()) {
    const double va = a[ia];
    const double vb = b[ib];
    if (va <= vb) {
      while (ia < a.size() && a[ia] == va) ++ia;
    }
    if (vb <= va) {
      while (ib < b.size() && b[ib] == vb) ++ib;
    }
    const double fa = static_cast<double>(ia) / na;
    const double fb = static_cast<double>(ib) / nb;
    d = std::max(d, std::fabs(fa - fb));
  }
  return d;
}

std::uint64_t fnv_digest(const double* data, std::size_t count,
                         std::uint64_t seed) {
  std::uint64_t h = seed;
  for (std::size_t i = 0; i < count; ++i) {
    std::uint64_t bits;
    std::memcpy(&bits, &data[i], sizeof(bits));
    for (int byte = 0; byte < 8; ++byte) {
      h ^= (bits >> (8 * byte)) & 0xffULL;
      h *= 0x100000001b3ULL;
    }
  }
  return h;
}

}  // namespace tailcert
