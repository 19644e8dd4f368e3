#pragma once

#include <cstdint>
#include <vector>

namespace tailcert {

// Standard normal CDF, accurate to ~1 ulp via erfc.
double normal_cdf(double x);

// Standard normal quantile; relative error below 1e-15 on (0,1)
// (rational approximation polished by one Halley step against normal_cdf).
double normal_quantile(double u);

double log_gamma(double x);
double log_beta(double a, double b);

// Regularized incomplete beta I_x(a, b).
double incomplete_beta(double a, double b, double x);

// Inverse of I_x(a, b) in x.
double incomplete_beta_inv(double a, double b, double p);

struct BinomialInterval {
  double low = 0.0;
  double high = 1.0;
};

// Exact Clopper-Pearson two-sided interval at confidence 1 - alpha.
BinomialInterval clopper_pearson(std::int64_t successes, std::int64_t trials,
                                 double alpha = 1e-3);

struct TailEstimate {
  std::int64_t successes = 0;
  std::int64_t trials = 0;
  double p_hat = 0.0;
  double ci_low = 0.0;
  double ci_high = 1.0;
};

TailEstimate tail_estimate(std::int64_t successes, std::int64_t trials,
                           double alpha = 1e-3);

// Two-sample Kolmogorov-Smirnov statistic; inputs need not be sorted.
double ks_two_sample(std::vector<double> a, std::vector<double> b);

// FNV-1a over the raw bytes of a double sequence, for determinism checks.
std::uint64_t fnv_digest(const double* data, std::size_t count,
                         std::uint64_t seed = 0xcbf29ce484222325ULL);

}  // namespace tailcert
