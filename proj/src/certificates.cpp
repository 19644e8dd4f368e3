#include "tailcert/certificates.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

#include "tailcert/special_functions.hpp"
#include "tailcert/stats.hpp"

namespace tailcert {
namespace {

std::vector<double> sorted_abs_desc(const std::vector<double>& a) {
  std::vector<double> r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = std::fabs(a[i]);
  std::sort(r.begin(), r.end(), std::greater<double>());
  return r;
}

double norm_l2(const std::vector<double>& a) {
  double acc = 0.0;
  for (double v : a) acc += v * v;
  return std::sqrt(acc);
}

// (sum |a_i|^q)^(1/q), scaled by the largest entry so large q stays finite.
double norm_lq(const std::vector<double>& sorted_desc, double q) {
  const double top = sorted_desc.empty() ? 0.0 : sorted_desc.front();
  if (top <= 0.0) return 0.0;
  double acc = 0.0;
  for (double v : sorted_desc) {
    if (v <= 0.0) break;
    acc += std::pow(v / top, q);
  }
  return top * std::pow(acc, 1.0 / q);
}

double lorentz_of_sorted(const std::vector<double>& sorted_desc, double q) {
  double acc = 0.0;
  const double e = -1.0 + 2.0 / q;
  for (std::size_t i = 0; i < sorted_desc.size(); ++i) {
    const double v = sorted_desc[i];
    if (v <= 0.0) break;
    acc += std::pow(static_cast<double>(i + 1), e) * v * v;
  }
  return acc;
}

void check_certificate_inputs(const std::vector<double>& a, double q,
                              double c_dev, double c_prob) {
  if (!(q > 2.0)) throw DomainError("certificate: need q > 2");
  if (a.empty()) throw DomainError("certificate: empty coefficient vector");
  bool nonzero = false;
  for (double v : a) {
    if (!std::isfinite(v)) {
      throw DomainError("certificate: coefficients must be finite");
    }
    if (v != 0.0) nonzero = true;
  }
  if (!nonzero) throw DomainError("certificate: coefficients are all zero");
  // c_dev = 0 is allowed so failure injection can exercise the verification
  // path; the bound is then identically zero.
  if (!(c_dev >= 0.0) || !(c_prob > 0.0)) {
    throw DomainError("certificate: constants must be positive");
  }
}

}  // namespace

double lorentz_weight(const std::vector<double>& a, double q) {
  if (!(q > 2.0)) throw DomainError("lorentz_weight: need q > 2");
  return lorentz_of_sorted(sorted_abs_desc(a), q);
}

DeviationCertificate::DeviationCertificate(CertificateKind kind,
                                           std::vector<double> a, double q,
                                           double c_dev, double c_prob,
                                           double iter_base)
    : kind_(kind),
      a_(std::move(a)),
      q_(q),
      c_dev_(c_dev),
      c_prob_(c_prob),
      iter_base_(iter_base) {
  check_certificate_inputs(a_, q_, c_dev_, c_prob_);
  rearranged_ = sorted_abs_desc(a_);
  l2_ = norm_l2(rearranged_);
  lq_ = norm_lq(rearranged_, q_);
  lorentz_ = lorentz_of_sorted(rearranged_, q_);
  if (kind_ == CertificateKind::AllDirections) {
    if (!(iter_base_ > 1.0)) {
      throw DomainError("certificate: iter_base must exceed 1");
    }
    exponent_ = 1.0 + (1.0 - 2.0 / q_) *
                          ln_star(static_cast<double>(a_.size()), iter_base_);
  }
}

DeviationCertificate DeviationCertificate::main(std::vector<double> a,
                                               double q, double c_dev,
                                               double c_prob) {
  return DeviationCertificate(CertificateKind::Main, std::move(a), q, c_dev,
                              c_prob, 2.0);
}

DeviationCertificate DeviationCertificate::special_direction(std::size_t n,
                                                             double q,
                                                             double c_dev,
                                                             double c_prob) {
  if (n == 0) throw DomainError("certificate: need n >= 1");
  std::vector<double> a(n);
  for (std::size_t i = 0; i < n; ++i) {
    a[i] = std::pow(static_cast<double>(i + 1), -1.0 / q);
  }
  return DeviationCertificate(CertificateKind::SpecialDirection, std::move(a),
                              q, c_dev, c_prob, 2.0);
}

DeviationCertificate DeviationCertificate::special_direction_from(
    std::vector<double> a, double q, double c_dev, double c_prob) {
  if (!(q > 2.0)) throw DomainError("certificate: need q > 2");
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double want = std::pow(static_cast<double>(i + 1), -1.0 / q);
    if (!(std::fabs(a[i] - want) <= 1e-12)) {
      throw ConfigError(
          "special_direction: coefficients must equal i^(-1/q)");
    }
  }
  return DeviationCertificate(CertificateKind::SpecialDirection, std::move(a),
                              q, c_dev, c_prob, 2.0);
}

DeviationCertificate DeviationCertificate::all_directions(
    std::vector<double> a, double q, double c_dev, double c_prob,
    double iter_base) {
  return DeviationCertificate(CertificateKind::AllDirections, std::move(a), q,
                              c_dev, c_prob, iter_base);
}

double DeviationCertificate::bound_at(double t) const {
  if (!(t > 0.0)) throw DomainError("bound_at: need t > 0");
  const double lift = std::exp(t * t / (2.0 * q_));
  switch (kind_) {
    case CertificateKind::Main:
      return c_dev_ * t * (l2_ + lift * std::sqrt(lorentz_));
    case CertificateKind::SpecialDirection: {
      const double n = static_cast<double>(a_.size());
      return c_dev_ * t *
             (std::pow(n, 0.5 - 1.0 / q_) +
              lift * std::pow(std::log(n), 1.0 / q_));
    }
    case CertificateKind::AllDirections:
      return std::pow(c_dev_, exponent_) * t * (l2_ + lift * lq_);
  }
  return std::numeric_limits<double>::quiet_NaN();
}

double DeviationCertificate::tail_probability(double t) const {
  if (!(t > 0.0)) throw DomainError("tail_probability: need t > 0");
  return c_prob_ * std::exp(-0.5 * t * t);
}

DeviationCertificate DeviationCertificate::with_c_dev(double c_dev) const {
  return with_constants(c_dev, c_prob_);
}

DeviationCertificate DeviationCertificate::with_constants(double c_dev,
                                                          double c_prob)
    const {
  DeviationCertificate out(*this);
  if (!(c_dev >= 0.0) || !(c_prob > 0.0)) {
    throw DomainError("certificate: constants must be positive");
  }
  out.c_dev_ = c_dev;
  out.c_prob_ = c_prob;
  return out;
}

double gradient_envelope(const std::vector<double>& a, double q,
                         const std::vector<double>& z) {
  if (a.size() != z.size()) {
    throw ConfigError("gradient_envelope: dimension mismatch");
  }
  if (!(q > 0.0)) throw DomainError("gradient_envelope: need q > 0");
  double acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0.0) continue;
    const double m = normal_cdf(-std::fabs(z[i]));
    if (m <= 0.0) return std::numeric_limits<double>::infinity();
    const double level = -std::log(m);
    acc += a[i] * a[i] * std::exp((2.0 / q) * level) * level;
  }
  return std::sqrt(acc);
}

DyadicCompression dyadic_compress(const std::vector<double>& x, double q,
                                  std::size_t min_dim) {
  if (!(q > 2.0)) throw DomainError("dyadic_compress: need q > 2");
  if (min_dim < 1) throw DomainError("dyadic_compress: need min_dim >= 1");
  if (x.empty()) throw DomainError("dyadic_compress: empty input");
  double top = 0.0;
  for (double v : x) {
    if (!(v >= 0.0)) {
      throw DomainError("dyadic_compress: entries must be nonnegative");
    }
    top = std::max(top, v);
  }
  if (top <= 0.0) throw DomainError("dyadic_compress: zero vector");

  DyadicCompression out;
  std::vector<double> v(x);
  std::sort(v.begin(), v.end(), std::greater<double>());

  const double half_q = 0.5 * q;
  while (v.size() > min_dim) {
    const std::size_t m = v.size();
    const int bands =
        static_cast<int>(std::ceil(std::log2(static_cast<double>(m))));
    const double v1 = v.front();
    double l1 = 0.0;
    std::vector<double> acc(static_cast<std::size_t>(bands), 0.0);
    for (double vi : v) {
      l1 += vi;
      if (vi <= 0.0) continue;
      const double ratio = vi / v1;
      int j = static_cast<int>(std::floor(-std::log2(ratio))) + 1;
      if (j < 1) j = 1;
      if (j > bands) j = bands;  // residual entries join the last band
      acc[static_cast<std::size_t>(j - 1)] += std::pow(ratio, half_q);
    }
    out.l1_accumulated += l1;

    std::vector<double> w;
    w.reserve(acc.size());
    for (double s : acc) {
      if (s > 0.0) w.push_back(v1 * std::pow(s, 1.0 / half_q));
    }
    out.levels.push_back(w);
    out.iterations += 1;
    v = std::move(w);
  }
  out.terminal = std::move(v);
  return out;
}

double all_directions_coefficient(double n, double q, double cq) {
  if (!(n >= 1.0)) throw DomainError("all_directions_coefficient: need n >= 1");
  if (!(q > 2.0)) throw DomainError("all_directions_coefficient: need q > 2");
  if (!(cq > 1.0)) {
    throw DomainError("all_directions_coefficient: need cq > 1");
  }
  return std::pow(cq, 1.0 + (1.0 - 2.0 / q) * ln_star(n, cq));
}

}  // namespace tailcert
