#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <vector>

#include "tailcert/errors.hpp"
#include "tailcert/stats.hpp"

namespace tailcert {

enum class ModelKind {
  ParetoTail,         // P{Y > t} = min(1, t^-p), support [1, inf)
  SymmetricPowerLaw,  // P{|X| > t} = (1+t)^-q, symmetric about 0
  UEnvelope,          // quantile ((1-t)/2)^(-2/q) log(2/(1-t)), positive
  StandardNormal,
  PureParetoH,        // symmetric, P{|H| > t} = t^-exponent for t >= 1
  Empirical           // midpoint-interpolated quantile of a finite sample
};

namespace detail {

inline double pow_neg_inv(double x, double q) {
  // x^(-1/q) with fast paths for the common integer shapes.
  if (q == 2.0) return 1.0 / std::sqrt(x);
  if (q == 4.0) return 1.0 / std::sqrt(std::sqrt(x));
  if (q == 1.0) return 1.0 / x;
  return std::exp(-std::log(x) / q);
}

}  // namespace detail

class QuantileModel {
 public:
  static QuantileModel pareto_tail(double p) {
    if (!(p > 1.0)) throw DomainError("pareto_tail: need p > 1");
    return QuantileModel(ModelKind::ParetoTail, p);
  }
  static QuantileModel symmetric_power_law(double q) {
    if (!(q >= 2.0)) throw DomainError("symmetric_power_law: need q >= 2");
    return QuantileModel(ModelKind::SymmetricPowerLaw, q);
  }
  static QuantileModel u_envelope(double q) {
    if (!(q >= 2.0)) throw DomainError("u_envelope: need q >= 2");
    return QuantileModel(ModelKind::UEnvelope, q);
  }
  static QuantileModel standard_normal() {
    return QuantileModel(ModelKind::StandardNormal, 0.0);
  }
  static QuantileModel pure_pareto_h(double exponent) {
    if (!(exponent > 2.0)) throw DomainError("pure_pareto_h: need exponent > 2");
    return QuantileModel(ModelKind::PureParetoH, exponent);
  }
  static QuantileModel empirical(std::vector<double> sample) {
    if (sample.empty()) throw DomainError("empirical: sample must be nonempty");
    std::sort(sample.begin(), sample.end());
    QuantileModel m(ModelKind::Empirical, 0.0);
    m.sample_ = std::move(sample);
    return m;
  }

  ModelKind kind() const { return kind_; }
  double shape() const { return shape_; }
  const std::vector<double>& sample() const { return sample_; }

  double tail_exponent() const {
    switch (kind_) {
      case ModelKind::ParetoTail: return shape_;
      case ModelKind::SymmetricPowerLaw: return shape_;
      case ModelKind::UEnvelope: return 0.5 * shape_;
      case ModelKind::PureParetoH: return shape_;
      default: return std::numeric_limits<double>::infinity();
    }
  }

  bool is_symmetric_kind() const {
    return kind_ == ModelKind::SymmetricPowerLaw ||
           kind_ == ModelKind::StandardNormal ||
           kind_ == ModelKind::PureParetoH;
  }

  bool is_nonnegative() const {
    switch (kind_) {
      case ModelKind::ParetoTail: return true;
      case ModelKind::UEnvelope: return true;
      case ModelKind::Empirical: return sample_.front() >= 0.0;
      default: return false;
    }
  }

  double quantile(double u) const {
    if (!(u > 0.0 && u < 1.0)) {
      throw DomainError("quantile: argument must lie in (0, 1)");
    }
    return quantile_unchecked(u);
  }

  // quantile(u) without the domain guard, for inner simulation loops whose
  // uniforms are strictly inside (0, 1) by construction.
  double quantile_unchecked(double u) const {
    switch (kind_) {
      case ModelKind::ParetoTail:
        return detail::pow_neg_inv(1.0 - u, shape_);
      case ModelKind::SymmetricPowerLaw:
        return (u >= 0.5) ? detail::pow_neg_inv(2.0 * (1.0 - u), shape_) - 1.0
                          : -(detail::pow_neg_inv(2.0 * u, shape_) - 1.0);
      case ModelKind::UEnvelope: {
        const double s = 1.0 - u;
        return detail::pow_neg_inv(0.5 * s, 0.5 * shape_) * std::log(2.0 / s);
      }
      case ModelKind::StandardNormal:
        return normal_quantile(u);
      case ModelKind::PureParetoH:
        if (u > 0.5) return detail::pow_neg_inv(2.0 * (1.0 - u), shape_);
        if (u < 0.5) return -detail::pow_neg_inv(2.0 * u, shape_);
        return -1.0;
      case ModelKind::Empirical:
        return empirical_quantile(u);
    }
    return 0.0;
  }

  // Quantile at 1 - s evaluated directly from the upper-tail mass s, stable
  // for s far below machine resolution of 1 - s.
  double upper_tail_quantile(double s) const {
    if (!(s > 0.0 && s < 1.0)) {
      throw DomainError("upper_tail_quantile: argument must lie in (0, 1)");
    }
    switch (kind_) {
      case ModelKind::ParetoTail:
        return detail::pow_neg_inv(s, shape_);
      case ModelKind::SymmetricPowerLaw:
        return (s <= 0.5) ? detail::pow_neg_inv(2.0 * s, shape_) - 1.0
                          : quantile_unchecked(1.0 - s);
      case ModelKind::UEnvelope:
        return detail::pow_neg_inv(0.5 * s, 0.5 * shape_) * std::log(2.0 / s);
      case ModelKind::StandardNormal:
        return (s <= 0.5) ? -normal_quantile(s) : normal_quantile(1.0 - s);
      case ModelKind::PureParetoH:
        return (s < 0.5) ? detail::pow_neg_inv(2.0 * s, shape_)
                         : quantile_unchecked(1.0 - s);
      case ModelKind::Empirical:
        return empirical_quantile(1.0 - s);
    }
    return 0.0;
  }

  double cdf(double x) const;

 private:
  QuantileModel(ModelKind kind, double shape) : kind_(kind), shape_(shape) {}

  double empirical_quantile(double u) const {
    const std::size_t m = sample_.size();
    if (m == 1) return sample_[0];
    const double pos = u * static_cast<double>(m) - 0.5;
    if (pos <= 0.0) return sample_.front();
    if (pos >= static_cast<double>(m - 1)) return sample_.back();
    const std::size_t i = static_cast<std::size_t>(pos);
    const double frac = pos - static_cast<double>(i);
    return sample_[i] + frac * (sample_[i + 1] - sample_[i]);
  }

  ModelKind kind_;
  double shape_;
  std::vector<double> sample_;
};

// E|X|^p; +inf when p is at or above the tail exponent. Exact for Empirical
// (mean over the sample), quadrature on the quantile scale otherwise.
double moment(const QuantileModel& model, double p);

// Expectation of an arbitrary function under the model, by the same
// quadrature (exact sample mean for Empirical). Used for inner expectations
// whose integrand is bounded on the tails by |x|^p_growth.
double expect(const QuantileModel& model, double p_growth,
              const std::function<double(double)>& f, int panels = 96);

std::vector<double> gaussian_transform_sample(
    const std::vector<QuantileModel>& models, const std::vector<double>& z);

// Numeric symmetry check: quantile(u) ~ -quantile(1-u) on a grid.
bool is_symmetric(const QuantileModel& model, double tol = 1e-9);

struct LipschitzEnvelope {
  bool passes = false;
  double smallest_cq = 0.0;  // max of Lip(s) * min(s, 1-s)^(1 + 1/q) on grid
  double tail_slope = 0.0;   // fitted log-log trend toward the endpoints
};

// Checks whether the local Lipschitz constant of the quantile obeys
// C * min(s, 1-s)^(-1-1/q) with a stable constant as the grid refines
// toward both endpoints.
LipschitzEnvelope lipschitz_envelope(const QuantileModel& model, double q,
                                     int per_decade = 8, int decades = 10);

}  // namespace tailcert
