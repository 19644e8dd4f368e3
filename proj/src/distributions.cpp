#include "tailcert/distributions.hpp"

#include <cmath>

#include "tailcert/quadrature.hpp"

namespace tailcert {
namespace {

// One tail half of E f(X): integral over v in [log 2, V] of
// f(Q(tail mass e^-v)) e^-v, where Q is evaluated stably from the tail mass.
// decay_rate is a lower bound on the exponential decay of the integrand in v
// beyond lo + v_extra; together they set the truncation point so the
// discarded tail is ~e^-45 relative. v_extra covers integrands that peak
// deep in the tail before decaying, like |Q|^p under a normal model.
double tail_half_integral(double decay_rate,
                          const std::function<double(double)>& integrand_of_s,
                          int panels = 96, double v_extra = 0.0) {
  const double lo = std::log(2.0);
  const double hi = lo + v_extra + 45.0 / decay_rate;
  auto g = [&](double v) {
    const double s = std::max(std::exp(-v), 1e-320);
    return integrand_of_s(s) * s;
  };
  return gauss15_panels(g, lo, hi, panels);
}

double quantile_lower_stable(const QuantileModel& m, double s) {
  // quantile(s) for small lower-tail mass s, avoiding 1 - s cancellation.
  if (m.kind() == ModelKind::ParetoTail) {
    return std::exp(-std::log1p(-s) / m.shape());
  }
  if (m.is_symmetric_kind()) return -m.upper_tail_quantile(s);
  return m.quantile(s);
}

// ln P{|X| > e^(log_t)}, exact per model kind, valid far past the point
// where the survival probability itself underflows. Only the kinds with a
// finite tail exponent are handled.
double log_two_sided_tail(const QuantileModel& m, double log_t) {
  switch (m.kind()) {
    case ModelKind::ParetoTail:
    case ModelKind::PureParetoH:
      if (log_t <= 0.0) return 0.0;
      return -m.shape() * log_t;
    case ModelKind::SymmetricPowerLaw:
      // ln (1 + t)^-q without forming e^(log_t) when it would overflow.
      if (log_t > 40.0) return -m.shape() * log_t;
      return -m.shape() * std::log1p(std::exp(log_t));
    case ModelKind::UEnvelope: {
      // The variable is g(m) = m^(-2/q) ln(1/m) with mass 2m above g(m),
      // m in (0, 1/2]. Solve log_t = (2/q) y + ln y for y = ln(1/m) by
      // Newton; the survival log is then ln 2 - y.
      const double q = m.shape();
      const double y_min = std::log(2.0);
      if (log_t <= (2.0 / q) * y_min + std::log(y_min)) return 0.0;
      double y = std::max(y_min, 0.5 * q * log_t);
      for (int it = 0; it < 100; ++it) {
        const double f = (2.0 / q) * y + std::log(y) - log_t;
        const double step = f / (2.0 / q + 1.0 / y);
        y -= step;
        if (y < y_min) y = y_min;
        if (std::fabs(step) < 1e-13 * (1.0 + std::fabs(y))) break;
      }
      return std::log(2.0) - y;
    }
    default:
      break;
  }
  throw NumericalError("log_two_sided_tail: unsupported model kind");
}

}  // namespace

double QuantileModel::cdf(double x) const {
  switch (kind_) {
    case ModelKind::ParetoTail:
      if (x < 1.0) return 0.0;
      return 1.0 - std::pow(x, -shape_);
    case ModelKind::SymmetricPowerLaw:
      if (x >= 0.0) return 1.0 - 0.5 * std::pow(1.0 + x, -shape_);
      return 0.5 * std::pow(1.0 - x, -shape_);
    case ModelKind::StandardNormal:
      return normal_cdf(x);
    case ModelKind::PureParetoH:
      if (x >= 1.0) return 1.0 - 0.5 * std::pow(x, -shape_);
      if (x > -1.0) return 0.5;
      return 0.5 * std::pow(-x, -shape_);
    case ModelKind::UEnvelope: {
      const double lowest = quantile_unchecked(1e-300);
      if (x <= lowest) return 0.0;
      // quantile is strictly increasing; invert by bisection on tail mass.
      double lo = 0.0, hi = 1.0;
      for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double qv = (mid <= 0.0 || mid >= 1.0)
                              ? (mid <= 0.0 ? lowest : std::numeric_limits<double>::infinity())
                              : quantile_unchecked(mid);
        if (qv <= x) {
          lo = mid;
        } else {
          hi = mid;
        }
        if (hi - lo < 1e-16) break;
      }
      return 0.5 * (lo + hi);
    }
    case ModelKind::Empirical: {
      const std::size_t m = sample_.size();
      if (x < sample_.front()) return 0.0;
      if (x >= sample_.back()) return 1.0;
      // Inverse of the midpoint-interpolated quantile through
      // (x_i, (i + 0.5) / m).
      const auto it = std::upper_bound(sample_.begin(), sample_.end(), x);
      const std::size_t j = static_cast<std::size_t>(it - sample_.begin()) - 1;
      const double pj = (static_cast<double>(j) + 0.5) / static_cast<double>(m);
      const double pj1 = (static_cast<double>(j) + 1.5) / static_cast<double>(m);
      const double gap = sample_[j + 1] - sample_[j];
      if (gap <= 0.0) return pj1;
      return pj + (pj1 - pj) * (x - sample_[j]) / gap;
    }
  }
  return 0.0;
}

double moment(const QuantileModel& model, double p) {
  if (!(p > 0.0)) throw DomainError("moment: need p > 0");
  if (p >= model.tail_exponent()) {
    return std::numeric_limits<double>::infinity();
  }
  if (model.kind() == ModelKind::Empirical) {
    double acc = 0.0;
    for (double x : model.sample()) acc += std::pow(std::fabs(x), p);
    return acc / static_cast<double>(model.sample().size());
  }
  const double exponent = model.tail_exponent();
  if (std::isfinite(exponent)) {
    // E|X|^p = int_0^inf p t^(p-1) P{|X| > t} dt. The quantile-scale route
    // overflows |Q|^p for p near the exponent; working from the log survival
    // function keeps every node term representable, because p w and
    // ln P{|X| > e^w} cancel to within ln E|X|^p of each other.
    const double head = gauss15_panels(
        [&](double t) {
          return p * std::pow(t, p - 1.0) *
                 std::exp(log_two_sided_tail(model, std::log(t)));
        },
        0.0, 1.0, 16);
    const double w_hi = 45.0 / (exponent - p) + 5.0;
    const double tail = gauss15_panels(
        [&](double w) {
          return p * std::exp(p * w + log_two_sided_tail(model, w));
        },
        0.0, w_hi, 96);
    return head + tail;
  }
  const double upper = tail_half_integral(
      1.0,
      [&](double s) {
        return std::pow(std::fabs(model.upper_tail_quantile(s)), p);
      },
      96, 2.0 * p);
  double kappa_lo = 1.0;
  const double lower = tail_half_integral(
      kappa_lo,
      [&](double s) {
        return std::pow(std::fabs(quantile_lower_stable(model, s)), p);
      },
      96, 2.0 * p);
  return upper + lower;
}

double expect(const QuantileModel& model, double p_growth,
              const std::function<double(double)>& f, int panels) {
  if (model.kind() == ModelKind::Empirical) {
    double acc = 0.0;
    for (double x : model.sample()) acc += f(x);
    return acc / static_cast<double>(model.sample().size());
  }
  const double exponent = model.tail_exponent();
  const double kappa = std::isfinite(exponent)
                           ? std::max(1e-6, 1.0 - p_growth / exponent)
                           : 1.0;
  const double extra = std::isfinite(exponent) ? 0.0 : 2.0 * p_growth;
  const double upper = tail_half_integral(
      kappa, [&](double s) { return f(model.upper_tail_quantile(s)); }, panels,
      extra);
  double kappa_lo = kappa;
  if (!model.is_symmetric_kind()) kappa_lo = 1.0;
  const double lower = tail_half_integral(
      kappa_lo, [&](double s) { return f(quantile_lower_stable(model, s)); },
      panels, extra);
  return upper + lower;
}

std::vector<double> gaussian_transform_sample(
    const std::vector<QuantileModel>& models, const std::vector<double>& z) {
  if (models.size() != z.size()) {
    throw ConfigError("gaussian_transform_sample: size mismatch");
  }
  const double top = std::nextafter(1.0, 0.0);
  std::vector<double> out(z.size());
  for (std::size_t i = 0; i < z.size(); ++i) {
    double u = normal_cdf(z[i]);
    if (u <= 0.0) u = 1e-300;
    if (u >= 1.0) u = top;
    out[i] = models[i].quantile_unchecked(u);
  }
  return out;
}

bool is_symmetric(const QuantileModel& model, double tol) {
  if (model.is_symmetric_kind()) return true;
  if (model.kind() != ModelKind::Empirical) return false;
  double scale = 0.0;
  for (int i = 1; i <= 63; ++i) {
    const double u = static_cast<double>(i) / 64.0;
    scale = std::max(scale, std::fabs(model.quantile(u)));
  }
  if (scale == 0.0) scale = 1.0;
  for (int i = 1; i <= 63; ++i) {
    const double u = static_cast<double>(i) / 64.0;
    if (std::fabs(model.quantile(u) + model.quantile(1.0 - u)) > tol * scale) {
      return false;
    }
  }
  return true;
}

LipschitzEnvelope lipschitz_envelope(const QuantileModel& model, double q,
                                     int per_decade, int decades) {
  if (!(q > 0.0)) throw DomainError("lipschitz_envelope: need q > 0");
  if (per_decade < 2 || decades < 3) {
    throw DomainError("lipschitz_envelope: grid too small");
  }
  struct Point {
    double log_delta;
    double log_ratio;
  };
  LipschitzEnvelope result;
  std::vector<Point> tail_points;
  const double exponent = 1.0 + 1.0 / q;
  for (int side = 0; side < 2; ++side) {
    for (int d = 0; d < decades; ++d) {
      for (int j = 0; j < per_decade; ++j) {
        const double log10_delta =
            -1.0 - d - static_cast<double>(j) / per_decade;
        const double delta = std::pow(10.0, log10_delta);
        const double s = (side == 0) ? delta : 1.0 - delta;
        const double h = 1e-3 * delta;
        const double slope_fd =
            (model.quantile(s + h) - model.quantile(s - h)) / (2.0 * h);
        const double ratio = std::fabs(slope_fd) * std::pow(delta, exponent);
        result.smallest_cq = std::max(result.smallest_cq, ratio);
        if (delta <= 1e-4 && ratio > 1e-300) {
          tail_points.push_back({std::log(delta), std::log(ratio)});
        }
      }
    }
  }
  if (tail_points.size() < 3) {
    // Quantile slope vanished identically deep in the tails (finite-support
    // interpolants); the envelope holds with the constant found on the grid.
    result.tail_slope = 0.0;
    result.passes = true;
    return result;
  }
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  const double n = static_cast<double>(tail_points.size());
  for (const auto& pt : tail_points) {
    sx += pt.log_delta;
    sy += pt.log_ratio;
    sxx += pt.log_delta * pt.log_delta;
    sxy += pt.log_delta * pt.log_ratio;
  }
  const double denom = n * sxx - sx * sx;
  result.tail_slope = (denom > 0.0) ? (n * sxy - sx * sy) / denom : 0.0;
  // Ratio must not grow as delta -> 0: trend slope in log-log space stays
  // nonnegative up to grid noise.
  result.passes = result.tail_slope >= -0.02;
  return result;
}

}  // namespace tailcert
