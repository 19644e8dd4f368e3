#include "tailcert/order_stats.hpp"

#include <algorithm>
#include <cmath>

#include "tailcert/quadrature.hpp"
#include "tailcert/special_functions.hpp"

namespace tailcert {
namespace {

constexpr double kPi = 3.14159265358979323846;

double clamp01(double x) { return std::min(1.0, std::max(0.0, x)); }

// exp((-lambda^2 - 4 log(m+1)) / (2 (m+1))) for the (m+1)-st largest block.
double block_mass(double lambda, double m_plus_1) {
  return std::exp((-lambda * lambda - 4.0 * std::log(m_plus_1)) /
                  (2.0 * m_plus_1));
}

double cached_c0() {
  static const double value = c0_constant();
  return value;
}

}  // namespace

double binomial_chernoff(std::size_t n, double p, double s) {
  if (n == 0) throw DomainError("binomial_chernoff: need n >= 1");
  if (!(p > 0.0 && p < 1.0)) {
    throw DomainError("binomial_chernoff: need p in (0, 1)");
  }
  const double nn = static_cast<double>(n);
  const double np = nn * p;
  if (!(s >= np && s < nn)) {
    throw DomainError("binomial_chernoff: need n p <= s < n");
  }
  double log_bound = 0.0;
  if (s > 0.0) log_bound += s * std::log(np / s);
  const double ns = nn - s;
  if (ns > 0.0) log_bound += ns * std::log((nn - np) / ns);
  return std::exp(log_bound);
}

void renyi_sample_into(std::size_t n, StreamCursor& stream,
                       std::vector<double>& out) {
  out.resize(n);
  double acc = 0.0;
  for (std::size_t j = 1; j <= n; ++j) {
    acc += stream.exponential() / static_cast<double>(n - j + 1);
    out[j - 1] = -std::expm1(-acc);
  }
}

std::vector<double> renyi_sample(std::size_t n, StreamCursor& stream) {
  std::vector<double> out;
  renyi_sample_into(n, stream, out);
  return out;
}

OrderStatEnvelope orderstat_envelope(const EnvelopeParams& params) {
  const std::size_t n = params.n;
  const double t = params.t;
  if (n == 0) throw DomainError("orderstat_envelope: need n >= 1");
  if (!(t > 0.0)) throw DomainError("orderstat_envelope: need t > 0");
  if (!(params.renyi_C >= 1.0)) {
    throw DomainError("orderstat_envelope: need renyi_C >= 1");
  }
  if (!(params.renyi_c > 0.0 && params.renyi_c <= 1.0)) {
    throw DomainError("orderstat_envelope: need renyi_c in (0, 1]");
  }
  OrderStatEnvelope env;
  env.top.resize(n);
  env.bottom.resize(n);
  env.renyi.resize(n);
  env.renyi_linearized.resize(n);
  const double nn = static_cast<double>(n);
  const double half_t2 = 0.5 * t * t;
  for (std::size_t k = 1; k <= n; ++k) {
    const double kk = static_cast<double>(k);
    const double y_top =
        std::exp((-t * t - 4.0 * std::log(kk)) / (2.0 * kk));
    const double xi2inv = params.closed_form
                              ? xi_inverse_bound(XiKind::Xi2, y_top)
                              : xi_inverse(XiKind::Xi2, y_top);
    env.top[k - 1] = clamp01(kk / (nn + 1.0) * (1.0 + xi2inv));

    const double mm = static_cast<double>(n - k + 1);
    const double y_bot = block_mass(t, mm);
    // Work with w = 1 - xi1_inverse(y) so the bottom envelope keeps its
    // distance from 1 at full precision.
    const double w =
        params.closed_form
            ? std::max(1.0 - std::sqrt(2.0 * (1.0 - y_bot)), y_bot / M_E)
            : xi1_inverse_complement(y_bot);
    env.bottom[k - 1] = clamp01(1.0 - mm / (nn + 1.0) * w);

    if (k == n) {
      env.renyi[k - 1] = 1.0;
      env.renyi_linearized[k - 1] = 1.0;
    } else {
      const double log_k = std::log(kk);
      const double rate = std::max(
          (t + std::sqrt(log_k)) * std::sqrt(kk) /
              std::sqrt(nn * (nn - kk + 1.0)),
          (t * t + log_k) / (nn - kk + 1.0));
      const double frac = (nn - kk) / nn;
      env.renyi[k - 1] =
          clamp01(1.0 - frac * std::exp(-params.renyi_c * rate));
      env.renyi_linearized[k - 1] =
          clamp01(kk / nn + params.renyi_c * frac * rate);
    }
  }
  env.joint_failure_probability =
      std::min(1.0, kPi * kPi / 3.0 * std::exp(-half_t2));
  env.renyi_failure_probability =
      std::min(1.0, params.renyi_C * std::exp(-half_t2));
  return env;
}

double subexp_sum_bound(const std::vector<double>& a, double r, double c) {
  if (!(r > 0.0)) throw DomainError("subexp_sum_bound: need r > 0");
  if (!(c > 0.0)) throw DomainError("subexp_sum_bound: need c > 0");
  double norm2_sq = 0.0;
  double norm_inf = 0.0;
  for (double v : a) {
    norm2_sq += v * v;
    norm_inf = std::max(norm_inf, std::fabs(v));
  }
  if (norm_inf == 0.0) {
    throw DomainError("subexp_sum_bound: coefficient vector is zero");
  }
  const double quad = r * r / norm2_sq;
  const double lin = r / norm_inf;
  return 2.0 * std::exp(-c * std::min(quad, lin));
}

bool growth_condition_holds(const QuantileModel& model, double p, double T) {
  const double inv_p = 1.0 / p;
  for (int di = 0; di <= 12; ++di) {
    const double delta = std::pow(10.0, -6.0 + 0.5 * di);
    if (delta > 1.0) break;
    for (int xi = 0; xi <= 16; ++xi) {
      const double x = std::pow(10.0, -8.0 + 0.5 * xi);
      if (x >= 1.0 || delta * x >= 1.0) continue;
      const double lhs = model.upper_tail_quantile(delta * x);
      const double rhs =
          std::pow(delta, -inv_p) / T * model.upper_tail_quantile(x);
      if (lhs < rhs * (1.0 - 1e-9)) return false;
    }
  }
  return true;
}

namespace {

void check_trim_indices(std::size_t n, std::size_t j, std::size_t k) {
  if (n == 0) throw DomainError("trimmed_sum_bound: need n >= 1");
  if (!(j <= k && k < n)) {
    throw DomainError("trimmed_sum_bound: need 0 <= j <= k < n");
  }
}

double quadrature_variant(const QuantileModel& model, std::size_t n,
                          std::size_t j, std::size_t k, double lambda) {
  const double np1 = static_cast<double>(n) + 1.0;
  const double j1 = static_cast<double>(j) + 1.0;
  const double mass1 =
      j1 / np1 * xi1_inverse_complement(block_mass(lambda, j1));
  double total = model.upper_tail_quantile(mass1);
  if (j == k) return total;
  const double k1 = static_cast<double>(k) + 1.0;
  auto integrand = [&](double t) {
    const double w = xi1_inverse_complement(block_mass(lambda, np1 * t));
    return model.upper_tail_quantile(t * w);
  };
  total += np1 * adaptive_simpson_scaled(integrand, j1 / np1, k1 / np1, 1e-10);
  return total;
}

double replacio_variant(const QuantileModel& model, std::size_t n,
                        std::size_t j, std::size_t k, double lambda) {
  const double np1 = static_cast<double>(n) + 1.0;
  const double j1 = static_cast<double>(j) + 1.0;
  const double lam2 = lambda * lambda;
  const double mass1 = j1 / np1 * std::exp(-1.0) * block_mass(lambda, j1);
  double total = model.upper_tail_quantile(mass1);
  if (j == k) return total;
  const double k1 = static_cast<double>(k) + 1.0;
  const double z_lo = 2.0 * j1 / lam2 * std::exp(-lam2 / (2.0 * j1));
  const double z_hi = 2.0 * k1 / lam2 * std::exp(-lam2 / (2.0 * k1));
  const double scale = std::exp(-1.0 - 2.0 / M_E) * lam2 / (2.0 * np1);
  auto integrand = [&](double z) {
    const double lg = std::log(M_E + 1.0 / z);
    return model.upper_tail_quantile(scale * z) * (1.0 + 1.0 / (z * lg * lg));
  };
  total += 0.5 * lam2 * cached_c0() *
           adaptive_simpson_scaled(integrand, z_lo, z_hi, 1e-10);
  return total;
}

double productiones_variant(const QuantileModel& model, std::size_t n,
                            std::size_t j, std::size_t k, double lambda,
                            double p, double T) {
  if (!(p > 0.0)) throw DomainError("trimmed_sum_bound: need p > 0");
  if (!(T >= 1.0)) throw DomainError("trimmed_sum_bound: need T >= 1");
  if (!growth_condition_holds(model, p, T)) {
    throw ConfigError(
        "trimmed_sum_bound: model violates the (p, T) tail growth condition");
  }
  const double np1 = static_cast<double>(n) + 1.0;
  const double j1 = static_cast<double>(j) + 1.0;
  const double k1 = static_cast<double>(k) + 1.0;
  const double lam2 = lambda * lambda;
  const double e_const = std::exp(-1.0 - 2.0 / M_E);

  double A = 0.0;
  if (lam2 / 2.0 > j1) {
    const double cut = std::min(lam2 / 2.0, k1);
    const double first = std::min(p, lam2 * (1.0 / j1 - 1.0 / cut)) /
                         std::pow(p + 1.0 + lam2 / j1, 2.0);
    const double head = lam2 / (2.0 * j1);
    const double second = std::min(1.0, std::log(std::min(k1, lam2 / 2.0) / j1)) *
                          std::pow(head * std::exp(head), -1.0 / p) /
                          (1.0 + lam2 / k1);
    A = first + second;
  }
  const double head_mass = e_const * j1 / np1 * std::exp(-lam2 / (2.0 * j1));
  double total = (1.0 + T * lam2 * A) * model.upper_tail_quantile(head_mass);
  const double x_lo = j1 / np1 * std::exp(-lam2 / (2.0 * j1)) * e_const;
  const double x_hi = k1 / np1 * std::exp(-lam2 / (2.0 * k1)) * e_const;
  if (x_hi > x_lo) {
    auto integrand = [&](double x) { return model.upper_tail_quantile(x); };
    total += static_cast<double>(n) *
             adaptive_simpson_scaled(integrand, x_lo, x_hi, 1e-10);
  }
  return total;
}

double pareto_closed_variant(const QuantileModel& model, std::size_t n,
                             std::size_t j, double lambda, double C) {
  if (model.kind() != ModelKind::ParetoTail) {
    throw ConfigError("trimmed_sum_bound: variant requires a Pareto model");
  }
  if (!(lambda > 0.0)) throw DomainError("trimmed_sum_bound: need lambda > 0");
  const double p = model.shape();
  const double nn = static_cast<double>(n);
  const double j1 = static_cast<double>(j) + 1.0;
  const double u = lambda * lambda / (p * j1);
  const double spike = (1.0 + j1 * std::min(u * u, 1.0 / u)) *
                       std::pow(nn / j1, 1.0 / p) *
                       std::exp(lambda * lambda / (2.0 * p * j1));
  return C * (p * nn / (p - 1.0) + spike);
}

}  // namespace

double trimmed_sum_bound(const QuantileModel& model, std::size_t n,
                         std::size_t j, std::size_t k, double lambda,
                         const TrimmedBoundVariant& variant) {
  check_trim_indices(n, j, k);
  using Kind = TrimmedBoundVariant::Kind;
  switch (variant.kind) {
    case Kind::Quadrature:
    case Kind::Replacio:
    case Kind::Productiones: {
      if (!(lambda >= 2.0)) {
        throw DomainError("trimmed_sum_bound: need lambda >= 2");
      }
      if (!model.is_nonnegative()) {
        throw ConfigError(
            "trimmed_sum_bound: variant requires a nonnegative model");
      }
      if (variant.kind == Kind::Quadrature) {
        return quadrature_variant(model, n, j, k, lambda);
      }
      if (variant.kind == Kind::Replacio) {
        return replacio_variant(model, n, j, k, lambda);
      }
      return productiones_variant(model, n, j, k, lambda, variant.p,
                                  variant.T);
    }
    case Kind::ParetoClosed:
      return pareto_closed_variant(model, n, j, lambda, variant.C);
    case Kind::Glptj:
      return glptj_comparison(model, n, k, lambda).threshold;
  }
  throw ConfigError("trimmed_sum_bound: unknown variant");
}

GlptjComparison glptj_comparison(const QuantileModel& model, std::size_t n,
                                 std::size_t k, double lambda) {
  if (model.kind() != ModelKind::ParetoTail) {
    throw ConfigError("glptj_comparison: requires a Pareto model");
  }
  if (n == 0 || k == 0 || k >= n) {
    throw DomainError("glptj_comparison: need 1 <= k < n");
  }
  if (!(lambda > 0.0)) throw DomainError("glptj_comparison: need lambda > 0");
  const double p = model.shape();
  GlptjComparison out;
  out.s = std::exp(lambda * lambda / (2.0 * static_cast<double>(k)));
  out.threshold = 12.0 * p * std::pow(M_E * out.s, 1.0 / p) *
                  static_cast<double>(n) / (p - 1.0);
  out.probability = std::exp(-0.5 * lambda * lambda);
  return out;
}

}  // namespace tailcert
