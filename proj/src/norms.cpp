#include "tailcert/norms.hpp"

#include <algorithm>
#include <cmath>

#include "tailcert/quadrature.hpp"
#include "tailcert/simplex.hpp"

namespace tailcert {
namespace {

void check_rq(const RQParams& params) {
  if (!(params.r >= 1.0)) throw DomainError("rq norm: need r >= 1");
  if (!(params.q > 1.0)) throw DomainError("rq norm: need q > 1");
  if (params.n == 0) throw DomainError("rq norm: need n >= 1");
}

// |y| sorted descending with zero entries dropped.
std::vector<double> abs_sorted_desc(const std::vector<double>& y) {
  std::vector<double> a;
  a.reserve(y.size());
  for (double v : y) {
    if (v != 0.0) a.push_back(std::fabs(v));
  }
  std::sort(a.begin(), a.end(), std::greater<double>());
  return a;
}

double prefix_weight(double k, const RQParams& params) {
  return std::max(k, params.r * std::pow(k, 1.0 / params.q));
}

}  // namespace

double dual_norm_rq(const std::vector<double>& y, const RQParams& params,
                    bool restricted) {
  check_rq(params);
  const std::vector<double> a = abs_sorted_desc(y);
  if (a.empty()) throw DomainError("dual_norm_rq: zero vector");
  std::size_t k_max = a.size();
  if (restricted) {
    const double crossover =
        std::pow(params.r, params.q / (params.q - 1.0));
    k_max = std::min(
        k_max, static_cast<std::size_t>(std::max(1.0, std::floor(crossover))));
  }
  double best = 0.0;
  double prefix = 0.0;
  for (std::size_t k = 1; k <= k_max; ++k) {
    prefix += a[k - 1];
    const double kk = static_cast<double>(k);
    const double denom = restricted
                             ? params.r * std::pow(kk, 1.0 / params.q)
                             : prefix_weight(kk, params);
    best = std::max(best, prefix / denom);
  }
  return best;
}

double primal_norm_rq(const std::vector<double>& x, const RQParams& params,
                      PrimalMethod method) {
  check_rq(params);
  if (method == PrimalMethod::SignFormula) {
    double l1 = 0.0;
    std::size_t support = 0;
    for (double v : x) {
      const double av = std::fabs(v);
      if (av == 0.0) continue;
      if (std::fabs(av - 1.0) > 1e-12) {
        throw DomainError("primal_norm_rq: SignFormula needs entries in {0, +-1}");
      }
      l1 += 1.0;
      ++support;
    }
    if (support == 0) throw DomainError("primal_norm_rq: zero vector");
    const double m = static_cast<double>(support);
    return std::max(l1, params.r * std::pow(m, 1.0 / params.q));
  }

  const std::vector<double> a = abs_sorted_desc(x);
  if (a.empty()) throw DomainError("primal_norm_rq: zero vector");
  const std::size_t s = a.size();
  // In difference variables d_j = y_j - y_{j+1} >= 0 the sorted-cone LP is
  //   maximize sum_j (prefix of a)_j d_j
  //   s.t.     sum_j min(j, k) d_j <= max{k, r k^(1/q)},  k = 1..s
  // (levels past the support of x never help and are dropped).
  std::vector<double> cost(s);
  double acc = 0.0;
  for (std::size_t j = 0; j < s; ++j) {
    acc += a[j];
    cost[j] = acc;
  }
  std::vector<std::vector<double>> A(s, std::vector<double>(s));
  std::vector<double> b(s);
  for (std::size_t k = 1; k <= s; ++k) {
    for (std::size_t j = 1; j <= s; ++j) {
      A[k - 1][j - 1] = static_cast<double>(std::min(j, k));
    }
    b[k - 1] = prefix_weight(static_cast<double>(k), params);
  }
  return simplex_maximize(cost, A, b).value;
}

SandwichReport sandwich_report(const RQParams& params, std::size_t samples,
                               StreamCursor& stream) {
  check_rq(params);
  if (samples < 100) throw DomainError("sandwich_report: need samples >= 100");
  const std::size_t n = params.n;
  std::vector<double> weights(n);
  for (std::size_t i = 0; i < n; ++i) {
    weights[i] = std::pow(static_cast<double>(i + 1), -1.0 + 1.0 / params.q);
  }
  auto ratio_of = [&](std::vector<double> x) {
    std::sort(x.begin(), x.end(), std::greater<double>());
    double denom = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      denom += x[i] + params.r * weights[i] * x[i];
    }
    if (denom <= 0.0) return -1.0;
    return primal_norm_rq(x, params, PrimalMethod::LP) / denom;
  };

  SandwichReport report;
  report.min_ratio = std::numeric_limits<double>::infinity();
  report.max_ratio = 0.0;
  auto record = [&](const std::vector<double>& x) {
    const double rho = ratio_of(x);
    if (rho < 0.0) return;
    report.min_ratio = std::min(report.min_ratio, rho);
    report.max_ratio = std::max(report.max_ratio, rho);
  };

  {
    std::vector<double> spike(n, 0.0);
    spike[0] = 1.0;
    record(spike);
    record(std::vector<double>(n, 1.0));
  }
  for (std::size_t rep = 0; rep < samples; ++rep) {
    std::vector<double> x(n, 0.0);
    switch (rep % 5) {
      case 0: {  // power decay with a random exponent
        const double alpha = 0.25 + 1.75 * stream.uniform();
        for (std::size_t i = 0; i < n; ++i) {
          x[i] = std::pow(static_cast<double>(i + 1), -alpha);
        }
        break;
      }
      case 1: {  // sparse exponential magnitudes
        const std::size_t support =
            1 + static_cast<std::size_t>(stream.uniform() * n) % n;
        for (std::size_t i = 0; i < support; ++i) x[i] = stream.exponential();
        break;
      }
      case 2: {  // geometric decay
        const double rho = 0.3 + 0.6 * stream.uniform();
        double v = 1.0;
        for (std::size_t i = 0; i < n; ++i) {
          x[i] = v;
          v *= rho;
        }
        break;
      }
      case 3: {  // dense uniform
        for (std::size_t i = 0; i < n; ++i) x[i] = stream.uniform();
        break;
      }
      default: {  // a few heavy Pareto-like coordinates over light noise
        for (std::size_t i = 0; i < n; ++i) x[i] = 0.01 * stream.uniform();
        const std::size_t spikes = 1 + static_cast<std::size_t>(3.0 * stream.uniform());
        for (std::size_t sidx = 0; sidx < spikes; ++sidx) {
          x[sidx] = std::pow(stream.uniform(), -0.5);
        }
        break;
      }
    }
    record(x);
  }
  report.displayed_low = 1.0 / (4.0 * params.q);
  report.displayed_high = 4.0 / params.q;
  report.displayed_window_holds = report.min_ratio >= report.displayed_low &&
                                  report.max_ratio <= report.displayed_high;
  return report;
}

namespace {

struct SQuantile {
  QuantileModel model;
  double scale = 1.0;
  double upper(double s) const { return scale * model.upper_tail_quantile(s); }
};

void check_poisson_params(const PoissonNormParams& params) {
  if (!(params.delta > 0.0 && params.delta < 0.5)) {
    throw DomainError("poisson norm: need delta in (0, 1/2)");
  }
  if (params.weights.empty()) {
    throw DomainError("poisson norm: weights must be nonempty");
  }
  double total = 0.0;
  for (double w : params.weights) {
    if (!(w >= 0.0)) throw DomainError("poisson norm: weights must be >= 0");
    total += w;
  }
  if (total == 0.0) throw DomainError("poisson norm: weights are all zero");
}

SQuantile build_s_quantile(const PoissonNormParams& params) {
  if (params.source.kind == QuantileSource::Kind::Analytic) {
    if (params.weights.size() != 1) {
      throw ConfigError("poisson norm: analytic quantile needs n = 1");
    }
    return SQuantile{params.model, params.weights[0]};
  }
  const std::uint64_t R = params.source.replications;
  if (R == 0) throw DomainError("poisson norm: need replications >= 1");
  const std::size_t n = params.weights.size();
  const CounterRng rng{derive_stream(params.source.seed, 101)};
  std::vector<double> draws(R);
  for (std::uint64_t rep = 0; rep < R; ++rep) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      s += params.weights[i] *
           params.model.quantile_unchecked(rng.uniform(rep * n + i));
    }
    draws[rep] = s;
  }
  return SQuantile{QuantileModel::empirical(std::move(draws)), 1.0};
}

// integral over w in (0, min{40, 1/delta}) of Q_S(1 - delta w) e^-w dw,
// with the left unit broken out through w = v^4 to absorb the quantile's
// power blowup at w -> 0.
double hull_norm_quadrature(const SQuantile& sq, double delta) {
  const double W = std::min(40.0, 1.0 / delta);
  auto head = [&](double v) {
    const double w = v * v * v * v;
    return 4.0 * v * v * v * sq.upper(delta * w) * std::exp(-w);
  };
  auto tail = [&](double w) { return sq.upper(delta * w) * std::exp(-w); };
  return gauss15_panels(head, 0.0, 1.0, 64) +
         gauss15_panels(tail, 1.0, W, 96);
}

double tail_average_ratio(const SQuantile& sq, double delta) {
  // (1/delta) int_{1-delta}^1 Q_S(t) dt over Q_S(1 - delta), with the
  // average taken through t = 1 - delta v^4.
  auto f = [&](double v) {
    return 4.0 * v * v * v * sq.upper(delta * v * v * v * v);
  };
  const double avg = gauss15_panels(f, 0.0, 1.0, 96);
  const double edge = sq.upper(delta);
  if (edge == 0.0) {
    throw NumericalError("tail_average_ratio: vanishing quantile at delta");
  }
  return avg / edge;
}

}  // namespace

double poisson_hull_norm(const PoissonNormParams& params,
                         const PoissonMethod& method) {
  check_poisson_params(params);
  if (method.kind == PoissonMethod::Kind::Quadrature) {
    const SQuantile sq = build_s_quantile(params);
    return hull_norm_quadrature(sq, params.delta);
  }
  const std::uint64_t R2 = method.replications;
  if (R2 == 0) throw DomainError("poisson norm: need replications >= 1");
  const std::size_t n = params.weights.size();
  const double intensity = 1.0 / params.delta;
  double acc = 0.0;
  for (std::uint64_t rep = 0; rep < R2; ++rep) {
    StreamCursor cur{CounterRng{derive_stream(method.seed, rep)}, 0};
    const std::int64_t N = poisson_draw(cur, intensity);
    double best = 0.0;
    for (std::int64_t point = 0; point < N; ++point) {
      double s = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        s += params.weights[i] *
             params.model.quantile_unchecked(cur.uniform());
      }
      best = std::max(best, s);
    }
    acc += best;
  }
  return acc / static_cast<double>(R2);
}

NormComparisonReport norm_quantile_comparison(const PoissonNormParams& params,
                                              std::uint64_t R,
                                              std::uint64_t seed) {
  check_poisson_params(params);
  if (R < 10000) {
    throw DomainError("norm_quantile_comparison: need R >= 10^4");
  }
  const SQuantile sq = build_s_quantile(params);
  NormComparisonReport report;
  report.norm_value = hull_norm_quadrature(sq, params.delta);
  report.ratio_R = tail_average_ratio(sq, params.delta);
  report.upper_bound = params.delta * std::log(2.0);
  report.lower_bound = params.delta;

  const double upper_cut = 2.0 * report.norm_value;
  const double lower_cut = report.norm_value / (1.0 + report.ratio_R);
  const std::size_t n = params.weights.size();
  const CounterRng rng{derive_stream(seed, 202)};
  std::int64_t above_upper = 0;
  std::int64_t above_lower = 0;
  for (std::uint64_t rep = 0; rep < R; ++rep) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      s += params.weights[i] *
           params.model.quantile_unchecked(rng.uniform(rep * n + i));
    }
    if (s > upper_cut) ++above_upper;
    if (s >= lower_cut) ++above_lower;
  }
  report.p_upper = tail_estimate(above_upper, static_cast<std::int64_t>(R));
  report.p_lower = tail_estimate(above_lower, static_cast<std::int64_t>(R));
  return report;
}

}  // namespace tailcert
