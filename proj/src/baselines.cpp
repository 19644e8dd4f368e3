#include "tailcert/baselines.hpp"

#include <cmath>
#include <limits>

#include "tailcert/errors.hpp"

namespace tailcert {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// ~1e4 quadrature nodes per inner expectation.
constexpr int kLatalaPanels = 334;

}  // namespace

double latala_norm(const std::vector<QuantileModel>& models, double p,
                   double tol) {
  if (!(p >= 2.0)) throw DomainError("latala_norm: need p >= 2");
  if (!(tol > 0.0)) throw DomainError("latala_norm: need tol > 0");
  if (models.empty()) throw DomainError("latala_norm: no models");
  for (const auto& m : models) {
    if (!is_symmetric(m)) {
      throw ConfigError("latala_norm: models must be symmetric about 0");
    }
    if (m.tail_exponent() <= p) return kInf;
  }

  auto condition = [&](double t) {
    double acc = 0.0;
    for (const auto& m : models) {
      const double e = expect(
          m, p,
          [&](double x) {
            return 0.5 * (std::pow(std::fabs(1.0 + x / t), p) +
                          std::pow(std::fabs(1.0 - x / t), p));
          },
          kLatalaPanels);
      acc += std::log(e);
      if (!std::isfinite(acc)) return kInf;
    }
    return acc;
  };

  double hi = 1.0;
  for (int guard = 0; condition(hi) > p; ++guard) {
    if (guard > 200) {
      throw NumericalError("latala_norm: failed to bracket the norm");
    }
    hi *= 2.0;
  }
  double lo = 0.0;
  for (int it = 0; it < 200 && hi - lo > tol * std::max(hi, 1e-12); ++it) {
    const double mid = 0.5 * (lo + hi);
    if (condition(mid) <= p) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return hi;
}

MomentTable make_moment_table(const QuantileModel& model,
                              const MarkovGrid& grid) {
  if (grid.points < 1) throw DomainError("make_moment_table: need points >= 1");
  if (!(grid.min_gap_fraction > 0.0) || !(grid.min_gap_fraction < 1.0)) {
    throw DomainError("make_moment_table: min_gap_fraction must be in (0, 1)");
  }
  if (!(grid.exponent_cap > 2.0)) {
    throw DomainError("make_moment_table: exponent_cap must exceed 2");
  }
  MomentTable table;
  const double te = std::min(model.tail_exponent(), grid.exponent_cap);
  if (!(te > 2.0)) return table;  // no p >= 2 with a finite moment
  const double gap_max = te - 2.0;
  for (int j = 0; j < grid.points; ++j) {
    const double frac =
        grid.points == 1
            ? 1.0
            : std::pow(grid.min_gap_fraction,
                       static_cast<double>(j) /
                           static_cast<double>(grid.points - 1));
    const double pj = te - gap_max * frac;
    table.p.push_back(pj);
    table.value.push_back(moment(model, pj));
  }
  return table;
}

double markov_envelope(const MomentTable& table, double t) {
  if (!(t > 1.0)) throw DomainError("markov_envelope: need t > 1");
  if (table.p.empty()) return kInf;
  const double lt = std::log(t);
  double best = kInf;
  for (std::size_t i = 0; i < table.p.size(); ++i) {
    best = std::min(best, std::exp(std::log(table.value[i]) - table.p[i] * lt));
  }
  return best;
}

double markov_envelope(const QuantileModel& model, double t,
                       const MarkovGrid& grid) {
  return markov_envelope(make_moment_table(model, grid), t);
}

double berry_esseen_nonuniform(double r, long n, double x, double m3,
                               double mr, double Cr) {
  if (!(r >= 3.0)) throw DomainError("berry_esseen_nonuniform: need r >= 3");
  if (n < 1) throw DomainError("berry_esseen_nonuniform: need n >= 1");
  if (!(m3 > 0.0) || !(mr > 0.0)) {
    throw DomainError("berry_esseen_nonuniform: moments must be positive");
  }
  if (!(Cr > 0.0)) {
    throw DomainError("berry_esseen_nonuniform: constant must be positive");
  }
  const double nn = static_cast<double>(n);
  return Cr * std::pow(1.0 + std::fabs(x), -r) *
         (m3 / std::sqrt(nn) + mr * std::pow(nn, -0.5 * (r - 2.0)));
}

TailPoint bcr_bound(double alpha, long n, double t, double C_alpha) {
  if (!(alpha > 0.0)) throw DomainError("bcr_bound: need alpha > 0");
  if (n < 1) throw DomainError("bcr_bound: need n >= 1");
  if (!(t > std::exp(1.0))) throw DomainError("bcr_bound: need t > e");
  if (!(C_alpha > 0.0)) {
    throw DomainError("bcr_bound: constant must be positive");
  }
  TailPoint out;
  out.deviation = t * std::pow(static_cast<double>(n), 1.0 / alpha);
  out.probability = C_alpha * std::pow(std::log(t) / t, alpha);
  return out;
}

TailPoint bcr_linear_comparison(double q, long n, double t, double C,
                                double Cq) {
  if (!(q > 0.0)) throw DomainError("bcr_linear_comparison: need q > 0");
  if (n < 1) throw DomainError("bcr_linear_comparison: need n >= 1");
  if (!(t > 0.0)) throw DomainError("bcr_linear_comparison: need t > 0");
  if (!(C > 0.0) || !(Cq > 0.0)) {
    throw DomainError("bcr_linear_comparison: constants must be positive");
  }
  TailPoint out;
  out.deviation = (C / q) * t * t * std::exp(t * t / (2.0 * q)) *
                  std::pow(static_cast<double>(n), 1.0 / q);
  out.probability = Cq * std::exp(-0.5 * t * t);
  return out;
}

double mixture_moment_ratio(double p, double epsilon) {
  if (!(p >= 2.0) || !(p < 10.0)) {
    throw DomainError("mixture_moment_ratio: need 2 <= p < 10");
  }
  if (!(epsilon > 0.0) || !(epsilon < 1.0)) {
    throw DomainError("mixture_moment_ratio: need epsilon in (0, 1)");
  }
  const auto normal = QuantileModel::standard_normal();
  const auto heavy = QuantileModel::pure_pareto_h(10.0);
  const double mz = moment(normal, p);
  auto shifted_moment = [&](double h) {
    return expect(
        normal, p,
        [&](double z) { return std::pow(std::fabs(z + h), p); }, 48);
  };
  const double mzh = expect(heavy, p, shifted_moment, 48);
  const double mw = (1.0 - epsilon) * mz + epsilon * mzh;
  const double reference = 1.0 + std::pow(epsilon / (10.0 - p), 1.0 / p);
  return std::pow(mw, 1.0 / p) / reference;
}

}  // namespace tailcert
