#include "tailcert/montecarlo.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <functional>
#include <thread>

#include "tailcert/rng.hpp"

namespace tailcert {
namespace {

void check_plan(const SimulationPlan& plan) {
  if (plan.replications < 1000) {
    throw DomainError("simulate: need at least 1000 replications");
  }
  if (plan.chunk_size < 1) throw DomainError("simulate: chunk_size >= 1");
  if (plan.worker_hint < 1) throw DomainError("simulate: worker_hint >= 1");
  if (plan.max_stored < 1000) {
    throw DomainError("simulate: max_stored >= 1000");
  }
}

// Runs visit(rep, value) for every replication. Chunk c draws from the
// stream keyed by (seed, c), with one uniform per (replication, coordinate),
// so any worker assignment produces the same values.
void for_each_replication(const std::vector<QuantileModel>& models,
                          const std::vector<double>& a, std::uint64_t seed,
                          std::int64_t reps, std::int64_t chunk_size,
                          int workers,
                          const std::function<void(std::int64_t, double)>& visit) {
  const std::int64_t chunks = (reps + chunk_size - 1) / chunk_size;
  const std::size_t n = a.size();
  std::atomic<std::int64_t> next_chunk{0};

  auto work = [&]() {
    for (;;) {
      const std::int64_t c = next_chunk.fetch_add(1);
      if (c >= chunks) break;
      const CounterRng rng{derive_stream(seed, static_cast<std::uint64_t>(c))};
      const std::int64_t rep_lo = c * chunk_size;
      const std::int64_t rep_hi = std::min(reps, rep_lo + chunk_size);
      for (std::int64_t r = rep_lo; r < rep_hi; ++r) {
        const std::uint64_t base =
            static_cast<std::uint64_t>(r - rep_lo) * n;
        double s = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
          s += a[i] * models[i].quantile_unchecked(rng.uniform(base + i));
        }
        visit(r, s);
      }
    }
  };

  const int nw = static_cast<int>(
      std::min<std::int64_t>(workers, std::max<std::int64_t>(1, chunks)));
  if (nw <= 1) {
    work();
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(nw));
  for (int w = 0; w < nw; ++w) pool.emplace_back(work);
  for (auto& th : pool) th.join();
}

struct RawRun {
  std::vector<double> stored;  // sorted ascending
  std::int64_t stride = 1;
};

RawRun run_raw(const std::vector<QuantileModel>& models,
               const std::vector<double>& a, std::uint64_t seed,
               std::int64_t reps, std::int64_t chunk_size, int workers,
               std::int64_t max_stored) {
  RawRun out;
  out.stride = reps <= max_stored ? 1 : (reps + max_stored - 1) / max_stored;
  const std::int64_t kept = (reps + out.stride - 1) / out.stride;
  out.stored.assign(static_cast<std::size_t>(kept), 0.0);
  const std::int64_t stride = out.stride;
  auto& stored = out.stored;
  for_each_replication(models, a, seed, reps, chunk_size, workers,
                       [&](std::int64_t r, double s) {
                         if (r % stride == 0) {
                           stored[static_cast<std::size_t>(r / stride)] = s;
                         }
                       });
  std::sort(stored.begin(), stored.end());
  return out;
}

double sorted_quantile(const std::vector<double>& sorted, double u) {
  const std::size_t m = sorted.size();
  const double pos = u * static_cast<double>(m - 1);
  if (pos <= 0.0) return sorted.front();
  if (pos >= static_cast<double>(m - 1)) return sorted.back();
  const std::size_t i = static_cast<std::size_t>(pos);
  const double frac = pos - static_cast<double>(i);
  return sorted[i] + frac * (sorted[i + 1] - sorted[i]);
}

constexpr std::uint64_t kPilotSalt = 0x70696c6f742d3031ULL;

}  // namespace

double SimulationSummary::quantile(double u) const {
  if (!(u >= 0.0 && u <= 1.0)) {
    throw DomainError("quantile: argument must lie in [0, 1]");
  }
  return sorted_quantile(stored_, u);
}

std::int64_t SimulationSummary::count_upper(double threshold) const {
  if (stride_ == 1) {
    return static_cast<std::int64_t>(
        stored_.end() -
        std::upper_bound(stored_.begin(), stored_.end(), threshold));
  }
  std::atomic<std::int64_t> hits{0};
  for_each_replication(models_, a_, plan_.seed, plan_.replications,
                       plan_.chunk_size, plan_.worker_hint,
                       [&](std::int64_t, double s) {
                         if (s > threshold) {
                           hits.fetch_add(1, std::memory_order_relaxed);
                         }
                       });
  return hits.load();
}

std::int64_t SimulationSummary::count_two_sided(double center,
                                                double threshold) const {
  const double up = center + threshold;
  const double down = center - threshold;
  if (stride_ == 1) {
    const auto above =
        stored_.end() - std::upper_bound(stored_.begin(), stored_.end(), up);
    const auto below =
        std::lower_bound(stored_.begin(), stored_.end(), down) -
        stored_.begin();
    return static_cast<std::int64_t>(above) + static_cast<std::int64_t>(below);
  }
  std::atomic<std::int64_t> hits{0};
  for_each_replication(models_, a_, plan_.seed, plan_.replications,
                       plan_.chunk_size, plan_.worker_hint,
                       [&](std::int64_t, double s) {
                         if (s > up || s < down) {
                           hits.fetch_add(1, std::memory_order_relaxed);
                         }
                       });
  return hits.load();
}

std::uint64_t SimulationSummary::digest() const {
  std::uint64_t d = fnv_digest(stored_.data(), stored_.size());
  const double extras[4] = {static_cast<double>(plan_.replications),
                            static_cast<double>(stride_), median_,
                            pilot_median_};
  return fnv_digest(extras, 4, d);
}

SimulationSummary simulate_linear_sum(const std::vector<QuantileModel>& models,
                                      const std::vector<double>& a,
                                      const SimulationPlan& plan) {
  check_plan(plan);
  if (models.size() != a.size() || models.empty()) {
    throw ConfigError("simulate: model and coefficient counts must match");
  }

  SimulationSummary out;
  out.plan_ = plan;
  out.models_ = models;
  out.a_ = a;

  RawRun main = run_raw(models, a, plan.seed, plan.replications,
                        plan.chunk_size, plan.worker_hint, plan.max_stored);
  const std::int64_t pilot_reps = std::max<std::int64_t>(
      100, plan.replications / 10);
  RawRun pilot = run_raw(models, a, mix64(plan.seed ^ kPilotSalt), pilot_reps,
                         plan.chunk_size, plan.worker_hint, plan.max_stored);

  out.stride_ = main.stride;
  out.median_ = sorted_quantile(main.stored, 0.5);
  out.pilot_median_ = sorted_quantile(pilot.stored, 0.5);
  out.stored_ = std::move(main.stored);
  return out;
}

TailEstimate tail_estimate(const SimulationSummary& summary, double threshold,
                           TailSide side) {
  if (!(threshold >= 0.0)) {
    throw DomainError("tail_estimate: threshold must be nonnegative");
  }
  const std::int64_t hits =
      side == TailSide::UpperOnly
          ? summary.count_upper(threshold)
          : summary.count_two_sided(summary.pilot_median(), threshold);
  return tail_estimate(hits, summary.replications());
}

VerificationReport verify_certificate(const DeviationCertificate& cert,
                                      const std::vector<QuantileModel>& models,
                                      const SimulationPlan& plan,
                                      const std::vector<double>& t_grid) {
  if (models.size() != cert.dimension()) {
    throw ConfigError("verify: model count must match the certificate");
  }
  if (t_grid.empty()) throw DomainError("verify: empty t grid");
  const SimulationSummary summary =
      simulate_linear_sum(models, cert.coefficients(), plan);

  VerificationReport report;
  report.all_pass = true;
  for (double t : t_grid) {
    VerificationRow row;
    row.t = t;
    row.threshold = cert.bound_at(t);
    row.estimate =
        tail_estimate(summary, row.threshold, TailSide::TwoSidedAboutMedian);
    row.budget = cert.tail_probability(t);
    row.pass = row.estimate.ci_low <= row.budget;
    report.all_pass = report.all_pass && row.pass;
    report.rows.push_back(row);
  }
  return report;
}

CalibrationResult calibrate(const DeviationCertificate& cert,
                            const std::vector<QuantileModel>& models,
                            const SimulationPlan& plan,
                            const std::vector<double>& t_grid,
                            double c_prob_target) {
  if (models.size() != cert.dimension()) {
    throw ConfigError("calibrate: model count must match the certificate");
  }
  if (t_grid.empty()) throw DomainError("calibrate: empty t grid");
  for (std::size_t i = 1; i < t_grid.size(); ++i) {
    if (!(t_grid[i] > t_grid[i - 1])) {
      throw DomainError("calibrate: t grid must be strictly increasing");
    }
  }
  if (!(t_grid.front() > 0.0)) throw DomainError("calibrate: need t > 0");
  if (!(c_prob_target > 0.0)) {
    throw DomainError("calibrate: probability target must be positive");
  }

  const SimulationSummary summary =
      simulate_linear_sum(models, cert.coefficients(), plan);

  // Thresholds scale as c * base for Main/SpecialDirection and as
  // c^exponent * base for AllDirections; either way they increase in c.
  const DeviationCertificate unit = cert.with_c_dev(1.0);
  std::vector<double> base(t_grid.size());
  std::vector<double> budget(t_grid.size());
  for (std::size_t i = 0; i < t_grid.size(); ++i) {
    base[i] = unit.bound_at(t_grid[i]);
    budget[i] = c_prob_target * std::exp(-0.5 * t_grid[i] * t_grid[i]);
  }
  const double power =
      cert.kind() == CertificateKind::AllDirections ? cert.exponent() : 1.0;

  auto estimate_at = [&](double c, std::size_t i) {
    const double threshold = std::pow(c, power) * base[i];
    return tail_estimate(summary, threshold, TailSide::TwoSidedAboutMedian);
  };
  auto feasible = [&](double c) {
    for (std::size_t i = 0; i < t_grid.size(); ++i) {
      if (!(estimate_at(c, i).ci_high <= budget[i])) return false;
    }
    return true;
  };
  auto evidence = [&](double c) {
    std::vector<CalibrationPoint> grid;
    for (std::size_t i = 0; i < t_grid.size(); ++i) {
      CalibrationPoint point;
      point.t = t_grid[i];
      point.threshold = std::pow(c, power) * base[i];
      point.estimate = estimate_at(c, i);
      grid.push_back(point);
    }
    return grid;
  };

  constexpr double kCap = 1e6;
  CalibrationResult result;
  result.c_prob = c_prob_target;

  double lo = 0.0;
  double hi = 1.0;
  if (feasible(1.0)) {
    lo = 0.5;
    while (lo > 1e-9 && feasible(lo)) {
      hi = lo;
      lo *= 0.5;
    }
    if (!(lo > 1e-9)) lo = 0.0;  // feasible all the way down
  } else {
    lo = 1.0;
    hi = 2.0;
    while (hi < kCap && !feasible(hi)) {
      lo = hi;
      hi *= 2.0;
    }
    if (hi >= kCap) {
      hi = kCap;
      if (!feasible(kCap)) {
        result.c_dev = kCap;
        result.feasible = false;
        result.grid = evidence(kCap);
        return result;
      }
    }
  }

  while (lo > 0.0 && hi / lo > 1.01) {
    const double mid = std::sqrt(lo * hi);
    if (feasible(mid)) {
      hi = mid;
    } else {
      lo = mid;
    }
  }

  result.c_dev = hi;
  result.feasible = true;
  result.grid = evidence(hi);
  return result;
}

}  // namespace tailcert
