// Acceptance harness: runs the numbered acceptance checks end to end and
// prints one [PASS]/[FAIL] line per criterion. Exit code 0 only when every
// selected criterion passes.
//
// Usage:
//   tailcert_acceptance                 run everything
//   tailcert_acceptance --criteria 1,8  run a subset
//   tailcert_acceptance --smoke         reduced replication plumbing check;
//                                       results are NOT an acceptance verdict

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <functional>
#include <iostream>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "tailcert/baselines.hpp"
#include "tailcert/certificates.hpp"
#include "tailcert/config.hpp"
#include "tailcert/distributions.hpp"
#include "tailcert/montecarlo.hpp"
#include "tailcert/norms.hpp"
#include "tailcert/order_stats.hpp"
#include "tailcert/rng.hpp"
#include "tailcert/special_functions.hpp"
#include "tailcert/stats.hpp"

using namespace tailcert;

namespace {

double g_scale = 1.0;  // --smoke shrinks every replication count

std::uint64_t scaled(double reps) {
  const double r = reps * g_scale;
  return static_cast<std::uint64_t>(std::max(2000.0, r) + 0.5);
}

double now_seconds() {
  using clock = std::chrono::steady_clock;
  return std::chrono::duration<double>(clock::now().time_since_epoch())
      .count();
}

// Splits [0, count) into one contiguous block per worker. Kernels write
// per-replication results into disjoint slots, so the outcome is identical
// for every worker count; reductions happen sequentially afterwards.
void parallel_blocks(
    std::uint64_t count, int workers,
    const std::function<void(std::uint64_t, std::uint64_t)>& body) {
  if (workers <= 1 || count < 2) {
    body(0, count);
    return;
  }
  const std::uint64_t block =
      (count + static_cast<std::uint64_t>(workers) - 1) /
      static_cast<std::uint64_t>(workers);
  std::vector<std::thread> pool;
  for (int w = 0; w < workers; ++w) {
    const std::uint64_t lo = static_cast<std::uint64_t>(w) * block;
    if (lo >= count) break;
    const std::uint64_t hi = std::min(count, lo + block);
    pool.emplace_back([lo, hi, &body]() { body(lo, hi); });
  }
  for (auto& t : pool) t.join();
}

struct DigestChain {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  void add(const double* data, std::size_t n) { h = fnv_digest(data, n, h); }
  void add(const std::vector<double>& v) { add(v.data(), v.size()); }
  void add(double x) { add(&x, 1); }
};

// ---------------------------------------------------------------------------
// Monte Carlo kernels. Each one is a pure function of (workers, g_scale)
// and returns a digest over its complete result set plus a small numeric
// payload for the criterion that interprets it. The determinism criterion
// reruns them at a different worker count and compares digests.

struct KernelOut {
  std::uint64_t digest = 0;
  std::vector<double> payload;
};

double half_width(const TailEstimate& e) {
  return 0.5 * (e.ci_high - e.ci_low);
}

// --- order statistic envelope violation frequency (criterion 3)
KernelOut kernel_envelope(int workers) {
  const std::size_t n = 1000;
  EnvelopeParams params;
  params.n = n;
  params.t = 3.0;
  const OrderStatEnvelope env = orderstat_envelope(params);
  std::vector<double> floor_bound(n);
  for (std::size_t i = 0; i < n; ++i) {
    floor_bound[i] = std::min(env.top[i], env.bottom[i]);
  }

  const std::uint64_t R = scaled(2e5);
  std::vector<double> flags(R, 0.0);
  parallel_blocks(R, workers, [&](std::uint64_t lo, std::uint64_t hi) {
    std::vector<double> g(n);
    for (std::uint64_t r = lo; r < hi; ++r) {
      CounterRng rng(derive_stream(0xC3A0, r));
      StreamCursor cursor{rng, 0};
      renyi_sample_into(n, cursor, g);
      bool bad = false;
      for (std::size_t i = 0; i < n && !bad; ++i) {
        if (g[i] > floor_bound[i]) bad = true;
      }
      flags[r] = bad ? 1.0 : 0.0;
    }
  });

  std::int64_t bad = 0;
  for (double f : flags) bad += f > 0.5 ? 1 : 0;
  const TailEstimate est = tail_estimate(bad, static_cast<std::int64_t>(R));

  DigestChain d;
  d.add(flags);
  d.add(static_cast<double>(bad));

  KernelOut out;
  out.digest = d.h;
  out.payload = {static_cast<double>(bad), static_cast<double>(R), est.p_hat,
                 half_width(est), env.joint_failure_probability};
  return out;
}

// Sum of n Pareto draws with the largest j removed; one replication.
double trimmed_pareto_sum(const QuantileModel& model, std::uint64_t seed_id,
                          std::uint64_t r, std::size_t n, std::size_t j,
                          std::vector<double>& buf) {
  CounterRng rng(derive_stream(seed_id, r));
  double total = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    buf[i] = model.quantile(rng.uniform(i));
    total += buf[i];
  }
  if (j == 0) return total;
  std::nth_element(buf.begin(), buf.begin() + static_cast<long>(j) - 1,
                   buf.end(), std::greater<double>());
  std::sort(buf.begin(), buf.begin() + static_cast<long>(j),
            std::greater<double>());
  double top = 0.0;
  for (std::size_t i = 0; i < j; ++i) top += buf[i];
  return total - top;
}

// --- closed-form Pareto trimmed-sum constant (criterion 4)
KernelOut kernel_trimmed(int workers) {
  const std::size_t n = 1000;
  const std::uint64_t R = scaled(1e5);
  KernelOut out;
  DigestChain dig;

  // Anchor: calibrate the single constant so the closed form meets the
  // empirical (1 - e^{-lambda^2/2}) quantile at p=3, j=0, lambda=3.
  const QuantileModel anchor_model = QuantileModel::pareto_tail(3.0);
  std::vector<double> sums(R);
  parallel_blocks(R, workers, [&](std::uint64_t lo, std::uint64_t hi) {
    std::vector<double> buf(n);
    for (std::uint64_t r = lo; r < hi; ++r) {
      sums[r] = trimmed_pareto_sum(anchor_model, 0xC4FF, r, n, 0, buf);
    }
  });
  dig.add(sums);

  std::vector<double> sorted = sums;
  std::sort(sorted.begin(), sorted.end());
  const double level = 1.0 - std::exp(-4.5);
  const std::size_t idx = std::min<std::size_t>(
      sorted.size() - 1,
      static_cast<std::size_t>(
          std::ceil(level * static_cast<double>(sorted.size()))) -
          1);
  const double anchor_quantile = sorted[idx];
  const double unit_bound =
      trimmed_sum_bound(anchor_model, n, 0, n - 1, 3.0,
                        TrimmedBoundVariant::pareto_closed(1.0));
  const double C = anchor_quantile / unit_bound;
  dig.add(anchor_quantile);
  dig.add(C);
  out.payload.push_back(C);
  out.payload.push_back(anchor_quantile);

  // Grid: with C frozen, exceedance of the bound must stay within the
  // relaxed budget 3 e^{-lambda^2/2} (tested through the lower confidence
  // limit so Monte Carlo noise cannot flip a true pass).
  const double shapes[] = {2.0, 3.0, 5.0};
  const std::size_t trims[] = {0, 4, 16};
  const double lambdas[] = {2.0, 3.0, 4.0};
  std::uint64_t gi = 0;
  for (double p : shapes) {
    const QuantileModel model = QuantileModel::pareto_tail(p);
    for (std::size_t j : trims) {
      for (double lambda : lambdas) {
        const double bound =
            trimmed_sum_bound(model, n, j, n - 1, lambda,
                              TrimmedBoundVariant::pareto_closed(C));
        std::vector<double> grid_sums(R);
        const std::uint64_t seed_id = 0xC400 + gi;
        parallel_blocks(R, workers,
                        [&](std::uint64_t lo, std::uint64_t hi) {
                          std::vector<double> buf(n);
                          for (std::uint64_t r = lo; r < hi; ++r) {
                            grid_sums[r] = trimmed_pareto_sum(
                                model, seed_id, r, n, j, buf);
                          }
                        });
        dig.add(grid_sums);
        std::int64_t count = 0;
        for (double s : grid_sums) count += s > bound ? 1 : 0;
        const TailEstimate est =
            tail_estimate(count, static_cast<std::int64_t>(R));
        const double budget = 3.0 * std::exp(-0.5 * lambda * lambda);
        dig.add(static_cast<double>(count));
        out.payload.push_back(p);
        out.payload.push_back(static_cast<double>(j));
        out.payload.push_back(lambda);
        out.payload.push_back(est.p_hat);
        out.payload.push_back(est.ci_low);
        out.payload.push_back(budget);
        out.payload.push_back(est.ci_low <= budget ? 1.0 : 0.0);
        ++gi;
      }
    }
  }
  out.digest = dig.h;
  return out;
}

// --- explicit lower order statistic sum bound (criterion 5)
KernelOut kernel_glptj(int workers) {
  const std::size_t n = 1000;
  const std::size_t k = 5;
  const double lambda = std::sqrt(10.0 * std::log(2.0));  // makes s = 2
  const QuantileModel model = QuantileModel::pareto_tail(3.0);
  const GlptjComparison cmp = glptj_comparison(model, n, k, lambda);

  const std::uint64_t R = scaled(1e5);
  std::vector<double> sums(R);
  parallel_blocks(R, workers, [&](std::uint64_t lo, std::uint64_t hi) {
    std::vector<double> buf(n);
    for (std::uint64_t r = lo; r < hi; ++r) {
      sums[r] = trimmed_pareto_sum(model, 0xC5A0, r, n, k - 1, buf);
    }
  });
  std::int64_t count = 0;
  for (double s : sums) count += s > cmp.threshold ? 1 : 0;
  const TailEstimate est = tail_estimate(count, static_cast<std::int64_t>(R));

  DigestChain d;
  d.add(sums);
  d.add(static_cast<double>(count));

  KernelOut out;
  out.digest = d.h;
  out.payload = {cmp.threshold, cmp.s,          cmp.probability,
                 est.p_hat,     half_width(est), static_cast<double>(R)};
  return out;
}

// --- Poisson-hull norm agreement and quantile lemma (criterion 7)
// The norms module's Monte Carlo paths are single-stream by design, so no
// worker knob exists; the determinism rerun repeats the same seeds instead.
// A single weight admits the analytic sum quantile; larger weight vectors
// need the Monte Carlo source, which makes both evaluation routes seeded,
// so each route gets a G-repeat mean and the gap test combines both spreads.
KernelOut kernel_poisson(int) {
  const QuantileModel model = QuantileModel::u_envelope(4.0);
  KernelOut out;
  DigestChain dig;

  const std::size_t sizes[] = {1, 8};
  const double deltas[] = {0.1, 0.01};
  const int G = 16;
  int cfg = 0;
  for (std::size_t n : sizes) {
    for (double delta : deltas) {
      auto evaluate = [&](PoissonMethod::Kind kind, int g) {
        PoissonNormParams params;
        params.delta = delta;
        params.weights.assign(n, 1.0);
        params.model = model;
        params.source.kind = n == 1 ? QuantileSource::Kind::Analytic
                                    : QuantileSource::Kind::MonteCarlo;
        params.source.replications = scaled(5e4);
        params.source.seed = 0xC700 + 64 * static_cast<std::uint64_t>(cfg) +
                             static_cast<std::uint64_t>(g);
        PoissonMethod method;
        method.kind = kind;
        method.replications = scaled(1e4);
        method.seed = params.source.seed + 32;
        return poisson_hull_norm(params, method);
      };
      auto spread = [&](PoissonMethod::Kind kind, double* mean_out) {
        double sum = 0.0;
        double sumsq = 0.0;
        for (int g = 0; g < G; ++g) {
          const double v = evaluate(kind, g);
          dig.add(v);
          sum += v;
          sumsq += v * v;
        }
        const double mean = sum / G;
        *mean_out = mean;
        const double var =
            std::max(0.0, (sumsq - sum * sum / G) / (G - 1.0));
        return std::sqrt(var / G);
      };
      double mean_quad = 0.0;
      double mean_direct = 0.0;
      const double se_quad = spread(PoissonMethod::Kind::Quadrature,
                                    &mean_quad);
      const double se_direct = spread(PoissonMethod::Kind::DirectMC,
                                      &mean_direct);
      out.payload.push_back(static_cast<double>(n));
      out.payload.push_back(delta);
      out.payload.push_back(mean_quad);
      out.payload.push_back(mean_direct);
      out.payload.push_back(
          std::sqrt(se_quad * se_quad + se_direct * se_direct));
      ++cfg;
    }
  }

  PoissonNormParams lemma;
  lemma.delta = 0.01;
  lemma.weights.assign(8, 1.0);
  lemma.model = model;
  lemma.source.kind = QuantileSource::Kind::MonteCarlo;
  lemma.source.replications = scaled(2e5);
  lemma.source.seed = 0xC7F0;
  const NormComparisonReport report =
      norm_quantile_comparison(lemma, scaled(1e6), 0xC7FF);
  dig.add(report.norm_value);
  dig.add(report.p_upper.p_hat);
  dig.add(static_cast<double>(report.p_upper.successes));
  out.payload.push_back(report.p_upper.p_hat);
  out.payload.push_back(half_width(report.p_upper));
  out.payload.push_back(report.upper_bound);
  out.payload.push_back(report.norm_value);

  out.digest = dig.h;
  return out;
}

void digest_calibration(DigestChain& d, const CalibrationResult& cal) {
  d.add(cal.c_dev);
  d.add(cal.c_prob);
  d.add(cal.feasible ? 1.0 : 0.0);
  for (const auto& pt : cal.grid) {
    d.add(pt.t);
    d.add(pt.threshold);
    d.add(static_cast<double>(pt.estimate.successes));
    d.add(static_cast<double>(pt.estimate.trials));
  }
}

void digest_verification(DigestChain& d, const VerificationReport& rep) {
  for (const auto& row : rep.rows) {
    d.add(row.t);
    d.add(row.threshold);
    d.add(static_cast<double>(row.estimate.successes));
    d.add(static_cast<double>(row.estimate.trials));
    d.add(row.budget);
    d.add(row.pass ? 1.0 : 0.0);
  }
  d.add(rep.all_pass ? 1.0 : 0.0);
}

SimulationPlan make_plan(std::uint64_t seed, std::uint64_t reps,
                         int workers) {
  SimulationPlan plan;
  plan.seed = seed;
  plan.replications = reps;
  plan.chunk_size = 4096;
  plan.worker_hint = workers;
  return plan;
}

// --- main certificate calibration + fresh-seed verification (criterion 8)
KernelOut kernel_main_certificates(int workers) {
  const std::size_t n = 10000;
  const double q = 4.0;
  const std::vector<QuantileModel> models(
      n, QuantileModel::symmetric_power_law(q));
  const std::vector<double> t_cal = {2.0, 2.5, 3.0, 3.5};
  const std::vector<double> t_ver = {2.5, 3.0, 3.5};
  const char* tags[] = {"e1:10000", "unit:10000", "critical:10000"};

  KernelOut out;
  DigestChain dig;
  for (int ai = 0; ai < 3; ++ai) {
    const std::vector<double> a = coefficients_from_tag(tags[ai], q);
    const DeviationCertificate seed_cert =
        DeviationCertificate::main(a, q, 1.0, 3.0);
    const SimulationPlan cal_plan =
        make_plan(0xC800 + static_cast<std::uint64_t>(ai), scaled(1e6),
                  workers);
    const CalibrationResult cal =
        calibrate(seed_cert, models, cal_plan, t_cal, 3.0);
    digest_calibration(dig, cal);

    const DeviationCertificate cert =
        seed_cert.with_constants(cal.c_dev, cal.c_prob);
    const SimulationPlan ver_plan =
        make_plan(0xC880 + static_cast<std::uint64_t>(ai), scaled(1e6),
                  workers);
    const VerificationReport rep =
        verify_certificate(cert, models, ver_plan, t_ver);
    digest_verification(dig, rep);

    out.payload.push_back(cal.c_dev);
    out.payload.push_back(cal.feasible ? 1.0 : 0.0);
    out.payload.push_back(rep.all_pass ? 1.0 : 0.0);
    for (const auto& row : rep.rows) {
      out.payload.push_back(row.estimate.p_hat);
      out.payload.push_back(row.budget);
    }
  }
  out.digest = dig.h;
  return out;
}

// --- critical direction improvement (criterion 9)
KernelOut kernel_critical_direction(int workers) {
  const std::size_t n = 10000;
  const double q = 3.0;
  const std::vector<QuantileModel> models(
      n, QuantileModel::symmetric_power_law(q));
  const std::vector<double> a = coefficients_from_tag("critical:10000", q);
  const std::vector<double> t_cal = {2.0, 2.5, 3.0, 3.5};

  KernelOut out;
  DigestChain dig;

  const DeviationCertificate main_seed =
      DeviationCertificate::main(a, q, 1.0, 3.0);
  const CalibrationResult cal = calibrate(
      main_seed, models, make_plan(0xC900, scaled(1e6), workers), t_cal, 3.0);
  digest_calibration(dig, cal);

  const DeviationCertificate main_cert =
      main_seed.with_constants(cal.c_dev, cal.c_prob);
  const DeviationCertificate sd_cert =
      DeviationCertificate::special_direction_from(a, q, cal.c_dev,
                                                   cal.c_prob);
  const double bound_main = main_cert.bound_at(4.0);
  const double bound_sd = sd_cert.bound_at(4.0);
  dig.add(bound_main);
  dig.add(bound_sd);

  const VerificationReport rep = verify_certificate(
      sd_cert, models, make_plan(0xC901, scaled(1e6), workers), {4.0});
  digest_verification(dig, rep);

  out.payload = {cal.c_dev,
                 cal.feasible ? 1.0 : 0.0,
                 bound_main,
                 bound_sd,
                 rep.all_pass ? 1.0 : 0.0,
                 rep.rows.at(0).estimate.p_hat,
                 rep.rows.at(0).budget};
  out.digest = dig.h;
  return out;
}

// --- moment norm sandwich for signed sums (criterion 10)
KernelOut kernel_latala(int workers) {
  const QuantileModel rademacher = QuantileModel::empirical({-1.0, 1.0});
  const std::size_t sizes[] = {1, 4, 16};
  const double orders[] = {2.0, 4.0};
  const std::uint64_t R = scaled(2e5);

  KernelOut out;
  DigestChain dig;
  int cfg = 0;
  for (std::size_t n : sizes) {
    for (double p : orders) {
      const std::vector<QuantileModel> models(n, rademacher);
      const double norm = latala_norm(models, p);

      std::vector<double> powers(R);
      const std::uint64_t seed_id = 0xCA00 + static_cast<std::uint64_t>(cfg);
      parallel_blocks(R, workers,
                      [&](std::uint64_t lo, std::uint64_t hi) {
                        for (std::uint64_t r = lo; r < hi; ++r) {
                          CounterRng rng(derive_stream(seed_id, r));
                          double s = 0.0;
                          for (std::size_t i = 0; i < n; ++i) {
                            s += rng.uniform(i) < 0.5 ? -1.0 : 1.0;
                          }
                          powers[r] = std::pow(std::fabs(s), p);
                        }
                      });
      dig.add(powers);
      double sum = 0.0;
      double sumsq = 0.0;
      for (double v : powers) {
        sum += v;
        sumsq += v * v;
      }
      const double mean = sum / static_cast<double>(R);
      const double var = std::max(
          0.0, sumsq / static_cast<double>(R) - mean * mean);
      const double se = std::sqrt(var / static_cast<double>(R));
      dig.add(norm);
      out.payload.push_back(static_cast<double>(n));
      out.payload.push_back(p);
      out.payload.push_back(norm);
      out.payload.push_back(mean);
      out.payload.push_back(se);
      ++cfg;
    }
  }
  out.digest = dig.h;
  return out;
}

struct KernelEntry {
  const char* name;
  KernelOut (*fn)(int workers);
  bool worker_knob;
};

const std::vector<KernelEntry>& kernel_registry() {
  static const std::vector<KernelEntry> entries = {
      {"envelope", kernel_envelope, true},
      {"trimmed", kernel_trimmed, true},
      {"glptj", kernel_glptj, true},
      {"poisson", kernel_poisson, false},
      {"main_certificates", kernel_main_certificates, true},
      {"critical_direction", kernel_critical_direction, true},
      {"latala", kernel_latala, true},
  };
  return entries;
}

std::map<std::string, KernelOut> g_kernel_cache;

const KernelOut& kernel_result(const std::string& name, int workers) {
  const std::string key = name + ":" + std::to_string(workers);
  auto it = g_kernel_cache.find(key);
  if (it != g_kernel_cache.end()) return it->second;
  for (const auto& entry : kernel_registry()) {
    if (entry.name == name) {
      KernelOut out = entry.fn(workers);
      return g_kernel_cache.emplace(key, std::move(out)).first->second;
    }
  }
  throw std::runtime_error("unknown kernel " + name);
}

// ---------------------------------------------------------------------------
// Criteria.

bool criterion_1(std::ostream& log) {
  const double coarse = c0_constant(2000, 1e-9);
  const double fine = c0_constant(4000, 1e-9);
  log << "  value " << coarse << ", grid-doubled " << fine << ", difference "
      << std::fabs(coarse - fine) << "\n";
  return coarse > 1.0 && coarse < 2.0 && fine > 1.0 && fine < 2.0 &&
         std::fabs(coarse - fine) <= 1e-3;
}

bool criterion_2(std::ostream& log) {
  const int points = 10000;
  int violations = 0;
  double min_margin = 1e300;
  for (int i = 0; i < points; ++i) {
    const double y = std::exp(-14.0 * (i + 0.5) / points);
    for (XiKind kind : {XiKind::Xi1, XiKind::Xi2}) {
      const double closed = xi_inverse_bound(kind, y);
      const double exact = xi_inverse(kind, y, 1e-12);
      min_margin = std::min(min_margin, closed - exact);
      if (closed < exact - 1e-9) ++violations;
    }
  }
  log << "  " << 2 * points << " log-spaced points, violations " << violations
      << ", smallest margin " << min_margin << "\n";
  return violations == 0;
}

bool criterion_3(std::ostream& log) {
  const KernelOut& k = kernel_result("envelope", 1);
  const double bad = k.payload[0];
  const double reps = k.payload[1];
  const double p_hat = k.payload[2];
  const double hw = k.payload[3];
  const double budget = k.payload[4];
  const double reference = M_PI * M_PI / 3.0 * std::exp(-4.5);
  log << "  violations " << bad << "/" << reps << " (p_hat " << p_hat
      << "), budget " << budget << " + 3*" << hw << "\n";
  return std::fabs(budget - reference) <= 1e-12 * reference &&
         p_hat <= budget + 3.0 * hw;
}

bool criterion_4(std::ostream& log) {
  const KernelOut& k = kernel_result("trimmed", 1);
  const double C = k.payload[0];
  log << "  calibrated constant " << C << " (anchor quantile "
      << k.payload[1] << ")\n";
  bool all = C > 0.0;
  for (std::size_t i = 2; i + 6 < k.payload.size() + 1; i += 7) {
    const bool ok = k.payload[i + 6] > 0.5;
    if (!ok || k.payload[i + 4] > 0.0) {
      log << "  p=" << k.payload[i] << " j=" << k.payload[i + 1]
          << " lambda=" << k.payload[i + 2] << ": p_hat "
          << k.payload[i + 3] << ", ci_low " << k.payload[i + 4]
          << ", budget " << k.payload[i + 5] << (ok ? "" : "  <-- FAIL")
          << "\n";
    }
    all = all && ok;
  }
  return all;
}

bool criterion_5(std::ostream& log) {
  const KernelOut& k = kernel_result("glptj", 1);
  const double threshold = k.payload[0];
  const double s = k.payload[1];
  const double probability = k.payload[2];
  const double p_hat = k.payload[3];
  const double hw = k.payload[4];
  log << "  threshold " << threshold << " (s " << s << "), exceedance p_hat "
      << p_hat << ", budget " << probability << " + 3*" << hw << "\n";
  return std::fabs(s - 2.0) <= 1e-9 &&
         std::fabs(probability - 1.0 / 32.0) <= 1e-12 &&
         p_hat <= probability + 3.0 * hw;
}

bool criterion_6(std::ostream& log) {
  const double pairs[][2] = {{1.0, 1.5}, {2.0, 2.0}, {3.5, 4.0}};
  std::uint64_t checked = 0;
  std::uint64_t lp_violations = 0;
  double worst = 0.0;

  auto check_sign_vector = [&](const std::vector<double>& x, double r,
                               double q) {
    RQParams params;
    params.r = r;
    params.q = q;
    params.n = x.size();
    double l1 = 0.0;
    double lq = 0.0;
    for (double v : x) {
      l1 += std::fabs(v);
      lq += std::pow(std::fabs(v), q);
    }
    const double expected = std::max(l1, r * std::pow(lq, 1.0 / q));
    const double lp = primal_norm_rq(x, params, PrimalMethod::LP);
    const double err = std::fabs(lp - expected);
    worst = std::max(worst, err);
    if (err > 1e-9 * std::max(1.0, expected)) ++lp_violations;
    ++checked;
  };

  for (const auto& rq : pairs) {
    for (std::size_t n = 1; n <= 8; ++n) {
      std::vector<int> digits(n, 0);
      while (true) {
        std::size_t pos = 0;
        while (pos < n && digits[pos] == 2) {
          digits[pos] = 0;
          ++pos;
        }
        if (pos == n) break;
        ++digits[pos];
        std::vector<double> x(n);
        for (std::size_t i = 0; i < n; ++i) x[i] = digits[i] - 1.0;
        bool zero = true;
        for (double v : x) zero = zero && v == 0.0;
        if (!zero) check_sign_vector(x, rq[0], rq[1]);
      }
    }
    for (std::size_t n : {std::size_t(10), std::size_t(12)}) {
      CounterRng rng(derive_stream(0xC600, n));
      for (int rep = 0; rep < 5000; ++rep) {
        std::vector<double> x(n, 0.0);
        bool zero = true;
        for (std::size_t i = 0; i < n; ++i) {
          const double u = rng.uniform(static_cast<std::uint64_t>(rep) * n + i);
          x[i] = u < 1.0 / 3.0 ? -1.0 : (u < 2.0 / 3.0 ? 0.0 : 1.0);
          zero = zero && x[i] == 0.0;
        }
        if (zero) x[0] = 1.0;
        check_sign_vector(x, rq[0], rq[1]);
      }
    }
  }
  log << "  " << checked << " sign vectors, LP mismatches " << lp_violations
      << ", worst error " << worst << "\n";

  std::uint64_t dual_violations = 0;
  for (const auto& rq : pairs) {
    RQParams params;
    params.r = rq[0];
    params.q = rq[1];
    params.n = 24;
    CounterRng rng(derive_stream(0xC601, static_cast<std::uint64_t>(rq[1])));
    for (int rep = 0; rep < 1000; ++rep) {
      std::vector<double> y(24);
      for (int i = 0; i < 24; ++i) {
        const double u1 = rng.uniform(static_cast<std::uint64_t>(rep) * 48 +
                                      2 * static_cast<std::uint64_t>(i));
        const double u2 = rng.uniform(static_cast<std::uint64_t>(rep) * 48 +
                                      2 * static_cast<std::uint64_t>(i) + 1);
        y[static_cast<std::size_t>(i)] =
            (u1 < 0.5 ? -1.0 : 1.0) * (std::pow(u2, -0.45) - 1.0);
      }
      const double full = dual_norm_rq(y, params, false);
      const double part = dual_norm_rq(y, params, true);
      if (!(part <= full * (1.0 + 1e-12) &&
            full <= 2.0 * part * (1.0 + 1e-12))) {
        ++dual_violations;
      }
    }
  }
  log << "  3000 dual factor-2 checks, violations " << dual_violations
      << "\n";
  return lp_violations == 0 && dual_violations == 0;
}

bool criterion_7(std::ostream& log) {
  const KernelOut& k = kernel_result("poisson", 1);
  bool all = true;
  for (int cfg = 0; cfg < 4; ++cfg) {
    const double n = k.payload[5 * cfg];
    const double delta = k.payload[5 * cfg + 1];
    const double quad = k.payload[5 * cfg + 2];
    const double direct = k.payload[5 * cfg + 3];
    const double se = k.payload[5 * cfg + 4];
    const double tol = 3.0 * se + 1e-6 * (1.0 + std::fabs(quad));
    const bool ok = std::fabs(quad - direct) <= tol;
    log << "  n=" << n << " delta=" << delta << ": quadrature " << quad
        << ", direct " << direct << ", combined se " << se
        << (ok ? "" : "  <-- FAIL") << "\n";
    all = all && ok;
  }
  const double p_hat = k.payload[20];
  const double hw = k.payload[21];
  const double upper_bound = k.payload[22];
  const bool lemma_ok = p_hat <= upper_bound + 3.0 * hw &&
                        std::fabs(upper_bound - 0.01 * std::log(2.0)) <= 1e-12;
  log << "  doubled-norm exceedance " << p_hat << ", budget " << upper_bound
      << " + 3*" << hw << "\n";
  return all && lemma_ok;
}

bool criterion_8(std::ostream& log) {
  const KernelOut& k = kernel_result("main_certificates", 1);
  const char* names[] = {"basis vector", "uniform", "critical decay"};
  bool all = true;
  for (int ai = 0; ai < 3; ++ai) {
    const double* row = &k.payload[static_cast<std::size_t>(ai) * 9];
    const bool feasible = row[1] > 0.5;
    const bool verified = row[2] > 0.5;
    log << "  " << names[ai] << ": c_dev " << row[0]
        << (feasible ? "" : " (calibration infeasible)") << ", verification "
        << (verified ? "pass" : "FAIL");
    for (int t = 0; t < 3; ++t) {
      log << " [p_hat " << row[3 + 2 * t] << " vs " << row[4 + 2 * t] << "]";
    }
    log << "\n";
    all = all && feasible && verified;
  }
  return all;
}

bool criterion_9(std::ostream& log) {
  const KernelOut& k = kernel_result("critical_direction", 1);
  const double c_dev = k.payload[0];
  const bool feasible = k.payload[1] > 0.5;
  const double bound_main = k.payload[2];
  const double bound_sd = k.payload[3];
  const bool verified = k.payload[4] > 0.5;
  log << "  shared c_dev " << c_dev << ", bounds at t=4: main " << bound_main
      << " vs special direction " << bound_sd << ", verification p_hat "
      << k.payload[5] << " vs budget " << k.payload[6] << "\n";

  if (g_scale >= 1.0) {
    const std::size_t n = 10000;
    const double q = 3.0;
    const std::vector<QuantileModel> models(
        n, QuantileModel::symmetric_power_law(q));
    const std::vector<double> a = coefficients_from_tag("critical:10000", q);
    const CalibrationResult own = calibrate(
        DeviationCertificate::special_direction_from(a, q, 1.0, 3.0), models,
        make_plan(0xC900, scaled(1e6), 1), {2.0, 2.5, 3.0, 3.5}, 3.0);
    log << "  (informational: independently calibrated special direction "
        << "c_dev " << own.c_dev << ", bound at t=4 "
        << DeviationCertificate::special_direction_from(a, q, own.c_dev, 3.0)
               .bound_at(4.0)
        << ")\n";
  }
  return feasible && bound_sd < bound_main && verified;
}

bool criterion_10(std::ostream& log) {
  const KernelOut& k = kernel_result("latala", 1);
  bool all = true;
  for (int cfg = 0; cfg < 6; ++cfg) {
    const double* row = &k.payload[static_cast<std::size_t>(cfg) * 5];
    const double n = row[0];
    const double p = row[1];
    const double norm = row[2];
    const double mean = row[3];
    const double se = row[4];
    const double lo = std::pow(0.11627 * norm, p);
    const double hi = std::pow(M_E * norm, p);
    const bool ok = mean + 3.0 * se >= lo && mean - 3.0 * se <= hi;
    log << "  n=" << n << " p=" << p << ": moment norm " << norm
        << ", mean |S|^p " << mean << " +- " << se << ", window [" << lo
        << ", " << hi << "]" << (ok ? "" : "  <-- FAIL") << "\n";
    all = all && ok;
  }
  return all;
}

bool criterion_11(std::ostream& log) {
  const QuantileModel model = QuantileModel::pure_pareto_h(10.0);
  const MomentTable table = make_moment_table(model);
  const double envelope = markov_envelope(table, 10.0);
  const double optimal = 10.0 * M_E * std::pow(10.0, -10.0) * std::log(10.0);
  const double exact_tail = 1e-10;
  const double ratio = envelope / optimal;
  log << "  envelope " << envelope << ", optimized reference " << optimal
      << " (ratio " << ratio << "), exact tail " << exact_tail << "\n";
  return ratio >= 0.95 && ratio <= 1.05 && envelope >= exact_tail;
}

bool criterion_12(std::ostream& log) {
  bool all = true;
  for (const auto& entry : kernel_registry()) {
    const std::uint64_t base = kernel_result(entry.name, 1).digest;
    std::uint64_t other = 0;
    if (entry.worker_knob) {
      other = kernel_result(entry.name, 8).digest;
    } else {
      other = entry.fn(1).digest;  // same seeds rerun from scratch
    }
    const bool ok = base == other;
    char line[160];
    std::snprintf(line, sizeof(line),
                  "  %-20s %016llx vs %016llx (%s)%s\n", entry.name,
                  static_cast<unsigned long long>(base),
                  static_cast<unsigned long long>(other),
                  entry.worker_knob ? "workers 1 vs 8" : "seeded rerun",
                  ok ? "" : "  <-- FAIL");
    log << line;
    all = all && ok;
  }
  return all;
}

struct Criterion {
  int id;
  const char* title;
  double budget_seconds;
  bool (*run)(std::ostream&);
};

const std::vector<Criterion>& criteria() {
  static const std::vector<Criterion> list = {
      {1, "envelope replacement constant in (1,2), grid-stable", 1.0,
       criterion_1},
      {2, "closed-form inverse bounds dominate exact inverses", 1.0,
       criterion_2},
      {3, "order statistic envelope violation frequency", 120.0, criterion_3},
      {4, "calibrated closed-form trimmed sum bound on the grid", 600.0,
       criterion_4},
      {5, "explicit lower order statistic sum bound", 60.0, criterion_5},
      {6, "primal sign-vector identity and dual factor-2 relation", 300.0,
       criterion_6},
      {7, "hull norm agreement and doubled-norm exceedance", 300.0,
       criterion_7},
      {8, "main certificates calibrate and verify on fresh seeds", 1200.0,
       criterion_8},
      {9, "critical direction certificate improves and verifies", 600.0,
       criterion_9},
      {10, "signed sum moment norm sandwich", 120.0, criterion_10},
      {11, "optimized polynomial envelope near the exact constant", 1.0,
       criterion_11},
      {12, "bit-identical results across worker counts", 1e18, criterion_12},
  };
  return list;
}

}  // namespace

int main(int argc, char** argv) {
  std::set<int> selected;
  for (int i = 1; i < argc; ++i) {
    const std::string arg = argv[i];
    if (arg == "--smoke") {
      g_scale = 0.02;
    } else if (arg == "--criteria" && i + 1 < argc) {
      std::stringstream ss(argv[++i]);
      std::string item;
      while (std::getline(ss, item, ',')) {
        if (!item.empty()) selected.insert(std::atoi(item.c_str()));
      }
    } else if (arg == "--help") {
      std::cout << "usage: tailcert_acceptance [--criteria 1,2,...] "
                   "[--smoke]\n";
      return 0;
    } else {
      std::cerr << "unknown argument " << arg << "\n";
      return 2;
    }
  }

  if (g_scale < 1.0) {
    std::cout << "SMOKE MODE: replication counts reduced; this run is a "
                 "plumbing check, not an acceptance verdict\n";
  }
  std::cout.setf(std::ios::fmtflags(0), std::ios::floatfield);
  std::cout.precision(10);

  int passed = 0;
  int ran = 0;
  std::vector<std::string> summary;
  for (const auto& c : criteria()) {
    if (!selected.empty() && selected.find(c.id) == selected.end()) continue;
    ++ran;
    std::cout << "criterion " << c.id << ": " << c.title << "\n";
    const double t0 = now_seconds();
    bool ok = false;
    try {
      ok = c.run(std::cout);
    } catch (const std::exception& e) {
      std::cout << "  exception: " << e.what() << "\n";
      ok = false;
    }
    const double elapsed = now_seconds() - t0;
    const bool in_budget = elapsed < c.budget_seconds;
    if (g_scale >= 1.0 && !in_budget) {
      std::cout << "  runtime " << elapsed << "s exceeds the "
                << c.budget_seconds << "s budget\n";
      ok = false;
    }
    char line[192];
    std::snprintf(line, sizeof(line), "[%s]%s criterion %d: %s (%.1fs)",
                  ok ? "PASS" : "FAIL", g_scale < 1.0 ? " [SMOKE]" : "", c.id,
                  c.title, elapsed);
    std::cout << line << "\n";
    summary.push_back(line);
    passed += ok ? 1 : 0;
  }

  std::cout << "\n";
  for (const auto& line : summary) std::cout << line << "\n";
  std::cout << "acceptance: " << passed << "/" << ran << " criteria passed"
            << (g_scale < 1.0 ? " [SMOKE MODE - not a verdict]" : "") << "\n";
  return passed == ran && ran > 0 ? 0 : 1;
}
