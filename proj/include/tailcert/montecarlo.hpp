#pragma once

#include <cstdint>
#include <vector>

#include "tailcert/certificates.hpp"
#include "tailcert/distributions.hpp"
#include "tailcert/stats.hpp"

namespace tailcert {

// Every simulation is a pure function of (seed, replications, chunk_size);
// worker_hint only sets the thread count and never changes any output bit.
struct SimulationPlan {
  std::uint64_t seed = 1;
  std::int64_t replications = 100000;
  std::int64_t chunk_size = 4096;
  int worker_hint = 1;
  // Full samples are kept up to this many replications; beyond it a strided
  // subsample backs the quantiles and threshold counts are recomputed by a
  // deterministic replay pass.
  std::int64_t max_stored = 10000000;
};

enum class TailSide { TwoSidedAboutMedian, UpperOnly };

class SimulationSummary {
 public:
  const SimulationPlan& plan() const { return plan_; }
  std::int64_t replications() const { return plan_.replications; }
  std::int64_t stride() const { return stride_; }
  // Sorted values of every stride-th replication (all of them when the run
  // fits the storage cap).
  const std::vector<double>& sorted_sample() const { return stored_; }
  double median() const { return median_; }
  // Median of the independent pilot run; two-sided events center here.
  double pilot_median() const { return pilot_median_; }

  double quantile(double u) const;
  // Exact counts over all replications (replayed when strided).
  std::int64_t count_upper(double threshold) const;
  std::int64_t count_two_sided(double center, double threshold) const;
  std::uint64_t digest() const;

 private:
  friend SimulationSummary simulate_linear_sum(
      const std::vector<QuantileModel>& models, const std::vector<double>& a,
      const SimulationPlan& plan);

  SimulationPlan plan_;
  std::vector<QuantileModel> models_;
  std::vector<double> a_;
  std::vector<double> stored_;
  std::int64_t stride_ = 1;
  double median_ = 0.0;
  double pilot_median_ = 0.0;
};

// Draws replications of S = sum_i a_i F_i^{-1}(U_i) with one uniform per
// coordinate from a per-chunk counter stream, plus an independent pilot run
// of a tenth the size for the median.
SimulationSummary simulate_linear_sum(const std::vector<QuantileModel>& models,
                                      const std::vector<double>& a,
                                      const SimulationPlan& plan);

// Exact binomial tail estimate for the event |S - pilot median| > threshold
// (TwoSidedAboutMedian) or S > threshold (UpperOnly).
TailEstimate tail_estimate(const SimulationSummary& summary, double threshold,
                           TailSide side);

struct VerificationRow {
  double t = 0.0;
  double threshold = 0.0;
  TailEstimate estimate;
  double budget = 0.0;  // c_prob * exp(-t^2/2)
  bool pass = false;    // ci_low <= budget
};

struct VerificationReport {
  std::vector<VerificationRow> rows;
  bool all_pass = false;
};

VerificationReport verify_certificate(const DeviationCertificate& cert,
                                      const std::vector<QuantileModel>& models,
                                      const SimulationPlan& plan,
                                      const std::vector<double>& t_grid);

struct CalibrationPoint {
  double t = 0.0;
  double threshold = 0.0;
  TailEstimate estimate;
};

struct CalibrationResult {
  double c_dev = 0.0;
  double c_prob = 0.0;
  std::vector<CalibrationPoint> grid;
  bool feasible = false;
};

// Smallest deviation multiplier (1% relative) whose thresholds keep the
// upper confidence limit within c_prob_target * exp(-t^2/2) at every grid t,
// searched over one fixed simulation; gives up at c_dev = 1e6.
CalibrationResult calibrate(const DeviationCertificate& cert,
                            const std::vector<QuantileModel>& models,
                            const SimulationPlan& plan,
                            const std::vector<double>& t_grid,
                            double c_prob_target);

}  // namespace tailcert
