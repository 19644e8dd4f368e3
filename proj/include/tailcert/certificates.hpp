#pragma once

#include <cstddef>
#include <vector>

#include "tailcert/errors.hpp"

namespace tailcert {

// Sum of i^(-1+2/q) a_[i]^2 over the nonincreasing rearrangement a_[i] of
// the absolute values. Needs q > 2.
double lorentz_weight(const std::vector<double>& a, double q);

enum class CertificateKind { Main, SpecialDirection, AllDirections };

// A deviation guarantee for S = sum a_i X_i around its median: for every
// t > 0, P{ |S - median| > bound_at(t) } <= tail_probability(t). The
// constants c_dev and c_prob are multipliers measured by the calibration
// harness; they default to 1.
class DeviationCertificate {
 public:
  static DeviationCertificate main(std::vector<double> a, double q,
                                   double c_dev = 1.0, double c_prob = 1.0);

  // The fixed critical direction a_i = i^(-1/q), generated internally.
  static DeviationCertificate special_direction(std::size_t n, double q,
                                                double c_dev = 1.0,
                                                double c_prob = 1.0);

  // Same certificate but from user-supplied coefficients, which must match
  // i^(-1/q) to within 1e-12 componentwise.
  static DeviationCertificate special_direction_from(std::vector<double> a,
                                                     double q,
                                                     double c_dev = 1.0,
                                                     double c_prob = 1.0);

  static DeviationCertificate all_directions(std::vector<double> a, double q,
                                             double c_dev = 1.0,
                                             double c_prob = 1.0,
                                             double iter_base = 2.0);

  CertificateKind kind() const { return kind_; }
  double q() const { return q_; }
  double c_dev() const { return c_dev_; }
  double c_prob() const { return c_prob_; }
  double iter_base() const { return iter_base_; }
  // Exponent applied to c_dev; 1 except for AllDirections, where it is
  // 1 + (1 - 2/q) * ln_star(n, iter_base).
  double exponent() const { return exponent_; }
  std::size_t dimension() const { return a_.size(); }
  const std::vector<double>& coefficients() const { return a_; }
  const std::vector<double>& rearranged() const { return rearranged_; }
  double l2() const { return l2_; }
  double lq() const { return lq_; }
  double lorentz() const { return lorentz_; }

  double bound_at(double t) const;
  double tail_probability(double t) const;

  DeviationCertificate with_c_dev(double c_dev) const;
  DeviationCertificate with_constants(double c_dev, double c_prob) const;

 private:
  DeviationCertificate(CertificateKind kind, std::vector<double> a, double q,
                       double c_dev, double c_prob, double iter_base);

  CertificateKind kind_;
  std::vector<double> a_;
  std::vector<double> rearranged_;
  double q_ = 0.0;
  double c_dev_ = 1.0;
  double c_prob_ = 1.0;
  double iter_base_ = 2.0;
  double exponent_ = 1.0;
  double l2_ = 0.0;
  double lq_ = 0.0;
  double lorentz_ = 0.0;
};

// (sum a_i^2 U(z_i))^(1/2) with U(z) = m^(-2/q) log(1/m) and
// m = min{Phi(z), 1 - Phi(z)}. Upper envelope for the gradient norm of the
// transformed linear functional, up to a q-dependent constant.
double gradient_envelope(const std::vector<double>& a, double q,
                         const std::vector<double>& z);

struct DyadicCompression {
  // Output of each stage, empty level sets removed.
  std::vector<std::vector<double>> levels;
  int iterations = 0;
  // Sum of |v|_1 over the inputs of all executed stages.
  double l1_accumulated = 0.0;
  std::vector<double> terminal;
};

// Repeatedly groups the current vector v into dyadic bands
// (2^-j v_1, 2^-j+1 v_1] and replaces each band by its l_{q/2} aggregate
// (sum of v_i^{q/2})^{2/q}, until the dimension is at most min_dim. Entries
// at or below 2^-J v_1 (J = ceil(log2 m)) are absorbed into the last band.
// Each stage satisfies |w|_1 <= |v|_1 and |w|_{q/2} = |v|_{q/2}.
DyadicCompression dyadic_compress(const std::vector<double>& x, double q,
                                  std::size_t min_dim);

// cq^(1 + (1 - 2/q) * ln_star(n, cq)); needs q > 2 and cq > 1.
double all_directions_coefficient(double n, double q, double cq);

}  // namespace tailcert
