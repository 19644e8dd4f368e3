#pragma once

#include <cstddef>
#include <vector>

#include "tailcert/distributions.hpp"
#include "tailcert/errors.hpp"
#include "tailcert/rng.hpp"

namespace tailcert {

// Binomial upper-tail bound (np/s)^s ((n-np)/(n-s))^(n-s), np <= s < n.
double binomial_chernoff(std::size_t n, double p, double s);

// Uniform order statistics gamma_(1) <= ... <= gamma_(n) built from the
// running weighted sum of standard exponentials; sorted by construction.
std::vector<double> renyi_sample(std::size_t n, StreamCursor& stream);
void renyi_sample_into(std::size_t n, StreamCursor& stream,
                       std::vector<double>& out);

struct EnvelopeParams {
  std::size_t n = 1;
  double t = 1.0;
  double renyi_C = 4.0;
  double renyi_c = 0.125;
  bool closed_form = false;  // use closed-form xi-inverse bounds instead of
                             // the exact numeric inverses
};

struct OrderStatEnvelope {
  // Index k-1 holds the bound for the k-th order statistic; all in [0, 1].
  std::vector<double> top;
  std::vector<double> bottom;
  std::vector<double> renyi;
  std::vector<double> renyi_linearized;
  double joint_failure_probability = 0.0;  // for min(top, bottom), all k
  double renyi_failure_probability = 0.0;  // renyi_C * exp(-t^2/2)
};

OrderStatEnvelope orderstat_envelope(const EnvelopeParams& params);

// P{|sum a_j (Z_j - 1)| > r} <= 2 exp(-c min{(r/|a|_2)^2, r/|a|_inf})
// for independent standard exponentials Z_j.
double subexp_sum_bound(const std::vector<double>& a, double r,
                        double c = 0.125);

struct TrimmedBoundVariant {
  enum class Kind { Quadrature, Replacio, Productiones, ParetoClosed, Glptj };
  Kind kind = Kind::Quadrature;
  double p = 0.0;  // Productiones growth exponent
  double T = 1.0;  // Productiones growth constant
  double C = 1.0;  // ParetoClosed multiplicative constant

  static TrimmedBoundVariant quadrature() { return {Kind::Quadrature}; }
  static TrimmedBoundVariant replacio() { return {Kind::Replacio}; }
  static TrimmedBoundVariant productiones(double p, double T) {
    TrimmedBoundVariant v;
    v.kind = Kind::Productiones;
    v.p = p;
    v.T = T;
    return v;
  }
  static TrimmedBoundVariant pareto_closed(double C) {
    TrimmedBoundVariant v;
    v.kind = Kind::ParetoClosed;
    v.C = C;
    return v;
  }
  static TrimmedBoundVariant glptj() { return {Kind::Glptj}; }
};

// Upper bound for the sum of order statistics Y_(n-k) + ... + Y_(n-j),
// holding with probability at least 1 - (pi^2/3) exp(-lambda^2/2).
// Variants trade sharpness for closed form; Glptj returns its comparison
// threshold (see glptj_comparison for the paired probability).
double trimmed_sum_bound(const QuantileModel& model, std::size_t n,
                         std::size_t j, std::size_t k, double lambda,
                         const TrimmedBoundVariant& variant);

struct GlptjComparison {
  double threshold = 0.0;    // 12 p (e s)^(1/p) n / (p - 1)
  double probability = 0.0;  // s^-k = exp(-lambda^2/2)
  double s = 0.0;            // recovered from s^k = exp(lambda^2/2)
};

GlptjComparison glptj_comparison(const QuantileModel& model, std::size_t n,
                                 std::size_t k, double lambda);

// Whether upper_tail_quantile satisfies the scaling lower bound
// H(delta x) >= T^-1 delta^(-1/p) H(x) on a grid of (delta, x) pairs.
bool growth_condition_holds(const QuantileModel& model, double p, double T);

}  // namespace tailcert
