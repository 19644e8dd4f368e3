#pragma once

#include <vector>

#include "tailcert/distributions.hpp"

namespace tailcert {

// Latala's moment norm for a sum of independent symmetric variables:
// inf{ t > 0 : sum_i ln E[(|1 + X_i/t|^p + |1 - X_i/t|^p)/2] <= p }.
// Monotone bisection to relative tolerance tol; inner expectations by
// quadrature on the quantile scale (exact for Empirical models). Returns
// +inf when some model lacks a finite p-th moment.
double latala_norm(const std::vector<QuantileModel>& models, double p,
                   double tol = 1e-8);

// Grid for the optimized-Markov envelope: geometric refinement of the gap
// to the tail exponent, from the full span down to min_gap_fraction of it.
// Models with all moments finite are capped at exponent_cap.
struct MarkovGrid {
  int points = 96;
  double min_gap_fraction = 1e-3;
  double exponent_cap = 256.0;
};

struct MomentTable {
  std::vector<double> p;
  std::vector<double> value;  // E|X|^p, finite on the whole grid
};

MomentTable make_moment_table(const QuantileModel& model,
                              const MarkovGrid& grid = {});

// min over the table's p of t^-p E|X|^p; needs t > 1.
double markov_envelope(const MomentTable& table, double t);
double markov_envelope(const QuantileModel& model, double t,
                       const MarkovGrid& grid = {});

// Cr (1+|x|)^-r (n^-1/2 m3 + n^-(r-2)/2 mr): a nonuniform envelope for the
// normal-approximation error of a standardized sum at the point x.
double berry_esseen_nonuniform(double r, long n, double x, double m3,
                               double mr, double Cr = 1.0);

struct TailPoint {
  double deviation = 0.0;
  double probability = 0.0;
};

// (t n^(1/alpha), C_alpha (log t / t)^alpha) for t > e.
TailPoint bcr_bound(double alpha, long n, double t, double C_alpha = 1.0);

// The matching linear-functional form used for comparisons:
// deviation C q^-1 t^2 e^(t^2/2q) n^(1/q) with probability Cq e^(-t^2/2).
TailPoint bcr_linear_comparison(double q, long n, double t, double C = 1.0,
                                double Cq = 1.0);

// Moment diagnostic for the mixture W = Z + U H, with Z standard normal,
// U Bernoulli(epsilon), H symmetric with P{|H| > t} = t^-10 for t >= 1,
// all independent. Returns (E|W|^p)^(1/p) / (1 + (epsilon/(10-p))^(1/p)),
// which should sit in a dimension-free window. Needs 2 <= p < 10.
double mixture_moment_ratio(double p, double epsilon);

}  // namespace tailcert
