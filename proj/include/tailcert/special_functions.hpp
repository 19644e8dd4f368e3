#pragma once

#include "tailcert/errors.hpp"

namespace tailcert {

// The two deviation profiles:
//   Xi1(t) = e^t  (1 - t) on [0, 1], decreasing from 1 to 0
//   Xi2(t) = e^-t (1 + t) on [0, inf), decreasing from 1 to 0
enum class XiKind { Xi1, Xi2 };

double xi_eval(XiKind kind, double t);

// Exact inverse by monotone bisection. For Xi1 the domain is [0, 1]
// (xi_inverse(Xi1, 0) = 1); for Xi2 it is (0, 1]. tol is the bracket width
// at which bisection stops.
double xi_inverse(XiKind kind, double y, double tol = 1e-12);

// 1 - xi_inverse(Xi1, y) computed directly: solves w e^(1-w) = y for
// w in [0, 1]. Stays accurate for y far below the precision at which
// xi_inverse's result would round to 1.
double xi1_inverse_complement(double y);

// Closed-form upper bounds for the inverses:
//   Xi1: min{ sqrt(2(1-y)), 1 - y/e }                              on [0, 1]
//   Xi2: log(1/y) + log(1 + 4 log(1/y))                            on (0, 2/e]
//        sqrt(2 log(1/y) + 10 (log(1/y))^(3/2))                    on [2/e, 1]
double xi_inverse_bound(XiKind kind, double y);

struct C0Scan {
  double value = 0.0;   // the supremum
  double argmax = 0.0;  // where it is attained
};

// sup over s > 0 of (e^s / (1+s)) / (1 + s e^s / log(e + s e^s)^2),
// located by a log-spaced grid scan refined with golden-section search.
C0Scan c0_scan(int grid_points = 2000, double refine_tol = 1e-9);
double c0_constant(int grid_points = 2000, double refine_tol = 1e-9);

// Iterated-logarithm count: smallest j such that applying x -> max(ln x, 1)
// j times to n lands at or below cq. Zero when n <= cq already.
int ln_star(double n, double cq);

struct IntegralBoundPair {
  double lemma_upper = 0.0;
  double quadrature = 0.0;
};

// Power-integral bound against direct quadrature.
// Unweighted (0 < a <= b):
//   int_a^b x^-r dx  vs  min{ |1-r|^-1, log(b/a) } (a^(1-r) + b^(1-r))
// Weighted (0 < a <= b < 1/e, r > 1):
//   int_a^b x^-r (log 1/x)^-2 dx  vs
//   min{1, log(log(1/a)/log(1/b))} / log(1/b)
//     + min{(r-1)^-1, log(b/a)} ((r-1)^-1 + log(1/a))^-2 a^(1-r)
IntegralBoundPair integral_bound_pair(double a, double b, double r,
                                      bool weighted);

}  // namespace tailcert
