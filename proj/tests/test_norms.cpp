#include "doctest.h"

#include <cmath>
#include <cstdint>
#include <vector>

#include "tailcert/norms.hpp"
#include "tailcert/rng.hpp"

using namespace tailcert;

namespace {

RQParams rq(double r, double q, std::size_t n) {
  RQParams p;
  p.r = r;
  p.q = q;
  p.n = n;
  return p;
}

std::vector<double> random_vector(StreamCursor& cursor, std::size_t n,
                                  bool heavy, bool signs) {
  std::vector<double> x(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double u = cursor.uniform();
    double v = heavy ? std::pow(u, -0.45) - 1.0 : u;
    if (signs && cursor.uniform() < 0.5) v = -v;
    x[i] = v;
  }
  return x;
}

}  // namespace

TEST_CASE("dual norm enumeration values") {
  CHECK(dual_norm_rq({1.0, 0.0, 0.0}, rq(2.0, 2.0, 3), false) ==
        doctest::Approx(0.5).epsilon(1e-14));
  CHECK(dual_norm_rq({1.0, 1.0, 1.0, 1.0}, rq(2.0, 2.0, 4), false) ==
        doctest::Approx(1.0).epsilon(1e-14));

  SUBCASE("positive homogeneity") {
    CounterRng rng(derive_stream(61, 0));
    StreamCursor cursor{rng, 0};
    for (int rep = 0; rep < 50; ++rep) {
      const auto y = random_vector(cursor, 12, rep % 2 == 0, true);
      const double base = dual_norm_rq(y, rq(1.7, 3.0, 12), false);
      std::vector<double> scaled = y;
      for (double& v : scaled) v *= 2.0;
      CHECK(dual_norm_rq(scaled, rq(1.7, 3.0, 12), false) ==
            doctest::Approx(2.0 * base).epsilon(1e-12));
    }
  }

  SUBCASE("restricted form stays within the stated factor two") {
    CounterRng rng(derive_stream(62, 0));
    StreamCursor cursor{rng, 0};
    const std::vector<std::pair<double, double>> grid = {
        {1.0, 1.5}, {2.0, 2.0}, {3.5, 4.0}};
    for (const auto& [r, q] : grid) {
      for (int rep = 0; rep < 1000; ++rep) {
        const auto y = random_vector(cursor, 24, rep % 3 == 0, true);
        const double full = dual_norm_rq(y, rq(r, q, 24), false);
        const double part = dual_norm_rq(y, rq(r, q, 24), true);
        CAPTURE(r);
        CAPTURE(q);
        CHECK(part <= full * (1.0 + 1e-12));
        CHECK(full <= 2.0 * part * (1.0 + 1e-12));
      }
    }
  }

  CHECK_THROWS_AS(dual_norm_rq({0.0, 0.0}, rq(2.0, 2.0, 2), false),
                  DomainError);
}

TEST_CASE("primal norm") {
  CHECK(primal_norm_rq({1.0, 0.0}, rq(3.0, 2.0, 2), PrimalMethod::SignFormula)
        == doctest::Approx(3.0).epsilon(1e-14));
  CHECK(primal_norm_rq({1.0, 1.0, 1.0, 0.0}, rq(2.0, 2.0, 4),
                       PrimalMethod::LP) ==
        doctest::Approx(2.0 * std::sqrt(3.0)).epsilon(1e-9));

  SUBCASE("sign formula and LP agree on sign vectors") {
    // exhaustive on small dimension, then random spot checks higher up
    for (std::size_t n = 1; n <= 5; ++n) {
      std::vector<double> x(n, -1.0);
      while (true) {
        bool all_zero = true;
        for (double v : x) {
          if (v != 0.0) all_zero = false;
        }
        if (!all_zero) {
          const RQParams params = rq(1.8, 2.5, n);
          const double sign =
              primal_norm_rq(x, params, PrimalMethod::SignFormula);
          const double lp = primal_norm_rq(x, params, PrimalMethod::LP);
          CHECK(lp == doctest::Approx(sign).epsilon(1e-9));
        }
        std::size_t i = 0;
        while (i < n && x[i] == 1.0) {
          x[i] = -1.0;
          ++i;
        }
        if (i == n) break;
        x[i] += 1.0;
      }
    }
    CounterRng rng(derive_stream(63, 0));
    StreamCursor cursor{rng, 0};
    for (int rep = 0; rep < 100; ++rep) {
      std::vector<double> x(12);
      bool nonzero = false;
      for (double& v : x) {
        const double u = cursor.uniform();
        v = u < 1.0 / 3.0 ? -1.0 : (u < 2.0 / 3.0 ? 0.0 : 1.0);
        if (v != 0.0) nonzero = true;
      }
      if (!nonzero) x[0] = 1.0;
      const RQParams params = rq(3.5, 4.0, 12);
      CHECK(primal_norm_rq(x, params, PrimalMethod::LP) ==
            doctest::Approx(
                primal_norm_rq(x, params, PrimalMethod::SignFormula))
                .epsilon(1e-9));
    }
  }

  SUBCASE("norm axioms for the LP evaluation") {
    CounterRng rng(derive_stream(64, 0));
    StreamCursor cursor{rng, 0};
    const RQParams params = rq(2.2, 3.0, 48);
    for (int rep = 0; rep < 1000; ++rep) {
      const auto a = random_vector(cursor, 48, rep % 2 == 0, true);
      const auto b = random_vector(cursor, 48, rep % 3 == 0, true);
      std::vector<double> sum(48);
      for (std::size_t i = 0; i < 48; ++i) sum[i] = a[i] + b[i];
      const double na = primal_norm_rq(a, params, PrimalMethod::LP);
      const double nb = primal_norm_rq(b, params, PrimalMethod::LP);
      const double ns = primal_norm_rq(sum, params, PrimalMethod::LP);
      CHECK(ns <= na + nb + 1e-9 * (na + nb));

      std::vector<double> scaled = a;
      for (double& v : scaled) v *= 3.5;
      CHECK(primal_norm_rq(scaled, params, PrimalMethod::LP) ==
            doctest::Approx(3.5 * na).epsilon(1e-9));
    }
  }

  SUBCASE("agrees with a dense dual-ball oracle in two dimensions") {
    CounterRng rng(derive_stream(65, 0));
    StreamCursor cursor{rng, 0};
    const double r = 1.6;
    const double q = 2.4;
    const double m1 = std::max(1.0, r);
    const double m2 = std::max(2.0, r * std::pow(2.0, 1.0 / q));
    for (int rep = 0; rep < 200; ++rep) {
      auto x = random_vector(cursor, 2, rep % 2 == 0, true);
      double a = std::fabs(x[0]);
      double b = std::fabs(x[1]);
      if (a < b) std::swap(a, b);
      const double oracle =
          std::max({a * m1, a * m1 + b * (m2 - m1), (a + b) * m2 / 2.0});
      CHECK(primal_norm_rq(x, rq(r, q, 2), PrimalMethod::LP) ==
            doctest::Approx(oracle).epsilon(1e-9));
    }
  }

  SUBCASE("generalized cauchy schwarz against the dual norm") {
    CounterRng rng(derive_stream(66, 0));
    StreamCursor cursor{rng, 0};
    const RQParams params = rq(2.0, 2.5, 16);
    for (int rep = 0; rep < 300; ++rep) {
      const auto x = random_vector(cursor, 16, rep % 2 == 0, true);
      const auto y = random_vector(cursor, 16, rep % 3 == 0, true);
      double inner = 0.0;
      for (std::size_t i = 0; i < 16; ++i) inner += x[i] * y[i];
      CHECK(inner <= primal_norm_rq(x, params, PrimalMethod::LP) *
                             dual_norm_rq(y, params, false) +
                         1e-9);
    }
  }

  CHECK_THROWS_AS(
      primal_norm_rq({0.0}, rq(2.0, 2.0, 1), PrimalMethod::LP), DomainError);
  CHECK_THROWS_AS(primal_norm_rq({0.5}, rq(2.0, 2.0, 1),
                                 PrimalMethod::SignFormula),
                  DomainError);
}

TEST_CASE("sandwich ratio report") {
  SUBCASE("single spike closed form") {
    const double r = 2.0;
    const double q = 3.0;
    CounterRng rng(derive_stream(67, 0));
    StreamCursor cursor{rng, 0};
    const SandwichReport report = sandwich_report(rq(r, q, 1), 100, cursor);
    const double expected = std::max(1.0, r) / (1.0 + r);
    CHECK(report.min_ratio == doctest::Approx(expected).epsilon(1e-9));
    CHECK(report.max_ratio == doctest::Approx(expected).epsilon(1e-9));
  }

  SUBCASE("measured window sits inside the safe bracket") {
    CounterRng rng(derive_stream(68, 0));
    StreamCursor cursor{rng, 0};
    for (double q : {2.0, 4.0, 16.0}) {
      const double r = 1.0 + 0.5 * q;
      const SandwichReport report =
          sandwich_report(rq(r, q, 32), 400, cursor);
      CAPTURE(q);
      CHECK(report.min_ratio >= 1.0 / (16.0 * q));
      CHECK(report.max_ratio <= 2.0);
      CHECK(report.displayed_low == doctest::Approx(1.0 / (4.0 * q)));
      CHECK(report.displayed_high == doctest::Approx(4.0 / q));
      CHECK(report.displayed_window_holds ==
            (report.min_ratio >= report.displayed_low &&
             report.max_ratio <= report.displayed_high));
    }
  }

  SUBCASE("displayed constant fails for a spike at large q") {
    // a lone unit coordinate pushes the ratio near one, above 4/q
    CounterRng rng(derive_stream(69, 0));
    StreamCursor cursor{rng, 0};
    const SandwichReport report =
        sandwich_report(rq(9.0, 16.0, 16), 400, cursor);
    CHECK_FALSE(report.displayed_window_holds);
    CHECK(report.max_ratio > 4.0 / 16.0);
  }
}

TEST_CASE("poisson hull norm") {
  SUBCASE("degenerate constant model") {
    PoissonNormParams params;
    params.delta = 0.1;
    params.weights = {1.0};
    params.model = QuantileModel::empirical({2.0});
    params.source.kind = QuantileSource::Kind::Analytic;
    PoissonMethod quad;
    quad.kind = PoissonMethod::Kind::Quadrature;
    const double expected = 2.0 * (1.0 - std::exp(-10.0));
    CHECK(poisson_hull_norm(params, quad) ==
          doctest::Approx(expected).epsilon(1e-6));
    PoissonMethod direct;
    direct.kind = PoissonMethod::Kind::DirectMC;
    direct.replications = 20000;
    direct.seed = 5;
    CHECK(poisson_hull_norm(params, direct) ==
          doctest::Approx(expected).epsilon(0.02));
  }

  SUBCASE("two evaluation routes agree") {
    auto run = [](PoissonMethod::Kind kind, std::uint64_t seed) {
      PoissonNormParams params;
      params.delta = 0.1;
      params.weights = {1.0, 0.5, 0.25, 0.125};
      params.model = QuantileModel::u_envelope(4.0);
      params.source.kind = QuantileSource::Kind::MonteCarlo;
      params.source.replications = 50000;
      params.source.seed = seed;
      PoissonMethod method;
      method.kind = kind;
      method.replications = 20000;
      method.seed = seed + 1000;
      return poisson_hull_norm(params, method);
    };
    auto spread = [&](PoissonMethod::Kind kind, double* mean_out) {
      const int G = 8;
      double sum = 0.0;
      double sumsq = 0.0;
      for (int g = 0; g < G; ++g) {
        const double v = run(kind, 100 + static_cast<std::uint64_t>(g));
        sum += v;
        sumsq += v * v;
      }
      const double mean = sum / G;
      *mean_out = mean;
      const double var = std::max(sumsq / G - mean * mean, 0.0) / (G - 1.0);
      return std::sqrt(var);
    };
    double mq = 0.0;
    double md = 0.0;
    const double seq = spread(PoissonMethod::Kind::Quadrature, &mq);
    const double sed = spread(PoissonMethod::Kind::DirectMC, &md);
    const double gap = std::fabs(mq - md);
    CHECK(gap <= 3.0 * std::sqrt(seq * seq + sed * sed) + 1e-9);
  }

  SUBCASE("triangle inequality and weight monotonicity") {
    CounterRng rng(derive_stream(70, 0));
    StreamCursor cursor{rng, 0};
    for (int rep = 0; rep < 10; ++rep) {
      std::vector<double> a(4);
      std::vector<double> b(4);
      for (int i = 0; i < 4; ++i) {
        a[i] = cursor.uniform();
        b[i] = cursor.uniform();
      }
      auto norm_of = [&](const std::vector<double>& w) {
        PoissonNormParams params;
        params.delta = 0.2;
        params.weights = w;
        params.model = QuantileModel::pareto_tail(3.0);
        params.source.kind = QuantileSource::Kind::MonteCarlo;
        params.source.replications = 20000;
        params.source.seed = 77;
        PoissonMethod method;
        method.kind = PoissonMethod::Kind::Quadrature;
        return poisson_hull_norm(params, method);
      };
      std::vector<double> sum(4);
      for (int i = 0; i < 4; ++i) sum[i] = a[i] + b[i];
      const double na = norm_of(a);
      const double nb = norm_of(b);
      const double ns = norm_of(sum);
      CHECK(ns <= na + nb + 1e-6 * (na + nb));

      std::vector<double> bigger = a;
      bigger[rep % 4] += 0.5;
      CHECK(norm_of(bigger) >= na - 1e-9);
    }
  }
}

TEST_CASE("norm quantile comparison") {
  SUBCASE("degenerate constant model never exceeds twice the norm") {
    PoissonNormParams params;
    params.delta = 0.1;
    params.weights = {1.0};
    params.model = QuantileModel::empirical({1.0});
    params.source.kind = QuantileSource::Kind::Analytic;
    const NormComparisonReport report =
        norm_quantile_comparison(params, 20000, 9);
    CHECK(report.p_upper.p_hat == 0.0);
    CHECK(report.upper_bound == doctest::Approx(0.1 * std::log(2.0)));
  }

  SUBCASE("both lemma directions hold for a heavy tailed sum") {
    PoissonNormParams params;
    params.delta = 0.05;
    params.weights.assign(8, 1.0);
    params.model = QuantileModel::u_envelope(4.0);
    params.source.kind = QuantileSource::Kind::MonteCarlo;
    params.source.replications = 100000;
    params.source.seed = 13;
    const NormComparisonReport report =
        norm_quantile_comparison(params, 100000, 14);
    const double hw_upper = 0.5 * (report.p_upper.ci_high -
                                   report.p_upper.ci_low);
    const double hw_lower = 0.5 * (report.p_lower.ci_high -
                                   report.p_lower.ci_low);
    CHECK(report.p_upper.p_hat <= report.upper_bound + 3.0 * hw_upper);
    CHECK(report.p_lower.p_hat >= report.lower_bound - 3.0 * hw_lower);
    CHECK(report.ratio_R > 0.0);
  }
}
