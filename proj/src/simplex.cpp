#include "tailcert/simplex.hpp"

#include <cmath>
#include <cstddef>
#include <limits>

#include "tailcert/errors.hpp"

namespace tailcert {

LpResult simplex_maximize(const std::vector<double>& c,
                          const std::vector<std::vector<double>>& A,
                          const std::vector<double>& b) {
  const std::size_t n = c.size();
  const std::size_t m = A.size();
  if (b.size() != m) throw ConfigError("simplex_maximize: shape mismatch");
  for (const auto& row : A) {
    if (row.size() != n) throw ConfigError("simplex_maximize: shape mismatch");
  }
  for (double v : b) {
    if (!(v >= 0.0)) {
      throw ConfigError("simplex_maximize: rhs must be nonnegative");
    }
  }

  double scale = 1.0;
  for (double v : c) scale = std::max(scale, std::fabs(v));
  const double cost_tol = 1e-11 * scale;
  const double pivot_tol = 1e-11;

  // Tableau: m rows of [A | I | b], objective row stores -c over the
  // structural columns (so optimality is "all row entries >= -cost_tol").
  const std::size_t cols = n + m + 1;
  std::vector<std::vector<double>> tab(m + 1, std::vector<double>(cols, 0.0));
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) tab[i][j] = A[i][j];
    tab[i][n + i] = 1.0;
    tab[i][cols - 1] = b[i];
  }
  for (std::size_t j = 0; j < n; ++j) tab[m][j] = -c[j];

  std::vector<std::size_t> basis(m);
  for (std::size_t i = 0; i < m; ++i) basis[i] = n + i;

  const long max_iters = 20000 + 200 * static_cast<long>(n + m);
  const long bland_after = max_iters / 2;
  for (long iter = 0; iter < max_iters; ++iter) {
    std::size_t enter = cols;
    if (iter < bland_after) {
      double best = -cost_tol;
      for (std::size_t j = 0; j + 1 < cols; ++j) {
        if (tab[m][j] < best) {
          best = tab[m][j];
          enter = j;
        }
      }
    } else {
      for (std::size_t j = 0; j + 1 < cols; ++j) {
        if (tab[m][j] < -cost_tol) {
          enter = j;
          break;
        }
      }
    }
    if (enter == cols) {
      LpResult result;
      result.x.assign(n, 0.0);
      for (std::size_t i = 0; i < m; ++i) {
        if (basis[i] < n) result.x[basis[i]] = tab[i][cols - 1];
      }
      result.value = tab[m][cols - 1];
      return result;
    }

    std::size_t leave = m;
    double best_ratio = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < m; ++i) {
      if (tab[i][enter] > pivot_tol) {
        const double ratio = tab[i][cols - 1] / tab[i][enter];
        if (ratio < best_ratio - 1e-12 ||
            (ratio < best_ratio + 1e-12 &&
             (leave == m || basis[i] < basis[leave]))) {
          best_ratio = ratio;
          leave = i;
        }
      }
    }
    if (leave == m) {
      throw NumericalError("simplex_maximize: unbounded objective");
    }

    const double pivot = tab[leave][enter];
    for (std::size_t j = 0; j < cols; ++j) tab[leave][j] /= pivot;
    for (std::size_t i = 0; i <= m; ++i) {
      if (i == leave) continue;
      const double factor = tab[i][enter];
      if (factor == 0.0) continue;
      for (std::size_t j = 0; j < cols; ++j) {
        tab[i][j] -= factor * tab[leave][j];
      }
    }
    basis[leave] = enter;
  }
  throw NumericalError("simplex_maximize: iteration limit exceeded");
}

}  // namespace tailcert
