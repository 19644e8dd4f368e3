#pragma once

#include <vector>

namespace tailcert {

struct LpResult {
  double value = 0.0;
  std::vector<double> x;
};

// Maximize c.x subject to A x <= b, x >= 0, with b >= 0 so the slack basis
// is feasible. Dense tableau simplex; Dantzig pricing with a Bland fallback
// once the iteration count suggests cycling. Throws NumericalError on an
// unbounded ray or iteration blowup.
LpResult simplex_maximize(const std::vector<double>& c,
                          const std::vector<std::vector<double>>& A,
                          const std::vector<double>& b);

}  // namespace tailcert
