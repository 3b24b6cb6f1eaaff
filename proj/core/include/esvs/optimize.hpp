#pragma once

#include <utility>
#include <vector>

#include "esvs/metrics.hpp"

namespace esvs {

struct OptResult {
  double r_star = 0.0;
  double f_star = 0.0;
  int evals = 0;
  std::pair<double, double> bracket{0.0, 0.0};
  bool boundary = false;  // maximum sits on a bracket endpoint
};

// Maximize fidelity(ESVS(r, n), PSSVS(lambda, m)) over r in [r_lo, r_hi]:
// 129-point coarse scan to bracket the global maximum, then golden-section
// refinement until the interval is narrower than tol. r_hi <= 0 selects the
// default bracket [0.05, max(3, lambda + 1.5)]. Odd n + m short-circuits to
// the degenerate all-zero result with evals = 0.
OptResult optimal_fidelity(int n, int m, double lambda, double r_lo = 0.05, double r_hi = 0.0,
                           double tol = 1e-8);

struct FidelityCell {
  double lambda = 0.0;
  double r = 0.0;
  double f = 0.0;
};

// Dense F(n, m, lambda, r) table, lambda-major. Cells are independent;
// threads <= 0 picks hardware concurrency. Ordering is grid order regardless
// of parallelism.
std::vector<FidelityCell> fidelity_sweep(int n, int m, const std::vector<double>& lambda_grid,
                                         const std::vector<double>& r_grid, int threads = 1);

}  // namespace esvs
