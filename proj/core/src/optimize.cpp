#include "esvs/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

namespace esvs {

namespace {
constexpr int kScanPoints = 129;
constexpr double kGolden = 0.6180339887498949;
}  // namespace

OptResult optimal_fidelity(int n, int m, double lambda, double r_lo, double r_hi, double tol) {
  if (n < 0 || m < 0) throw DomainError("optimal_fidelity: negative photon order");
  if (r_hi == 0.0) r_hi = std::max(3.0, lambda + 1.5);
  OptResult res;
  res.bracket = {r_lo, r_hi};
  if ((n + m) % 2 != 0) {
    res.r_star = 0.5 * (r_lo + r_hi);
    return res;  // identically zero by parity
  }
  if (tol <= 0.0) throw DomainError("optimal_fidelity: tol must be positive");
  if (!(r_lo < r_hi)) throw DomainError("optimal_fidelity: requires r_lo < r_hi");
  const bool pos = r_lo >= kRMin && r_hi >= kRMin;
  const bool neg = r_lo <= -kRMin && r_hi <= -kRMin;
  if (!pos && !neg)
    throw DomainError("optimal_fidelity: bracket must sit entirely on one side of +-R_MIN");

  const PssvsParams ps{lambda, m};
  auto f_at = [&](double r) {
    ++res.evals;
    return fidelity(EsvsParams{r, n}, ps);
  };

  double best_f = -1.0;
  int best_i = 0;
  std::vector<double> xs(kScanPoints);
  for (int i = 0; i < kScanPoints; ++i) {
    xs[i] = r_lo + (r_hi - r_lo) * i / double(kScanPoints - 1);
    double f = f_at(xs[i]);
    if (f > best_f) {
      best_f = f;
      best_i = i;
    }
  }
  res.boundary = (best_i == 0 || best_i == kScanPoints - 1);

  double a = xs[std::max(0, best_i - 1)];
  double b = xs[std::min(kScanPoints - 1, best_i + 1)];
  double c = b - kGolden * (b - a);
  double d = a + kGolden * (b - a);
  double fc = f_at(c), fd = f_at(d);
  while (b - a > tol) {
    if (fc > fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - kGolden * (b - a);
      fc = f_at(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + kGolden * (b - a);
      fd = f_at(d);
    }
  }
  res.r_star = 0.5 * (a + b);
  res.f_star = f_at(res.r_star);
  if (best_f > res.f_star) {  // guard against a non-unimodal refinement cell
    res.f_star = best_f;
    res.r_star = xs[best_i];
  }
  return res;
}

std::vector<FidelityCell> fidelity_sweep(int n, int m, const std::vector<double>& lambda_grid,
                                         const std::vector<double>& r_grid, int threads) {
  for (double l : lambda_grid)
    if (!std::isfinite(l) || std::abs(l) < kRMin)
      throw DomainError("fidelity_sweep: lambda grid values must be finite with |value| >= R_MIN");
  for (double r : r_grid)
    if (!std::isfinite(r) || std::abs(r) < kRMin)
      throw DomainError("fidelity_sweep: r grid values must be finite with |value| >= R_MIN");

  std::vector<FidelityCell> table(lambda_grid.size() * r_grid.size());
  int nthreads = threads;
  if (nthreads <= 0) nthreads = int(std::thread::hardware_concurrency());
  nthreads = std::clamp<int>(nthreads, 1, 256);
  nthreads = std::min<size_t>(nthreads, std::max<size_t>(1, lambda_grid.size()));

  auto run = [&](size_t first) {
    for (size_t il = first; il < lambda_grid.size(); il += size_t(nthreads)) {
      const PssvsParams ps{lambda_grid[il], m};
      for (size_t ir = 0; ir < r_grid.size(); ++ir) {
        FidelityCell& cell = table[il * r_grid.size() + ir];
        cell.lambda = lambda_grid[il];
        cell.r = r_grid[ir];
        cell.f = fidelity(EsvsParams{r_grid[ir], n}, ps);
      }
    }
  };
  if (nthreads == 1) {
    run(0);
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < nthreads; ++t) pool.emplace_back(run, size_t(t));
    for (auto& th : pool) th.join();
  }
  return table;
}

}  // namespace esvs
