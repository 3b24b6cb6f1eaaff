// Acceptance checks for the released metric set. Each criterion prints one
// [PASS]/[FAIL] line; the binary exits nonzero if any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <numbers>
#include <string>
#include <sys/wait.h>
#include <vector>

#include <esvs/metrics.hpp>
#include <esvs/optimize.hpp>

#include "verify.hpp"

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

int criteria_failed = 0;

void report(int idx, bool pass, const std::string& detail) {
  std::printf("[%s] criterion-%d %s\n", pass ? "PASS" : "FAIL", idx, detail.c_str());
  std::fflush(stdout);
  criteria_failed += !pass;
}

std::string fmt(const char* f, ...) {
  char buf[512];
  va_list ap;
  va_start(ap, f);
  std::vsnprintf(buf, sizeof buf, f, ap);
  va_end(ap);
  return buf;
}

// ------------------------------------------------------------- criterion 1

void criterion_fidelity_optima() {
  struct Case {
    int n, m;
    double lambda, f_ref, r_ref;
  };
  const Case cases[] = {
      {2, 2, 1.5, 0.992613, 1.4758},
      {2, 4, 1.5, 0.971793, 1.76518},
      {2, 2, 2.5, 0.99987, 2.49645},
  };
  bool pass = true;
  double max_df = 0.0, max_dr = 0.0, max_t = 0.0;
  for (const Case& c : cases) {
    const auto t0 = Clock::now();
    const esvs::OptResult res = esvs::optimal_fidelity(c.n, c.m, c.lambda);
    const double dt = seconds_since(t0);
    max_df = std::max(max_df, std::abs(res.f_star - c.f_ref));
    max_dr = std::max(max_dr, std::abs(res.r_star - c.r_ref));
    max_t = std::max(max_t, dt);
    pass = pass && std::abs(res.f_star - c.f_ref) <= 1e-3 &&
           std::abs(res.r_star - c.r_ref) <= 5e-3 && dt < 1.0;
  }
  report(1, pass,
         fmt("fidelity optima: max |dF*| = %.2e (<= 1e-3), max |dr*| = %.2e (<= 5e-3), "
             "max time = %.3f s (< 1 s)",
             max_df, max_dr, max_t));
}

// ------------------------------------------------------------- criterion 2

void criterion_oracle_equivalence() {
  const auto t0 = Clock::now();
  const auto results = esvs::cli::run_verify("all", 1e-7, 0);
  const double dt = seconds_since(t0);
  int eq_total = 0, eq_failed = 0;
  for (const auto& r : results) {
    if (r.name.find("-equivalence") == std::string::npos) continue;
    ++eq_total;
    eq_failed += !r.pass;
  }
  const bool pass = eq_total >= 8 && eq_failed == 0 && dt < 60.0;
  report(2, pass,
         fmt("closed-form vs oracle equivalence: %d/%d check families passed in %.1f s (< 60 s)",
             eq_total - eq_failed, eq_total, dt));
}

// ------------------------------------------------------------- criterion 3

double grid_trace(const esvs::PhaseGrid& g) {
  const double dq = (g.q_hi - g.q_lo) / (g.steps_q - 1);
  const double dp = (g.p_hi - g.p_lo) / (g.steps_p - 1);
  double s = 0.0;
  for (int iq = 0; iq < g.steps_q; ++iq) {
    double cq = (iq == 0 || iq == g.steps_q - 1) ? 0.5 : 1.0;
    for (int ip = 0; ip < g.steps_p; ++ip) {
      double c = (ip == 0 || ip == g.steps_p - 1) ? 0.5 * cq : cq;
      s += c * g.at(iq, ip);
    }
  }
  return s * dq * dp;
}

void criterion_wigner_structure() {
  constexpr int kSteps = 241;
  const double wmax_allowed = 1.0 / std::numbers::pi + 1e-9;
  bool pass = true;
  std::string why;
  double worst_trace = 0.0;
  int boxes = 0, literal_boxes = 0;

  for (int n = 0; n <= 5 && pass; ++n) {
    for (double r : {-1.0, -0.5, -0.2, 0.2, 0.5, 1.0}) {
      const esvs::EsvsParams ps{r, n};
      const esvs::QuadratureReport quad = esvs::quadrature(ps);
      const double sq = std::sqrt(quad.var_x), sp = std::sqrt(quad.var_y);

      std::vector<std::pair<double, double>> boxes_qp;
      boxes_qp.push_back({8.0 * sq, 8.0 * sp});          // mass-adaptive window
      if (5.0 * sq <= 6.0 && 5.0 * sp <= 6.0) boxes_qp.push_back({6.0, 6.0});

      for (const auto& [lq, lp] : boxes_qp) {
        const esvs::PhaseGrid g = esvs::wigner_grid(ps, {-lq, lq}, {-lp, lp}, kSteps);
        ++boxes;
        literal_boxes += (lq == 6.0 && lp == 6.0);
        const double tr = grid_trace(g);
        worst_trace = std::max(worst_trace, std::abs(tr - 1.0));
        if (std::abs(tr - 1.0) > 1e-3) {
          pass = false;
          why = fmt("trace = %.6f at n = %d, r = %.1f", tr, n, r);
          break;
        }
        double wmin = g.values[0], wmax = g.values[0];
        for (double w : g.values) {
          wmin = std::min(wmin, w);
          wmax = std::max(wmax, w);
        }
        if (std::max(std::abs(wmin), std::abs(wmax)) > wmax_allowed) {
          pass = false;
          why = fmt("|W| exceeds 1/pi at n = %d, r = %.1f", n, r);
          break;
        }
        // photon addition forces a negative region (pronounced dip for odd n)
        if (n >= 1 && !(wmin < (n % 2 ? -0.25 : -1e-4))) {
          pass = false;
          why = fmt("missing negativity: min W = %.3e at n = %d, r = %.1f", wmin, n, r);
          break;
        }
      }
      if (!pass) break;
    }
  }

  // alternating center value for modest positive squeezing
  for (int n = 0; n <= 5 && pass; ++n) {
    for (double r : {0.2, 0.5}) {
      const double w0 = esvs::wigner({r, n}, {0.0, 0.0});
      const double want = (n % 2 == 0 ? 1.0 : -1.0) / std::numbers::pi;
      if ((n % 2 == 0) != (w0 > 0.0) || std::abs(w0 - want) > 1e-13) {
        pass = false;
        why = fmt("center value %.17g at n = %d, r = %.1f", w0, n, r);
        break;
      }
    }
  }

  report(3, pass,
         pass ? fmt("wigner distributions: %d windows (%d literal [-6,6]^2) at %d^2 points, "
                    "worst |trace - 1| = %.2e (<= 1e-3), center signs alternate, |W| <= 1/pi",
                    boxes, literal_boxes, kSteps, worst_trace)
              : why);
}

// ------------------------------------------------------------- criterion 4

void criterion_photon_statistics() {
  bool pass = true;
  std::string why;
  double worst_sum = 0.0;

  for (int n = 0; n <= 5 && pass; ++n) {
    for (double r : {-1.5, -1.0, -0.5, -0.2, 0.2, 0.5, 1.0, 1.5}) {
      const esvs::EsvsParams ps{r, n};
      double sum = 0.0;
      for (int m = 0; m <= n + 400; ++m) sum += esvs::pnd(ps, m);
      worst_sum = std::max(worst_sum, std::abs(sum - 1.0));
      if (std::abs(sum - 1.0) > 1e-8) {
        pass = false;
        why = fmt("pnd sum = %.12f at n = %d, r = %.1f", sum, n, r);
        break;
      }
      for (int m = 0; m <= n + 21; ++m) {
        const bool structural_zero = m < n || (m - n) % 2 != 0;
        if (structural_zero && esvs::pnd(ps, m) != 0.0) {
          pass = false;
          why = fmt("nonzero at structural zero m = %d, n = %d, r = %.1f", m, n, r);
          break;
        }
      }
      if (!pass) break;
    }
  }

  double qmin = 1e300;
  if (pass) {
    for (double r = 0.1; r <= 1.5001; r += 0.1) qmin = std::min(qmin, esvs::mandel_q({r, 0}));
    if (qmin < 1.0) {
      pass = false;
      why = fmt("squeezed vacuum dipped to Q = %.6f", qmin);
    }
  }

  double q1 = 0.0;
  if (pass) {
    q1 = esvs::mandel_q({1e-7, 1});  // oracle route
    if (std::abs(q1 + 1.0) > 1e-3) {
      pass = false;
      why = fmt("single-photon limit gave Q = %.6f", q1);
    }
  }

  report(4, pass,
         pass ? fmt("photon statistics: worst |sum(P) - 1| = %.2e (<= 1e-8), structural zeros "
                    "exact, min Q(n=0) = %.3f (>= 1), Q -> %.6f as r -> 0 for n = 1",
                    worst_sum, qmin, q1)
              : why);
}

// ------------------------------------------------------------- criterion 5

bool run_tool(const std::string& args) {
  const std::string cmd = std::string(ESVS_CLI_PATH) + " " + args;
  const int rc = std::system(cmd.c_str());
  return rc != -1 && WIFEXITED(rc) && WEXITSTATUS(rc) == 0;
}

int file_lines(const std::string& path, std::string* header) {
  std::ifstream f(path);
  if (!f.good()) return -1;
  int count = 0;
  std::string line;
  while (std::getline(f, line)) {
    if (count == 0 && header) *header = line;
    ++count;
  }
  return count;
}

void criterion_non_gaussianity() {
  bool pass = true;
  std::string why;

  for (double r : {-2.0, -1.2, -0.5, 0.3, 1.1, 2.0}) {
    if (std::abs(esvs::non_gaussianity({r, 0}).delta) > 1e-9) {
      pass = false;
      why = fmt("gaussian state scored delta != 0 at r = %.1f", r);
      break;
    }
  }

  double d1 = 0.0;
  if (pass) {
    d1 = esvs::non_gaussianity({1e-7, 1}).delta;  // oracle route
    if (std::abs(d1 - 5.0 / 12.0) > 1e-6) {
      pass = false;
      why = fmt("single-photon limit gave delta = %.9f, want 5/12", d1);
    }
  }

  if (pass) {
    double prev = -1.0;
    for (int n : {0, 2, 4, 6}) {
      const double d = esvs::non_gaussianity({0.5, n}).delta;
      if (d <= prev) {
        pass = false;
        why = fmt("delta not strictly increasing at n = %d", n);
        break;
      }
      prev = d;
    }
  }

  int files = 0;
  if (pass) {
    for (int n : {0, 1, 2, 3, 4, 6}) {
      const std::string path = "nongauss_sweep_n" + std::to_string(n) + ".csv";
      if (!run_tool("nongauss --n " + std::to_string(n) +
                    " --r-from -2 --r-to 2 --r-steps 81 --format csv --out " + path)) {
        pass = false;
        why = "sweep command failed for n = " + std::to_string(n);
        break;
      }
      std::string header;
      if (file_lines(path, &header) != 82 || header != "r,delta,kappa,mu_tau,varsigma,nbar") {
        pass = false;
        why = "malformed sweep file " + path;
        break;
      }
      ++files;
    }
  }

  report(5, pass,
         pass ? fmt("non-gaussianity: zero on gaussian states, 5/12 limit hit (delta = %.9f), "
                    "strictly increasing in n, %d sweep files written",
                    d1, files)
              : why);
}

// ------------------------------------------------------------- criterion 6

void criterion_quadratures() {
  bool pass = true;
  std::string why;
  double worst_vy = 0.0, worst_snr = 0.0, min_prod = 1e300;

  for (double r = 0.1; r <= 1.5001; r += 0.1) {
    const esvs::QuadratureReport rep = esvs::quadrature({r, 0});
    worst_vy = std::max(worst_vy, std::abs(rep.var_y - 0.5 * std::exp(-2.0 * r)));
    worst_snr = std::max(worst_snr, std::abs(rep.snr_xy));
  }
  if (worst_vy > 1e-10 || worst_snr > 1e-10) {
    pass = false;
    why = fmt("n = 0 identities violated: |dvar_y| = %.2e, |snr_xy| = %.2e", worst_vy, worst_snr);
  }

  if (pass) {
    for (int n = 0; n <= 5; ++n)
      for (double r : {-1.5, -1.0, -0.5, -0.2, 0.2, 0.5, 1.0, 1.5})
        min_prod = std::min(min_prod, esvs::quadrature({r, n}).product);
    if (min_prod < 0.5 - 1e-9) {
      pass = false;
      why = fmt("uncertainty product dipped to %.12f", min_prod);
    }
  }

  int files = 0;
  if (pass) {
    for (int n : {2, 6}) {
      const std::string path = "quadrature_sweep_n" + std::to_string(n) + ".csv";
      if (!run_tool("quadrature --n " + std::to_string(n) +
                    " --r-from 0.05 --r-to 1.5 --r-steps 60 --format csv --out " + path)) {
        pass = false;
        why = "sweep command failed for n = " + std::to_string(n);
        break;
      }
      std::string header;
      if (file_lines(path, &header) != 61 ||
          header != "r,var_x,var_y,product,snr_x,snr_y,snr_xy") {
        pass = false;
        why = "malformed sweep file " + path;
        break;
      }
      ++files;
    }
  }

  report(6, pass,
         pass ? fmt("quadratures: n = 0 identities to 1e-10, min uncertainty product = %.12f "
                    "(>= 1/2), %d sweep files written",
                    min_prod, files)
              : why);
}

// ------------------------------------------------------------- criterion 7

void criterion_self_verification() {
  const auto t0 = Clock::now();
  const bool ok = run_tool("verify --suite all > verify_output.txt");
  const double dt = seconds_since(t0);
  int passes = 0, fails = 0;
  std::ifstream f("verify_output.txt");
  std::string line;
  while (std::getline(f, line)) {
    passes += line.rfind("[PASS]", 0) == 0;
    fails += line.rfind("[FAIL]", 0) == 0;
  }
  const bool pass = ok && fails == 0 && passes > 0 && dt < 120.0;
  report(7, pass,
         fmt("self verification: exit %s, %d checks passed, %d failed, %.1f s (< 120 s)",
             ok ? "0" : "nonzero", passes, fails, dt));
}

}  // namespace

int main() {
  criterion_fidelity_optima();
  criterion_oracle_equivalence();
  criterion_wigner_structure();
  criterion_photon_statistics();
  criterion_non_gaussianity();
  criterion_quadratures();
  criterion_self_verification();
  if (criteria_failed > 0) {
    std::printf("%d of 7 criteria failed\n", criteria_failed);
    return 1;
  }
  std::printf("all 7 criteria passed\n");
  return 0;
}
