#include "esvs/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <thread>
#include <vector>

#include "esvs/oracle.hpp"

namespace esvs {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// sum of sign_i * exp(log_i) without leaving the log domain
SignedLog signed_logsum(const std::vector<SignedLog>& terms) {
  double lmax = kNegInf;
  for (const auto& t : terms)
    if (t.sign != 0.0) lmax = std::max(lmax, t.log_abs);
  if (lmax == kNegInf) return {};
  double acc = 0.0;
  for (const auto& t : terms)
    if (t.sign != 0.0) acc += t.sign * std::exp(t.log_abs - lmax);
  if (acc == 0.0) return {};
  return {lmax + std::log(std::abs(acc)), acc > 0 ? 1.0 : -1.0};
}

// x^e in log form with the 0^0 = 1 convention and no 0 * inf traps
bool log_pow(double x, int e, double& log_acc, double& sign_acc) {
  if (e == 0) return true;
  if (x == 0.0) return false;  // whole term vanishes
  log_acc += e * std::log(std::abs(x));
  if (x < 0.0 && e % 2 == 1) sign_acc = -sign_acc;
  return true;
}

// log |S_K|^2 for the Wigner kernel recurrence K S_K = B S_{K-1} + 2A S_{K-2}
// with S_0 = 1, S_1 = B; mantissa/exponent scaling keeps it finite for any
// phase-space point.
std::vector<double> wigner_kernel_log_sq(int n, std::complex<double> B, double A) {
  std::vector<double> out(size_t(n) + 1, kNegInf);
  out[0] = 0.0;
  std::complex<double> mpp(1.0, 0.0);
  double epp = 0.0;
  std::complex<double> mp(0.0, 0.0);
  double ep = kNegInf;
  double ab = std::abs(B);
  if (ab > 0.0) {
    mp = B / ab;
    ep = std::log(ab);
  }
  if (n >= 1) out[1] = 2.0 * ep;
  for (int K = 2; K <= n; ++K) {
    double e = std::max(ep, epp);
    std::complex<double> m(0.0, 0.0);
    if (e != kNegInf) {
      std::complex<double> t1 =
          (ep == kNegInf) ? std::complex<double>(0.0) : B * mp * std::exp(ep - e);
      std::complex<double> t2 =
          (epp == kNegInf) ? std::complex<double>(0.0) : 2.0 * A * mpp * std::exp(epp - e);
      m = (t1 + t2) / double(K);
    }
    double a = std::abs(m);
    mpp = mp;
    epp = ep;
    if (a == 0.0) {
      mp = {0.0, 0.0};
      ep = kNegInf;
    } else {
      mp = m / a;
      ep = e + std::log(a);
    }
    out[K] = 2.0 * ep;
  }
  return out;
}

// <0|S'(r) a^K a''^L S(r)|0> summed over contractions, in log form.
// Nonzero only for K + L even.
SignedLog squeezed_moment_log(double r, int K, int L) {
  if ((K + L) % 2 != 0) return {};
  const double sh = std::sinh(r), ch = std::cosh(r);
  const double half_s2 = 0.5 * sh * ch;  // sinh(2r)/4 * 2 ... = sh*ch/2
  const double c2 = ch * ch;
  const double lfK = log_factorial(K), lfL = log_factorial(L);
  std::vector<SignedLog> terms;
  for (int u = K % 2; u <= std::min(K, L); u += 2) {
    int i = (K - u) / 2, j = (L - u) / 2;
    double lg = lfK + lfL - log_factorial(i) - log_factorial(j) - log_factorial(u);
    double sign = 1.0;
    if (!log_pow(half_s2, i + j, lg, sign)) continue;
    if (!log_pow(c2, u, lg, sign)) continue;
    terms.push_back({lg, sign});
  }
  return signed_logsum(terms);
}

// log-form overlap <m| S'(varsigma) (a')^n S(r) |0>
SignedLog lambda_log(double r, double varsigma, int m, int n) {
  if (m < 0 || n < 0) throw DomainError("lambda_overlap: negative index");
  if (m > kDegreeCap || n > kDegreeCap)
    throw DegreeOverflowError("lambda_overlap: index exceeds cap");
  if ((m + n) % 2 != 0) return {};
  const double nu = varsigma - r;
  const double chr = std::cosh(r), chn = std::cosh(nu);
  const double A = 0.5 * chr * chr * (std::tanh(r) + std::tanh(nu));
  const double B = -0.5 * std::tanh(nu);
  const double C = chr / chn;
  std::vector<SignedLog> terms;
  for (int u = n % 2; u <= std::min(m, n); u += 2) {
    int i = (n - u) / 2, j = (m - u) / 2;
    double lg = -log_factorial(i) - log_factorial(j) - log_factorial(u);
    double sign = 1.0;
    if (!log_pow(A, i, lg, sign)) continue;
    if (!log_pow(B, j, lg, sign)) continue;
    if (!log_pow(C, u, lg, sign)) continue;
    terms.push_back({lg, sign});
  }
  SignedLog s = signed_logsum(terms);
  if (s.sign == 0.0) return {};
  s.log_abs += log_factorial(n) + 0.5 * log_factorial(m) - 0.5 * std::log(chn);
  return s;
}

bool needs_oracle(double r) { return std::abs(r) < kRMin; }

double wigner_closed(const EsvsParams& p, double q, double pp) {
  const double r = p.r;
  const int n = p.n;
  const double ch = std::cosh(r);
  const double emr = std::exp(-r), epr = std::exp(r);
  const double z2 = 0.5 * (q * q * emr * emr + pp * pp * epr * epr);
  const std::complex<double> B(std::sqrt(2.0) * q * emr * ch, std::sqrt(2.0) * pp * epr * ch);
  const double A = 0.5 * std::sinh(r) * ch;
  const double logC = esvs_log_norm(r, n);
  const double lfn2 = 2.0 * log_factorial(n);
  const double lc2 = 2.0 * std::log(ch);
  std::vector<double> ls2 = wigner_kernel_log_sq(n, B, A);
  std::vector<SignedLog> terms;
  for (int u = 0; u <= n; ++u) {
    if (ls2[n - u] == kNegInf) continue;
    double lg = lfn2 - log_factorial(u) + u * lc2 - logC - 2.0 * z2 + ls2[n - u];
    terms.push_back({lg, (u % 2 == 0) ? 1.0 : -1.0});
  }
  SignedLog s = signed_logsum(terms);
  if (s.sign == 0.0) return 0.0;
  return s.sign * std::exp(s.log_abs) / M_PI;
}

// Fock dim for oracle Wigner calls: displacement spreads the state upward,
// so pad the squeeze heuristic by the displacement reach before bucketing.
int wigner_oracle_dim(double r, int n, double q, double p) {
  double aabs = std::sqrt(0.5 * (q * q + p * p));
  double base = std::max(64.0, 4.0 * n + std::ceil(10.0 * std::exp(2.0 * std::abs(r))));
  int padded = int(std::ceil(2.0 * (base + 8.0 * aabs * (aabs + std::sqrt(base)))));
  return std::max(oracle::default_dim(r, n), oracle::bucket_dim(padded));
}

struct SecondMoments {
  double m = 0.0;  // <a^2> (= <a'^2>, real)
  double n = 0.0;  // <a'a>
};

SecondMoments second_moments(const EsvsParams& p) {
  SecondMoments sm;
  if (needs_oracle(p.r)) {
    FockVector v = oracle::esvs_vector(p);
    sm.m = oracle::moments(v, 2, 0).real();
    sm.n = oracle::moments(v, 1, 1).real() - 1.0;  // <a'a> = <a a'> - 1
    return sm;
  }
  const double logC = esvs_log_norm(p.r, p.n);
  SignedLog t = squeezed_moment_log(p.r, p.n + 2, p.n);
  sm.m = (t.sign == 0.0) ? 0.0 : t.sign * std::exp(t.log_abs - logC);
  sm.n = std::expm1(esvs_log_norm(p.r, p.n + 1) - logC);
  return sm;
}

QuadratureReport quadrature_from(const SecondMoments& sm) {
  QuadratureReport rep;
  rep.m_val = sm.m;
  rep.n_val = sm.n;
  rep.var_x = sm.m + sm.n + 0.5;
  rep.var_y = -sm.m + sm.n + 0.5;
  if (rep.var_x <= 0.0 || rep.var_y <= 0.0)
    throw InternalInconsistencyError("quadrature: nonpositive variance");
  rep.product = std::sqrt(rep.var_x) * std::sqrt(rep.var_y);
  if (rep.product < 0.5 - 1e-9)
    throw InternalInconsistencyError("quadrature: uncertainty product below 1/2");
  rep.snr_x = std::log10(2.0 * rep.var_x);
  rep.snr_y = std::log10(2.0 * rep.var_y);
  rep.snr_xy = 0.5 * (std::log10(2.0 * rep.var_x) + std::log10(2.0 * rep.var_y));
  return rep;
}

GaussianRefParams gaussian_ref_from(const SecondMoments& sm) {
  const double a = 2.0 * (sm.n - sm.m) + 1.0;  // 2 var_y
  const double b = 2.0 * (sm.n + sm.m) + 1.0;  // 2 var_x
  if (a <= 0.0 || b <= 0.0 || a * b < 1.0 - 1e-9)
    throw InternalInconsistencyError("gaussian_ref: moments violate the uncertainty bound");
  GaussianRefParams gp;
  gp.varsigma = 0.25 * std::log(b / a);
  double nbar = 0.5 * (std::sqrt(a) * std::sqrt(b) - 1.0);
  if (nbar < 0.0) {
    if (nbar < -1e-12)
      throw InternalInconsistencyError("gaussian_ref: negative mean photon number");
    nbar = 0.0;
  }
  gp.nbar = nbar;
  return gp;
}

}  // namespace

double wigner(const EsvsParams& p, const PhasePoint& pt) {
  esvs_log_norm(p.r, p.n);  // validates n range early
  if (needs_oracle(p.r)) {
    FockVector v = oracle::esvs_vector(p, wigner_oracle_dim(p.r, p.n, pt.q, pt.p));
    return oracle::wigner(v, pt.q, pt.p);
  }
  return wigner_closed(p, pt.q, pt.p);
}

PhaseGrid wigner_grid(const EsvsParams& p, std::pair<double, double> q_range,
                      std::pair<double, double> p_range, int steps, int threads) {
  if (steps < 1) throw DomainError("wigner_grid: steps must be >= 1");
  if (q_range.second < q_range.first || p_range.second < p_range.first)
    throw DomainError("wigner_grid: empty range");
  esvs_log_norm(p.r, p.n);
  PhaseGrid g;
  g.steps_q = g.steps_p = steps;
  g.q_lo = q_range.first;
  g.q_hi = q_range.second;
  g.p_lo = p_range.first;
  g.p_hi = p_range.second;
  g.values.assign(size_t(steps) * steps, 0.0);

  int nthreads = threads;
  if (nthreads <= 0) nthreads = int(std::thread::hardware_concurrency());
  nthreads = std::clamp(nthreads, 1, 256);
  nthreads = std::min(nthreads, steps);

  const bool fallback = needs_oracle(p.r);
  auto run_rows = [&](int first_row) {
    for (int iq = first_row; iq < steps; iq += nthreads) {
      const double q = g.q_at(iq);
      for (int ip = 0; ip < steps; ++ip) {
        const double pp = g.p_at(ip);
        double w;
        if (fallback) {
          FockVector v = oracle::esvs_vector(p, wigner_oracle_dim(p.r, p.n, q, pp));
          w = oracle::wigner(v, q, pp);
        } else {
          w = wigner_closed(p, q, pp);
        }
        g.values[size_t(iq) * steps + ip] = w;
      }
    }
  };
  if (nthreads == 1) {
    run_rows(0);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(nthreads);
    for (int t = 0; t < nthreads; ++t) pool.emplace_back(run_rows, t);
    for (auto& th : pool) th.join();
  }
  return g;
}

double pnd(const EsvsParams& p, int m) {
  if (m < 0) throw DomainError("pnd: negative m");
  const double logC = esvs_log_norm(p.r, p.n);
  if (needs_oracle(p.r)) return oracle::pnd(oracle::esvs_vector(p), m);
  if (m < p.n || (m - p.n) % 2 != 0) return 0.0;
  const int j = (m - p.n) / 2;
  const double t = std::abs(std::tanh(p.r));  // nonzero: |r| >= kRMin here
  double lg = log_factorial(m) - 2.0 * log_factorial(j) +
              (j > 0 ? 2.0 * j * std::log(0.5 * t) : 0.0) -
              std::log(std::cosh(p.r)) - logC;
  return std::exp(lg);
}

std::complex<double> moment(const EsvsParams& p, int k, int l) {
  if (k < 0 || l < 0) throw DomainError("moment: negative order");
  if (p.n + std::max(k, l) > kDegreeCap)
    throw DegreeOverflowError("moment: order exceeds cap");
  if ((k + l) % 2 != 0) return {0.0, 0.0};
  if (needs_oracle(p.r)) return oracle::moments(oracle::esvs_vector(p), k, l);
  const double logC = esvs_log_norm(p.r, p.n);
  SignedLog t = squeezed_moment_log(p.r, p.n + k, p.n + l);
  if (t.sign == 0.0) return {0.0, 0.0};
  double v = t.sign * std::exp(t.log_abs - logC);
  if (!std::isfinite(v)) throw MagnitudeOverflowError("moment: value left double range");
  return {v, 0.0};
}

double mandel_q(const EsvsParams& p) {
  if (needs_oracle(p.r)) return oracle::mandel_q(oracle::esvs_vector(p));
  const double lc0 = esvs_log_norm(p.r, p.n);
  const double d1 = esvs_log_norm(p.r, p.n + 1) - lc0;
  const double d2 = esvs_log_norm(p.r, p.n + 2) - lc0;
  const double mean = std::expm1(d1);
  if (mean <= 1e-12) throw ZeroMeanPhotonError("mandel_q: mean photon number is zero");
  const double q = 2.0 * std::expm1(d2 - std::log(2.0)) / mean - std::exp(d1) - 3.0;
#ifndef NDEBUG
  {
    // same quantity from antinormal moments x1 = <a a'>, x2 = <a^2 a'^2>
    const double x1 = moment(p, 1, 1).real();
    const double x2 = moment(p, 2, 2).real();
    const double q_alt = (x2 - x1 * x1 - 2.0 * x1 + 1.0) / (x1 - 1.0);
    if (std::abs(q - q_alt) > 1e-8 * std::max(1.0, std::abs(q)))
      throw InternalInconsistencyError("mandel_q: ratio and moment forms disagree");
  }
#endif
  return q;
}

QuadratureReport quadrature(const EsvsParams& p) {
  return quadrature_from(second_moments(p));
}

GaussianRefParams gaussian_ref(const EsvsParams& p) {
  return gaussian_ref_from(second_moments(p));
}

std::complex<double> lambda_overlap(double r, double varsigma, int m, int n) {
  if (needs_oracle(r)) return oracle::lambda_overlap(r, varsigma, m, n);
  SignedLog s = lambda_log(r, varsigma, m, n);
  if (s.sign == 0.0) return {0.0, 0.0};
  double v = s.value();  // throws MagnitudeOverflowError when out of range
  return {v, 0.0};
}

NonGaussReport non_gaussianity(const EsvsParams& p, double tol, int max_terms) {
  if (tol <= 0.0) throw DomainError("non_gaussianity: tol must be positive");
  if (max_terms < 1) throw DomainError("non_gaussianity: max_terms must be >= 1");
  NonGaussReport rep;
  if (needs_oracle(p.r)) {
    FockVector v = oracle::esvs_vector(p);
    SecondMoments sm;
    sm.m = oracle::moments(v, 2, 0).real();
    sm.n = oracle::moments(v, 1, 1).real() - 1.0;  // <a'a> = <a a'> - 1
    rep.ref = gaussian_ref_from(sm);
    // the reference thermal tail decays like (nbar/(nbar+1))^dim, which can
    // need more room than the state itself when several photons were added
    const double x = rep.ref.nbar / (1.0 + rep.ref.nbar);
    if (x > 0.0) {
      const int need = int(std::ceil(std::log(1e-12) / std::log(x))) + 8;
      if (need > v.dim) v = oracle::esvs_vector(p, oracle::bucket_dim(need));
    }
    oracle::HsQuantities hq = oracle::hs_quantities_direct(v, rep.ref);
    rep.kappa = hq.kappa;
    rep.mu_tau = hq.mu_tau;
    rep.delta = hq.delta;
    rep.terms_used = 0;
    rep.tail_bound = 0.0;
    return rep;
  }
  rep.ref = gaussian_ref(p);
  const double nbar = rep.ref.nbar;
  const double vs = rep.ref.varsigma;
  const double logC = esvs_log_norm(p.r, p.n);
  rep.mu_tau = 1.0 / (1.0 + 2.0 * nbar);
  const double gauss_part = 0.5 + 0.5 * rep.mu_tau;

  if (nbar == 0.0) {
    SignedLog l0 = lambda_log(p.r, vs, 0, p.n);
    double kappa = (l0.sign == 0.0) ? 0.0 : std::exp(2.0 * l0.log_abs - logC);
    rep.kappa = kappa;
    rep.delta = gauss_part - kappa;
    rep.terms_used = 1;
    rep.tail_bound = 0.0;
    return rep;
  }

  const double x = nbar / (1.0 + nbar);
  const double lx = std::log(x);
  const double lbase = -std::log(1.0 + nbar);
  double kappa = 0.0;
  int terms = 0;
  double bound = std::numeric_limits<double>::infinity();
  // envelope over the last few |Lambda|^2 / C values for the geometric tail
  constexpr int kRecent = 4;
  double recent[kRecent] = {kNegInf, kNegInf, kNegInf, kNegInf};
  int ri = 0;
  bool converged = false;
  for (int m = p.n % 2; terms < max_terms && m <= kDegreeCap; m += 2) {
    SignedLog lm = lambda_log(p.r, vs, m, p.n);
    ++terms;
    double lsq = (lm.sign == 0.0) ? kNegInf : 2.0 * lm.log_abs - logC;
    if (lsq != kNegInf) kappa += std::exp(lsq + m * lx + lbase);
    recent[ri] = lsq;
    ri = (ri + 1) % kRecent;
    double env = kNegInf;
    for (double v : recent) env = std::max(env, v);
    if (env == kNegInf) {
      // Every overlap above m = n carries a tanh(varsigma - r) power, so when
      // the matched frame coincides with the state frame the series ends at
      // m = n; a full window of exact zeros past that point means a zero tail.
      if (m >= p.n + 2 * (kRecent - 1)) {
        bound = 0.0;
        converged = true;
        break;
      }
      continue;
    }
    bound = std::exp(double(m + 1) * lx + env);
    if (bound < tol) {
      converged = true;
      break;
    }
  }
  rep.kappa = kappa;
  rep.delta = gauss_part - kappa;
  rep.terms_used = terms;
  rep.tail_bound = bound;
  if (!converged)
    throw NonConvergenceError("non_gaussianity: tail bound did not reach tol within max_terms",
                              rep.delta, bound);
  return rep;
}

double fidelity(const EsvsParams& e, const PssvsParams& s) {
  if (e.n < 0 || s.m < 0) throw DomainError("fidelity: negative photon order");
  if ((e.n + s.m) % 2 != 0) return 0.0;
  if (needs_oracle(e.r) || needs_oracle(s.lambda)) {
    const int d = std::max(oracle::default_dim(e.r, e.n), oracle::default_dim(s.lambda, s.m));
    return oracle::state_fidelity(oracle::esvs_vector(e, d), oracle::pssvs_vector(s, d));
  }
  const double log_ce = esvs_log_norm(e.r, e.n);
  const double log_cp = pssvs_log_norm(s.lambda, s.m);
  SignedLog gamma = lambda_log(e.r, s.lambda, 0, e.n + s.m);
  if (gamma.sign == 0.0) return 0.0;
  double f = std::exp(2.0 * gamma.log_abs - log_ce - log_cp);
  if (f > 1.0 + 1e-6)
    throw InternalInconsistencyError("fidelity: value exceeds 1 beyond round-off");
  return std::clamp(f, 0.0, 1.0 + 1e-9);
}

}  // namespace esvs
