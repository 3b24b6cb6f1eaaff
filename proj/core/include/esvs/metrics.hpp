#pragma once

#include <complex>
#include <utility>
#include <vector>

#include "esvs/states.hpp"

namespace esvs {

struct PhasePoint {
  double q = 0.0;
  double p = 0.0;
};

// Row-major samples with q as the outer (slow) index.
struct PhaseGrid {
  int steps_q = 0;
  int steps_p = 0;
  double q_lo = 0.0, q_hi = 0.0;
  double p_lo = 0.0, p_hi = 0.0;
  std::vector<double> values;

  double at(int iq, int ip) const { return values[size_t(iq) * steps_p + ip]; }
  double q_at(int iq) const {
    return steps_q > 1 ? q_lo + (q_hi - q_lo) * iq / double(steps_q - 1) : q_lo;
  }
  double p_at(int ip) const {
    return steps_p > 1 ? p_lo + (p_hi - p_lo) * ip / double(steps_p - 1) : p_lo;
  }
};

struct QuadratureReport {
  double var_x = 0.0;   // <(dX)^2>
  double var_y = 0.0;   // <(dY)^2>
  double product = 0.0; // sqrt(var_x * var_y)
  double snr_x = 0.0;   // log10 of 2 var_x
  double snr_y = 0.0;
  double snr_xy = 0.0;  // log10 of 2 product
  double m_val = 0.0;   // <a'^2> = <a^2>, real for these states
  double n_val = 0.0;   // <a'a>
};

struct NonGaussReport {
  double delta = 0.0;    // Hilbert-Schmidt distance to the matched Gaussian
  GaussianRefParams ref; // the matched squeezed thermal state
  double kappa = 0.0;    // overlap Tr[rho tau]
  double mu_tau = 0.0;   // reference purity
  int terms_used = 0;    // series terms actually evaluated (0 on oracle route)
  double tail_bound = 0.0;
};

// Wigner function of the photon-added squeezed vacuum at one point.
// Transparently falls back to the Fock-space oracle when |r| < kRMin.
double wigner(const EsvsParams& p, const PhasePoint& pt);

// Dense rectangular evaluation; `threads` <= 0 picks hardware concurrency.
PhaseGrid wigner_grid(const EsvsParams& p, std::pair<double, double> q_range,
                      std::pair<double, double> p_range, int steps, int threads = 1);

// Photon-number distribution P(m). Exactly zero below m = n and on the
// wrong parity above it.
double pnd(const EsvsParams& p, int m);

// Antinormally ordered moment <a^k a'^l>; vanishes for odd k + l.
std::complex<double> moment(const EsvsParams& p, int k, int l);

// Mandel Q parameter. Throws ZeroMeanPhotonError when the state carries no
// photons (n = 0 and |r| < kRMin).
double mandel_q(const EsvsParams& p);

QuadratureReport quadrature(const EsvsParams& p);

// Parameters of the squeezed thermal state with the same second moments.
GaussianRefParams gaussian_ref(const EsvsParams& p);

// Overlap kernel <m| S'(varsigma) (a')^n S(r) |0> in closed form.
std::complex<double> lambda_overlap(double r, double varsigma, int m, int n);

// Hilbert-Schmidt non-Gaussianity via the overlap series. Throws
// NonConvergenceError (carrying the partial value and the bound) if the
// tail bound fails to drop below tol within max_terms terms.
NonGaussReport non_gaussianity(const EsvsParams& p, double tol = 1e-12, int max_terms = 4096);

// |<ESVS|PSSVS>|^2; zero by parity when n + m is odd.
double fidelity(const EsvsParams& e, const PssvsParams& s);

}  // namespace esvs
