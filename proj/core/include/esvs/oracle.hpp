#pragma once

#include <complex>

#include "esvs/fock.hpp"
#include "esvs/states.hpp"

// Independent truncated-Fock-space implementations of every metric. Nothing
// here shares formulas with the closed-form layer in metrics.hpp; agreement
// between the two is the correctness argument (see the `verify` CLI command).
namespace esvs::oracle {

// Truncation heuristic sized so the squeezed tail tanh^{2 dim}, amplified by
// the ladder applications, clears the 1e-12 state tail checks; rounded up to
// a fixed bucket ladder so cached squeeze columns get reused. `n_ops` counts
// extra ladder-operator applications the caller will perform.
// The ESVS_FOCK_DIM environment variable overrides the result when set.
int default_dim(double r, int n_ops = 0);

// Smallest ladder bucket >= at_least (also subject to the env override).
int bucket_dim(int at_least);

// exp[(r/2)(a'^2 - a^2)] as a dense matrix (Pade scaling-and-squaring on the
// real generator). Checks unitarity of the top-left dim/2 block and throws
// InsufficientDimensionError when truncation has degraded it.
FockOperator squeeze_matrix(double r, int dim);

// Column `col` of the squeeze operator via scaled Taylor action of the
// banded generator; O(dim) per matvec, so large dims stay cheap.
FockVector squeeze_column(double r, int col, int dim);

// Displacement exp(alpha a' - conj(alpha) a) applied to v (tridiagonal
// generator action). Throws InsufficientDimensionError if more than 1e-8 of
// the norm leaks into the top quarter of the vector.
FockVector displace(const FockVector& v, std::complex<double> alpha);

// Normalized state vectors. dim = 0 means default_dim(r, n).
FockVector esvs_vector(const EsvsParams& p, int dim = 0);
FockVector pssvs_vector(const PssvsParams& p, int dim = 0);

// Wigner function at (q, p) via the displaced-parity expectation.
double wigner(const FockVector& v, double q, double p);

// Antinormally ordered moment <v| a^k a'^l |v>.
std::complex<double> moments(const FockVector& v, int k, int l);

// Photon-number distribution value P(m) = |<m|v>|^2.
double pnd(const FockVector& v, int m);

// Mandel Q from number moments of the vector.
double mandel_q(const FockVector& v);

// |<a|b>|^2. The two vectors must share one dim (zero-padding a smaller
// vector silently loses cross-tail weight), so mismatched dims throw.
double state_fidelity(const FockVector& a, const FockVector& b);

// Squeezed thermal state S(varsigma) rho_th(nbar) S'(varsigma), dense.
// Throws InsufficientDimensionError if the thermal tail past dim exceeds
// 1e-12.
FockOperator squeezed_thermal(const GaussianRefParams& gp, int dim);

struct HsQuantities {
  double mu_tau = 0.0;  // purity of the reference state
  double kappa = 0.0;   // overlap <v|tau|v>
  double delta = 0.0;   // Hilbert-Schmidt non-Gaussianity
};

// Hilbert-Schmidt quantities against an explicit dense reference.
HsQuantities hs_quantities(const FockVector& rho_vec, const FockOperator& tau);

// Same quantities without materializing tau: w = S(-varsigma) v, then
// kappa = sum_k nu_k |w_k|^2 with nu the thermal weights. One banded action
// per call, so parameter sweeps stay fast.
HsQuantities hs_quantities_direct(const FockVector& rho_vec, const GaussianRefParams& gp);

// Overlap kernel of the non-Gaussianity series,
// <m| S'(varsigma) (a')^n S(r) |0>, computed from squeeze columns. Real up
// to round-off, returned as complex to match the closed-form signature.
std::complex<double> lambda_overlap(double r, double varsigma, int m, int n, int dim = 0);

}  // namespace esvs::oracle
