#pragma once

#include "esvs/fock.hpp"
#include "esvs/specfun.hpp"

namespace esvs {

// Below this squeezing magnitude the closed forms lose relative accuracy to
// cancellation; metric entry points transparently switch to the numerical
// Fock-space route instead.
inline constexpr double kRMin = 1e-6;

// Photon-added squeezed vacuum: n creation operators applied to a vacuum
// squeezed with strength r by exp[(r/2)(a'^2 - a^2)] (a' = creation op).
struct EsvsParams {
  double r = 0.0;
  int n = 0;
};

// Photon-subtracted squeezed vacuum: m annihilation operators applied to the
// same squeezed vacuum with strength lambda.
struct PssvsParams {
  double lambda = 0.0;
  int m = 0;
};

// Squeezed thermal reference state: squeezing varsigma, mean photons nbar.
struct GaussianRefParams {
  double varsigma = 0.0;
  double nbar = 0.0;  // >= 0 (tiny negative round-off is clamped upstream)
};

// Normalization constant <0|S'(r) a^n a'^n S(r)|0> = n! cosh^n(r) P_n(cosh r).
// Grows roughly like (2n)! so the log twin is the workhorse.
double esvs_norm(double r, int n);
double esvs_log_norm(double r, int n);

// Normalization of the photon-subtracted state,
// m! (i sinh lambda)^m P_m(i cosh... ) collapses to a real positive value;
// an internal residue check enforces that.
double pssvs_norm(double lambda, int m);
double pssvs_log_norm(double lambda, int m);

// Fock amplitudes of the squeezed vacuum itself, truncated at dim.
// Amplitudes are real: c_{2k} = tanh^k(r) sqrt((2k)!)/(2^k k!) / sqrt(cosh r).
// Throws InsufficientDimensionError if the truncation drops more than 1e-10
// of the norm; the returned vector is renormalized over the kept entries.
FockVector squeezed_vacuum_coeffs(double r, int dim);

}  // namespace esvs
