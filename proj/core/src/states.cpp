#include "esvs/states.hpp"

#include <cmath>
#include <complex>

namespace esvs {

namespace {

void check_order(int n, const char* what) {
  if (n < 0) throw DomainError(std::string(what) + ": negative photon order");
  if (n > kDegreeCap) throw DegreeOverflowError(std::string(what) + ": order exceeds cap");
}

// log|P_m(z)| and unit phase for complex z, scaled Bonnet recurrence.
void legendre_log_complex(int m, std::complex<double> z, double& log_abs,
                          std::complex<double>& phase) {
  std::complex<double> pm1 = 1.0, p = z;
  double scale = 0.0;
  if (m == 0) { p = 1.0; }
  for (int j = 1; j < m; ++j) {
    std::complex<double> next = ((2.0 * j + 1.0) * z * p - double(j) * pm1) / double(j + 1);
    pm1 = p;
    p = next;
    double a = std::abs(p);
    if (a > 1e100 || (a > 0.0 && a < 1e-100)) {
      double s = std::log(a);
      scale += s;
      double f = std::exp(-s);
      p *= f;
      pm1 *= f;
    }
  }
  double a = std::abs(p);
  if (a == 0.0) throw DomainError("legendre_log_complex: exact zero");
  log_abs = scale + std::log(a);
  phase = p / a;
}

}  // namespace

double esvs_log_norm(double r, int n) {
  check_order(n, "esvs_norm");
  if (n == 0) return 0.0;
  double c = std::cosh(r);
  return log_factorial(n) + n * std::log(c) + legendre_log(n, c);
}

double esvs_norm(double r, int n) {
  double v = std::exp(esvs_log_norm(r, n));
  if (std::isinf(v)) throw MagnitudeOverflowError("esvs_norm: use esvs_log_norm instead");
  return v;
}

double pssvs_log_norm(double lambda, int m) {
  check_order(m, "pssvs_norm");
  if (m == 0) return 0.0;
  double s = std::sinh(lambda);
  if (s == 0.0) return -std::numeric_limits<double>::infinity();
  // m! (i sinh)^m P_m(-i sinh): the phases cancel to a positive real.
  double log_p;
  std::complex<double> phase;
  legendre_log_complex(m, std::complex<double>(0.0, -s), log_p, phase);
  std::complex<double> unit(0.0, s > 0 ? 1.0 : -1.0);
  std::complex<double> total = phase;
  for (int j = 0; j < m; ++j) total *= unit;
  if (std::abs(total.imag()) > 1e-10 || total.real() < 0.0)
    throw InternalInconsistencyError("pssvs_norm: phase failed to collapse to positive real");
  return log_factorial(m) + m * std::log(std::abs(s)) + log_p;
}

double pssvs_norm(double lambda, int m) {
  double lg = pssvs_log_norm(lambda, m);
  if (std::isinf(lg) && lg < 0) return 0.0;
  double v = std::exp(lg);
  if (std::isinf(v)) throw MagnitudeOverflowError("pssvs_norm: use pssvs_log_norm instead");
  return v;
}

FockVector squeezed_vacuum_coeffs(double r, int dim) {
  if (dim < 2) throw DomainError("squeezed_vacuum_coeffs: dim must be >= 2");
  FockVector v;
  v.dim = dim;
  v.amps = Eigen::VectorXcd::Zero(dim);
  double t = std::tanh(r);
  double log_sech = -0.5 * std::log(std::cosh(r));
  double kept = 0.0;
  for (int k = 0; 2 * k < dim; ++k) {
    double la = 0.5 * log_factorial(2 * k) - log_factorial(k) - k * std::log(2.0) +
                (k > 0 ? k * std::log(std::abs(t)) : 0.0) + log_sech;
    double amp = std::exp(la);
    if (t < 0.0 && k % 2 == 1) amp = -amp;
    if (t == 0.0 && k > 0) amp = 0.0;
    v.amps[2 * k] = amp;
    kept += amp * amp;
  }
  if (1.0 - kept > 1e-10)
    throw InsufficientDimensionError("squeezed_vacuum_coeffs: truncation drops > 1e-10 of norm");
  v.amps /= std::sqrt(kept);
  return v;
}

}  // namespace esvs
