#include "esvs/specfun.hpp"

#include <cmath>

namespace esvs {

namespace {

void check_degree(int k, const char* what) {
  if (k < 0) throw DomainError(std::string(what) + ": negative degree");
  if (k > kDegreeCap) throw DegreeOverflowError(std::string(what) + ": degree exceeds cap");
}

}  // namespace

std::complex<double> hermite(int k, std::complex<double> x) {
  check_degree(k, "hermite");
  if (k == 0) return {1.0, 0.0};
  std::complex<double> hm1 = 1.0;       // H_0
  std::complex<double> h = 2.0 * x;     // H_1
  for (int j = 1; j < k; ++j) {
    std::complex<double> next = 2.0 * x * h - 2.0 * double(j) * hm1;
    hm1 = h;
    h = next;
  }
  if (!std::isfinite(h.real()) || !std::isfinite(h.imag()))
    throw MagnitudeOverflowError("hermite: value left double range");
  return h;
}

SignedLog hermite_zero(int k) {
  check_degree(k, "hermite_zero");
  if (k % 2 != 0) return {};  // odd-degree Hermite vanishes at 0
  int half = k / 2;
  double sign = (half % 2 == 0) ? 1.0 : -1.0;
  return {log_factorial(k) - log_factorial(half), sign};
}

std::complex<double> legendre(int k, std::complex<double> z) {
  check_degree(k, "legendre");
  if (k == 0) return {1.0, 0.0};
  std::complex<double> pm1 = 1.0;  // P_0
  std::complex<double> p = z;      // P_1
  for (int j = 1; j < k; ++j) {
    std::complex<double> next = ((2.0 * j + 1.0) * z * p - double(j) * pm1) / double(j + 1);
    pm1 = p;
    p = next;
  }
  if (!std::isfinite(p.real()) || !std::isfinite(p.imag()))
    throw MagnitudeOverflowError("legendre: value left double range");
  return p;
}

double legendre_log(int k, double z) {
  check_degree(k, "legendre_log");
  if (z < 1.0) throw DomainError("legendre_log: requires z >= 1");
  if (k == 0) return 0.0;
  // Scaled Bonnet recurrence: carry mantissas near unity plus a shared
  // log-scale so P_k(z) for large k, z never overflows.
  double mm1 = 1.0, m = z;
  double scale = 0.0;
  for (int j = 1; j < k; ++j) {
    double next = ((2.0 * j + 1.0) * z * m - double(j) * mm1) / double(j + 1);
    mm1 = m;
    m = next;
    double a = std::abs(m);
    if (a > 1e100 || (a > 0.0 && a < 1e-100)) {
      double s = std::log(a);
      scale += s;
      double f = std::exp(-s);
      m *= f;
      mm1 *= f;
    }
  }
  if (m <= 0.0) throw DomainError("legendre_log: nonpositive value (z >= 1 expected)");
  return scale + std::log(m);
}

double log_factorial(int k) {
  if (k < 0) throw DomainError("log_factorial: negative argument");
  return std::lgamma(double(k) + 1.0);
}

double log_binomial(int n, int k) {
  if (k < 0 || n < 0 || k > n) throw DomainError("log_binomial: invalid arguments");
  return log_factorial(n) - log_factorial(k) - log_factorial(n - k);
}

}  // namespace esvs
