#pragma once

#include <cmath>
#include <complex>
#include <limits>

#include "esvs/errors.hpp"

namespace esvs {

// Hard cap on polynomial degrees handled by this library. Above this the
// closed forms are outside their validated range and callers get a
// DegreeOverflowError instead of silently degraded results.
inline constexpr int kDegreeCap = 512;

// A real number stored as (log|x|, sign). Survives magnitudes far beyond
// double range; sign is -1, 0 or +1.
struct SignedLog {
  double log_abs = -std::numeric_limits<double>::infinity();
  double sign = 0.0;

  static SignedLog from_value(double v) {
    if (v == 0.0) return {};
    return {std::log(std::abs(v)), v > 0 ? 1.0 : -1.0};
  }

  // Materialize as a plain double. Throws if the magnitude does not fit.
  double value() const {
    if (sign == 0.0) return 0.0;
    double v = std::exp(log_abs);
    if (std::isinf(v)) throw MagnitudeOverflowError("SignedLog::value overflows double");
    return sign * v;
  }

  SignedLog operator*(const SignedLog& o) const {
    if (sign == 0.0 || o.sign == 0.0) return {};
    return {log_abs + o.log_abs, sign * o.sign};
  }
};

// Physicists' Hermite polynomial H_k at a complex point.
// Throws DegreeOverflowError above kDegreeCap and MagnitudeOverflowError if
// the recurrence leaves double range.
std::complex<double> hermite(int k, std::complex<double> x);

// |H_k(0)|-style central value: H_k(0) is 0 for odd k and
// (-1)^(k/2) k!/(k/2)! for even k. Returned in log form because it
// overflows double near k = 170.
SignedLog hermite_zero(int k);

// Legendre polynomial P_k at a complex point (Bonnet recurrence).
std::complex<double> legendre(int k, std::complex<double> z);

// log P_k(z) for real z >= 1 where P_k is positive but may overflow double.
// Uses a mantissa/exponent-scaled Bonnet recurrence.
double legendre_log(int k, double z);

// log(k!) via lgamma.
double log_factorial(int k);

// log of the binomial coefficient C(n, k).
double log_binomial(int n, int k);

}  // namespace esvs
