#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <complex>

#include <esvs/specfun.hpp>

using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;
using namespace esvs;

TEST_CASE("hermite matches low-degree closed forms") {
  CHECK(hermite(0, 0.7).real() == 1.0);
  CHECK(hermite(1, 0.7).real() == Catch::Approx(1.4));
  CHECK_THAT(hermite(2, 1.0).real(), WithinAbs(2.0, 1e-14));          // 4z^2 - 2
  CHECK_THAT(hermite(4, 0.0).real(), WithinAbs(12.0, 1e-14));         // H_4(0)
  const std::complex<double> h3i = hermite(3, {0.0, 1.0});            // 8z^3 - 12z at z = i
  CHECK_THAT(h3i.real(), WithinAbs(0.0, 1e-14));
  CHECK_THAT(h3i.imag(), WithinAbs(-20.0, 1e-13));
}

TEST_CASE("hermite validates the degree") {
  CHECK_THROWS_AS(hermite(-1, 0.0), DomainError);
  CHECK_THROWS_AS(hermite(kDegreeCap + 1, 0.5), DegreeOverflowError);
}

TEST_CASE("hermite_zero encodes H_k(0) in log form") {
  CHECK(hermite_zero(5).sign == 0.0);
  CHECK_THAT(hermite_zero(4).value(), WithinAbs(12.0, 1e-12));
  CHECK_THAT(hermite_zero(6).value(), WithinAbs(-120.0, 1e-11));
  // k = 200 overflows double as a value but not as a log
  CHECK(std::isfinite(hermite_zero(200).log_abs));
  CHECK(hermite_zero(200).sign == 1.0);  // (-1)^100
}

TEST_CASE("legendre matches low-degree closed forms") {
  CHECK_THAT(legendre(2, 2.0).real(), WithinAbs(5.5, 1e-13));   // (3z^2-1)/2
  CHECK_THAT(legendre(3, 2.0).real(), WithinAbs(17.0, 1e-12));  // (5z^3-3z)/2
  CHECK(legendre(0, 0.3).real() == 1.0);
}

TEST_CASE("legendre_log agrees with the direct recurrence and scales") {
  const double z = std::cosh(0.7);
  CHECK_THAT(legendre_log(5, z), WithinRel(std::log(legendre(5, z).real()), 1e-12));
  // degrees far beyond double overflow stay finite and monotone for z > 1
  const double big = std::cosh(1.0);
  CHECK(std::isfinite(legendre_log(400, big)));
  CHECK(legendre_log(401, big) > legendre_log(400, big));
}

TEST_CASE("log_factorial and log_binomial") {
  CHECK(log_factorial(0) == 0.0);
  CHECK_THAT(log_factorial(5), WithinRel(std::log(120.0), 1e-14));
  CHECK_THAT(log_binomial(10, 3), WithinRel(std::log(120.0), 1e-13));
  CHECK_THAT(log_binomial(5, 0), WithinAbs(0.0, 1e-14));
}

TEST_CASE("SignedLog round-trips and multiplies") {
  CHECK(SignedLog::from_value(0.0).sign == 0.0);
  CHECK(SignedLog::from_value(0.0).value() == 0.0);
  CHECK_THAT(SignedLog::from_value(-3.25).value(), WithinRel(-3.25, 1e-15));
  const SignedLog prod = SignedLog::from_value(-2.0) * SignedLog::from_value(-4.0);
  CHECK_THAT(prod.value(), WithinRel(8.0, 1e-14));
  CHECK((SignedLog::from_value(5.0) * SignedLog{}).sign == 0.0);
}

TEST_CASE("SignedLog::value refuses magnitudes beyond double range") {
  const SignedLog huge{800.0, 1.0};
  CHECK_THROWS_AS(huge.value(), MagnitudeOverflowError);
}
