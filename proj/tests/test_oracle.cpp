#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <complex>
#include <numbers>

#include <esvs/oracle.hpp>

using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;
using namespace esvs;
namespace orc = esvs::oracle;

namespace {
FockVector vacuum(int dim) {
  FockVector v;
  v.dim = dim;
  v.amps = Eigen::VectorXcd::Zero(dim);
  v.amps[0] = 1.0;
  return v;
}
}  // namespace

TEST_CASE("dim buckets") {
  CHECK(orc::bucket_dim(1) == 64);
  CHECK(orc::bucket_dim(64) == 64);
  CHECK(orc::bucket_dim(65) == 96);
  CHECK(orc::bucket_dim(130) == 192);
  CHECK(orc::bucket_dim(1537) == 2048);
  CHECK(orc::bucket_dim(2049) == 2560);
}

TEST_CASE("default_dim grows with squeezing and ladder count") {
  CHECK(orc::default_dim(0.2, 0) == 64);
  CHECK(orc::default_dim(-1.0, 3) == orc::default_dim(1.0, 3));
  CHECK(orc::default_dim(1.0, 3) >= orc::default_dim(0.5, 3));
  CHECK(orc::default_dim(1.5, 5) >= orc::default_dim(1.5, 0));
}

TEST_CASE("squeeze column reproduces the two-photon amplitude") {
  const FockVector c = orc::squeeze_column(0.5, 0, 64);
  CHECK_THAT(c.amps[2].real(), WithinRel(0.3077191764583704, 1e-12));
  CHECK_THAT(c.amps.squaredNorm(), WithinAbs(1.0, 1e-12));
  CHECK(std::abs(c.amps[1]) < 1e-14);
}

TEST_CASE("dense squeeze matrix agrees with the banded column") {
  const FockOperator s = orc::squeeze_matrix(0.5, 64);
  const FockVector c = orc::squeeze_column(0.5, 0, 64);
  for (int k = 0; k < 8; ++k)
    CHECK_THAT(std::abs(s.entries(k, 0) - c.amps[k]), WithinAbs(0.0, 1e-12));
}

TEST_CASE("displace produces coherent amplitudes") {
  const std::complex<double> alpha{0.6, 0.3};
  const FockVector d = orc::displace(vacuum(64), alpha);
  const double a2 = std::norm(alpha);
  CHECK_THAT(std::abs(d.amps[0]), WithinRel(std::exp(-0.5 * a2), 1e-12));
  const std::complex<double> want3 =
      std::exp(-0.5 * a2) * alpha * alpha * alpha / std::sqrt(6.0);
  CHECK_THAT(std::abs(d.amps[3] - want3), WithinAbs(0.0, 1e-12));
}

TEST_CASE("displace rejects leaking off the truncation") {
  CHECK_THROWS_AS(orc::displace(vacuum(64), {10.0, 0.0}), InsufficientDimensionError);
}

TEST_CASE("esvs_vector is normalized and reproduces photon statistics") {
  const FockVector v = orc::esvs_vector({0.5, 2});
  CHECK_THAT(v.amps.squaredNorm(), WithinAbs(1.0, 1e-12));
  CHECK_THAT(orc::pnd(v, 4), WithinRel(0.31749750557689616, 1e-11));
  CHECK(orc::pnd(v, 1) < 1e-24);  // below the added-photon floor
  CHECK_THAT(orc::mandel_q(orc::esvs_vector({1.0, 2})), WithinRel(2.5897339747807493, 1e-10));
}

TEST_CASE("esvs_vector refuses dims whose tail carries weight") {
  CHECK_THROWS_AS(orc::esvs_vector({1.5, 5}, 128), InsufficientDimensionError);
}

TEST_CASE("pssvs_vector handles the vacuum edge cases") {
  CHECK_THROWS_AS(orc::pssvs_vector({0.0, 1}, 64), DomainError);
  const FockVector v = orc::pssvs_vector({0.5, 1});
  CHECK_THAT(v.amps.squaredNorm(), WithinAbs(1.0, 1e-12));
}

TEST_CASE("moments are antinormally ordered") {
  const FockVector v = orc::esvs_vector({0.7, 2});
  CHECK_THAT(orc::moments(v, 1, 1).real(), WithinRel(6.186100451552411, 1e-11));
  CHECK_THAT(orc::moments(v, 0, 0).real(), WithinAbs(1.0, 1e-12));
  // odd ladder mismatch vanishes on a definite-parity state
  CHECK(std::abs(orc::moments(v, 1, 0)) < 1e-13);
  const FockVector w = orc::esvs_vector({-0.6, 1});
  CHECK_THAT(orc::moments(w, 2, 2).real(), WithinRel(16.97624264003344, 1e-11));
  // <a a'> - <a' a> = 1 rearranged through the number expectation
  const double mean = orc::moments(w, 1, 1).real() - 1.0;
  double direct = 0.0;
  for (int k = 0; k < w.dim; ++k) direct += k * std::norm(w.amps[k]);
  CHECK_THAT(mean, WithinRel(direct, 1e-12));
}

TEST_CASE("state_fidelity demands one common truncation") {
  const FockVector a = orc::esvs_vector({0.5, 2}, 128);
  const FockVector b = orc::esvs_vector({0.5, 2}, 192);
  CHECK_THROWS_AS(orc::state_fidelity(a, b), DomainError);
  CHECK_THAT(orc::state_fidelity(a, a), WithinAbs(1.0, 1e-12));
}

TEST_CASE("wigner reproduces parity at the origin") {
  CHECK_THAT(orc::wigner(orc::esvs_vector({0.2, 2}), 0.0, 0.0),
             WithinRel(1.0 / std::numbers::pi, 1e-11));
  CHECK_THAT(orc::wigner(orc::esvs_vector({0.2, 3}), 1.0, -0.5),
             WithinRel(0.02112747944332265, 1e-10));
}

TEST_CASE("squeezed_thermal guards its thermal tail") {
  CHECK_THROWS_AS(orc::squeezed_thermal({0.0, 5.0}, 16), InsufficientDimensionError);
}

TEST_CASE("dense and direct Hilbert-Schmidt routes agree") {
  const GaussianRefParams gp{0.5914988536156471, 1.768952505948247};
  const FockVector v = orc::esvs_vector({0.5, 2}, 256);
  const orc::HsQuantities direct = orc::hs_quantities_direct(v, gp);
  const orc::HsQuantities dense = orc::hs_quantities(v, orc::squeezed_thermal(gp, 256));
  CHECK_THAT(direct.kappa, WithinRel(0.17492021659556822, 1e-10));
  CHECK_THAT(direct.mu_tau, WithinRel(0.22036600532149023, 1e-10));
  CHECK_THAT(direct.delta, WithinRel(0.4352627860651769, 1e-10));
  CHECK_THAT(dense.kappa, WithinRel(direct.kappa, 1e-11));
  CHECK_THAT(dense.mu_tau, WithinRel(direct.mu_tau, 1e-11));
}

TEST_CASE("lambda_overlap reference values") {
  CHECK_THAT(orc::lambda_overlap(0.5, 0.9, 0, 0).real(), WithinRel(0.9617730771370943, 1e-11));
  CHECK_THAT(orc::lambda_overlap(0.8, 0.3, 4, 2).real(), WithinRel(1.54402766421875, 1e-10));
  // parity mismatch is structurally zero
  CHECK(std::abs(orc::lambda_overlap(0.8, 0.3, 3, 2)) < 1e-14);
}
