#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include <esvs/metrics.hpp>
#include <esvs/optimize.hpp>

using Catch::Matchers::WithinAbs;
using namespace esvs;

TEST_CASE("optimal_fidelity reproduces the reference optima") {
  const OptResult a = optimal_fidelity(2, 2, 1.5);
  CHECK_THAT(a.r_star, WithinAbs(1.475802, 1e-5));
  CHECK_THAT(a.f_star, WithinAbs(0.9926126073957938, 1e-9));
  CHECK(a.evals > 0);
  CHECK_FALSE(a.boundary);

  const OptResult b = optimal_fidelity(2, 4, 1.5);
  CHECK_THAT(b.r_star, WithinAbs(1.765183, 1e-5));
  CHECK_THAT(b.f_star, WithinAbs(0.9717934068950375, 1e-9));

  const OptResult c = optimal_fidelity(2, 2, 2.5);
  CHECK_THAT(c.r_star, WithinAbs(2.496446, 1e-5));
  CHECK_THAT(c.f_star, WithinAbs(0.9998699453829616, 1e-9));
}

TEST_CASE("optimal_fidelity short-circuits odd total parity") {
  const OptResult res = optimal_fidelity(1, 2, 1.0);
  CHECK(res.f_star == 0.0);
  CHECK(res.evals == 0);
  CHECK(res.bracket.first == 0.05);
  CHECK(res.bracket.second == 3.0);
  CHECK(res.r_star == 0.5 * (0.05 + 3.0));
}

TEST_CASE("optimal_fidelity flags a maximum on the bracket edge") {
  // the true optimum sits far right of this bracket
  const OptResult res = optimal_fidelity(0, 0, 2.9, 0.05, 0.5);
  CHECK(res.boundary);
  CHECK_THAT(res.r_star, WithinAbs(0.5, 2e-2));
}

TEST_CASE("optimal_fidelity input validation") {
  CHECK_THROWS_AS(optimal_fidelity(-1, 2, 1.0), DomainError);
  CHECK_THROWS_AS(optimal_fidelity(2, -1, 1.0), DomainError);
  CHECK_THROWS_AS(optimal_fidelity(2, 2, 1.0, 1.0, 0.5), DomainError);
  CHECK_THROWS_AS(optimal_fidelity(2, 2, 1.0, -0.5, 1.0), DomainError);  // straddles r = 0
  CHECK_THROWS_AS(optimal_fidelity(2, 2, 1.0, 0.05, 3.0, 0.0), DomainError);
}

TEST_CASE("fidelity_sweep matches pointwise fidelity in grid order") {
  const std::vector<double> lg{0.8, 1.5};
  const std::vector<double> rg{0.5, 1.0, 1.5};
  const auto t1 = fidelity_sweep(2, 2, lg, rg, 1);
  const auto t2 = fidelity_sweep(2, 2, lg, rg, 2);
  REQUIRE(t1.size() == 6);
  REQUIRE(t2.size() == 6);
  for (size_t il = 0; il < lg.size(); ++il)
    for (size_t ir = 0; ir < rg.size(); ++ir) {
      const FidelityCell& cell = t1[il * rg.size() + ir];
      CHECK(cell.lambda == lg[il]);
      CHECK(cell.r == rg[ir]);
      CHECK(cell.f == fidelity({rg[ir], 2}, {lg[il], 2}));
      CHECK(cell.f == t2[il * rg.size() + ir].f);
    }
}

TEST_CASE("fidelity_sweep rejects degenerate grid values") {
  CHECK_THROWS_AS(fidelity_sweep(2, 2, {0.8, 1e-9}, {0.5}), DomainError);
  CHECK_THROWS_AS(fidelity_sweep(2, 2, {0.8}, {0.0}), DomainError);
  CHECK_THROWS_AS(fidelity_sweep(2, 2, {0.8}, {NAN}), DomainError);
}
