#include <catch_amalgamated.hpp>

#include <cmath>
#include <cstdint>

#include "simbias/error.hpp"
#include "simbias/induction.hpp"

using namespace simbias;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

// Plain double iteration of the deterministic map from 10^x0_log10.
std::uint64_t direct_transition(double mu, double x0_log10, double threshold = 0.5) {
  double x = std::pow(10.0, x0_log10);
  std::uint64_t k = 0;
  while (x < threshold) {
    x = mu * x * (1.0 - x);
    ++k;
  }
  return k;
}

}  // namespace

TEST_CASE("laplace_predict examples", "[induction]") {
  REQUIRE(laplace_predict(3, 3) == 0.8);
  REQUIRE(laplace_predict(0, 0) == 0.5);
  REQUIRE(laplace_predict(50000, 50000) == 50001.0 / 50002.0);
  REQUIRE(laplace_predict(50000, 50000) > 0.99998);
  REQUIRE_THROWS_AS(laplace_predict(4, 3), Error);
}

TEST_CASE("ap_predict examples", "[induction]") {
  for (double n : {2.0, 10.0, 1000.0, 1e6})
    REQUIRE_THAT(ap_predict(std::log2(n)), WithinAbs(1.0 - 1.0 / n, 1e-15));
  REQUIRE(ap_predict(0.0) == 0.0);
  REQUIRE_THAT(ap_predict(std::log2(5.0)), WithinAbs(0.8, 1e-15));
  REQUIRE_THROWS_AS(ap_predict(-1.0), Error);
}

TEST_CASE("laplace complementarity and monotonicity", "[induction][property]") {
  for (std::uint64_t n = 0; n < 200; n += 7)
    for (std::uint64_t k = 0; k <= n; ++k)
      REQUIRE_THAT(laplace_predict(k, n) + laplace_predict(n - k, n), WithinAbs(1.0, 1e-15));
  for (std::uint64_t n = 0; n < 10000; ++n)
    REQUIRE(laplace_predict(n + 1, n + 1) > laplace_predict(n, n));
  for (double k = 0.0; k < 40.0; k += 0.25) REQUIRE(ap_predict(k + 0.25) > ap_predict(k));
}

TEST_CASE("more observations can mean less confidence", "[induction][property]") {
  // n typical with log2 n > log2 m, yet m^m > n.
  for (std::uint64_t m = 2; m <= 12; ++m) {
    const double tower = std::pow(static_cast<double>(m), static_cast<double>(m));
    for (double n : {static_cast<double>(m + 1), 100.0, 1e4}) {
      if (!(n < tower) || !(std::log2(static_cast<double>(m)) < std::log2(n))) continue;
      REQUIRE(ap_predict(std::log2(n)) > ap_predict(std::log2(static_cast<double>(m))));
    }
  }
}

TEST_CASE("transition index examples", "[induction]") {
  REQUIRE(find_transition_index(2.5, std::log10(0.4)) == 1);

  REQUIRE(transition_lower_bound(2.5, -19728.0) == 49575);
  const auto n_star = find_transition_index(2.5, -19728.0);
  REQUIRE(n_star >= 49575);
  REQUIRE(n_star < 50000);
  REQUIRE(n_star == 49576);
}

TEST_CASE("log-domain iteration agrees with direct iteration", "[induction][property]") {
  for (double mu : {1.5, 2.5, 3.0, 3.7, 4.0})
    for (double x0_log10 : {-1.0, -3.0, -5.5, -6.0}) {
      CAPTURE(mu, x0_log10);
      if (mu <= 2.0) {
        REQUIRE_THROWS_AS(find_transition_index(mu, x0_log10), Error);
        continue;
      }
      REQUIRE(find_transition_index(mu, x0_log10) == direct_transition(mu, x0_log10));
    }
  // Below the log-domain ceiling the two paths still land on the same index.
  for (double x0_log10 : {-7.0, -10.0, -30.0, -200.0})
    REQUIRE(find_transition_index(2.5, x0_log10) == direct_transition(2.5, x0_log10));
}

TEST_CASE("transition index lower bound holds", "[induction][property]") {
  for (double mu : {2.2, 2.5, 3.0, 3.5, 4.0})
    for (double x0_log10 : {-2.0, -8.0, -50.0, -400.0, -5000.0})
      REQUIRE(find_transition_index(mu, x0_log10) >= transition_lower_bound(mu, x0_log10));
}

TEST_CASE("transition index errors", "[induction]") {
  REQUIRE_THROWS_AS(find_transition_index(1.0, -3.0), Error);
  REQUIRE_THROWS_AS(find_transition_index(4.5, -3.0), Error);
  REQUIRE_THROWS_AS(find_transition_index(2.5, std::log10(0.6)), Error);
  REQUIRE_THROWS_AS(find_transition_index(1.8, -30.0), Error);  // fixed point 0.444 < 0.5
  try {
    find_transition_index(1.8, -30.0);
  } catch (const Error& e) {
    REQUIRE(e.kind() == ErrorKind::Domain);
  }
  REQUIRE(find_transition_index(1.8, -30.0, 0.4) > 0);
}

TEST_CASE("compare_predictors examples", "[induction]") {
  const auto tower = compare_predictors({PowerTowerRun{5}, 1});
  REQUIRE(tower.scenario == "power_tower");
  REQUIRE(tower.run_length == 3125.0);
  REQUIRE_THAT(tower.laplace_trend_break, WithinRel(1.0 / 3127.0, 1e-15));
  REQUIRE_THAT(tower.laplace_trend_break, WithinRel(3.198e-4, 1e-3));
  REQUIRE_THAT(tower.ap_trend_break, WithinAbs(0.2, 1e-15));
  REQUIRE_THAT(tower.k_bits_used, WithinAbs(2.321928094887362, 1e-12));
  REQUIRE(tower.ap_trend_break >= 100.0 * tower.laplace_trend_break);
  REQUIRE(!tower.notes.empty());

  const auto typical = compare_predictors({ExplicitRun{1000}, 0});
  REQUIRE_THAT(typical.laplace_trend_break, WithinRel(1.0 / 1002.0, 1e-15));
  REQUIRE_THAT(typical.ap_trend_break, WithinRel(1.0 / 1000.0, 1e-12));
  const double ratio = typical.ap_trend_break / typical.laplace_trend_break;
  REQUIRE(ratio > 0.5);
  REQUIRE(ratio < 2.0);

  const auto derived = compare_predictors({MapDerivedRun{2.5, -19728.0, 0.5}, 0});
  REQUIRE(derived.scenario == "map_derived");
  REQUIRE(derived.transition_lower_bound == 49575);
  REQUIRE(derived.run_length >= 49575.0);
  REQUIRE(derived.ap_trend_break > 1.0 / derived.run_length);
}

TEST_CASE("reports are internally consistent", "[induction][property]") {
  for (std::uint64_t n : {2ull, 17ull, 1000ull, 1ull << 40}) {
    const auto r = compare_predictors({ExplicitRun{n}, 1});
    REQUIRE_THAT(r.laplace_next_same + r.laplace_trend_break, WithinAbs(1.0, 1e-15));
    REQUIRE_THAT(r.ap_next_same + r.ap_trend_break, WithinAbs(1.0, 1e-15));
    REQUIRE(r.laplace_next_same > 0.0);
    REQUIRE(r.laplace_next_same < 1.0);
    REQUIRE(r.ap_next_same > 0.0);
    REQUIRE(r.ap_next_same < 1.0);
  }
  for (std::uint64_t m = 2; m <= 30; ++m) {
    const auto r = compare_predictors({PowerTowerRun{m}, 0});
    REQUIRE(r.ap_trend_break > r.laplace_trend_break);
  }
}

TEST_CASE("invalid scenarios", "[induction]") {
  REQUIRE_THROWS_AS(compare_predictors({ExplicitRun{0}, 0}), Error);
  REQUIRE_THROWS_AS(compare_predictors({PowerTowerRun{1}, 0}), Error);
  REQUIRE_THROWS_AS(compare_predictors({ExplicitRun{5}, 2}), Error);
  REQUIRE_THROWS_AS(compare_predictors({MapDerivedRun{0.9, -5.0, 0.5}, 0}), Error);
}
