#include "simbias/induction.hpp"

#include <cmath>
#include <string>

#include "simbias/complexity.hpp"
#include "simbias/error.hpp"

namespace simbias {

namespace {

constexpr double kLn10 = 2.302585092994045684;
constexpr double kLogDomainCeiling = 1e-6;
constexpr double kLinearLog1pCutoff = 1e-12;

constexpr const char* kConstantCaveat =
    "algorithmic-probability values drop the machine-dependent O(1) term in K; "
    "they hold only up to that additive constant";

void check_transition_domain(double mu, double x0_log10, double threshold) {
  if (!(mu > 1.0 && mu <= 4.0)) fail(ErrorKind::Domain, "transition index needs mu in (1, 4]");
  if (!(threshold > 0.0 && threshold < 1.0)) fail(ErrorKind::Domain, "threshold must lie in (0, 1)");
  if (!(x0_log10 < std::log10(threshold)))
    fail(ErrorKind::Domain, "x0 must start below the threshold");
}

// Laplace estimates in doubles so that run lengths beyond 2^64 still work.
double laplace_same(double n) { return (n + 1.0) / (n + 2.0); }
double laplace_break(double n) { return 1.0 / (n + 2.0); }

}  // namespace

double laplace_predict(std::uint64_t k_same, std::uint64_t n) {
  if (k_same > n) fail(ErrorKind::Domain, "laplace_predict needs k_same <= n");
  return (static_cast<double>(k_same) + 1.0) / (static_cast<double>(n) + 2.0);
}

double ap_predict(double k_bits) {
  if (!(k_bits >= 0.0)) fail(ErrorKind::Domain, "ap_predict needs k_bits >= 0");
  return 1.0 - std::exp2(-k_bits);
}

std::uint64_t find_transition_index(double mu, double x0_log10, double threshold) {
  check_transition_domain(mu, x0_log10, threshold);

  const double log_mu = std::log(mu);
  const double log_threshold = std::log(threshold);
  const double log_ceiling = std::log(kLogDomainCeiling);

  std::uint64_t k = 0;
  double log_x = x0_log10 * kLn10;
  while (log_x < log_ceiling) {
    const double x = std::exp(log_x);
    const double log_one_minus_x = x < kLinearLog1pCutoff ? -x : std::log1p(-x);
    log_x = log_mu + log_x + log_one_minus_x;
    if (++k > kMaxTransitionIterations)
      fail(ErrorKind::Domain, "no threshold crossing within 1e9 iterations");
    if (log_x >= log_threshold) return k;
  }

  double x = std::exp(log_x);
  while (x < threshold) {
    const double next = mu * x * (1.0 - x);
    if (next == x) fail(ErrorKind::Domain, "orbit settles below the threshold; no transition");
    x = next;
    if (++k > kMaxTransitionIterations)
      fail(ErrorKind::Domain, "no threshold crossing within 1e9 iterations");
  }
  return k;
}

std::uint64_t transition_lower_bound(double mu, double x0_log10, double threshold) {
  check_transition_domain(mu, x0_log10, threshold);
  const double steps = (std::log(threshold) - x0_log10 * kLn10) / std::log(mu);
  return static_cast<std::uint64_t>(std::ceil(steps));
}

PredictionReport compare_predictors(const RunScenario& scenario) {
  if (scenario.observed_symbol != 0 && scenario.observed_symbol != 1)
    fail(ErrorKind::Domain, "observed symbol must be 0 or 1");

  PredictionReport r;
  r.observed_symbol = scenario.observed_symbol;

  if (const auto* e = std::get_if<ExplicitRun>(&scenario.run)) {
    if (e->n < 1) fail(ErrorKind::Domain, "explicit run length must be >= 1");
    r.scenario = "explicit";
    r.run_length = static_cast<double>(e->n);
    r.k_bits_used = integer_complexity_estimate(TypicalInteger{r.run_length});
  } else if (const auto* p = std::get_if<PowerTowerRun>(&scenario.run)) {
    if (p->m < 2) fail(ErrorKind::Domain, "power tower base must be >= 2");
    r.scenario = "power_tower";
    const double m = static_cast<double>(p->m);
    r.run_length = std::pow(m, m);
    r.k_bits_used = integer_complexity_estimate(PowerTower{p->m});
  } else {
    const auto& d = std::get<MapDerivedRun>(scenario.run);
    r.scenario = "map_derived";
    r.observed_symbol = 0;
    r.transition_lower_bound = transition_lower_bound(d.mu, d.x0_log10, d.threshold);
    r.run_length = static_cast<double>(find_transition_index(d.mu, d.x0_log10, d.threshold));
    r.k_bits_used = integer_complexity_estimate(MapDerivedInteger{d.mu, d.x0_log10, 0.0});
  }

  r.run_length_log10 = std::log10(r.run_length);
  r.laplace_next_same = laplace_same(r.run_length);
  r.laplace_trend_break = laplace_break(r.run_length);
  r.ap_next_same = ap_predict(r.k_bits_used);
  r.ap_trend_break = std::exp2(-r.k_bits_used);
  r.notes = kConstantCaveat;
  return r;
}

}  // namespace simbias
