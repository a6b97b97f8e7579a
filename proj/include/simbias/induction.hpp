#pragma once

#include <cstdint>
#include <string>
#include <variant>

namespace simbias {

// Laplace's rule of succession, (k_same + 1) / (n + 2).
double laplace_predict(std::uint64_t k_same, std::uint64_t n);

// Algorithmic-probability next-symbol estimate 1 - 2^(-k_bits), with the
// machine-dependent O(1) term in the exponent dropped.
double ap_predict(double k_bits);

inline constexpr std::uint64_t kMaxTransitionIterations = 1'000'000'000;

// First index k >= 1 at which the deterministic logistic map started from
// x0 = 10^x0_log10 reaches `threshold`. While the state is below 1e-6 the
// iteration runs on ln(x); afterwards in ordinary doubles.
// Throws Error(Domain) for mu outside (1, 4], x0 not below threshold, or when
// the orbit settles below the threshold.
std::uint64_t find_transition_index(double mu, double x0_log10, double threshold = 0.5);

// ceil(ln(threshold * 10^-x0_log10) / ln mu): growth can be at most mu per step.
std::uint64_t transition_lower_bound(double mu, double x0_log10, double threshold = 0.5);

struct ExplicitRun {
  std::uint64_t n = 1;
};
struct PowerTowerRun {
  std::uint64_t m = 2;  // run length m^m
};
struct MapDerivedRun {
  double mu = 2.5;
  double x0_log10 = -1.0;
  double threshold = 0.5;
};
using RunLength = std::variant<ExplicitRun, PowerTowerRun, MapDerivedRun>;

struct RunScenario {
  RunLength run;
  int observed_symbol = 0;
};

struct PredictionReport {
  std::string scenario;       // "explicit" / "power_tower" / "map_derived"
  double run_length = 0.0;    // may exceed 2^53 for power towers
  double run_length_log10 = 0.0;
  int observed_symbol = 0;
  double laplace_next_same = 0.0;
  double laplace_trend_break = 0.0;
  double ap_next_same = 0.0;
  double ap_trend_break = 0.0;
  double k_bits_used = 0.0;
  std::uint64_t transition_lower_bound = 0;  // map_derived only
  std::string notes;
};

// Throws Error(Domain) for an invalid scenario.
PredictionReport compare_predictors(const RunScenario& scenario);

}  // namespace simbias
