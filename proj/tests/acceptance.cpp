// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any FAIL.
// Slopes are compared in log10(P) units (BoundFit::slope_log10); the log2
// slope is printed alongside.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <optional>
#include <sstream>
#include <string>
#include <unistd.h>
#include <vector>

#include "lz_oracle.hpp"
#include "simbias/complexity.hpp"
#include "simbias/error.hpp"
#include "simbias/estimator.hpp"
#include "simbias/experiment.hpp"
#include "simbias/induction.hpp"
#include "simbias/map_engine.hpp"
#include "simbias/rng.hpp"
#include "simbias/simbias.h"
#include "simbias/symbolizer.hpp"

using namespace simbias;
namespace fs = std::filesystem;

namespace {

constexpr std::uint64_t kSamples = 1'000'000;
constexpr std::uint64_t kSeed = 1;
constexpr double kSlopeTolerance = 0.15;

struct Outcome {
  bool pass = true;
  std::string detail;
  std::vector<std::string> info;

  void check(bool ok, const std::string& what) {
    if (!ok) pass = false;
    if (!detail.empty()) detail += "; ";
    detail += what + (ok ? "" : " [x]");
  }
};

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

struct Cell {
  double mu = 1.0;
  double eps = 0.0;
  double delta = 0.0;
  int skip = 0;
  BoundaryPolicy boundary = BoundaryPolicy::Clamp;
};

struct CellResult {
  std::size_t distinct = 0;
  bool fit_ok = false;
  double slope = 0.0;  // log2
  double slope_log10 = 0.0;
  std::optional<double> rho;
  double seconds = 0.0;
};

CellResult run_cell(const Cell& cell, std::uint64_t seed = kSeed) {
  const auto t0 = std::chrono::steady_clock::now();
  ExperimentConfig c;
  c.map.mu = cell.mu;
  c.map.eps = cell.eps;
  c.map.delta = cell.delta;
  c.map.transient_skip = cell.skip;
  c.map.boundary = cell.boundary;
  c.samples = kSamples;
  c.seed = seed;
  const auto r = run_experiment(c);
  CellResult out;
  out.distinct = r.dataset.rows.size();
  const auto m = bias_metrics(r.dataset);
  out.rho = m.spearman_rho;
  try {
    const auto fit = fit_upper_bound(r.dataset);
    out.fit_ok = true;
    out.slope = fit.slope;
    out.slope_log10 = fit.slope_log10;
  } catch (const Error&) {
  }
  out.seconds = seconds_since(t0);
  return out;
}

std::string describe(const Cell& c) {
  std::ostringstream s;
  s << "mu=" << c.mu << " eps=" << c.eps;
  if (c.delta > 0) s << " delta=" << c.delta;
  s << " skip=" << c.skip;
  if (c.boundary == BoundaryPolicy::Resample) s << " resample";
  return s.str();
}

std::string slope_text(const CellResult& r) {
  if (!r.fit_ok) return "no fit";
  return "slope " + fmt("%.3f", r.slope_log10) + " (log2 " + fmt("%.3f", r.slope) + ", " +
         fmt("%.1f", r.seconds) + " s)";
}

bool within(double x, double centre, double half_width) { return std::abs(x - centre) <= half_width; }

// 1. Fast phrase count against the substring-search oracle on every string of length 1..12.
Outcome lz_oracle_equivalence() {
  Outcome o;
  const auto t0 = std::chrono::steady_clock::now();
  std::uint64_t cases = 0, mismatches = 0;
  for (int len = 1; len <= 12; ++len) {
    for (std::uint64_t v = 0; v < (1ull << len); ++v) {
      const SymbolString s(v, len);
      if (lz76_phrase_count(s) != oracle::lz76(s.to_text())) ++mismatches;
      ++cases;
    }
  }
  const double secs = seconds_since(t0);
  o.check(cases == 8190, std::to_string(cases) + " strings");
  o.check(mismatches == 0, std::to_string(mismatches) + " mismatches");
  o.check(secs < 60.0, fmt("%.2f s", secs));
  return o;
}

// 2. Phrase-count and complexity anchors.
Outcome complexity_anchors() {
  Outcome o;
  bool ok = lz76_phrase_count(SymbolString::from_text("0")) == 1 &&
            lz76_phrase_count(SymbolString::from_text("1")) == 1;
  for (int n = 2; n <= 25; ++n)
    ok = ok && lz76_phrase_count(SymbolString::zeros(n)) == 2 && lz76_phrase_count(SymbolString::ones(n)) == 2;
  o.check(ok, "N_w(0)=N_w(1)=1, N_w(0^n)=N_w(1^n)=2 for n=2..25");
  const double log25 = std::log2(25.0);
  o.check(c_lz(SymbolString::zeros(25)) == log25 && c_lz(SymbolString::ones(25)) == log25,
          "C_LZ(0^25)=C_LZ(1^25)=log2 25");
  o.check(k_tilde(SymbolString::zeros(25), make_corpus_scale(25)) == 0.0, "K~(0^25)=0");
  return o;
}

// 3. Worked digitization example.
Outcome digitization_anchor() {
  Outcome o;
  std::vector<double> traj(25, 0.3);
  const double head[] = {0.12, 0.47, 0.66};
  const double tail[] = {0.21, 0.05, 0.78, 0.97};
  for (int i = 0; i < 3; ++i) traj[i] = head[i];
  for (int i = 0; i < 4; ++i) traj[21 + i] = tail[i];
  const auto text = digitize(traj).to_text();
  o.check(text.substr(0, 3) == "001" && text.substr(21) == "0011",
          "\"" + text.substr(0, 3) + "..." + text.substr(21) + "\"");
  return o;
}

// 4. Deterministic dynamics: fixed point at mu=2.5 and period three at mu=3.83.
Outcome dynamics_properties() {
  Outcome o;
  RngStream x0_rng(kSeed, 0);
  RngStream unused(kSeed, 1);

  MapSettings fixed;
  fixed.mu = 2.5;
  fixed.n = 2;
  fixed.transient_skip = 999;
  int fixed_ok = 0;
  for (int i = 0; i < 100; ++i) {
    const auto t = generate_trajectory(MapParams(fixed), sample_x0(x0_rng), unused);
    fixed_ok += std::abs(t[0] - 0.6) < 1e-9 && std::abs(t[1] - 0.6) < 1e-9;
  }
  o.check(fixed_ok == 100, std::to_string(fixed_ok) + "/100 within 1e-9 of 0.6");

  MapSettings periodic;
  periodic.mu = 3.83;
  periodic.transient_skip = 1000;
  int periodic_ok = 0;
  for (int i = 0; i < 100; ++i) {
    const auto s = digitize(generate_trajectory(MapParams(periodic), sample_x0(x0_rng), unused)).to_text();
    bool p3 = true;
    for (std::size_t k = 3; k < s.size(); ++k) p3 = p3 && s[k] == s[k - 3];
    periodic_ok += p3;
  }
  o.check(periodic_ok == 100, std::to_string(periodic_ok) + "/100 3-periodic");
  return o;
}

// 5. Envelope slopes of the three reference configurations.
Outcome reference_slopes() {
  Outcome o;
  struct Target {
    Cell cell;
    double slope;
  };
  const Target targets[] = {{{3.0, 0.125, 0.0, 0}, -0.27}, {{1.0, 0.375, 0.0, 0}, -0.32}, {{1.0, 0.375, 0.0, 50}, -0.37}};
  for (const auto& t : targets) {
    const auto r = run_cell(t.cell);
    o.check(r.fit_ok && within(r.slope_log10, t.slope, kSlopeTolerance),
            describe(t.cell) + ": " + slope_text(r) + " vs " + fmt("%.2f", t.slope));
    auto resample = t.cell;
    resample.boundary = BoundaryPolicy::Resample;
    o.info.push_back(describe(resample) + ": " + slope_text(run_cell(resample)));
  }
  return o;
}

// 6. Measurement noise flattens the envelope.
Outcome measurement_noise_flattening() {
  Outcome o;
  const double deltas[] = {0.01, 0.17, 0.45};
  for (auto policy : {BoundaryPolicy::Clamp, BoundaryPolicy::Resample}) {
    std::vector<CellResult> results;
    std::string line;
    for (double d : deltas) {
      const Cell cell{1.0, 0.375, d, 0, policy};
      results.push_back(run_cell(cell));
      line += (line.empty() ? "" : ", ") + ("delta=" + fmt("%g", d) + " " + slope_text(results.back()));
    }
    bool fits = true;
    for (const auto& r : results) fits = fits && r.fit_ok;
    const bool monotone = fits && results[0].slope_log10 <= results[1].slope_log10 &&
                          results[1].slope_log10 <= results[2].slope_log10;
    const bool last_in_band = fits && within(results[2].slope_log10, -0.04, 0.08);
    if (policy == BoundaryPolicy::Clamp) {
      o.check(monotone, "non-decreasing: " + line);
      o.check(last_in_band, "delta=0.45 in -0.04+-0.08");
    } else {
      o.info.push_back(std::string("resample: ") + line + (monotone ? "; non-decreasing" : "; not monotone") +
                       (last_in_band ? "; delta=0.45 in band" : "; delta=0.45 out of band"));
    }
  }
  return o;
}

// 7. Noise-induced chaos around the period-three window.
Outcome noise_induced_chaos() {
  Outcome o;
  const auto chaotic = run_cell({3.82, 0.00146, 0.0, 1000});
  const auto window = run_cell({3.83, 0.00146, 0.0, 1000});
  const auto deterministic = run_cell({3.83, 0.0, 0.0, 1000});
  o.check(chaotic.fit_ok && window.fit_ok && std::abs(window.slope_log10) > std::abs(chaotic.slope_log10),
          "|slope(3.83)| " + fmt("%.3f", std::abs(window.slope_log10)) + " > |slope(3.82)| " +
              fmt("%.3f", std::abs(chaotic.slope_log10)));
  o.check(window.distinct >= 100 * deterministic.distinct,
          "distinct " + std::to_string(window.distinct) + " vs deterministic " +
              std::to_string(deterministic.distinct));
  return o;
}

// 8. No simplicity bias near mu = 4.
Outcome no_bias_control() {
  Outcome o;
  const auto r = run_cell({3.99, 0.0, 0.0, 50});
  o.check(r.rho && std::abs(*r.rho) < 0.2, "|rho| " + fmt("%.3f", r.rho ? std::abs(*r.rho) : NAN));
  o.check(r.fit_ok && std::abs(r.slope_log10) < 0.1, slope_text(r) + ", |slope| < 0.1");
  return o;
}

// 9. Induction anchors.
Outcome induction_anchors() {
  Outcome o;
  o.check(laplace_predict(50000, 50000) > 0.99998, "laplace(50000, 50000) " + fmt("%.8f", laplace_predict(50000, 50000)));
  const auto bound = transition_lower_bound(2.5, -19728.0);
  o.check(bound == 49575, "lower bound " + std::to_string(bound));
  const auto tower = compare_predictors({PowerTowerRun{5}, 1});
  o.check(tower.ap_trend_break >= 100.0 * tower.laplace_trend_break,
          "power tower 5: AP " + fmt("%.4g", tower.ap_trend_break) + " vs Laplace " +
              fmt("%.4g", tower.laplace_trend_break));
  for (double x0_log10 : {-3.0, -6.0}) {
    double x = std::pow(10.0, x0_log10);
    std::uint64_t direct = 0;
    while (x < 0.5) {
      x = 2.5 * x * (1.0 - x);
      ++direct;
    }
    const auto n_star = find_transition_index(2.5, x0_log10);
    o.check(n_star == direct, "n*(1e" + fmt("%g", x0_log10) + ") " + std::to_string(n_star) + " = direct " +
                                  std::to_string(direct));
  }
  return o;
}

// 10. Byte-identical output across runs and thread counts, through the C API.
std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

bool simulate_to(const fs::path& dir, unsigned threads, std::string& analysis) {
  sb_config* c = nullptr;
  sb_dataset* ds = nullptr;
  char* json = nullptr;
  bool ok = sb_config_create(&c) == SB_OK && sb_config_set_mu(c, 1.0) == SB_OK &&
            sb_config_set_eps(c, 0.375) == SB_OK && sb_config_set_delta(c, 0.17) == SB_OK &&
            sb_config_set_samples(c, kSamples) == SB_OK && sb_config_set_seed(c, kSeed) == SB_OK &&
            sb_config_set_threads(c, threads) == SB_OK && sb_simulate(c, &ds) == SB_OK &&
            sb_dataset_write(ds, (dir / "data.csv").string().c_str()) == SB_OK &&
            sb_dataset_analyze(ds, 1.0, 0, &json) == SB_OK;
  if (json) analysis = json;
  sb_string_free(json);
  sb_dataset_destroy(ds);
  sb_config_destroy(c);
  return ok;
}

Outcome reproducibility() {
  Outcome o;
  const auto root = fs::temp_directory_path() / ("simbias_acceptance_" + std::to_string(::getpid()));
  const fs::path a = root / "a", b = root / "b";
  fs::create_directories(a);
  fs::create_directories(b);
  std::string ja, jb;
  const bool ran = simulate_to(a, 0, ja) && simulate_to(b, 1, jb);
  o.check(ran, ran ? "two runs (all threads, one thread)" : std::string("C API error: ") + sb_last_error());
  if (ran) {
    o.check(slurp(a / "data.csv") == slurp(b / "data.csv"), "CSV identical");
    o.check(slurp(a / "data.meta.json") == slurp(b / "data.meta.json"), "metadata identical");
    o.check(ja == jb, "analysis JSON identical");
  }
  std::error_code ec;
  fs::remove_all(root, ec);
  return o;
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    std::function<Outcome()> run;
  };
  const Criterion criteria[] = {
      {1, "LZ oracle equivalence", lz_oracle_equivalence},
      {2, "complexity anchors", complexity_anchors},
      {3, "digitization anchor", digitization_anchor},
      {4, "dynamics properties", dynamics_properties},
      {5, "reference envelope slopes", reference_slopes},
      {6, "measurement-noise flattening", measurement_noise_flattening},
      {7, "noise-induced chaos", noise_induced_chaos},
      {8, "no-bias control", no_bias_control},
      {9, "induction anchors", induction_anchors},
      {10, "reproducibility", reproducibility},
  };

  int failures = 0;
  for (const auto& c : criteria) {
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    failures += !o.pass;
    std::printf("%s %2d %s: %s\n", o.pass ? "PASS" : "FAIL", c.id, c.name, o.detail.c_str());
    for (const auto& line : o.info) std::printf("     info: %s\n", line.c_str());
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(std::size(criteria)) - failures, std::size(criteria));
  return failures == 0 ? 0 : 1;
}
