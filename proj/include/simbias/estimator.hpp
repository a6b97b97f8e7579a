#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "simbias/complexity.hpp"
#include "simbias/map_engine.hpp"
#include "simbias/symbol_string.hpp"

namespace simbias {

// Samples [k * kShardSize, (k + 1) * kShardSize) form shard k and are drawn
// from RngStream(seed, first_shard + k). The table therefore depends only on
// (params, N, seed, first_shard), never on the thread count.
inline constexpr std::uint64_t kShardSize = 1u << 16;
inline constexpr std::uint64_t kDefaultSamples = 1'000'000;

class FrequencyTable {
public:
  explicit FrequencyTable(MapParams params) : params_(params) {}

  const MapParams& params() const noexcept { return params_; }
  std::uint64_t total_samples() const noexcept { return total_; }
  std::size_t distinct() const noexcept { return counts_.size(); }

  // Keyed by the packed bits; every key has length params().n().
  const std::unordered_map<std::uint64_t, std::uint64_t>& counts() const noexcept {
    return counts_;
  }
  std::uint64_t count(const SymbolString& s) const;

  void add(const SymbolString& s, std::uint64_t count = 1);
  // Throws Error(Config) if the two tables were built for different n.
  void merge(const FrequencyTable& other);

private:
  MapParams params_;
  std::uint64_t total_ = 0;
  std::unordered_map<std::uint64_t, std::uint64_t> counts_;
};

struct SamplingOptions {
  std::uint64_t first_shard = 0;
  unsigned threads = 0;  // 0 = hardware concurrency
};

// N independent trajectories from fresh x0 and noise, digitized (after
// measurement noise when delta > 0) and counted.
FrequencyTable sample_distribution(const MapParams& params, std::uint64_t samples,
                                   std::uint64_t seed, const SamplingOptions& options = {});

struct DatasetRow {
  SymbolString pattern;
  std::uint64_t count = 0;
  double probability = 0.0;
  double c_lz = 0.0;
  double k_tilde = 0.0;
};

struct Dataset {
  std::uint64_t total_samples = 0;
  std::vector<DatasetRow> rows;
  std::size_t clipped_rows = 0;  // rows whose C_LZ exceeded the scale's max_c
};

// One row per observed pattern, by descending count then ascending packed value.
Dataset build_dataset(const FrequencyTable& table, const ComplexityScale& scale);

struct BinPoint {
  double k_center = 0.0;
  double max_log2_p = 0.0;
};

struct BoundFit {
  double slope = 0.0;      // d log2(P) / d K~
  double intercept = 0.0;  // log2(P) at K~ = 0
  // The same envelope slope measured against log10(P), the axis the
  // complexity-probability plots are drawn on: slope * log10(2).
  double slope_log10 = 0.0;
  double bin_width = 1.0;
  std::vector<BinPoint> bin_points;
  std::string method;
};

struct FitOptions {
  double bin_width = 1.0;
  bool exclude_singletons = false;
};

// Unit-width (by default) bins over K~ starting at 0; the max log2 P of every
// non-empty bin is regressed on the bin centre by ordinary least squares.
// Throws Error(Fit) with fewer than two non-empty bins.
BoundFit fit_upper_bound(const Dataset& ds, const FitOptions& options = {});

// 2^(-a k - b).
double bound_curve(double a, double b, double k) noexcept;

struct BiasMetrics {
  std::size_t distinct_patterns = 0;
  double entropy_bits = 0.0;
  double max_probability = 0.0;
  // Rank correlation of K~ against log2 P, ties ranked by their mean; empty
  // when fewer than two rows or either variable is constant.
  std::optional<double> spearman_rho;
};

BiasMetrics bias_metrics(const Dataset& ds);

// Spearman correlation with average ranks for ties.
std::optional<double> spearman(const std::vector<double>& a, const std::vector<double>& b);

}  // namespace simbias
