#include "simbias/estimator.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <map>
#include <mutex>
#include <numeric>
#include <thread>

#include "simbias/error.hpp"
#include "simbias/symbolizer.hpp"

namespace simbias {

std::uint64_t FrequencyTable::count(const SymbolString& s) const {
  if (s.size() != params_.n()) return 0;
  const auto it = counts_.find(s.bits());
  return it == counts_.end() ? 0 : it->second;
}

void FrequencyTable::add(const SymbolString& s, std::uint64_t count) {
  if (s.size() != params_.n()) fail(ErrorKind::Config, "pattern length differs from n");
  if (count == 0) return;
  counts_[s.bits()] += count;
  total_ += count;
}

void FrequencyTable::merge(const FrequencyTable& other) {
  if (other.params_.n() != params_.n()) fail(ErrorKind::Config, "cannot merge tables with different n");
  for (const auto& [bits, c] : other.counts_) counts_[bits] += c;
  total_ += other.total_;
}

FrequencyTable sample_distribution(const MapParams& params, std::uint64_t samples,
                                   std::uint64_t seed, const SamplingOptions& options) {
  if (samples < 1) fail(ErrorKind::Config, "sample count must be >= 1");

  const std::uint64_t shards = (samples + kShardSize - 1) / kShardSize;
  unsigned threads = options.threads != 0 ? options.threads
                                          : std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::uint64_t>(threads, shards));

  FrequencyTable result(params);
  std::mutex result_mutex;
  std::atomic<std::uint64_t> next_shard{0};
  std::exception_ptr error;

  auto worker = [&] {
    FrequencyTable local(params);
    try {
      for (std::uint64_t shard = next_shard++; shard < shards; shard = next_shard++) {
        RngStream rng(seed, options.first_shard + shard);
        const std::uint64_t count = std::min(kShardSize, samples - shard * kShardSize);
        for (std::uint64_t j = 0; j < count; ++j) {
          const double x0 = sample_x0(rng);
          const RealTrajectory traj = generate_trajectory(params, x0, rng);
          local.add(digitize_perturbed(traj, params.delta(), rng));
        }
      }
    } catch (...) {
      std::lock_guard lock(result_mutex);
      if (!error) error = std::current_exception();
      next_shard = shards;
      return;
    }
    std::lock_guard lock(result_mutex);
    result.merge(local);
  };

  std::vector<std::thread> pool;
  for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);
  return result;
}

Dataset build_dataset(const FrequencyTable& table, const ComplexityScale& scale) {
  if (scale.n != table.params().n()) fail(ErrorKind::Config, "complexity scale n differs from table n");
  scale.validate();

  Dataset ds;
  ds.total_samples = table.total_samples();
  ds.rows.reserve(table.distinct());
  const double total = static_cast<double>(table.total_samples());
  for (const auto& [bits, count] : table.counts()) {
    DatasetRow row;
    row.pattern = SymbolString(bits, scale.n);
    row.count = count;
    row.probability = static_cast<double>(count) / total;
    row.c_lz = c_lz(row.pattern);
    const ScaledComplexity k = k_tilde_checked(row.pattern, scale);
    row.k_tilde = k.value;
    if (k.clipped) ++ds.clipped_rows;
    ds.rows.push_back(row);
  }
  std::sort(ds.rows.begin(), ds.rows.end(), [](const DatasetRow& a, const DatasetRow& b) {
    if (a.count != b.count) return a.count > b.count;
    return a.pattern.bits() < b.pattern.bits();
  });
  return ds;
}

BoundFit fit_upper_bound(const Dataset& ds, const FitOptions& options) {
  if (!(options.bin_width > 0.0)) fail(ErrorKind::Config, "bin width must be > 0");

  std::map<long long, double> bin_max;
  for (const auto& row : ds.rows) {
    if (options.exclude_singletons && row.count <= 1) continue;
    const auto bin = static_cast<long long>(std::floor(row.k_tilde / options.bin_width));
    const double lp = std::log2(row.probability);
    auto [it, inserted] = bin_max.try_emplace(bin, lp);
    if (!inserted) it->second = std::max(it->second, lp);
  }
  if (bin_max.size() < 2)
    fail(ErrorKind::Fit, "upper-bound fit needs at least two non-empty complexity bins, found " +
                             std::to_string(bin_max.size()));

  BoundFit fit;
  fit.bin_width = options.bin_width;
  char width[32];
  auto [end, ec] = std::to_chars(width, width + sizeof width, options.bin_width);
  std::string width_text(width, end);
  if (width_text.find_first_of(".e") == std::string::npos) width_text += ".0";
  fit.method = "binned-max-OLS/" + width_text;
  for (const auto& [bin, lp] : bin_max)
    fit.bin_points.push_back({(static_cast<double>(bin) + 0.5) * options.bin_width, lp});

  const double m = static_cast<double>(fit.bin_points.size());
  double sx = 0, sy = 0;
  for (const auto& p : fit.bin_points) {
    sx += p.k_center;
    sy += p.max_log2_p;
  }
  const double mx = sx / m, my = sy / m;
  double sxx = 0, sxy = 0;
  for (const auto& p : fit.bin_points) {
    sxx += (p.k_center - mx) * (p.k_center - mx);
    sxy += (p.k_center - mx) * (p.max_log2_p - my);
  }
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  fit.slope_log10 = fit.slope * std::log10(2.0);
  return fit;
}

double bound_curve(double a, double b, double k) noexcept { return std::exp2(-a * k - b); }

namespace {

std::vector<double> average_ranks(const std::vector<double>& v) {
  std::vector<std::size_t> order(v.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return v[a] < v[b]; });
  std::vector<double> ranks(v.size());
  for (std::size_t i = 0; i < order.size();) {
    std::size_t j = i;
    while (j + 1 < order.size() && v[order[j + 1]] == v[order[i]]) ++j;
    const double rank = (static_cast<double>(i) + static_cast<double>(j)) / 2.0 + 1.0;
    for (std::size_t t = i; t <= j; ++t) ranks[order[t]] = rank;
    i = j + 1;
  }
  return ranks;
}

}  // namespace

std::optional<double> spearman(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.size() != b.size() || a.size() < 2) return std::nullopt;
  const auto ra = average_ranks(a);
  const auto rb = average_ranks(b);
  const double n = static_cast<double>(a.size());
  const double mean = (n + 1.0) / 2.0;
  double sab = 0, saa = 0, sbb = 0;
  for (std::size_t i = 0; i < ra.size(); ++i) {
    sab += (ra[i] - mean) * (rb[i] - mean);
    saa += (ra[i] - mean) * (ra[i] - mean);
    sbb += (rb[i] - mean) * (rb[i] - mean);
  }
  if (saa == 0.0 || sbb == 0.0) return std::nullopt;
  return sab / std::sqrt(saa * sbb);
}

BiasMetrics bias_metrics(const Dataset& ds) {
  if (ds.rows.empty()) fail(ErrorKind::Domain, "bias metrics need a non-empty dataset");
  BiasMetrics m;
  m.distinct_patterns = ds.rows.size();
  std::vector<double> k, lp;
  k.reserve(ds.rows.size());
  lp.reserve(ds.rows.size());
  for (const auto& row : ds.rows) {
    m.entropy_bits -= row.probability * std::log2(row.probability);
    m.max_probability = std::max(m.max_probability, row.probability);
    k.push_back(row.k_tilde);
    lp.push_back(std::log2(row.probability));
  }
  // -1 * 1 * log2(1) is -0.0.
  m.entropy_bits = m.entropy_bits + 0.0;
  m.spearman_rho = spearman(k, lp);
  return m;
}

}  // namespace simbias
