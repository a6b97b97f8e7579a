#include "simbias/complexity.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <map>
#include <mutex>
#include <thread>
#include <tuple>
#include <vector>

#include "simbias/error.hpp"
#include "simbias/estimator.hpp"
#include "simbias/rng.hpp"

namespace simbias {

namespace {

std::array<std::uint8_t, 64> unpack(const SymbolString& s) {
  std::array<std::uint8_t, 64> out{};
  for (int k = 0; k < s.size(); ++k) out[static_cast<std::size_t>(k)] = static_cast<std::uint8_t>(s[k]);
  return out;
}

unsigned resolve_threads(unsigned threads) {
  if (threads != 0) return threads;
  return std::max(1u, std::thread::hardware_concurrency());
}

// Runs body(first, last) over [0, count) split into `threads` contiguous
// ranges and returns the max of the per-range results.
template <class Body>
double parallel_max(std::uint64_t count, unsigned threads, Body body) {
  threads = static_cast<unsigned>(std::min<std::uint64_t>(resolve_threads(threads), std::max<std::uint64_t>(count, 1)));
  std::vector<double> partial(threads, -INFINITY);
  std::vector<std::thread> pool;
  const std::uint64_t per = (count + threads - 1) / threads;
  for (unsigned t = 0; t < threads; ++t) {
    const std::uint64_t first = std::min(count, per * t);
    const std::uint64_t last = std::min(count, first + per);
    pool.emplace_back([&, t, first, last] { partial[t] = body(first, last); });
  }
  for (auto& th : pool) th.join();
  return *std::max_element(partial.begin(), partial.end());
}

ComplexityScale base_scale(int n) {
  if (n < 2) fail(ErrorKind::Config, "complexity scale needs n >= 2");
  ComplexityScale scale;
  scale.n = n;
  scale.log2_M = n;
  scale.min_c = std::log2(static_cast<double>(n));
  return scale;
}

}  // namespace

int lz76_phrase_count(std::span<const std::uint8_t> s) {
  const std::size_t n = s.size();
  if (n == 0) fail(ErrorKind::Domain, "LZ76 complexity of an empty string");
  if (n == 1) return 1;

  // Kaspar & Schuster scan. `l` is the length of the parsed prefix, the
  // current phrase is being extended as s[l .. l+k-1], and `i` is the start
  // of the candidate copy inside the history.
  int c = 1;
  std::size_t l = 1, i = 0, k = 1, k_max = 1;
  while (true) {
    if (s[i + k - 1] == s[l + k - 1]) {
      ++k;
      if (l + k > n) {
        ++c;
        break;
      }
    } else {
      k_max = std::max(k, k_max);
      ++i;
      if (i == l) {
        ++c;
        l += k_max;
        if (l + 1 > n) break;
        i = 0;
        k = 1;
        k_max = 1;
      } else {
        k = 1;
      }
    }
  }
  return c;
}

int lz76_phrase_count(const SymbolString& s) {
  if (s.size() == 0) fail(ErrorKind::Domain, "LZ76 complexity of an empty string");
  const auto symbols = unpack(s);
  return lz76_phrase_count(std::span<const std::uint8_t>(symbols.data(), static_cast<std::size_t>(s.size())));
}

double c_lz(const SymbolString& s) {
  const int n = s.size();
  if (n < 2) fail(ErrorKind::Domain, "C_LZ needs a string of length >= 2");
  const double log_n = std::log2(static_cast<double>(n));
  if (s.is_constant()) return log_n;

  auto fwd = unpack(s);
  std::array<std::uint8_t, 64> rev{};
  std::reverse_copy(fwd.begin(), fwd.begin() + n, rev.begin());
  const auto len = static_cast<std::size_t>(n);
  const int forward = lz76_phrase_count(std::span<const std::uint8_t>(fwd.data(), len));
  const int backward = lz76_phrase_count(std::span<const std::uint8_t>(rev.data(), len));
  return log_n * (forward + backward) / 2.0;
}

std::string_view to_string(MaxComplexityMethod method) noexcept {
  switch (method) {
    case MaxComplexityMethod::Exhaustive: return "exhaustive";
    case MaxComplexityMethod::RandomCorpus: return "random_corpus";
    case MaxComplexityMethod::ObservedSample: return "observed_sample";
  }
  return "unknown";
}

void ComplexityScale::validate() const {
  if (n < 2) fail(ErrorKind::Config, "complexity scale needs n >= 2");
  if (!(max_c > min_c)) fail(ErrorKind::Config, "complexity scale needs max_c > min_c");
}

ComplexityScale make_corpus_scale(int n, std::uint64_t size, std::uint64_t seed, unsigned threads) {
  ComplexityScale scale = base_scale(n);
  scale.max_c_method = MaxComplexityMethod::RandomCorpus;
  scale.corpus_size = size;
  scale.corpus_seed = seed;
  if (size == 0) fail(ErrorKind::Config, "random corpus must not be empty");

  static std::mutex cache_mutex;
  static std::map<std::tuple<int, std::uint64_t, std::uint64_t>, double> cache;
  const auto key = std::make_tuple(n, size, seed);
  {
    std::lock_guard lock(cache_mutex);
    if (auto it = cache.find(key); it != cache.end()) {
      scale.max_c = it->second;
      return scale;
    }
  }

  // Corpus string j is word (j % kShardSize) of RngStream(seed, j / kShardSize).
  const std::uint64_t chunks = (size + kShardSize - 1) / kShardSize;
  scale.max_c = parallel_max(chunks, threads, [&](std::uint64_t first, std::uint64_t last) {
    double best = -INFINITY;
    for (std::uint64_t chunk = first; chunk < last; ++chunk) {
      RngStream rng(seed, chunk);
      const std::uint64_t count = std::min(kShardSize, size - chunk * kShardSize);
      for (std::uint64_t j = 0; j < count; ++j)
        best = std::max(best, c_lz(SymbolString(rng.next_u64(), n)));
    }
    return best;
  });
  scale.validate();

  std::lock_guard lock(cache_mutex);
  cache.emplace(key, scale.max_c);
  return scale;
}

ComplexityScale make_exhaustive_scale(int n, unsigned threads) {
  if (n > kMaxExhaustiveLength)
    fail(ErrorKind::Config, "exhaustive normalization is limited to n <= 22");
  ComplexityScale scale = base_scale(n);
  scale.max_c_method = MaxComplexityMethod::Exhaustive;
  scale.max_c = parallel_max(std::uint64_t{1} << n, threads, [n](std::uint64_t first, std::uint64_t last) {
    double best = -INFINITY;
    for (std::uint64_t v = first; v < last; ++v) best = std::max(best, c_lz(SymbolString(v, n)));
    return best;
  });
  scale.validate();
  return scale;
}

ComplexityScale make_observed_scale(int n, std::span<const SymbolString> patterns) {
  ComplexityScale scale = base_scale(n);
  scale.max_c_method = MaxComplexityMethod::ObservedSample;
  scale.max_c = scale.min_c;
  for (const auto& p : patterns) {
    if (p.size() != n) fail(ErrorKind::Config, "observed pattern length differs from n");
    scale.max_c = std::max(scale.max_c, c_lz(p));
  }
  scale.validate();
  return scale;
}

ScaledComplexity k_tilde_checked(const SymbolString& s, const ComplexityScale& scale) {
  scale.validate();
  if (s.size() != scale.n) fail(ErrorKind::Config, "string length does not match the complexity scale");
  const double raw = scale.log2_M * (c_lz(s) - scale.min_c) / (scale.max_c - scale.min_c);
  if (raw > scale.log2_M) return {scale.log2_M, true};
  if (raw < 0.0) return {0.0, true};
  return {raw, false};
}

double integer_complexity_estimate(const IntegerDescriptor& descriptor) {
  struct Visitor {
    double operator()(const TypicalInteger& t) const {
      if (!(t.n >= 1.0)) fail(ErrorKind::Domain, "integer complexity needs n >= 1");
      return std::log2(t.n);
    }
    double operator()(const PowerTower& p) const {
      if (p.base < 1) fail(ErrorKind::Domain, "power tower base must be >= 1");
      return std::log2(static_cast<double>(p.base));
    }
    double operator()(const MapDerivedInteger& d) const {
      return std::log2(8.0 * static_cast<double>(canonical_map_description(d).size()));
    }
  };
  return std::visit(Visitor{}, descriptor);
}

std::string canonical_map_description(const MapDerivedInteger& d) {
  auto shortest = [](double v) {
    std::array<char, 64> buf{};
    auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
    return std::string(buf.data(), end);
  };
  return shortest(d.mu) + ",1e" + shortest(d.x0_log10) + "," + shortest(d.eps);
}

}  // namespace simbias
