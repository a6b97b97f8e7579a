#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <variant>

#include "simbias/symbol_string.hpp"

namespace simbias {

// Number of phrases in the Lempel-Ziv (1976) exhaustive-history parsing.
// A trailing fragment that is already reproducible counts as one phrase.
// Throws Error(Domain) on an empty string.
int lz76_phrase_count(const SymbolString& s);
int lz76_phrase_count(std::span<const std::uint8_t> symbols);

// Bidirectional LZ complexity: log2(n) for 0^n and 1^n, otherwise
// log2(n) * (N_w(s) + N_w(reverse(s))) / 2. Requires n >= 2.
double c_lz(const SymbolString& s);

enum class MaxComplexityMethod { Exhaustive, RandomCorpus, ObservedSample };

std::string_view to_string(MaxComplexityMethod method) noexcept;

inline constexpr std::uint64_t kDefaultCorpusSize = 1'000'000;
inline constexpr std::uint64_t kDefaultCorpusSeed = 0x5eed'c0de'2024'0001ULL;
inline constexpr int kMaxExhaustiveLength = 22;

// Normalization that maps C_LZ onto [0, log2 M] with M = 2^n.
struct ComplexityScale {
  int n = 0;
  double log2_M = 0.0;
  double min_c = 0.0;
  double max_c = 0.0;
  MaxComplexityMethod max_c_method = MaxComplexityMethod::RandomCorpus;
  std::uint64_t corpus_size = 0;  // RandomCorpus only
  std::uint64_t corpus_seed = 0;  // RandomCorpus only

  // Throws Error(Config) when max_c <= min_c or n < 2.
  void validate() const;
};

// max_c over `size` uniform random strings drawn from a fixed seed. Results
// are cached per (n, size, seed) for the lifetime of the process.
ComplexityScale make_corpus_scale(int n, std::uint64_t size = kDefaultCorpusSize,
                                  std::uint64_t seed = kDefaultCorpusSeed,
                                  unsigned threads = 0);

// max_c over all 2^n strings; n <= 22.
ComplexityScale make_exhaustive_scale(int n, unsigned threads = 0);

// max_c over the supplied patterns (all of length n).
ComplexityScale make_observed_scale(int n, std::span<const SymbolString> patterns);

struct ScaledComplexity {
  double value = 0.0;
  bool clipped = false;  // C_LZ fell outside [min_c, max_c]
};

ScaledComplexity k_tilde_checked(const SymbolString& s, const ComplexityScale& scale);

// log2(M) * (C_LZ - min_c) / (max_c - min_c), clipped to [0, log2 M].
inline double k_tilde(const SymbolString& s, const ComplexityScale& scale) {
  return k_tilde_checked(s, scale).value;
}

// Descriptors for rough integer-complexity estimates. All estimates drop the
// machine-dependent additive constant.
struct TypicalInteger {
  double n = 1.0;
};
struct PowerTower {
  std::uint64_t base = 2;  // describes base^base
};
struct MapDerivedInteger {
  double mu = 2.5;
  double x0_log10 = -1.0;
  double eps = 0.0;
};
using IntegerDescriptor = std::variant<TypicalInteger, PowerTower, MapDerivedInteger>;

// Typical(n) -> log2 n, PowerTower(m) -> log2 m, MapDerived -> log2 of the bit
// length (8 bits per character) of canonical_map_description().
double integer_complexity_estimate(const IntegerDescriptor& descriptor);

// Shortest round-trip text of the three map inputs, e.g. "2.5,1e-19728,0".
std::string canonical_map_description(const MapDerivedInteger& d);

}  // namespace simbias
