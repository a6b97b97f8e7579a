#include "simbias/experiment.hpp"

#include <string>
#include <vector>

#include "simbias/error.hpp"

namespace simbias {

std::string_view to_string(NormMode mode) noexcept {
  switch (mode) {
    case NormMode::Corpus: return "corpus";
    case NormMode::Exhaustive: return "exhaustive";
    case NormMode::Observed: return "observed";
  }
  return "unknown";
}

NormMode parse_norm_mode(std::string_view text) {
  if (text == "corpus") return NormMode::Corpus;
  if (text == "exhaustive") return NormMode::Exhaustive;
  if (text == "observed") return NormMode::Observed;
  fail(ErrorKind::Config, "unknown normalization mode '" + std::string(text) + "'");
}

ComplexityScale make_scale(const ExperimentConfig& config, const FrequencyTable& table) {
  const int n = table.params().n();
  switch (config.norm) {
    case NormMode::Corpus:
      return make_corpus_scale(n, config.corpus_size, config.corpus_seed, config.threads);
    case NormMode::Exhaustive:
      return make_exhaustive_scale(n, config.threads);
    case NormMode::Observed: {
      std::vector<SymbolString> patterns;
      patterns.reserve(table.distinct());
      for (const auto& [bits, count] : table.counts()) patterns.emplace_back(bits, n);
      return make_observed_scale(n, patterns);
    }
  }
  fail(ErrorKind::Config, "unknown normalization mode");
}

ExperimentResult run_experiment(const ExperimentConfig& config) {
  const MapParams params(config.map);
  if (params.n() < 2) fail(ErrorKind::Config, "datasets need n >= 2 for C_LZ");
  const FrequencyTable table =
      sample_distribution(params, config.samples, config.seed, {.first_shard = 0, .threads = config.threads});
  ComplexityScale scale = make_scale(config, table);
  Dataset ds = build_dataset(table, scale);
  return {params, scale, std::move(ds)};
}

}  // namespace simbias
