#pragma once

#include <cstdint>
#include <string_view>

#include "simbias/complexity.hpp"
#include "simbias/estimator.hpp"
#include "simbias/map_engine.hpp"

namespace simbias {

enum class NormMode { Corpus, Exhaustive, Observed };

std::string_view to_string(NormMode mode) noexcept;
NormMode parse_norm_mode(std::string_view text);

// Everything needed to regenerate one dataset.
struct ExperimentConfig {
  MapSettings map;
  std::uint64_t samples = kDefaultSamples;
  std::uint64_t seed = 1;
  NormMode norm = NormMode::Corpus;
  std::uint64_t corpus_size = kDefaultCorpusSize;
  std::uint64_t corpus_seed = kDefaultCorpusSeed;
  FitOptions fit;
  unsigned threads = 0;
};

struct ExperimentResult {
  MapParams params;
  ComplexityScale scale;
  Dataset dataset;
};

ComplexityScale make_scale(const ExperimentConfig& config, const FrequencyTable& table);

// sample_distribution + scale + build_dataset.
ExperimentResult run_experiment(const ExperimentConfig& config);

}  // namespace simbias
