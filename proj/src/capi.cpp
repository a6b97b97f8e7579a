#include "simbias/simbias.h"

#include <cstring>
#include <filesystem>
#include <new>
#include <optional>
#include <sstream>
#include <string>

#include "simbias/complexity.hpp"
#include "simbias/error.hpp"
#include "simbias/estimator.hpp"
#include "simbias/experiment.hpp"
#include "simbias/induction.hpp"
#include "simbias/io.hpp"

struct sb_config {
  simbias::ExperimentConfig config;
};

struct sb_dataset {
  simbias::Dataset dataset;
  std::optional<simbias::Json> metadata;
};

namespace {

thread_local std::string g_last_error;

sb_status to_status(simbias::ErrorKind kind) {
  switch (kind) {
    case simbias::ErrorKind::Domain: return SB_ERR_DOMAIN;
    case simbias::ErrorKind::Config: return SB_ERR_CONFIG;
    case simbias::ErrorKind::Fit: return SB_ERR_FIT;
    case simbias::ErrorKind::Io: return SB_ERR_IO;
    case simbias::ErrorKind::Parse: return SB_ERR_PARSE;
  }
  return SB_ERR_INTERNAL;
}

sb_status set_error(sb_status status, const std::string& message) {
  g_last_error = message;
  return status;
}

// Runs body, translating exceptions into status codes.
template <class Body>
sb_status guarded(Body&& body) noexcept {
  try {
    body();
    return SB_OK;
  } catch (const simbias::Error& e) {
    return set_error(to_status(e.kind()), e.what());
  } catch (const std::bad_alloc&) {
    return set_error(SB_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return set_error(SB_ERR_INTERNAL, e.what());
  } catch (...) {
    return set_error(SB_ERR_INTERNAL, "unknown error");
  }
}

#define SB_REQUIRE(ptr)                                                          \
  do {                                                                           \
    if ((ptr) == nullptr) return set_error(SB_ERR_INVALID_ARGUMENT, #ptr " is null"); \
  } while (0)

char* duplicate(const std::string& s) {
  char* out = new char[s.size() + 1];
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

simbias::RunScenario to_scenario(const sb_scenario& s) {
  simbias::RunScenario out;
  out.observed_symbol = s.observed_symbol;
  switch (s.kind) {
    case SB_SCENARIO_EXPLICIT: out.run = simbias::ExplicitRun{s.length}; break;
    case SB_SCENARIO_POWER_TOWER: out.run = simbias::PowerTowerRun{s.length}; break;
    case SB_SCENARIO_MAP_DERIVED:
      out.run = simbias::MapDerivedRun{s.mu, s.x0_log10, s.threshold};
      break;
  }
  return out;
}

bool known_kind(sb_scenario_kind kind) {
  return kind == SB_SCENARIO_EXPLICIT || kind == SB_SCENARIO_POWER_TOWER || kind == SB_SCENARIO_MAP_DERIVED;
}

}  // namespace

extern "C" {

const char* sb_version(void) { return "0.1.0"; }

const char* sb_status_string(sb_status status) {
  switch (status) {
    case SB_OK: return "ok";
    case SB_ERR_INVALID_ARGUMENT: return "invalid argument";
    case SB_ERR_DOMAIN: return "domain error";
    case SB_ERR_CONFIG: return "configuration error";
    case SB_ERR_FIT: return "fit error";
    case SB_ERR_IO: return "i/o error";
    case SB_ERR_PARSE: return "parse error";
    case SB_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

const char* sb_last_error(void) { return g_last_error.c_str(); }

void sb_string_free(char* s) { delete[] s; }

sb_status sb_config_create(sb_config** out) {
  SB_REQUIRE(out);
  return guarded([&] { *out = new sb_config{}; });
}

void sb_config_destroy(sb_config* config) { delete config; }

// Setters validate eagerly so that errors point at the offending flag.
#define SB_SETTER(name, type, field, check, what)                               \
  sb_status name(sb_config* config, type value) {                               \
    SB_REQUIRE(config);                                                         \
    if (!(check)) return set_error(SB_ERR_CONFIG, what);                        \
    config->config.field = value;                                               \
    return SB_OK;                                                               \
  }

SB_SETTER(sb_config_set_mu, double, map.mu, value > 0.0 && value <= 4.0, "mu must lie in (0, 4]")
SB_SETTER(sb_config_set_eps, double, map.eps, value >= 0.0, "eps must be >= 0")
SB_SETTER(sb_config_set_delta, double, map.delta, value >= 0.0, "delta must be >= 0")
SB_SETTER(sb_config_set_length, int, map.n, value >= 2 && value <= 64, "n must lie in [2, 64]")
SB_SETTER(sb_config_set_transient_skip, int, map.transient_skip, value >= 0, "transient skip must be >= 0")
SB_SETTER(sb_config_set_samples, uint64_t, samples, value >= 1, "sample count must be >= 1")
SB_SETTER(sb_config_set_seed, uint64_t, seed, true, "")
SB_SETTER(sb_config_set_corpus_size, uint64_t, corpus_size, value >= 1, "corpus size must be >= 1")
SB_SETTER(sb_config_set_corpus_seed, uint64_t, corpus_seed, true, "")
SB_SETTER(sb_config_set_bin_width, double, fit.bin_width, value > 0.0, "bin width must be > 0")
SB_SETTER(sb_config_set_threads, unsigned, threads, true, "")

#undef SB_SETTER

sb_status sb_config_set_boundary(sb_config* config, sb_boundary boundary) {
  SB_REQUIRE(config);
  switch (boundary) {
    case SB_BOUNDARY_CLAMP: config->config.map.boundary = simbias::BoundaryPolicy::Clamp; return SB_OK;
    case SB_BOUNDARY_RESAMPLE: config->config.map.boundary = simbias::BoundaryPolicy::Resample; return SB_OK;
  }
  return set_error(SB_ERR_INVALID_ARGUMENT, "unknown boundary policy");
}

sb_status sb_config_set_norm(sb_config* config, sb_norm norm) {
  SB_REQUIRE(config);
  switch (norm) {
    case SB_NORM_CORPUS: config->config.norm = simbias::NormMode::Corpus; return SB_OK;
    case SB_NORM_EXHAUSTIVE: config->config.norm = simbias::NormMode::Exhaustive; return SB_OK;
    case SB_NORM_OBSERVED: config->config.norm = simbias::NormMode::Observed; return SB_OK;
  }
  return set_error(SB_ERR_INVALID_ARGUMENT, "unknown normalization mode");
}

sb_status sb_config_set_exclude_singletons(sb_config* config, int exclude) {
  SB_REQUIRE(config);
  config->config.fit.exclude_singletons = exclude != 0;
  return SB_OK;
}

sb_status sb_config_to_json(const sb_config* config, char** json_out) {
  SB_REQUIRE(config);
  SB_REQUIRE(json_out);
  return guarded([&] { *json_out = duplicate(simbias::to_json(config->config).dump(2) + "\n"); });
}

sb_status sb_simulate(const sb_config* config, sb_dataset** out) {
  SB_REQUIRE(config);
  SB_REQUIRE(out);
  return guarded([&] {
    auto result = simbias::run_experiment(config->config);
    auto meta = simbias::dataset_metadata(config->config, result);
    *out = new sb_dataset{std::move(result.dataset), std::move(meta)};
  });
}

sb_status sb_dataset_load(const char* csv_path, sb_dataset** out) {
  SB_REQUIRE(csv_path);
  SB_REQUIRE(out);
  return guarded([&] {
    auto ds = simbias::read_dataset_csv(std::filesystem::path(csv_path));
    std::optional<simbias::Json> meta;
    const auto meta_path = simbias::metadata_path_for(csv_path);
    if (std::filesystem::exists(meta_path)) {
      try {
        meta = simbias::Json::parse(simbias::read_file(meta_path));
      } catch (const simbias::Json::exception& e) {
        simbias::fail(simbias::ErrorKind::Parse, "metadata '" + meta_path.string() + "': " + e.what());
      }
    }
    *out = new sb_dataset{std::move(ds), std::move(meta)};
  });
}

void sb_dataset_destroy(sb_dataset* dataset) { delete dataset; }

sb_status sb_dataset_row_count(const sb_dataset* dataset, size_t* out) {
  SB_REQUIRE(dataset);
  SB_REQUIRE(out);
  *out = dataset->dataset.rows.size();
  return SB_OK;
}

sb_status sb_dataset_total_samples(const sb_dataset* dataset, uint64_t* out) {
  SB_REQUIRE(dataset);
  SB_REQUIRE(out);
  *out = dataset->dataset.total_samples;
  return SB_OK;
}

sb_status sb_dataset_clipped_rows(const sb_dataset* dataset, size_t* out) {
  SB_REQUIRE(dataset);
  SB_REQUIRE(out);
  *out = dataset->dataset.clipped_rows;
  return SB_OK;
}

sb_status sb_dataset_get_row(const sb_dataset* dataset, size_t index, sb_row* out) {
  SB_REQUIRE(dataset);
  SB_REQUIRE(out);
  if (index >= dataset->dataset.rows.size()) return set_error(SB_ERR_INVALID_ARGUMENT, "row index out of range");
  const auto& row = dataset->dataset.rows[index];
  const std::string text = row.pattern.to_text();
  std::memcpy(out->pattern, text.c_str(), text.size() + 1);
  out->count = row.count;
  out->probability = row.probability;
  out->c_lz = row.c_lz;
  out->k_tilde = row.k_tilde;
  return SB_OK;
}

sb_status sb_dataset_write(const sb_dataset* dataset, const char* csv_path) {
  SB_REQUIRE(dataset);
  SB_REQUIRE(csv_path);
  return guarded([&] {
    std::ostringstream csv;
    simbias::write_dataset_csv(csv, dataset->dataset);
    simbias::write_file_atomic(csv_path, csv.str());
    if (dataset->metadata)
      simbias::write_file_atomic(simbias::metadata_path_for(csv_path), dataset->metadata->dump(2) + "\n");
  });
}

sb_status sb_dataset_metrics(const sb_dataset* dataset, double bin_width, int exclude_singletons,
                             sb_metrics* out) {
  SB_REQUIRE(dataset);
  SB_REQUIRE(out);
  return guarded([&] {
    *out = sb_metrics{};
    try {
      const auto fit = simbias::fit_upper_bound(dataset->dataset, {bin_width, exclude_singletons != 0});
      out->fit_ok = 1;
      out->slope = fit.slope;
      out->intercept = fit.intercept;
      out->slope_log10 = fit.slope_log10;
    } catch (const simbias::Error& e) {
      if (e.kind() != simbias::ErrorKind::Fit) throw;
    }
    const auto m = simbias::bias_metrics(dataset->dataset);
    out->distinct_patterns = m.distinct_patterns;
    out->entropy_bits = m.entropy_bits;
    out->max_probability = m.max_probability;
    out->has_spearman = m.spearman_rho.has_value();
    out->spearman_rho = m.spearman_rho.value_or(0.0);
  });
}

sb_status sb_dataset_analyze(const sb_dataset* dataset, double bin_width, int exclude_singletons,
                             char** json_out) {
  SB_REQUIRE(dataset);
  SB_REQUIRE(json_out);
  return guarded([&] {
    const auto j = simbias::analysis_json(dataset->dataset, {bin_width, exclude_singletons != 0}, dataset->metadata);
    *json_out = duplicate(j.dump(2) + "\n");
  });
}

sb_status sb_write_file(const char* path, const char* contents) {
  SB_REQUIRE(path);
  SB_REQUIRE(contents);
  return guarded([&] { simbias::write_file_atomic(path, contents); });
}

sb_status sb_lz76_phrase_count(const char* bits, int* out) {
  SB_REQUIRE(bits);
  SB_REQUIRE(out);
  return guarded([&] {
    if (*bits == '\0') simbias::fail(simbias::ErrorKind::Domain, "LZ76 complexity of an empty string");
    *out = simbias::lz76_phrase_count(simbias::SymbolString::from_text(bits));
  });
}

sb_status sb_c_lz(const char* bits, double* out) {
  SB_REQUIRE(bits);
  SB_REQUIRE(out);
  return guarded([&] { *out = simbias::c_lz(simbias::SymbolString::from_text(bits)); });
}

double sb_bound_curve(double a, double b, double k) { return simbias::bound_curve(a, b, k); }

sb_status sb_laplace_predict(uint64_t k_same, uint64_t n, double* out) {
  SB_REQUIRE(out);
  return guarded([&] { *out = simbias::laplace_predict(k_same, n); });
}

sb_status sb_ap_predict(double k_bits, double* out) {
  SB_REQUIRE(out);
  return guarded([&] { *out = simbias::ap_predict(k_bits); });
}

sb_status sb_transition_index(double mu, double x0_log10, double threshold, uint64_t* n_star,
                              uint64_t* lower_bound) {
  return guarded([&] {
    if (lower_bound) *lower_bound = simbias::transition_lower_bound(mu, x0_log10, threshold);
    if (n_star) *n_star = simbias::find_transition_index(mu, x0_log10, threshold);
  });
}

sb_status sb_induct(const sb_scenario* scenario, sb_prediction* out) {
  SB_REQUIRE(scenario);
  SB_REQUIRE(out);
  if (!known_kind(scenario->kind)) return set_error(SB_ERR_INVALID_ARGUMENT, "unknown scenario kind");
  return guarded([&] {
    const auto r = simbias::compare_predictors(to_scenario(*scenario));
    out->run_length = r.run_length;
    out->laplace_next_same = r.laplace_next_same;
    out->laplace_trend_break = r.laplace_trend_break;
    out->ap_next_same = r.ap_next_same;
    out->ap_trend_break = r.ap_trend_break;
    out->k_bits_used = r.k_bits_used;
    out->transition_lower_bound = r.transition_lower_bound;
  });
}

sb_status sb_induct_json(const sb_scenario* scenario, char** json_out) {
  SB_REQUIRE(scenario);
  SB_REQUIRE(json_out);
  if (!known_kind(scenario->kind)) return set_error(SB_ERR_INVALID_ARGUMENT, "unknown scenario kind");
  return guarded([&] {
    const auto r = simbias::compare_predictors(to_scenario(*scenario));
    *json_out = duplicate(simbias::to_json(r).dump(2) + "\n");
  });
}

}  // extern "C"
