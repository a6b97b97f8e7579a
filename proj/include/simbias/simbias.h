/*
 * C interface to the simbias library.
 *
 * Every object is an opaque handle created and destroyed through this API.
 * Functions return an sb_status; on failure a human-readable message for the
 * calling thread is available from sb_last_error() until the next failing
 * call on that thread. Strings returned through char** must be released with
 * sb_string_free(). Handles may be used from several threads as long as no
 * thread mutates a handle that another thread is reading.
 */
#ifndef SIMBIAS_H
#define SIMBIAS_H

#include <stddef.h>
#include <stdint.h>

#if defined(SIMBIAS_BUILDING_LIBRARY)
#define SIMBIAS_API __attribute__((visibility("default")))
#else
#define SIMBIAS_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum sb_status {
  SB_OK = 0,
  SB_ERR_INVALID_ARGUMENT = 1, /* null pointer, bad enum value, index out of range */
  SB_ERR_DOMAIN = 2,
  SB_ERR_CONFIG = 3,
  SB_ERR_FIT = 4,
  SB_ERR_IO = 5,
  SB_ERR_PARSE = 6,
  SB_ERR_INTERNAL = 7
} sb_status;

typedef enum sb_boundary { SB_BOUNDARY_CLAMP = 0, SB_BOUNDARY_RESAMPLE = 1 } sb_boundary;

typedef enum sb_norm { SB_NORM_CORPUS = 0, SB_NORM_EXHAUSTIVE = 1, SB_NORM_OBSERVED = 2 } sb_norm;

typedef enum sb_scenario_kind {
  SB_SCENARIO_EXPLICIT = 0,    /* run of `length` identical symbols */
  SB_SCENARIO_POWER_TOWER = 1, /* run of m^m symbols, m = `length` */
  SB_SCENARIO_MAP_DERIVED = 2  /* run of zeros before the logistic orbit crosses `threshold` */
} sb_scenario_kind;

typedef struct sb_config sb_config;
typedef struct sb_dataset sb_dataset;

typedef struct sb_row {
  char pattern[65]; /* '0'/'1' text, NUL terminated */
  uint64_t count;
  double probability;
  double c_lz;
  double k_tilde;
} sb_row;

typedef struct sb_metrics {
  int fit_ok; /* 0 when fewer than two complexity bins are populated */
  double slope;       /* d log2(P) / d K~ of the binned-max envelope */
  double intercept;
  double slope_log10; /* same envelope against log10(P) */
  size_t distinct_patterns;
  double entropy_bits;
  double max_probability;
  int has_spearman;
  double spearman_rho;
} sb_metrics;

typedef struct sb_scenario {
  sb_scenario_kind kind;
  uint64_t length;
  double mu;
  double x0_log10;
  double threshold;
  int observed_symbol;
} sb_scenario;

typedef struct sb_prediction {
  double run_length;
  double laplace_next_same;
  double laplace_trend_break;
  double ap_next_same;
  double ap_trend_break;
  double k_bits_used;
  uint64_t transition_lower_bound; /* map-derived scenarios only */
} sb_prediction;

SIMBIAS_API const char* sb_version(void);
SIMBIAS_API const char* sb_status_string(sb_status status);
SIMBIAS_API const char* sb_last_error(void);
SIMBIAS_API void sb_string_free(char* s);

/* Experiment configuration. Defaults: mu=1, eps=0, delta=0, n=25, skip=0,
 * clamp, 10^6 samples, seed 1, corpus normalization, unit bins. */
SIMBIAS_API sb_status sb_config_create(sb_config** out);
SIMBIAS_API void sb_config_destroy(sb_config* config);
SIMBIAS_API sb_status sb_config_set_mu(sb_config* config, double mu);
SIMBIAS_API sb_status sb_config_set_eps(sb_config* config, double eps);
SIMBIAS_API sb_status sb_config_set_delta(sb_config* config, double delta);
SIMBIAS_API sb_status sb_config_set_length(sb_config* config, int n);
SIMBIAS_API sb_status sb_config_set_transient_skip(sb_config* config, int skip);
SIMBIAS_API sb_status sb_config_set_boundary(sb_config* config, sb_boundary boundary);
SIMBIAS_API sb_status sb_config_set_samples(sb_config* config, uint64_t samples);
SIMBIAS_API sb_status sb_config_set_seed(sb_config* config, uint64_t seed);
SIMBIAS_API sb_status sb_config_set_norm(sb_config* config, sb_norm norm);
SIMBIAS_API sb_status sb_config_set_corpus_size(sb_config* config, uint64_t size);
SIMBIAS_API sb_status sb_config_set_corpus_seed(sb_config* config, uint64_t seed);
SIMBIAS_API sb_status sb_config_set_bin_width(sb_config* config, double width);
SIMBIAS_API sb_status sb_config_set_exclude_singletons(sb_config* config, int exclude);
SIMBIAS_API sb_status sb_config_set_threads(sb_config* config, unsigned threads);
SIMBIAS_API sb_status sb_config_to_json(const sb_config* config, char** json_out);

/* Samples the configured map and builds the complexity-probability dataset. */
SIMBIAS_API sb_status sb_simulate(const sb_config* config, sb_dataset** out);
/* Loads a dataset CSV; a "<stem>.meta.json" sidecar next to it is picked up
 * when present. */
SIMBIAS_API sb_status sb_dataset_load(const char* csv_path, sb_dataset** out);
SIMBIAS_API void sb_dataset_destroy(sb_dataset* dataset);
SIMBIAS_API sb_status sb_dataset_row_count(const sb_dataset* dataset, size_t* out);
SIMBIAS_API sb_status sb_dataset_total_samples(const sb_dataset* dataset, uint64_t* out);
SIMBIAS_API sb_status sb_dataset_clipped_rows(const sb_dataset* dataset, size_t* out);
SIMBIAS_API sb_status sb_dataset_get_row(const sb_dataset* dataset, size_t index, sb_row* out);
/* Writes the CSV and, if the dataset carries metadata, the sidecar JSON.
 * Both files are replaced atomically. */
SIMBIAS_API sb_status sb_dataset_write(const sb_dataset* dataset, const char* csv_path);
SIMBIAS_API sb_status sb_dataset_metrics(const sb_dataset* dataset, double bin_width,
                                         int exclude_singletons, sb_metrics* out);
/* Fit + metrics JSON. A failed fit is reported inside the JSON, not as an
 * error status. */
SIMBIAS_API sb_status sb_dataset_analyze(const sb_dataset* dataset, double bin_width,
                                         int exclude_singletons, char** json_out);

SIMBIAS_API sb_status sb_write_file(const char* path, const char* contents);

/* Primitives; bit strings are '0'/'1' text with the first symbol first. */
SIMBIAS_API sb_status sb_lz76_phrase_count(const char* bits, int* out);
SIMBIAS_API sb_status sb_c_lz(const char* bits, double* out);
SIMBIAS_API double sb_bound_curve(double a, double b, double k);
SIMBIAS_API sb_status sb_laplace_predict(uint64_t k_same, uint64_t n, double* out);
SIMBIAS_API sb_status sb_ap_predict(double k_bits, double* out);
SIMBIAS_API sb_status sb_transition_index(double mu, double x0_log10, double threshold,
                                          uint64_t* n_star, uint64_t* lower_bound);

SIMBIAS_API sb_status sb_induct(const sb_scenario* scenario, sb_prediction* out);
SIMBIAS_API sb_status sb_induct_json(const sb_scenario* scenario, char** json_out);

#ifdef __cplusplus
}
#endif

#endif /* SIMBIAS_H */
