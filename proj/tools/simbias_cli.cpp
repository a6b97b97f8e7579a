// simbias command-line front end. Talks to the library only through the C API.

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <memory>
#include <mutex>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "simbias/simbias.h"

namespace fs = std::filesystem;

namespace {

constexpr const char* kWorkersEnv = "SIMBIAS_WORKERS";

struct CliError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void check(sb_status status, const std::string& context) {
  if (status != SB_OK)
    throw CliError(context + ": " + sb_status_string(status) + ": " + sb_last_error());
}

struct ConfigDeleter {
  void operator()(sb_config* c) const { sb_config_destroy(c); }
};
struct DatasetDeleter {
  void operator()(sb_dataset* d) const { sb_dataset_destroy(d); }
};
struct StringDeleter {
  void operator()(char* s) const { sb_string_free(s); }
};
using ConfigPtr = std::unique_ptr<sb_config, ConfigDeleter>;
using DatasetPtr = std::unique_ptr<sb_dataset, DatasetDeleter>;
using StringPtr = std::unique_ptr<char, StringDeleter>;

unsigned worker_budget() {
  if (const char* env = std::getenv(kWorkersEnv)) {
    const long v = std::strtol(env, nullptr, 10);
    if (v > 0) return static_cast<unsigned>(v);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

struct MapFlags {
  double mu = 1.0;
  double eps = 0.0;
  double delta = 0.0;
  int n = 25;
  int skip = 0;
  std::uint64_t samples = 1'000'000;
  std::uint64_t seed = 1;
  std::string boundary = "clamp";
  std::string norm = "corpus";
  std::uint64_t corpus_size = 1'000'000;
  double bin_width = 1.0;
  bool exclude_singletons = false;
};

void add_common_flags(CLI::App* cmd, MapFlags& f) {
  cmd->add_option("--n", f.n, "Symbol string length")->check(CLI::Range(2, 64))->capture_default_str();
  cmd->add_option("--samples", f.samples, "Monte Carlo samples per dataset")->capture_default_str();
  cmd->add_option("--seed", f.seed, "Sampling seed")->capture_default_str();
  cmd->add_option("--boundary", f.boundary, "Out-of-range policy")
      ->check(CLI::IsMember({"clamp", "resample"}))
      ->capture_default_str();
  cmd->add_option("--norm", f.norm, "max C_LZ normalization")
      ->check(CLI::IsMember({"corpus", "exhaustive", "observed"}))
      ->capture_default_str();
  cmd->add_option("--corpus-size", f.corpus_size, "Random corpus size for --norm corpus")->capture_default_str();
  cmd->add_option("--bin-width", f.bin_width, "Envelope fit bin width")->capture_default_str();
  cmd->add_flag("--exclude-singletons", f.exclude_singletons, "Drop count-1 patterns from the fit");
}

ConfigPtr make_config(const MapFlags& f, unsigned threads) {
  sb_config* raw = nullptr;
  check(sb_config_create(&raw), "config");
  ConfigPtr cfg(raw);
  check(sb_config_set_mu(raw, f.mu), "--mu");
  check(sb_config_set_eps(raw, f.eps), "--eps");
  check(sb_config_set_delta(raw, f.delta), "--delta");
  check(sb_config_set_length(raw, f.n), "--n");
  check(sb_config_set_transient_skip(raw, f.skip), "--skip-transient");
  check(sb_config_set_samples(raw, f.samples), "--samples");
  check(sb_config_set_seed(raw, f.seed), "--seed");
  check(sb_config_set_boundary(raw, f.boundary == "resample" ? SB_BOUNDARY_RESAMPLE : SB_BOUNDARY_CLAMP), "--boundary");
  const sb_norm norm = f.norm == "exhaustive" ? SB_NORM_EXHAUSTIVE
                       : f.norm == "observed" ? SB_NORM_OBSERVED
                                              : SB_NORM_CORPUS;
  check(sb_config_set_norm(raw, norm), "--norm");
  check(sb_config_set_corpus_size(raw, f.corpus_size), "--corpus-size");
  check(sb_config_set_bin_width(raw, f.bin_width), "--bin-width");
  check(sb_config_set_exclude_singletons(raw, f.exclude_singletons ? 1 : 0), "--exclude-singletons");
  check(sb_config_set_threads(raw, threads), "threads");
  return cfg;
}

fs::path sibling(const fs::path& csv, const std::string& suffix) {
  auto p = csv;
  p.replace_extension(suffix);
  return p;
}

void write_text(const fs::path& path, const std::string& text) {
  check(sb_write_file(path.c_str(), text.c_str()), "write " + path.string());
}

std::string analyze_to_string(const sb_dataset* ds, double bin_width, bool exclude) {
  char* json = nullptr;
  check(sb_dataset_analyze(ds, bin_width, exclude ? 1 : 0, &json), "analyze");
  StringPtr guard(json);
  return json;
}

int cmd_simulate(const MapFlags& f, const fs::path& out) {
  auto cfg = make_config(f, worker_budget());
  sb_dataset* raw = nullptr;
  check(sb_simulate(cfg.get(), &raw), "simulate");
  DatasetPtr ds(raw);
  if (out.has_parent_path()) fs::create_directories(out.parent_path());
  check(sb_dataset_write(ds.get(), out.c_str()), "write " + out.string());

  std::size_t rows = 0, clipped = 0;
  sb_dataset_row_count(ds.get(), &rows);
  sb_dataset_clipped_rows(ds.get(), &clipped);
  std::cerr << "wrote " << out.string() << " (" << rows << " patterns) and "
            << sibling(out, ".meta.json").string() << '\n';
  if (clipped > 0)
    std::cerr << "warning: " << clipped << " patterns exceeded the corpus max C_LZ; K~ clipped to n\n";
  return 0;
}

int cmd_analyze(const fs::path& dataset, double bin_width, bool exclude, const std::optional<fs::path>& out) {
  sb_dataset* raw = nullptr;
  check(sb_dataset_load(dataset.c_str(), &raw), "load " + dataset.string());
  DatasetPtr ds(raw);
  const std::string json = analyze_to_string(ds.get(), bin_width, exclude);

  sb_metrics m{};
  check(sb_dataset_metrics(ds.get(), bin_width, exclude ? 1 : 0, &m), "metrics");
  if (!m.fit_ok) std::cerr << "fit error: fewer than two populated complexity bins; metrics still written\n";

  const fs::path target = out.value_or(sibling(dataset, ".fit.json"));
  write_text(target, json);
  std::cerr << "wrote " << target.string() << '\n';
  return 0;
}

struct Cell {
  double mu = 0, eps = 0, delta = 0;
  int skip = 0;
  std::string stem;
  bool ok = false;
  sb_metrics metrics{};
  std::string error;
};

std::string fmt(double v) {
  std::ostringstream ss;
  ss.precision(17);
  ss << v;
  return ss.str();
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c == '\n' ? ' ' : c;
  }
  return out + "\"";
}

int cmd_sweep(const MapFlags& base, const std::vector<double>& mus, const std::vector<double>& epss,
              const std::vector<double>& deltas, const std::vector<int>& skips, const fs::path& dir) {
  fs::create_directories(dir);
  std::vector<Cell> cells;
  for (double mu : mus)
    for (double eps : epss)
      for (double delta : deltas)
        for (int skip : skips) {
          Cell c{};
          c.mu = mu;
          c.eps = eps;
          c.delta = delta;
          c.skip = skip;
          c.stem = "cell_mu" + fmt(mu) + "_eps" + fmt(eps) + "_delta" + fmt(delta) + "_skip" + std::to_string(skip);
          cells.push_back(std::move(c));
        }

  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < cells.size(); i = next++) {
      Cell& c = cells[i];
      try {
        MapFlags f = base;
        f.mu = c.mu;
        f.eps = c.eps;
        f.delta = c.delta;
        f.skip = c.skip;
        auto cfg = make_config(f, 1);
        sb_dataset* raw = nullptr;
        check(sb_simulate(cfg.get(), &raw), "simulate");
        DatasetPtr ds(raw);
        const fs::path csv = dir / (c.stem + ".csv");
        check(sb_dataset_write(ds.get(), csv.c_str()), "write " + csv.string());
        write_text(sibling(csv, ".fit.json"), analyze_to_string(ds.get(), f.bin_width, f.exclude_singletons));
        check(sb_dataset_metrics(ds.get(), f.bin_width, f.exclude_singletons ? 1 : 0, &c.metrics), "metrics");
        c.ok = true;
      } catch (const std::exception& e) {
        c.error = e.what();
      }
    }
  };
  const unsigned workers = std::min<std::size_t>(worker_budget(), std::max<std::size_t>(cells.size(), 1));
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < workers; ++t) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();

  std::ostringstream summary;
  summary << "mu,eps,delta,skip_transient,n,boundary,norm,samples,seed,status,distinct_patterns,entropy_bits,max_probability,"
             "spearman_rho,slope,slope_log10,intercept,dataset,error\n";
  int failures = 0;
  for (const auto& c : cells) {
    summary << fmt(c.mu) << ',' << fmt(c.eps) << ',' << fmt(c.delta) << ',' << c.skip << ',' << base.n << ','
            << base.boundary << ',' << base.norm << ',' << base.samples << ',' << base.seed << ',';
    if (!c.ok) {
      ++failures;
      summary << "failed,,,,,,,,," << csv_escape(c.error) << '\n';
      std::cerr << c.stem << ": " << c.error << '\n';
      continue;
    }
    const auto& m = c.metrics;
    summary << "ok," << m.distinct_patterns << ',' << fmt(m.entropy_bits) << ',' << fmt(m.max_probability) << ','
            << (m.has_spearman ? fmt(m.spearman_rho) : "") << ',' << (m.fit_ok ? fmt(m.slope) : "") << ','
            << (m.fit_ok ? fmt(m.slope_log10) : "") << ',' << (m.fit_ok ? fmt(m.intercept) : "") << ','
            << c.stem << ".csv," << (m.fit_ok ? "" : "fit: fewer than two populated bins") << '\n';
  }
  write_text(dir / "summary.csv", summary.str());
  std::cerr << "sweep: " << cells.size() - failures << "/" << cells.size() << " cells ok; summary at "
            << (dir / "summary.csv").string() << '\n';
  return failures == 0 ? 0 : 1;
}

int cmd_induct(const sb_scenario& scenario, const std::optional<fs::path>& out) {
  char* json = nullptr;
  check(sb_induct_json(&scenario, &json), "induct");
  StringPtr guard(json);
  if (out) {
    write_text(*out, json);
  } else {
    std::cout << json;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Simplicity bias in the digitized random logistic map"};
  app.require_subcommand(1);
  app.footer(std::string("Environment: ") + kWorkersEnv + " caps worker threads.");

  MapFlags sim;
  fs::path sim_out = "dataset.csv";
  auto* simulate = app.add_subcommand("simulate", "Sample the map and write a complexity-probability dataset");
  simulate->add_option("--mu", sim.mu, "Logistic parameter in (0, 4]")->capture_default_str();
  simulate->add_option("--eps", sim.eps, "Dynamical noise half-width")->capture_default_str();
  simulate->add_option("--delta", sim.delta, "Measurement noise half-width")->capture_default_str();
  simulate->add_option("--skip-transient", sim.skip, "Iterations discarded before recording")->capture_default_str();
  add_common_flags(simulate, sim);
  simulate->add_option("--out", sim_out, "Dataset CSV path")->capture_default_str();

  fs::path an_dataset;
  double an_bin_width = 1.0;
  bool an_exclude = false;
  std::optional<fs::path> an_out;
  auto* analyze = app.add_subcommand("analyze", "Fit the upper-bound envelope and bias metrics of a dataset");
  analyze->add_option("dataset", an_dataset, "Dataset CSV")->required()->check(CLI::ExistingFile);
  analyze->add_option("--bin-width", an_bin_width, "Envelope fit bin width")->capture_default_str();
  analyze->add_flag("--exclude-singletons", an_exclude, "Drop count-1 patterns from the fit");
  analyze->add_option("--out", an_out, "Output JSON (default: <dataset>.fit.json)");

  MapFlags sw;
  std::vector<double> sw_mu, sw_eps, sw_delta{0.0};
  std::vector<int> sw_skip{0};
  fs::path sw_out;
  auto* sweep = app.add_subcommand("sweep", "Run a Cartesian grid of experiments");
  sweep->add_option("--mu", sw_mu, "Comma-separated mu values")->delimiter(',')->required();
  sweep->add_option("--eps", sw_eps, "Comma-separated eps values")->delimiter(',')->required();
  sweep->add_option("--delta", sw_delta, "Comma-separated delta values")->delimiter(',');
  sweep->add_option("--skip-transient", sw_skip, "Comma-separated transient skips")->delimiter(',');
  add_common_flags(sweep, sw);
  sweep->add_option("--out", sw_out, "Output directory")->required();

  std::optional<std::uint64_t> explicit_n, tower_m;
  bool map_derived = false;
  double in_mu = 2.5, in_x0_log10 = 0.0, in_threshold = 0.5;
  int in_symbol = 1;
  std::optional<fs::path> in_out;
  auto* induct = app.add_subcommand("induct", "Compare Laplace and algorithmic-probability predictions");
  auto* o_explicit = induct->add_option("--explicit", explicit_n, "Run of N identical symbols");
  auto* o_tower = induct->add_option("--power-tower", tower_m, "Run of m^m identical symbols");
  auto* o_map = induct->add_flag("--map-derived", map_derived, "Run of zeros before the orbit crosses the threshold");
  o_explicit->excludes(o_tower)->excludes(o_map);
  o_tower->excludes(o_map);
  induct->add_option("--mu", in_mu, "Map parameter for --map-derived")->capture_default_str();
  induct->add_option("--x0-log10", in_x0_log10, "log10 of x0 for --map-derived");
  induct->add_option("--threshold", in_threshold, "Digitization threshold")->capture_default_str();
  induct->add_option("--observed-symbol", in_symbol, "Symbol of the observed run")->check(CLI::Range(0, 1));
  induct->add_option("--out", in_out, "Output JSON (default: stdout)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*simulate) return cmd_simulate(sim, sim_out);
    if (*analyze) return cmd_analyze(an_dataset, an_bin_width, an_exclude, an_out);
    if (*sweep) return cmd_sweep(sw, sw_mu, sw_eps, sw_delta, sw_skip, sw_out);
    if (*induct) {
      sb_scenario s{};
      s.observed_symbol = in_symbol;
      s.threshold = in_threshold;
      if (explicit_n) {
        s.kind = SB_SCENARIO_EXPLICIT;
        s.length = *explicit_n;
      } else if (tower_m) {
        s.kind = SB_SCENARIO_POWER_TOWER;
        s.length = *tower_m;
      } else if (map_derived) {
        if (induct->count("--x0-log10") == 0) throw CliError("--map-derived needs --x0-log10");
        s.kind = SB_SCENARIO_MAP_DERIVED;
        s.mu = in_mu;
        s.x0_log10 = in_x0_log10;
      } else {
        throw CliError("induct needs one of --explicit, --power-tower, --map-derived");
      }
      return cmd_induct(s, in_out);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 1;
}
