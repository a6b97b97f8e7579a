#include "simbias/io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <system_error>
#include <unistd.h>

#include "simbias/error.hpp"

namespace simbias {

std::string format_real(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

void write_dataset_csv(std::ostream& out, const Dataset& ds) {
  out << kDatasetHeader << '\n';
  for (const auto& row : ds.rows) {
    out << row.pattern.to_text() << ',' << row.count << ',' << format_real(row.probability) << ','
        << format_real(row.c_lz) << ',' << format_real(row.k_tilde) << '\n';
  }
}

namespace {

constexpr const char* kColumns[] = {"pattern", "count", "probability", "c_lz", "k_tilde"};

[[noreturn]] void parse_fail(std::size_t line, int column, const std::string& why) {
  fail(ErrorKind::Parse, "dataset line " + std::to_string(line) + ", column '" + kColumns[column] +
                             "': " + why);
}

template <class T>
T parse_number(std::string_view field, std::size_t line, int column) {
  T value{};
  const auto* first = field.data();
  const auto* last = field.data() + field.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc{} || ptr != last) parse_fail(line, column, "malformed number '" + std::string(field) + "'");
  return value;
}

}  // namespace

Dataset read_dataset_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) fail(ErrorKind::Parse, "dataset is empty; expected a header line");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != kDatasetHeader)
    fail(ErrorKind::Parse, "dataset header must be '" + std::string(kDatasetHeader) + "', got '" + line + "'");

  Dataset ds;
  int length = 0;
  for (std::size_t line_no = 2; std::getline(in, line); ++line_no) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;

    std::string_view rest = line;
    std::string_view fields[5];
    int nf = 0;
    while (true) {
      const auto comma = rest.find(',');
      if (nf == 5) parse_fail(line_no, 4, "too many fields");
      fields[nf++] = rest.substr(0, comma);
      if (comma == std::string_view::npos) break;
      rest.remove_prefix(comma + 1);
    }
    if (nf != 5) parse_fail(line_no, nf, "missing field");

    DatasetRow row;
    try {
      row.pattern = SymbolString::from_text(fields[0]);
    } catch (const Error& e) {
      parse_fail(line_no, 0, e.what());
    }
    if (length == 0) length = row.pattern.size();
    if (row.pattern.size() != length) parse_fail(line_no, 0, "pattern length differs from earlier rows");
    row.count = parse_number<std::uint64_t>(fields[1], line_no, 1);
    row.probability = parse_number<double>(fields[2], line_no, 2);
    row.c_lz = parse_number<double>(fields[3], line_no, 3);
    row.k_tilde = parse_number<double>(fields[4], line_no, 4);
    if (row.count == 0) parse_fail(line_no, 1, "count must be positive");
    if (!std::isfinite(row.c_lz)) parse_fail(line_no, 3, "value is not finite");
    if (!std::isfinite(row.k_tilde)) parse_fail(line_no, 4, "value is not finite");
    if (!(row.probability > 0.0 && row.probability <= 1.0)) parse_fail(line_no, 2, "probability outside (0, 1]");
    ds.total_samples += row.count;
    ds.rows.push_back(row);
  }
  return ds;
}

Dataset read_dataset_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::Io, "cannot open dataset '" + path.string() + "'");
  return read_dataset_csv(in);
}

Json to_json(const MapSettings& s) {
  Json j;
  j["mu"] = s.mu;
  j["eps"] = s.eps;
  j["delta"] = s.delta;
  j["n"] = s.n;
  j["transient_skip"] = s.transient_skip;
  j["boundary"] = std::string(to_string(s.boundary));
  return j;
}

Json to_json(const ComplexityScale& scale) {
  Json j;
  j["n"] = scale.n;
  j["log2_M"] = scale.log2_M;
  j["min_c"] = scale.min_c;
  j["max_c"] = scale.max_c;
  j["max_c_method"] = std::string(to_string(scale.max_c_method));
  if (scale.max_c_method == MaxComplexityMethod::RandomCorpus) {
    j["corpus_size"] = scale.corpus_size;
    j["corpus_seed"] = scale.corpus_seed;
  }
  return j;
}

Json to_json(const ExperimentConfig& c) {
  Json j;
  j["params"] = to_json(c.map);
  j["samples"] = c.samples;
  j["seed"] = c.seed;
  j["norm"] = std::string(to_string(c.norm));
  j["corpus_size"] = c.corpus_size;
  j["corpus_seed"] = c.corpus_seed;
  j["bin_width"] = c.fit.bin_width;
  j["exclude_singletons"] = c.fit.exclude_singletons;
  return j;
}

Json to_json(const BoundFit& fit) {
  Json j;
  j["method"] = fit.method;
  j["slope"] = fit.slope;
  j["intercept"] = fit.intercept;
  j["slope_log10"] = fit.slope_log10;
  j["bin_width"] = fit.bin_width;
  Json bins = Json::array();
  for (const auto& p : fit.bin_points) bins.push_back({{"k_center", p.k_center}, {"max_log2_p", p.max_log2_p}});
  j["bins"] = std::move(bins);
  return j;
}

Json to_json(const BiasMetrics& m) {
  Json j;
  j["entropy_bits"] = m.entropy_bits;
  j["distinct_patterns"] = m.distinct_patterns;
  j["max_probability"] = m.max_probability;
  j["spearman_rho"] = m.spearman_rho ? Json(*m.spearman_rho) : Json(nullptr);
  return j;
}

Json to_json(const PredictionReport& r) {
  Json j;
  j["scenario"] = r.scenario;
  j["run_length"] = r.run_length;
  j["run_length_log10"] = r.run_length_log10;
  j["observed_symbol"] = r.observed_symbol;
  j["laplace_next_same"] = r.laplace_next_same;
  j["laplace_trend_break"] = r.laplace_trend_break;
  j["ap_next_same"] = r.ap_next_same;
  j["ap_trend_break"] = r.ap_trend_break;
  j["k_bits_used"] = r.k_bits_used;
  if (r.scenario == "map_derived") j["transition_lower_bound"] = r.transition_lower_bound;
  j["notes"] = r.notes;
  return j;
}

namespace {

template <class T>
T get_or(const Json& j, const char* key, T fallback) {
  const auto it = j.find(key);
  return it == j.end() ? fallback : it->template get<T>();
}

}  // namespace

MapSettings map_settings_from_json(const Json& j) {
  try {
    MapSettings s;
    s.mu = j.at("mu").get<double>();
    s.eps = get_or(j, "eps", s.eps);
    s.delta = get_or(j, "delta", s.delta);
    s.n = get_or(j, "n", s.n);
    s.transient_skip = get_or(j, "transient_skip", s.transient_skip);
    s.boundary = parse_boundary_policy(get_or<std::string>(j, "boundary", "clamp"));
    return s;
  } catch (const Json::exception& e) {
    fail(ErrorKind::Parse, std::string("map parameters: ") + e.what());
  }
}

ComplexityScale scale_from_json(const Json& j) {
  try {
    ComplexityScale s;
    s.n = j.at("n").get<int>();
    s.log2_M = j.at("log2_M").get<double>();
    s.min_c = j.at("min_c").get<double>();
    s.max_c = j.at("max_c").get<double>();
    const auto method = j.at("max_c_method").get<std::string>();
    if (method == "exhaustive") s.max_c_method = MaxComplexityMethod::Exhaustive;
    else if (method == "random_corpus") s.max_c_method = MaxComplexityMethod::RandomCorpus;
    else if (method == "observed_sample") s.max_c_method = MaxComplexityMethod::ObservedSample;
    else fail(ErrorKind::Parse, "unknown max_c_method '" + method + "'");
    s.corpus_size = get_or<std::uint64_t>(j, "corpus_size", 0);
    s.corpus_seed = get_or<std::uint64_t>(j, "corpus_seed", 0);
    return s;
  } catch (const Json::exception& e) {
    fail(ErrorKind::Parse, std::string("complexity scale: ") + e.what());
  }
}

ExperimentConfig config_from_json(const Json& j) {
  try {
    ExperimentConfig c;
    c.map = map_settings_from_json(j.at("params"));
    c.samples = get_or(j, "samples", c.samples);
    c.seed = get_or(j, "seed", c.seed);
    c.norm = parse_norm_mode(get_or<std::string>(j, "norm", "corpus"));
    c.corpus_size = get_or(j, "corpus_size", c.corpus_size);
    c.corpus_seed = get_or(j, "corpus_seed", c.corpus_seed);
    c.fit.bin_width = get_or(j, "bin_width", c.fit.bin_width);
    c.fit.exclude_singletons = get_or(j, "exclude_singletons", c.fit.exclude_singletons);
    return c;
  } catch (const Json::exception& e) {
    fail(ErrorKind::Parse, std::string("experiment config: ") + e.what());
  }
}

Json dataset_metadata(const ExperimentConfig& config, const ExperimentResult& result) {
  Json j;
  j["format"] = "simbias-dataset-meta/1";
  j["config"] = to_json(config);
  j["scale"] = to_json(result.scale);
  j["total_samples"] = result.dataset.total_samples;
  j["distinct_patterns"] = result.dataset.rows.size();
  j["clipped_rows"] = result.dataset.clipped_rows;
  return j;
}

Json analysis_json(const Dataset& ds, const FitOptions& options, const std::optional<Json>& metadata) {
  Json j;
  try {
    j.update(to_json(fit_upper_bound(ds, options)));
    j["fit_error"] = nullptr;
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::Fit) throw;
    j["method"] = nullptr;
    j["slope"] = nullptr;
    j["intercept"] = nullptr;
    j["slope_log10"] = nullptr;
    j["bin_width"] = options.bin_width;
    j["bins"] = Json::array();
    j["fit_error"] = e.what();
  }
  j["exclude_singletons"] = options.exclude_singletons;
  j.update(to_json(bias_metrics(ds)));
  j["total_samples"] = ds.total_samples;
  j["reference_bound"] = {{"a", 1.0}, {"b", 0.0}};
  if (metadata) {
    j["params"] = metadata->at("config").at("params");
    j["seed"] = metadata->at("config").at("seed");
    j["samples"] = metadata->at("config").at("samples");
    j["scale"] = metadata->at("scale");
  } else {
    j["params"] = nullptr;
    j["seed"] = nullptr;
  }
  return j;
}

std::filesystem::path metadata_path_for(const std::filesystem::path& csv) {
  auto p = csv;
  p.replace_extension(".meta.json");
  return p;
}

void write_file_atomic(const std::filesystem::path& path, const std::string& contents) {
  auto tmp = path;
  tmp += ".tmp." + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) fail(ErrorKind::Io, "cannot write '" + tmp.string() + "'");
    out << contents;
    out.flush();
    if (!out) fail(ErrorKind::Io, "short write to '" + tmp.string() + "'");
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    fail(ErrorKind::Io, "cannot move output into place at '" + path.string() + "'");
  }
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorKind::Io, "cannot open '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace simbias
