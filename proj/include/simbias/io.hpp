#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>

#include "json.hpp"

#include "simbias/complexity.hpp"
#include "simbias/estimator.hpp"
#include "simbias/experiment.hpp"
#include "simbias/induction.hpp"

namespace simbias {

using Json = nlohmann::ordered_json;

inline constexpr const char* kDatasetHeader = "pattern,count,probability,c_lz,k_tilde";

// 17 significant digits, "%.17g".
std::string format_real(double x);

void write_dataset_csv(std::ostream& out, const Dataset& ds);
// Parses the dataset CSV; throws Error(Parse) naming the line and column.
Dataset read_dataset_csv(std::istream& in);
Dataset read_dataset_csv(const std::filesystem::path& path);

Json to_json(const MapSettings& s);
Json to_json(const ComplexityScale& scale);
Json to_json(const ExperimentConfig& config);
Json to_json(const BoundFit& fit);
Json to_json(const BiasMetrics& metrics);
Json to_json(const PredictionReport& report);

MapSettings map_settings_from_json(const Json& j);
ComplexityScale scale_from_json(const Json& j);
ExperimentConfig config_from_json(const Json& j);

// Sidecar written next to a dataset: the generating config and the scale.
Json dataset_metadata(const ExperimentConfig& config, const ExperimentResult& result);

// Fit (or the fit error) plus bias metrics, the a=1, b=0 reference line and,
// when given, the metadata of the analyzed dataset.
Json analysis_json(const Dataset& ds, const FitOptions& options,
                   const std::optional<Json>& metadata);

// Path of the metadata sidecar for a dataset CSV: "x.csv" -> "x.meta.json".
std::filesystem::path metadata_path_for(const std::filesystem::path& csv);

// Writes through a temporary file in the same directory and renames it over
// `path`. Throws Error(Io).
void write_file_atomic(const std::filesystem::path& path, const std::string& contents);

std::string read_file(const std::filesystem::path& path);

}  // namespace simbias
