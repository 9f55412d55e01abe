#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "json.hpp"
#include "sphlab/config.hpp"
#include "sphlab/report.hpp"

namespace sphlab {

inline constexpr const char* kToolVersion = "0.1.0";

/// Everything one `run` invocation produced.
struct RunManifest {
  std::string version = kToolVersion;
  ExperimentConfig config;
  std::vector<ExperimentReport> reports;
  std::string started;   // UTC, ISO-8601
  std::string finished;  // UTC, ISO-8601
};

nlohmann::json config_to_json(const ExperimentConfig& cfg);
ExperimentConfig config_from_json(const nlohmann::json& j);

nlohmann::json test_to_json(const TestResult& t);
TestResult test_from_json(const nlohmann::json& j);

/// Plot series are not serialized; they are written separately as CSV.
nlohmann::json report_to_json(const ExperimentReport& report);
ExperimentReport report_from_json(const nlohmann::json& j, const ExperimentConfig& cfg);

nlohmann::json manifest_to_json(const RunManifest& manifest);
RunManifest manifest_from_json(const nlohmann::json& j);

/// Manifest JSON without the wall-clock fields (started, finished and each
/// report's runtime_ms). Equal configs give byte-identical canonical dumps.
nlohmann::json canonical_manifest_json(const RunManifest& manifest);

std::string utc_timestamp_now();

/// Writes "x,y" then one line per point. Throws std::invalid_argument on a
/// non-finite value and std::runtime_error when the file cannot be written.
void write_series_csv(const std::filesystem::path& path, const Series& series);

/// Shortest round-trip decimal form of a finite double.
std::string format_number(double value);

}  // namespace sphlab
