#include "sphlab/manifest.hpp"

#include <charconv>
#include <chrono>
#include <cmath>
#include <ctime>
#include <fstream>
#include <stdexcept>

namespace sphlab {

using nlohmann::json;

json config_to_json(const ExperimentConfig& cfg) {
  return json{
      {"seed", cfg.seed},
      {"m", cfg.m},
      {"n_list", cfg.n_list},
      {"alpha", cfg.alpha},
      {"replications", cfg.replications},
      {"cf_grid", {{"t_min", cfg.cf_grid.t_min}, {"t_max", cfg.cf_grid.t_max}, {"steps", cfg.cf_grid.steps}}},
      {"tolerances", cfg.tolerances},
  };
}

ExperimentConfig config_from_json(const json& j) {
  ExperimentConfig cfg;
  cfg.seed = j.at("seed").get<std::uint64_t>();
  cfg.m = j.at("m").get<int>();
  cfg.n_list = j.at("n_list").get<std::vector<int>>();
  cfg.alpha = j.at("alpha").get<double>();
  cfg.replications = j.at("replications").get<int>();
  const json& grid = j.at("cf_grid");
  cfg.cf_grid = {grid.at("t_min").get<double>(), grid.at("t_max").get<double>(), grid.at("steps").get<int>()};
  cfg.tolerances = j.at("tolerances").get<std::map<std::string, double>>();
  return cfg;
}

json test_to_json(const TestResult& t) {
  return json{{"statistic", t.statistic}, {"p_value", t.p_value}, {"alpha", t.alpha},
              {"reject", t.reject},       {"m_a", t.m_a},         {"m_b", t.m_b}};
}

TestResult test_from_json(const json& j) {
  return TestResult{j.at("statistic").get<double>(), j.at("p_value").get<double>(), j.at("alpha").get<double>(),
                    j.at("reject").get<bool>(),      j.at("m_a").get<std::size_t>(),  j.at("m_b").get<std::size_t>()};
}

json report_to_json(const ExperimentReport& report) {
  json tests = json::object();
  for (const auto& [name, t] : report.tests) tests[name] = test_to_json(t);
  json out{
      {"name", report.name},
      {"metrics", report.metrics},
      {"tests", std::move(tests)},
      {"checks", report.checks},
      {"verdict", std::string(to_string(report.verdict))},
      {"runtime_ms", report.runtime_ms},
  };
  if (!report.error.empty()) out["error"] = report.error;
  return out;
}

ExperimentReport report_from_json(const json& j, const ExperimentConfig& cfg) {
  ExperimentReport report;
  report.name = j.at("name").get<std::string>();
  report.config = cfg;
  report.metrics = j.at("metrics").get<std::map<std::string, double>>();
  for (const auto& [name, t] : j.at("tests").items()) report.tests[name] = test_from_json(t);
  report.checks = j.at("checks").get<std::map<std::string, bool>>();
  report.verdict = parse_verdict(j.at("verdict").get<std::string>());
  report.runtime_ms = j.at("runtime_ms").get<std::int64_t>();
  if (j.contains("error")) report.error = j.at("error").get<std::string>();
  return report;
}

json manifest_to_json(const RunManifest& manifest) {
  json reports = json::array();
  for (const auto& r : manifest.reports) reports.push_back(report_to_json(r));
  return json{
      {"version", manifest.version},   {"config", config_to_json(manifest.config)},
      {"reports", std::move(reports)}, {"started", manifest.started},
      {"finished", manifest.finished},
  };
}

RunManifest manifest_from_json(const json& j) {
  RunManifest manifest;
  manifest.version = j.at("version").get<std::string>();
  manifest.config = config_from_json(j.at("config"));
  for (const auto& r : j.at("reports")) manifest.reports.push_back(report_from_json(r, manifest.config));
  manifest.started = j.value("started", "");
  manifest.finished = j.value("finished", "");
  return manifest;
}

json canonical_manifest_json(const RunManifest& manifest) {
  json out = manifest_to_json(manifest);
  out.erase("started");
  out.erase("finished");
  for (auto& r : out["reports"]) r.erase("runtime_ms");
  return out;
}

std::string utc_timestamp_now() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm utc{};
  gmtime_r(&now, &utc);
  char buffer[32];
  std::strftime(buffer, sizeof buffer, "%Y-%m-%dT%H:%M:%SZ", &utc);
  return buffer;
}

std::string format_number(double value) {
  if (!std::isfinite(value)) throw std::invalid_argument("format_number: non-finite value");
  char buffer[64];
  const auto [end, ec] = std::to_chars(buffer, buffer + sizeof buffer, value);
  if (ec != std::errc{}) throw std::runtime_error("format_number: conversion failed");
  return std::string(buffer, end);
}

void write_series_csv(const std::filesystem::path& path, const Series& series) {
  std::string body = "x,y\n";
  for (const auto& [x, y] : series) body += format_number(x) + "," + format_number(y) + "\n";
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  out << body;
  if (!out.flush()) throw std::runtime_error("failed writing " + path.string());
}

}  // namespace sphlab
