#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "sphlab/config.hpp"
#include "sphlab/ks.hpp"

namespace sphlab {

enum class Verdict { pass, fail };

std::string_view to_string(Verdict verdict);
/// Throws std::invalid_argument for anything but "pass" / "fail".
Verdict parse_verdict(std::string_view text);

/// (x, y) points written out as plot data; not part of the JSON manifest.
using Series = std::vector<std::pair<double, double>>;

struct ExperimentReport {
  std::string name;
  ExperimentConfig config;
  std::map<std::string, double> metrics;
  std::map<std::string, TestResult> tests;
  /// Named pass/fail criteria; the verdict is their conjunction.
  std::map<std::string, bool> checks;
  Verdict verdict = Verdict::fail;
  std::int64_t runtime_ms = 0;
  /// Set when the experiment threw instead of completing.
  std::string error;
  std::map<std::string, Series> series;

  void check(const std::string& criterion, bool holds) { checks[criterion] = holds; }

  /// verdict = pass iff no error, at least one check, and every check holds.
  void finalize();

  friend bool operator==(const ExperimentReport&, const ExperimentReport&) = default;
};

}  // namespace sphlab
