#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace sphlab {

/// Evenly spaced evaluation points t_min, ..., t_max (inclusive).
struct CfGrid {
  double t_min = -3.0;
  double t_max = 3.0;
  int steps = 61;

  [[nodiscard]] std::vector<double> points() const;

  friend bool operator==(const CfGrid&, const CfGrid&) = default;
};

/// Named thresholds read by the experiments. Every entry has a default here so
/// reports echo the full set that decided their verdicts.
std::map<std::string, double> default_tolerances();

struct ExperimentConfig {
  std::uint64_t seed = 20240607;
  int m = 20000;
  std::vector<int> n_list = {2, 4, 16, 64};
  double alpha = 0.05;
  int replications = 100;
  CfGrid cf_grid;
  std::map<std::string, double> tolerances = default_tolerances();

  /// Throws std::invalid_argument naming the first violated constraint.
  void validate() const;

  /// Throws std::out_of_range for an unknown name.
  [[nodiscard]] double tolerance(const std::string& name) const;

  friend bool operator==(const ExperimentConfig&, const ExperimentConfig&) = default;
};

}  // namespace sphlab
