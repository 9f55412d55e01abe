#pragma once

#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include "sphlab/calibration.hpp"
#include "sphlab/config.hpp"
#include "sphlab/distributions.hpp"
#include "sphlab/random.hpp"
#include "sphlab/report.hpp"
#include "sphlab/sample.hpp"

namespace sphlab {

// Fixed sizes for experiments whose bands were derived at a specific m.
inline constexpr std::size_t kEcfSampleSize = 50000;
inline constexpr std::size_t kCovSquaresSampleSize = 200000;
inline constexpr std::size_t kSllnDimension = 1000000;
inline constexpr std::size_t kPartialSumControlDimension = 64;

/// Draws an m x n sample from a stream.
using VectorSampler = std::function<VectorSample(std::size_t m, const RandomSource&)>;

VectorSampler sampler_for(const DistributionSpec& spec, std::size_t n);

/// Fraction of `replications` runs of `rejects(rs.split(r))` that return true.
double rejection_rate(int replications, const RandomSource& rs,
                      const std::function<bool(const RandomSource&)>& rejects);

/// Null band for rejection rates at cfg.alpha over cfg.replications runs.
RateBand null_band(const ExperimentConfig& cfg);

/// sqrt(n) X_1 / |x| for each row. Throws std::invalid_argument on a zero row.
ScalarSample ratio_statistic(const VectorSample& vs);

/// S_n / sqrt(n) for each row, computed as coordinate 0 of H_n x where H_n is
/// householder_complete((1/sqrt(n), ..., 1/sqrt(n))).
ScalarSample partial_sum_statistic(const VectorSample& vs);

/// Each row divided by its norm. Throws std::invalid_argument on a zero row.
VectorSample normalize_rows(const VectorSample& vs);

/// Pairwise column comparison used by exp_identical_components.
struct IdenticalComponentsOutcome {
  double rejection_rate = 0.0;
  double max_abs_mean_z = 0.0;
  double max_abs_correlation_z = 0.0;
  bool holds = false;
};

/// Rows are split into halves; column i of the first half is KS-compared with
/// column j of the second for every i < j (Bonferroni across pairs). Holds when
/// the rejection rate stays inside the null band and the replication-0 means
/// and correlations are within cfg "moment_z" standard errors of zero.
IdenticalComponentsOutcome check_identical_components(const VectorSampler& sampler,
                                                      const ExperimentConfig& cfg,
                                                      const RandomSource& rs);

/// Rejection rate of rotation_invariance_test on fresh draws from `sampler`.
double rotation_rejection_rate(const VectorSampler& sampler, const ExperimentConfig& cfg,
                               const RandomSource& rs);

/// Ratio-statistic comparison for one family at one dimension.
struct RatioOutcome {
  double ratio_vs_gaussian_ratio_rate = 0.0;  // KS(ratio of X, ratio of Z)
  double ratio_vs_normal_rate = 0.0;          // KS(ratio of X, N(0,1))
  double marginal_vs_normal_rate = 0.0;       // KS(X_1 / sqrt(E X_1^2), N(0,1))
};

RatioOutcome ratio_identity(const DistributionSpec& spec, std::size_t n, const ExperimentConfig& cfg,
                            const RandomSource& rs);

/// Rejection rates for S_n / sqrt(n) against an independent X_1 sample and
/// against a fresh N(0, 1) sample.
struct PartialSumOutcome {
  double vs_first_coordinate_rate = 0.0;
  double vs_normal_rate = 0.0;
};

PartialSumOutcome partial_sum_identity(const DistributionSpec& spec, std::size_t n,
                                       const ExperimentConfig& cfg, const RandomSource& rs);

/// |x|/sqrt(n) for a single N(0, 1) draw of dimension n, relative to 1.
double slln_relative_error(std::size_t n, const RandomSource& rs);

ExperimentReport exp_identical_components(const ExperimentConfig& cfg);
ExperimentReport exp_cf_radiality(const ExperimentConfig& cfg);
ExperimentReport exp_extension_2_to_n(const ExperimentConfig& cfg);
ExperimentReport exp_zero_atom_dichotomy(const ExperimentConfig& cfg);
ExperimentReport exp_uniform_sphere(const ExperimentConfig& cfg);
ExperimentReport exp_main_slln_ratio(const ExperimentConfig& cfg);
ExperimentReport exp_partial_sum_identity(const ExperimentConfig& cfg);
ExperimentReport exp_dependent_spherical(const ExperimentConfig& cfg);
ExperimentReport exp_functional_equation(const ExperimentConfig& cfg);

struct ExperimentInfo {
  std::string name;
  std::string summary;
  std::function<ExperimentReport(const ExperimentConfig&)> run;
};

/// All experiments in a fixed order.
const std::vector<ExperimentInfo>& experiment_registry();

/// nullptr when no experiment has that name.
const ExperimentInfo* find_experiment(const std::string& name);

/// Runs the named experiments in the order given (all, in registry order, when
/// `names` is empty). An experiment that throws yields a failing report carrying the
/// message; siblings still run. With threads > 1 experiments are scheduled
/// concurrently; results do not depend on scheduling. Throws
/// std::invalid_argument for an unknown name or an invalid config.
std::vector<ExperimentReport> run_experiments(const ExperimentConfig& cfg,
                                              const std::vector<std::string>& names,
                                              unsigned threads = 1);

std::vector<ExperimentReport> run_all(const ExperimentConfig& cfg, unsigned threads = 1);

}  // namespace sphlab
