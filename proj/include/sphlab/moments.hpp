#pragma once

#include <cstddef>
#include <vector>

#include "sphlab/sample.hpp"

namespace sphlab {

struct PairStat {
  std::size_t i = 0;
  std::size_t j = 0;
  double value = 0.0;
};

struct MomentSummary {
  std::vector<double> means;
  /// Pearson correlation for every pair i < j; 0 when either column is constant.
  std::vector<PairStat> pair_correlations;
  /// Sample covariance (m - 1 denominator) of X_i^2 and X_j^2 for every pair i < j.
  std::vector<PairStat> pair_cov_squares;
};

/// Throws std::invalid_argument if vs has fewer than 2 rows.
MomentSummary marginal_moment_checks(const VectorSample& vs);

}  // namespace sphlab
