#include "sphlab/moments.hpp"

#include <cmath>
#include <stdexcept>

namespace sphlab {

MomentSummary marginal_moment_checks(const VectorSample& vs) {
  if (vs.rows() < 2) throw std::invalid_argument("marginal_moment_checks: need at least 2 rows");
  const RowMatrix& x = vs.matrix();
  const auto m = static_cast<double>(vs.rows());

  MomentSummary out;
  const Eigen::RowVectorXd mean = x.colwise().mean();
  out.means.assign(mean.begin(), mean.end());

  const RowMatrix centered = x.rowwise() - mean;
  const RowMatrix squares = x.array().square().matrix();
  const Eigen::RowVectorXd square_mean = squares.colwise().mean();
  const RowMatrix centered_squares = squares.rowwise() - square_mean;

  for (Eigen::Index i = 0; i < x.cols(); ++i) {
    for (Eigen::Index j = i + 1; j < x.cols(); ++j) {
      const double sxy = centered.col(i).dot(centered.col(j));
      const double sxx = centered.col(i).squaredNorm();
      const double syy = centered.col(j).squaredNorm();
      const double corr = (sxx > 0.0 && syy > 0.0) ? sxy / std::sqrt(sxx * syy) : 0.0;
      const double cov_sq = centered_squares.col(i).dot(centered_squares.col(j)) / (m - 1.0);
      const auto ui = static_cast<std::size_t>(i);
      const auto uj = static_cast<std::size_t>(j);
      out.pair_correlations.push_back({ui, uj, corr});
      out.pair_cov_squares.push_back({ui, uj, cov_sq});
    }
  }
  return out;
}

}  // namespace sphlab
