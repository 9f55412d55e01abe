#include "sphlab/invariance.hpp"

#include <algorithm>
#include <stdexcept>
#include <vector>

#include "sphlab/orthogonal.hpp"

namespace sphlab {

TestResult rotation_invariance_test(const VectorSample& vs, const RandomSource& rs,
                                    std::size_t k_rotations, double alpha) {
  const std::size_t m = vs.rows();
  if (m < 20) throw std::invalid_argument("rotation_invariance_test: need at least 20 rows");
  if (vs.dims() < 2) throw std::invalid_argument("rotation_invariance_test: need dimension >= 2");
  const std::size_t half = m / 2;
  const std::size_t b_rows = m - half;
  if (k_rotations < 1 || k_rotations > b_rows) {
    throw std::invalid_argument("rotation_invariance_test: k_rotations must lie in [1, rows of B]");
  }

  const ScalarSample reference = column(vs.slice(0, half), 0);
  const auto k = static_cast<double>(k_rotations);
  TestResult best;
  bool have_best = false;
  for (std::size_t b = 0; b < k_rotations; ++b) {
    const std::size_t begin = half + b * b_rows / k_rotations;
    const std::size_t end = half + (b + 1) * b_rows / k_rotations;
    const OrthogonalMatrix h = haar_orthogonal(vs.dims(), rs.split(static_cast<std::uint32_t>(b)));
    // Coordinate 0 of H x is <row 0 of H, x>; the rest of the rotation is not needed.
    const Eigen::VectorXd first_row = h.matrix().row(0).transpose();
    const Eigen::VectorXd projected =
        vs.matrix().middleRows(static_cast<Eigen::Index>(begin), static_cast<Eigen::Index>(end - begin)) *
        first_row;
    const ScalarSample rotated(std::vector<double>(projected.begin(), projected.end()));

    const TestResult single = ks_two_sample(reference, rotated, alpha);
    const double adjusted = std::min(1.0, k * single.p_value);
    if (!have_best || adjusted < best.p_value) {
      best = TestResult::make(single.statistic, adjusted, alpha, single.m_a, single.m_b);
      have_best = true;
    }
  }
  return best;
}

}  // namespace sphlab
