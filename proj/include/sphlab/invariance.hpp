#pragma once

#include <cstddef>

#include "sphlab/ks.hpp"
#include "sphlab/random.hpp"
#include "sphlab/sample.hpp"

namespace sphlab {

inline constexpr std::size_t kDefaultRotations = 4;

/// Projection test of spherical symmetry.
///
/// Rows are split into halves A = [0, m/2) and B = [m/2, m). B is cut into
/// `k_rotations` contiguous sub-blocks; sub-block b is rotated by an
/// independent Haar matrix drawn from rs.split(b), and coordinate 0 of the
/// rotated block is KS-compared with coordinate 0 of A. The k p-values are
/// Bonferroni-adjusted (min(1, k p)); the reported statistic, sizes and p-value
/// are those of the sub-block with the smallest adjusted p-value.
///
/// Throws std::invalid_argument if m < 20, n < 2, k_rotations < 1 or
/// k_rotations exceeds the rows of B.
TestResult rotation_invariance_test(const VectorSample& vs, const RandomSource& rs,
                                    std::size_t k_rotations, double alpha);

}  // namespace sphlab
