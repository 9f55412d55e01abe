#pragma once

#include <cstddef>
#include <span>

#include <Eigen/Core>

#include "sphlab/random.hpp"
#include "sphlab/sample.hpp"

namespace sphlab {

/// Maximum absolute deviation tolerated in H^T H - I.
inline constexpr double kOrthogonalityTolerance = 1e-10;

/// A validated n x n orthogonal matrix (rotation or reflection).
class OrthogonalMatrix {
 public:
  /// Throws std::invalid_argument if the input is not square or
  /// max|H^T H - I| exceeds kOrthogonalityTolerance.
  explicit OrthogonalMatrix(Eigen::MatrixXd entries);

  static OrthogonalMatrix identity(std::size_t n);

  [[nodiscard]] std::size_t dim() const { return static_cast<std::size_t>(entries_.rows()); }
  [[nodiscard]] const Eigen::MatrixXd& matrix() const { return entries_; }
  [[nodiscard]] double operator()(std::size_t i, std::size_t j) const {
    return entries_(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
  }

 private:
  Eigen::MatrixXd entries_;
};

/// max |(H^T H - I)_{ij}|
double orthogonality_error(const Eigen::MatrixXd& h);

/// Orthogonal matrix whose first row is `first_row`.
///
/// Built from the Householder reflection P = I - 2 v v^T / (v^T v) with
/// v = e1 + sign(u1) u, which sends e1 to -sign(u1) u without cancellation in
/// v1. Row 0 of P is then scaled by -sign(u1) (sign(0) taken as +1) so that it
/// equals u; row 0 is stored as the caller's values verbatim. u = e1 returns
/// the identity. A row whose norm differs from 1 by more than 1e-12 (but at
/// most 1e-8) is normalized first. Throws std::invalid_argument if
/// | |u| - 1 | > 1e-8.
OrthogonalMatrix householder_complete(std::span<const double> first_row);

/// Haar-distributed orthogonal matrix: Q from the QR factorization of an
/// n x n standard Gaussian matrix, with columns re-signed so that diag(R) > 0.
OrthogonalMatrix haar_orthogonal(std::size_t n, const RandomSource& rs);

/// Each row x of `vs` replaced by H x. Throws std::invalid_argument on a
/// dimension mismatch.
VectorSample apply_rotation(const OrthogonalMatrix& h, const VectorSample& vs);

}  // namespace sphlab
