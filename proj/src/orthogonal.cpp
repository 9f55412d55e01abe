#include "sphlab/orthogonal.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include <Eigen/QR>

namespace sphlab {

double orthogonality_error(const Eigen::MatrixXd& h) {
  const Eigen::MatrixXd gram = h.transpose() * h;
  return (gram - Eigen::MatrixXd::Identity(h.rows(), h.cols())).cwiseAbs().maxCoeff();
}

OrthogonalMatrix::OrthogonalMatrix(Eigen::MatrixXd entries) : entries_(std::move(entries)) {
  if (entries_.rows() < 1 || entries_.rows() != entries_.cols()) {
    throw std::invalid_argument("OrthogonalMatrix: expected a non-empty square matrix");
  }
  const double err = orthogonality_error(entries_);
  if (!(err <= kOrthogonalityTolerance)) {
    throw std::invalid_argument("OrthogonalMatrix: |H^T H - I| = " + std::to_string(err));
  }
}

OrthogonalMatrix OrthogonalMatrix::identity(std::size_t n) {
  const auto dim = static_cast<Eigen::Index>(n);
  return OrthogonalMatrix(Eigen::MatrixXd::Identity(dim, dim));
}

OrthogonalMatrix householder_complete(std::span<const double> first_row) {
  const auto n = static_cast<Eigen::Index>(first_row.size());
  if (n < 1) throw std::invalid_argument("householder_complete: empty row");
  const Eigen::Map<const Eigen::VectorXd> u(first_row.data(), n);
  const double norm = u.norm();
  if (!(std::abs(norm - 1.0) <= 1e-8)) {
    throw std::invalid_argument("householder_complete: first row has norm " +
                                std::to_string(norm) + ", expected 1");
  }
  if (u(0) == 1.0 && u.tail(n - 1).isZero(0.0)) return OrthogonalMatrix::identity(first_row.size());

  // A row off unit norm by more than rounding would break orthogonality if kept verbatim.
  const Eigen::VectorXd w = std::abs(norm - 1.0) <= 1e-12 ? Eigen::VectorXd(u) : Eigen::VectorXd(u / norm);
  const double sign = w(0) < 0.0 ? -1.0 : 1.0;
  Eigen::VectorXd v = sign * w;
  v(0) += 1.0;
  Eigen::MatrixXd h = Eigen::MatrixXd::Identity(n, n) - (2.0 / v.squaredNorm()) * (v * v.transpose());
  // P e1 = -sign * u, so row 0 of P is -sign * u^T.
  h.row(0) = w.transpose();
  return OrthogonalMatrix(std::move(h));
}

OrthogonalMatrix haar_orthogonal(std::size_t n, const RandomSource& rs) {
  if (n < 1) throw std::invalid_argument("haar_orthogonal: n must be at least 1");
  const auto dim = static_cast<Eigen::Index>(n);
  for (std::uint32_t attempt = 0;; ++attempt) {
    Generator gen = rs.split(attempt).generator();
    Eigen::MatrixXd g(dim, dim);
    for (Eigen::Index i = 0; i < dim; ++i) {
      for (Eigen::Index j = 0; j < dim; ++j) g(i, j) = gen.normal();
    }
    const Eigen::HouseholderQR<Eigen::MatrixXd> qr(g);
    const Eigen::MatrixXd r = qr.matrixQR().triangularView<Eigen::Upper>();
    const Eigen::VectorXd diag = r.diagonal();
    // Numerically singular draw: re-draw from the next child stream.
    if (diag.cwiseAbs().minCoeff() <= 1e-12 * r.cwiseAbs().maxCoeff()) continue;
    Eigen::MatrixXd q = qr.householderQ();
    for (Eigen::Index j = 0; j < dim; ++j) {
      if (diag(j) < 0.0) q.col(j) = -q.col(j);
    }
    return OrthogonalMatrix(std::move(q));
  }
}

VectorSample apply_rotation(const OrthogonalMatrix& h, const VectorSample& vs) {
  if (h.dim() != vs.dims()) {
    throw std::invalid_argument("apply_rotation: matrix dimension " + std::to_string(h.dim()) +
                                " does not match sample dimension " + std::to_string(vs.dims()));
  }
  RowMatrix rotated = vs.matrix() * h.matrix().transpose();
  return VectorSample(std::move(rotated));
}

}  // namespace sphlab
