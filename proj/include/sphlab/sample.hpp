#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Core>

namespace sphlab {

using RowMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

/// m >= 1 finite draws of a real random variable.
class ScalarSample {
 public:
  explicit ScalarSample(std::vector<double> values);

  [[nodiscard]] std::size_t size() const { return values_.size(); }
  [[nodiscard]] std::span<const double> values() const { return values_; }
  [[nodiscard]] double operator[](std::size_t i) const { return values_[i]; }

  [[nodiscard]] ScalarSample negated() const;

 private:
  std::vector<double> values_;
};

/// m independent draws (rows) of an n-dimensional random vector (columns).
class VectorSample {
 public:
  explicit VectorSample(RowMatrix data);

  /// Throws std::invalid_argument on ragged or empty input.
  static VectorSample from_rows(const std::vector<std::vector<double>>& rows);

  [[nodiscard]] std::size_t rows() const { return static_cast<std::size_t>(data_.rows()); }
  [[nodiscard]] std::size_t dims() const { return static_cast<std::size_t>(data_.cols()); }
  [[nodiscard]] const RowMatrix& matrix() const { return data_; }
  [[nodiscard]] double operator()(std::size_t i, std::size_t j) const {
    return data_(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
  }

  /// Rows [begin, end) as a new sample.
  [[nodiscard]] VectorSample slice(std::size_t begin, std::size_t end) const;

 private:
  RowMatrix data_;
};

/// Throws std::out_of_range when j >= vs.dims().
ScalarSample column(const VectorSample& vs, std::size_t j);

ScalarSample row_norms(const VectorSample& vs);

}  // namespace sphlab
