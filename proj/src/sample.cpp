#include "sphlab/sample.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace sphlab {

ScalarSample::ScalarSample(std::vector<double> values) : values_(std::move(values)) {
  if (values_.empty()) throw std::invalid_argument("ScalarSample: empty sample");
  if (!std::all_of(values_.begin(), values_.end(), [](double v) { return std::isfinite(v); })) {
    throw std::invalid_argument("ScalarSample: non-finite value");
  }
}

ScalarSample ScalarSample::negated() const {
  std::vector<double> out(values_.size());
  std::transform(values_.begin(), values_.end(), out.begin(), [](double v) { return -v; });
  return ScalarSample(std::move(out));
}

VectorSample::VectorSample(RowMatrix data) : data_(std::move(data)) {
  if (data_.rows() < 1 || data_.cols() < 1) {
    throw std::invalid_argument("VectorSample: need at least one row and one column");
  }
  if (!data_.allFinite()) throw std::invalid_argument("VectorSample: non-finite entry");
}

VectorSample VectorSample::from_rows(const std::vector<std::vector<double>>& rows) {
  if (rows.empty() || rows.front().empty()) {
    throw std::invalid_argument("VectorSample: empty input");
  }
  const std::size_t n = rows.front().size();
  RowMatrix data(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(n));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != n) {
      throw std::invalid_argument("VectorSample: row " + std::to_string(i) + " has " +
                                  std::to_string(rows[i].size()) + " columns, expected " +
                                  std::to_string(n));
    }
    for (std::size_t j = 0; j < n; ++j) {
      data(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = rows[i][j];
    }
  }
  return VectorSample(std::move(data));
}

VectorSample VectorSample::slice(std::size_t begin, std::size_t end) const {
  if (begin >= end || end > rows()) throw std::out_of_range("VectorSample::slice: bad row range");
  return VectorSample(data_.middleRows(static_cast<Eigen::Index>(begin),
                                       static_cast<Eigen::Index>(end - begin)));
}

ScalarSample column(const VectorSample& vs, std::size_t j) {
  if (j >= vs.dims()) {
    throw std::out_of_range("column index " + std::to_string(j) + " out of range for dimension " +
                            std::to_string(vs.dims()));
  }
  const auto col = vs.matrix().col(static_cast<Eigen::Index>(j));
  return ScalarSample(std::vector<double>(col.begin(), col.end()));
}

ScalarSample row_norms(const VectorSample& vs) {
  std::vector<double> norms(vs.rows());
  for (std::size_t i = 0; i < vs.rows(); ++i) {
    norms[i] = vs.matrix().row(static_cast<Eigen::Index>(i)).norm();
  }
  return ScalarSample(std::move(norms));
}

}  // namespace sphlab
