#include "sphlab/ks.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

namespace sphlab {

TestResult TestResult::make(double statistic, double p_value, double alpha, std::size_t m_a,
                            std::size_t m_b) {
  p_value = std::clamp(p_value, 0.0, 1.0);
  return TestResult{statistic, p_value, alpha, p_value < alpha, m_a, m_b};
}

double ks_statistic(const ScalarSample& a, const ScalarSample& b) {
  std::vector<double> xs(a.values().begin(), a.values().end());
  std::vector<double> ys(b.values().begin(), b.values().end());
  std::sort(xs.begin(), xs.end());
  std::sort(ys.begin(), ys.end());
  const auto ma = static_cast<double>(xs.size());
  const auto mb = static_cast<double>(ys.size());

  std::size_t i = 0;
  std::size_t j = 0;
  double d = 0.0;
  while (i < xs.size() || j < ys.size()) {
    double x;
    if (j == ys.size() || (i < xs.size() && xs[i] <= ys[j])) {
      x = xs[i];
    } else {
      x = ys[j];
    }
    while (i < xs.size() && xs[i] == x) ++i;
    while (j < ys.size() && ys[j] == x) ++j;
    d = std::max(d, std::abs(static_cast<double>(i) / ma - static_cast<double>(j) / mb));
  }
  return d;
}

double kolmogorov_survival(double lambda) {
  if (!(lambda > 0.0)) return 1.0;
  if (lambda < 1.0) {
    // P(K <= lambda) = sqrt(2 pi) / lambda * sum_k exp(-(2k-1)^2 pi^2 / (8 lambda^2))
    const double scale = std::numbers::pi * std::numbers::pi / (8.0 * lambda * lambda);
    double cdf = 0.0;
    for (int k = 1; k <= 100; ++k) {
      const double odd = 2.0 * k - 1.0;
      const double term = std::exp(-odd * odd * scale);
      cdf += term;
      if (term < 1e-300) break;
    }
    cdf *= std::sqrt(2.0 * std::numbers::pi) / lambda;
    return std::clamp(1.0 - cdf, 0.0, 1.0);
  }
  double sum = 0.0;
  double sign = 1.0;
  for (int k = 1; k <= 100; ++k) {
    sum += sign * std::exp(-2.0 * k * k * lambda * lambda);
    sign = -sign;
  }
  return std::clamp(2.0 * sum, 0.0, 1.0);
}

TestResult ks_two_sample(const ScalarSample& a, const ScalarSample& b, double alpha) {
  const double d = ks_statistic(a, b);
  const auto ma = static_cast<double>(a.size());
  const auto mb = static_cast<double>(b.size());
  const double effective = ma * mb / (ma + mb);
  return TestResult::make(d, kolmogorov_survival(std::sqrt(effective) * d), alpha, a.size(), b.size());
}

}  // namespace sphlab
