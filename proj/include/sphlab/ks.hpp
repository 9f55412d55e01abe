#pragma once

#include <cstddef>

#include "sphlab/sample.hpp"

namespace sphlab {

/// Outcome of one hypothesis test. reject == (p_value < alpha).
struct TestResult {
  double statistic = 0.0;
  double p_value = 1.0;
  double alpha = 0.05;
  bool reject = false;
  std::size_t m_a = 0;
  std::size_t m_b = 0;

  static TestResult make(double statistic, double p_value, double alpha, std::size_t m_a,
                         std::size_t m_b);

  friend bool operator==(const TestResult&, const TestResult&) = default;
};

/// D = sup_x |F_a(x) - F_b(x)|, evaluated at every pooled order statistic
/// after consuming all ties on both sides.
double ks_statistic(const ScalarSample& a, const ScalarSample& b);

/// Asymptotic Kolmogorov survival function Q(lambda) = P(K > lambda).
///
/// Uses 2 sum_{k>=1} (-1)^{k-1} exp(-2 k^2 lambda^2) (100 terms) for
/// lambda >= 1 and the Jacobi-transformed theta series below that, where the
/// alternating series has not converged.
double kolmogorov_survival(double lambda);

/// Two-sample KS test; p-value from kolmogorov_survival(sqrt(m_a m_b / (m_a + m_b)) D).
TestResult ks_two_sample(const ScalarSample& a, const ScalarSample& b, double alpha);

}  // namespace sphlab
