#include "sphlab/calibration.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace sphlab {

RateBand binomial_band(std::size_t trials, double p, double coverage) {
  if (trials < 1) throw std::invalid_argument("binomial_band: need at least one trial");
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("binomial_band: p must lie in [0, 1]");
  if (!(coverage > 0.0 && coverage < 1.0)) throw std::invalid_argument("binomial_band: bad coverage");
  const double tail = (1.0 - coverage) / 2.0;
  const auto n = static_cast<double>(trials);

  std::vector<double> pmf(trials + 1, 0.0);
  if (p == 0.0) {
    pmf.front() = 1.0;
  } else if (p == 1.0) {
    pmf.back() = 1.0;
  } else {
    for (std::size_t k = 0; k <= trials; ++k) {
      const auto kd = static_cast<double>(k);
      const double log_pmf = std::lgamma(n + 1.0) - std::lgamma(kd + 1.0) - std::lgamma(n - kd + 1.0) +
                             kd * std::log(p) + (n - kd) * std::log1p(-p);
      pmf[k] = std::exp(log_pmf);
    }
  }

  std::size_t lo = 0;
  double below = 0.0;
  while (lo < trials && below + pmf[lo] <= tail) below += pmf[lo++];
  std::size_t hi = trials;
  double above = 0.0;
  while (hi > 0 && above + pmf[hi] <= tail) above += pmf[hi--];
  return {static_cast<double>(lo) / n, static_cast<double>(hi) / n};
}

}  // namespace sphlab
