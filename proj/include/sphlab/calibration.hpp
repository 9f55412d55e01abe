#pragma once

#include <cstddef>

namespace sphlab {

/// Central band [lo, hi] of rejection *rates* for Binomial(trials, p) holding
/// at least `coverage` probability: lo is the largest count with
/// P(X < lo) <= (1 - coverage) / 2, hi the smallest with
/// P(X > hi) <= (1 - coverage) / 2, both divided by `trials`.
struct RateBand {
  double lo = 0.0;
  double hi = 1.0;

  [[nodiscard]] bool contains(double rate) const { return rate >= lo && rate <= hi; }
};

RateBand binomial_band(std::size_t trials, double p, double coverage = 0.99);

}  // namespace sphlab
