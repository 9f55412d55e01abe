#pragma once

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "sphlab/random.hpp"
#include "sphlab/sample.hpp"

namespace sphlab {

enum class Family {
  gaussian,
  laplace,
  uniform_pm1,
  rademacher,
  point_mass_zero,
  zero_inflated,
  scale_mixture_gaussian,
  uniform_sphere,
};

std::string_view to_string(Family family);
/// Throws std::invalid_argument for an unknown name.
Family parse_family(std::string_view name);

/// A concrete distribution family with its parameters.
///
/// Parameter keys: "sigma" (scalar families and the zero-inflated base), "p"
/// (zero-inflated atom probability), "sigma_<i>" / "weight_<i>" (mixture
/// components, i = 0, 1, ...). Missing "sigma" means 1.
struct DistributionSpec {
  Family family = Family::gaussian;
  std::map<std::string, double> params;

  static DistributionSpec gaussian(double sigma = 1.0);
  static DistributionSpec laplace(double sigma = 1.0);
  static DistributionSpec uniform_pm1(double sigma = 1.0);
  static DistributionSpec rademacher(double sigma = 1.0);
  static DistributionSpec point_mass_zero();
  static DistributionSpec zero_inflated(double p, double sigma = 1.0);
  static DistributionSpec scale_mixture(const std::vector<double>& sigmas,
                                        const std::vector<double>& weights);
  static DistributionSpec uniform_sphere();

  /// Parses "family" or "family:key=value,key=value".
  static DistributionSpec parse(std::string_view text);

  /// Throws std::invalid_argument if sigma < 0, p outside [0, 1], or mixture
  /// weights do not sum to 1 within 1e-12.
  void validate() const;

  [[nodiscard]] double sigma() const;
  [[nodiscard]] std::vector<double> mixture_sigmas() const;
  [[nodiscard]] std::vector<double> mixture_weights() const;

  /// E X_1^2 for one coordinate; uniform_sphere needs the dimension.
  [[nodiscard]] double second_moment(std::size_t n = 1) const;

  [[nodiscard]] std::string describe() const;

  friend bool operator==(const DistributionSpec&, const DistributionSpec&) = default;
};

/// True for families whose coordinates can be drawn independently.
bool is_scalar_family(Family family);

/// m rows of n i.i.d. coordinates. Every family is scaled so that a coordinate
/// has variance sigma^2: laplace uses scale sigma/sqrt(2), uniform_pm1 draws
/// from [-sqrt(3) sigma, sqrt(3) sigma], rademacher takes values +-sigma.
/// Throws std::invalid_argument for scale_mixture_gaussian or uniform_sphere.
VectorSample sample_iid_components(const DistributionSpec& spec, std::size_t m, std::size_t n,
                                   const RandomSource& rs);

/// i.i.d. N(0, sigma^2) entries.
VectorSample sample_gaussian_vectors(std::size_t m, std::size_t n, double sigma,
                                     const RandomSource& rs);

/// Rows uniform on the unit sphere in R^n (normalized Gaussian vectors; a
/// zero-norm draw is re-drawn).
VectorSample sample_uniform_sphere(std::size_t m, std::size_t n, const RandomSource& rs);

/// Per row: sigma drawn from `sigmas` with probabilities `weights`, then n
/// i.i.d. N(0, sigma^2) entries sharing that sigma.
VectorSample sample_scale_mixture(std::size_t m, std::size_t n, const std::vector<double>& sigmas,
                                  const std::vector<double>& weights, const RandomSource& rs);

/// Each entry independently 0 with probability p, otherwise a draw from
/// `base` (gaussian, laplace or uniform_pm1). Base draws come from
/// sample_iid_components(base, m, n, rs.split(1)) and the zero mask from
/// rs.split(0), so p = 0 reproduces that call exactly.
VectorSample sample_zero_inflated(std::size_t m, std::size_t n, double p,
                                  const DistributionSpec& base, const RandomSource& rs);

/// Dispatch on spec.family.
VectorSample sample(const DistributionSpec& spec, std::size_t m, std::size_t n,
                    const RandomSource& rs);

}  // namespace sphlab
