#include "sphlab/distributions.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace sphlab {
namespace {

constexpr std::array<std::pair<Family, std::string_view>, 8> kFamilyNames{{
    {Family::gaussian, "gaussian"},
    {Family::laplace, "laplace"},
    {Family::uniform_pm1, "uniform_pm1"},
    {Family::rademacher, "rademacher"},
    {Family::point_mass_zero, "point_mass_zero"},
    {Family::zero_inflated, "zero_inflated"},
    {Family::scale_mixture_gaussian, "scale_mixture_gaussian"},
    {Family::uniform_sphere, "uniform_sphere"},
}};

RowMatrix make_matrix(std::size_t m, std::size_t n) {
  if (m < 1 || n < 1) throw std::invalid_argument("sampler: m and n must be at least 1");
  return RowMatrix(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(n));
}

double draw_scalar(Family family, double sigma, Generator& gen) {
  switch (family) {
    case Family::gaussian:
      return sigma * gen.normal();
    case Family::laplace: {
      // Inverse CDF with scale sigma / sqrt(2), giving variance sigma^2.
      const double u = gen.uniform_open01() - 0.5;
      const double magnitude = -std::log1p(-2.0 * std::abs(u));
      return (u < 0.0 ? -1.0 : 1.0) * sigma * std::numbers::sqrt2 / 2.0 * magnitude;
    }
    case Family::uniform_pm1:
      return sigma * std::numbers::sqrt3 * (2.0 * gen.uniform01() - 1.0);
    case Family::rademacher:
      return (gen.next_u64() >> 63) != 0 ? sigma : -sigma;
    case Family::point_mass_zero:
      return 0.0;
    default:
      throw std::invalid_argument("not a scalar family: " + std::string(to_string(family)));
  }
}

}  // namespace

std::string_view to_string(Family family) {
  for (const auto& [f, name] : kFamilyNames) {
    if (f == family) return name;
  }
  return "unknown";
}

Family parse_family(std::string_view name) {
  for (const auto& [f, n] : kFamilyNames) {
    if (n == name) return f;
  }
  throw std::invalid_argument("unknown distribution family: " + std::string(name));
}

DistributionSpec DistributionSpec::gaussian(double sigma) { return {Family::gaussian, {{"sigma", sigma}}}; }
DistributionSpec DistributionSpec::laplace(double sigma) { return {Family::laplace, {{"sigma", sigma}}}; }
DistributionSpec DistributionSpec::uniform_pm1(double sigma) {
  return {Family::uniform_pm1, {{"sigma", sigma}}};
}
DistributionSpec DistributionSpec::rademacher(double sigma) {
  return {Family::rademacher, {{"sigma", sigma}}};
}
DistributionSpec DistributionSpec::point_mass_zero() { return {Family::point_mass_zero, {}}; }
DistributionSpec DistributionSpec::zero_inflated(double p, double sigma) {
  return {Family::zero_inflated, {{"p", p}, {"sigma", sigma}}};
}
DistributionSpec DistributionSpec::uniform_sphere() { return {Family::uniform_sphere, {}}; }

DistributionSpec DistributionSpec::scale_mixture(const std::vector<double>& sigmas,
                                                 const std::vector<double>& weights) {
  if (sigmas.size() != weights.size() || sigmas.empty()) {
    throw std::invalid_argument("scale mixture: sigmas and weights must be non-empty and equal length");
  }
  DistributionSpec spec{Family::scale_mixture_gaussian, {}};
  for (std::size_t i = 0; i < sigmas.size(); ++i) {
    spec.params["sigma_" + std::to_string(i)] = sigmas[i];
    spec.params["weight_" + std::to_string(i)] = weights[i];
  }
  spec.validate();
  return spec;
}

DistributionSpec DistributionSpec::parse(std::string_view text) {
  const auto colon = text.find(':');
  DistributionSpec spec{parse_family(text.substr(0, colon)), {}};
  if (colon != std::string_view::npos) {
    std::istringstream in{std::string(text.substr(colon + 1))};
    std::string item;
    while (std::getline(in, item, ',')) {
      const auto eq = item.find('=');
      if (eq == std::string::npos || eq == 0) {
        throw std::invalid_argument("distribution parameter must be key=value: " + item);
      }
      std::size_t used = 0;
      const std::string value = item.substr(eq + 1);
      double parsed = 0.0;
      try {
        parsed = std::stod(value, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used != value.size() || value.empty()) {
        throw std::invalid_argument("distribution parameter is not a number: " + item);
      }
      spec.params[item.substr(0, eq)] = parsed;
    }
  }
  switch (spec.family) {
    case Family::gaussian:
    case Family::laplace:
    case Family::uniform_pm1:
    case Family::rademacher:
    case Family::zero_inflated:
      spec.params.try_emplace("sigma", 1.0);
      break;
    default:
      break;
  }
  spec.validate();
  return spec;
}

double DistributionSpec::sigma() const {
  const auto it = params.find("sigma");
  return it == params.end() ? 1.0 : it->second;
}

std::vector<double> DistributionSpec::mixture_sigmas() const {
  std::vector<double> out;
  for (std::size_t i = 0;; ++i) {
    const auto it = params.find("sigma_" + std::to_string(i));
    if (it == params.end()) return out;
    out.push_back(it->second);
  }
}

std::vector<double> DistributionSpec::mixture_weights() const {
  std::vector<double> out;
  for (std::size_t i = 0;; ++i) {
    const auto it = params.find("weight_" + std::to_string(i));
    if (it == params.end()) return out;
    out.push_back(it->second);
  }
}

void DistributionSpec::validate() const {
  for (const auto& [key, value] : params) {
    if (!std::isfinite(value)) throw std::invalid_argument("parameter " + key + " is not finite");
  }
  if (sigma() < 0.0) throw std::invalid_argument("sigma must be non-negative");
  if (family == Family::zero_inflated) {
    const auto it = params.find("p");
    if (it == params.end()) throw std::invalid_argument("zero_inflated needs parameter p");
    if (it->second < 0.0 || it->second > 1.0) throw std::invalid_argument("p must lie in [0, 1]");
  }
  if (family == Family::scale_mixture_gaussian) {
    const auto sigmas = mixture_sigmas();
    const auto weights = mixture_weights();
    if (sigmas.empty() || sigmas.size() != weights.size()) {
      throw std::invalid_argument("scale mixture needs matching sigma_i and weight_i parameters");
    }
    for (const double s : sigmas) {
      if (s < 0.0) throw std::invalid_argument("mixture sigmas must be non-negative");
    }
    for (const double w : weights) {
      if (w < 0.0) throw std::invalid_argument("mixture weights must be non-negative");
    }
    const double total = std::accumulate(weights.begin(), weights.end(), 0.0);
    if (std::abs(total - 1.0) > 1e-12) throw std::invalid_argument("mixture weights must sum to 1");
  }
}

double DistributionSpec::second_moment(std::size_t n) const {
  switch (family) {
    case Family::point_mass_zero:
      return 0.0;
    case Family::zero_inflated:
      return (1.0 - params.at("p")) * sigma() * sigma();
    case Family::scale_mixture_gaussian: {
      const auto sigmas = mixture_sigmas();
      const auto weights = mixture_weights();
      double total = 0.0;
      for (std::size_t i = 0; i < sigmas.size(); ++i) total += weights[i] * sigmas[i] * sigmas[i];
      return total;
    }
    case Family::uniform_sphere:
      return 1.0 / static_cast<double>(n);
    default:
      return sigma() * sigma();
  }
}

std::string DistributionSpec::describe() const {
  std::string out(to_string(family));
  char sep = ':';
  for (const auto& [key, value] : params) {
    std::ostringstream v;
    v << value;
    out += sep + key + "=" + v.str();
    sep = ',';
  }
  return out;
}

bool is_scalar_family(Family family) {
  return family != Family::scale_mixture_gaussian && family != Family::uniform_sphere;
}

VectorSample sample_iid_components(const DistributionSpec& spec, std::size_t m, std::size_t n,
                                   const RandomSource& rs) {
  spec.validate();
  if (!is_scalar_family(spec.family)) {
    throw std::invalid_argument("sample_iid_components: " + std::string(to_string(spec.family)) +
                                " does not have independent coordinates");
  }
  if (spec.family == Family::zero_inflated) {
    return sample_zero_inflated(m, n, spec.params.at("p"), DistributionSpec::gaussian(spec.sigma()), rs);
  }
  RowMatrix data = make_matrix(m, n);
  Generator gen = rs.generator();
  const double sigma = spec.sigma();
  for (Eigen::Index i = 0; i < data.rows(); ++i) {
    for (Eigen::Index j = 0; j < data.cols(); ++j) data(i, j) = draw_scalar(spec.family, sigma, gen);
  }
  return VectorSample(std::move(data));
}

VectorSample sample_gaussian_vectors(std::size_t m, std::size_t n, double sigma,
                                     const RandomSource& rs) {
  if (sigma < 0.0) throw std::invalid_argument("sample_gaussian_vectors: sigma must be non-negative");
  return sample_iid_components(DistributionSpec::gaussian(sigma), m, n, rs);
}

VectorSample sample_uniform_sphere(std::size_t m, std::size_t n, const RandomSource& rs) {
  RowMatrix data = make_matrix(m, n);
  Generator gen = rs.generator();
  for (Eigen::Index i = 0; i < data.rows(); ++i) {
    double norm = 0.0;
    while (!(norm > 0.0)) {
      for (Eigen::Index j = 0; j < data.cols(); ++j) data(i, j) = gen.normal();
      norm = data.row(i).norm();
    }
    data.row(i) /= norm;
  }
  return VectorSample(std::move(data));
}

VectorSample sample_scale_mixture(std::size_t m, std::size_t n, const std::vector<double>& sigmas,
                                  const std::vector<double>& weights, const RandomSource& rs) {
  const auto spec = DistributionSpec::scale_mixture(sigmas, weights);
  RowMatrix data = make_matrix(m, n);
  std::vector<double> cumulative(weights.size());
  std::partial_sum(weights.begin(), weights.end(), cumulative.begin());
  Generator gen = rs.generator();
  for (Eigen::Index i = 0; i < data.rows(); ++i) {
    const double u = gen.uniform01();
    std::size_t k = 0;
    while (k + 1 < cumulative.size() && u >= cumulative[k]) ++k;
    const double sigma = sigmas[k];
    for (Eigen::Index j = 0; j < data.cols(); ++j) data(i, j) = sigma * gen.normal();
  }
  return VectorSample(std::move(data));
}

VectorSample sample_zero_inflated(std::size_t m, std::size_t n, double p,
                                  const DistributionSpec& base, const RandomSource& rs) {
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("sample_zero_inflated: p must lie in [0, 1]");
  if (base.family != Family::gaussian && base.family != Family::laplace &&
      base.family != Family::uniform_pm1) {
    throw std::invalid_argument("sample_zero_inflated: base must be a continuous scalar family");
  }
  RowMatrix data = sample_iid_components(base, m, n, rs.split(1)).matrix();
  Generator mask = rs.split(0).generator();
  for (Eigen::Index i = 0; i < data.rows(); ++i) {
    for (Eigen::Index j = 0; j < data.cols(); ++j) {
      if (mask.uniform01() < p) data(i, j) = 0.0;
    }
  }
  return VectorSample(std::move(data));
}

VectorSample sample(const DistributionSpec& spec, std::size_t m, std::size_t n,
                    const RandomSource& rs) {
  spec.validate();
  switch (spec.family) {
    case Family::scale_mixture_gaussian:
      return sample_scale_mixture(m, n, spec.mixture_sigmas(), spec.mixture_weights(), rs);
    case Family::uniform_sphere:
      return sample_uniform_sphere(m, n, rs);
    default:
      return sample_iid_components(spec, m, n, rs);
  }
}

}  // namespace sphlab
