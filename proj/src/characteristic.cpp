#include "sphlab/characteristic.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <stdexcept>
#include <string>

#include "sphlab/distributions.hpp"

namespace sphlab {
namespace {

constexpr double kLogCfFloor = 0.1;

}  // namespace

std::complex<double> ecf_at(const ScalarSample& s, double t) {
  if (t == 0.0) return {1.0, 0.0};
  double re = 0.0;
  double im = 0.0;
  for (const double x : s.values()) {
    const double arg = t * x;
    re += std::cos(arg);
    im += std::sin(arg);
  }
  const auto m = static_cast<double>(s.size());
  return {re / m, im / m};
}

EmpiricalCF empirical_cf(const ScalarSample& s, const std::vector<double>& grid) {
  EmpiricalCF out{grid, {}, s.size()};
  out.values.reserve(grid.size());
  for (const double t : grid) out.values.push_back(ecf_at(s, t));
  return out;
}

std::vector<std::complex<double>> empirical_cf(const VectorSample& vs,
                                               const std::vector<Eigen::VectorXd>& probes) {
  std::vector<std::complex<double>> out;
  out.reserve(probes.size());
  const auto m = static_cast<double>(vs.rows());
  for (const auto& t : probes) {
    if (static_cast<std::size_t>(t.size()) != vs.dims()) {
      throw std::invalid_argument("empirical_cf: probe dimension " + std::to_string(t.size()) +
                                  " does not match sample dimension " + std::to_string(vs.dims()));
    }
    if (t.isZero(0.0)) {
      out.emplace_back(1.0, 0.0);
      continue;
    }
    const Eigen::VectorXd args = vs.matrix() * t;
    double re = 0.0;
    double im = 0.0;
    for (const double a : args) {
      re += std::cos(a);
      im += std::sin(a);
    }
    out.emplace_back(re / m, im / m);
  }
  return out;
}

std::vector<Eigen::VectorXd> radial_probes(std::size_t n, std::size_t n_directions,
                                           const std::vector<double>& radii, const RandomSource& rs) {
  if (n < 1 || n_directions < 1) throw std::invalid_argument("radial_probes: empty probe set");
  std::vector<Eigen::VectorXd> directions;
  if (n == 2) {
    for (std::size_t k = 0; k < n_directions; ++k) {
      const double angle = std::numbers::pi * static_cast<double>(k) / static_cast<double>(n_directions);
      Eigen::VectorXd u(2);
      u << std::cos(angle), std::sin(angle);
      directions.push_back(std::move(u));
    }
  } else {
    const auto sphere = sample_uniform_sphere(n_directions, n, rs);
    for (std::size_t k = 0; k < n_directions; ++k) {
      directions.emplace_back(sphere.matrix().row(static_cast<Eigen::Index>(k)).transpose());
    }
  }
  std::vector<Eigen::VectorXd> probes;
  probes.reserve(directions.size() * radii.size());
  for (const auto& u : directions) {
    for (const double r : radii) probes.emplace_back(r * u);
  }
  return probes;
}

std::vector<Eigen::VectorXd> default_radial_probes(std::size_t n, const RandomSource& rs) {
  return radial_probes(n, 20, {0.5, 1.0, 1.5, 2.0, 2.5, 3.0}, rs);
}

double cf_radiality_residual(const VectorSample& vs, const std::vector<Eigen::VectorXd>& probes) {
  for (const auto& t : probes) {
    if (t.isZero(0.0)) throw std::invalid_argument("cf_radiality_residual: zero probe vector");
  }
  const auto joint = empirical_cf(vs, probes);
  const ScalarSample first = column(vs, 0);
  double residual = 0.0;
  for (std::size_t k = 0; k < probes.size(); ++k) {
    const std::complex<double> marginal = ecf_at(first, probes[k].norm());
    residual = std::max(residual, std::abs(joint[k] - marginal));
  }
  return residual;
}

std::vector<std::pair<double, double>> square_pair_grid(double lo, double hi, int steps) {
  if (steps < 2) throw std::invalid_argument("square_pair_grid: need at least 2 steps");
  std::vector<std::pair<double, double>> pairs;
  const double step = (hi - lo) / (steps - 1);
  for (int i = 0; i < steps; ++i) {
    for (int j = 0; j < steps; ++j) pairs.emplace_back(lo + step * i, lo + step * j);
  }
  return pairs;
}

double functional_equation_residual(const ScalarSample& s,
                                    const std::vector<std::pair<double, double>>& pairs) {
  std::map<double, std::complex<double>> cache;
  const auto phi = [&](double t) {
    const auto [it, inserted] = cache.try_emplace(t);
    if (inserted) it->second = ecf_at(s, t);
    return it->second;
  };
  double residual = 0.0;
  for (const auto& [a, b] : pairs) {
    const std::complex<double> lhs = phi(a) * phi(b);
    residual = std::max(residual, std::abs(lhs - phi(std::hypot(a, b))));
  }
  return residual;
}

LogCfFit fit_log_cf_quadratic(const ScalarSample& s, const std::vector<double>& grid) {
  std::vector<double> xs;
  std::vector<double> ys;
  for (const double t : grid) {
    const double re = ecf_at(s, t).real();
    if (re >= kLogCfFloor) {
      xs.push_back(t * t / 2.0);
      ys.push_back(std::log(re));
    }
  }
  if (xs.size() < 3) {
    throw std::invalid_argument("fit_log_cf_quadratic: only " + std::to_string(xs.size()) +
                                " grid points have Re ECF >= 0.1, need 3");
  }
  double sxy = 0.0;
  double sxx = 0.0;
  for (std::size_t k = 0; k < xs.size(); ++k) {
    sxy += xs[k] * ys[k];
    sxx += xs[k] * xs[k];
  }
  LogCfFit fit;
  fit.c = sxx > 0.0 ? sxy / sxx : 0.0;
  fit.used_points = xs.size();
  for (std::size_t k = 0; k < xs.size(); ++k) {
    fit.max_fit_residual = std::max(fit.max_fit_residual, std::abs(ys[k] - fit.c * xs[k]));
  }
  return fit;
}

}  // namespace sphlab
