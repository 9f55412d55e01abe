#pragma once

#include <complex>
#include <cstddef>
#include <utility>
#include <vector>

#include <Eigen/Core>

#include "sphlab/random.hpp"
#include "sphlab/sample.hpp"

namespace sphlab {

/// Empirical characteristic function (1/m) sum_k exp(i t x_k) on a grid.
struct EmpiricalCF {
  std::vector<double> grid;
  std::vector<std::complex<double>> values;
  std::size_t m = 0;
};

/// Value at t = 0 is exactly 1.
std::complex<double> ecf_at(const ScalarSample& s, double t);

EmpiricalCF empirical_cf(const ScalarSample& s, const std::vector<double>& grid);

/// Multivariate ECF (1/m) sum_k exp(i <t, x_k>) at each probe vector t.
/// Throws std::invalid_argument if a probe's dimension differs from vs.dims().
std::vector<std::complex<double>> empirical_cf(const VectorSample& vs,
                                               const std::vector<Eigen::VectorXd>& probes);

/// Probe vectors r * u for every direction u and radius r. For n == 2 the
/// directions are equally spaced angles on [0, pi); otherwise they are drawn
/// uniformly on the sphere from `rs`.
std::vector<Eigen::VectorXd> radial_probes(std::size_t n, std::size_t n_directions,
                                           const std::vector<double>& radii, const RandomSource& rs);

/// Default probe set: 20 directions at radii 0.5, 1.0, ..., 3.0.
std::vector<Eigen::VectorXd> default_radial_probes(std::size_t n, const RandomSource& rs);

/// max over probes t of |ECF_rows(t) - ECF_column0(|t|)|.
/// Throws std::invalid_argument on a zero probe or dimension mismatch.
double cf_radiality_residual(const VectorSample& vs, const std::vector<Eigen::VectorXd>& probes);

/// All (s, t) pairs on a steps x steps square grid over [lo, hi]^2.
std::vector<std::pair<double, double>> square_pair_grid(double lo, double hi, int steps);

/// max over pairs of |ECF(s) ECF(t) - ECF(sqrt(s^2 + t^2))|.
double functional_equation_residual(const ScalarSample& s,
                                    const std::vector<std::pair<double, double>>& pairs);

struct LogCfFit {
  double c = 0.0;
  double max_fit_residual = 0.0;
  std::size_t used_points = 0;
};

/// Least-squares fit of log Re ECF(t) = c t^2 / 2 through the origin, using the
/// grid points where Re ECF(t) >= 0.1. Throws std::invalid_argument when fewer
/// than 3 points qualify.
LogCfFit fit_log_cf_quadratic(const ScalarSample& s, const std::vector<double>& grid);

}  // namespace sphlab
