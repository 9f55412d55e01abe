#include "sphlab/config.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace sphlab {

std::vector<double> CfGrid::points() const {
  std::vector<double> out(static_cast<std::size_t>(steps));
  const double step = (t_max - t_min) / (steps - 1);
  for (int i = 0; i < steps; ++i) out[static_cast<std::size_t>(i)] = t_min + step * i;
  return out;
}

std::map<std::string, double> default_tolerances() {
  return {
      // ECF noise bands at m = 50000.
      {"ecf_residual_max", 0.03},
      {"radiality_control_min", 0.05},
      {"functional_equation_control_min", 0.04},
      {"log_cf_c_halfwidth_sigma1", 0.05},
      {"log_cf_c_halfwidth_sigma2", 0.2},
      {"log_cf_fit_control_min", 0.1},
      // Analytic Cov(X1^2, X2^2) = 2.25 for the {1,2} mixture, at m = 200000.
      {"cov_squares_mixture_lo", 2.10},
      {"cov_squares_mixture_hi", 2.40},
      {"cov_squares_gaussian_abs", 0.1},
      {"slln_relative_error", 0.01},
      {"slln_seed_fraction", 0.99},
      {"power_min", 0.99},
      // Coverage of the binomial band used for null rejection rates.
      {"null_band_coverage", 0.999},
      // z-score bands for single-sample moment checks.
      {"moment_z", 5.0},
  };
}

void ExperimentConfig::validate() const {
  if (!(alpha > 0.0 && alpha < 1.0)) throw std::invalid_argument("alpha must lie in (0, 1)");
  if (m < 2) throw std::invalid_argument("m must be at least 2");
  if (n_list.empty()) throw std::invalid_argument("n_list must not be empty");
  if (std::any_of(n_list.begin(), n_list.end(), [](int n) { return n < 1; })) {
    throw std::invalid_argument("every dimension in n_list must be at least 1");
  }
  if (replications < 1) throw std::invalid_argument("replications must be at least 1");
  if (cf_grid.steps < 2) throw std::invalid_argument("cf_grid needs at least 2 steps");
  if (!(cf_grid.t_min < cf_grid.t_max)) throw std::invalid_argument("cf_grid needs t_min < t_max");
  for (const auto& [name, value] : tolerances) {
    if (!std::isfinite(value)) throw std::invalid_argument("tolerance " + name + " is not finite");
  }
}

double ExperimentConfig::tolerance(const std::string& name) const {
  const auto it = tolerances.find(name);
  if (it == tolerances.end()) throw std::out_of_range("unknown tolerance: " + name);
  return it->second;
}

}  // namespace sphlab
