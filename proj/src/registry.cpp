#include <algorithm>
#include <atomic>
#include <stdexcept>
#include <thread>

#include "sphlab/experiments.hpp"

namespace sphlab {

const std::vector<ExperimentInfo>& experiment_registry() {
  static const std::vector<ExperimentInfo> registry{
      {"exp_identical_components",
       "coordinates of spherical vectors share one marginal law, with zero mean and no correlation",
       exp_identical_components},
      {"exp_cf_radiality", "joint characteristic function depends on t only through |t|", exp_cf_radiality},
      {"exp_extension_2_to_n", "planar sphericity of i.i.d. coordinates carries over to every dimension",
       exp_extension_2_to_n},
      {"exp_zero_atom_dichotomy", "independent spherical pairs put probability 0 or 1 on X = 0",
       exp_zero_atom_dichotomy},
      {"exp_uniform_sphere", "x/|x| of a spherical vector is uniform on the unit sphere", exp_uniform_sphere},
      {"exp_main_slln_ratio", "sqrt(n) X1/|x| matches its Gaussian analogue; |x|/sqrt(n) -> sqrt(E X1^2)",
       exp_main_slln_ratio},
      {"exp_partial_sum_identity", "S_n/sqrt(n) has the law of X1 for i.i.d. spherical coordinates",
       exp_partial_sum_identity},
      {"exp_dependent_spherical", "a scale mixture is spherical with Cov(X1^2, X2^2) > 0 and a non-normal marginal",
       exp_dependent_spherical},
      {"exp_functional_equation", "phi(s) phi(t) = phi(sqrt(s^2 + t^2)) and log phi(t) = c t^2 / 2",
       exp_functional_equation},
  };
  return registry;
}

const ExperimentInfo* find_experiment(const std::string& name) {
  const auto& registry = experiment_registry();
  const auto it = std::find_if(registry.begin(), registry.end(), [&](const auto& e) { return e.name == name; });
  return it == registry.end() ? nullptr : &*it;
}

std::vector<ExperimentReport> run_experiments(const ExperimentConfig& cfg,
                                              const std::vector<std::string>& names,
                                              unsigned threads) {
  cfg.validate();
  std::vector<const ExperimentInfo*> selected;
  if (names.empty()) {
    for (const auto& info : experiment_registry()) selected.push_back(&info);
  } else {
    for (const auto& name : names) {
      const ExperimentInfo* info = find_experiment(name);
      if (info == nullptr) throw std::invalid_argument("unknown experiment: " + name);
      selected.push_back(info);
    }
  }

  std::vector<ExperimentReport> reports(selected.size());
  const auto run_one = [&](std::size_t i) {
    try {
      reports[i] = selected[i]->run(cfg);
    } catch (const std::exception& e) {
      ExperimentReport failed;
      failed.name = selected[i]->name;
      failed.config = cfg;
      failed.error = e.what();
      failed.finalize();
      reports[i] = std::move(failed);
    }
  };

  const unsigned workers = std::clamp<unsigned>(threads, 1, static_cast<unsigned>(std::max<std::size_t>(selected.size(), 1)));
  if (workers == 1) {
    for (std::size_t i = 0; i < selected.size(); ++i) run_one(i);
    return reports;
  }
  std::atomic<std::size_t> next{0};
  {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < selected.size(); i = next++) run_one(i);
      });
    }
  }
  return reports;
}

std::vector<ExperimentReport> run_all(const ExperimentConfig& cfg, unsigned threads) {
  return run_experiments(cfg, {}, threads);
}

}  // namespace sphlab
