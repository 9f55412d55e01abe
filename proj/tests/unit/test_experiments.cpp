#include <catch_amalgamated.hpp>

#include <cmath>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "sphlab/calibration.hpp"
#include "sphlab/experiments.hpp"

using namespace sphlab;
using Catch::Matchers::WithinAbs;

namespace {

ExperimentConfig small_config() {
  ExperimentConfig cfg;
  cfg.seed = 7;
  cfg.m = 2000;
  cfg.replications = 10;
  cfg.n_list = {2, 4};
  return cfg;
}

std::vector<ExperimentReport> without_runtime(std::vector<ExperimentReport> reports) {
  for (auto& r : reports) r.runtime_ms = 0;
  return reports;
}

}  // namespace

TEST_CASE("registry lists every experiment once", "[experiments]") {
  const auto& registry = experiment_registry();
  CHECK(registry.size() == 9);
  std::set<std::string> names;
  for (const auto& info : registry) {
    names.insert(info.name);
    CHECK_FALSE(info.summary.empty());
    CHECK(find_experiment(info.name) == &info);
  }
  CHECK(names.size() == registry.size());
  CHECK(names.count("exp_main_slln_ratio") == 1);
  CHECK(find_experiment("bogus_name") == nullptr);
}

TEST_CASE("statistic helpers", "[experiments]") {
  const VectorSample vs = VectorSample::from_rows({{3, 4}, {-1, 0}, {1, 1}});
  const ScalarSample ratio = ratio_statistic(vs);
  CHECK_THAT(ratio[0], WithinAbs(std::sqrt(2.0) * 3.0 / 5.0, 1e-15));
  CHECK_THAT(ratio[1], WithinAbs(-std::sqrt(2.0), 1e-15));

  const ScalarSample sums = partial_sum_statistic(vs);
  CHECK_THAT(sums[0], WithinAbs(7.0 / std::sqrt(2.0), 1e-12));
  CHECK_THAT(sums[1], WithinAbs(-1.0 / std::sqrt(2.0), 1e-12));
  CHECK_THAT(sums[2], WithinAbs(std::sqrt(2.0), 1e-12));

  const VectorSample unit = normalize_rows(vs);
  const ScalarSample norms = row_norms(unit);
  for (double r : norms.values()) CHECK_THAT(r, WithinAbs(1.0, 1e-15));

  const VectorSample with_zero = VectorSample::from_rows({{1, 0}, {0, 0}});
  CHECK_THROWS_AS(ratio_statistic(with_zero), std::invalid_argument);
  CHECK_THROWS_AS(normalize_rows(with_zero), std::invalid_argument);

  CHECK(slln_relative_error(1000000, RandomSource(1)) < 0.01);
}

TEST_CASE("rejection_rate counts per replication", "[experiments]") {
  const RandomSource rs(3);
  CHECK(rejection_rate(8, rs, [](const RandomSource& src) { return src.path().back() % 2 == 0; }) == 0.5);
  CHECK_THROWS_AS(rejection_rate(0, rs, [](const RandomSource&) { return true; }), std::invalid_argument);
}

TEST_CASE("null band follows alpha", "[experiments]") {
  ExperimentConfig cfg;
  cfg.alpha = 0.5;
  const RateBand band = null_band(cfg);
  CHECK(band.contains(0.5));
  CHECK(band.lo > 0.3);
  CHECK(band.hi < 0.7);
  const RateBand expected = binomial_band(100, 0.5, cfg.tolerance("null_band_coverage"));
  CHECK(band.lo == expected.lo);
  CHECK(band.hi == expected.hi);
}

TEST_CASE("identical components: Gaussian holds, unequal variances do not", "[experiments][statistical]") {
  ExperimentConfig cfg;
  cfg.replications = 20;
  const RandomSource rs(11);
  const auto gaussian = check_identical_components(sampler_for(DistributionSpec::gaussian(), 4), cfg, rs.split(0));
  CHECK(gaussian.holds);

  const VectorSampler unequal = [](std::size_t m, const RandomSource& src) {
    RowMatrix data = sample_gaussian_vectors(m, 3, 1.0, src).matrix();
    data.col(2) *= 1.5;
    return VectorSample(std::move(data));
  };
  const auto control = check_identical_components(unequal, cfg, rs.split(1));
  CHECK_FALSE(control.holds);
  CHECK(control.rejection_rate == 1.0);

  const VectorSampler shifted = [](std::size_t m, const RandomSource& src) {
    RowMatrix data = sample_gaussian_vectors(m, 2, 1.0, src).matrix();
    data.col(0).array() += 0.2;
    return VectorSample(std::move(data));
  };
  const auto mean_control = check_identical_components(shifted, cfg, rs.split(2));
  CHECK_FALSE(mean_control.holds);
  CHECK(mean_control.max_abs_mean_z > cfg.tolerance("moment_z"));
}

TEST_CASE("partial-sum and ratio identities at small scale", "[experiments][statistical]") {
  ExperimentConfig cfg;
  cfg.replications = 20;
  cfg.alpha = 0.01;
  const RandomSource rs(13);
  const PartialSumOutcome gauss = partial_sum_identity(DistributionSpec::gaussian(), 16, cfg, rs.split(0));
  CHECK(gauss.vs_first_coordinate_rate <= 0.1);
  const RatioOutcome mix = ratio_identity(DistributionSpec::scale_mixture({1, 2}, {0.5, 0.5}), 64, cfg, rs.split(1));
  CHECK(mix.ratio_vs_gaussian_ratio_rate <= 0.1);
  CHECK(mix.marginal_vs_normal_rate == 1.0);
}

TEST_CASE("experiments are deterministic in their config", "[experiments]") {
  const ExperimentConfig cfg = small_config();
  const auto first = without_runtime(run_experiments(cfg, {"exp_identical_components", "exp_zero_atom_dichotomy"}));
  const auto second = without_runtime(run_experiments(cfg, {"exp_identical_components", "exp_zero_atom_dichotomy"}));
  CHECK(first == second);

  ExperimentConfig other = cfg;
  other.seed = 8;
  const auto third = without_runtime(run_experiments(other, {"exp_identical_components"}));
  CHECK(third.front().metrics != first.front().metrics);
}

TEST_CASE("parallel scheduling equals serial output", "[experiments]") {
  const ExperimentConfig cfg = small_config();
  const std::vector<std::string> names{"exp_identical_components", "exp_uniform_sphere", "exp_partial_sum_identity",
                                       "exp_zero_atom_dichotomy"};
  const auto serial = without_runtime(run_experiments(cfg, names, 1));
  const auto parallel = without_runtime(run_experiments(cfg, names, 3));
  REQUIRE(serial.size() == names.size());
  CHECK(serial == parallel);
  for (std::size_t i = 0; i < names.size(); ++i) CHECK(serial[i].name == names[i]);
}

TEST_CASE("alpha is plumbed through to null-calibration checks", "[experiments]") {
  ExperimentConfig cfg = small_config();
  cfg.alpha = 0.5;
  cfg.replications = 40;
  const ExperimentReport report = exp_partial_sum_identity(cfg);
  const RateBand band = null_band(cfg);
  CHECK(report.metrics.at("null_band_hi") == band.hi);
  CHECK(report.config.alpha == 0.5);
  for (const auto& [name, test] : report.tests) CHECK(test.alpha == 0.5);
  for (int n : cfg.n_list) {
    const double rate = report.metrics.at("gaussian_vs_first_coordinate_rate_n" + std::to_string(n));
    INFO("n = " << n << " rate " << rate);
    CHECK(band.contains(rate));
  }
}

TEST_CASE("a throwing experiment does not abort its siblings", "[experiments]") {
  ExperimentConfig cfg = small_config();
  // Too few grid points for the log-CF fit.
  cfg.cf_grid = CfGrid{2.9, 3.0, 2};
  const auto reports = run_experiments(cfg, {"exp_functional_equation", "exp_identical_components"});
  REQUIRE(reports.size() == 2);
  CHECK(reports[0].name == "exp_functional_equation");
  CHECK_FALSE(reports[0].error.empty());
  CHECK(reports[0].verdict == Verdict::fail);
  CHECK(reports[1].error.empty());
  CHECK(reports[1].verdict == Verdict::pass);
}

TEST_CASE("run_experiments rejects bad input", "[experiments]") {
  CHECK_THROWS_AS(run_experiments(small_config(), {"bogus_name"}), std::invalid_argument);
  ExperimentConfig bad = small_config();
  bad.alpha = 2.0;
  CHECK_THROWS_AS(run_experiments(bad, {}), std::invalid_argument);
  CHECK_THROWS_AS(exp_functional_equation(bad), std::invalid_argument);
}

TEST_CASE("verdict is the conjunction of checks", "[experiments]") {
  ExperimentReport r;
  r.finalize();
  CHECK(r.verdict == Verdict::fail);
  r.check("a", true);
  r.finalize();
  CHECK(r.verdict == Verdict::pass);
  r.check("b", false);
  r.finalize();
  CHECK(r.verdict == Verdict::fail);
  r.checks["b"] = true;
  r.error = "boom";
  r.finalize();
  CHECK(r.verdict == Verdict::fail);
  CHECK(parse_verdict(to_string(Verdict::pass)) == Verdict::pass);
  CHECK_THROWS_AS(parse_verdict("maybe"), std::invalid_argument);
}

TEST_CASE("default configuration passes every experiment", "[experiments][statistical][slow]") {
  const auto reports = run_all(ExperimentConfig{});
  REQUIRE(reports.size() == experiment_registry().size());
  for (const auto& report : reports) {
    INFO(report.name << " " << report.error);
    for (const auto& [criterion, holds] : report.checks) {
      INFO(criterion);
      CHECK(holds);
    }
    CHECK(report.verdict == Verdict::pass);
    CHECK_FALSE(report.series.empty());
  }
}
