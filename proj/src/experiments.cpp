#include "sphlab/experiments.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <stdexcept>
#include <string>

#include "sphlab/characteristic.hpp"
#include "sphlab/invariance.hpp"
#include "sphlab/ks.hpp"
#include "sphlab/moments.hpp"
#include "sphlab/orthogonal.hpp"

namespace sphlab {
namespace {

const std::vector<double> kMixtureSigmas{1.0, 2.0};
const std::vector<double> kMixtureWeights{0.5, 0.5};

DistributionSpec mixture_spec() { return DistributionSpec::scale_mixture(kMixtureSigmas, kMixtureWeights); }

template <class Body>
ExperimentReport timed(const std::string& name, const ExperimentConfig& cfg, Body body) {
  cfg.validate();
  ExperimentReport report;
  report.name = name;
  report.config = cfg;
  const auto start = std::chrono::steady_clock::now();
  body(report, RandomSource(cfg.seed).split(stream_key(name)));
  const auto elapsed = std::chrono::steady_clock::now() - start;
  report.runtime_ms = std::chrono::duration_cast<std::chrono::milliseconds>(elapsed).count();
  report.finalize();
  return report;
}

std::size_t to_size(int value) { return static_cast<std::size_t>(value); }

std::size_t ecf_size(const ExperimentConfig& cfg) { return std::max(to_size(cfg.m), kEcfSampleSize); }

ScalarSample standard_normal(std::size_t m, const RandomSource& rs) {
  return column(sample_gaussian_vectors(m, 1, 1.0, rs), 0);
}

ScalarSample scaled(const ScalarSample& s, double factor) {
  std::vector<double> out(s.values().begin(), s.values().end());
  for (double& v : out) v *= factor;
  return ScalarSample(std::move(out));
}

std::vector<double> sorted_values(const ScalarSample& s) {
  std::vector<double> out(s.values().begin(), s.values().end());
  std::sort(out.begin(), out.end());
  return out;
}

// Two-sample QQ points at probabilities k / (count + 1).
Series qq_points(const ScalarSample& a, const ScalarSample& b, int count = 99) {
  const auto xs = sorted_values(a);
  const auto ys = sorted_values(b);
  Series out;
  for (int k = 1; k <= count; ++k) {
    const double p = static_cast<double>(k) / (count + 1);
    const auto ia = static_cast<std::size_t>(p * static_cast<double>(xs.size() - 1));
    const auto ib = static_cast<std::size_t>(p * static_cast<double>(ys.size() - 1));
    out.emplace_back(xs[ia], ys[ib]);
  }
  return out;
}

Series density_histogram(const ScalarSample& s, double lo, double hi, int bins) {
  std::vector<double> counts(static_cast<std::size_t>(bins), 0.0);
  const double width = (hi - lo) / bins;
  for (const double v : s.values()) {
    if (v < lo || v >= hi) continue;
    const auto bin = std::min(static_cast<std::size_t>((v - lo) / width), counts.size() - 1);
    counts[bin] += 1.0;
  }
  Series out;
  const auto total = static_cast<double>(s.size());
  for (int b = 0; b < bins; ++b) {
    out.emplace_back(lo + (b + 0.5) * width, counts[static_cast<std::size_t>(b)] / (total * width));
  }
  return out;
}

std::string suffix_n(const std::string& base, std::size_t n) { return base + "_n" + std::to_string(n); }

// KS of every column of `a` against the same column of `b`, Bonferroni over columns.
bool coordinatewise_ks_rejects(const VectorSample& a, const VectorSample& b, double alpha) {
  const auto k = static_cast<double>(a.dims());
  double min_p = 1.0;
  for (std::size_t j = 0; j < a.dims(); ++j) {
    min_p = std::min(min_p, ks_two_sample(column(a, j), column(b, j), alpha).p_value);
  }
  return std::min(1.0, k * min_p) < alpha;
}

}  // namespace

VectorSampler sampler_for(const DistributionSpec& spec, std::size_t n) {
  return [spec, n](std::size_t m, const RandomSource& rs) { return sample(spec, m, n, rs); };
}

double rejection_rate(int replications, const RandomSource& rs,
                      const std::function<bool(const RandomSource&)>& rejects) {
  if (replications < 1) throw std::invalid_argument("rejection_rate: need at least one replication");
  int count = 0;
  for (int r = 0; r < replications; ++r) {
    if (rejects(rs.split(static_cast<std::uint32_t>(r)))) ++count;
  }
  return static_cast<double>(count) / replications;
}

RateBand null_band(const ExperimentConfig& cfg) {
  return binomial_band(to_size(cfg.replications), cfg.alpha, cfg.tolerance("null_band_coverage"));
}

ScalarSample ratio_statistic(const VectorSample& vs) {
  const double root_n = std::sqrt(static_cast<double>(vs.dims()));
  std::vector<double> out(vs.rows());
  for (std::size_t i = 0; i < vs.rows(); ++i) {
    const double norm = vs.matrix().row(static_cast<Eigen::Index>(i)).norm();
    if (!(norm > 0.0)) throw std::invalid_argument("ratio_statistic: zero row");
    out[i] = root_n * vs(i, 0) / norm;
  }
  return ScalarSample(std::move(out));
}

ScalarSample partial_sum_statistic(const VectorSample& vs) {
  const std::vector<double> first_row(vs.dims(), 1.0 / std::sqrt(static_cast<double>(vs.dims())));
  return column(apply_rotation(householder_complete(first_row), vs), 0);
}

VectorSample normalize_rows(const VectorSample& vs) {
  RowMatrix out = vs.matrix();
  for (Eigen::Index i = 0; i < out.rows(); ++i) {
    const double norm = out.row(i).norm();
    if (!(norm > 0.0)) throw std::invalid_argument("normalize_rows: zero row");
    out.row(i) /= norm;
  }
  return VectorSample(std::move(out));
}

IdenticalComponentsOutcome check_identical_components(const VectorSampler& sampler,
                                                      const ExperimentConfig& cfg,
                                                      const RandomSource& rs) {
  const std::size_t m = to_size(cfg.m);
  IdenticalComponentsOutcome out;
  out.rejection_rate = rejection_rate(cfg.replications, rs, [&](const RandomSource& src) {
    const VectorSample vs = sampler(m, src);
    const std::size_t half = vs.rows() / 2;
    const VectorSample first = vs.slice(0, half);
    const VectorSample second = vs.slice(half, vs.rows());
    const std::size_t n = vs.dims();
    const double pairs = static_cast<double>(n * (n - 1) / 2);
    double min_p = 1.0;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        min_p = std::min(min_p, ks_two_sample(column(first, i), column(second, j), cfg.alpha).p_value);
      }
    }
    return pairs > 0 && std::min(1.0, pairs * min_p) < cfg.alpha;
  });

  // Moment bands on the first replication's sample, self-normalized.
  const VectorSample vs = sampler(m, rs.split(0));
  const MomentSummary moments = marginal_moment_checks(vs);
  const auto rows = static_cast<double>(vs.rows());
  const RowMatrix centered = vs.matrix().rowwise() - vs.matrix().colwise().mean();
  const Eigen::RowVectorXd variance = centered.array().square().colwise().mean();
  for (std::size_t j = 0; j < vs.dims(); ++j) {
    const double se = std::sqrt(variance(static_cast<Eigen::Index>(j)) / rows);
    const double z = se > 0.0 ? std::abs(moments.means[j]) / se : 0.0;
    out.max_abs_mean_z = std::max(out.max_abs_mean_z, z);
  }
  for (const PairStat& pair : moments.pair_correlations) {
    const auto ci = centered.col(static_cast<Eigen::Index>(pair.i)).array();
    const auto cj = centered.col(static_cast<Eigen::Index>(pair.j)).array();
    const double denom = variance(static_cast<Eigen::Index>(pair.i)) * variance(static_cast<Eigen::Index>(pair.j));
    if (!(denom > 0.0)) continue;
    // Standard error of r under uncorrelatedness: sqrt(E[x^2 y^2] / (E x^2 E y^2) / m).
    const double se = std::sqrt((ci.square() * cj.square()).mean() / denom / rows);
    out.max_abs_correlation_z = std::max(out.max_abs_correlation_z, std::abs(pair.value) / se);
  }

  const double z_max = cfg.tolerance("moment_z");
  out.holds = out.rejection_rate <= null_band(cfg).hi && out.max_abs_mean_z <= z_max &&
              out.max_abs_correlation_z <= z_max;
  return out;
}

double rotation_rejection_rate(const VectorSampler& sampler, const ExperimentConfig& cfg,
                               const RandomSource& rs) {
  const std::size_t m = to_size(cfg.m);
  return rejection_rate(cfg.replications, rs, [&](const RandomSource& src) {
    const VectorSample vs = sampler(m, src.split(0));
    return rotation_invariance_test(vs, src.split(1), kDefaultRotations, cfg.alpha).reject;
  });
}

RatioOutcome ratio_identity(const DistributionSpec& spec, std::size_t n, const ExperimentConfig& cfg,
                            const RandomSource& rs) {
  const std::size_t m = to_size(cfg.m);
  const double marginal_scale = 1.0 / std::sqrt(spec.second_moment(n));
  int a = 0;
  int b_ratio = 0;
  int b_marginal = 0;
  for (int r = 0; r < cfg.replications; ++r) {
    const RandomSource src = rs.split(static_cast<std::uint32_t>(r));
    const VectorSample x = sample(spec, m, n, src.split(0));
    const VectorSample z = sample_gaussian_vectors(m, n, 1.0, src.split(1));
    const ScalarSample ratio_x = ratio_statistic(x);
    a += ks_two_sample(ratio_x, ratio_statistic(z), cfg.alpha).reject ? 1 : 0;
    b_ratio += ks_two_sample(ratio_x, standard_normal(m, src.split(2)), cfg.alpha).reject ? 1 : 0;
    const ScalarSample marginal = scaled(column(x, 0), marginal_scale);
    b_marginal += ks_two_sample(marginal, standard_normal(m, src.split(3)), cfg.alpha).reject ? 1 : 0;
  }
  const double reps = cfg.replications;
  return {a / reps, b_ratio / reps, b_marginal / reps};
}

PartialSumOutcome partial_sum_identity(const DistributionSpec& spec, std::size_t n,
                                       const ExperimentConfig& cfg, const RandomSource& rs) {
  const std::size_t m = to_size(cfg.m);
  int vs_first = 0;
  int vs_normal = 0;
  for (int r = 0; r < cfg.replications; ++r) {
    const RandomSource src = rs.split(static_cast<std::uint32_t>(r));
    const ScalarSample sums = partial_sum_statistic(sample(spec, m, n, src.split(0)));
    const ScalarSample first = column(sample(spec, m, 1, src.split(1)), 0);
    vs_first += ks_two_sample(sums, first, cfg.alpha).reject ? 1 : 0;
    vs_normal += ks_two_sample(sums, standard_normal(m, src.split(2)), cfg.alpha).reject ? 1 : 0;
  }
  const double reps = cfg.replications;
  return {vs_first / reps, vs_normal / reps};
}

double slln_relative_error(std::size_t n, const RandomSource& rs) {
  const VectorSample x = sample_gaussian_vectors(1, n, 1.0, rs);
  return std::abs(x.matrix().norm() / std::sqrt(static_cast<double>(n)) - 1.0);
}

ExperimentReport exp_identical_components(const ExperimentConfig& cfg) {
  return timed("exp_identical_components", cfg, [&](ExperimentReport& report, const RandomSource& rs) {
    constexpr std::size_t n = 4;
    const auto record = [&](const std::string& label, const IdenticalComponentsOutcome& o) {
      report.metrics[label + "_pairwise_ks_rejection_rate"] = o.rejection_rate;
      report.metrics[label + "_max_abs_mean_z"] = o.max_abs_mean_z;
      report.metrics[label + "_max_abs_correlation_z"] = o.max_abs_correlation_z;
    };

    const auto gaussian = check_identical_components(sampler_for(DistributionSpec::gaussian(), n), cfg, rs.split(0));
    const auto mixture = check_identical_components(sampler_for(mixture_spec(), n), cfg, rs.split(1));
    // Columns with standard deviations 1, 1.25, 1.5, 1.75: cannot have identical marginals.
    const VectorSampler unequal = [](std::size_t m, const RandomSource& src) {
      RowMatrix data = sample_gaussian_vectors(m, n, 1.0, src).matrix();
      for (Eigen::Index j = 0; j < data.cols(); ++j) data.col(j) *= 1.0 + 0.25 * static_cast<double>(j);
      return VectorSample(std::move(data));
    };
    const auto control = check_identical_components(unequal, cfg, rs.split(2));
    record("gaussian", gaussian);
    record("mixture", mixture);
    record("control_unequal_variances", control);
    report.metrics["null_band_hi"] = null_band(cfg).hi;

    const VectorSample example = sample(mixture_spec(), to_size(cfg.m), n, rs.split(0).split(0));
    report.tests["mixture_column0_vs_column1"] =
        ks_two_sample(column(example.slice(0, example.rows() / 2), 0),
                      column(example.slice(example.rows() / 2, example.rows()), 1), cfg.alpha);
    for (std::size_t j = 0; j < n; ++j) {
      const double mean = marginal_moment_checks(example).means[j];
      report.series["mixture_column_means"].emplace_back(static_cast<double>(j), mean);
    }

    report.check("gaussian_identical_marginals", gaussian.holds);
    report.check("mixture_identical_marginals", mixture.holds);
    report.check("control_unequal_variances_detected",
                 !control.holds && control.rejection_rate >= cfg.tolerance("power_min"));
  });
}

ExperimentReport exp_cf_radiality(const ExperimentConfig& cfg) {
  return timed("exp_cf_radiality", cfg, [&](ExperimentReport& report, const RandomSource& rs) {
    const std::size_t m = ecf_size(cfg);
    const double tol = cfg.tolerance("ecf_residual_max");
    const double control_min = cfg.tolerance("radiality_control_min");
    report.metrics["m"] = static_cast<double>(m);

    struct Case {
      std::string label;
      DistributionSpec spec;
      std::size_t n;
      bool spherical;
    };
    const std::vector<Case> cases{
        {"gaussian", DistributionSpec::gaussian(), 2, true},
        {"uniform_sphere", DistributionSpec::uniform_sphere(), 3, true},
        {"mixture", mixture_spec(), 2, true},
        {"laplace", DistributionSpec::laplace(), 2, false},
    };
    for (std::size_t c = 0; c < cases.size(); ++c) {
      const Case& item = cases[c];
      const RandomSource src = rs.split(static_cast<std::uint32_t>(c));
      const VectorSample vs = sample(item.spec, m, item.n, src.split(0));
      const auto probes = default_radial_probes(item.n, src.split(1));
      const double residual = cf_radiality_residual(vs, probes);
      report.metrics[item.label + "_residual"] = residual;
      if (item.spherical) {
        report.check(item.label + "_radial", residual <= tol);
      } else {
        report.check(item.label + "_control_non_radial", residual >= control_min);
      }
      if (item.label == "gaussian" || item.label == "laplace") {
        // Residual restricted to each probe radius.
        for (const double radius : {0.5, 1.0, 1.5, 2.0, 2.5, 3.0}) {
          const auto ring = radial_probes(item.n, 20, {radius}, src.split(1));
          report.series[item.label + "_residual_by_radius"].emplace_back(radius,
                                                                         cf_radiality_residual(vs, ring));
        }
      }
    }
  });
}

ExperimentReport exp_extension_2_to_n(const ExperimentConfig& cfg) {
  return timed("exp_extension_2_to_n", cfg, [&](ExperimentReport& report, const RandomSource& rs) {
    const RateBand band = null_band(cfg);
    const double tol = cfg.tolerance("ecf_residual_max");
    const std::size_t m_ecf = ecf_size(cfg);
    report.metrics["null_band_hi"] = band.hi;

    for (std::size_t idx = 0; idx < cfg.n_list.size(); ++idx) {
      const auto n = to_size(cfg.n_list[idx]);
      // A rotation of R^1 is +-1; the projection test needs n >= 2.
      if (n < 2) continue;
      const RandomSource src = rs.split(static_cast<std::uint32_t>(idx));

      const double gauss_rate = rotation_rejection_rate(sampler_for(DistributionSpec::gaussian(), n), cfg, src.split(0));
      const VectorSample gauss = sample_gaussian_vectors(m_ecf, n, 1.0, src.split(1));
      const double gauss_residual = cf_radiality_residual(gauss, default_radial_probes(n, src.split(2)));
      report.metrics[suffix_n("gaussian_rotation_rejection_rate", n)] = gauss_rate;
      report.metrics[suffix_n("gaussian_radiality_residual", n)] = gauss_residual;
      report.check(suffix_n("gaussian_rotation_invariant", n), gauss_rate <= band.hi);
      report.check(suffix_n("gaussian_radial_cf", n), gauss_residual <= tol);
      report.series["gaussian_rotation_rejection_rate_by_n"].emplace_back(static_cast<double>(n), gauss_rate);

      const double point_rate =
          rotation_rejection_rate(sampler_for(DistributionSpec::point_mass_zero(), n), cfg, src.split(3));
      const VectorSample zeros = sample(DistributionSpec::point_mass_zero(), m_ecf, n, src.split(4));
      const double point_residual = cf_radiality_residual(zeros, default_radial_probes(n, src.split(2)));
      report.metrics[suffix_n("point_mass_rotation_rejection_rate", n)] = point_rate;
      report.metrics[suffix_n("point_mass_radiality_residual", n)] = point_residual;
      report.check(suffix_n("point_mass_spherical", n), point_rate == 0.0 && point_residual == 0.0);
    }

    // i.i.d. Laplace is already non-spherical in the plane.
    const RandomSource lap = rs.split(1000);
    const double lap_rate = rotation_rejection_rate(sampler_for(DistributionSpec::laplace(), 2), cfg, lap.split(0));
    const VectorSample lap_sample = sample(DistributionSpec::laplace(), m_ecf, 2, lap.split(1));
    const double lap_residual = cf_radiality_residual(lap_sample, default_radial_probes(2, lap.split(2)));
    report.metrics["laplace_rotation_rejection_rate_n2"] = lap_rate;
    report.metrics["laplace_radiality_residual_n2"] = lap_residual;
    report.tests["laplace_rotation_n2"] = rotation_invariance_test(
        sample(DistributionSpec::laplace(), to_size(cfg.m), 2, lap.split(0).split(0).split(0)),
        lap.split(0).split(0).split(1), kDefaultRotations, cfg.alpha);
    report.check("laplace_control_non_radial_n2", lap_residual >= cfg.tolerance("radiality_control_min"));
    report.check("laplace_control_rotation_rate_above_null_n2", lap_rate > band.hi);
  });
}

ExperimentReport exp_zero_atom_dichotomy(const ExperimentConfig& cfg) {
  return timed("exp_zero_atom_dichotomy", cfg, [&](ExperimentReport& report, const RandomSource& rs) {
    const RateBand band = null_band(cfg);
    const double power_min = cfg.tolerance("power_min");
    report.metrics["null_band_hi"] = band.hi;
    const std::vector<double> atoms{0.0, 0.1, 0.3, 0.5, 1.0};
    for (std::size_t k = 0; k < atoms.size(); ++k) {
      const double p = atoms[k];
      const double rate = rotation_rejection_rate(sampler_for(DistributionSpec::zero_inflated(p), 2), cfg,
                                                  rs.split(static_cast<std::uint32_t>(k)));
      const std::string label = "p_" + std::to_string(static_cast<int>(std::lround(p * 10))) + "_tenths";
      report.metrics[label + "_rejection_rate"] = rate;
      report.series["rejection_rate_by_atom"].emplace_back(p, rate);
      if (p == 0.0) {
        report.check(label + "_spherical_control", rate <= band.hi);
      } else if (p == 1.0) {
        report.check(label + "_degenerate_control", rate == 0.0);
      } else {
        report.check(label + "_not_spherical", rate >= power_min);
      }
    }
    const VectorSample example = sample(DistributionSpec::zero_inflated(0.3), to_size(cfg.m), 2, rs.split(100));
    report.tests["p_3_tenths_rotation"] =
        rotation_invariance_test(example, rs.split(101), kDefaultRotations, cfg.alpha);
    std::size_t zeros = 0;
    for (const double v : example.matrix().reshaped()) zeros += v == 0.0 ? 1 : 0;
    report.metrics["p_3_tenths_zero_fraction"] = static_cast<double>(zeros) / static_cast<double>(example.matrix().size());
  });
}

ExperimentReport exp_uniform_sphere(const ExperimentConfig& cfg) {
  return timed("exp_uniform_sphere", cfg, [&](ExperimentReport& report, const RandomSource& rs) {
    const RateBand band = null_band(cfg);
    const std::size_t m = to_size(cfg.m);
    report.metrics["null_band_hi"] = band.hi;

    const auto normalized_vs_sphere = [&](const DistributionSpec& spec, std::size_t n, const RandomSource& src) {
      return rejection_rate(cfg.replications, src, [&](const RandomSource& r) {
        const VectorSample directions = normalize_rows(sample(spec, m, n, r.split(0)));
        return coordinatewise_ks_rejects(directions, sample_uniform_sphere(m, n, r.split(1)), cfg.alpha);
      });
    };
    const double gaussian = normalized_vs_sphere(DistributionSpec::gaussian(), 3, rs.split(0));
    const double mixture = normalized_vs_sphere(mixture_spec(), 3, rs.split(1));
    const double laplace = normalized_vs_sphere(DistributionSpec::laplace(), 2, rs.split(2));
    report.metrics["gaussian_n3_rejection_rate"] = gaussian;
    report.metrics["mixture_n3_rejection_rate"] = mixture;
    report.metrics["laplace_n2_rejection_rate"] = laplace;
    report.check("gaussian_directions_uniform", gaussian <= band.hi);
    report.check("mixture_directions_uniform", mixture <= band.hi);
    report.check("laplace_control_directions_not_uniform", laplace >= cfg.tolerance("power_min"));

    const VectorSample sphere = sample_uniform_sphere(m, 3, rs.split(3));
    const VectorSample mixed = normalize_rows(sample(mixture_spec(), m, 3, rs.split(4)));
    report.tests["mixture_n3_coordinate0"] = ks_two_sample(column(mixed, 0), column(sphere, 0), cfg.alpha);
    // Coordinate 0 of a uniform point on S^2 is uniform on [-1, 1].
    report.series["sphere_n3_coordinate0_density"] = density_histogram(column(sphere, 0), -1.0, 1.0, 20);
    report.series["laplace_n2_coordinate0_density"] =
        density_histogram(column(normalize_rows(sample(DistributionSpec::laplace(), m, 2, rs.split(5))), 0), -1.0,
                          1.0, 20);
  });
}

ExperimentReport exp_main_slln_ratio(const ExperimentConfig& cfg) {
  return timed("exp_main_slln_ratio", cfg, [&](ExperimentReport& report, const RandomSource& rs) {
    const RateBand band = null_band(cfg);
    const double power_min = cfg.tolerance("power_min");
    const auto n_max = to_size(*std::max_element(cfg.n_list.begin(), cfg.n_list.end()));
    report.metrics["null_band_hi"] = band.hi;

    const std::vector<std::pair<std::string, DistributionSpec>> families{
        {"gaussian", DistributionSpec::gaussian()}, {"mixture", mixture_spec()}};
    for (std::size_t f = 0; f < families.size(); ++f) {
      const auto& [label, spec] = families[f];
      for (std::size_t idx = 0; idx < cfg.n_list.size(); ++idx) {
        const auto n = to_size(cfg.n_list[idx]);
        const RatioOutcome o =
            ratio_identity(spec, n, cfg, rs.split(static_cast<std::uint32_t>(f)).split(static_cast<std::uint32_t>(idx)));
        report.metrics[suffix_n(label + "_ratio_vs_gaussian_ratio_rate", n)] = o.ratio_vs_gaussian_ratio_rate;
        report.check(suffix_n(label + "_ratio_matches_gaussian_ratio", n), o.ratio_vs_gaussian_ratio_rate <= band.hi);
        if (n != n_max) continue;
        report.metrics[suffix_n(label + "_ratio_vs_normal_rate", n)] = o.ratio_vs_normal_rate;
        report.metrics[suffix_n(label + "_marginal_vs_normal_rate", n)] = o.marginal_vs_normal_rate;
        if (label == "gaussian") {
          report.check(suffix_n("gaussian_ratio_limit_normal", n), o.ratio_vs_normal_rate <= band.hi);
          report.check(suffix_n("gaussian_marginal_normal", n), o.marginal_vs_normal_rate <= band.hi);
        } else {
          // The ratio still tends to N(0,1), but the standardized marginal is a
          // normal mixture: without independence the limit is not X_1 / sqrt(E X_1^2).
          report.check(suffix_n("mixture_control_marginal_not_normal", n), o.marginal_vs_normal_rate >= power_min);
        }
      }
    }

    const RandomSource slln = rs.split(100);
    int within = 0;
    double worst = 0.0;
    const double slln_tol = cfg.tolerance("slln_relative_error");
    for (int r = 0; r < cfg.replications; ++r) {
      const double err = slln_relative_error(kSllnDimension, slln.split(static_cast<std::uint32_t>(r)));
      worst = std::max(worst, err);
      within += err <= slln_tol ? 1 : 0;
    }
    const double fraction = static_cast<double>(within) / cfg.replications;
    report.metrics["slln_dimension"] = static_cast<double>(kSllnDimension);
    report.metrics["slln_fraction_within_tolerance"] = fraction;
    report.metrics["slln_worst_relative_error"] = worst;
    report.check("slln_norm_concentrates", fraction >= cfg.tolerance("slln_seed_fraction"));

    // |x_k| / sqrt(k) along one path of the first SLLN replication.
    const VectorSample path = sample_gaussian_vectors(1, kSllnDimension, 1.0, slln.split(0));
    double sum_sq = 0.0;
    std::size_t next = 1;
    for (std::size_t k = 0; k < kSllnDimension; ++k) {
      sum_sq += path(0, k) * path(0, k);
      if (k + 1 == next) {
        report.series["slln_norm_over_sqrt_n"].emplace_back(static_cast<double>(k + 1),
                                                            std::sqrt(sum_sq / static_cast<double>(k + 1)));
        next *= 2;
      }
    }

    const RandomSource ex = rs.split(200);
    const ScalarSample ratio_x = ratio_statistic(sample(DistributionSpec::gaussian(), to_size(cfg.m), n_max, ex.split(0)));
    const ScalarSample ratio_z = ratio_statistic(sample_gaussian_vectors(to_size(cfg.m), n_max, 1.0, ex.split(1)));
    report.tests[suffix_n("gaussian_ratio_vs_gaussian_ratio", n_max)] = ks_two_sample(ratio_x, ratio_z, cfg.alpha);
    report.series[suffix_n("gaussian_ratio_density", n_max)] = density_histogram(ratio_x, -4.0, 4.0, 40);
    const VectorSample mixture = sample(mixture_spec(), to_size(cfg.m), n_max, ex.split(2));
    report.series[suffix_n("mixture_ratio_qq_vs_gaussian_ratio", n_max)] = qq_points(ratio_statistic(mixture), ratio_z);
    report.series["mixture_marginal_qq_vs_normal"] = qq_points(
        scaled(column(mixture, 0), 1.0 / std::sqrt(mixture_spec().second_moment())), standard_normal(to_size(cfg.m), ex.split(3)));
  });
}

ExperimentReport exp_partial_sum_identity(const ExperimentConfig& cfg) {
  return timed("exp_partial_sum_identity", cfg, [&](ExperimentReport& report, const RandomSource& rs) {
    const RateBand band = null_band(cfg);
    report.metrics["null_band_hi"] = band.hi;
    for (std::size_t idx = 0; idx < cfg.n_list.size(); ++idx) {
      const auto n = to_size(cfg.n_list[idx]);
      const PartialSumOutcome o =
          partial_sum_identity(DistributionSpec::gaussian(), n, cfg, rs.split(static_cast<std::uint32_t>(idx)));
      report.metrics[suffix_n("gaussian_vs_first_coordinate_rate", n)] = o.vs_first_coordinate_rate;
      report.check(suffix_n("gaussian_partial_sum_matches_first_coordinate", n), o.vs_first_coordinate_rate <= band.hi);
    }

    constexpr std::size_t n = kPartialSumControlDimension;
    const PartialSumOutcome lap = partial_sum_identity(DistributionSpec::laplace(), n, cfg, rs.split(1000));
    report.metrics[suffix_n("laplace_vs_first_coordinate_rate", n)] = lap.vs_first_coordinate_rate;
    report.metrics[suffix_n("laplace_vs_normal_rate", n)] = lap.vs_normal_rate;
    report.check(suffix_n("laplace_control_partial_sum_differs_from_first_coordinate", n),
                 lap.vs_first_coordinate_rate >= cfg.tolerance("power_min"));
    report.check(suffix_n("laplace_partial_sum_near_normal", n), lap.vs_normal_rate <= band.hi);

    const RandomSource ex = rs.split(2000);
    const std::size_t m = to_size(cfg.m);
    const ScalarSample sums = partial_sum_statistic(sample(DistributionSpec::laplace(), m, n, ex.split(0)));
    const ScalarSample first = column(sample(DistributionSpec::laplace(), m, 1, ex.split(1)), 0);
    const ScalarSample normal = standard_normal(m, ex.split(2));
    report.tests[suffix_n("laplace_partial_sum_vs_first_coordinate", n)] = ks_two_sample(sums, first, cfg.alpha);
    report.tests[suffix_n("laplace_partial_sum_vs_normal", n)] = ks_two_sample(sums, normal, cfg.alpha);
    report.series[suffix_n("laplace_partial_sum_qq_vs_first_coordinate", n)] = qq_points(sums, first);
    report.series[suffix_n("laplace_partial_sum_qq_vs_normal", n)] = qq_points(sums, normal);
  });
}

ExperimentReport exp_dependent_spherical(const ExperimentConfig& cfg) {
  return timed("exp_dependent_spherical", cfg, [&](ExperimentReport& report, const RandomSource& rs) {
    const RateBand band = null_band(cfg);
    const std::size_t m = to_size(cfg.m);
    const std::size_t m_cov = std::max(m, kCovSquaresSampleSize);
    report.metrics["null_band_hi"] = band.hi;
    report.metrics["m_cov"] = static_cast<double>(m_cov);

    const DistributionSpec mixture = mixture_spec();
    const double mixture_rate = rotation_rejection_rate(sampler_for(mixture, 2), cfg, rs.split(0));
    const double mixture_cov =
        marginal_moment_checks(sample(mixture, m_cov, 2, rs.split(1))).pair_cov_squares.front().value;
    const double mixture_sd = std::sqrt(mixture.second_moment());
    const double mixture_marginal_rate = rejection_rate(cfg.replications, rs.split(2), [&](const RandomSource& src) {
      return ks_two_sample(column(sample(mixture, m, 2, src.split(0)), 0),
                           column(sample_gaussian_vectors(m, 1, mixture_sd, src.split(1)), 0), cfg.alpha)
          .reject;
    });
    report.metrics["mixture_rotation_rejection_rate"] = mixture_rate;
    report.metrics["mixture_cov_squares"] = mixture_cov;
    report.metrics["mixture_cov_squares_analytic"] = 2.25;
    report.metrics["mixture_marginal_vs_matched_normal_rate"] = mixture_marginal_rate;
    report.check("mixture_spherical", mixture_rate <= band.hi);
    report.check("mixture_cov_squares_positive",
                 mixture_cov > cfg.tolerance("cov_squares_mixture_lo") &&
                     mixture_cov < cfg.tolerance("cov_squares_mixture_hi"));
    report.check("mixture_control_marginal_not_normal", mixture_marginal_rate >= cfg.tolerance("power_min"));

    const double gaussian_cov =
        marginal_moment_checks(sample_gaussian_vectors(m_cov, 2, 1.0, rs.split(3))).pair_cov_squares.front().value;
    const double gaussian_marginal_rate = rejection_rate(cfg.replications, rs.split(4), [&](const RandomSource& src) {
      return ks_two_sample(column(sample_gaussian_vectors(m, 2, 1.0, src.split(0)), 0),
                           standard_normal(m, src.split(1)), cfg.alpha)
          .reject;
    });
    report.metrics["gaussian_cov_squares"] = gaussian_cov;
    report.metrics["gaussian_marginal_vs_normal_rate"] = gaussian_marginal_rate;
    report.check("gaussian_cov_squares_zero", std::abs(gaussian_cov) < cfg.tolerance("cov_squares_gaussian_abs"));
    report.check("gaussian_marginal_normal", gaussian_marginal_rate <= band.hi);

    const ScalarSample marginal = column(sample(mixture, m, 2, rs.split(5)), 0);
    const ScalarSample matched = column(sample_gaussian_vectors(m, 1, mixture_sd, rs.split(6)), 0);
    report.tests["mixture_marginal_vs_matched_normal"] = ks_two_sample(marginal, matched, cfg.alpha);
    report.series["mixture_marginal_qq_vs_matched_normal"] = qq_points(marginal, matched);
  });
}

ExperimentReport exp_functional_equation(const ExperimentConfig& cfg) {
  return timed("exp_functional_equation", cfg, [&](ExperimentReport& report, const RandomSource& rs) {
    const std::size_t m = ecf_size(cfg);
    const auto pairs = square_pair_grid(-2.0, 2.0, 21);
    const auto grid = cfg.cf_grid.points();
    const double tol = cfg.tolerance("ecf_residual_max");
    const double control_min = cfg.tolerance("functional_equation_control_min");
    report.metrics["m"] = static_cast<double>(m);

    const ScalarSample unit = column(sample_gaussian_vectors(m, 1, 1.0, rs.split(0)), 0);
    const double unit_residual = functional_equation_residual(unit, pairs);
    const LogCfFit unit_fit = fit_log_cf_quadratic(unit, grid);
    report.metrics["gaussian_sigma1_residual"] = unit_residual;
    report.metrics["gaussian_sigma1_c"] = unit_fit.c;
    report.metrics["gaussian_sigma1_fit_residual"] = unit_fit.max_fit_residual;
    report.check("gaussian_sigma1_functional_equation", unit_residual <= tol);
    report.check("gaussian_sigma1_c_is_minus_variance",
                 std::abs(unit_fit.c + 1.0) < cfg.tolerance("log_cf_c_halfwidth_sigma1"));

    const ScalarSample wide = column(sample_gaussian_vectors(m, 1, 2.0, rs.split(1)), 0);
    const LogCfFit wide_fit = fit_log_cf_quadratic(wide, grid);
    report.metrics["gaussian_sigma2_c"] = wide_fit.c;
    report.check("gaussian_sigma2_c_is_minus_variance",
                 std::abs(wide_fit.c + 4.0) < cfg.tolerance("log_cf_c_halfwidth_sigma2"));

    const ScalarSample lap = column(sample(DistributionSpec::laplace(), m, 1, rs.split(2)), 0);
    const double lap_residual = functional_equation_residual(lap, pairs);
    report.metrics["laplace_residual"] = lap_residual;
    report.check("laplace_control_violates_functional_equation", lap_residual >= control_min);

    const ScalarSample rad = column(sample(DistributionSpec::rademacher(), m, 1, rs.split(3)), 0);
    const double rad_residual = functional_equation_residual(rad, pairs);
    const LogCfFit rad_fit = fit_log_cf_quadratic(rad, grid);
    report.metrics["rademacher_residual"] = rad_residual;
    report.metrics["rademacher_c"] = rad_fit.c;
    report.metrics["rademacher_fit_residual"] = rad_fit.max_fit_residual;
    report.check("rademacher_control_violates_functional_equation", rad_residual >= control_min);
    report.check("rademacher_control_log_cf_not_quadratic",
                 rad_fit.max_fit_residual >= cfg.tolerance("log_cf_fit_control_min"));

    const EmpiricalCF ecf = empirical_cf(unit, grid);
    for (std::size_t k = 0; k < grid.size(); ++k) {
      const double re = ecf.values[k].real();
      report.series["gaussian_sigma1_ecf_real"].emplace_back(grid[k], re);
      if (re >= 0.1) {
        report.series["gaussian_sigma1_log_ecf"].emplace_back(grid[k], std::log(re));
        report.series["gaussian_sigma1_log_cf_fit"].emplace_back(grid[k], unit_fit.c * grid[k] * grid[k] / 2.0);
      }
    }
    const EmpiricalCF lap_ecf = empirical_cf(lap, grid);
    for (std::size_t k = 0; k < grid.size(); ++k) {
      report.series["laplace_ecf_real"].emplace_back(grid[k], lap_ecf.values[k].real());
    }
  });
}

}  // namespace sphlab
