#include "cli.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "CLI11.hpp"
#include "sphlab/experiments.hpp"
#include "sphlab/manifest.hpp"

namespace sphlab::cli {

int cmd_list(std::ostream& out) {
  for (const auto& info : experiment_registry()) out << info.name << "  " << info.summary << '\n';
  return kPass;
}

int cmd_run(const RunOptions& options, std::ostream& out, std::ostream& err) {
  try {
    options.config.validate();
  } catch (const std::invalid_argument& e) {
    err << "error: invalid configuration: " << e.what() << '\n';
    return kUsageError;
  }
  for (const auto& name : options.experiments) {
    if (find_experiment(name) == nullptr) {
      err << "error: unknown experiment '" << name << "' (see `sphlab list`)\n";
      return kUsageError;
    }
  }

  // Open outputs before spending minutes on experiments.
  std::ofstream file;
  if (options.out_path) {
    file.open(*options.out_path, std::ios::binary | std::ios::trunc);
    if (!file) {
      err << "error: cannot write manifest to " << *options.out_path << '\n';
      return kIoError;
    }
  }
  if (options.plot_dir) {
    std::error_code ec;
    std::filesystem::create_directories(*options.plot_dir, ec);
    if (ec || !std::filesystem::is_directory(*options.plot_dir)) {
      err << "error: cannot create plot directory " << *options.plot_dir << '\n';
      return kIoError;
    }
  }

  RunManifest manifest;
  manifest.config = options.config;
  manifest.started = utc_timestamp_now();
  manifest.reports = run_experiments(options.config, options.experiments, options.threads);
  manifest.finished = utc_timestamp_now();

  const std::string text = manifest_to_json(manifest).dump(2) + "\n";
  if (options.out_path) {
    file << text;
    if (!file.flush()) {
      err << "error: failed writing " << *options.out_path << '\n';
      return kIoError;
    }
  } else {
    out << text;
  }

  if (options.plot_dir) {
    try {
      for (const auto& report : manifest.reports) {
        for (const auto& [series, points] : report.series) {
          write_series_csv(std::filesystem::path(*options.plot_dir) / (report.name + "__" + series + ".csv"), points);
        }
      }
    } catch (const std::exception& e) {
      err << "error: " << e.what() << '\n';
      return kIoError;
    }
  }

  bool all_pass = true;
  for (const auto& report : manifest.reports) {
    err << to_string(report.verdict) << "  " << report.name << "  (" << report.runtime_ms << " ms)";
    if (!report.error.empty()) err << "  error: " << report.error;
    err << '\n';
    all_pass = all_pass && report.verdict == Verdict::pass;
  }
  return all_pass ? kPass : kVerdictFail;
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Monte-Carlo checks of the spherical-symmetry characterization of the normal law", "sphlab"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kToolVersion);

  auto* list = app.add_subcommand("list", "List available experiments");

  RunOptions options;
  std::vector<std::string> positional;
  std::vector<std::string> flagged;
  auto* run = app.add_subcommand("run", "Run experiments and write a JSON manifest");
  run->add_option("names", positional, "Experiments to run (default: all)");
  run->add_option("--experiments", flagged, "Comma-separated experiment names")->delimiter(',');
  run->add_option("--seed", options.config.seed, "Root seed")->capture_default_str();
  run->add_option("--m", options.config.m, "Draws per test")->capture_default_str();
  run->add_option("--alpha", options.config.alpha, "Test level")->capture_default_str();
  run->add_option("--replications", options.config.replications, "Seeded repetitions per rate")
      ->capture_default_str();
  run->add_option("--n-list", options.config.n_list, "Comma-separated dimensions")->delimiter(',');
  run->add_option("--out", options.out_path, "Manifest path (default: stdout)");
  run->add_option("--plot-dir", options.plot_dir, "Directory for CSV plot data");
  run->add_option("--threads", options.threads, "Experiments run concurrently")->check(CLI::PositiveNumber);

  try {
    std::vector<std::string> args;
    for (int i = argc - 1; i > 0; --i) args.emplace_back(argv[i]);
    app.parse(args);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kPass : kUsageError;
  }

  if (*list) return cmd_list(out);
  options.experiments = positional;
  options.experiments.insert(options.experiments.end(), flagged.begin(), flagged.end());
  return cmd_run(options, out, err);
}

}  // namespace sphlab::cli
