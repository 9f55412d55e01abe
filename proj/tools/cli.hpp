#pragma once

#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "sphlab/config.hpp"

namespace sphlab::cli {

enum ExitCode : int { kPass = 0, kVerdictFail = 1, kUsageError = 2, kIoError = 3 };

struct RunOptions {
  std::vector<std::string> experiments;  // empty = all
  ExperimentConfig config;
  std::optional<std::string> out_path;   // stdout when unset
  std::optional<std::string> plot_dir;
  unsigned threads = 1;
};

/// One line per registered experiment: "<name>  <summary>".
int cmd_list(std::ostream& out);

int cmd_run(const RunOptions& options, std::ostream& out, std::ostream& err);

/// Parses argv and dispatches to a subcommand; returns the process exit code.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace sphlab::cli
