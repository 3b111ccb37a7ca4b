#pragma once

#include <optional>
#include <string>
#include <vector>

#include "orbitlab/cli/config.hpp"
#include "orbitlab/cli/report.hpp"

namespace orbitlab::cli {

struct CommandOutput {
  ordered_json report;
  /// Series or probe table, for the subcommands that produce one.
  std::optional<std::string> csv;
  bool sound = true;
};

const std::vector<std::string>& command_names();

/// Runs one subcommand on a config that already has overrides applied.
/// Throws ConfigError for invalid input; soundness failures are reported in
/// the output, not thrown.
CommandOutput run_command(const std::string& name, const json& config);

}  // namespace orbitlab::cli
