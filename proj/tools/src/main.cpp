#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include "orbitlab/cli/commands.hpp"

namespace {

namespace cli = orbitlab::cli;

constexpr int kOk = 0;
constexpr int kConfigError = 1;
constexpr int kSoundnessFailure = 2;

struct Options {
  std::string config_path;
  std::string csv_path;
  cli::Overrides overrides;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw cli::ConfigError("--config", "cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw cli::ConfigError("outputs", "cannot write " + path);
  out << contents;
  if (!out) throw cli::ConfigError("outputs", "write failed for " + path);
}

std::optional<std::string> output_path(const cli::json& config, const char* key) {
  if (!config.contains("outputs")) return std::nullopt;
  const auto& outputs = config["outputs"];
  if (!outputs.is_object()) throw cli::ConfigError("outputs", "expected an object");
  if (!outputs.contains(key)) return std::nullopt;
  if (!outputs[key].is_string()) throw cli::ConfigError(std::string("outputs.") + key, "expected a path string");
  return outputs[key].get<std::string>();
}

const std::map<std::string, std::string>& descriptions() {
  static const std::map<std::string, std::string> d{
      {"foguel-demo", "witness series, weak verdict and gap analysis for the Foguel operator"},
      {"pairing", "exact series <A^n x; z> with tail extrema"},
      {"classify", "weak stability verdict for x against a family of pairing vectors"},
      {"gaps", "bounded-gap zero walk certificate or refutation"},
      {"transfer", "convergence transfer along a boundedly spaced subsequence"},
      {"matrix-stability", "uniform and strong checks on finite matrices"},
      {"probe-supercyclic", "orbit membership and projective scalar fit"},
      {"dichotomy", "bounded-gap / unbounded-scalar table for projective orbits"},
  };
  return d;
}

int run(const std::string& name, const Options& opts) {
  cli::json config = opts.config_path.empty() ? cli::json::object()
                                              : cli::parse_config_text(read_file(opts.config_path));
  cli::apply_overrides(config, opts.overrides);
  const auto result = cli::run_command(name, config);

  const auto json_path = output_path(config, "json");
  auto csv_path = output_path(config, "csv");
  if (!opts.csv_path.empty()) csv_path = opts.csv_path;
  if (!csv_path && json_path && result.csv) {
    csv_path = std::filesystem::path(*json_path).replace_extension(".csv").string();
  }

  const std::string report = result.report.dump(2) + "\n";
  const bool csv_to_stdout = csv_path && *csv_path == "-";
  if (json_path) {
    write_file(*json_path, report);
  } else if (!csv_to_stdout) {
    std::cout << report;
  }
  if (result.csv && csv_path) {
    if (csv_to_stdout) std::cout << *result.csv;
    else write_file(*csv_path, *result.csv);
  }
  if (!result.sound) {
    std::cerr << "soundness check failed; see the \"soundness\" section of the report\n";
    return kSoundnessFailure;
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"orbitlab: exact finite-horizon experiments on orbits of linear operators"};
  app.require_subcommand(1);

  Options opts;
  std::string chosen;
  for (const auto& name : cli::command_names()) {
    auto* sub = app.add_subcommand(name, descriptions().at(name));
    sub->add_option("--config", opts.config_path, "JSON experiment config");
    sub->add_option("--horizon", opts.overrides.horizon, "horizon N");
    sub->add_option("--max-gap", opts.overrides.max_gap, "gap bound M");
    sub->add_option("--base", opts.overrides.base, "base of the sparse index set (powers of B)");
    sub->add_option("--epsilon", opts.overrides.epsilon, "switch to epsilon zero mode, p/q");
    sub->add_option("--out", opts.overrides.out, "JSON report path");
    sub->add_option("--csv", opts.csv_path, "CSV output path, '-' for stdout");
    sub->add_option("--seed", opts.overrides.seed, "seed for generated corpora");
    sub->callback([&chosen, name] { chosen = name; });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kConfigError;
  }

  try {
    return run(chosen, opts);
  } catch (const cli::ConfigError& e) {
    std::cerr << e.what() << "\n";
    return kConfigError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kConfigError;
  }
}
