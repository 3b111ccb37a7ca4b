#pragma once

// Experiment configs: JSON text in, validated library objects out. Every
// diagnostic names the offending field path, or the line and column for
// syntax errors.

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "orbitlab/operator.hpp"
#include "orbitlab/stability.hpp"

namespace orbitlab::cli {

using json = nlohmann::json;

class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string field, const std::string& message);
  ConfigError(std::size_t line, std::size_t column, const std::string& message);

  const std::string& field() const { return field_; }
  std::optional<std::size_t> line() const { return line_; }

 private:
  std::string field_;
  std::optional<std::size_t> line_;
};

/// Parses JSON text; syntax errors carry line and column.
json parse_config_text(const std::string& text);

/// A config value together with its path from the root, for diagnostics.
class Node {
 public:
  Node(const json& value, std::string path) : value_(&value), path_(std::move(path)) {}

  const json& raw() const { return *value_; }
  const std::string& path() const { return path_; }

  bool has(const std::string& key) const;
  Node at(const std::string& key) const;
  std::optional<Node> find(const std::string& key) const;
  Node at(std::size_t i) const;
  std::size_t size() const;  // arrays only

  bool is_array() const { return value_->is_array(); }
  bool is_object() const { return value_->is_object(); }
  bool is_string() const { return value_->is_string(); }

  std::uint64_t as_uint() const;
  std::string as_string() const;
  bool as_bool() const;
  double as_double() const;
  /// "p/q" string or a JSON integer. Floats are refused: they are not exact.
  Rational as_rational() const;
  std::vector<std::uint64_t> as_uint_list() const;

  std::uint64_t uint_or(const std::string& key, std::uint64_t fallback) const;
  Rational rational_or(const std::string& key, const Rational& fallback) const;
  bool bool_or(const std::string& key, bool fallback) const;
  double double_or(const std::string& key, double fallback) const;

  [[noreturn]] void fail(const std::string& message) const;

 private:
  const json* value_;
  std::string path_;
};

SparseIndexSet parse_index_set(const Node& spec);
OperatorExpr parse_operator(const Node& spec);
Vector parse_vector(const Node& spec, const Domain& domain);
/// A list of vector literals, or {"coordinates": K} for the coordinate
/// vectors of index <= K ("component": "top" | "bottom" | "both" on pairs).
std::vector<Vector> parse_family(const Node& spec, const Domain& domain);
/// "exact" (the default) or {"epsilon": "p/q"}.
ZeroMode parse_zero_mode(const Node& root);
/// "max_gaps": [..] or "max_gap": M; each must be >= 1.
std::vector<Index> parse_max_gaps(const Node& root, Index fallback);
std::size_t parse_horizon(const Node& root, std::size_t fallback);

struct Overrides {
  std::optional<std::uint64_t> horizon;
  std::optional<std::uint64_t> max_gap;
  std::optional<std::uint64_t> base;
  std::optional<std::string> epsilon;
  std::optional<std::string> out;
  std::optional<std::uint64_t> seed;
};

/// Folds command-line overrides into the config tree.
void apply_overrides(json& config, const Overrides& overrides);

}  // namespace orbitlab::cli
