#pragma once

// Report serialization: rationals as "p/q" plus a display decimal, series
// and probe tables as versioned CSV, and the common JSON envelope.

#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "orbitlab/supercyclicity.hpp"

namespace orbitlab::cli {

using ordered_json = nlohmann::ordered_json;

inline constexpr const char* kEvidenceLabel =
    "horizon evidence: exact finite-horizon computation, not a proof about n -> infinity";

ordered_json rational_json(const Rational& r);
ordered_json vector_json(const Vector& v);
ordered_json index_list(std::span<const Index> indices);

struct SoundnessCheck {
  std::string name;
  bool passed = false;
  std::string detail;
};

/// Hex SHA-256 of the canonical dump of the config, output paths excluded.
std::string config_hash(const nlohmann::json& config);

ordered_json envelope(const std::string& subcommand, const std::string& hash, std::size_t horizon,
                      ordered_json result, const std::vector<SoundnessCheck>& checks);

/// n,numerator,denominator,decimal
std::string series_csv(std::span<const Rational> values);
/// n,alpha_num,alpha_den,rho_num,rho_den; undefined rows leave the fields empty.
std::string probe_csv(std::span<const ProbeRow> rows);

}  // namespace orbitlab::cli
