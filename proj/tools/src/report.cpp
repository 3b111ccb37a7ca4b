#include "orbitlab/cli/report.hpp"

#include <openssl/evp.h>

#include <array>
#include <iomanip>
#include <memory>
#include <sstream>
#include <stdexcept>

namespace orbitlab::cli {

ordered_json rational_json(const Rational& r) {
  return ordered_json{{"rational", to_string(r)}, {"decimal", to_double(r)}};
}

namespace {

ordered_json coords_json(const FinVec& v) {
  ordered_json out = ordered_json::object();
  for (const auto& [i, c] : v.entries()) out[std::to_string(i)] = to_string(c);
  return out;
}

}  // namespace

ordered_json vector_json(const Vector& v) {
  if (const auto* s = std::get_if<FinVec>(&v)) return coords_json(*s);
  const auto& p = std::get<PairVec>(v);
  return ordered_json{{"top", coords_json(p.top)}, {"bottom", coords_json(p.bottom)}};
}

ordered_json index_list(std::span<const Index> indices) {
  ordered_json out = ordered_json::array();
  for (auto i : indices) out.push_back(i);
  return out;
}

std::string config_hash(const nlohmann::json& config) {
  nlohmann::json canonical = config;
  if (canonical.is_object()) canonical.erase("outputs");
  const std::string text = canonical.dump();

  std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(), EVP_MD_CTX_free);
  std::array<unsigned char, EVP_MAX_MD_SIZE> digest{};
  unsigned int len = 0;
  if (!ctx || EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr) != 1 ||
      EVP_DigestUpdate(ctx.get(), text.data(), text.size()) != 1 ||
      EVP_DigestFinal_ex(ctx.get(), digest.data(), &len) != 1) {
    throw std::runtime_error("config_hash: SHA-256 failed");
  }
  std::ostringstream hex;
  hex << "sha256:";
  for (unsigned int i = 0; i < len; ++i) {
    hex << std::hex << std::setw(2) << std::setfill('0') << static_cast<int>(digest[i]);
  }
  return hex.str();
}

ordered_json envelope(const std::string& subcommand, const std::string& hash, std::size_t horizon,
                      ordered_json result, const std::vector<SoundnessCheck>& checks) {
  ordered_json soundness = ordered_json::array();
  bool all = true;
  for (const auto& c : checks) {
    soundness.push_back({{"check", c.name}, {"passed", c.passed}, {"detail", c.detail}});
    all = all && c.passed;
  }
  ordered_json out;
  out["tool"] = "orbitlab";
  out["format_version"] = 1;
  out["subcommand"] = subcommand;
  out["config_hash"] = hash;
  out["evidence"] = kEvidenceLabel;
  out["horizon"] = horizon;
  out["result"] = std::move(result);
  out["soundness"] = std::move(soundness);
  out["soundness_passed"] = all;
  return out;
}

std::string series_csv(std::span<const Rational> values) {
  std::ostringstream out;
  out << "# orbitlab series v1\n";
  out << "n,numerator,denominator,decimal\n";
  for (std::size_t n = 0; n < values.size(); ++n) {
    out << n << ',' << values[n].get_num() << ',' << values[n].get_den() << ','
        << format_decimal(to_double(values[n])) << '\n';
  }
  return out.str();
}

std::string probe_csv(std::span<const ProbeRow> rows) {
  std::ostringstream out;
  out << "# orbitlab probe v1\n";
  out << "n,alpha_num,alpha_den,rho_num,rho_den\n";
  for (const auto& r : rows) {
    out << r.n << ',';
    if (r.alpha) out << r.alpha->get_num() << ',' << r.alpha->get_den();
    else out << ',';
    out << ',';
    if (r.rho) out << r.rho->get_num() << ',' << r.rho->get_den();
    else out << ',';
    out << '\n';
  }
  return out.str();
}

}  // namespace orbitlab::cli
