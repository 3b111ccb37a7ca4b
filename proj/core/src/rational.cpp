#include "orbitlab/rational.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <cstdlib>

namespace orbitlab {

namespace {

bool is_integer_literal(std::string_view s) {
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) s.remove_prefix(1);
  if (s.empty()) return false;
  for (char c : s) {
    if (c < '0' || c > '9') return false;
  }
  return true;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  const auto slash = text.find('/');
  const std::string_view num_part = text.substr(0, slash);
  const std::string_view den_part =
      slash == std::string_view::npos ? std::string_view{"1"} : text.substr(slash + 1);
  if (!is_integer_literal(num_part) || !is_integer_literal(den_part) ||
      den_part.front() == '-' || den_part.front() == '+') {
    throw ParseError("invalid rational literal '" + std::string(text) + "'");
  }
  Integer num(std::string(num_part.front() == '+' ? num_part.substr(1) : num_part), 10);
  Integer den(std::string(den_part), 10);
  if (den == 0) throw ParseError("zero denominator in '" + std::string(text) + "'");
  Rational out(num, den);
  out.canonicalize();
  return out;
}

std::string to_string(const Rational& value) {
  return value.get_num().get_str() + "/" + value.get_den().get_str();
}

double to_double(const Rational& value) {
  // mpq get_d truncates; go through a 40-digit decimal so strtod rounds.
  if (sgn(value) == 0) return 0.0;
  const mpf_class f(value, 256);
  mp_exp_t exp = 0;
  std::string digits = f.get_str(exp, 10, 40);
  const bool negative = digits.front() == '-';
  if (negative) digits.erase(0, 1);
  const std::string text = std::string(negative ? "-" : "") + "0." + digits + "e" + std::to_string(exp);
  return std::strtod(text.c_str(), nullptr);
}

std::string format_decimal(double value) {
  if (!std::isfinite(value)) return std::isnan(value) ? "nan" : (value > 0 ? "inf" : "-inf");
  std::array<char, 64> buf{};
  auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
  std::string out(buf.data(), end);
  if (out.find_first_of(".e") == std::string::npos) out += ".0";
  return out;
}

}  // namespace orbitlab
