#pragma once

// Exact rational scalars backed by GMP.

#include <gmpxx.h>

#include <stdexcept>
#include <string>
#include <string_view>

namespace orbitlab {

/// Arbitrary-precision rational in canonical form (positive denominator,
/// numerator and denominator coprime). mpq_class keeps that form as long as
/// every value goes through canonicalize() after construction from parts,
/// which the helpers below do.
using Rational = mpq_class;
using Integer = mpz_class;

struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Parses "p", "-p", "p/q" (q != 0). Whitespace is not accepted.
Rational parse_rational(std::string_view text);

/// "p/q" with q > 0; integers are printed as "p/1".
std::string to_string(const Rational& value);

/// Lossy conversion, display only.
double to_double(const Rational& value);

/// Shortest round-tripping decimal of a double, always with a '.' or exponent
/// so that 1 prints as "1.0".
std::string format_decimal(double value);

inline Rational abs(const Rational& value) {
  Rational out = value;
  if (sgn(out) < 0) out = -out;
  return out;
}

inline bool is_zero(const Rational& value) { return sgn(value) == 0; }

}  // namespace orbitlab
