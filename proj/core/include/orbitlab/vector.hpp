#pragma once

// Finitely supported vectors of l2 (FinVec) and of l2 + l2 (PairVec).

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <utility>
#include <variant>
#include <vector>

#include "orbitlab/rational.hpp"

namespace orbitlab {

using Index = std::uint64_t;

/// Raised when an operation mixes single-sequence and pair vectors, or an
/// operator is applied to a vector of the wrong kind.
struct DomainError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Coordinates against the orthonormal basis {e_k}. Entries are kept sorted by
/// index with no explicit zeros, so equality is structural.
class FinVec {
 public:
  using Entry = std::pair<Index, Rational>;

  FinVec() = default;

  /// e_k.
  static FinVec basis(Index k);
  /// Sorts, sums duplicate indices and drops zeros.
  static FinVec from_entries(std::vector<Entry> entries);

  std::span<const Entry> entries() const { return entries_; }
  std::size_t support_size() const { return entries_.size(); }
  bool is_zero() const { return entries_.empty(); }
  std::optional<Index> max_index() const;
  std::optional<Index> min_index() const;
  /// Coordinate <x; e_k>.
  Rational coeff(Index k) const;

  /// e_k -> e_{k+steps}.
  FinVec shifted(Index steps) const;
  /// e_k -> e_{k-steps}, dropping indices below steps.
  FinVec coshifted(Index steps) const;
  /// Keeps only the coordinates whose index satisfies pred.
  template <typename Pred>
  FinVec filtered(Pred&& pred) const {
    FinVec out;
    for (const auto& e : entries_) {
      if (pred(e.first)) out.entries_.push_back(e);
    }
    return out;
  }

  FinVec scaled(const Rational& alpha) const;

  FinVec& operator+=(const FinVec& other);
  FinVec& operator-=(const FinVec& other);
  friend FinVec operator+(FinVec a, const FinVec& b) { return a += b; }
  friend FinVec operator-(FinVec a, const FinVec& b) { return a -= b; }
  friend FinVec operator*(const Rational& alpha, const FinVec& v) { return v.scaled(alpha); }
  friend bool operator==(const FinVec&, const FinVec&) = default;

 private:
  static FinVec from_sorted(std::vector<Entry> entries);
  std::vector<Entry> entries_;
};

/// x = (x1, x2) in the orthogonal direct sum.
struct PairVec {
  FinVec top;
  FinVec bottom;

  bool is_zero() const { return top.is_zero() && bottom.is_zero(); }
  PairVec scaled(const Rational& alpha) const { return {top.scaled(alpha), bottom.scaled(alpha)}; }
  PairVec& operator+=(const PairVec& o) {
    top += o.top;
    bottom += o.bottom;
    return *this;
  }
  PairVec& operator-=(const PairVec& o) {
    top -= o.top;
    bottom -= o.bottom;
    return *this;
  }
  friend PairVec operator+(PairVec a, const PairVec& b) { return a += b; }
  friend PairVec operator-(PairVec a, const PairVec& b) { return a -= b; }
  friend PairVec operator*(const Rational& alpha, const PairVec& v) { return v.scaled(alpha); }
  friend bool operator==(const PairVec&, const PairVec&) = default;
};

using Vector = std::variant<FinVec, PairVec>;

Rational inner(const FinVec& u, const FinVec& v);
Rational inner_pair(const PairVec& x, const PairVec& z);
/// Throws DomainError when the kinds differ.
Rational inner(const Vector& u, const Vector& v);

Rational norm_sq(const FinVec& u);
Rational norm_sq(const PairVec& x);
Rational norm_sq(const Vector& v);

bool is_zero(const Vector& v);
Vector scaled(const Vector& v, const Rational& alpha);
/// u - v; throws DomainError when the kinds differ.
Vector difference(const Vector& u, const Vector& v);

}  // namespace orbitlab
