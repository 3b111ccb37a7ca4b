#pragma once

// Doubling-sparse index sets: strictly increasing positive integers with
// 2i < j for any members i < j.

#include <functional>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "orbitlab/vector.hpp"

namespace orbitlab {

/// Raised when a generator or list breaks the doubling property.
struct DoublingViolation : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Raised by j_interval if two members fall in one interval; only possible
/// for sets built through SparseIndexSet::from_list_unchecked.
struct CorruptIndexSet : std::logic_error {
  using std::logic_error::logic_error;
};

/// A possibly infinite set produced by a generator and materialized lazily.
/// Copies share the materialized prefix; extension is mutex-protected, so a
/// set may be shared across threads.
class SparseIndexSet {
 public:
  /// Returns the member following `previous` (or the first member when
  /// `previous` is empty); nullopt ends the set.
  using Generator = std::function<std::optional<Index>(std::optional<Index> previous)>;

  SparseIndexSet(Generator generator, std::string description);

  /// Finite set from an explicit list; validates ordering and doubling.
  static SparseIndexSet from_list(std::vector<Index> members);
  /// Same, without validation. Exists so diagnostics can exercise the
  /// uniqueness assertion in j_interval.
  static SparseIndexSet from_list_unchecked(std::vector<Index> members);

  bool contains(Index i) const;
  /// Members <= bound, increasing.
  std::vector<Index> enumerate(Index bound) const;
  /// Members in [lo, hi].
  std::vector<Index> members_in(Index lo, Index hi) const;
  /// Forces materialization of every member <= bound.
  void materialize(Index bound) const;

  const std::string& description() const { return description_; }

 private:
  struct State;
  std::shared_ptr<State> state_;
  std::string description_;
};

/// {base^t : t >= 0}, eagerly materialized up to `bound`. Throws
/// DoublingViolation for base <= 2.
SparseIndexSet make_geometric_set(Index base, Index bound);

/// The unique j in J with k <= j <= k+n <= 2j, if any.
std::optional<Index> j_interval(const SparseIndexSet& set, Index k, Index n);

}  // namespace orbitlab
