#pragma once

// Boundedly spaced subsequences: gap statistics, the translate cover, the
// finite-horizon convergence transfer, and the bounded-gap zero walk
// detector / refuter.

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "orbitlab/stability.hpp"

namespace orbitlab {

struct PreconditionError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Strictly increasing indices, optionally carrying a verified gap bound M.
class IndexSubsequence {
 public:
  IndexSubsequence() = default;
  /// Throws PreconditionError unless strictly increasing.
  explicit IndexSubsequence(std::vector<Index> indices);
  /// Also verifies n_{k+1} - n_k <= gap_bound.
  static IndexSubsequence with_gap_bound(std::vector<Index> indices, Index gap_bound);

  const std::vector<Index>& indices() const { return indices_; }
  const std::optional<Index>& gap_bound() const { return gap_bound_; }
  bool empty() const { return indices_.empty(); }
  std::size_t size() const { return indices_.size(); }

 private:
  std::vector<Index> indices_;
  std::optional<Index> gap_bound_;
};

struct GapStats {
  std::vector<Index> gaps;
  Index max_gap = 0;
  std::map<Index, std::size_t> histogram;
  bool strictly_increasing_gaps = false;
  bool bounded_by(Index m) const { return max_gap <= m; }
};

/// Needs at least two strictly increasing indices.
GapStats gap_stats(std::span<const Index> indices);

struct CoverResult {
  bool covered = false;
  std::vector<Index> uncovered;
  /// First consecutive pair (n_k, n_{k+1}) up to range_end more than m apart.
  std::optional<std::pair<Index, Index>> gap_violation;
};

/// Checks every n in [indices.front(), range_end] is some n_k + j, 0 <= j <= m,
/// and that consecutive members are at most m apart.
CoverResult translate_cover_check(std::span<const Index> indices, Index m, Index range_end);

struct TranslateFailure {
  Index n_k = 0;
  Index j = 0;
  Index n = 0;
};

struct TransferReport {
  bool hypothesis_holds = false;
  std::optional<TranslateFailure> hypothesis_failure;
  /// n_{k0} + M, where n_{k0} is the first member at or after burn_in.
  std::optional<Index> transfer_from;
  bool conclusion_holds = false;
  /// Set only if the hypothesis held and some later |a_n - alpha| >= eps;
  /// that would contradict the cover argument.
  std::optional<Index> violation;
};

/// Finite-horizon convergence transfer along a boundedly spaced subsequence.
/// Throws PreconditionError when the subsequence has no gap bound or the
/// translates of its members past burn_in do not cover the rest of the horizon.
TransferReport transfer_convergence(std::span<const Rational> series, const IndexSubsequence& n_k,
                                    const Rational& alpha, const Rational& eps, Index burn_in);

/// A pigeonhole window [anchor - M, anchor] around one hit of the witness
/// functional. start may be negative; the part below zero is vacuous.
struct HitWindow {
  std::int64_t start = 0;
  Index end = 0;
  /// How many indices in the window have a nonzero witness pairing.
  std::size_t witness_hits = 0;
  /// For each index in [max(start,0), end], a family member nonzero there.
  std::vector<std::pair<Index, std::size_t>> blockers;
};

enum class SubseqKind { Certificate, Refutation, Inconclusive };
std::string to_string(SubseqKind k);

struct SubseqCertificate {
  SubseqKind kind = SubseqKind::Inconclusive;
  std::size_t horizon = 0;
  Index max_gap = 0;
  Index burn_in = 0;
  /// Certificate: every simultaneous zero in [burn_in, horizon].
  IndexSubsequence subsequence;
  /// Refutation: functional whose hits anchor the windows.
  std::optional<std::size_t> witness_functional;
  std::vector<HitWindow> windows;
  /// First run of max_gap consecutive blocked indices in [burn_in, horizon].
  std::optional<std::pair<Index, Index>> first_barrier;
  std::string note;
};

struct DetectorOptions {
  ZeroMode zero_mode;
  Index burn_in = 10;
  /// The scanned region [burn_in, N] must be at least this fraction of the horizon.
  double span_fraction = 0.25;
};

/// Searches for a gap-<=M walk through [burn_in, N] on which every family
/// series vanishes. Greedy (nearest next zero), which finds a walk whenever
/// one exists. When none exists, looks for windows anchored at hits of one
/// family member that no such walk can cross.
SubseqCertificate find_bounded_gap_zero_subseq(std::span<const PairingSeries> family, Index max_gap,
                                               const DetectorOptions& options = {});
/// Same on raw value rows (one per family member, equal lengths).
SubseqCertificate find_bounded_gap_zero_subseq(std::span<const std::vector<Rational>> family,
                                               Index max_gap, const DetectorOptions& options = {});

/// Independent re-checks against the series values.
bool verify_certificate(const SubseqCertificate& cert, std::span<const std::vector<Rational>> family,
                        const ZeroMode& zero_mode);
bool verify_refutation(const SubseqCertificate& cert, std::span<const std::vector<Rational>> family,
                       const ZeroMode& zero_mode);

struct Lemma52Report {
  bool identity_holds = false;
  std::size_t checks = 0;
  std::optional<TranslateFailure> first_failure;
  /// max |<A^{n_k+j} x; z>| over members in the final quarter of the list, all j <= M.
  Rational translate_tail_max;
  /// max |<A^n x; z>| over the final quarter of [0, N].
  Rational series_tail_max;
  /// Smallest n0 with a_n = 0 for all n0 <= n <= N.
  std::optional<Index> series_zero_from;
};

/// Checks <A^{n_k+j} x; z> = <A^{n_k} x; (A*)^j z> for every member and j <= M.
/// Throws PreconditionError without a gap bound or when N < max(n_k) + M.
Lemma52Report lemma52_check(const OperatorExpr& a, const Vector& x, const Vector& z,
                            const IndexSubsequence& n_k, std::size_t horizon);

}  // namespace orbitlab
