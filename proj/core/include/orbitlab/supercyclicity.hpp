#pragma once

// Finite-horizon probes of projective orbits {alpha A^n y}: exact orbit
// membership, per-n scalar fits against a target, boundedness trends of the
// fitted scalars, and the bounded-gap / unbounded-scalar dichotomy table.
//
// Everything reported here is horizon evidence. None of it decides whether
// an operator is weakly l-sequentially supercyclic.

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "orbitlab/gaps.hpp"
#include "orbitlab/stability.hpp"

namespace orbitlab {

struct OrbitHit {
  Rational alpha;
  std::size_t n = 0;
  friend bool operator==(const OrbitHit&, const OrbitHit&) = default;
};

/// Smallest n <= N with x = alpha A^n y for some alpha != 0.
std::optional<OrbitHit> orbit_membership(const OperatorExpr& a, const Vector& y, const Vector& x,
                                         std::size_t horizon);

struct ProbeRow {
  std::size_t n = 0;
  std::optional<Rational> alpha;
  std::optional<Rational> rho;
  /// Family index of the anchor that defined alpha.
  std::optional<std::size_t> anchor_used;
};

struct ProbeReport {
  std::string operator_description;
  Vector y;
  Vector x;
  std::vector<Vector> family;
  std::size_t horizon = 0;
  std::vector<ProbeRow> rows;
  std::vector<Index> candidate_subsequence;
  std::optional<Rational> alpha_sup;
  std::optional<GapStats> candidate_gaps;
  /// Set when every anchor annihilated A^n y for all n <= N.
  bool orbit_annihilated = false;
  Rational threshold{0};
};

struct FitOptions {
  /// rho_n <= threshold puts n in the candidate subsequence.
  Rational threshold{0};
  /// Anchors tried in order when the primary anchor annihilates A^n y.
  std::vector<std::size_t> fallback_anchors;
};

/// For each n with <A^n y; z_anchor> != 0: alpha_n = <x; z_anchor> / <A^n y; z_anchor>
/// and rho_n = max_z |<alpha_n A^n y - x; z>| over the family.
ProbeReport projective_fit(const OperatorExpr& a, const Vector& y, const Vector& x,
                           std::span<const Vector> family, std::size_t horizon, std::size_t anchor,
                           const FitOptions& options = {});

/// Recomputes rho_n for every defined row and compares exactly.
bool verify_residuals(const OperatorExpr& a, const ProbeReport& report);

enum class AlphaFlag { BoundedEvidence, UnboundedTrend, SuppressedInOrbit };
std::string to_string(AlphaFlag f);

struct AlphaDiagnostic {
  AlphaFlag flag = AlphaFlag::SuppressedInOrbit;
  Rational first_quarter_max;
  Rational last_quarter_max;
  std::string message;
};

/// Compares max |alpha| over the first and last quarter of the candidate
/// list. Throws PreconditionError on an empty candidate subsequence.
AlphaDiagnostic alpha_boundedness_report(const ProbeReport& report, bool x_in_orbit,
                                         const Rational& growth_slack = Rational(2));

struct TailMinimum {
  std::size_t functional = 0;
  Rational min;
  std::vector<std::size_t> argmin;
};

/// Tail minima of |<A^n y; z>| for each family member, n >= window_start.
std::vector<TailMinimum> quasistability_scan(const OperatorExpr& a, const Vector& y,
                                             std::span<const Vector> family, std::size_t horizon,
                                             std::size_t window_start = 10);

enum class Alternative { NoCandidates, InOrbit, A, B, AandB, Neither };
std::string to_string(Alternative a);

struct DichotomyCell {
  Index max_gap = 0;
  /// Candidates contain a gap-<=M walk across the final quarter.
  bool bounded_gap_walk = false;
  Alternative alternative = Alternative::NoCandidates;
};

struct DichotomyRow {
  std::size_t target = 0;
  std::optional<OrbitHit> in_orbit;
  std::optional<ProbeReport> probe;
  std::optional<AlphaDiagnostic> alpha;
  std::vector<DichotomyCell> cells;
};

struct DichotomyReport {
  bool power_bounded_precondition = false;
  std::vector<DichotomyRow> rows;
};

/// True when the candidates in [3N/4, N] form a gap-<=M walk from the start
/// of that window to its end (window edges act as virtual members).
bool candidates_span_final_quarter(std::span<const Index> candidates, std::size_t horizon,
                                   Index max_gap);

/// Classifies one probe into the alternatives for every M in max_gaps.
std::vector<DichotomyCell> classify_dichotomy(const ProbeReport& report,
                                              std::optional<AlphaDiagnostic> alpha,
                                              std::span<const Index> max_gaps);

DichotomyReport dichotomy_report(const OperatorExpr& a, const Vector& y,
                                 std::span<const Vector> targets, std::span<const Vector> family,
                                 std::size_t horizon, std::span<const Index> max_gaps,
                                 std::size_t anchor = 0, const FitOptions& options = {});

}  // namespace orbitlab
