#pragma once

// Orbit pairings <A^n x; z>, their tail statistics, and horizon-limited
// stability / quasistability classifiers.
//
// Nothing here proves a limit. Verdicts say what a finite horizon is
// consistent with, or what it witnesses exactly.

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "orbitlab/finite_matrix.hpp"
#include "orbitlab/operator.hpp"
#include "orbitlab/vector.hpp"

namespace orbitlab {

/// a_n = <A^n x; z> for n = 0..horizon, exact.
struct PairingSeries {
  OperatorExpr op;
  Vector x;
  Vector z;
  std::size_t horizon = 0;
  std::vector<Rational> values;
};

/// x, Ax, ..., A^N x.
std::vector<Vector> orbit(const OperatorExpr& a, const Vector& x, std::size_t horizon);

PairingSeries pairing_series(const OperatorExpr& a, const Vector& x, const Vector& z,
                             std::size_t horizon);

/// One series per family member, sharing a single orbit computation.
std::vector<PairingSeries> pairing_family(const OperatorExpr& a, const Vector& x,
                                          std::span<const Vector> family, std::size_t horizon);

/// Recomputes the series from (op, x, z) and compares exactly.
bool recompute_matches(const PairingSeries& series);

struct TailExtrema {
  Rational min;
  Rational max;
  std::vector<std::size_t> argmin;
  std::vector<std::size_t> argmax;
};

/// Extrema of |a_n| over n >= window_start. Throws std::out_of_range if
/// window_start is past the end.
TailExtrema tail_extrema(std::span<const Rational> values, std::size_t window_start);
inline TailExtrema tail_extrema(const PairingSeries& s, std::size_t window_start) {
  return tail_extrema(s.values, window_start);
}

/// How a pairing counts as vanishing: exactly, or |a_n| <= epsilon.
struct ZeroMode {
  bool exact = true;
  Rational epsilon{0};

  static ZeroMode exact_zero() { return {}; }
  static ZeroMode within(Rational eps) { return {false, std::move(eps)}; }
  bool vanishes(const Rational& value) const;
};

enum class Verdict { StableConsistent, QuasistableWitnessed, InstabilityWitnessed, Inconclusive };
enum class StabilityMode { Uniform, Strong, Weak };

std::string to_string(Verdict v);
std::string to_string(StabilityMode m);

struct ProbeEvidence {
  std::size_t functional = 0;
  Rational tail_min;
  Rational tail_max;
  std::vector<std::size_t> argmax;
  std::size_t zero_count = 0;
};

/// Indices along which one family member stays at or above delta.
struct NonDecayWitness {
  std::size_t functional = 0;
  std::vector<std::size_t> indices;
};

struct StabilityVerdict {
  StabilityMode mode = StabilityMode::Weak;
  std::size_t horizon = 0;
  std::size_t window_start = 0;
  std::vector<ProbeEvidence> evidence;
  /// Tail indices at which every family pairing vanishes.
  std::vector<std::size_t> simultaneous_zeros;
  /// Re-entry points of the simultaneous zero set: each is a simultaneous
  /// zero directly preceded by an index where some pairing is nonzero.
  std::vector<std::size_t> witness_indices;
  std::optional<NonDecayWitness> nondecay;
  Verdict verdict = Verdict::Inconclusive;
};

struct WeakOptions {
  ZeroMode zero_mode;
  std::size_t window_start = 10;
  std::size_t min_zero_hits = 5;
  Rational delta{1};
  /// Optional index sets to test for instability; when empty the whole tail
  /// is the only candidate.
  std::vector<std::vector<std::size_t>> candidate_subsequences;
};

/// Weak verdict for one x against a family of pairing vectors. The
/// quasistability witness must be one index set shared by the whole family.
StabilityVerdict classify_weak(const OperatorExpr& a, const Vector& x,
                               std::span<const Vector> family, std::size_t horizon,
                               const WeakOptions& options = {});
/// Same, from precomputed series sharing (A, x, horizon).
StabilityVerdict classify_weak(std::span<const PairingSeries> family, const WeakOptions& options = {});

struct EnvelopeCheck {
  std::size_t multiple = 0;  // c, checking ||M^{c n0}|| <= ||M^{n0}||^c
  double lhs = 0.0;
  double rhs = 0.0;
  bool ok = false;
};

struct UniformReport {
  std::vector<double> norms;  // norms[n] = ||M^n||, n = 0..N
  std::size_t n0 = 0;
  double min_norm = 0.0;
  bool quasistability_witnessed = false;
  std::vector<EnvelopeCheck> envelope;
  double gelfand = 0.0;
  bool gelfand_below_one = false;
  bool pass = false;
  std::string summary;
};

/// If some ||M^n|| < 1 (n <= N), checks the envelope bound on multiples of
/// the minimizer and that the Gelfand estimate at N is below one.
UniformReport uniform_equivalence_check(const FiniteMatrix& m, std::size_t horizon, double tol);

enum class StrongStatus { QuasiAndStable, DecayConsistent, NoQuasistability };
std::string to_string(StrongStatus s);

struct StrongProbeReport {
  std::vector<Rational> norms_sq;
  std::size_t argmin = 0;
  Rational min_sq;
  /// Certified upper bound on sup_j ||A^j||^2 used in the inequality.
  Rational bound_sq;
  /// max_{n >= argmin} (||A^n x||^2 - bound_sq * min_sq); <= 0 when the
  /// inequality holds.
  Rational margin;
  bool inequality_holds = false;
  std::optional<std::size_t> first_violation;
  StrongStatus status = StrongStatus::NoQuasistability;
};

struct StrongOptions {
  std::size_t window_start = 0;
};

/// For matrices the power bound is certified as max_j ||M^j||_1 ||M^j||_inf.
std::vector<StrongProbeReport> strong_equivalence_check(const FiniteMatrix& m,
                                                        std::span<const FinVec> probes,
                                                        std::size_t horizon,
                                                        const StrongOptions& options = {});
/// For operator expressions the caller supplies the squared power bound.
std::vector<StrongProbeReport> strong_equivalence_check(const OperatorExpr& a,
                                                        std::span<const Vector> probes,
                                                        std::size_t horizon,
                                                        const Rational& bound_sq,
                                                        const StrongOptions& options = {});

struct PowerBoundReport {
  std::vector<Rational> norms_sq;
  Rational sup;
  Rational first_quarter_max;
  Rational last_quarter_max;
  bool growth_flagged = false;
};

/// Squared-norm trajectories of each probe. Growth is flagged when the last
/// quarter's max exceeds growth_slack times the first quarter's max.
std::vector<PowerBoundReport> power_bounded_probe(const OperatorExpr& a,
                                                  std::span<const Vector> probes,
                                                  std::size_t horizon,
                                                  const Rational& growth_slack = Rational(2));

}  // namespace orbitlab
