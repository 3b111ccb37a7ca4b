#include "orbitlab/stability.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace orbitlab {

std::vector<Vector> orbit(const OperatorExpr& a, const Vector& x, std::size_t horizon) {
  std::vector<Vector> out;
  out.reserve(horizon + 1);
  out.push_back(x);
  if (horizon > 0) out.push_back(apply_once(a, x));
  for (std::size_t n = 2; n <= horizon; ++n) out.push_back(apply_once(a, out.back()));
  return out;
}

PairingSeries pairing_series(const OperatorExpr& a, const Vector& x, const Vector& z,
                             std::size_t horizon) {
  if (x.index() != z.index()) throw DomainError("pairing_series: x and z kinds differ");
  PairingSeries out{a, x, z, horizon, {}};
  out.values.reserve(horizon + 1);
  Vector current = x;
  out.values.push_back(inner(current, z));
  for (std::size_t n = 1; n <= horizon; ++n) {
    current = apply_once(a, current);
    out.values.push_back(inner(current, z));
  }
  return out;
}

std::vector<PairingSeries> pairing_family(const OperatorExpr& a, const Vector& x,
                                          std::span<const Vector> family, std::size_t horizon) {
  std::vector<PairingSeries> out;
  out.reserve(family.size());
  for (const auto& z : family) {
    if (x.index() != z.index()) throw DomainError("pairing_family: x and z kinds differ");
    out.push_back(PairingSeries{a, x, z, horizon, {}});
    out.back().values.reserve(horizon + 1);
  }
  Vector current = x;
  for (std::size_t n = 0; n <= horizon; ++n) {
    if (n > 0) current = apply_once(a, current);
    for (std::size_t f = 0; f < family.size(); ++f) out[f].values.push_back(inner(current, family[f]));
  }
  return out;
}

bool recompute_matches(const PairingSeries& series) {
  return pairing_series(series.op, series.x, series.z, series.horizon).values == series.values;
}

TailExtrema tail_extrema(std::span<const Rational> values, std::size_t window_start) {
  if (window_start >= values.size()) {
    throw std::out_of_range("tail_extrema: window_start " + std::to_string(window_start) +
                            " past horizon " + std::to_string(values.size() - 1));
  }
  TailExtrema out;
  out.min = abs(values[window_start]);
  out.max = out.min;
  for (std::size_t n = window_start; n < values.size(); ++n) {
    const Rational v = abs(values[n]);
    if (v < out.min) {
      out.min = v;
      out.argmin.clear();
    }
    if (v > out.max) {
      out.max = v;
      out.argmax.clear();
    }
    if (v == out.min) out.argmin.push_back(n);
    if (v == out.max) out.argmax.push_back(n);
  }
  return out;
}

bool ZeroMode::vanishes(const Rational& value) const {
  if (exact) return sgn(value) == 0;
  return abs(value) <= epsilon;
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::StableConsistent:
      return "stable-consistent";
    case Verdict::QuasistableWitnessed:
      return "quasistable-witnessed";
    case Verdict::InstabilityWitnessed:
      return "instability-witnessed";
    case Verdict::Inconclusive:
      return "inconclusive";
  }
  return "?";
}

std::string to_string(StabilityMode m) {
  switch (m) {
    case StabilityMode::Uniform:
      return "uniform";
    case StabilityMode::Strong:
      return "strong";
    case StabilityMode::Weak:
      return "weak";
  }
  return "?";
}

std::string to_string(StrongStatus s) {
  switch (s) {
    case StrongStatus::QuasiAndStable:
      return "strong quasistability witnessed; stable on probe";
    case StrongStatus::DecayConsistent:
      return "decay-consistent";
    case StrongStatus::NoQuasistability:
      return "no strong quasistability on probe";
  }
  return "?";
}

StabilityVerdict classify_weak(const OperatorExpr& a, const Vector& x,
                               std::span<const Vector> family, std::size_t horizon,
                               const WeakOptions& options) {
  auto series = pairing_family(a, x, family, horizon);
  return classify_weak(series, options);
}

StabilityVerdict classify_weak(std::span<const PairingSeries> family, const WeakOptions& options) {
  if (family.empty()) throw std::invalid_argument("classify_weak: empty functional family");
  const std::size_t horizon = family.front().horizon;
  for (const auto& s : family) {
    if (s.horizon != horizon) throw std::invalid_argument("classify_weak: horizons differ");
  }
  if (options.window_start > horizon) {
    throw std::invalid_argument("classify_weak: horizon shorter than tail window start");
  }

  StabilityVerdict out;
  out.mode = StabilityMode::Weak;
  out.horizon = horizon;
  out.window_start = options.window_start;

  const auto& zm = options.zero_mode;
  std::vector<bool> all_vanish(horizon + 1, true);
  bool tail_all_zero = true;
  for (std::size_t f = 0; f < family.size(); ++f) {
    const auto ext = tail_extrema(family[f], options.window_start);
    ProbeEvidence ev{f, ext.min, ext.max, ext.argmax, 0};
    for (std::size_t n = options.window_start; n <= horizon; ++n) {
      if (zm.vanishes(family[f].values[n])) {
        ++ev.zero_count;
      } else {
        all_vanish[n] = false;
        tail_all_zero = false;
      }
    }
    out.evidence.push_back(std::move(ev));
  }

  for (std::size_t n = options.window_start; n <= horizon; ++n) {
    if (!all_vanish[n]) continue;
    out.simultaneous_zeros.push_back(n);
    if (n > options.window_start && !all_vanish[n - 1]) out.witness_indices.push_back(n);
  }

  // Longest run of delta-level hits for one functional, tracked as evidence
  // against weak stability.
  for (std::size_t f = 0; f < family.size(); ++f) {
    NonDecayWitness w{f, {}};
    for (std::size_t n = options.window_start; n <= horizon; ++n) {
      if (abs(family[f].values[n]) >= options.delta) w.indices.push_back(n);
    }
    if (!w.indices.empty() && (!out.nondecay || w.indices.size() > out.nondecay->indices.size())) {
      out.nondecay = std::move(w);
    }
  }

  auto instability = [&]() {
    std::vector<std::vector<std::size_t>> candidates = options.candidate_subsequences;
    if (candidates.empty()) {
      std::vector<std::size_t> whole;
      for (std::size_t n = options.window_start; n <= horizon; ++n) whole.push_back(n);
      candidates.push_back(std::move(whole));
    }
    for (const auto& s : family) {
      bool along_all = true;
      for (const auto& cand : candidates) {
        bool any_member = false;
        bool holds = true;
        for (std::size_t n : cand) {
          if (n < options.window_start || n > horizon) continue;
          any_member = true;
          if (abs(s.values[n]) < options.delta) {
            holds = false;
            break;
          }
        }
        if (!any_member || !holds) {
          along_all = false;
          break;
        }
      }
      if (along_all) return true;
    }
    return false;
  };

  if (tail_all_zero) {
    out.verdict = Verdict::StableConsistent;
  } else if (out.simultaneous_zeros.size() >= options.min_zero_hits) {
    out.verdict = Verdict::QuasistableWitnessed;
  } else if (instability()) {
    out.verdict = Verdict::InstabilityWitnessed;
  } else {
    out.verdict = Verdict::Inconclusive;
  }
  return out;
}

UniformReport uniform_equivalence_check(const FiniteMatrix& m, std::size_t horizon, double tol) {
  if (horizon < 4) throw std::invalid_argument("uniform_equivalence_check: N must be at least 4");
  UniformReport out;
  out.norms.reserve(horizon + 1);
  FiniteMatrix p = FiniteMatrix::identity(m.dim());
  const NormOptions opts{.tol = tol};
  for (std::size_t n = 0; n <= horizon; ++n) {
    if (n > 0) p = p * m;
    out.norms.push_back(spectral_norm(p, opts));
  }
  out.n0 = 1;
  out.min_norm = out.norms[1];
  for (std::size_t n = 2; n <= horizon; ++n) {
    if (out.norms[n] < out.min_norm) {
      out.min_norm = out.norms[n];
      out.n0 = n;
    }
  }
  out.gelfand = std::pow(out.norms[horizon], 1.0 / static_cast<double>(horizon));
  out.gelfand_below_one = out.gelfand < 1.0 - tol;
  out.quasistability_witnessed = out.min_norm < 1.0 - tol;
  if (!out.quasistability_witnessed) {
    out.pass = true;
    out.summary = "no quasistability: min ||M^n|| >= 1 for n <= N";
    return out;
  }
  bool envelope_ok = true;
  for (std::size_t c = 2; c * out.n0 <= horizon; ++c) {
    EnvelopeCheck e;
    e.multiple = c;
    e.lhs = out.norms[c * out.n0];
    e.rhs = std::pow(out.min_norm, static_cast<double>(c));
    e.ok = e.lhs <= e.rhs * (1.0 + 2.0 * tol * static_cast<double>(c));
    envelope_ok = envelope_ok && e.ok;
    out.envelope.push_back(e);
  }
  out.pass = envelope_ok && out.gelfand_below_one;
  out.summary = out.pass ? "uniform quasistability witnessed; decay confirmed"
                         : "uniform quasistability witnessed but decay check failed";
  return out;
}

namespace {

std::vector<StrongProbeReport> strong_reports(const OperatorExpr& a, std::span<const Vector> probes,
                                              std::size_t horizon,
                                              const std::vector<Rational>& bound_sq_by_gap,
                                              const StrongOptions& options) {
  if (options.window_start > horizon) {
    throw std::invalid_argument("strong_equivalence_check: window start past horizon");
  }
  std::vector<StrongProbeReport> out;
  for (const auto& x : probes) {
    StrongProbeReport r;
    for (const auto& v : orbit(a, x, horizon)) r.norms_sq.push_back(norm_sq(v));
    r.argmin = options.window_start;
    r.min_sq = r.norms_sq[r.argmin];
    for (std::size_t n = options.window_start; n <= horizon; ++n) {
      if (r.norms_sq[n] < r.min_sq) {
        r.min_sq = r.norms_sq[n];
        r.argmin = n;
      }
    }
    r.bound_sq = 0;
    for (std::size_t j = 0; j <= horizon - r.argmin; ++j) {
      if (bound_sq_by_gap[j] > r.bound_sq) r.bound_sq = bound_sq_by_gap[j];
    }
    const Rational cap = r.bound_sq * r.min_sq;
    r.inequality_holds = true;
    bool margin_set = false;
    for (std::size_t n = r.argmin; n <= horizon; ++n) {
      Rational diff = r.norms_sq[n] - cap;
      if (!margin_set || diff > r.margin) {
        r.margin = diff;
        margin_set = true;
      }
      if (sgn(diff) > 0 && r.inequality_holds) {
        r.inequality_holds = false;
        r.first_violation = n;
      }
    }
    Rational first_max = r.norms_sq[options.window_start];
    if (sgn(r.min_sq) == 0) {
      r.status = StrongStatus::QuasiAndStable;
    } else if (r.min_sq < first_max) {
      r.status = StrongStatus::DecayConsistent;
    } else {
      r.status = StrongStatus::NoQuasistability;
    }
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace

std::vector<StrongProbeReport> strong_equivalence_check(const FiniteMatrix& m,
                                                        std::span<const FinVec> probes,
                                                        std::size_t horizon,
                                                        const StrongOptions& options) {
  std::vector<Rational> bounds;
  bounds.reserve(horizon + 1);
  FiniteMatrix p = FiniteMatrix::identity(m.dim());
  for (std::size_t j = 0; j <= horizon; ++j) {
    if (j > 0) p = p * m;
    // ||A||_2^2 <= ||A||_1 ||A||_inf
    bounds.push_back(p.one_norm() * p.inf_norm());
  }
  // sup over j' <= j so the bound at gap j covers every shorter gap too.
  for (std::size_t j = 1; j < bounds.size(); ++j) {
    if (bounds[j - 1] > bounds[j]) bounds[j] = bounds[j - 1];
  }
  std::vector<Vector> vecs(probes.begin(), probes.end());
  return strong_reports(matrix(m), vecs, horizon, bounds, options);
}

std::vector<StrongProbeReport> strong_equivalence_check(const OperatorExpr& a,
                                                        std::span<const Vector> probes,
                                                        std::size_t horizon,
                                                        const Rational& bound_sq,
                                                        const StrongOptions& options) {
  std::vector<Rational> bounds(horizon + 1, bound_sq);
  return strong_reports(a, probes, horizon, bounds, options);
}

std::vector<PowerBoundReport> power_bounded_probe(const OperatorExpr& a,
                                                  std::span<const Vector> probes,
                                                  std::size_t horizon,
                                                  const Rational& growth_slack) {
  std::vector<PowerBoundReport> out;
  const std::size_t quarter = horizon / 4;
  for (const auto& x : probes) {
    PowerBoundReport r;
    for (const auto& v : orbit(a, x, horizon)) r.norms_sq.push_back(norm_sq(v));
    r.sup = *std::max_element(r.norms_sq.begin(), r.norms_sq.end());
    r.first_quarter_max = *std::max_element(r.norms_sq.begin(), r.norms_sq.begin() + quarter + 1);
    r.last_quarter_max = *std::max_element(r.norms_sq.end() - static_cast<long>(quarter) - 1,
                                           r.norms_sq.end());
    r.growth_flagged = r.last_quarter_max > growth_slack * r.first_quarter_max;
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace orbitlab
