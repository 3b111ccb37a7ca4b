#include "orbitlab/supercyclicity.hpp"

#include <algorithm>

namespace orbitlab {

namespace {

// First stored coordinate, scanning the top component before the bottom.
std::optional<Rational> leading_coeff(const FinVec& v) {
  if (v.is_zero()) return std::nullopt;
  return v.entries().front().second;
}

std::optional<std::pair<Rational, Rational>> leading_pair(const Vector& x, const Vector& v) {
  if (const auto* xs = std::get_if<FinVec>(&x)) {
    const auto& vs = std::get<FinVec>(v);
    if (xs->is_zero() || vs.is_zero()) return std::nullopt;
    if (xs->entries().front().first != vs.entries().front().first) return std::nullopt;
    return std::pair{*leading_coeff(*xs), *leading_coeff(vs)};
  }
  const auto& xp = std::get<PairVec>(x);
  const auto& vp = std::get<PairVec>(v);
  if (xp.top.is_zero() != vp.top.is_zero()) return std::nullopt;
  if (!xp.top.is_zero()) return leading_pair(Vector{xp.top}, Vector{vp.top});
  return leading_pair(Vector{xp.bottom}, Vector{vp.bottom});
}

}  // namespace

std::optional<OrbitHit> orbit_membership(const OperatorExpr& a, const Vector& y, const Vector& x,
                                         std::size_t horizon) {
  if (is_zero(y)) throw PreconditionError("orbit_membership: y must be nonzero");
  if (x.index() != y.index()) throw DomainError("orbit_membership: x and y kinds differ");
  if (is_zero(x)) return std::nullopt;
  Vector current = y;
  for (std::size_t n = 0; n <= horizon; ++n) {
    if (n > 0) current = apply_once(a, current);
    if (is_zero(current)) break;  // the orbit stays at zero from here on
    auto lead = leading_pair(x, current);
    if (!lead) continue;
    Rational alpha = lead->first / lead->second;
    if (scaled(current, alpha) == x) return OrbitHit{alpha, n};
  }
  return std::nullopt;
}

ProbeReport projective_fit(const OperatorExpr& a, const Vector& y, const Vector& x,
                           std::span<const Vector> family, std::size_t horizon, std::size_t anchor,
                           const FitOptions& options) {
  if (family.empty()) throw PreconditionError("projective_fit: empty family");
  if (anchor >= family.size()) throw PreconditionError("projective_fit: anchor not in family");
  for (std::size_t f : options.fallback_anchors) {
    if (f >= family.size()) throw PreconditionError("projective_fit: fallback anchor not in family");
  }
  ProbeReport out;
  out.operator_description = a.describe();
  out.y = y;
  out.x = x;
  out.family.assign(family.begin(), family.end());
  out.horizon = horizon;
  out.threshold = options.threshold;

  std::vector<std::size_t> anchors{anchor};
  anchors.insert(anchors.end(), options.fallback_anchors.begin(), options.fallback_anchors.end());

  std::vector<Rational> target(family.size());
  for (std::size_t f = 0; f < family.size(); ++f) target[f] = inner(x, family[f]);

  bool any_defined = false;
  Vector current = y;
  for (std::size_t n = 0; n <= horizon; ++n) {
    if (n > 0) current = apply_once(a, current);
    ProbeRow row{n, std::nullopt, std::nullopt, std::nullopt};
    std::vector<Rational> pair(family.size());
    for (std::size_t f = 0; f < family.size(); ++f) pair[f] = inner(current, family[f]);
    for (std::size_t f : anchors) {
      if (sgn(pair[f]) == 0) continue;
      row.alpha = Rational(target[f] / pair[f]);
      row.anchor_used = f;
      break;
    }
    if (row.alpha) {
      any_defined = true;
      Rational rho(0);
      for (std::size_t f = 0; f < family.size(); ++f) {
        Rational r = abs(Rational(*row.alpha * pair[f] - target[f]));
        if (r > rho) rho = r;
      }
      row.rho = rho;
      if (rho <= options.threshold) {
        out.candidate_subsequence.push_back(n);
        Rational mag = abs(*row.alpha);
        if (!out.alpha_sup || mag > *out.alpha_sup) out.alpha_sup = mag;
      }
    }
    out.rows.push_back(std::move(row));
  }
  out.orbit_annihilated = !any_defined;
  if (out.candidate_subsequence.size() >= 2) out.candidate_gaps = gap_stats(out.candidate_subsequence);
  return out;
}

bool verify_residuals(const OperatorExpr& a, const ProbeReport& report) {
  for (const auto& row : report.rows) {
    if (!row.alpha) continue;
    const Vector fitted = difference(scaled(apply_power(a, row.n, report.y), *row.alpha), report.x);
    Rational rho(0);
    for (const auto& z : report.family) {
      Rational r = abs(inner(fitted, z));
      if (r > rho) rho = r;
    }
    if (!row.rho || rho != *row.rho) return false;
  }
  return true;
}

std::string to_string(AlphaFlag f) {
  switch (f) {
    case AlphaFlag::BoundedEvidence:
      return "bounded-alpha evidence";
    case AlphaFlag::UnboundedTrend:
      return "unbounded-alpha trend";
    case AlphaFlag::SuppressedInOrbit:
      return "suppressed: target in orbit";
  }
  return "?";
}

AlphaDiagnostic alpha_boundedness_report(const ProbeReport& report, bool x_in_orbit,
                                         const Rational& growth_slack) {
  const auto& cand = report.candidate_subsequence;
  if (cand.empty()) throw PreconditionError("alpha_boundedness_report: empty candidate subsequence");
  AlphaDiagnostic out;
  if (x_in_orbit) {
    out.flag = AlphaFlag::SuppressedInOrbit;
    out.message = "target lies in the orbit; scalar boundedness says nothing here (horizon evidence)";
    return out;
  }
  auto alpha_at = [&](Index n) { return abs(*report.rows.at(n).alpha); };
  const std::size_t q = std::max<std::size_t>(1, (cand.size() + 3) / 4);
  for (std::size_t i = 0; i < q; ++i) {
    out.first_quarter_max = std::max(out.first_quarter_max, alpha_at(cand[i]));
    out.last_quarter_max = std::max(out.last_quarter_max, alpha_at(cand[cand.size() - 1 - i]));
  }
  if (out.last_quarter_max <= out.first_quarter_max * growth_slack) {
    out.flag = AlphaFlag::BoundedEvidence;
    out.message =
        "bounded-alpha evidence: inconsistent with weak stability if it persisted (horizon evidence, "
        "not proof)";
  } else {
    out.flag = AlphaFlag::UnboundedTrend;
    out.message = "unbounded-alpha trend over the horizon (horizon evidence, not proof)";
  }
  return out;
}

std::vector<TailMinimum> quasistability_scan(const OperatorExpr& a, const Vector& y,
                                             std::span<const Vector> family, std::size_t horizon,
                                             std::size_t window_start) {
  std::vector<TailMinimum> out;
  const auto series = pairing_family(a, y, family, horizon);
  for (std::size_t f = 0; f < series.size(); ++f) {
    auto ext = tail_extrema(series[f], window_start);
    out.push_back(TailMinimum{f, std::move(ext.min), std::move(ext.argmin)});
  }
  return out;
}

std::string to_string(Alternative a) {
  switch (a) {
    case Alternative::NoCandidates:
      return "no candidates";
    case Alternative::InOrbit:
      return "target in orbit";
    case Alternative::A:
      return "(a) no boundedly spaced candidate walk";
    case Alternative::B:
      return "(b) unbounded scalars";
    case Alternative::AandB:
      return "(a) and (b)";
    case Alternative::Neither:
      return "neither at horizon";
  }
  return "?";
}

bool candidates_span_final_quarter(std::span<const Index> candidates, std::size_t horizon,
                                   Index max_gap) {
  const auto start = static_cast<std::int64_t>(horizon - horizon / 4);
  const auto gap = static_cast<std::int64_t>(max_gap);
  std::int64_t previous = start - 1;  // virtual member just before the window
  for (Index n : candidates) {
    const auto s = static_cast<std::int64_t>(n);
    if (s < start || n > horizon) continue;
    if (s - previous > gap) return false;
    previous = s;
  }
  return static_cast<std::int64_t>(horizon) + 1 - previous <= gap;
}

std::vector<DichotomyCell> classify_dichotomy(const ProbeReport& report,
                                              std::optional<AlphaDiagnostic> alpha,
                                              std::span<const Index> max_gaps) {
  std::vector<DichotomyCell> out;
  for (Index m : max_gaps) {
    DichotomyCell cell;
    cell.max_gap = m;
    if (report.candidate_subsequence.empty()) {
      cell.alternative = Alternative::NoCandidates;
    } else if (alpha && alpha->flag == AlphaFlag::SuppressedInOrbit) {
      cell.alternative = Alternative::InOrbit;
    } else {
      cell.bounded_gap_walk =
          candidates_span_final_quarter(report.candidate_subsequence, report.horizon, m);
      const bool alt_a = !cell.bounded_gap_walk;
      const bool alt_b = alpha && alpha->flag == AlphaFlag::UnboundedTrend;
      cell.alternative = alt_a && alt_b ? Alternative::AandB
                         : alt_a        ? Alternative::A
                         : alt_b        ? Alternative::B
                                        : Alternative::Neither;
    }
    out.push_back(cell);
  }
  return out;
}

DichotomyReport dichotomy_report(const OperatorExpr& a, const Vector& y,
                                 std::span<const Vector> targets, std::span<const Vector> family,
                                 std::size_t horizon, std::span<const Index> max_gaps,
                                 std::size_t anchor, const FitOptions& options) {
  DichotomyReport out;
  std::vector<Vector> probes{y};
  probes.insert(probes.end(), targets.begin(), targets.end());
  const auto bounds = power_bounded_probe(a, probes, horizon);
  out.power_bounded_precondition =
      std::none_of(bounds.begin(), bounds.end(), [](const auto& b) { return b.growth_flagged; });

  for (std::size_t t = 0; t < targets.size(); ++t) {
    DichotomyRow row;
    row.target = t;
    row.in_orbit = is_zero(targets[t]) ? std::nullopt : orbit_membership(a, y, targets[t], horizon);
    if (row.in_orbit) {
      row.cells.clear();
      for (Index m : max_gaps) row.cells.push_back({m, false, Alternative::InOrbit});
      out.rows.push_back(std::move(row));
      continue;
    }
    row.probe = projective_fit(a, y, targets[t], family, horizon, anchor, options);
    if (!row.probe->candidate_subsequence.empty()) {
      row.alpha = alpha_boundedness_report(*row.probe, false);
    }
    row.cells = classify_dichotomy(*row.probe, row.alpha, max_gaps);
    out.rows.push_back(std::move(row));
  }
  return out;
}

}  // namespace orbitlab
