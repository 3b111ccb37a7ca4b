#include "orbitlab/gaps.hpp"

#include <algorithm>

namespace orbitlab {

IndexSubsequence::IndexSubsequence(std::vector<Index> indices) : indices_(std::move(indices)) {
  for (std::size_t i = 1; i < indices_.size(); ++i) {
    if (indices_[i] <= indices_[i - 1]) {
      throw PreconditionError("subsequence not strictly increasing at position " + std::to_string(i));
    }
  }
}

IndexSubsequence IndexSubsequence::with_gap_bound(std::vector<Index> indices, Index gap_bound) {
  IndexSubsequence out(std::move(indices));
  for (std::size_t i = 1; i < out.indices_.size(); ++i) {
    if (out.indices_[i] - out.indices_[i - 1] > gap_bound) {
      throw PreconditionError("gap " + std::to_string(out.indices_[i] - out.indices_[i - 1]) +
                              " at position " + std::to_string(i) + " exceeds bound " +
                              std::to_string(gap_bound));
    }
  }
  out.gap_bound_ = gap_bound;
  return out;
}

GapStats gap_stats(std::span<const Index> indices) {
  if (indices.size() < 2) throw PreconditionError("gap_stats: need at least two indices");
  GapStats out;
  for (std::size_t i = 1; i < indices.size(); ++i) {
    if (indices[i] <= indices[i - 1]) {
      throw PreconditionError("gap_stats: indices not strictly increasing at position " +
                              std::to_string(i));
    }
    const Index g = indices[i] - indices[i - 1];
    out.gaps.push_back(g);
    out.max_gap = std::max(out.max_gap, g);
    ++out.histogram[g];
  }
  out.strictly_increasing_gaps = true;
  for (std::size_t i = 1; i < out.gaps.size(); ++i) {
    if (out.gaps[i] <= out.gaps[i - 1]) out.strictly_increasing_gaps = false;
  }
  return out;
}

CoverResult translate_cover_check(std::span<const Index> indices, Index m, Index range_end) {
  CoverResult out;
  if (indices.empty()) return out;
  // Walk [n_1, range_end]; each n is covered iff the last member <= n is within m.
  std::size_t k = 0;
  for (Index n = indices.front(); n <= range_end; ++n) {
    while (k + 1 < indices.size() && indices[k + 1] <= n) ++k;
    if (n - indices[k] > m) out.uncovered.push_back(n);
  }
  for (std::size_t i = 1; i < indices.size() && indices[i] <= range_end; ++i) {
    if (indices[i] - indices[i - 1] > m) {
      out.gap_violation = std::pair{indices[i - 1], indices[i]};
      break;
    }
  }
  out.covered = out.uncovered.empty() && !out.gap_violation;
  return out;
}

TransferReport transfer_convergence(std::span<const Rational> series, const IndexSubsequence& n_k,
                                    const Rational& alpha, const Rational& eps, Index burn_in) {
  if (!n_k.gap_bound()) throw PreconditionError("transfer_convergence: subsequence has no gap bound");
  if (series.empty()) throw PreconditionError("transfer_convergence: empty series");
  const Index m = *n_k.gap_bound();
  const Index horizon = series.size() - 1;
  std::vector<Index> members;
  for (Index n : n_k.indices()) {
    if (n >= burn_in && n <= horizon) members.push_back(n);
  }
  if (members.empty()) throw PreconditionError("transfer_convergence: no members in [burn_in, N]");
  if (auto cover = translate_cover_check(members, m, horizon); !cover.covered) {
    const std::string where = cover.uncovered.empty()
                                  ? "gap " + std::to_string(cover.gap_violation->first) + " -> " +
                                        std::to_string(cover.gap_violation->second)
                                  : "n = " + std::to_string(cover.uncovered.front());
    throw PreconditionError("transfer_convergence: translate cover fails at " + where);
  }

  auto close = [&](Index n) { return abs(Rational(series[n] - alpha)) < eps; };

  TransferReport out;
  out.hypothesis_holds = true;
  for (Index base : members) {
    for (Index j = 0; j <= m && base + j <= horizon; ++j) {
      if (!close(base + j)) {
        out.hypothesis_holds = false;
        out.hypothesis_failure = TranslateFailure{base, j, base + j};
        break;
      }
    }
    if (!out.hypothesis_holds) break;
  }
  out.transfer_from = members.front() + m;
  if (!out.hypothesis_holds) return out;
  out.conclusion_holds = true;
  for (Index n = *out.transfer_from; n <= horizon; ++n) {
    if (!close(n)) {
      out.conclusion_holds = false;
      out.violation = n;
      break;
    }
  }
  return out;
}

std::string to_string(SubseqKind k) {
  switch (k) {
    case SubseqKind::Certificate:
      return "certificate";
    case SubseqKind::Refutation:
      return "refutation";
    case SubseqKind::Inconclusive:
      return "inconclusive";
  }
  return "?";
}

namespace {

// blocker[n] = first family member nonzero at n, if any.
std::vector<std::optional<std::size_t>> blockers(std::span<const std::vector<Rational>> family,
                                                 const ZeroMode& zm) {
  std::vector<std::optional<std::size_t>> out(family.front().size());
  for (std::size_t n = 0; n < out.size(); ++n) {
    for (std::size_t f = 0; f < family.size(); ++f) {
      if (!zm.vanishes(family[f][n])) {
        out[n] = f;
        break;
      }
    }
  }
  return out;
}

}  // namespace

SubseqCertificate find_bounded_gap_zero_subseq(std::span<const PairingSeries> family, Index max_gap,
                                               const DetectorOptions& options) {
  if (family.empty()) throw PreconditionError("find_bounded_gap_zero_subseq: empty family");
  const auto& first = family.front();
  for (const auto& s : family) {
    if (s.horizon != first.horizon || !(s.x == first.x) ||
        s.op.describe() != first.op.describe()) {
      throw PreconditionError("find_bounded_gap_zero_subseq: series do not share (A, x, N)");
    }
  }
  std::vector<std::vector<Rational>> rows;
  rows.reserve(family.size());
  for (const auto& s : family) rows.push_back(s.values);
  return find_bounded_gap_zero_subseq(rows, max_gap, options);
}

SubseqCertificate find_bounded_gap_zero_subseq(std::span<const std::vector<Rational>> family,
                                               Index max_gap, const DetectorOptions& options) {
  if (family.empty()) throw PreconditionError("find_bounded_gap_zero_subseq: empty family");
  if (max_gap == 0) throw PreconditionError("find_bounded_gap_zero_subseq: gap bound must be >= 1");
  for (const auto& row : family) {
    if (row.size() != family.front().size() || row.empty()) {
      throw PreconditionError("find_bounded_gap_zero_subseq: series lengths differ");
    }
  }
  const Index horizon = family.front().size() - 1;
  SubseqCertificate out;
  out.horizon = horizon;
  out.max_gap = max_gap;
  out.burn_in = options.burn_in;

  const Index region = options.burn_in <= horizon ? horizon - options.burn_in + 1 : 0;
  if (static_cast<double>(region) < options.span_fraction * static_cast<double>(horizon + 1)) {
    out.note = "horizon too short: [burn_in, N] spans less than the required fraction";
    return out;
  }

  const auto blocked = blockers(family, options.zero_mode);

  // Greedy walk from the virtual member burn_in - 1, always stepping to the
  // nearest zero. It stalls exactly when max_gap consecutive indices are blocked.
  std::vector<Index> walk;
  Index run = 0;
  for (Index n = options.burn_in; n <= horizon; ++n) {
    if (blocked[n]) {
      if (++run == max_gap && !out.first_barrier) out.first_barrier = {n + 1 - max_gap, n};
    } else {
      run = 0;
      walk.push_back(n);
    }
  }

  if (!out.first_barrier) {
    out.kind = SubseqKind::Certificate;
    out.subsequence = IndexSubsequence::with_gap_bound(std::move(walk), max_gap);
    out.note = "gap-bounded zero walk spans [burn_in, N]; horizon evidence only";
    return out;
  }

  // Pigeonhole windows: a hit h of member f anchors [h - M, h] when every
  // index of the window is blocked, so no gap-<=M walk reaches past it
  // without landing on a nonzero pairing.
  std::size_t best_count = 0;
  for (std::size_t f = 0; f < family.size(); ++f) {
    std::vector<HitWindow> windows;
    bool inside_region = false;
    for (Index h = 0; h <= horizon; ++h) {
      if (options.zero_mode.vanishes(family[f][h])) continue;
      const std::int64_t start = static_cast<std::int64_t>(h) - static_cast<std::int64_t>(max_gap);
      const Index lo = start < 0 ? 0 : static_cast<Index>(start);
      HitWindow w{start, h, 0, {}};
      bool full = true;
      for (Index n = lo; n <= h; ++n) {
        if (!blocked[n]) {
          full = false;
          break;
        }
        w.blockers.emplace_back(n, *blocked[n]);
        if (!options.zero_mode.vanishes(family[f][n])) ++w.witness_hits;
      }
      if (!full) continue;
      if (start >= static_cast<std::int64_t>(options.burn_in)) inside_region = true;
      windows.push_back(std::move(w));
    }
    if (inside_region && windows.size() > best_count) {
      best_count = windows.size();
      out.witness_functional = f;
      out.windows = std::move(windows);
    }
  }
  if (out.witness_functional) {
    out.kind = SubseqKind::Refutation;
    out.note = "no gap-<=M zero walk crosses the listed windows; horizon evidence only";
  } else {
    out.note = "zero walk stalls but no hit-anchored window is fully blocked";
  }
  return out;
}

bool verify_certificate(const SubseqCertificate& cert, std::span<const std::vector<Rational>> family,
                        const ZeroMode& zero_mode) {
  if (cert.kind != SubseqKind::Certificate) return false;
  const auto& idx = cert.subsequence.indices();
  for (std::size_t i = 0; i < idx.size(); ++i) {
    if (i > 0 && idx[i] - idx[i - 1] > cert.max_gap) return false;
    for (const auto& row : family) {
      if (idx[i] >= row.size() || !zero_mode.vanishes(row[idx[i]])) return false;
    }
  }
  return true;
}

bool verify_refutation(const SubseqCertificate& cert, std::span<const std::vector<Rational>> family,
                       const ZeroMode& zero_mode) {
  if (cert.kind != SubseqKind::Refutation || !cert.witness_functional) return false;
  const auto& witness = family[*cert.witness_functional];
  for (const auto& w : cert.windows) {
    if (w.end >= witness.size() || zero_mode.vanishes(witness[w.end])) return false;
    if (static_cast<std::int64_t>(w.end) - w.start != static_cast<std::int64_t>(cert.max_gap)) {
      return false;
    }
    const Index lo = w.start < 0 ? 0 : static_cast<Index>(w.start);
    for (Index n = lo; n <= w.end; ++n) {
      bool hit = false;
      for (const auto& row : family) hit = hit || !zero_mode.vanishes(row[n]);
      if (!hit) return false;
    }
  }
  return !cert.windows.empty();
}

Lemma52Report lemma52_check(const OperatorExpr& a, const Vector& x, const Vector& z,
                            const IndexSubsequence& n_k, std::size_t horizon) {
  if (!n_k.gap_bound()) throw PreconditionError("lemma52_check: subsequence has no gap bound");
  if (n_k.empty()) throw PreconditionError("lemma52_check: empty subsequence");
  const Index m = *n_k.gap_bound();
  if (horizon < n_k.indices().back() + m) {
    throw PreconditionError("lemma52_check: horizon " + std::to_string(horizon) +
                            " < max(n_k) + M = " + std::to_string(n_k.indices().back() + m));
  }
  const auto forward = orbit(a, x, horizon);
  const auto backward = orbit(adjoint(a), z, m);

  Lemma52Report out;
  out.identity_holds = true;
  const auto& idx = n_k.indices();
  const std::size_t tail_from = idx.size() - (idx.size() + 3) / 4;
  for (std::size_t k = 0; k < idx.size(); ++k) {
    for (Index j = 0; j <= m; ++j) {
      const Rational lhs = inner(forward[idx[k] + j], z);
      const Rational rhs = inner(forward[idx[k]], backward[j]);
      ++out.checks;
      if (lhs != rhs && out.identity_holds) {
        out.identity_holds = false;
        out.first_failure = TranslateFailure{idx[k], j, idx[k] + j};
      }
      if (k >= tail_from && abs(lhs) > out.translate_tail_max) out.translate_tail_max = abs(lhs);
    }
  }
  for (std::size_t n = horizon - horizon / 4; n <= horizon; ++n) {
    const Rational v = abs(inner(forward[n], z));
    if (v > out.series_tail_max) out.series_tail_max = v;
  }
  for (std::size_t n = horizon + 1; n-- > 0;) {
    if (sgn(inner(forward[n], z)) != 0) break;
    out.series_zero_from = n;
  }
  return out;
}

}  // namespace orbitlab
