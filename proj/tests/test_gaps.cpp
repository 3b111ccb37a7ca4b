#include <gtest/gtest.h>

#include <algorithm>

#include "orbitlab/gaps.hpp"
#include "test_support.hpp"

using namespace orbitlab;
using orbitlab::testing::Rng;

namespace {

FinVec e(Index k) { return FinVec::basis(k); }

std::vector<Index> range_step(Index from, Index to, Index step) {
  std::vector<Index> out;
  for (Index n = from; n <= to; n += step) out.push_back(n);
  return out;
}

std::vector<std::vector<Rational>> rows_of(const std::vector<PairingSeries>& family) {
  std::vector<std::vector<Rational>> rows;
  for (const auto& s : family) rows.push_back(s.values);
  return rows;
}

// Reachability over zero indices from the virtual start burn_in - 1 to the
// virtual end N + 1, steps of at most m. Quadratic, written independently
// of the greedy detector.
bool walk_exists(const std::vector<bool>& zero, Index burn_in, Index m) {
  const Index horizon = zero.size() - 1;
  std::vector<bool> reach(horizon + 3, false);
  // position p in reach stands for index p - 1
  reach[burn_in] = true;
  for (Index n = burn_in; n <= horizon + 1; ++n) {
    const bool usable = n == horizon + 1 || zero[n];
    if (!usable) continue;
    for (Index d = 1; d <= m && d <= n + 1 - burn_in; ++d) {
      if (reach[n + 1 - d]) {
        reach[n + 1] = true;
        break;
      }
    }
  }
  return reach[horizon + 2];
}

}  // namespace

TEST(GapStats, Examples) {
  std::vector<Index> evens{0, 2, 4, 6};
  EXPECT_EQ(gap_stats(evens).max_gap, 2u);
  EXPECT_TRUE(gap_stats(evens).bounded_by(2));
  EXPECT_FALSE(gap_stats(evens).strictly_increasing_gaps);

  std::vector<Index> powers{1, 3, 9, 27, 81, 243};
  auto p = gap_stats(powers);
  EXPECT_EQ(p.gaps, (std::vector<Index>{2, 6, 18, 54, 162}));
  EXPECT_TRUE(p.strictly_increasing_gaps);

  std::vector<Index> hits{3, 7, 19, 55, 163, 487};
  auto h = gap_stats(hits);
  EXPECT_EQ(h.gaps, (std::vector<Index>{4, 12, 36, 108, 324}));
  EXPECT_EQ(h.histogram.at(36), 1u);

  std::vector<Index> one{4};
  std::vector<Index> flat{1, 1};
  EXPECT_THROW(gap_stats(one), PreconditionError);
  EXPECT_THROW(gap_stats(flat), PreconditionError);
}

TEST(IndexSubsequence, Validation) {
  EXPECT_THROW(IndexSubsequence({3, 2}), PreconditionError);
  EXPECT_THROW(IndexSubsequence::with_gap_bound({1, 3, 9}, 2), PreconditionError);
  auto s = IndexSubsequence::with_gap_bound({1, 3, 5}, 2);
  EXPECT_EQ(s.gap_bound(), Index{2});
  EXPECT_FALSE(IndexSubsequence({1, 3, 9}).gap_bound());
}

TEST(TranslateCover, Examples) {
  auto evens = range_step(0, 100, 2);
  EXPECT_TRUE(translate_cover_check(evens, 2, 100).covered);

  std::vector<Index> powers{1, 3, 9, 27, 81};
  auto bad = translate_cover_check(powers, 2, 81);
  EXPECT_FALSE(bad.covered);
  EXPECT_TRUE(std::find(bad.uncovered.begin(), bad.uncovered.end(), 6) != bad.uncovered.end());

  auto fives = range_step(0, 1000, 5);
  EXPECT_TRUE(translate_cover_check(fives, 5, 1000).covered);
  EXPECT_FALSE(translate_cover_check(fives, 3, 1000).covered);
}

TEST(TranslateCover, GapOfBoundPlusOneRejected) {
  const std::vector<Index> idx{0, 2, 5, 7};
  const auto r = translate_cover_check(idx, 2, 9);
  EXPECT_TRUE(r.uncovered.empty());
  EXPECT_FALSE(r.covered);
  ASSERT_TRUE(r.gap_violation.has_value());
  EXPECT_EQ(*r.gap_violation, (std::pair<Index, Index>{2, 5}));
  EXPECT_TRUE(translate_cover_check(idx, 3, 9).covered);
}

TEST(Transfer, MonotoneNullSequence) {
  std::vector<Rational> a;
  for (Index n = 0; n <= 100; ++n) a.push_back(Rational(1, n + 1));
  auto evens = IndexSubsequence::with_gap_bound(range_step(0, 100, 2), 2);
  auto r = transfer_convergence(a, evens, 0, Rational(1, 10), 10);
  EXPECT_TRUE(r.hypothesis_holds);
  EXPECT_EQ(r.transfer_from, Index{12});
  EXPECT_TRUE(r.conclusion_holds);
  EXPECT_FALSE(r.violation);
}

TEST(Transfer, ZeroSeries) {
  std::vector<Rational> a(80, Rational(0));
  auto sevens = IndexSubsequence::with_gap_bound(range_step(0, 80, 7), 7);
  auto r = transfer_convergence(a, sevens, 0, Rational(1, 1000), 0);
  EXPECT_TRUE(r.hypothesis_holds);
  EXPECT_TRUE(r.conclusion_holds);
}

TEST(Transfer, FoguelHitsBreakHypothesis) {
  std::vector<Rational> a(200, Rational(0));
  for (Index n : {3, 7, 19, 55, 163}) a[n] = 1;
  auto evens = IndexSubsequence::with_gap_bound(range_step(0, 198, 2), 2);
  auto r = transfer_convergence(a, evens, 0, Rational(1, 2), 0);
  EXPECT_FALSE(r.hypothesis_holds);
  ASSERT_TRUE(r.hypothesis_failure);
  EXPECT_EQ(r.hypothesis_failure->n_k, 2u);
  EXPECT_EQ(r.hypothesis_failure->j, 1u);
  EXPECT_EQ(r.hypothesis_failure->n, 3u);
  EXPECT_FALSE(r.conclusion_holds);
  EXPECT_FALSE(r.violation);
}

TEST(Transfer, Preconditions) {
  std::vector<Rational> a(100, Rational(0));
  EXPECT_THROW(transfer_convergence(a, IndexSubsequence(range_step(0, 99, 2)), 0, 1, 0),
               PreconditionError);
  // members stop at 20, so (20, 99] is not covered by translates j <= 2
  EXPECT_THROW(transfer_convergence(a, IndexSubsequence::with_gap_bound(range_step(0, 20, 2), 2), 0, 1, 0),
               PreconditionError);
}

TEST(Transfer, NeverViolatesOnRandomInstances) {
  Rng rng(43);
  for (int trial = 0; trial < 300; ++trial) {
    const Index m = std::uniform_int_distribution<Index>(1, 6)(rng);
    const Index horizon = std::uniform_int_distribution<Index>(30, 120)(rng);
    std::vector<Index> idx;
    for (Index n = std::uniform_int_distribution<Index>(0, m)(rng); n <= horizon;
         n += std::uniform_int_distribution<Index>(1, m)(rng)) {
      idx.push_back(n);
    }
    if (idx.back() + m < horizon) idx.push_back(horizon);
    std::vector<Rational> a;
    for (Index n = 0; n <= horizon; ++n) {
      a.push_back(n < 10 ? orbitlab::testing::random_rational(rng) : Rational(1, 2 * n + 1));
    }
    auto sub = IndexSubsequence::with_gap_bound(idx, m);
    auto r = transfer_convergence(a, sub, 0, Rational(1, 5), 10);
    EXPECT_FALSE(r.violation) << "trial " << trial;
    if (r.hypothesis_holds) EXPECT_TRUE(r.conclusion_holds);
  }
}

TEST(Detector, ShiftCertificate) {
  std::vector<Vector> fam;
  for (Index k = 0; k <= 6; ++k) fam.emplace_back(e(k));
  auto series = pairing_family(shift(), e(0), fam, 50);
  auto cert = find_bounded_gap_zero_subseq(series, 1);
  ASSERT_EQ(cert.kind, SubseqKind::Certificate);
  EXPECT_EQ(cert.subsequence.indices(), range_step(10, 50, 1));
  EXPECT_TRUE(verify_certificate(cert, rows_of(series), ZeroMode::exact_zero()));
}

TEST(Detector, DiagonalZeroCertificate) {
  std::vector<Vector> fam{e(0)};
  auto series = pairing_family(matrix(FiniteMatrix::diagonal({Rational(0)})), e(0), fam, 40);
  auto cert = find_bounded_gap_zero_subseq(series, 1, DetectorOptions{.burn_in = 1});
  ASSERT_EQ(cert.kind, SubseqKind::Certificate);
  EXPECT_EQ(cert.subsequence.indices(), range_step(1, 40, 1));
}

TEST(Detector, FoguelTopFamilyRefutation) {
  const Index M = 8;
  std::vector<Vector> fam;
  for (Index k = 0; k <= M; ++k) fam.emplace_back(PairVec{e(k), {}});
  auto series = pairing_family(foguel(make_geometric_set(3, 10000)), PairVec{{}, e(0)}, fam, 2000);
  auto cert = find_bounded_gap_zero_subseq(series, M);
  ASSERT_EQ(cert.kind, SubseqKind::Refutation);
  EXPECT_EQ(cert.witness_functional, std::size_t{0});
  std::vector<Index> ends;
  for (const auto& w : cert.windows) {
    ends.push_back(w.end);
    EXPECT_EQ(w.witness_hits, 1u);
    EXPECT_EQ(static_cast<std::int64_t>(w.end) - w.start, static_cast<std::int64_t>(M));
  }
  EXPECT_EQ(ends, (std::vector<Index>{19, 55, 163, 487, 1459}));
  EXPECT_TRUE(verify_refutation(cert, rows_of(series), ZeroMode::exact_zero()));

  // within each window, the nonzero functional at n is k' = 2m + 1 - n
  for (const auto& w : cert.windows) {
    for (auto [n, f] : w.blockers) {
      EXPECT_EQ(series[w.end - n].values[n], 1) << "window ending " << w.end << " n " << n;
      EXPECT_LE(f, M);
    }
  }
}

TEST(Detector, HorizonTooShortIsInconclusive) {
  std::vector<std::vector<Rational>> rows{std::vector<Rational>(13, Rational(0))};
  auto r = find_bounded_gap_zero_subseq(rows, 2);
  EXPECT_EQ(r.kind, SubseqKind::Inconclusive);
  EXPECT_FALSE(verify_certificate(r, rows, ZeroMode::exact_zero()));
}

TEST(Detector, Errors) {
  std::vector<std::vector<Rational>> none;
  EXPECT_THROW(find_bounded_gap_zero_subseq(none, 2), PreconditionError);
  std::vector<std::vector<Rational>> ragged{std::vector<Rational>(40), std::vector<Rational>(41)};
  EXPECT_THROW(find_bounded_gap_zero_subseq(ragged, 2), PreconditionError);
  auto a = pairing_series(shift(), e(0), e(1), 40);
  auto b = pairing_series(coshift(), e(0), e(1), 40);
  std::vector<PairingSeries> mixed{a, b};
  EXPECT_THROW(find_bounded_gap_zero_subseq(mixed, 2), PreconditionError);
}

TEST(Detector, GreedyIsCompleteAndSound) {
  Rng rng(47);
  for (int trial = 0; trial < 500; ++trial) {
    const Index horizon = std::uniform_int_distribution<Index>(20, 80)(rng);
    const Index m = std::uniform_int_distribution<Index>(1, 5)(rng);
    const std::size_t members = std::uniform_int_distribution<std::size_t>(1, 3)(rng);
    const double density = std::uniform_real_distribution<double>(0.05, 0.5)(rng);
    std::bernoulli_distribution hit(density);
    std::vector<std::vector<Rational>> rows(members, std::vector<Rational>(horizon + 1));
    std::vector<bool> zero(horizon + 1, true);
    for (auto& row : rows) {
      for (Index n = 0; n <= horizon; ++n) {
        if (hit(rng)) {
          row[n] = orbitlab::testing::random_nonzero_rational(rng);
          zero[n] = false;
        }
      }
    }
    const DetectorOptions opts{.burn_in = 5};
    auto r = find_bounded_gap_zero_subseq(rows, m, opts);
    ASSERT_EQ(r.kind == SubseqKind::Certificate, walk_exists(zero, opts.burn_in, m)) << "trial " << trial;
    if (r.kind == SubseqKind::Certificate) {
      EXPECT_TRUE(verify_certificate(r, rows, opts.zero_mode));
    } else if (r.kind == SubseqKind::Refutation) {
      EXPECT_TRUE(verify_refutation(r, rows, opts.zero_mode));
    }
  }
}

TEST(Pigeonhole, WalksMeetEveryWindow) {
  Rng rng(53);
  for (int trial = 0; trial < 300; ++trial) {
    const Index m = std::uniform_int_distribution<Index>(1, 9)(rng);
    std::vector<bool> member(400, false);
    Index last = 0;
    for (Index n = 0; n < 400; n += std::uniform_int_distribution<Index>(1, m)(rng)) {
      member[n] = true;
      last = n;
    }
    for (Index a = 0; a + m <= last; ++a) {
      bool met = false;
      for (Index n = a; n <= a + m; ++n) met = met || member[n];
      ASSERT_TRUE(met) << "window [" << a << "," << a + m << "] missed, M=" << m;
    }
  }
}

TEST(TranslateIdentity, ShiftExample) {
  auto evens = IndexSubsequence::with_gap_bound(range_step(0, 20, 2), 2);
  auto r = lemma52_check(shift(), e(0), e(3), evens, 22);
  EXPECT_TRUE(r.identity_holds);
  EXPECT_EQ(r.checks, 11u * 3u);
  EXPECT_EQ(r.series_zero_from, Index{4});
  EXPECT_EQ(r.translate_tail_max, 0);
}

TEST(TranslateIdentity, FoguelRandomProbes) {
  Rng rng(59);
  const auto f = foguel(make_geometric_set(3, 10000));
  auto sevens = IndexSubsequence::with_gap_bound(range_step(0, 70, 7), 7);
  for (int trial = 0; trial < 20; ++trial) {
    auto x = orbitlab::testing::random_pairvec(rng, 4, 12);
    auto z = orbitlab::testing::random_pairvec(rng, 4, 12);
    auto r = lemma52_check(f, x, z, sevens, 77);
    EXPECT_TRUE(r.identity_holds) << "trial " << trial;
  }
}

TEST(TranslateIdentity, ContractionTranslatesDecay) {
  auto evens = IndexSubsequence::with_gap_bound(range_step(0, 40, 2), 2);
  auto r = lemma52_check(matrix(FiniteMatrix::diagonal({Rational(1, 2)})), e(0), e(0), evens, 42);
  EXPECT_TRUE(r.identity_holds);
  EXPECT_LE(r.translate_tail_max, Rational(1, mpz_class(1) << 30));
  EXPECT_LE(r.series_tail_max, Rational(1, mpz_class(1) << 30));
  EXPECT_FALSE(r.series_zero_from);
}

TEST(TranslateIdentity, Preconditions) {
  auto evens = IndexSubsequence::with_gap_bound(range_step(0, 20, 2), 2);
  EXPECT_THROW(lemma52_check(shift(), e(0), e(3), evens, 21), PreconditionError);
  EXPECT_THROW(lemma52_check(shift(), e(0), e(3), IndexSubsequence(range_step(0, 20, 2)), 40),
               PreconditionError);
}
