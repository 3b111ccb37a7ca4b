#include <gtest/gtest.h>

#include "orbitlab/supercyclicity.hpp"
#include "test_support.hpp"

using namespace orbitlab;
using orbitlab::testing::Rng;

namespace {

FinVec e(Index k) { return FinVec::basis(k); }

OperatorExpr foguel3() { return foguel(make_geometric_set(3, 10000)); }

std::vector<Vector> coordinates(Index up_to) {
  std::vector<Vector> family;
  for (Index k = 0; k <= up_to; ++k) family.emplace_back(e(k));
  return family;
}

std::vector<Vector> coordinate_pairs(Index up_to) {
  std::vector<Vector> family;
  for (Index k = 0; k <= up_to; ++k) family.emplace_back(PairVec{e(k), {}});
  for (Index k = 0; k <= up_to; ++k) family.emplace_back(PairVec{{}, e(k)});
  return family;
}

// Report with rho = 0 on the given candidates and alpha_n = alpha(n) there.
template <class AlphaFn>
ProbeReport fabricated(std::size_t horizon, const std::vector<Index>& candidates, AlphaFn alpha) {
  ProbeReport r;
  r.horizon = horizon;
  for (std::size_t n = 0; n <= horizon; ++n) r.rows.push_back(ProbeRow{n, std::nullopt, std::nullopt, {}});
  for (Index n : candidates) {
    r.rows[n].alpha = alpha(n);
    r.rows[n].rho = Rational(0);
    r.rows[n].anchor_used = 0;
  }
  r.candidate_subsequence = candidates;
  return r;
}

}  // namespace

TEST(OrbitMembership, Examples) {
  EXPECT_EQ(orbit_membership(shift(), e(0), Rational(5) * e(3), 10), (OrbitHit{5, 3}));
  EXPECT_FALSE(orbit_membership(shift(), e(0), e(0) + e(1), 10));
  const PairVec y{{}, e(0)};
  const Vector x = scaled(apply_power(foguel3(), 7, y), Rational(-2, 3));
  EXPECT_EQ(orbit_membership(foguel3(), y, x, 30), (OrbitHit{Rational(-2, 3), 7}));
}

TEST(OrbitMembership, EdgeCases) {
  EXPECT_THROW(orbit_membership(shift(), FinVec{}, e(0), 5), PreconditionError);
  EXPECT_FALSE(orbit_membership(shift(), e(0), FinVec{}, 5));
  EXPECT_FALSE(orbit_membership(shift(), e(0), e(9), 5));  // beyond horizon
  // the smallest n wins when the orbit revisits a ray
  const auto swap = matrix(FiniteMatrix::from_rows({{0, 1}, {1, 0}}));
  EXPECT_EQ(orbit_membership(swap, e(0), Rational(3) * e(1), 10), (OrbitHit{3, 1}));
}

TEST(OrbitMembership, RecoversRandomFoguelHits) {
  Rng rng(61);
  const PairVec y{{}, e(0)};
  for (int trial = 0; trial < 30; ++trial) {
    const auto alpha = orbitlab::testing::random_nonzero_rational(rng, 7, 5);
    const std::size_t n = std::uniform_int_distribution<std::size_t>(0, 30)(rng);
    const Vector x = scaled(apply_power(foguel3(), n, y), alpha);
    EXPECT_EQ(orbit_membership(foguel3(), y, x, 40), (OrbitHit{alpha, n}));
  }
}

TEST(ProjectiveFit, ShiftExample) {
  auto fam = coordinates(5);
  auto r = projective_fit(shift(), e(0), e(3), fam, 10, 3);
  ASSERT_EQ(r.rows.size(), 11u);
  for (const auto& row : r.rows) {
    if (row.n == 3) {
      EXPECT_EQ(row.alpha, Rational(1));
      EXPECT_EQ(row.rho, Rational(0));
    } else if (row.rho) {
      EXPECT_GE(*row.rho, 1);
    }
  }
  EXPECT_EQ(r.candidate_subsequence, (std::vector<Index>{3}));
  EXPECT_TRUE(verify_residuals(shift(), r));
}

TEST(ProjectiveFit, ZeroTarget) {
  auto fam = coordinate_pairs(6);
  auto r = projective_fit(foguel3(), PairVec{{}, e(0)}, PairVec{}, fam, 60, 0);
  std::size_t defined = 0;
  for (const auto& row : r.rows) {
    if (!row.alpha) continue;
    ++defined;
    EXPECT_EQ(*row.alpha, 0);
    EXPECT_EQ(*row.rho, 0);
  }
  EXPECT_EQ(defined, 4u);  // n = 3, 7, 19, 55
}

TEST(ProjectiveFit, FoguelExample) {
  auto fam = coordinate_pairs(6);
  const PairVec y{{}, e(0)};
  auto r = projective_fit(foguel3(), y, PairVec{e(0), {}}, fam, 200, 0);
  std::vector<std::size_t> defined;
  for (const auto& row : r.rows) {
    if (!row.alpha) continue;
    defined.push_back(row.n);
    EXPECT_EQ(*row.alpha, 1);
  }
  EXPECT_EQ(defined, (std::vector<std::size_t>{3, 7, 19, 55, 163}));
  // alpha F^3 y - x = (0, e3) is still seen by the bottom coordinate e3
  EXPECT_EQ(r.rows[3].rho, Rational(1));
  EXPECT_EQ(r.candidate_subsequence, (std::vector<Index>{7, 19, 55, 163}));
  EXPECT_EQ(r.alpha_sup, Rational(1));
  ASSERT_TRUE(r.candidate_gaps);
  EXPECT_EQ(r.candidate_gaps->gaps, (std::vector<Index>{12, 36, 108}));
  EXPECT_TRUE(verify_residuals(foguel3(), r));
}

TEST(ProjectiveFit, AnnihilatedOrbitAndFallback) {
  std::vector<Vector> fam{e(0)};
  auto dead = projective_fit(shift(), e(5), e(0), fam, 20, 0);
  EXPECT_TRUE(dead.orbit_annihilated);
  for (const auto& row : dead.rows) EXPECT_FALSE(row.alpha);

  std::vector<Vector> two{e(0), e(2)};
  auto r = projective_fit(shift(), e(0), e(2), two, 5, 0, FitOptions{.fallback_anchors = {1}});
  EXPECT_EQ(r.rows[0].anchor_used, std::size_t{0});
  EXPECT_EQ(r.rows[2].anchor_used, std::size_t{1});
  EXPECT_EQ(r.rows[2].rho, Rational(0));
  EXPECT_FALSE(r.rows[1].alpha);

  EXPECT_THROW(projective_fit(shift(), e(0), e(2), two, 5, 2), PreconditionError);
  std::vector<Vector> none;
  EXPECT_THROW(projective_fit(shift(), e(0), e(2), none, 5, 0), PreconditionError);
}

TEST(ProjectiveFit, ResidualsRecomputeAndAnchorIsExact) {
  Rng rng(67);
  auto fam = coordinate_pairs(5);
  for (int trial = 0; trial < 20; ++trial) {
    auto y = orbitlab::testing::random_pairvec(rng, 3, 6);
    auto x = orbitlab::testing::random_pairvec(rng, 3, 6);
    if (is_zero(Vector{y})) continue;
    const std::size_t anchor = trial % fam.size();
    auto r = projective_fit(foguel3(), y, x, fam, 40, anchor);
    EXPECT_TRUE(verify_residuals(foguel3(), r));
    for (const auto& row : r.rows) {
      if (!row.alpha) continue;
      EXPECT_GE(*row.rho, 0);
      const Vector fitted = difference(scaled(apply_power(foguel3(), row.n, y), *row.alpha), x);
      EXPECT_EQ(inner(fitted, fam[anchor]), 0);
    }
  }
}

TEST(AlphaBoundedness, Fabricated) {
  auto evens = std::vector<Index>{2, 4, 6, 8, 10, 12, 14, 16, 18, 20};
  auto flat = fabricated(20, evens, [](Index) { return Rational(1); });
  auto d = alpha_boundedness_report(flat, false);
  EXPECT_EQ(d.flag, AlphaFlag::BoundedEvidence);
  EXPECT_NE(d.message.find("horizon evidence"), std::string::npos);

  auto growing = fabricated(20, evens, [](Index n) { return Rational(n); });
  EXPECT_EQ(alpha_boundedness_report(growing, false).flag, AlphaFlag::UnboundedTrend);

  EXPECT_EQ(alpha_boundedness_report(growing, true).flag, AlphaFlag::SuppressedInOrbit);

  auto empty = fabricated(20, {}, [](Index) { return Rational(1); });
  EXPECT_THROW(alpha_boundedness_report(empty, false), PreconditionError);
}

TEST(AlphaBoundedness, ShiftInOrbitIsSuppressed) {
  auto fam = coordinates(5);
  auto r = projective_fit(shift(), e(0), e(3), fam, 10, 3);
  auto hit = orbit_membership(shift(), e(0), e(3), 10);
  ASSERT_EQ(hit, (OrbitHit{1, 3}));
  EXPECT_EQ(alpha_boundedness_report(r, hit.has_value()).flag, AlphaFlag::SuppressedInOrbit);
}

TEST(QuasistabilityScan, Examples) {
  auto shift_scan = quasistability_scan(shift(), e(0), coordinates(3), 30);
  for (const auto& t : shift_scan) EXPECT_EQ(t.min, 0);

  std::vector<Vector> top{PairVec{e(0), {}}};
  auto f = quasistability_scan(foguel3(), PairVec{{}, e(0)}, top, 500);
  ASSERT_EQ(f.size(), 1u);
  EXPECT_EQ(f[0].min, 0);
  for (Index hit : {19, 55, 163, 487}) {
    EXPECT_TRUE(std::find(f[0].argmin.begin(), f[0].argmin.end(), hit) == f[0].argmin.end());
  }
  EXPECT_EQ(f[0].argmin.size(), 491u - 4u);

  std::vector<Vector> first{e(0)};
  auto id = quasistability_scan(matrix(FiniteMatrix::identity(2)), e(0), first, 30);
  EXPECT_EQ(id[0].min, 1);
}

TEST(Dichotomy, SpanFinalQuarter) {
  std::vector<Index> dense;
  for (Index n = 0; n <= 100; ++n) dense.push_back(n);
  EXPECT_TRUE(candidates_span_final_quarter(dense, 100, 1));
  std::vector<Index> evens;
  for (Index n = 0; n <= 100; n += 2) evens.push_back(n);
  EXPECT_FALSE(candidates_span_final_quarter(evens, 100, 1));
  EXPECT_TRUE(candidates_span_final_quarter(evens, 100, 2));
  std::vector<Index> none;
  EXPECT_FALSE(candidates_span_final_quarter(none, 100, 10));
}

TEST(Dichotomy, ShiftHasNoCandidates) {
  auto rep = dichotomy_report(shift(), e(0), std::vector<Vector>{e(0) + e(1)}, coordinates(3), 40,
                              std::vector<Index>{1, 2, 4});
  EXPECT_TRUE(rep.power_bounded_precondition);
  ASSERT_EQ(rep.rows.size(), 1u);
  for (const auto& row : rep.rows[0].probe->rows) {
    if (row.rho) EXPECT_GE(*row.rho, 1);
  }
  for (const auto& c : rep.rows[0].cells) EXPECT_EQ(c.alternative, Alternative::NoCandidates);
}

TEST(Dichotomy, FabricatedSparseCandidates) {
  auto r = fabricated(500, {3, 7, 19, 55, 163, 487}, [](Index) { return Rational(1); });
  auto alpha = alpha_boundedness_report(r, false);
  std::vector<Index> gaps;
  for (Index m = 1; m <= 10; ++m) gaps.push_back(m);
  for (const auto& c : classify_dichotomy(r, alpha, gaps)) {
    EXPECT_FALSE(c.bounded_gap_walk);
    EXPECT_EQ(c.alternative, Alternative::A) << "M=" << c.max_gap;
  }
}

TEST(Dichotomy, FabricatedGrowingScalars) {
  std::vector<Index> evens;
  for (Index n = 2; n <= 100; n += 2) evens.push_back(n);
  auto r = fabricated(100, evens, [](Index n) { return Rational(n); });
  auto alpha = alpha_boundedness_report(r, false);
  std::vector<Index> gaps{2, 3};
  for (const auto& c : classify_dichotomy(r, alpha, gaps)) EXPECT_EQ(c.alternative, Alternative::B);
  std::vector<Index> tight{1};
  EXPECT_EQ(classify_dichotomy(r, alpha, tight).front().alternative, Alternative::AandB);
}

TEST(Dichotomy, InOrbitTargetAndGrowthPrecondition) {
  auto rep = dichotomy_report(shift(), e(0), std::vector<Vector>{Rational(2) * e(4)}, coordinates(5),
                              20, std::vector<Index>{2});
  ASSERT_TRUE(rep.rows[0].in_orbit);
  EXPECT_EQ(rep.rows[0].cells[0].alternative, Alternative::InOrbit);

  const auto jordan = matrix(FiniteMatrix::from_rows({{1, 1}, {0, 1}}));
  auto grow = dichotomy_report(jordan, e(1), std::vector<Vector>{e(0)}, coordinates(1), 40,
                               std::vector<Index>{2});
  EXPECT_FALSE(grow.power_bounded_precondition);
}
