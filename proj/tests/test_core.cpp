#include <gtest/gtest.h>

#include <cmath>
#include <thread>

#include "orbitlab/index_set.hpp"
#include "orbitlab/rational.hpp"
#include "orbitlab/vector.hpp"
#include "test_support.hpp"

using namespace orbitlab;
using orbitlab::testing::Rng;

namespace {

FinVec vec(std::vector<std::pair<Index, int>> entries) {
  std::vector<FinVec::Entry> out;
  for (auto [i, v] : entries) out.emplace_back(i, Rational(v));
  return FinVec::from_entries(std::move(out));
}

}  // namespace

TEST(Rational, ParseCanonicalizes) {
  EXPECT_EQ(parse_rational("6/4"), Rational(3, 2));
  EXPECT_EQ(to_string(parse_rational("-6/4")), "-3/2");
  EXPECT_EQ(to_string(parse_rational("5")), "5/1");
  EXPECT_EQ(to_string(parse_rational("0/7")), "0/1");
  EXPECT_THROW(parse_rational("1/0"), ParseError);
  EXPECT_THROW(parse_rational("1/-2"), ParseError);
  EXPECT_THROW(parse_rational("abc"), ParseError);
  EXPECT_THROW(parse_rational(""), ParseError);
  EXPECT_THROW(parse_rational(" 1"), ParseError);
}

TEST(Rational, DecimalFormatting) {
  EXPECT_EQ(format_decimal(1.0), "1.0");
  EXPECT_EQ(format_decimal(0.0), "0.0");
  EXPECT_EQ(format_decimal(0.5), "0.5");
  EXPECT_EQ(format_decimal(-0.25), "-0.25");
}

TEST(Rational, ToDoubleRoundsToNearest) {
  EXPECT_EQ(to_double(Rational(1, 10)), 0.1);
  EXPECT_EQ(to_double(Rational(-1, 3)), -1.0 / 3.0);
  EXPECT_EQ(to_double(Rational(2, 3)), 2.0 / 3.0);
  EXPECT_EQ(to_double(Rational(0)), 0.0);
  EXPECT_EQ(to_double(Rational(mpz_class(1) << 80)), std::ldexp(1.0, 80));
}

TEST(FinVec, StoresNoZeros) {
  auto v = FinVec::from_entries({{3, Rational(1)}, {3, Rational(-1)}, {5, Rational(0)}});
  EXPECT_TRUE(v.is_zero());
  auto w = FinVec::from_entries({{7, Rational(2)}, {1, Rational(1)}, {7, Rational(1)}});
  ASSERT_EQ(w.support_size(), 2u);
  EXPECT_EQ(w.entries()[0].first, 1u);
  EXPECT_EQ(w.coeff(7), Rational(3));
  EXPECT_EQ(w.coeff(4), Rational(0));
  EXPECT_TRUE((w - w).is_zero());
}

TEST(Inner, Examples) {
  EXPECT_EQ(inner(FinVec::basis(0), FinVec::basis(0)), 1);
  EXPECT_EQ(inner(FinVec::basis(0), FinVec::basis(1)), 0);
  EXPECT_EQ(inner(vec({{3, 2}, {5, 1}}), vec({{5, 1}, {3, -1}})), -1);
}

TEST(Inner, PairExamples) {
  const PairVec e0_top{FinVec::basis(0), {}};
  const PairVec e0_bottom{{}, FinVec::basis(0)};
  EXPECT_EQ(inner_pair(e0_top, e0_top), 1);
  EXPECT_EQ(inner_pair(e0_bottom, e0_top), 0);
  const PairVec mixed{FinVec::basis(1), FinVec::basis(2)};
  EXPECT_EQ(inner_pair(mixed, mixed), 2);
  EXPECT_THROW(inner(Vector{FinVec::basis(0)}, Vector{e0_top}), DomainError);
}

TEST(NormSq, Examples) {
  EXPECT_EQ(norm_sq(FinVec{}), 0);
  EXPECT_EQ(norm_sq(FinVec::basis(7)), 1);
  EXPECT_EQ(norm_sq(vec({{0, 3}, {1, 4}})), 25);
}

TEST(Inner, SymmetricBilinearParallelogram) {
  Rng rng(11);
  for (int trial = 0; trial < 300; ++trial) {
    auto u = orbitlab::testing::random_finvec(rng, 6, 12);
    auto v = orbitlab::testing::random_finvec(rng, 6, 12);
    auto w = orbitlab::testing::random_finvec(rng, 6, 12);
    auto a = orbitlab::testing::random_rational(rng);
    EXPECT_EQ(inner(u, v), inner(v, u));
    EXPECT_EQ(inner(a * u + w, v), a * inner(u, v) + inner(w, v));
    EXPECT_EQ(norm_sq(u + v) + norm_sq(u - v), 2 * norm_sq(u) + 2 * norm_sq(v));
    EXPECT_EQ(sgn(norm_sq(u)) == 0, u.is_zero());
  }
}

TEST(GeometricSet, Enumerates) {
  EXPECT_EQ(make_geometric_set(3, 100).enumerate(100), (std::vector<Index>{1, 3, 9, 27, 81}));
  EXPECT_EQ(make_geometric_set(5, 30).enumerate(30), (std::vector<Index>{1, 5, 25}));
  // enumeration past the eager bound extends lazily
  EXPECT_EQ(make_geometric_set(3, 10).enumerate(300).back(), 243u);
}

TEST(GeometricSet, RejectsBaseTwo) {
  try {
    make_geometric_set(2, 100);
    FAIL() << "base 2 accepted";
  } catch (const DoublingViolation& e) {
    EXPECT_NE(std::string(e.what()).find("doubling"), std::string::npos);
  }
  EXPECT_THROW(make_geometric_set(1, 100), DoublingViolation);
}

TEST(SparseIndexSet, ListValidation) {
  EXPECT_NO_THROW(SparseIndexSet::from_list({1, 3, 7, 15}));
  EXPECT_THROW(SparseIndexSet::from_list({1, 2}), DoublingViolation);
  EXPECT_THROW(SparseIndexSet::from_list({0, 3}), DoublingViolation);
  EXPECT_THROW(SparseIndexSet::from_list({5, 3}), DoublingViolation);
  SparseIndexSet bad_generator([](std::optional<Index> p) -> std::optional<Index> {
    return p ? *p + 1 : 1;
  }, "consecutive");
  EXPECT_THROW(bad_generator.enumerate(10), DoublingViolation);
}

TEST(SparseIndexSet, DoublingOnPrefixes) {
  for (Index base : {3u, 4u, 5u, 7u, 10u}) {
    auto members = make_geometric_set(base, 1'000'000).enumerate(1'000'000'000'000);
    for (std::size_t i = 1; i < members.size(); ++i) EXPECT_LT(2 * members[i - 1], members[i]);
  }
}

TEST(JInterval, Examples) {
  auto j3 = make_geometric_set(3, 1000);
  EXPECT_EQ(j_interval(j3, 0, 2), Index{1});
  EXPECT_EQ(j_interval(j3, 5, 1), std::nullopt);
  EXPECT_EQ(j_interval(j3, 0, 18), Index{9});
}

TEST(JInterval, AgreesWithBruteForce) {
  for (Index base : {3u, 5u}) {
    auto set = make_geometric_set(base, 100000);
    const auto members = set.enumerate(100000);
    for (Index k = 0; k <= 200; ++k) {
      for (Index n = 0; n <= 200; ++n) {
        auto expected = orbitlab::testing::brute_force_j_interval(members, k, n);
        ASSERT_LE(expected.size(), 1u);
        auto got = j_interval(set, k, n);
        if (expected.empty()) {
          EXPECT_FALSE(got) << k << "," << n;
        } else {
          EXPECT_EQ(got, expected.front()) << k << "," << n;
        }
      }
    }
  }
}

TEST(JInterval, CorruptSetTripsAssertion) {
  auto corrupt = SparseIndexSet::from_list_unchecked({4, 5});
  EXPECT_THROW(j_interval(corrupt, 4, 4), CorruptIndexSet);
}

TEST(SparseIndexSet, ConcurrentLazyExtension) {
  auto set = make_geometric_set(3, 1);
  std::vector<std::thread> threads;
  std::vector<std::size_t> counts(8);
  for (std::size_t t = 0; t < counts.size(); ++t) {
    threads.emplace_back([&, t] {
      std::size_t c = 0;
      for (Index i = 0; i < 5000; ++i) c += set.contains(i) ? 1 : 0;
      counts[t] = c;
    });
  }
  for (auto& th : threads) th.join();
  for (auto c : counts) EXPECT_EQ(c, 8u);  // 1,3,...,2187
}
