#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <random>

#include "oaenum/cells.hpp"
#include "oaenum/design.hpp"

using namespace oaenum;

namespace {

Design random_design(std::mt19937& rng, int n, int k, int s) {
  std::uniform_int_distribution<int> lv(0, s - 1);
  Design d(n, k, s);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < k; ++j) d.set(i, j, lv(rng));
  return d;
}

Design half_fraction() { return Design(2, {{0, 0, 0}, {0, 1, 1}, {1, 0, 1}, {1, 1, 0}}); }

// Independent strength check: enumerate every t-subset via bitmasks and
// count every level combination by scanning.
bool naive_strength(const Design& d, int t) {
  const int k = d.factors(), s = d.levels();
  if (d.runs() % ipow(s, t) != 0) return false;
  const int lambda = d.runs() / static_cast<int>(ipow(s, t));
  for (int mask = 0; mask < (1 << k); ++mask) {
    if (std::popcount(static_cast<unsigned>(mask)) != t) continue;
    std::vector<int> cols;
    for (int j = 0; j < k; ++j)
      if (mask >> j & 1) cols.push_back(j);
    for (std::int64_t combo = 0; combo < ipow(s, t); ++combo) {
      std::vector<int> want(t);
      std::int64_t c = combo;
      for (int q = t - 1; q >= 0; --q, c /= s) want[q] = static_cast<int>(c % s);
      int hits = 0;
      for (int i = 0; i < d.runs(); ++i) {
        bool ok = true;
        for (int q = 0; q < t; ++q) ok = ok && d(i, cols[q]) == want[q];
        hits += ok;
      }
      if (hits != lambda) return false;
    }
  }
  return true;
}

}  // namespace

TEST(Design, RejectsOutOfRangeLevels) {
  EXPECT_THROW(Design(2, {{0, 2}}), InvalidInput);
  EXPECT_THROW(Design(2, {{0, 1}, {1}}), InvalidInput);
  Design d(2, 2, 2);
  EXPECT_THROW(d.set(0, 0, 2), InvalidInput);
}

TEST(Indicator, TwoLevelColumn) {
  const auto m = expand_indicator(Design(2, {{0}, {1}}));
  ASSERT_EQ(m.width(), 1);
  EXPECT_EQ(m(0, 0), 1);
  EXPECT_EQ(m(1, 0), 0);
}

TEST(Indicator, TopLevelHasNoFlag) {
  const auto m = expand_indicator(Design(3, {{2}}));
  ASSERT_EQ(m.width(), 2);
  EXPECT_EQ(m(0, 0), 0);
  EXPECT_EQ(m(0, 1), 0);
}

TEST(Indicator, ThreeLevelColumn) {
  const auto m = expand_indicator(Design(3, {{0}, {1}, {2}}));
  EXPECT_EQ(m.entries, (std::vector<std::uint8_t>{1, 0, 0, 1, 0, 0}));
}

TEST(Indicator, CorrespondingDesign) {
  IndicatorMatrix m{2, 1, 2, {1, 0}};
  EXPECT_EQ(corresponding_design(m), Design(2, {{0}, {1}}));
  IndicatorMatrix top{1, 1, 3, {0, 0}};
  EXPECT_EQ(corresponding_design(top), Design(3, {{2}}));
  IndicatorMatrix bad{1, 1, 3, {1, 1}};
  EXPECT_THROW(corresponding_design(bad), InvalidInput);
}

TEST(Indicator, RoundTripRandom) {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    const int s = 2 + trial % 3;
    const Design d = random_design(rng, 1 + trial % 9, trial % 5, s);
    EXPECT_EQ(corresponding_design(expand_indicator(d)), d);
  }
}

TEST(Strength, Examples) {
  Design ff(2, {{0, 0, 0}, {0, 0, 1}, {0, 1, 0}, {0, 1, 1}, {1, 0, 0}, {1, 0, 1}, {1, 1, 0}, {1, 1, 1}});
  EXPECT_TRUE(verify_strength(ff, 3));
  Design same(2, {{1, 0}, {1, 0}, {1, 0}, {1, 0}});
  EXPECT_FALSE(verify_strength(same, 1));
  EXPECT_TRUE(verify_strength(half_fraction(), 2));
  EXPECT_FALSE(verify_strength(half_fraction(), 3));
  EXPECT_EQ(max_strength(half_fraction()), 2);
  EXPECT_THROW(verify_strength(half_fraction(), 4), InvalidInput);
  EXPECT_FALSE(verify_strength(Design(2, {{0}, {1}, {0}}), 1));  // 2 does not divide 3
}

TEST(Strength, MatchesNaiveCount) {
  std::mt19937 rng(11);
  // Bias towards balanced designs: start from a full factorial and perturb.
  for (int trial = 0; trial < 300; ++trial) {
    const int s = 2 + trial % 2, k = 1 + trial % 4;
    Design d = full_factorial(s, k);
    if (trial % 3 == 0) d = random_design(rng, d.runs(), k, s);
    if (trial % 3 == 1) d.set(rng() % d.runs(), rng() % k, rng() % s);
    for (int t = 0; t <= k; ++t) {
      const bool v = verify_strength(d, t);
      EXPECT_EQ(v, naive_strength(d, t));
      if (v)
        for (int lower = 0; lower < t; ++lower) EXPECT_TRUE(verify_strength(d, lower));
    }
  }
}

TEST(Strength, InvariantUnderIsomorphisms) {
  std::mt19937 rng(3);
  Design d = half_fraction();
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<int> rows(d.runs()), cols(d.factors());
    std::iota(rows.begin(), rows.end(), 0);
    std::iota(cols.begin(), cols.end(), 0);
    std::shuffle(rows.begin(), rows.end(), rng);
    std::shuffle(cols.begin(), cols.end(), rng);
    Design e = d.permute_rows(rows).select_columns(cols);
    const int flip = rng() % d.factors();
    for (int i = 0; i < e.runs(); ++i) e.set(i, flip, 1 - e(i, flip));
    EXPECT_EQ(max_strength(e), max_strength(d));
  }
}

TEST(RunProfile, Examples) {
  const RunProfile a = run_profile(Design(2, {{0, 0}, {0, 0}}));
  EXPECT_EQ(a.distinct, 1);
  EXPECT_EQ(a.multiplicity, std::vector<int>{2});
  EXPECT_EQ(a.first_row, std::vector<int>{1});
  EXPECT_EQ(a.cell, std::vector<std::int64_t>{1});

  const RunProfile b = run_profile(full_factorial(2, 2));
  EXPECT_EQ(b.distinct, 4);
  EXPECT_EQ(b.multiplicity, (std::vector<int>{1, 1, 1, 1}));
  EXPECT_EQ(b.first_row, (std::vector<int>{1, 2, 3, 4}));
  EXPECT_EQ(b.cell, (std::vector<std::int64_t>{1, 2, 3, 4}));

  const RunProfile c = run_profile(Design(2, {{1, 1}, {0, 1}, {1, 1}, {0, 0}}));
  EXPECT_EQ(c.multiplicity, (std::vector<int>{1, 1, 2}));
  EXPECT_EQ(c.first_row, (std::vector<int>{1, 2, 3}));
  EXPECT_EQ(c.cell, (std::vector<std::int64_t>{1, 2, 4}));
}

TEST(LexSort, Examples) {
  EXPECT_EQ(lex_sort_rows(Design(2, {{1, 0}, {0, 1}})), Design(2, {{0, 1}, {1, 0}}));
  const Design ff = full_factorial(3, 2);
  EXPECT_EQ(lex_sort_rows(ff), ff);
  std::mt19937 rng(5);
  for (int trial = 0; trial < 30; ++trial) {
    Design d = random_design(rng, 9, 3, 2);
    std::vector<int> order(9);
    std::iota(order.begin(), order.end(), 0);
    std::shuffle(order.begin(), order.end(), rng);
    EXPECT_EQ(run_profile(d), run_profile(d.permute_rows(order)));
  }
}

TEST(Signed, RoundTrip) {
  const SignedDesign sd = to_signed(Design(2, {{0}, {1}}));
  EXPECT_EQ(sd.entries, (std::vector<std::int8_t>{1, -1}));
  EXPECT_EQ(to_signed(Design(2, {{0}, {0}})).entries, (std::vector<std::int8_t>{1, 1}));
  std::mt19937 rng(1);
  const Design d = random_design(rng, 6, 4, 2);
  EXPECT_EQ(from_signed(to_signed(d)), d);
  EXPECT_THROW(to_signed(Design(3, {{2}})), InvalidInput);
  const SignedDesign with = prepend_ones(sd);
  EXPECT_EQ(with.factors, 2);
  EXPECT_EQ(with.entries, (std::vector<std::int8_t>{1, 1, 1, -1}));
}

TEST(Oad, RoundTripAndErrors) {
  const Design d = half_fraction();
  EXPECT_EQ(parse_oad(to_oad(d)), d);
  EXPECT_THROW(parse_oad("2 2 2\n0 1\n"), InvalidInput);
  EXPECT_THROW(parse_oad("1 2 2\n0 3\n"), InvalidInput);
  EXPECT_THROW(parse_oad("1 2\n"), InvalidInput);
  EXPECT_THROW(parse_oad("1 1 2\n0 1\n"), InvalidInput);
}

TEST(Cells, IndexExamples) {
  EXPECT_EQ(cell_index(std::vector<int>{0, 0, 0}, 2), 1);
  EXPECT_EQ(cell_index(std::vector<int>{1, 1, 1}, 2), 8);
  EXPECT_EQ(cell_index(std::vector<int>{1, 2}, 3), 6);
  EXPECT_THROW(cell_index(std::vector<int>{0, 3}, 3), InvalidInput);
  for (std::int64_t c = 1; c <= 27; ++c) EXPECT_EQ(cell_index(cell_levels(c, 3, 3), 3), c);
}

TEST(Cells, FrequencyRoundTrip) {
  std::mt19937 rng(9);
  for (int trial = 0; trial < 50; ++trial) {
    const Design d = random_design(rng, 12, 3, 2 + trial % 2);
    const auto f = frequency_vector(d);
    EXPECT_EQ(design_from_frequencies(f, d.levels(), 3), lex_sort_rows(d));
  }
}
