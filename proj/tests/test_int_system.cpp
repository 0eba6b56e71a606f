#include <gtest/gtest.h>

#include <algorithm>
#include <random>
#include <set>

#include "oaenum/formulations.hpp"
#include "oaenum/int_system.hpp"

using namespace oaenum;

namespace {

using Vec = std::vector<int>;

IntEqSystem binary_pair(std::int64_t rhs) {
  IntEqSystem sys(2, 0, 1);
  sys.add_row({{0, 1}, {1, 1}}, RowRelation::eq, rhs);
  return sys;
}

bool row_holds(const ConstraintRow& row, const Vec& x) {
  std::int64_t lhs = 0;
  for (const auto& t : row.terms) lhs += t.coef * x[t.var];
  switch (row.rel) {
    case RowRelation::eq: return lhs == row.rhs;
    case RowRelation::le: return lhs <= row.rhs;
    case RowRelation::ge: return lhs >= row.rhs;
  }
  return false;
}

// Every vector of the bounding box that satisfies all rows, in lex order.
std::vector<Vec> brute_force(const IntEqSystem& sys) {
  std::vector<Vec> out;
  Vec x = sys.lower_bounds();
  const int n = sys.variables();
  while (true) {
    if (std::ranges::all_of(sys.rows(), [&](const auto& r) { return row_holds(r, x); }))
      out.push_back(x);
    int v = n - 1;
    while (v >= 0 && x[v] == sys.upper(v)) {
      x[v] = sys.lower(v);
      --v;
    }
    if (v < 0) break;
    ++x[v];
  }
  return out;
}

std::set<Vec> as_set(const std::vector<Vec>& v) { return {v.begin(), v.end()}; }

IntEqSystem random_system(std::mt19937& rng, int n, int hi, int rows) {
  IntEqSystem sys(n, 0, hi);
  std::uniform_int_distribution<int> var(0, n - 1), coef(-2, 3), rel(0, 2), len(2, std::min(n, 6));
  for (int r = 0; r < rows; ++r) {
    std::vector<Term> terms;
    const int m = len(rng);
    std::int64_t rhs = 0;
    for (int i = 0; i < m; ++i) {
      const int v = var(rng), c = coef(rng);
      terms.push_back({v, c});
      rhs += c * std::uniform_int_distribution<int>(0, hi)(rng);
    }
    sys.add_row(std::move(terms), static_cast<RowRelation>(rel(rng)), rhs);
  }
  return sys;
}

// Adds `terms` and all of its images under the group elements.
void add_closed_row(IntEqSystem& sys, const std::vector<Permutation>& elements,
                    const std::vector<Term>& terms, RowRelation rel, std::int64_t rhs) {
  std::set<std::vector<Term>> seen;
  for (const auto& g : elements) {
    std::vector<Term> image;
    for (const auto& t : terms) image.push_back({g(t.var), t.coef});
    std::ranges::sort(image);
    if (seen.insert(image).second) sys.add_row(image, rel, rhs);
  }
}

std::set<Vec> orbit_of(const Vec& x, const std::vector<Permutation>& elements) {
  std::set<Vec> out;
  for (const auto& g : elements) out.insert(g.apply(std::span<const int>(x)));
  return out;
}

void check_orbit_pruning(const IntEqSystem& sys, LexOrder order) {
  const auto& group = sys.symmetry()->group;
  const auto elements = group.element_list();
  const auto all = as_set(enumerate_solutions(sys, Pruning::off));
  const auto reps = enumerate_solutions(sys, Pruning::orbit);
  std::set<Vec> covered;
  for (const auto& x : reps) {
    const auto orb = orbit_of(x, elements);
    EXPECT_EQ(order == LexOrder::min ? *orb.begin() : *orb.rbegin(), x);
    for (const auto& y : orb) EXPECT_TRUE(covered.insert(y).second) << "two reps share an orbit";
  }
  EXPECT_EQ(covered, all);
}

}  // namespace

TEST(Propagate, FixedVariableForcesPartner) {
  const auto sys = binary_pair(1);
  auto d = propagate(sys, Domains{{1, 0}, {1, 1}});
  ASSERT_TRUE(d);
  EXPECT_EQ(d->lo, (Vec{1, 0}));
  EXPECT_EQ(d->hi, (Vec{1, 0}));
}

TEST(Propagate, DetectsInfeasibleSum) { EXPECT_FALSE(propagate(binary_pair(3))); }

TEST(Propagate, FullFormulationForcesUniqueCompletion) {
  const auto f = build_full_formulation(4, 3, 2, 2);
  Domains start{f.system.lower_bounds(), f.system.upper_bounds()};
  start.lo[0] = start.hi[0] = 1;
  const auto d = propagate(f.system, start);
  ASSERT_TRUE(d);
  // 1-based cells 1, 4, 6, 7 hold one run each.
  EXPECT_EQ(d->lo, (Vec{1, 0, 0, 1, 0, 1, 1, 0}));
  EXPECT_EQ(d->hi, d->lo);
}

TEST(Propagate, NegativeCoefficients) {
  IntEqSystem sys(2, 0, 3);
  sys.add_row({{0, 1}, {1, -1}}, RowRelation::ge, 2);  // x0 - x1 >= 2
  const auto d = propagate(sys);
  ASSERT_TRUE(d);
  EXPECT_EQ(d->lo, (Vec{2, 0}));
  EXPECT_EQ(d->hi, (Vec{3, 1}));
}

TEST(Enumerate, BinaryPairWithoutPruning) {
  EXPECT_EQ(as_set(enumerate_solutions(binary_pair(1), Pruning::off)), (std::set<Vec>{{1, 0}, {0, 1}}));
}

TEST(Enumerate, SwapGroupKeepsLexMin) {
  auto sys = binary_pair(1);
  sys.set_symmetry(PermGroup(2, {Permutation({1, 0})}), LexOrder::min);
  EXPECT_EQ(enumerate_solutions(sys, Pruning::orbit), (std::vector<Vec>{{0, 1}}));
  sys.set_symmetry(PermGroup(2, {Permutation({1, 0})}), LexOrder::max);
  EXPECT_EQ(enumerate_solutions(sys, Pruning::orbit), (std::vector<Vec>{{1, 0}}));
}

TEST(Enumerate, OrbitPruningNeedsGroup) {
  EXPECT_THROW(enumerate_solutions(binary_pair(1), Pruning::orbit), InvalidInput);
}

TEST(Enumerate, FullFormulationHasOneSolution) {
  const auto f = build_full_formulation(4, 3, 2, 2);
  const auto sols = enumerate_solutions(f.system, Pruning::off);
  ASSERT_EQ(sols.size(), 1u);
  EXPECT_EQ(sols[0], (Vec{1, 0, 0, 1, 0, 1, 1, 0}));
  EXPECT_EQ(as_set(sols), as_set(brute_force(f.system)));
}

TEST(Enumerate, CallbackStopsSearch) {
  IntEqSystem sys(4, 0, 1);
  int seen = 0;
  const auto stats = for_each_solution(sys, Pruning::off, [&](std::span<const int>) { return ++seen < 3; });
  EXPECT_EQ(seen, 3);
  EXPECT_EQ(stats.solutions, 3u);
}

TEST(Enumerate, NoRowsEnumeratesBox) {
  IntEqSystem sys(3, 0, 2);
  EXPECT_EQ(count_solutions(sys), 27u);
}

TEST(Count, Examples) {
  EXPECT_EQ(count_solutions(binary_pair(3)), 0u);
  EXPECT_EQ(count_solutions(binary_pair(1)), 2u);
}

TEST(Enumerate, CompleteAndSoundOnRandomSystems) {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 60; ++trial) {
    const int hi = 1 + trial % 3;
    const int n = hi == 1 ? 12 + trial % 9 : hi == 2 ? 9 : 7;
    const auto sys = random_system(rng, n, hi, 1 + trial % 4);
    const auto got = enumerate_solutions(sys, Pruning::off);
    for (const auto& x : got) EXPECT_TRUE(sys.satisfied_by(x));
    EXPECT_EQ(as_set(got).size(), got.size()) << "duplicate emission";
    EXPECT_EQ(as_set(got), as_set(brute_force(sys))) << sys.dump();
  }
}

TEST(Enumerate, TwentyBinaryVariables) {
  std::mt19937 rng(5);
  const auto sys = random_system(rng, 20, 1, 3);
  EXPECT_EQ(as_set(enumerate_solutions(sys, Pruning::off)), as_set(brute_force(sys)));
}

TEST(Enumerate, BoundsThreeOnSixVariables) {
  std::mt19937 rng(8);
  for (int trial = 0; trial < 20; ++trial) {
    const auto sys = random_system(rng, 6, 3, 2);
    EXPECT_EQ(as_set(enumerate_solutions(sys, Pruning::off)), as_set(brute_force(sys)));
  }
}

TEST(Enumerate, DeterministicOrder) {
  std::mt19937 rng(3);
  const auto sys = random_system(rng, 10, 2, 2);
  EXPECT_EQ(enumerate_solutions(sys, Pruning::off), enumerate_solutions(sys, Pruning::off));
}

TEST(Enumerate, OrbitPruningOnSymmetricSystems) {
  std::mt19937 rng(21);
  const std::vector<PermGroup> groups = {
      PermGroup(6, {Permutation({1, 2, 3, 4, 5, 0})}),                                   // C6
      PermGroup(6, {Permutation({1, 0, 2, 3, 4, 5}), Permutation({1, 2, 3, 4, 5, 0})}),  // S6
      PermGroup(6, {Permutation({1, 0, 3, 2, 5, 4}), Permutation({2, 3, 4, 5, 0, 1})}),  // pairs
      full_group(2, 3),
  };
  for (const auto& g : groups) {
    const auto elements = g.element_list();
    for (int trial = 0; trial < 6; ++trial) {
      const int n = g.degree();
      IntEqSystem sys(n, 0, n > 6 ? 1 : 2);
      std::uniform_int_distribution<int> var(0, n - 1), coef(1, 2);
      for (int r = 0; r < 2; ++r) {
        std::vector<Term> terms;
        for (int i = 0; i < 3; ++i) terms.push_back({var(rng), coef(rng)});
        add_closed_row(sys, elements, terms, r == 0 ? RowRelation::le : RowRelation::ge, 2 + trial % 3);
      }
      for (auto order : {LexOrder::min, LexOrder::max}) {
        sys.set_symmetry(g, order);
        check_orbit_pruning(sys, order);
      }
    }
  }
}

TEST(Enumerate, OrbitPruningOnFullFormulation) {
  const auto f = build_full_formulation(8, 4, 2, 2);
  IntEqSystem sys = f.system;
  sys.set_bounds(0, 0, sys.upper(0));
  sys.set_symmetry(sys.symmetry()->group, LexOrder::max);
  check_orbit_pruning(sys, LexOrder::max);
}

TEST(IntEqSystem, AddRowMergesTerms) {
  IntEqSystem sys(3, 0, 1);
  sys.add_row({{2, 1}, {0, 1}, {2, 2}, {1, 0}}, RowRelation::le, 2);
  EXPECT_EQ(sys.rows()[0].terms, (std::vector<Term>{{0, 1}, {2, 3}}));
}

TEST(IntEqSystem, RejectsBadBounds) {
  EXPECT_THROW(IntEqSystem(2, 1, 0), InvalidInput);
  IntEqSystem sys(2, 0, 1);
  EXPECT_THROW(sys.set_bounds(0, 2, 1), InvalidInput);
  EXPECT_THROW(sys.add_row({{5, 1}}, RowRelation::eq, 0), InvalidInput);
}

TEST(IntEqSystem, RejectsNonSymmetry) {
  IntEqSystem sys(3, 0, 1);
  sys.add_row({{0, 1}, {1, 1}}, RowRelation::eq, 1);
  EXPECT_THROW(sys.set_symmetry(PermGroup(3, {Permutation({0, 2, 1})}), LexOrder::min), InvalidInput);
  sys.add_row({{0, 1}, {2, 1}}, RowRelation::eq, 1);
  EXPECT_NO_THROW(sys.set_symmetry(PermGroup(3, {Permutation({0, 2, 1})}), LexOrder::min));
}

TEST(IntEqSystem, InequalityImagesMustBeRows) {
  IntEqSystem sys(2, 0, 3);
  sys.add_row({{0, 1}}, RowRelation::le, 2);
  EXPECT_THROW(sys.set_symmetry(PermGroup(2, {Permutation({1, 0})}), LexOrder::min), InvalidInput);
}

TEST(IntEqSystem, AcceptsImpliedEqualityImages) {
  // x0 + x1 = 1 and x0 + x1 + x2 = 2 imply x2 = 1; swapping 1 and 2 maps the
  // first row to x0 + x2 = 1, which the rows imply but do not list.
  IntEqSystem sys(3, 0, 1);
  sys.add_row({{0, 1}, {1, 1}}, RowRelation::eq, 1);
  sys.add_row({{0, 1}, {1, 1}, {2, 1}}, RowRelation::eq, 2);
  EXPECT_THROW(sys.set_symmetry(PermGroup(3, {Permutation({0, 2, 1})}), LexOrder::min), InvalidInput);
  EXPECT_NO_THROW(sys.set_symmetry(PermGroup(3, {Permutation({1, 0, 2})}), LexOrder::min));
}

TEST(IntEqSystem, DumpParseRoundTrip) {
  std::mt19937 rng(2);
  for (int trial = 0; trial < 10; ++trial) {
    auto sys = random_system(rng, 5 + trial, 2, 3);
    sys.set_bounds(0, 1, 2);
    const auto text = sys.dump();
    const auto back = IntEqSystem::parse(text);
    EXPECT_EQ(back.dump(), text);
    EXPECT_EQ(back.rows(), sys.rows());
    EXPECT_EQ(back.lower_bounds(), sys.lower_bounds());
    EXPECT_EQ(back.upper_bounds(), sys.upper_bounds());
  }
}

TEST(IntEqSystem, DumpParseKeepsSymmetry) {
  const auto f = build_full_formulation(8, 3, 2, 2);
  const auto text = f.system.dump();
  const auto back = IntEqSystem::parse(text);
  EXPECT_EQ(back.dump(), text);
  ASSERT_TRUE(back.symmetry());
  EXPECT_EQ(back.symmetry()->order, LexOrder::max);
  EXPECT_EQ(back.symmetry()->group.order(), f.system.symmetry()->group.order());
}

TEST(IntEqSystem, DumpFormat) {
  auto sys = binary_pair(1);
  sys.add_row({{1, -2}}, RowRelation::ge, -1);
  EXPECT_EQ(sys.dump(), "var 0 0 1\nvar 1 0 1\nrow = 1 1 1\nrow >= -1 0 -2\n");
}

TEST(IntEqSystem, ParseRejectsMalformed) {
  EXPECT_THROW(IntEqSystem::parse("var 0 0\n"), InvalidInput);
  EXPECT_THROW(IntEqSystem::parse("var 1 0 1\n"), InvalidInput);
  EXPECT_THROW(IntEqSystem::parse("var 0 0 1\nrow == 1 1\n"), InvalidInput);
  EXPECT_THROW(IntEqSystem::parse("var 0 0 1\nrow = 1 1 1\n"), InvalidInput);
  EXPECT_THROW(IntEqSystem::parse("bogus\n"), InvalidInput);
}

TEST(Branching, MostConstrainedFirst) {
  IntEqSystem sys(3, 0, 1);
  sys.add_row({{2, 1}, {1, 1}}, RowRelation::le, 1);
  sys.add_row({{2, 1}}, RowRelation::le, 1);
  EXPECT_EQ(branching_order(sys), (Vec{2, 1, 0}));
}

TEST(Pruning, ParseNames) {
  EXPECT_EQ(parse_pruning("off"), Pruning::off);
  EXPECT_EQ(parse_pruning("orbit"), Pruning::orbit);
  EXPECT_THROW(parse_pruning("on"), InvalidInput);
}
