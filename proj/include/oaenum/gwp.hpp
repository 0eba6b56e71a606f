#pragma once

#include <compare>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "oaenum/design.hpp"

namespace oaenum {

using Rational = boost::multiprecision::cpp_rational;

/// Generalized word length pattern (A_0, A_1, ..., A_k), A_0 = 1.
struct Gwp {
  std::vector<Rational> a;

  int factors() const { return static_cast<int>(a.size()) - 1; }
  friend bool operator==(const Gwp&, const Gwp&) = default;
};

/// Distance distribution (B_0, ..., B_k); sums to N.
struct DistanceDistribution {
  std::vector<Rational> b;

  int factors() const { return static_cast<int>(b.size()) - 1; }
  friend bool operator==(const DistanceDistribution&, const DistanceDistribution&) = default;
};

/// Sum over runs of the product of the entries in `columns` (0-based).
std::int64_t j_characteristic(const SignedDesign& sd, std::span<const int> columns);

/// A_r = sum over r-subsets of J_r(l)^2, divided by N^2. Requires k <= 20.
Gwp gwp_two_level(const SignedDesign& sd);

DistanceDistribution distance_distribution(const Design& d);

/// P_j(x; s, k) by the three-term recursion.
std::int64_t krawtchouk(int j, int x, int s, int k);

/// A_j = N^-1 sum_i P_j(i) B_i.
Gwp gwp_from_distance(const DistanceDistribution& b, int runs, int s);
/// B_j = N s^-k sum_i P_j(i) A_i.
DistanceDistribution distance_from_gwp(const Gwp& a, int runs, int s, int k);

/// GWP via the J-characteristic route for small two-level designs, else via
/// the distance distribution.
Gwp gwp(const Design& d);

/// Largest t with A_1 = ... = A_t = 0.
int strength_from_gwp(const Gwp& a);

/// Lexicographic order on (A_1, ..., A_k); "less" is better aberration.
std::strong_ordering gma_compare(const Gwp& lhs, const Gwp& rhs);

/// Indices of all GWPs tied at the lexicographic minimum.
std::vector<std::size_t> select_gma(std::span<const Gwp> patterns);

/// Indices whose first non-zero entry (over the family) matches the minimum.
std::vector<std::size_t> select_weak_gma(std::span<const Gwp> patterns);

/// Decimal rendering with round-half-to-even at `places` digits.
std::string format_decimal(const Rational& value, int places);

}  // namespace oaenum
