#include "oaenum/gwp.hpp"

#include <algorithm>
#include <bit>

namespace oaenum {

std::int64_t j_characteristic(const SignedDesign& sd, std::span<const int> columns) {
  if (columns.empty()) throw InvalidInput("J-characteristic needs a non-empty column subset");
  for (int c : columns)
    if (c < 0 || c >= sd.factors) throw InvalidInput("column out of range");
  std::int64_t sum = 0;
  for (int i = 0; i < sd.runs; ++i) {
    int p = 1;
    for (int c : columns) p *= sd(i, c);
    sum += p;
  }
  return sum;
}

Gwp gwp_two_level(const SignedDesign& sd) {
  const int k = sd.factors;
  if (k > 20) throw InvalidInput("subset enumeration limited to k <= 20");
  std::vector<boost::multiprecision::cpp_int> sums(k + 1);
  std::vector<int> product(sd.runs, 1);
  // Gray-code walk: each step toggles one column into or out of the product.
  const std::uint32_t total = 1u << k;
  for (std::uint32_t step = 1; step < total; ++step) {
    const int col = std::countr_zero(step);
    for (int i = 0; i < sd.runs; ++i) product[i] *= sd(i, col);
    const std::uint32_t gray = step ^ (step >> 1);
    std::int64_t j = 0;
    for (int v : product) j += v;
    sums[std::popcount(gray)] += j * j;
  }
  Gwp out;
  out.a.resize(k + 1);
  out.a[0] = 1;
  const std::int64_t n2 = static_cast<std::int64_t>(sd.runs) * sd.runs;
  for (int r = 1; r <= k; ++r) out.a[r] = Rational(sums[r], n2);
  return out;
}

DistanceDistribution distance_distribution(const Design& d) {
  const int k = d.factors();
  const Design sorted = lex_sort_rows(d);
  const RunProfile p = run_profile(sorted);
  std::vector<std::int64_t> pairs(k + 1, 0);
  for (int a = 0; a < p.distinct; ++a) {
    auto ra = sorted.row(p.first_row[a] - 1);
    pairs[0] += static_cast<std::int64_t>(p.multiplicity[a]) * p.multiplicity[a];
    for (int b = a + 1; b < p.distinct; ++b) {
      auto rb = sorted.row(p.first_row[b] - 1);
      int dist = 0;
      for (int j = 0; j < k; ++j) dist += ra[j] != rb[j];
      pairs[dist] += 2 * static_cast<std::int64_t>(p.multiplicity[a]) * p.multiplicity[b];
    }
  }
  DistanceDistribution out;
  out.b.reserve(k + 1);
  for (auto c : pairs) out.b.emplace_back(c, d.runs() == 0 ? 1 : d.runs());
  return out;
}

std::int64_t krawtchouk(int j, int x, int s, int k) {
  if (j < 0 || j > k || x < 0 || x > k) throw InvalidInput("Krawtchouk index outside [0, k]");
  // table[jj][xx] for jj <= j, xx <= x
  std::vector<std::vector<std::int64_t>> table(j + 1, std::vector<std::int64_t>(x + 1));
  std::int64_t binom = 1;  // C(k, jj)
  for (int jj = 0; jj <= j; ++jj) {
    if (jj > 0) binom = binom * (k - jj + 1) / jj;
    table[jj][0] = ipow(s - 1, jj) * binom;
  }
  for (int xx = 0; xx <= x; ++xx) table[0][xx] = 1;
  for (int jj = 1; jj <= j; ++jj)
    for (int xx = 1; xx <= x; ++xx)
      table[jj][xx] = table[jj][xx - 1] - table[jj - 1][xx - 1] - (s - 1) * table[jj - 1][xx];
  return table[j][x];
}

Gwp gwp_from_distance(const DistanceDistribution& b, int runs, int s) {
  const int k = b.factors();
  if (runs <= 0) throw InvalidInput("run count must be positive");
  Gwp out;
  out.a.resize(k + 1);
  for (int j = 0; j <= k; ++j) {
    Rational sum = 0;
    for (int i = 0; i <= k; ++i) sum += krawtchouk(j, i, s, k) * b.b[i];
    out.a[j] = sum / runs;
  }
  return out;
}

DistanceDistribution distance_from_gwp(const Gwp& a, int runs, int s, int k) {
  if (a.factors() != k) throw InvalidInput("GWP length does not match k");
  DistanceDistribution out;
  out.b.resize(k + 1);
  const Rational scale(runs, ipow(s, k));
  for (int j = 0; j <= k; ++j) {
    Rational sum = 0;
    for (int i = 0; i <= k; ++i) sum += krawtchouk(j, i, s, k) * a.a[i];
    out.b[j] = scale * sum;
  }
  return out;
}

Gwp gwp(const Design& d) {
  if (d.levels() == 2 && d.factors() <= 20) return gwp_two_level(to_signed(d));
  return gwp_from_distance(distance_distribution(d), d.runs(), d.levels());
}

int strength_from_gwp(const Gwp& a) {
  int t = 0;
  while (t < a.factors() && a.a[t + 1] == 0) ++t;
  return t;
}

std::strong_ordering gma_compare(const Gwp& lhs, const Gwp& rhs) {
  if (lhs.a.size() != rhs.a.size()) throw InvalidInput("GWP lengths differ");
  for (std::size_t r = 1; r < lhs.a.size(); ++r) {
    if (lhs.a[r] < rhs.a[r]) return std::strong_ordering::less;
    if (lhs.a[r] > rhs.a[r]) return std::strong_ordering::greater;
  }
  return std::strong_ordering::equal;
}

std::vector<std::size_t> select_gma(std::span<const Gwp> patterns) {
  std::vector<std::size_t> best;
  for (std::size_t i = 0; i < patterns.size(); ++i) {
    if (best.empty()) {
      best.push_back(i);
      continue;
    }
    auto c = gma_compare(patterns[i], patterns[best.front()]);
    if (c == std::strong_ordering::less) best.assign(1, i);
    else if (c == std::strong_ordering::equal) best.push_back(i);
  }
  return best;
}

std::vector<std::size_t> select_weak_gma(std::span<const Gwp> patterns) {
  if (patterns.empty()) return {};
  const std::size_t len = patterns.front().a.size();
  for (const auto& p : patterns)
    if (p.a.size() != len) throw InvalidInput("GWP lengths differ");
  for (std::size_t r = 1; r < len; ++r) {
    bool any = std::any_of(patterns.begin(), patterns.end(), [&](const Gwp& p) { return p.a[r] != 0; });
    if (!any) continue;
    Rational lo = patterns.front().a[r];
    for (const auto& p : patterns) lo = std::min(lo, p.a[r]);
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < patterns.size(); ++i)
      if (patterns[i].a[r] == lo) out.push_back(i);
    return out;
  }
  std::vector<std::size_t> all(patterns.size());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
  return all;
}

std::string format_decimal(const Rational& value, int places) {
  using boost::multiprecision::cpp_int;
  const cpp_int scale = boost::multiprecision::pow(cpp_int(10), places);
  const Rational scaled = value * scale;
  const cpp_int num = boost::multiprecision::numerator(scaled);
  const cpp_int den = boost::multiprecision::denominator(scaled);
  const bool negative = num < 0;
  const cpp_int mag = negative ? cpp_int(-num) : num;
  cpp_int q = mag / den;
  const cpp_int rem2 = 2 * (mag % den);
  if (rem2 > den || (rem2 == den && (q & 1) != 0)) ++q;
  std::string digits = q.str();
  if (places > 0) {
    if (static_cast<int>(digits.size()) <= places)
      digits.insert(0, static_cast<std::size_t>(places + 1 - digits.size()), '0');
    digits.insert(digits.size() - places, ".");
  }
  return (negative && q != 0 ? "-" : "") + digits;
}

}  // namespace oaenum
