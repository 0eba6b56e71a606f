#include "oaenum/cells.hpp"

namespace oaenum {

namespace {

template <typename T>
std::int64_t index_of(std::span<const T> levels, int s) {
  std::int64_t idx = 0;
  for (T l : levels) {
    if (static_cast<int>(l) < 0 || static_cast<int>(l) >= s)
      throw InvalidInput("cell level out of range");
    idx = idx * s + static_cast<int>(l);
  }
  return idx + 1;
}

}  // namespace

std::int64_t cell_index(std::span<const Level> levels, int s) { return index_of(levels, s); }
std::int64_t cell_index(std::span<const int> levels, int s) { return index_of(levels, s); }

std::vector<Level> cell_levels(std::int64_t index, int s, int k) {
  if (index < 1 || index > ipow(s, k)) throw InvalidInput("cell index out of range");
  std::vector<Level> out(k);
  std::int64_t v = index - 1;
  for (int j = k - 1; j >= 0; --j) {
    out[j] = static_cast<Level>(v % s);
    v /= s;
  }
  return out;
}

Design full_factorial(int s, int k) {
  const auto n = ipow(s, k);
  Design d(static_cast<int>(n), k, s);
  for (std::int64_t c = 0; c < n; ++c) {
    auto l = cell_levels(c + 1, s, k);
    for (int j = 0; j < k; ++j) d.set(static_cast<int>(c), j, l[j]);
  }
  return d;
}

std::vector<int> frequency_vector(const Design& d) {
  std::vector<int> f(static_cast<std::size_t>(ipow(d.levels(), d.factors())), 0);
  for (int i = 0; i < d.runs(); ++i) ++f[cell_index(d.row(i), d.levels()) - 1];
  return f;
}

Design design_from_frequencies(std::span<const int> counts, int s, int k) {
  if (static_cast<std::int64_t>(counts.size()) != ipow(s, k))
    throw InvalidInput("frequency vector length must be s^k");
  int n = 0;
  for (int c : counts) {
    if (c < 0) throw InvalidInput("negative frequency");
    n += c;
  }
  Design d(n, k, s);
  int row = 0;
  for (std::size_t c = 0; c < counts.size(); ++c) {
    auto l = cell_levels(static_cast<std::int64_t>(c) + 1, s, k);
    for (int rep = 0; rep < counts[c]; ++rep, ++row)
      for (int j = 0; j < k; ++j) d.set(row, j, l[j]);
  }
  return d;
}

}  // namespace oaenum
