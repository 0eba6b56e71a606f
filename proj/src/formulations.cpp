#include "oaenum/formulations.hpp"

#include <algorithm>

#include "oaenum/cells.hpp"

namespace oaenum {

namespace {

// Calls f(columns, levels) for every choice of `size` distinct columns out of
// `k` (ascending) and every level assignment in {0, ..., s-2}^size.
template <typename F>
void for_each_indicator_choice(int k, int size, int s, F&& f) {
  if (size > k) return;
  std::vector<int> cols(size);
  for (int i = 0; i < size; ++i) cols[i] = i;
  std::vector<int> levels(size, 0);
  while (true) {
    std::fill(levels.begin(), levels.end(), 0);
    while (true) {
      f(std::span<const int>(cols), std::span<const int>(levels));
      int p = size - 1;
      while (p >= 0 && levels[p] == s - 2) levels[p--] = 0;
      if (p < 0) break;
      ++levels[p];
    }
    int p = size - 1;
    while (p >= 0 && cols[p] == k - size + p) --p;
    if (p < 0) break;
    ++cols[p];
    for (int i = p + 1; i < size; ++i) cols[i] = cols[i - 1] + 1;
  }
}

bool matches(std::span<const Level> row, std::span<const int> cols, std::span<const int> levels) {
  for (std::size_t m = 0; m < cols.size(); ++m)
    if (row[cols[m]] != levels[m]) return false;
  return true;
}

void check_input(const Design& input, int t) {
  if (t < 1) throw InvalidInput("strength must be at least 1");
  if (input.runs() % ipow(input.levels(), t) != 0) throw InvalidInput("s^t must divide N");
  if (input.factors() >= t ? !verify_strength(input, t) : !verify_strength(input, input.factors()))
    throw InvalidInput("input design fails the strength check");
}

}  // namespace

std::string to_string(Formulation f) {
  switch (f) {
    case Formulation::identity: return "identity";
    case Formulation::full: return "full";
    case Formulation::compressed: return "compressed";
  }
  return "full";
}

int p_max_bound(int runs, int s, int t) {
  if (runs <= 0 || s < 2 || t < 0) throw InvalidInput("invalid OA parameters");
  const std::int64_t st = ipow(s, t);
  if (runs % st != 0) throw InvalidInput("s^t must divide N");
  return static_cast<int>(runs / st);
}

ExtensionSystem build_identity_extension(const Design& input, int t) {
  check_input(input, t);
  const int n = input.runs(), k1 = input.factors(), s = input.levels();
  ExtensionSystem out{Formulation::identity, IntEqSystem(n * (s - 1), 0, 1), input, n, k1 + 1, s, t};
  auto var = [s](int i, int r) { return i * (s - 1) + r; };
  IntEqSystem& sys = out.system;

  for (int r = 0; r < s - 1; ++r) {
    std::vector<Term> terms;
    for (int i = 0; i < n; ++i) terms.push_back({var(i, r), 1});
    sys.add_row(std::move(terms), RowRelation::eq, n / s);
  }
  for (int q = 2; q <= t; ++q) {
    const std::int64_t rhs = n / ipow(s, q);
    for_each_indicator_choice(k1, q - 1, s, [&](std::span<const int> cols, std::span<const int> levels) {
      for (int r = 0; r < s - 1; ++r) {
        std::vector<Term> terms;
        for (int i = 0; i < n; ++i)
          if (matches(input.row(i), cols, levels)) terms.push_back({var(i, r), 1});
        sys.add_row(std::move(terms), RowRelation::eq, rhs);
      }
    });
  }
  if (n > 0) sys.set_bounds(var(0, 0), 1, 1);
  if (s > 2)
    for (int i = 0; i < n; ++i) {
      std::vector<Term> terms;
      for (int r = 0; r < s - 1; ++r) terms.push_back({var(i, r), 1});
      sys.add_row(std::move(terms), RowRelation::le, 1);
    }
  // Replicates: later copies of a run take new levels no smaller than earlier ones.
  std::vector<int> previous(n, -1);
  for (int i = 0; i < n; ++i)
    for (int j = i - 1; j >= 0; --j)
      if (std::ranges::equal(input.row(i), input.row(j))) {
        previous[i] = j;
        break;
      }
  for (int j = 0; j < n; ++j) {
    const int i = previous[j];
    if (i < 0) continue;
    for (int r = 0; r < s - 1; ++r) {
      std::vector<Term> terms;
      for (int m = 0; m <= r; ++m) {
        terms.push_back({var(i, m), 1});
        terms.push_back({var(j, m), -1});
      }
      sys.add_row(std::move(terms), RowRelation::ge, 0);
    }
  }
  return out;
}

ExtensionSystem build_full_formulation(int runs, int k, int s, int t) {
  if (t < 0 || t > k) throw InvalidInput("strength outside [0, k]");
  const int pmax = p_max_bound(runs, s, t);
  const std::int64_t cells = ipow(s, k);
  if (cells > kMaxCellDegree) throw InvalidInput("s^k exceeds the variable cap");
  const int n = static_cast<int>(cells);
  ExtensionSystem out{Formulation::full, IntEqSystem(n, 0, pmax), Design(0, 0, s), runs, k, s, t};
  IntEqSystem& sys = out.system;
  std::vector<std::vector<Level>> coords(n);
  for (int c = 0; c < n; ++c) coords[c] = cell_levels(c + 1, s, k);
  for (int q = 0; q <= t; ++q) {
    const std::int64_t rhs = runs / ipow(s, q);
    for_each_indicator_choice(k, q, s, [&](std::span<const int> cols, std::span<const int> levels) {
      std::vector<Term> terms;
      for (int c = 0; c < n; ++c)
        if (matches(coords[c], cols, levels)) terms.push_back({c, 1});
      sys.add_row(std::move(terms), RowRelation::eq, rhs);
    });
  }
  sys.set_bounds(0, std::min(1, pmax), pmax);
  sys.set_symmetry(full_group(s, k), LexOrder::max);
  return out;
}

ExtensionSystem build_compressed_extension(const Design& input, int t) {
  check_input(input, t);
  if (!(lex_sort_rows(input) == input)) throw InvalidInput("compressed extension needs a lex-sorted input");
  const int n = input.runs(), k1 = input.factors(), s = input.levels();
  const int pmax = p_max_bound(n, s, t);
  const RunProfile prof = run_profile(input);
  const int h = prof.distinct;
  ExtensionSystem out{Formulation::compressed, IntEqSystem(), input, n, k1 + 1, s, t};
  IntEqSystem& sys = out.system;
  auto var = [s](int l, int j) { return l * (s - 1) + j; };
  for (int l = 0; l < h; ++l)
    for (int j = 0; j < s - 1; ++j) sys.add_variable(0, std::min(prof.multiplicity[l], pmax));

  for (int j = 0; j < s - 1; ++j) {
    std::vector<Term> terms;
    for (int l = 0; l < h; ++l) terms.push_back({var(l, j), 1});
    sys.add_row(std::move(terms), RowRelation::eq, n / s);
  }
  for (int q = 2; q <= t; ++q) {
    const std::int64_t rhs = n / ipow(s, q);
    for_each_indicator_choice(k1, q - 1, s, [&](std::span<const int> cols, std::span<const int> levels) {
      for (int j = 0; j < s - 1; ++j) {
        std::vector<Term> terms;
        for (int l = 0; l < h; ++l)
          if (matches(input.row(prof.first_row[l] - 1), cols, levels)) terms.push_back({var(l, j), 1});
        sys.add_row(std::move(terms), RowRelation::eq, rhs);
      }
    });
  }
  if (s > 2)
    for (int l = 0; l < h; ++l) {
      std::vector<Term> terms;
      for (int j = 0; j < s - 1; ++j) terms.push_back({var(l, j), 1});
      sys.add_row(std::move(terms), RowRelation::le, prof.multiplicity[l]);
    }
  if (h > 0 && prof.cell[0] == 1) sys.set_bounds(var(0, 0), 1, sys.upper(var(0, 0)));

  // The stabilizer of the input permutes its distinct runs; lift that action
  // to the (run, level) variables.
  if (h > 0 && ipow(s, k1) <= kMaxCellDegree) {
    const PermGroup stab = with_small_generating_set(design_stabilizer(input));
    std::vector<int> run_of_cell(ipow(s, k1), -1);
    for (int l = 0; l < h; ++l) run_of_cell[prof.cell[l] - 1] = l;
    std::vector<Permutation> lifted;
    for (const auto& g : stab.generators()) {
      std::vector<Permutation::Point> image(sys.variables());
      for (int l = 0; l < h; ++l) {
        const int target = run_of_cell[g(static_cast<int>(prof.cell[l] - 1))];
        for (int j = 0; j < s - 1; ++j) image[var(l, j)] = static_cast<Permutation::Point>(var(target, j));
      }
      lifted.emplace_back(std::move(image));
    }
    sys.set_symmetry(PermGroup(sys.variables(), std::move(lifted)), LexOrder::max);
  }
  return out;
}

Design decode(const ExtensionSystem& f, std::span<const int> x) {
  if (!f.system.satisfied_by(x)) throw InvalidInput("cannot decode a vector that violates its system");
  const int s = f.levels;
  switch (f.kind) {
    case Formulation::full:
      return design_from_frequencies(x, s, f.factors);
    case Formulation::identity: {
      std::vector<Level> column(f.runs, static_cast<Level>(s - 1));
      for (int i = 0; i < f.runs; ++i)
        for (int r = 0; r < s - 1; ++r)
          if (x[i * (s - 1) + r] == 1) column[i] = static_cast<Level>(r);
      return f.input.with_column(column);
    }
    case Formulation::compressed: {
      const RunProfile prof = run_profile(f.input);
      std::vector<Level> column(f.runs);
      for (int l = 0; l < prof.distinct; ++l) {
        int row = prof.first_row[l] - 1;
        int assigned = 0;
        for (int j = 0; j < s - 1; ++j)
          for (int c = 0; c < x[l * (s - 1) + j]; ++c, ++assigned) column[row++] = static_cast<Level>(j);
        for (; assigned < prof.multiplicity[l]; ++assigned) column[row++] = static_cast<Level>(s - 1);
      }
      return f.input.with_column(column);
    }
  }
  throw InvalidInput("unknown formulation");
}

}  // namespace oaenum
