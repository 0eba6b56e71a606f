#include "oaenum/design.hpp"

#include <algorithm>
#include <fstream>
#include <numeric>
#include <sstream>

#include "oaenum/cells.hpp"

namespace oaenum {

std::int64_t ipow(std::int64_t base, int exp) {
  if (exp < 0) throw InvalidInput("negative exponent");
  std::int64_t r = 1;
  for (int i = 0; i < exp; ++i) {
    if (r > INT64_MAX / std::max<std::int64_t>(base, 1))
      throw InvalidInput("integer power overflow");
    r *= base;
  }
  return r;
}

Design::Design(int runs, int factors, int levels)
    : runs_(runs), factors_(factors), levels_(levels) {
  if (runs < 0 || factors < 0) throw InvalidInput("negative design dimensions");
  if (levels < 2 || levels > 255) throw InvalidInput("levels must lie in [2, 255]");
  entries_.assign(static_cast<std::size_t>(runs) * factors, 0);
}

Design::Design(int levels, const std::vector<std::vector<int>>& rows)
    : Design(static_cast<int>(rows.size()), rows.empty() ? 0 : static_cast<int>(rows[0].size()),
             levels) {
  for (int i = 0; i < runs_; ++i) {
    if (static_cast<int>(rows[i].size()) != factors_)
      throw InvalidInput("ragged design rows");
    for (int j = 0; j < factors_; ++j) set(i, j, rows[i][j]);
  }
}

Design::Design(int runs, int factors, int levels, std::vector<Level> entries)
    : Design(runs, factors, levels) {
  if (entries.size() != entries_.size()) throw InvalidInput("entry count mismatch");
  for (Level e : entries)
    if (e >= levels) throw InvalidInput("level out of range");
  entries_ = std::move(entries);
}

void Design::set(int i, int j, int level) {
  if (i < 0 || i >= runs_ || j < 0 || j >= factors_) throw InvalidInput("index out of range");
  if (level < 0 || level >= levels_) throw InvalidInput("level out of range");
  entries_[index(i, j)] = static_cast<Level>(level);
}

std::vector<Level> Design::column(int j) const {
  std::vector<Level> c(runs_);
  for (int i = 0; i < runs_; ++i) c[i] = entries_[index(i, j)];
  return c;
}

Design Design::with_column(std::span<const Level> column) const {
  if (static_cast<int>(column.size()) != runs_) throw InvalidInput("column length mismatch");
  Design out(runs_, factors_ + 1, levels_);
  for (int i = 0; i < runs_; ++i) {
    auto r = row(i);
    std::copy(r.begin(), r.end(), out.entries_.begin() + out.index(i, 0));
    if (column[i] >= levels_) throw InvalidInput("level out of range");
    out.entries_[out.index(i, factors_)] = column[i];
  }
  return out;
}

Design Design::without_column(int j) const {
  std::vector<int> keep;
  for (int c = 0; c < factors_; ++c)
    if (c != j) keep.push_back(c);
  return select_columns(keep);
}

Design Design::select_columns(std::span<const int> columns) const {
  Design out(runs_, static_cast<int>(columns.size()), levels_);
  for (int i = 0; i < runs_; ++i)
    for (std::size_t c = 0; c < columns.size(); ++c)
      out.entries_[out.index(i, static_cast<int>(c))] = entries_[index(i, columns[c])];
  return out;
}

Design Design::permute_rows(std::span<const int> order) const {
  if (static_cast<int>(order.size()) != runs_) throw InvalidInput("row order length mismatch");
  Design out(runs_, factors_, levels_);
  for (int i = 0; i < runs_; ++i) {
    auto r = row(order[i]);
    std::copy(r.begin(), r.end(), out.entries_.begin() + out.index(i, 0));
  }
  return out;
}

IndicatorMatrix expand_indicator(const Design& d) {
  IndicatorMatrix m{d.runs(), d.factors(), d.levels(), {}};
  const int w = m.width();
  m.entries.assign(static_cast<std::size_t>(d.runs()) * w, 0);
  for (int i = 0; i < d.runs(); ++i)
    for (int j = 0; j < d.factors(); ++j) {
      const int level = d(i, j);
      if (level < d.levels() - 1)
        m.entries[static_cast<std::size_t>(i) * w + (d.levels() - 1) * j + level] = 1;
    }
  return m;
}

Design corresponding_design(const IndicatorMatrix& m) {
  Design d(m.runs, m.factors, m.levels);
  const int block = m.levels - 1;
  for (int i = 0; i < m.runs; ++i)
    for (int j = 0; j < m.factors; ++j) {
      int level = m.levels - 1;
      int ones = 0;
      for (int r = 0; r < block; ++r) {
        const int e = m(i, block * j + r);
        if (e > 1) throw InvalidInput("indicator entries must be 0/1");
        if (e == 1) {
          level = r;
          ++ones;
        }
      }
      if (ones > 1) throw InvalidInput("indicator block has more than one 1");
      d.set(i, j, level);
    }
  return d;
}

namespace {

// Calls f on every increasing t-subset of {0..k-1}; stops when f returns false.
template <typename F>
bool for_each_subset(int k, int t, F&& f) {
  std::vector<int> cols(t);
  std::iota(cols.begin(), cols.end(), 0);
  while (true) {
    if (!f(std::span<const int>(cols))) return false;
    int i = t - 1;
    while (i >= 0 && cols[i] == k - t + i) --i;
    if (i < 0) return true;
    ++cols[i];
    for (int j = i + 1; j < t; ++j) cols[j] = cols[j - 1] + 1;
  }
}

}  // namespace

bool verify_strength(const Design& d, int t) {
  if (t < 0 || t > d.factors()) throw InvalidInput("strength outside [0, k]");
  const std::int64_t buckets = ipow(d.levels(), t);
  if (d.runs() % buckets != 0) return false;
  const int lambda = static_cast<int>(d.runs() / buckets);
  std::vector<int> tally(static_cast<std::size_t>(buckets));
  return for_each_subset(d.factors(), t, [&](std::span<const int> cols) {
    std::fill(tally.begin(), tally.end(), 0);
    for (int i = 0; i < d.runs(); ++i) {
      std::int64_t b = 0;
      for (int c : cols) b = b * d.levels() + d(i, c);
      if (++tally[b] > lambda) return false;
    }
    return std::all_of(tally.begin(), tally.end(), [&](int v) { return v == lambda; });
  });
}

int max_strength(const Design& d) {
  int t = 0;
  while (t < d.factors() && verify_strength(d, t + 1)) ++t;
  return t;
}

Design lex_sort_rows(const Design& d) {
  std::vector<int> order(d.runs());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    auto ra = d.row(a), rb = d.row(b);
    return std::lexicographical_compare(ra.begin(), ra.end(), rb.begin(), rb.end());
  });
  return d.permute_rows(order);
}

RunProfile run_profile(const Design& d) {
  const Design sorted = lex_sort_rows(d);
  RunProfile p;
  for (int i = 0; i < sorted.runs(); ++i) {
    auto r = sorted.row(i);
    if (i > 0) {
      auto prev = sorted.row(i - 1);
      if (std::equal(r.begin(), r.end(), prev.begin())) {
        ++p.multiplicity.back();
        continue;
      }
    }
    p.multiplicity.push_back(1);
    p.first_row.push_back(i + 1);
    p.cell.push_back(cell_index(r, d.levels()));
  }
  p.distinct = static_cast<int>(p.multiplicity.size());
  return p;
}

SignedDesign to_signed(const Design& d) {
  if (d.levels() != 2) throw InvalidInput("signed encoding requires two levels");
  SignedDesign sd{d.runs(), d.factors(), {}};
  sd.entries.reserve(d.entries().size());
  for (Level e : d.entries()) sd.entries.push_back(static_cast<std::int8_t>(1 - 2 * e));
  return sd;
}

Design from_signed(const SignedDesign& sd) {
  std::vector<Level> e;
  e.reserve(sd.entries.size());
  for (auto v : sd.entries) {
    if (v != 1 && v != -1) throw InvalidInput("signed entries must be +1 or -1");
    e.push_back(v == 1 ? 0 : 1);
  }
  return Design(sd.runs, sd.factors, 2, std::move(e));
}

SignedDesign prepend_ones(const SignedDesign& sd) {
  SignedDesign out{sd.runs, sd.factors + 1, {}};
  out.entries.reserve(static_cast<std::size_t>(sd.runs) * (sd.factors + 1));
  for (int i = 0; i < sd.runs; ++i) {
    out.entries.push_back(1);
    for (int j = 0; j < sd.factors; ++j) out.entries.push_back(static_cast<std::int8_t>(sd(i, j)));
  }
  return out;
}

std::string to_oad(const Design& d) {
  std::ostringstream os;
  os << d.runs() << ' ' << d.factors() << ' ' << d.levels() << '\n';
  for (int i = 0; i < d.runs(); ++i) {
    for (int j = 0; j < d.factors(); ++j) {
      if (j) os << ' ';
      os << d(i, j);
    }
    os << '\n';
  }
  return os.str();
}

Design parse_oad(std::string_view text) {
  std::istringstream is{std::string(text)};
  std::string header;
  if (!std::getline(is, header)) throw InvalidInput("empty .oad input");
  std::istringstream hs(header);
  int n = 0, k = 0, s = 0;
  if (!(hs >> n >> k >> s)) throw InvalidInput("malformed .oad header");
  std::string extra;
  if (hs >> extra) throw InvalidInput("malformed .oad header");
  if (n < 0 || k < 0) throw InvalidInput("negative .oad dimensions");
  Design d(n, k, s);
  std::string line;
  int i = 0;
  while (std::getline(is, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    if (i >= n) throw InvalidInput(".oad has more rows than declared");
    std::istringstream ls(line);
    long v = 0;
    int j = 0;
    while (ls >> v) {
      if (j >= k) throw InvalidInput(".oad row has too many levels");
      if (v < 0 || v >= s) throw InvalidInput(".oad level out of range");
      d.set(i, j++, static_cast<int>(v));
    }
    if (!ls.eof()) throw InvalidInput(".oad row has a non-integer token");
    if (j != k) throw InvalidInput(".oad row has too few levels");
    ++i;
  }
  if (i != n) throw InvalidInput(".oad has fewer rows than declared");
  return d;
}

Design read_oad(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_oad(ss.str());
}

void write_oad(const std::filesystem::path& path, const Design& d) {
  std::ofstream out(path);
  if (!out) throw InvalidInput("cannot write " + path.string());
  out << to_oad(d);
}

}  // namespace oaenum
