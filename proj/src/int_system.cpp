#include "oaenum/int_system.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include <boost/multiprecision/cpp_int.hpp>

namespace oaenum {

namespace {

using Rational = boost::multiprecision::cpp_rational;

struct RowLess {
  bool operator()(const ConstraintRow& a, const ConstraintRow& b) const {
    if (a.rel != b.rel) return a.rel < b.rel;
    if (a.rhs != b.rhs) return a.rhs < b.rhs;
    return a.terms < b.terms;
  }
};

ConstraintRow map_row(const ConstraintRow& row, const Permutation& g) {
  ConstraintRow out{{}, row.rel, row.rhs};
  out.terms.reserve(row.terms.size());
  for (const auto& t : row.terms) out.terms.push_back({g(t.var), t.coef});
  std::sort(out.terms.begin(), out.terms.end());
  return out;
}

// Echelon basis of the equality rows (augmented with the right-hand side),
// used to decide whether a row is a rational combination of them.
class RowSpan {
 public:
  explicit RowSpan(int vars) : vars_(vars) {}

  void add(const ConstraintRow& row) {
    auto v = reduce(dense(row));
    const auto it = std::find_if(v.begin(), v.end(), [](const Rational& x) { return x != 0; });
    if (it == v.end()) return;
    const int pivot = static_cast<int>(it - v.begin());
    const Rational lead = *it;
    for (auto& x : v) x /= lead;
    basis_.push_back({pivot, std::move(v)});
  }

  bool implies(const ConstraintRow& row) const {
    const auto v = reduce(dense(row));
    return std::all_of(v.begin(), v.end(), [](const Rational& x) { return x == 0; });
  }

 private:
  std::vector<Rational> dense(const ConstraintRow& row) const {
    std::vector<Rational> v(vars_ + 1);
    for (const auto& t : row.terms) v[t.var] = t.coef;
    v[vars_] = row.rhs;
    return v;
  }

  std::vector<Rational> reduce(std::vector<Rational> v) const {
    for (const auto& [pivot, b] : basis_) {
      if (v[pivot] == 0) continue;
      const Rational f = v[pivot];
      for (int c = 0; c <= vars_; ++c)
        if (b[c] != 0) v[c] -= f * b[c];
    }
    return v;
  }

  int vars_;
  std::vector<std::pair<int, std::vector<Rational>>> basis_;
};

std::string_view relation_token(RowRelation r) {
  switch (r) {
    case RowRelation::eq: return "=";
    case RowRelation::le: return "<=";
    case RowRelation::ge: return ">=";
  }
  return "=";
}

}  // namespace

std::string_view to_string(RowRelation r) { return relation_token(r); }

IntEqSystem::IntEqSystem(int vars, int lo, int hi) {
  if (vars < 0) throw InvalidInput("negative variable count");
  for (int v = 0; v < vars; ++v) add_variable(lo, hi);
}

int IntEqSystem::add_variable(int lo, int hi) {
  if (lo > hi) throw InvalidInput("variable bounds must satisfy lo <= hi");
  if (symmetry_) throw InvalidInput("cannot add variables after attaching a symmetry group");
  lower_.push_back(lo);
  upper_.push_back(hi);
  return variables() - 1;
}

void IntEqSystem::set_bounds(int var, int lo, int hi) {
  if (var < 0 || var >= variables()) throw InvalidInput("variable index out of range");
  if (lo > hi) throw InvalidInput("variable bounds must satisfy lo <= hi");
  lower_[var] = lo;
  upper_[var] = hi;
}

void IntEqSystem::add_row(std::vector<Term> terms, RowRelation rel, std::int64_t rhs) {
  if (symmetry_) throw InvalidInput("cannot add rows after attaching a symmetry group");
  std::sort(terms.begin(), terms.end(), [](const Term& a, const Term& b) { return a.var < b.var; });
  ConstraintRow row{{}, rel, rhs};
  for (const auto& t : terms) {
    if (t.var < 0 || t.var >= variables()) throw InvalidInput("row references an unknown variable");
    if (!row.terms.empty() && row.terms.back().var == t.var) row.terms.back().coef += t.coef;
    else row.terms.push_back(t);
  }
  std::erase_if(row.terms, [](const Term& t) { return t.coef == 0; });
  rows_.push_back(std::move(row));
}

void IntEqSystem::set_symmetry(PermGroup group, LexOrder order) {
  if (group.degree() != variables()) throw InvalidInput("symmetry degree differs from variable count");
  std::set<ConstraintRow, RowLess> present(rows_.begin(), rows_.end());
  std::optional<RowSpan> span;
  for (const auto& g : group.generators())
    for (const auto& row : rows_) {
      const ConstraintRow image = map_row(row, g);
      if (present.count(image)) continue;
      if (row.rel != RowRelation::eq)
        throw InvalidInput("symmetry maps an inequality row outside the system");
      if (!span) {
        span.emplace(variables());
        for (const auto& r : rows_)
          if (r.rel == RowRelation::eq) span->add(r);
      }
      if (!span->implies(image))
        throw InvalidInput("symmetry maps an equality row outside the row space");
    }
  symmetry_ = Symmetry{std::move(group), order};
}

std::size_t IntEqSystem::count_rows(RowRelation rel) const {
  return static_cast<std::size_t>(
      std::count_if(rows_.begin(), rows_.end(), [rel](const ConstraintRow& r) { return r.rel == rel; }));
}

bool IntEqSystem::satisfied_by(std::span<const int> x) const {
  if (static_cast<int>(x.size()) != variables()) return false;
  for (int v = 0; v < variables(); ++v)
    if (x[v] < lower_[v] || x[v] > upper_[v]) return false;
  for (const auto& row : rows_) {
    std::int64_t sum = 0;
    for (const auto& t : row.terms) sum += t.coef * x[t.var];
    const bool ok = row.rel == RowRelation::eq ? sum == row.rhs
                    : row.rel == RowRelation::le ? sum <= row.rhs
                                                 : sum >= row.rhs;
    if (!ok) return false;
  }
  return true;
}

std::string IntEqSystem::dump() const {
  std::ostringstream out;
  for (int v = 0; v < variables(); ++v) out << "var " << v << ' ' << lower_[v] << ' ' << upper_[v] << '\n';
  for (const auto& row : rows_) {
    out << "row " << relation_token(row.rel) << ' ' << row.rhs;
    std::vector<std::int64_t> dense(variables(), 0);
    for (const auto& t : row.terms) dense[t.var] = t.coef;
    for (auto c : dense) out << ' ' << c;
    out << '\n';
  }
  if (symmetry_) {
    out << "sym " << (symmetry_->order == LexOrder::min ? "min" : "max") << '\n';
    for (const auto& g : symmetry_->group.generators()) out << "gen " << g.to_string() << '\n';
  }
  return out.str();
}

IntEqSystem IntEqSystem::parse(std::string_view text) {
  IntEqSystem sys;
  std::istringstream in{std::string(text)};
  std::string line;
  std::optional<LexOrder> order;
  std::vector<Permutation> gens;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::string kind;
    ls >> kind;
    auto fail = [&](const std::string& what) {
      return InvalidInput("system line " + std::to_string(line_no) + ": " + what);
    };
    if (kind == "var") {
      if (order) throw fail("var after sym");
      if (!sys.rows_.empty()) throw fail("var after row");
      int i, lo, hi;
      if (!(ls >> i >> lo >> hi)) throw fail("malformed var");
      if (i != sys.variables()) throw fail("variables must be numbered consecutively from 0");
      sys.add_variable(lo, hi);
    } else if (kind == "row") {
      if (order) throw fail("row after sym");
      std::string rel;
      std::int64_t rhs;
      if (!(ls >> rel >> rhs)) throw fail("malformed row");
      RowRelation r;
      if (rel == "=") r = RowRelation::eq;
      else if (rel == "<=") r = RowRelation::le;
      else if (rel == ">=") r = RowRelation::ge;
      else throw fail("unknown relation " + rel);
      std::vector<Term> terms;
      std::int64_t c;
      int v = 0;
      while (ls >> c) {
        if (v >= sys.variables()) throw fail("too many coefficients");
        if (c != 0) terms.push_back({v, c});
        ++v;
      }
      if (!ls.eof()) throw fail("non-integer coefficient");
      if (v != sys.variables()) throw fail("too few coefficients");
      sys.add_row(std::move(terms), r, rhs);
    } else if (kind == "sym") {
      std::string o;
      ls >> o;
      if (o == "min") order = LexOrder::min;
      else if (o == "max") order = LexOrder::max;
      else throw fail("sym must be min or max");
    } else if (kind == "gen") {
      if (!order) throw fail("gen before sym");
      std::string rest;
      std::getline(ls, rest);
      gens.push_back(Permutation::parse(rest));
    } else {
      throw fail("unknown line kind " + kind);
    }
  }
  if (order) sys.set_symmetry(PermGroup(sys.variables(), std::move(gens)), *order);
  return sys;
}

}  // namespace oaenum
