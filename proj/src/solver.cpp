#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "oaenum/int_system.hpp"

namespace oaenum {

namespace {

std::int64_t floor_div(std::int64_t a, std::int64_t b) {
  std::int64_t q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

std::int64_t ceil_div(std::int64_t a, std::int64_t b) { return -floor_div(-a, b); }

class Propagator {
 public:
  explicit Propagator(const IntEqSystem& sys) : sys_(sys), rows_of_(sys.variables()), queued_(sys.rows().size(), 0) {
    for (std::size_t r = 0; r < sys.rows().size(); ++r)
      for (const auto& t : sys.rows()[r].terms) rows_of_[t.var].push_back(static_cast<int>(r));
  }

  bool all(Domains& d) {
    queue_.clear();
    for (std::size_t r = 0; r < sys_.rows().size(); ++r) push(static_cast<int>(r));
    return run(d);
  }

  bool after_change(Domains& d, int var) {
    queue_.clear();
    for (int r : rows_of_[var]) push(r);
    return run(d);
  }

 private:
  void push(int r) {
    if (!queued_[r]) {
      queued_[r] = 1;
      queue_.push_back(r);
    }
  }

  bool run(Domains& d) {
    bool ok = true;
    for (std::size_t head = 0; head < queue_.size() && ok; ++head) {
      const int r = queue_[head];
      queued_[r] = 0;
      ok = tighten(d, sys_.rows()[r]);
    }
    for (int r : queue_) queued_[r] = 0;
    return ok;
  }

  bool tighten(Domains& d, const ConstraintRow& row) {
    std::int64_t min_act = 0, max_act = 0;
    for (const auto& t : row.terms) {
      const std::int64_t a = t.coef * d.lo[t.var], b = t.coef * d.hi[t.var];
      min_act += std::min(a, b);
      max_act += std::max(a, b);
    }
    const bool has_upper = row.rel != RowRelation::ge;
    const bool has_lower = row.rel != RowRelation::le;
    if (has_upper && min_act > row.rhs) return false;
    if (has_lower && max_act < row.rhs) return false;
    for (const auto& t : row.terms) {
      const int v = t.var;
      if (d.lo[v] == d.hi[v]) continue;
      const std::int64_t a = t.coef * d.lo[v], b = t.coef * d.hi[v];
      std::int64_t lo = d.lo[v], hi = d.hi[v];
      if (has_upper) {
        const std::int64_t room = row.rhs - (min_act - std::min(a, b));
        if (t.coef > 0) hi = std::min(hi, floor_div(room, t.coef));
        else lo = std::max(lo, ceil_div(room, t.coef));
      }
      if (has_lower) {
        const std::int64_t need = row.rhs - (max_act - std::max(a, b));
        if (t.coef > 0) lo = std::max(lo, ceil_div(need, t.coef));
        else hi = std::min(hi, floor_div(need, t.coef));
      }
      if (lo > hi) return false;
      if (lo != d.lo[v] || hi != d.hi[v]) {
        d.lo[v] = static_cast<int>(lo);
        d.hi[v] = static_cast<int>(hi);
        for (int r : rows_of_[v]) push(r);
      }
    }
    return true;
  }

  const IntEqSystem& sys_;
  std::vector<std::vector<int>> rows_of_;
  std::vector<char> queued_;
  std::vector<int> queue_;
};

class Search {
 public:
  Search(const IntEqSystem& sys, Pruning pruning, detail::SolutionSink& sink)
      : sys_(sys), prop_(sys), order_(branching_order(sys)), sink_(sink) {
    if (pruning == Pruning::orbit) {
      if (!sys.symmetry()) throw InvalidInput("orbit pruning needs a symmetry group on the system");
      const auto& sym = *sys.symmetry();
      if (!sym.group.generators().empty()) {
        index_.emplace(sym.group);
        lex_ = sym.order;
      }
    }
  }

  SearchStats run() {
    Domains root{sys_.lower_bounds(), sys_.upper_bounds()};
    if (prop_.all(root) && !pruned(root)) dfs(root);
    return stats_;
  }

 private:
  bool pruned(const Domains& d) {
    if (index_ && index_->dominated(d.lo, d.hi, lex_)) {
      ++stats_.pruned_by_symmetry;
      return true;
    }
    return false;
  }

  bool dfs(const Domains& d) {
    ++stats_.nodes;
    auto it = std::find_if(order_.begin(), order_.end(), [&](int v) { return !d.fixed(v); });
    if (it == order_.end()) return leaf(d);
    const int v = *it;
    for (int val = d.lo[v]; val <= d.hi[v]; ++val) {
      Domains child = d;
      child.lo[v] = child.hi[v] = val;
      if (!prop_.after_change(child, v) || pruned(child)) continue;
      if (!dfs(child)) return false;
    }
    return true;
  }

  bool leaf(const Domains& d) {
    if (!sys_.satisfied_by(d.lo)) throw std::logic_error("propagation accepted an infeasible leaf");
    ++stats_.solutions;
    return sink_.accept(d.lo);
  }

  const IntEqSystem& sys_;
  Propagator prop_;
  std::vector<int> order_;
  detail::SolutionSink& sink_;
  std::optional<LexLeaderIndex> index_;
  LexOrder lex_ = LexOrder::min;
  SearchStats stats_;
};

}  // namespace

std::optional<Domains> propagate(const IntEqSystem& sys, Domains start) {
  if (static_cast<int>(start.lo.size()) != sys.variables() ||
      static_cast<int>(start.hi.size()) != sys.variables())
    throw InvalidInput("domain size differs from variable count");
  for (int v = 0; v < sys.variables(); ++v) {
    start.lo[v] = std::max(start.lo[v], sys.lower(v));
    start.hi[v] = std::min(start.hi[v], sys.upper(v));
    if (start.lo[v] > start.hi[v]) return std::nullopt;
  }
  Propagator p(sys);
  if (!p.all(start)) return std::nullopt;
  return start;
}

std::optional<Domains> propagate(const IntEqSystem& sys) {
  return propagate(sys, Domains{sys.lower_bounds(), sys.upper_bounds()});
}

Pruning parse_pruning(std::string_view text) {
  if (text == "off") return Pruning::off;
  if (text == "orbit") return Pruning::orbit;
  throw InvalidInput("pruning must be off or orbit");
}

std::string_view to_string(Pruning p) { return p == Pruning::off ? "off" : "orbit"; }

std::vector<int> branching_order(const IntEqSystem& sys) {
  std::vector<int> count(sys.variables(), 0);
  for (const auto& row : sys.rows())
    for (const auto& t : row.terms) ++count[t.var];
  std::vector<int> order(sys.variables());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return count[a] > count[b]; });
  return order;
}

namespace detail {

SearchStats run_search(const IntEqSystem& sys, Pruning pruning, SolutionSink& sink) {
  return Search(sys, pruning, sink).run();
}

}  // namespace detail

std::vector<std::vector<int>> enumerate_solutions(const IntEqSystem& sys, Pruning pruning,
                                                  SearchStats* stats) {
  std::vector<std::vector<int>> out;
  auto s = for_each_solution(sys, pruning, [&](std::span<const int> x) {
    out.emplace_back(x.begin(), x.end());
    return true;
  });
  if (stats) *stats = s;
  return out;
}

std::uint64_t count_solutions(const IntEqSystem& sys) {
  return for_each_solution(sys, Pruning::off, [](std::span<const int>) { return true; }).solutions;
}

}  // namespace oaenum
