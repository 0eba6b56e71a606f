#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "oaenum/perm_group.hpp"

namespace oaenum {

enum class RowRelation { eq, le, ge };

std::string_view to_string(RowRelation r);

struct Term {
  int var;
  std::int64_t coef;

  friend bool operator==(const Term&, const Term&) = default;
  friend auto operator<=>(const Term&, const Term&) = default;
};

/// Sparse constraint row, terms sorted by variable with non-zero coefficients.
struct ConstraintRow {
  std::vector<Term> terms;
  RowRelation rel = RowRelation::eq;
  std::int64_t rhs = 0;

  friend bool operator==(const ConstraintRow&, const ConstraintRow&) = default;
};

struct Symmetry {
  PermGroup group;
  LexOrder order = LexOrder::min;
};

/// Bounded integer variables with linear rows; a pure feasibility problem.
class IntEqSystem {
 public:
  IntEqSystem() = default;
  /// `vars` variables, each with bounds [lo, hi].
  IntEqSystem(int vars, int lo, int hi);

  int add_variable(int lo, int hi);
  void set_bounds(int var, int lo, int hi);
  /// Merges repeated variables and drops zero coefficients.
  void add_row(std::vector<Term> terms, RowRelation rel, std::int64_t rhs);

  /// Attaches a group acting on variable indices. Every generator must map
  /// each inequality row onto a row of the system, and each equality row onto
  /// a row implied by the equality rows. Bounds are not checked: the caller
  /// guarantees that each orbit's leader in `order` respects them.
  void set_symmetry(PermGroup group, LexOrder order);
  void clear_symmetry() { symmetry_.reset(); }

  int variables() const { return static_cast<int>(lower_.size()); }
  int lower(int v) const { return lower_[v]; }
  int upper(int v) const { return upper_[v]; }
  const std::vector<int>& lower_bounds() const { return lower_; }
  const std::vector<int>& upper_bounds() const { return upper_; }
  const std::vector<ConstraintRow>& rows() const { return rows_; }
  std::size_t count_rows(RowRelation rel) const;
  const std::optional<Symmetry>& symmetry() const { return symmetry_; }

  /// True iff x is within bounds and satisfies every row.
  bool satisfied_by(std::span<const int> x) const;

  /// Line format: "var i lo hi", "row rel rhs c1 ... cn", then optionally
  /// "sym min|max" followed by "gen" lines of 1-based images.
  std::string dump() const;
  static IntEqSystem parse(std::string_view text);

 private:
  std::vector<int> lower_;
  std::vector<int> upper_;
  std::vector<ConstraintRow> rows_;
  std::optional<Symmetry> symmetry_;
};

/// Current variable domains during search.
struct Domains {
  std::vector<int> lo;
  std::vector<int> hi;

  bool fixed(int v) const { return lo[v] == hi[v]; }
  friend bool operator==(const Domains&, const Domains&) = default;
};

/// Bounds-consistency fixpoint from the given domains; nullopt if infeasible.
std::optional<Domains> propagate(const IntEqSystem& sys, Domains start);
std::optional<Domains> propagate(const IntEqSystem& sys);

enum class Pruning { off, orbit };

Pruning parse_pruning(std::string_view text);
std::string_view to_string(Pruning p);

struct SearchStats {
  std::uint64_t nodes = 0;
  std::uint64_t solutions = 0;
  std::uint64_t pruned_by_symmetry = 0;
};

/// Depth-first enumeration. With Pruning::orbit, emits exactly the solutions
/// that lead their orbit under the attached group (InvalidInput if none is
/// attached). The callback returns false to stop the search.
template <typename F>
SearchStats for_each_solution(const IntEqSystem& sys, Pruning pruning, F&& emit);

std::vector<std::vector<int>> enumerate_solutions(const IntEqSystem& sys, Pruning pruning,
                                                  SearchStats* stats = nullptr);
std::uint64_t count_solutions(const IntEqSystem& sys);

/// Branching order: descending row membership count, ties by index.
std::vector<int> branching_order(const IntEqSystem& sys);

namespace detail {

class SolutionSink {
 public:
  virtual ~SolutionSink() = default;
  virtual bool accept(std::span<const int> x) = 0;
};

SearchStats run_search(const IntEqSystem& sys, Pruning pruning, SolutionSink& sink);

}  // namespace detail

template <typename F>
SearchStats for_each_solution(const IntEqSystem& sys, Pruning pruning, F&& emit) {
  struct Sink final : detail::SolutionSink {
    explicit Sink(F& f) : f(f) {}
    bool accept(std::span<const int> x) override { return f(x); }
    F& f;
  } sink(emit);
  return detail::run_search(sys, pruning, sink);
}

}  // namespace oaenum
