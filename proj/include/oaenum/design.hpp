#pragma once

#include <compare>
#include <cstdint>
#include <filesystem>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace oaenum {

using Level = std::uint8_t;

/// Thrown for malformed input: bad dimensions, out-of-range levels, parse errors.
class InvalidInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// N x k matrix over {0, ..., s-1}, stored row-major.
class Design {
 public:
  Design() = default;
  Design(int runs, int factors, int levels);
  /// Validates every entry against the level range.
  Design(int levels, const std::vector<std::vector<int>>& rows);
  Design(int runs, int factors, int levels, std::vector<Level> entries);

  int runs() const { return runs_; }
  int factors() const { return factors_; }
  int levels() const { return levels_; }

  int operator()(int i, int j) const { return entries_[index(i, j)]; }
  void set(int i, int j, int level);

  std::span<const Level> row(int i) const {
    return {entries_.data() + static_cast<std::size_t>(i) * factors_,
            static_cast<std::size_t>(factors_)};
  }
  std::vector<Level> column(int j) const;
  const std::vector<Level>& entries() const { return entries_; }

  Design with_column(std::span<const Level> column) const;
  Design without_column(int j) const;
  Design select_columns(std::span<const int> columns) const;
  Design permute_rows(std::span<const int> order) const;

  friend bool operator==(const Design&, const Design&) = default;

 private:
  std::size_t index(int i, int j) const {
    return static_cast<std::size_t>(i) * factors_ + j;
  }

  int runs_ = 0;
  int factors_ = 0;
  int levels_ = 2;
  std::vector<Level> entries_;
};

/// Two-level design with entries +1/-1; level 0 <-> +1, level 1 <-> -1.
struct SignedDesign {
  int runs = 0;
  int factors = 0;
  std::vector<std::int8_t> entries;  // row-major

  int operator()(int i, int j) const {
    return entries[static_cast<std::size_t>(i) * factors + j];
  }
  friend bool operator==(const SignedDesign&, const SignedDesign&) = default;
};

/// N x (s-1)k 0/1 matrix; column (s-1)j + r (0-based) flags level r in factor j.
struct IndicatorMatrix {
  int runs = 0;
  int factors = 0;
  int levels = 2;
  std::vector<std::uint8_t> entries;  // row-major

  int width() const { return (levels - 1) * factors; }
  int operator()(int i, int c) const {
    return entries[static_cast<std::size_t>(i) * width() + c];
  }
};

/// Distinct runs of the lexicographically sorted design. Indices are 1-based.
struct RunProfile {
  int distinct = 0;
  std::vector<int> multiplicity;
  std::vector<int> first_row;
  std::vector<std::int64_t> cell;

  friend bool operator==(const RunProfile&, const RunProfile&) = default;
};

IndicatorMatrix expand_indicator(const Design& d);
Design corresponding_design(const IndicatorMatrix& m);

/// True iff every t-column projection holds each of the s^t level
/// combinations exactly N/s^t times. False when s^t does not divide N.
bool verify_strength(const Design& d, int t);

/// Largest t in [0, k] for which verify_strength holds.
int max_strength(const Design& d);

Design lex_sort_rows(const Design& d);
RunProfile run_profile(const Design& d);

SignedDesign to_signed(const Design& d);
Design from_signed(const SignedDesign& sd);

/// Prepends an all +1 column.
SignedDesign prepend_ones(const SignedDesign& sd);

// ".oad" text format: "N k s" followed by N rows of k levels.
std::string to_oad(const Design& d);
Design parse_oad(std::string_view text);
Design read_oad(const std::filesystem::path& path);
void write_oad(const std::filesystem::path& path, const Design& d);

/// Integer power with overflow check.
std::int64_t ipow(std::int64_t base, int exp);

}  // namespace oaenum
