#pragma once

#include <compare>
#include <cstdint>
#include <memory>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "oaenum/design.hpp"

namespace oaenum {

/// A closure or element list would exceed the configured size limit.
class GroupCapExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr std::size_t kDefaultElementCap = 10'000'000;
inline constexpr int kMaxCellDegree = 4096;

/// Bijection on {0, ..., m-1}.
class Permutation {
 public:
  using Point = std::uint16_t;

  Permutation() = default;
  explicit Permutation(std::vector<Point> image);
  static Permutation identity(int degree);

  int degree() const { return static_cast<int>(image_.size()); }
  int operator()(int p) const { return image_[p]; }
  std::span<const Point> images() const { return image_; }

  Permutation inverse() const;
  bool is_identity() const;

  /// Acts on positions: the value at position p moves to position g(p).
  template <typename T>
  std::vector<T> apply(std::span<const T> x) const {
    std::vector<T> out(x.size());
    for (std::size_t p = 0; p < x.size(); ++p) out[image_[p]] = x[p];
    return out;
  }

  /// One-line form, 1-based images separated by spaces.
  std::string to_string() const;
  static Permutation parse(std::string_view text);

  /// (a * b)(p) = a(b(p)).
  friend Permutation operator*(const Permutation& a, const Permutation& b);
  friend auto operator<=>(const Permutation&, const Permutation&) = default;
  friend bool operator==(const Permutation&, const Permutation&) = default;

 private:
  std::vector<Point> image_;
};

struct PermutationHash {
  std::size_t operator()(const Permutation& p) const noexcept;
};

class StabilizerChain;

/// Permutation group given by generators, with an optional cached element list.
class PermGroup {
 public:
  explicit PermGroup(int degree, std::vector<Permutation> generators = {});
  static PermGroup from_elements(int degree, std::vector<Permutation> elements);

  int degree() const { return degree_; }
  const std::vector<Permutation>& generators() const { return generators_; }
  bool has_element_list() const { return elements_ != nullptr; }

  /// Exact order: the cached list, a closure within the cap, or a stabilizer chain.
  std::uint64_t order() const;
  /// All elements, identity first. Throws GroupCapExceeded past `cap`.
  std::vector<Permutation> element_list(std::size_t cap = kDefaultElementCap) const;
  /// Copy of this group holding its element list.
  PermGroup with_element_list(std::size_t cap = kDefaultElementCap) const;

  std::vector<int> orbit(int point) const;
  bool contains(const Permutation& p) const;

 private:
  int degree_;
  std::vector<Permutation> generators_;
  std::shared_ptr<const std::vector<Permutation>> elements_;
};

/// Base and strong generating set built by Schreier-Sims.
class StabilizerChain {
 public:
  StabilizerChain(int degree, std::span<const Permutation> generators);

  std::uint64_t order() const;
  bool contains(const Permutation& p) const;
  std::vector<int> base() const;

 private:
  struct Level {
    int base;
    std::vector<Permutation> generators;
    std::vector<int> orbit;
    std::vector<int> transversal_index;  // per point, -1 if not in orbit
    std::vector<Permutation> transversal;
  };

  void add_level(const Permutation& moving);
  void add_generator(std::size_t from, std::size_t to, const Permutation& g);
  // Returns the residue after sifting from `level`; sets `depth` to where it stopped.
  Permutation sift(std::size_t level, Permutation g, std::size_t& depth) const;

  int degree_;
  std::vector<Level> levels_;
};

/// G_{s,k}: column permutations and per-column level permutations acting on
/// the s^k cells of the full factorial (0-based cell positions).
PermGroup full_group(int s, int k);

/// Elements of `g` mapping the frequency vector onto itself.
PermGroup stabilizer_of_frequencies(const PermGroup& g, std::span<const int> frequencies);
PermGroup stabilizer_of_design(const PermGroup& g, const Design& d);

/// Stabilizer of `d` in G_{s,k}, found by backtracking over column images and
/// level permutations with projected-row pruning. Same group as
/// stabilizer_of_design(full_group(s, k), d) without listing G_{s,k}.
PermGroup design_stabilizer(const Design& d);

/// Few generators for the group of `g`, picked greedily from its element list.
PermGroup with_small_generating_set(const PermGroup& g);

/// True iff no element of g maps x to a lexicographically smaller vector.
bool lex_min_in_orbit(std::span<const int> x, const PermGroup& g);

enum class LexOrder { min, max };

/// Element list of a group sorted by inverse images, supporting lex-leader
/// tests on partially determined vectors.
class LexLeaderIndex {
 public:
  explicit LexLeaderIndex(const PermGroup& g, std::size_t cap = kDefaultElementCap);

  int degree() const { return degree_; }
  std::size_t size() const { return count_; }

  /// True if some element maps every vector inside the box [lo, hi] strictly
  /// before itself in `order`, so no vector of the box is the orbit leader.
  bool dominated(std::span<const int> lo, std::span<const int> hi, LexOrder order) const;
  bool is_leader(std::span<const int> x, LexOrder order) const { return !dominated(x, x, order); }

 private:
  bool search(std::size_t first, std::size_t last, int pos, std::span<const int> lo,
              std::span<const int> hi, LexOrder order) const;
  Permutation::Point inv(std::size_t e, int pos) const {
    return inverse_images_[e * degree_ + pos];
  }

  int degree_;
  std::size_t count_;
  std::vector<Permutation::Point> inverse_images_;
};

}  // namespace oaenum
