#pragma once

#include <compare>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "oaenum/design.hpp"
#include "oaenum/perm_group.hpp"

namespace oaenum {

inline constexpr int kDefaultVertexCap = 4096;

/// Simple undirected graph with an ordered vertex coloring.
class ColoredGraph {
 public:
  /// `colors[v]` in [0, c); every color in [0, c) must be used.
  ColoredGraph(int vertices, std::vector<int> colors);

  void add_edge(int u, int v);

  int size() const { return static_cast<int>(adjacency_.size()); }
  int color(int v) const { return colors_[v]; }
  int color_count() const { return color_count_; }
  std::span<const int> neighbors(int v) const { return adjacency_[v]; }
  bool adjacent(int u, int v) const;
  std::size_t edge_count() const;

  /// Color classes in color order, each sorted ascending.
  std::vector<std::vector<int>> color_classes() const;
  /// Vertex v of this graph becomes vertex p(v) of the result.
  ColoredGraph relabeled(const Permutation& p) const;

 private:
  std::vector<int> colors_;
  int color_count_ = 0;
  std::vector<std::vector<int>> adjacency_;
};

/// Canonical byte string: color-class sizes followed by the upper-triangle
/// adjacency bits of the canonically relabeled graph.
class Certificate {
 public:
  Certificate() = default;
  explicit Certificate(std::vector<std::uint8_t> bytes) : bytes_(std::move(bytes)) {}

  const std::vector<std::uint8_t>& bytes() const { return bytes_; }
  std::string hex() const;
  static Certificate from_hex(std::string_view hex);
  /// 16 hex digits of a 64-bit FNV-1a digest; used for file names.
  std::string digest() const;

  friend auto operator<=>(const Certificate&, const Certificate&) = default;
  friend bool operator==(const Certificate&, const Certificate&) = default;

 private:
  std::vector<std::uint8_t> bytes_;
};

struct CertificateHash {
  std::size_t operator()(const Certificate& c) const noexcept;
};

using Partition = std::vector<std::vector<int>>;

/// Coarsest equitable partition refining `p` (which must refine the colors).
Partition refine_partition(const ColoredGraph& g, const Partition& p);

struct CanonicalLabeling {
  std::vector<int> labeling;  // labeling[i] = vertex at canonical position i
  Certificate certificate;
  std::vector<Permutation> automorphisms;  // generators of the automorphism group
  std::size_t nodes = 0;                   // search-tree nodes visited
};

/// Individualization-refinement search. Throws InvalidInput past `vertex_cap`.
CanonicalLabeling canonical_labeling(const ColoredGraph& g, int vertex_cap = kDefaultVertexCap);
Certificate canonical_form(const ColoredGraph& g);
PermGroup automorphism_generators(const ColoredGraph& g);

/// Rows (color 0), columns (color 1), and per-column level vertices (color 2).
ColoredGraph oa_graph(const Design& d);
/// Row and column vertex pairs r+/r-, c+/c- (colors 0 and 1).
ColoredGraph hadamard_graph(const SignedDesign& sd);

enum class Relation { oa_iso, od_equiv };

std::string to_string(Relation r);
Relation parse_relation(std::string_view text);

/// Certificate under `r`. Built from the oa_graph (oa_iso) or the
/// hadamard_graph of [1 | signed d] (od_equiv) with replicated rows merged
/// into one vertex colored by multiplicity.
Certificate design_certificate(const Design& d, Relation r);

/// One representative per certificate, first encountered in input order.
std::vector<Design> reduce_classes(std::span<const Design> designs, Relation r);

/// y_column (.) Y for every column of a signed design.
SignedDesign foldover(const SignedDesign& sd, int column);

/// For each signed design carrying a constant +1 first column, forms the
/// foldover by every column, drops the resulting constant column, and
/// reduces the union up to OA isomorphism.
std::vector<Design> od_expand_to_iso(std::span<const SignedDesign> with_ones);
/// Convenience form for k-column {0,1} designs: prepends the constant column.
std::vector<Design> od_expand_to_iso(std::span<const Design> od_reps);

}  // namespace oaenum
