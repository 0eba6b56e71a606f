#include "oaenum/isomorph.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <unordered_map>

namespace oaenum {

// ---------------------------------------------------------------------------
// ColoredGraph

ColoredGraph::ColoredGraph(int vertices, std::vector<int> colors) : colors_(std::move(colors)) {
  if (vertices < 0 || static_cast<int>(colors_.size()) != vertices)
    throw InvalidInput("color vector length differs from vertex count");
  std::vector<bool> used;
  for (int c : colors_) {
    if (c < 0) throw InvalidInput("negative color");
    if (c >= static_cast<int>(used.size())) used.resize(c + 1, false);
    used[c] = true;
  }
  if (std::find(used.begin(), used.end(), false) != used.end())
    throw InvalidInput("color classes must be non-empty");
  color_count_ = static_cast<int>(used.size());
  adjacency_.resize(vertices);
}

void ColoredGraph::add_edge(int u, int v) {
  if (u < 0 || v < 0 || u >= size() || v >= size()) throw InvalidInput("edge endpoint out of range");
  if (u == v) throw InvalidInput("self-loops are not allowed");
  auto insert = [](std::vector<int>& a, int x) {
    auto it = std::lower_bound(a.begin(), a.end(), x);
    if (it == a.end() || *it != x) a.insert(it, x);
  };
  insert(adjacency_[u], v);
  insert(adjacency_[v], u);
}

bool ColoredGraph::adjacent(int u, int v) const {
  return std::binary_search(adjacency_[u].begin(), adjacency_[u].end(), v);
}

std::size_t ColoredGraph::edge_count() const {
  std::size_t m = 0;
  for (const auto& a : adjacency_) m += a.size();
  return m / 2;
}

std::vector<std::vector<int>> ColoredGraph::color_classes() const {
  std::vector<std::vector<int>> classes(color_count_);
  for (int v = 0; v < size(); ++v) classes[colors_[v]].push_back(v);
  return classes;
}

ColoredGraph ColoredGraph::relabeled(const Permutation& p) const {
  if (p.degree() != size()) throw InvalidInput("relabeling degree mismatch");
  std::vector<int> colors(size());
  for (int v = 0; v < size(); ++v) colors[p(v)] = colors_[v];
  ColoredGraph out(size(), std::move(colors));
  for (int v = 0; v < size(); ++v) {
    auto& a = out.adjacency_[p(v)];
    for (int u : adjacency_[v]) a.push_back(p(u));
    std::sort(a.begin(), a.end());
  }
  return out;
}

// ---------------------------------------------------------------------------
// Certificate

std::string Certificate::hex() const {
  static constexpr char digits[] = "0123456789abcdef";
  std::string out;
  out.reserve(bytes_.size() * 2);
  for (auto b : bytes_) {
    out.push_back(digits[b >> 4]);
    out.push_back(digits[b & 15]);
  }
  return out;
}

Certificate Certificate::from_hex(std::string_view hex) {
  if (hex.size() % 2 != 0) throw InvalidInput("odd-length certificate hex");
  auto nibble = [](char c) -> int {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    throw InvalidInput("certificate hex must be lowercase hexadecimal");
  };
  std::vector<std::uint8_t> bytes(hex.size() / 2);
  for (std::size_t i = 0; i < bytes.size(); ++i)
    bytes[i] = static_cast<std::uint8_t>(nibble(hex[2 * i]) << 4 | nibble(hex[2 * i + 1]));
  return Certificate(std::move(bytes));
}

std::string Certificate::digest() const {
  std::uint64_t h = 1469598103934665603ull;
  for (auto b : bytes_) h = (h ^ b) * 1099511628211ull;
  static constexpr char digits[] = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i, h >>= 4) out[i] = digits[h & 15];
  return out;
}

std::size_t CertificateHash::operator()(const Certificate& c) const noexcept {
  std::size_t h = 1469598103934665603ull;
  for (auto b : c.bytes()) h = (h ^ b) * 1099511628211ull;
  return h;
}

// ---------------------------------------------------------------------------
// Partition refinement and canonical search

namespace {

std::uint64_t mix(std::uint64_t h, std::uint64_t v) {
  h ^= v + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
  h ^= h >> 31;
  h *= 0xbf58476d1ce4e5b9ull;
  return h ^ (h >> 29);
}

// Ordered partition: cells are contiguous ranges of `lab`, identified by
// their start position.
struct PartitionState {
  std::vector<int> lab;
  std::vector<int> pos;
  std::vector<int> cell_of;   // vertex -> start of its cell
  std::vector<int> cell_len;  // start -> length (valid at cell starts)
  int cells = 0;

  bool discrete() const { return cells == static_cast<int>(lab.size()); }
};

PartitionState make_state(int n, const Partition& p) {
  PartitionState s;
  s.lab.reserve(n);
  s.pos.assign(n, -1);
  s.cell_of.assign(n, 0);
  s.cell_len.assign(n, 0);
  for (const auto& cell : p) {
    if (cell.empty()) throw InvalidInput("empty partition cell");
    const int start = static_cast<int>(s.lab.size());
    for (int v : cell) {
      if (v < 0 || v >= n || s.pos[v] >= 0) throw InvalidInput("partition does not cover the vertices");
      s.pos[v] = static_cast<int>(s.lab.size());
      s.cell_of[v] = start;
      s.lab.push_back(v);
    }
    s.cell_len[start] = static_cast<int>(cell.size());
    ++s.cells;
  }
  if (static_cast<int>(s.lab.size()) != n) throw InvalidInput("partition does not cover the vertices");
  return s;
}

class Refiner {
 public:
  explicit Refiner(const ColoredGraph& g)
      : g_(g), count_(g.size(), 0), in_queue_(g.size(), 0) {}

  /// Refines to the coarsest equitable partition, starting from the given
  /// splitter cells. Returns an isomorphism-invariant trace of the splits.
  std::uint64_t refine(PartitionState& s, const std::vector<int>& splitters) {
    std::uint64_t h = 0x243f6a8885a308d3ull;
    queue_.clear();
    head_ = 0;
    for (int c : splitters) push(c);
    while (head_ < queue_.size()) {
      const int w = queue_[head_++];
      in_queue_[w] = 0;
      const int wlen = s.cell_len[w];
      touched_.clear();
      for (int i = w; i < w + wlen; ++i)
        for (int v : g_.neighbors(s.lab[i]))
          if (count_[v]++ == 0) touched_.push_back(v);
      touched_cells_.clear();
      for (int v : touched_) touched_cells_.push_back(s.cell_of[v]);
      std::sort(touched_cells_.begin(), touched_cells_.end());
      touched_cells_.erase(std::unique(touched_cells_.begin(), touched_cells_.end()),
                           touched_cells_.end());
      for (int c : touched_cells_) h = split(s, c, w, h);
      for (int v : touched_) count_[v] = 0;
    }
    return mix(h, static_cast<std::uint64_t>(s.cells));
  }

 private:
  void push(int c) {
    if (!in_queue_[c]) {
      in_queue_[c] = 1;
      queue_.push_back(c);
    }
  }

  std::uint64_t split(PartitionState& s, int c, int w, std::uint64_t h) {
    const int len = s.cell_len[c];
    if (len == 1) return h;
    auto first = s.lab.begin() + c;
    auto last = first + len;
    const int c0 = count_[*first];
    if (std::all_of(first, last, [&](int v) { return count_[v] == c0; })) return h;
    std::stable_sort(first, last, [&](int a, int b) { return count_[a] < count_[b]; });
    h = mix(h, (static_cast<std::uint64_t>(c) << 32) | static_cast<std::uint32_t>(w));
    const bool was_queued = in_queue_[c] != 0;
    int largest = c, largest_len = 0;
    std::vector<int>& starts = fragment_starts_;
    starts.clear();
    for (int i = c; i < c + len;) {
      int j = i;
      const int cnt = count_[s.lab[i]];
      while (j < c + len && count_[s.lab[j]] == cnt) {
        s.pos[s.lab[j]] = j;
        s.cell_of[s.lab[j]] = i;
        ++j;
      }
      s.cell_len[i] = j - i;
      if (i != c) ++s.cells;
      h = mix(h, (static_cast<std::uint64_t>(cnt) << 32) | static_cast<std::uint32_t>(j - i));
      starts.push_back(i);
      if (j - i > largest_len) {
        largest_len = j - i;
        largest = i;
      }
      i = j;
    }
    for (int f : starts) {
      if (was_queued ? f != c : f != largest) push(f);
    }
    return h;
  }

  const ColoredGraph& g_;
  std::vector<int> count_;
  std::vector<char> in_queue_;
  std::vector<int> queue_;
  std::size_t head_ = 0;
  std::vector<int> touched_;
  std::vector<int> touched_cells_;
  std::vector<int> fragment_starts_;
};

Partition cells_of(const PartitionState& s) {
  Partition out;
  for (int i = 0; i < static_cast<int>(s.lab.size()); i += s.cell_len[i])
    out.emplace_back(s.lab.begin() + i, s.lab.begin() + i + s.cell_len[i]);
  return out;
}

struct Automorphism {
  Permutation perm;
  std::vector<int> support;
};

class CanonicalSearch {
 public:
  explicit CanonicalSearch(const ColoredGraph& g)
      : g_(g), n_(g.size()), refiner_(g), words_((n_ + 63) / 64), parent_(n_) {}

  CanonicalLabeling run() {
    add_twin_transpositions();
    PartitionState root = make_state(n_, g_.color_classes());
    std::vector<int> all;
    for (int i = 0; i < n_; i += root.cell_len[i]) all.push_back(i);
    refiner_.refine(root, all);
    explore(root);

    CanonicalLabeling out;
    out.labeling = best_lab_;
    out.certificate = certificate();
    for (auto& a : autos_) out.automorphisms.push_back(std::move(a.perm));
    out.nodes = nodes_;
    return out;
  }

 private:
  void add_twin_transpositions() {
    // Vertices of one color with equal open (or closed) neighbourhoods are
    // interchangeable; each such transposition is an automorphism.
    for (int closed = 0; closed < 2; ++closed) {
      // Chains of adjacent transpositions survive individualizing the
      // smallest members, which the search tries first.
      std::map<std::pair<int, std::vector<int>>, int> last;
      for (int v = 0; v < n_; ++v) {
        std::vector<int> key(g_.neighbors(v).begin(), g_.neighbors(v).end());
        if (closed) key.insert(std::lower_bound(key.begin(), key.end(), v), v);
        auto [it, inserted] = last.try_emplace({g_.color(v), std::move(key)}, v);
        if (!inserted) {
          add_automorphism_swap(it->second, v);
          it->second = v;
        }
      }
    }
  }

  void add_automorphism_swap(int a, int b) {
    std::vector<Permutation::Point> image(n_);
    std::iota(image.begin(), image.end(), Permutation::Point{0});
    std::swap(image[a], image[b]);
    autos_.push_back({Permutation(std::move(image)), {a, b}});
  }

  int target_cell(const PartitionState& s) const {
    int best = -1, best_len = n_ + 1;
    for (int i = 0; i < n_; i += s.cell_len[i])
      if (s.cell_len[i] > 1 && s.cell_len[i] < best_len) {
        best = i;
        best_len = s.cell_len[i];
      }
    return best;
  }

  static void individualize(PartitionState& s, int c, int v) {
    const int len = s.cell_len[c];
    const int pv = s.pos[v];
    const int u = s.lab[c];
    std::swap(s.lab[c], s.lab[pv]);
    s.pos[v] = c;
    s.pos[u] = pv;
    s.cell_len[c] = 1;
    s.cell_len[c + 1] = len - 1;
    for (int i = c + 1; i < c + len; ++i) s.cell_of[s.lab[i]] = c + 1;
    s.cell_of[v] = c;
    ++s.cells;
  }

  // -1, 0, +1 comparison of the current path trace with the best leaf's
  // trace on a common prefix; a longer path beats a shorter best trace.
  int compare_with_best() const {
    const std::size_t m = std::min(trace_.size(), best_trace_.size());
    for (std::size_t i = 0; i < m; ++i)
      if (trace_[i] != best_trace_[i]) return trace_[i] < best_trace_[i] ? -1 : 1;
    return trace_.size() > best_trace_.size() ? 1 : 0;
  }

  int find(int v) {
    while (parent_[v] != v) v = parent_[v] = parent_[parent_[v]];
    return v;
  }

  void compute_orbits() {
    std::iota(parent_.begin(), parent_.end(), 0);
    for (const auto& a : autos_) {
      bool fixes = true;
      for (int p : prefix_)
        if (a.perm(p) != p) {
          fixes = false;
          break;
        }
      if (!fixes) continue;
      for (int v : a.support) {
        int x = find(v), y = find(a.perm(v));
        if (x != y) parent_[std::max(x, y)] = std::min(x, y);
      }
    }
  }

  void explore(const PartitionState& s) {
    ++nodes_;
    const int c = target_cell(s);
    if (c < 0) {
      leaf(s);
      return;
    }
    std::vector<int> children(s.lab.begin() + c, s.lab.begin() + c + s.cell_len[c]);
    std::sort(children.begin(), children.end());
    std::vector<int> tried;
    std::size_t autos_seen = static_cast<std::size_t>(-1);
    for (int v : children) {
      if (autos_seen != autos_.size()) {
        compute_orbits();
        autos_seen = autos_.size();
      }
      const int rv = find(v);
      if (std::any_of(tried.begin(), tried.end(), [&](int u) { return find(u) == rv; })) continue;
      tried.push_back(v);

      PartitionState child = s;
      individualize(child, c, v);
      const std::uint64_t h = refiner_.refine(child, {c});
      trace_.push_back(h);
      if (!have_best_ || compare_with_best() >= 0) {
        prefix_.push_back(v);
        explore(child);
        prefix_.pop_back();
      }
      trace_.pop_back();
    }
  }

  void leaf(const PartitionState& s) {
    std::vector<std::uint64_t> code(static_cast<std::size_t>(n_) * words_, 0);
    for (int i = 0; i < n_; ++i)
      for (int u : g_.neighbors(s.lab[i])) {
        const int j = s.pos[u];
        code[static_cast<std::size_t>(i) * words_ + j / 64] |= std::uint64_t{1} << (63 - j % 64);
      }
    const int cmp = have_best_ ? compare_with_best() : 1;
    if (cmp > 0 || (cmp == 0 && code > best_code_)) {
      have_best_ = true;
      best_trace_ = trace_;
      best_code_ = std::move(code);
      best_lab_ = s.lab;
      return;
    }
    if (cmp == 0 && code == best_code_) {
      std::vector<Permutation::Point> image(n_);
      std::vector<int> support;
      for (int i = 0; i < n_; ++i) {
        image[s.lab[i]] = static_cast<Permutation::Point>(best_lab_[i]);
        if (s.lab[i] != best_lab_[i]) support.push_back(s.lab[i]);
      }
      if (!support.empty()) autos_.push_back({Permutation(std::move(image)), std::move(support)});
    }
  }

  Certificate certificate() const {
    std::vector<std::uint8_t> bytes;
    auto put32 = [&](std::uint32_t v) {
      for (int i = 0; i < 4; ++i) bytes.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
    };
    put32(static_cast<std::uint32_t>(n_));
    put32(static_cast<std::uint32_t>(g_.color_count()));
    for (const auto& cls : g_.color_classes()) put32(static_cast<std::uint32_t>(cls.size()));
    std::vector<int> pos(n_);
    for (int i = 0; i < n_; ++i) pos[best_lab_[i]] = i;
    std::uint8_t acc = 0;
    int nbits = 0;
    for (int i = 0; i < n_; ++i)
      for (int j = i + 1; j < n_; ++j) {
        const std::size_t word = static_cast<std::size_t>(i) * words_ + j / 64;
        const bool bit = (best_code_[word] >> (63 - j % 64)) & 1;
        acc = static_cast<std::uint8_t>(acc << 1 | bit);
        if (++nbits == 8) {
          bytes.push_back(acc);
          acc = 0;
          nbits = 0;
        }
      }
    if (nbits) bytes.push_back(static_cast<std::uint8_t>(acc << (8 - nbits)));
    return Certificate(std::move(bytes));
  }

  const ColoredGraph& g_;
  const int n_;
  Refiner refiner_;
  const int words_;
  std::vector<Automorphism> autos_;
  std::vector<int> parent_;
  std::vector<int> prefix_;
  std::vector<std::uint64_t> trace_;
  bool have_best_ = false;
  std::vector<std::uint64_t> best_trace_;
  std::vector<std::uint64_t> best_code_;
  std::vector<int> best_lab_;
  std::size_t nodes_ = 0;
};

}  // namespace

Partition refine_partition(const ColoredGraph& g, const Partition& p) {
  PartitionState s = make_state(g.size(), p);
  for (const auto& cell : p)
    for (int v : cell)
      if (g.color(v) != g.color(cell.front()))
        throw InvalidInput("partition must refine the color classes");
  std::vector<int> all;
  for (int i = 0; i < g.size(); i += s.cell_len[i]) all.push_back(i);
  Refiner(g).refine(s, all);
  return cells_of(s);
}

CanonicalLabeling canonical_labeling(const ColoredGraph& g, int vertex_cap) {
  if (g.size() > vertex_cap) throw InvalidInput("graph exceeds the canonical-labeling vertex cap");
  if (g.size() == 0) return {{}, Certificate(std::vector<std::uint8_t>(8, 0)), {}, 1};
  return CanonicalSearch(g).run();
}

Certificate canonical_form(const ColoredGraph& g) { return canonical_labeling(g).certificate; }

PermGroup automorphism_generators(const ColoredGraph& g) {
  return PermGroup(g.size(), canonical_labeling(g).automorphisms);
}

// ---------------------------------------------------------------------------
// Design graphs and class reduction

ColoredGraph oa_graph(const Design& d) {
  const int n = d.runs(), k = d.factors(), s = d.levels();
  std::vector<int> colors;
  colors.insert(colors.end(), n, 0);
  colors.insert(colors.end(), k, 1);
  colors.insert(colors.end(), static_cast<std::size_t>(k) * s, 2);
  if (n == 0 || k == 0) {
    // Drop unused colors so the coloring stays dense.
    std::vector<int> dense;
    for (int c : colors) dense.push_back(n == 0 ? c - 1 : c);
    colors = dense;
  }
  const int vertices = static_cast<int>(colors.size());
  ColoredGraph g(vertices, std::move(colors));
  const int level_base = n + k;
  for (int j = 0; j < k; ++j)
    for (int l = 0; l < s; ++l) g.add_edge(n + j, level_base + j * s + l);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < k; ++j) g.add_edge(i, level_base + j * s + d(i, j));
  return g;
}

ColoredGraph hadamard_graph(const SignedDesign& sd) {
  const int n = sd.runs, k = sd.factors;
  std::vector<int> colors;
  colors.insert(colors.end(), 2 * n, 0);
  colors.insert(colors.end(), 2 * k, n == 0 ? 0 : 1);
  const int vertices = static_cast<int>(colors.size());
  ColoredGraph g(vertices, std::move(colors));
  auto row_plus = [](int i) { return i; };
  auto row_minus = [n](int i) { return n + i; };
  auto col_plus = [n](int j) { return 2 * n + j; };
  auto col_minus = [n, k](int j) { return 2 * n + k + j; };
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < k; ++j) {
      if (sd(i, j) == 1) {
        g.add_edge(row_plus(i), col_plus(j));
        g.add_edge(row_minus(i), col_minus(j));
      } else if (sd(i, j) == -1) {
        g.add_edge(row_plus(i), col_minus(j));
        g.add_edge(row_minus(i), col_plus(j));
      } else {
        throw InvalidInput("signed design entries must be +1 or -1");
      }
    }
  return g;
}

std::string to_string(Relation r) { return r == Relation::oa_iso ? "iso" : "od"; }

Relation parse_relation(std::string_view text) {
  if (text == "iso" || text == "oa-iso") return Relation::oa_iso;
  if (text == "od" || text == "od-equiv") return Relation::od_equiv;
  throw InvalidInput("relation must be iso or od");
}

namespace {

// Distinct rows with their multiplicities. Each multiplicity value becomes a
// vertex color, and the sorted values prefix the certificate, so replicated
// rows collapse into one vertex without merging inequivalent designs.
struct RowClasses {
  std::vector<std::vector<int>> rows;
  std::vector<int> color;
  std::vector<int> values;
};

RowClasses row_classes(std::map<std::vector<int>, int> counts) {
  RowClasses out;
  std::set<int> values;
  for (const auto& [row, m] : counts) values.insert(m);
  out.values.assign(values.begin(), values.end());
  for (auto& [row, m] : counts) {
    out.rows.push_back(row);
    out.color.push_back(static_cast<int>(std::ranges::lower_bound(out.values, m) - out.values.begin()));
  }
  return out;
}

Certificate with_multiplicities(const RowClasses& rc, const Certificate& graph) {
  std::vector<std::uint8_t> bytes;
  auto put = [&](std::uint32_t v) {
    for (int b = 3; b >= 0; --b) bytes.push_back(static_cast<std::uint8_t>(v >> (8 * b)));
  };
  put(static_cast<std::uint32_t>(rc.values.size()));
  for (int v : rc.values) put(static_cast<std::uint32_t>(v));
  bytes.insert(bytes.end(), graph.bytes().begin(), graph.bytes().end());
  return Certificate(std::move(bytes));
}

Certificate oa_certificate(const Design& d) {
  const int k = d.factors(), s = d.levels();
  std::map<std::vector<int>, int> counts;
  for (int i = 0; i < d.runs(); ++i) ++counts[std::vector<int>(d.row(i).begin(), d.row(i).end())];
  const RowClasses rc = row_classes(std::move(counts));
  const int h = static_cast<int>(rc.rows.size());
  const int c = static_cast<int>(rc.values.size());
  std::vector<int> colors = rc.color;
  if (k > 0) {
    colors.insert(colors.end(), k, c);
    colors.insert(colors.end(), static_cast<std::size_t>(k) * s, c + 1);
  }
  const int vertices = static_cast<int>(colors.size());
  ColoredGraph g(vertices, std::move(colors));
  const int level_base = h + k;
  for (int j = 0; j < k; ++j)
    for (int l = 0; l < s; ++l) g.add_edge(h + j, level_base + j * s + l);
  for (int i = 0; i < h; ++i)
    for (int j = 0; j < k; ++j) g.add_edge(i, level_base + j * s + rc.rows[i][j]);
  return with_multiplicities(rc, canonical_form(g));
}

// Rows are taken up to negation (normalized to start with +1).
Certificate od_certificate(const Design& d) {
  const SignedDesign sd = prepend_ones(to_signed(d));
  const int k = sd.factors;
  std::map<std::vector<int>, int> counts;
  for (int i = 0; i < sd.runs; ++i) {
    std::vector<int> row(k);
    const int sign = sd(i, 0);
    for (int j = 0; j < k; ++j) row[j] = sign * sd(i, j);
    ++counts[row];
  }
  const RowClasses rc = row_classes(std::move(counts));
  const int h = static_cast<int>(rc.rows.size());
  const int c = static_cast<int>(rc.values.size());
  std::vector<int> colors = rc.color;
  colors.insert(colors.end(), rc.color.begin(), rc.color.end());
  colors.insert(colors.end(), 2 * k, c);
  const int vertices = static_cast<int>(colors.size());
  ColoredGraph g(vertices, std::move(colors));
  for (int i = 0; i < h; ++i)
    for (int j = 0; j < k; ++j) {
      const bool plus = rc.rows[i][j] == 1;
      g.add_edge(i, 2 * h + (plus ? j : k + j));
      g.add_edge(h + i, 2 * h + (plus ? k + j : j));
    }
  return with_multiplicities(rc, canonical_form(g));
}

}  // namespace

Certificate design_certificate(const Design& d, Relation r) {
  if (d.runs() == 0) throw InvalidInput("cannot certify a design without runs");
  return r == Relation::oa_iso ? oa_certificate(d) : od_certificate(d);
}

std::vector<Design> reduce_classes(std::span<const Design> designs, Relation r) {
  std::vector<Design> out;
  if (designs.empty()) return out;
  const Design& ref = designs.front();
  std::unordered_map<Certificate, std::size_t, CertificateHash> seen;
  for (const auto& d : designs) {
    if (d.runs() != ref.runs() || d.factors() != ref.factors() || d.levels() != ref.levels())
      throw InvalidInput("designs to reduce must share N, k and s");
    if (seen.try_emplace(design_certificate(d, r), out.size()).second) out.push_back(d);
  }
  return out;
}

SignedDesign foldover(const SignedDesign& sd, int column) {
  if (column < 0 || column >= sd.factors) throw InvalidInput("foldover column out of range");
  SignedDesign out = sd;
  for (int i = 0; i < sd.runs; ++i) {
    const int y = sd(i, column);
    for (int j = 0; j < sd.factors; ++j)
      out.entries[static_cast<std::size_t>(i) * sd.factors + j] =
          static_cast<std::int8_t>(y * sd(i, j));
  }
  return out;
}

std::vector<Design> od_expand_to_iso(std::span<const SignedDesign> with_ones) {
  std::vector<Design> variants;
  for (const auto& y : with_ones) {
    if (y.factors < 1) throw InvalidInput("signed design needs its constant column");
    for (int i = 0; i < y.runs; ++i)
      if (y(i, 0) != 1) throw InvalidInput("first column must be all +1");
    for (int c = 0; c < y.factors; ++c) {
      SignedDesign v = foldover(y, c);
      // y_c (.) y_c is the constant column; drop it.
      SignedDesign dropped{v.runs, v.factors - 1, {}};
      for (int i = 0; i < v.runs; ++i) {
        if (v(i, c) != 1) throw InvalidInput("foldover variant lacks an all +1 column");
        for (int j = 0; j < v.factors; ++j)
          if (j != c) dropped.entries.push_back(static_cast<std::int8_t>(v(i, j)));
      }
      variants.push_back(from_signed(dropped));
    }
  }
  return reduce_classes(variants, Relation::oa_iso);
}

std::vector<Design> od_expand_to_iso(std::span<const Design> od_reps) {
  std::vector<SignedDesign> signed_reps;
  for (const auto& d : od_reps) signed_reps.push_back(prepend_ones(to_signed(d)));
  return od_expand_to_iso(std::span<const SignedDesign>(signed_reps));
}

}  // namespace oaenum
