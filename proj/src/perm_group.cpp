#include "oaenum/perm_group.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <optional>
#include <sstream>
#include <unordered_set>

#include "oaenum/cells.hpp"

namespace oaenum {

Permutation::Permutation(std::vector<Point> image) : image_(std::move(image)) {
  std::vector<bool> seen(image_.size(), false);
  for (Point p : image_) {
    if (p >= image_.size() || seen[p]) throw InvalidInput("image is not a bijection");
    seen[p] = true;
  }
}

Permutation Permutation::identity(int degree) {
  if (degree < 0 || degree > 65535) throw InvalidInput("permutation degree out of range");
  std::vector<Point> im(degree);
  std::iota(im.begin(), im.end(), Point{0});
  Permutation p;
  p.image_ = std::move(im);
  return p;
}

Permutation Permutation::inverse() const {
  Permutation out;
  out.image_.resize(image_.size());
  for (std::size_t p = 0; p < image_.size(); ++p) out.image_[image_[p]] = static_cast<Point>(p);
  return out;
}

bool Permutation::is_identity() const {
  for (std::size_t p = 0; p < image_.size(); ++p)
    if (image_[p] != p) return false;
  return true;
}

std::string Permutation::to_string() const {
  std::ostringstream os;
  for (std::size_t p = 0; p < image_.size(); ++p) {
    if (p) os << ' ';
    os << image_[p] + 1;
  }
  return os.str();
}

Permutation Permutation::parse(std::string_view text) {
  std::istringstream is{std::string(text)};
  std::vector<Point> im;
  long v = 0;
  while (is >> v) {
    if (v < 1 || v > 65535) throw InvalidInput("permutation image out of range");
    im.push_back(static_cast<Point>(v - 1));
  }
  if (!is.eof()) throw InvalidInput("malformed permutation");
  return Permutation(std::move(im));
}

Permutation operator*(const Permutation& a, const Permutation& b) {
  if (a.degree() != b.degree()) throw InvalidInput("permutation degrees differ");
  Permutation out;
  out.image_.resize(b.image_.size());
  for (std::size_t p = 0; p < b.image_.size(); ++p) out.image_[p] = a.image_[b.image_[p]];
  return out;
}

std::size_t PermutationHash::operator()(const Permutation& p) const noexcept {
  std::size_t h = 1469598103934665603ull;
  for (auto v : p.images()) h = (h ^ v) * 1099511628211ull;
  return h;
}

// ---------------------------------------------------------------------------

PermGroup::PermGroup(int degree, std::vector<Permutation> generators)
    : degree_(degree), generators_(std::move(generators)) {
  if (degree < 0 || degree > 65535) throw InvalidInput("group degree out of range");
  for (const auto& g : generators_)
    if (g.degree() != degree) throw InvalidInput("generator degree mismatch");
  std::erase_if(generators_, [](const Permutation& g) { return g.is_identity(); });
}

PermGroup PermGroup::from_elements(int degree, std::vector<Permutation> elements) {
  std::vector<Permutation> gens;
  for (const auto& e : elements)
    if (!e.is_identity()) gens.push_back(e);
  PermGroup g(degree, std::move(gens));
  auto it = std::find_if(elements.begin(), elements.end(),
                         [](const Permutation& p) { return p.is_identity(); });
  if (it == elements.end()) throw InvalidInput("element list lacks the identity");
  std::iter_swap(elements.begin(), it);
  g.elements_ = std::make_shared<const std::vector<Permutation>>(std::move(elements));
  return g;
}

std::vector<Permutation> PermGroup::element_list(std::size_t cap) const {
  if (elements_) {
    if (elements_->size() > cap) throw GroupCapExceeded("group order exceeds element cap");
    return *elements_;
  }
  std::vector<Permutation> out{Permutation::identity(degree_)};
  std::unordered_set<Permutation, PermutationHash> seen(out.begin(), out.end());
  for (std::size_t i = 0; i < out.size(); ++i)
    for (const auto& g : generators_) {
      Permutation next = g * out[i];
      if (seen.insert(next).second) {
        if (out.size() >= cap) throw GroupCapExceeded("group order exceeds element cap");
        out.push_back(std::move(next));
      }
    }
  return out;
}

PermGroup PermGroup::with_element_list(std::size_t cap) const {
  PermGroup g = *this;
  if (!g.elements_) g.elements_ = std::make_shared<const std::vector<Permutation>>(element_list(cap));
  return g;
}

std::uint64_t PermGroup::order() const {
  if (elements_) return elements_->size();
  if (generators_.empty()) return 1;
  return StabilizerChain(degree_, generators_).order();
}

std::vector<int> PermGroup::orbit(int point) const {
  if (point < 0 || point >= degree_) throw InvalidInput("point out of range");
  std::vector<bool> seen(degree_, false);
  std::vector<int> out{point};
  seen[point] = true;
  for (std::size_t i = 0; i < out.size(); ++i)
    for (const auto& g : generators_) {
      int q = g(out[i]);
      if (!seen[q]) {
        seen[q] = true;
        out.push_back(q);
      }
    }
  std::sort(out.begin(), out.end());
  return out;
}

bool PermGroup::contains(const Permutation& p) const {
  if (p.degree() != degree_) return false;
  if (elements_) return std::find(elements_->begin(), elements_->end(), p) != elements_->end();
  if (p.is_identity()) return true;
  if (generators_.empty()) return false;
  return StabilizerChain(degree_, generators_).contains(p);
}

// ---------------------------------------------------------------------------

StabilizerChain::StabilizerChain(int degree, std::span<const Permutation> generators)
    : degree_(degree) {
  std::vector<Permutation> gens;
  for (const auto& g : generators)
    if (!g.is_identity()) gens.push_back(g);
  if (gens.empty()) return;
  add_level(gens.front());
  for (const auto& g : gens) add_generator(0, 0, g);

  // Deterministic Schreier-Sims: every Schreier generator of level i must
  // sift through levels i+1..; a non-trivial residue joins the strong
  // generators and the check restarts at the level where it stopped.
  int i = static_cast<int>(levels_.size()) - 1;
  while (i >= 0) {
    bool restarted = false;
    for (std::size_t oi = 0; !restarted && oi < levels_[i].orbit.size(); ++oi) {
      const int p = levels_[i].orbit[oi];
      for (std::size_t gi = 0; !restarted && gi < levels_[i].generators.size(); ++gi) {
        const Level& cur = levels_[i];
        const Permutation& s = cur.generators[gi];
        const int q = s(p);
        Permutation schreier = cur.transversal[cur.transversal_index[q]].inverse() * s *
                               cur.transversal[cur.transversal_index[p]];
        std::size_t depth = 0;
        Permutation residue = sift(i + 1, std::move(schreier), depth);
        if (residue.is_identity()) continue;
        if (depth == levels_.size()) add_level(residue);
        // The residue fixes base points 0..depth-1, so it is a strong
        // generator for every level up to `depth`.
        add_generator(0, depth, residue);
        i = static_cast<int>(depth);
        restarted = true;
      }
    }
    if (!restarted) --i;
  }
}

void StabilizerChain::add_level(const Permutation& moving) {
  int base = 0;
  while (moving(base) == base) ++base;
  Level l{base, {}, {base}, std::vector<int>(degree_, -1), {Permutation::identity(degree_)}};
  l.transversal_index[base] = 0;
  levels_.push_back(std::move(l));
}

void StabilizerChain::add_generator(std::size_t from, std::size_t to, const Permutation& g) {
  for (std::size_t j = from; j <= to; ++j) {
    Level& l = levels_[j];
    l.generators.push_back(g);
    for (std::size_t oi = 0; oi < l.orbit.size(); ++oi)
      for (const auto& s : l.generators) {
        const int p = l.orbit[oi];
        const int q = s(p);
        if (l.transversal_index[q] >= 0) continue;
        l.transversal_index[q] = static_cast<int>(l.transversal.size());
        l.transversal.push_back(s * l.transversal[l.transversal_index[p]]);
        l.orbit.push_back(q);
      }
  }
}

Permutation StabilizerChain::sift(std::size_t level, Permutation g, std::size_t& depth) const {
  for (depth = level; depth < levels_.size(); ++depth) {
    const Level& l = levels_[depth];
    const int image = g(l.base);
    const int t = l.transversal_index[image];
    if (t < 0) return g;
    g = l.transversal[t].inverse() * g;
  }
  return g;
}

std::uint64_t StabilizerChain::order() const {
  std::uint64_t n = 1;
  for (const auto& l : levels_) {
    const std::uint64_t o = l.orbit.size();
    if (n > UINT64_MAX / o) throw GroupCapExceeded("group order overflows 64 bits");
    n *= o;
  }
  return n;
}

bool StabilizerChain::contains(const Permutation& p) const {
  std::size_t depth = 0;
  return sift(0, p, depth).is_identity();
}

std::vector<int> StabilizerChain::base() const {
  std::vector<int> b;
  for (const auto& l : levels_) b.push_back(l.base);
  return b;
}

// ---------------------------------------------------------------------------

PermGroup full_group(int s, int k) {
  if (s < 2 || k < 0) throw InvalidInput("invalid full-factorial parameters");
  const std::int64_t cells = ipow(s, k);
  if (cells > kMaxCellDegree) throw GroupCapExceeded("s^k exceeds the cell degree cap");
  const int n = static_cast<int>(cells);
  std::vector<std::vector<Level>> coords(n);
  for (int c = 0; c < n; ++c) coords[c] = cell_levels(c + 1, s, k);

  auto make = [&](auto&& transform) {
    std::vector<Permutation::Point> image(n);
    for (int c = 0; c < n; ++c) {
      std::vector<Level> l = coords[c];
      transform(l);
      image[c] = static_cast<Permutation::Point>(cell_index(std::span<const Level>(l), s) - 1);
    }
    return Permutation(std::move(image));
  };

  std::vector<Permutation> gens;
  for (int j = 0; j + 1 < k; ++j)
    gens.push_back(make([j](std::vector<Level>& l) { std::swap(l[j], l[j + 1]); }));
  for (int j = 0; j < k; ++j)
    for (int a = 0; a + 1 < s; ++a)
      gens.push_back(make([j, a](std::vector<Level>& l) {
        if (l[j] == a) l[j] = static_cast<Level>(a + 1);
        else if (l[j] == a + 1) l[j] = static_cast<Level>(a);
      }));
  return PermGroup(n, std::move(gens));
}

PermGroup stabilizer_of_frequencies(const PermGroup& g, std::span<const int> frequencies) {
  if (static_cast<int>(frequencies.size()) != g.degree())
    throw InvalidInput("frequency vector length differs from group degree");
  std::vector<Permutation> keep;
  for (auto& e : g.element_list()) {
    bool fixes = true;
    for (int p = 0; p < g.degree() && fixes; ++p) fixes = frequencies[e(p)] == frequencies[p];
    if (fixes) keep.push_back(std::move(e));
  }
  return PermGroup::from_elements(g.degree(), std::move(keep));
}

PermGroup stabilizer_of_design(const PermGroup& g, const Design& d) {
  return stabilizer_of_frequencies(g, frequency_vector(d));
}

namespace {

struct StabilizerSearch {
  const Design& d;
  int n, k, s;
  std::vector<int> col_image;
  std::vector<std::vector<Level>> level_perm;
  std::vector<bool> used;
  std::vector<std::vector<Level>> perms;  // all permutations of the s levels
  std::vector<Permutation> found;

  // Rows projected on the first `depth` columns, mapped, against the rows
  // projected on their images.
  bool consistent(int depth) const {
    std::vector<std::int64_t> mapped(n), target(n);
    for (int i = 0; i < n; ++i) {
      std::int64_t a = 0, b = 0;
      for (int j = 0; j < depth; ++j) {
        a = a * s + level_perm[j][d(i, j)];
        b = b * s + d(i, col_image[j]);
      }
      mapped[i] = a;
      target[i] = b;
    }
    std::ranges::sort(mapped);
    std::ranges::sort(target);
    return mapped == target;
  }

  void emit() {
    const int cells = static_cast<int>(ipow(s, k));
    std::vector<Permutation::Point> image(cells);
    std::vector<Level> to(k);
    for (int c = 0; c < cells; ++c) {
      const std::vector<Level> from = cell_levels(c + 1, s, k);
      for (int j = 0; j < k; ++j) to[col_image[j]] = level_perm[j][from[j]];
      image[c] = static_cast<Permutation::Point>(cell_index(std::span<const Level>(to), s) - 1);
    }
    found.emplace_back(std::move(image));
  }

  void search(int depth) {
    if (depth == k) {
      emit();
      return;
    }
    for (int c = 0; c < k; ++c) {
      if (used[c]) continue;
      used[c] = true;
      col_image[depth] = c;
      for (const auto& p : perms) {
        level_perm[depth] = p;
        if (consistent(depth + 1)) search(depth + 1);
      }
      used[c] = false;
    }
  }
};

}  // namespace

PermGroup design_stabilizer(const Design& d) {
  const int k = d.factors(), s = d.levels();
  if (ipow(s, k) > kMaxCellDegree) throw GroupCapExceeded("s^k exceeds the cell degree cap");
  StabilizerSearch st{d, d.runs(), k, s, std::vector<int>(k), std::vector<std::vector<Level>>(k),
                      std::vector<bool>(k, false), {}, {}};
  std::vector<Level> p(s);
  std::iota(p.begin(), p.end(), Level{0});
  do st.perms.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));
  st.search(0);
  return PermGroup::from_elements(static_cast<int>(ipow(s, k)), std::move(st.found));
}

PermGroup with_small_generating_set(const PermGroup& g) {
  std::vector<Permutation> gens;
  std::optional<StabilizerChain> chain;
  for (const auto& e : g.element_list()) {
    if (e.is_identity() || (chain && chain->contains(e))) continue;
    gens.push_back(e);
    chain.emplace(g.degree(), gens);
  }
  PermGroup out(g.degree(), std::move(gens));
  return g.has_element_list() ? out.with_element_list() : out;
}

bool lex_min_in_orbit(std::span<const int> x, const PermGroup& g) {
  if (static_cast<int>(x.size()) != g.degree()) throw InvalidInput("vector length differs from degree");
  for (const auto& e : g.element_list()) {
    auto y = e.apply(x);
    if (std::lexicographical_compare(y.begin(), y.end(), x.begin(), x.end())) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------

LexLeaderIndex::LexLeaderIndex(const PermGroup& g, std::size_t cap) : degree_(g.degree()) {
  auto elements = g.element_list(cap);
  count_ = elements.size();
  std::vector<Permutation> inverses;
  inverses.reserve(count_);
  for (const auto& e : elements) inverses.push_back(e.inverse());
  std::sort(inverses.begin(), inverses.end());
  inverse_images_.reserve(count_ * degree_);
  for (const auto& e : inverses)
    inverse_images_.insert(inverse_images_.end(), e.images().begin(), e.images().end());
}

bool LexLeaderIndex::dominated(std::span<const int> lo, std::span<const int> hi,
                               LexOrder order) const {
  if (static_cast<int>(lo.size()) != degree_ || static_cast<int>(hi.size()) != degree_)
    throw InvalidInput("box dimension differs from group degree");
  return search(0, count_, 0, lo, hi, order);
}

bool LexLeaderIndex::search(std::size_t first, std::size_t last, int pos,
                            std::span<const int> lo, std::span<const int> hi,
                            LexOrder order) const {
  if (pos == degree_) return false;
  // Elements in [first, last) agree on inverse images of positions < pos, and
  // for all of them (g x)_p = x_p on those positions for every x in the box.
  std::size_t e = first;
  while (e < last) {
    const int src = inv(e, pos);
    std::size_t end = e + 1;
    while (end < last && inv(end, pos) == src) ++end;
    if (src == pos) {
      if (search(e, end, pos + 1, lo, hi, order)) return true;
    } else {
      const bool better = order == LexOrder::min ? hi[src] < lo[pos] : lo[src] > hi[pos];
      if (better) return true;
      const bool equal = lo[src] == hi[src] && lo[pos] == hi[pos] && lo[src] == lo[pos];
      if (equal && search(e, end, pos + 1, lo, hi, order)) return true;
    }
    e = end;
  }
  return false;
}

}  // namespace oaenum
