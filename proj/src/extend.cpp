#include "oaenum/extend.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <iomanip>
#include <mutex>
#include <ostream>
#include <sstream>
#include <thread>
#include <unordered_map>

#include "oaenum/cells.hpp"

namespace oaenum {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

void check_relation(Relation r, int s, int t) {
  if (r == Relation::od_equiv && s != 2) throw InvalidInput("OD-equivalence needs two-level designs");
  if (r == Relation::od_equiv && t % 2 != 0)
    throw InvalidInput("OD-equivalence reduction needs an even strength");
}

// Certificate-keyed accumulator keeping the first design seen per class.
class ClassPool {
 public:
  explicit ClassPool(Relation r) : relation_(r) {}

  bool add(const Design& d, Certificate c) {
    if (!seen_.try_emplace(c, designs_.size()).second) return false;
    designs_.push_back(d);
    certificates_.push_back(std::move(c));
    return true;
  }
  bool add(const Design& d) { return add(d, design_certificate(d, relation_)); }

  std::vector<Design>& designs() { return designs_; }
  std::vector<Certificate>& certificates() { return certificates_; }

 private:
  Relation relation_;
  std::unordered_map<Certificate, std::size_t, CertificateHash> seen_;
  std::vector<Design> designs_;
  std::vector<Certificate> certificates_;
};

void check_decoded(const Design& d, int t) {
  if (!verify_strength(d, std::min(t, d.factors())))
    throw InternalConsistencyError("decoded design fails the strength check");
}

ExtensionResult solve_and_reduce(const ExtensionSystem& f, Relation relation, Pruning pruning) {
  ExtensionResult out;
  ClassPool pool(relation);
  if (pruning == Pruning::orbit &&
      (!f.system.symmetry() || f.system.symmetry()->group.order() < kMinPruningGroupOrder))
    pruning = Pruning::off;
  out.stats = for_each_solution(f.system, pruning, [&](std::span<const int> x) {
    const Design d = decode(f, x);
    check_decoded(d, f.strength);
    pool.add(d);
    return true;
  });
  out.solutions = out.stats.solutions;
  out.designs = std::move(pool.designs());
  out.certificates = std::move(pool.certificates());
  return out;
}

// Keeps each full-formulation class whose deletion of some column is
// isomorphic to `input`.
ExtensionResult refilter(std::span<const Design> full_reps, const Design& input, Relation relation) {
  ExtensionResult out;
  ClassPool pool(relation);
  const Certificate target = design_certificate(input, Relation::oa_iso);
  for (const auto& z : full_reps) {
    for (int c = 0; c < z.factors(); ++c) {
      if (design_certificate(z.without_column(c), Relation::oa_iso) != target) continue;
      std::vector<int> cols;
      for (int j = 0; j < z.factors(); ++j)
        if (j != c) cols.push_back(j);
      cols.push_back(c);
      pool.add(z.select_columns(cols));
      ++out.solutions;
      break;
    }
  }
  out.designs = std::move(pool.designs());
  out.certificates = std::move(pool.certificates());
  return out;
}

}  // namespace

std::string to_string(Method m) {
  switch (m) {
    case Method::identity: return "identity";
    case Method::full_refilter: return "full-refilter";
    case Method::compressed: return "compressed";
  }
  return "compressed";
}

Method parse_method(std::string_view text) {
  if (text == "identity") return Method::identity;
  if (text == "full" || text == "full-refilter") return Method::full_refilter;
  if (text == "compressed") return Method::compressed;
  throw InvalidInput("method must be identity, full or compressed");
}

std::vector<Design> ClassSet::designs() const {
  std::vector<Design> out;
  out.reserve(members.size());
  for (const auto& m : members) out.push_back(m.design);
  return out;
}

ClassSet seed(int runs, int s, int t, Relation relation) {
  const int lambda = p_max_bound(runs, s, t);
  check_relation(relation, s, t);
  const Design ff = full_factorial(s, t);
  Design d(runs, t, s);
  for (int i = 0; i < runs; ++i)
    for (int j = 0; j < t; ++j) d.set(i, j, ff(i / lambda, j));
  ClassSet cs{runs, t, s, t, relation, {}};
  cs.members.push_back({d, design_certificate(d, relation), "seed"});
  return cs;
}

ExtensionResult extend_one(const Design& input, int t, Method method, Relation relation,
                           Pruning pruning) {
  check_relation(relation, input.levels(), t);
  switch (method) {
    case Method::identity:
      return solve_and_reduce(build_identity_extension(input, t), relation, Pruning::off);
    case Method::compressed:
      return solve_and_reduce(build_compressed_extension(lex_sort_rows(input), t), relation, pruning);
    case Method::full_refilter: {
      const ClassSet full = enumerate_full(input.runs(), input.factors() + 1, input.levels(), t,
                                           Relation::oa_iso, pruning);
      const auto reps = full.designs();
      return refilter(reps, input, relation);
    }
  }
  throw InvalidInput("unknown method");
}

ClassSet enumerate_full(int runs, int k, int s, int t, Relation relation, Pruning pruning,
                        SearchStats* stats) {
  check_relation(relation, s, t);
  const ExtensionSystem f = build_full_formulation(runs, k, s, t);
  ExtensionResult r = solve_and_reduce(f, relation, pruning);
  if (stats) *stats = r.stats;
  ClassSet cs{runs, k, s, t, relation, {}};
  for (std::size_t i = 0; i < r.designs.size(); ++i)
    cs.members.push_back({std::move(r.designs[i]), std::move(r.certificates[i]), "full"});
  return cs;
}

ClassSet extend_all(const ClassSet& previous, const ExtendOptions& options) {
  const int t = previous.strength;
  check_relation(options.reduce, previous.levels, t);
  const bool seed_level = previous.factors == t && previous.size() <= 1;
  if (previous.relation != options.reduce && !seed_level)
    throw InvalidInput("input class set was reduced under a different relation");

  ClassSet out{previous.runs, previous.factors + 1, previous.levels, t, options.reduce, {}};
  const std::size_t n = previous.size();
  if (n == 0) return out;

  std::vector<Design> full_reps;
  if (options.method == Method::full_refilter)
    full_reps = enumerate_full(previous.runs, out.factors, previous.levels, t, Relation::oa_iso,
                               options.pruning)
                    .designs();

  std::vector<ExtensionResult> results(n);
  std::vector<std::exception_ptr> errors(n);
  std::atomic<std::size_t> next{0};
  std::mutex log_mutex;
  auto worker = [&] {
    for (std::size_t i = next++; i < n; i = next++) {
      const auto start = Clock::now();
      try {
        const Design& input = previous.members[i].design;
        results[i] = options.method == Method::full_refilter
                         ? refilter(full_reps, input, options.reduce)
                         : extend_one(input, t, options.method, options.reduce, options.pruning);
      } catch (...) {
        errors[i] = std::current_exception();
      }
      if (options.log) {
        std::lock_guard lock(log_mutex);
        *options.log << "k=" << out.factors << " rep " << i + 1 << "/" << n << ": "
                     << results[i].solutions << " solutions, " << results[i].designs.size()
                     << " classes, " << std::fixed << std::setprecision(2) << seconds_since(start)
                     << " s" << std::endl;
      }
    }
  };
  const int jobs = std::max(1, std::min<int>(options.jobs, static_cast<int>(n)));
  std::vector<std::thread> threads;
  for (int j = 1; j < jobs; ++j) threads.emplace_back(worker);
  worker();
  for (auto& th : threads) th.join();
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);

  std::unordered_map<Certificate, std::size_t, CertificateHash> seen;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t m = 0; m < results[i].designs.size(); ++m) {
      if (!seen.try_emplace(results[i].certificates[m], out.members.size()).second) continue;
      out.members.push_back({std::move(results[i].designs[m]), std::move(results[i].certificates[m]),
                             to_string(options.method) + " from k=" + std::to_string(previous.factors) +
                                 " class " + std::to_string(i + 1)});
    }
  return out;
}

std::vector<ClassSet> enumerate_up_to(int runs, int s, int t, int k_stop, const ExtendOptions& options,
                                      std::vector<LevelSummary>* summary) {
  std::vector<ClassSet> out;
  auto start = Clock::now();
  out.push_back(seed(runs, s, t, options.reduce));
  if (summary) summary->push_back({t, out.back().size(), seconds_since(start)});
  while (out.back().factors < k_stop && !out.back().empty()) {
    start = Clock::now();
    out.push_back(extend_all(out.back(), options));
    if (summary) summary->push_back({out.back().factors, out.back().size(), seconds_since(start)});
  }
  return out;
}

bool extends_to(const Design& d, int t, int k2, const ExtendOptions& options) {
  if (d.factors() >= k2) return d.factors() == k2;
  ExtendOptions opts = options;
  opts.reduce = Relation::oa_iso;
  opts.log = nullptr;
  ClassSet cs{d.runs(), d.factors(), d.levels(), t, Relation::oa_iso, {}};
  cs.members.push_back({d, design_certificate(d, Relation::oa_iso), "input"});
  while (cs.factors + 1 < k2 && !cs.empty()) cs = extend_all(cs, opts);
  // The last step only needs one solution per class.
  return std::ranges::any_of(cs.members, [&](const ClassMember& m) {
    const ExtensionSystem f = build_compressed_extension(lex_sort_rows(m.design), t);
    bool found = false;
    for_each_solution(f.system, Pruning::off, [&](std::span<const int>) { return !(found = true); });
    return found;
  });
}

bool theorem1_check(const Design& y, const Design& z, int t, int k2) {
  if (y.levels() != 2 || z.levels() != 2) throw InvalidInput("OD-equivalence needs two-level designs");
  if (t % 2 != 0) throw InvalidInput("the property needs an even strength");
  if (y.runs() != z.runs() || y.factors() != z.factors())
    throw InvalidInput("designs differ in N or k");
  if (design_certificate(y, Relation::od_equiv) != design_certificate(z, Relation::od_equiv))
    throw InvalidInput("designs are not OD-equivalent");
  ExtendOptions opts;
  return extends_to(y, t, k2, opts) == extends_to(z, t, k2, opts);
}

GmaReport gma_report(const ClassSet& cs) {
  GmaReport r{cs.runs, cs.factors, cs.levels, cs.strength, {}, {}};
  std::vector<Gwp> patterns;
  for (const auto& m : cs.members) {
    r.classes.push_back({gwp(m.design), distance_distribution(m.design), false, false});
    patterns.push_back(r.classes.back().gwp);
  }
  r.gma = select_gma(patterns);
  for (auto i : r.gma) r.classes[i].gma = true;
  for (auto i : select_weak_gma(patterns)) r.classes[i].weak_gma = true;
  return r;
}

std::string format_gwp_tail(const Gwp& a, int t, int places) {
  std::string out = "(";
  for (int r = t + 1; r <= a.factors(); ++r) {
    if (r > t + 1) out += ", ";
    out += format_decimal(a.a[r], places);
  }
  return out + ")";
}

std::string format_distance(const DistanceDistribution& b, int places) {
  std::string out;
  for (std::size_t i = 0; i < b.b.size(); ++i) {
    if (i) out += ", ";
    const auto& v = b.b[i];
    out += boost::multiprecision::denominator(v) == 1 ? boost::multiprecision::numerator(v).str()
                                                      : format_decimal(v, places);
  }
  return out;
}

std::string format_report(const GmaReport& r) {
  std::ostringstream out;
  out << "OA(" << r.runs << "," << r.factors << "," << r.levels << "," << r.strength << "): "
      << r.classes.size() << " classes\n";
  for (std::size_t i = 0; i < r.classes.size(); ++i) {
    const auto& c = r.classes[i];
    out << std::setw(5) << i + 1 << "  A" << r.strength + 1 << ".." << r.factors << " = "
        << format_gwp_tail(c.gwp, r.strength) << "  B = (" << format_distance(c.distance) << ")"
        << (c.gma ? "  GMA" : c.weak_gma ? "  weak-GMA" : "") << '\n';
  }
  return out.str();
}

}  // namespace oaenum
