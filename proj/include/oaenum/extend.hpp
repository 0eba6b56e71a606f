#pragma once

#include <chrono>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "oaenum/design.hpp"
#include "oaenum/formulations.hpp"
#include "oaenum/gwp.hpp"
#include "oaenum/int_system.hpp"
#include "oaenum/isomorph.hpp"

namespace oaenum {

/// A decoded design failed a check that the formulations guarantee.
class InternalConsistencyError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

enum class Method { identity, full_refilter, compressed };

std::string to_string(Method m);
/// Accepts "identity", "full" / "full-refilter", "compressed".
Method parse_method(std::string_view text);

struct ClassMember {
  Design design;
  Certificate certificate;  // under the owning ClassSet's relation
  std::string provenance;
};

/// Pairwise non-equivalent OA(N,k,s,t) representatives.
struct ClassSet {
  int runs = 0;
  int factors = 0;
  int levels = 2;
  int strength = 0;
  Relation relation = Relation::oa_iso;
  std::vector<ClassMember> members;

  std::size_t size() const { return members.size(); }
  bool empty() const { return members.empty(); }
  std::vector<Design> designs() const;
};

/// The s^t full factorial, each run repeated N/s^t times, as the sole class at k = t.
ClassSet seed(int runs, int s, int t, Relation relation = Relation::oa_iso);

/// Extension systems whose symmetry group is smaller than this are searched
/// without orbit pruning.
inline constexpr std::uint64_t kMinPruningGroupOrder = 4;

struct ExtendOptions {
  Method method = Method::compressed;
  Relation reduce = Relation::oa_iso;
  Pruning pruning = Pruning::orbit;
  int jobs = 1;
  std::ostream* log = nullptr;  // one line per input representative
};

/// All classes at k+1 reachable from the representatives at k.
ClassSet extend_all(const ClassSet& previous, const ExtendOptions& options);

/// Solutions of one input's extension system, reduced under `relation`
/// (first-found representative per certificate).
struct ExtensionResult {
  std::vector<Design> designs;
  std::vector<Certificate> certificates;
  std::uint64_t solutions = 0;
  SearchStats stats;
};
ExtensionResult extend_one(const Design& input, int t, Method method, Relation relation,
                           Pruning pruning);

/// Distinct classes of OA(N,k,s,t) from the full formulation alone.
ClassSet enumerate_full(int runs, int k, int s, int t, Relation relation, Pruning pruning,
                        SearchStats* stats = nullptr);

struct LevelSummary {
  int factors = 0;
  std::size_t classes = 0;
  double seconds = 0;
};

/// Seeds at k = t and extends until k_stop or an empty class set; the last
/// element is either at k_stop or empty.
std::vector<ClassSet> enumerate_up_to(int runs, int s, int t, int k_stop, const ExtendOptions& options,
                                      std::vector<LevelSummary>* summary = nullptr);

/// True iff `d` extends to some OA(N, k2, s, t).
bool extends_to(const Design& d, int t, int k2, const ExtendOptions& options);

/// Extendability to k2 of two OD-equivalent designs agrees. Throws
/// InvalidInput if they are not OD-equivalent or t is odd.
bool theorem1_check(const Design& y, const Design& z, int t, int k2);

struct ClassReport {
  Gwp gwp;
  DistanceDistribution distance;
  bool gma = false;
  bool weak_gma = false;
};

struct GmaReport {
  int runs = 0;
  int factors = 0;
  int levels = 2;
  int strength = 0;
  std::vector<ClassReport> classes;
  std::vector<std::size_t> gma;
};

GmaReport gma_report(const ClassSet& cs);

/// "(0.00, 0.04)": A_{t+1}, ..., A_k at `places` decimals.
std::string format_gwp_tail(const Gwp& a, int t, int places = 2);
/// "2.600, 14.400, 39, ...": integral values without decimals.
std::string format_distance(const DistanceDistribution& b, int places = 3);
/// Class count, then one row per class with GMA flags.
std::string format_report(const GmaReport& r);

}  // namespace oaenum
