#pragma once

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "oaenum/extend.hpp"

namespace oaenum {

/// A catalog file disagrees with its manifest.
class CatalogCorrupt : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// One class set as recorded in manifest.json.
struct CatalogEntry {
  int factors = 0;
  Relation relation = Relation::oa_iso;
  std::size_t count = 0;
  std::vector<std::string> files;  // relative to the catalog directory
  std::vector<std::string> certificates;  // hex
  std::vector<std::string> provenance;
  std::vector<std::vector<std::string>> gwp;  // exact A_0..A_k as "p/q"
  std::vector<std::string> gwp_tail;  // A_{t+1}.. at two decimals
  std::vector<bool> gma;
  std::vector<bool> weak_gma;
  double wall_seconds = 0;
};

struct CatalogManifest {
  int runs = 0;
  int levels = 2;
  int strength = 0;
  std::vector<CatalogEntry> entries;  // sorted by (k, relation)

  const CatalogEntry* find(int k, Relation r) const;
  /// The entry at k if exactly one relation is present there, else nullptr.
  const CatalogEntry* find(int k) const;
  /// Largest k with an entry under `r`.
  std::optional<int> last_k(Relation r) const;
};

inline constexpr const char* kManifestName = "manifest.json";

/// Writes each member as k<K>/<digest>.oad and records the entry, replacing
/// any previous entry for the same (k, relation). The manifest is replaced
/// atomically. Throws InvalidInput if the directory holds a catalog for
/// different (N, s, t).
CatalogEntry write_catalog(const ClassSet& cs, const std::filesystem::path& dir, double wall_seconds = 0);

/// Missing manifest yields std::nullopt; malformed JSON throws CatalogCorrupt.
std::optional<CatalogManifest> read_manifest(const std::filesystem::path& dir);

/// Loads the class set at (k, r), recomputing every certificate. Throws
/// CatalogCorrupt on any mismatch and InvalidInput if there is no such entry.
ClassSet read_catalog(const std::filesystem::path& dir, int k, Relation r);
/// As above, choosing the relation when only one is stored at k.
ClassSet read_catalog(const std::filesystem::path& dir, int k);

}  // namespace oaenum
