#include "oaenum/catalog.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

namespace oaenum {

namespace fs = std::filesystem;
using Json = nlohmann::ordered_json;

namespace {

void write_atomically(const fs::path& path, const std::string& text) {
  fs::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw InvalidInput("cannot write " + tmp.string());
    out << text;
    out.flush();
    if (!out) throw InvalidInput("cannot write " + tmp.string());
  }
  fs::rename(tmp, path);
}

std::string read_text(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw CatalogCorrupt("missing catalog file " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string relation_tag(Relation r) { return r == Relation::oa_iso ? "iso" : "od"; }

Json to_json(const CatalogEntry& e) {
  Json j;
  j["k"] = e.factors;
  j["relation"] = relation_tag(e.relation);
  j["count"] = e.count;
  j["wall_seconds"] = e.wall_seconds;
  Json classes = Json::array();
  for (std::size_t i = 0; i < e.files.size(); ++i) {
    Json c;
    c["file"] = e.files[i];
    c["certificate"] = e.certificates[i];
    c["provenance"] = e.provenance[i];
    c["gwp"] = e.gwp[i];
    c["gwp_tail"] = e.gwp_tail[i];
    c["gma"] = static_cast<bool>(e.gma[i]);
    c["weak_gma"] = static_cast<bool>(e.weak_gma[i]);
    classes.push_back(std::move(c));
  }
  j["classes"] = std::move(classes);
  return j;
}

CatalogEntry entry_from_json(const Json& j) {
  CatalogEntry e;
  e.factors = j.at("k").get<int>();
  e.relation = parse_relation(j.at("relation").get<std::string>());
  e.count = j.at("count").get<std::size_t>();
  e.wall_seconds = j.at("wall_seconds").get<double>();
  for (const auto& c : j.at("classes")) {
    e.files.push_back(c.at("file").get<std::string>());
    e.certificates.push_back(c.at("certificate").get<std::string>());
    e.provenance.push_back(c.at("provenance").get<std::string>());
    e.gwp.push_back(c.at("gwp").get<std::vector<std::string>>());
    e.gwp_tail.push_back(c.at("gwp_tail").get<std::string>());
    e.gma.push_back(c.at("gma").get<bool>());
    e.weak_gma.push_back(c.at("weak_gma").get<bool>());
  }
  return e;
}

Json to_json(const CatalogManifest& m) {
  Json j;
  j["format"] = 1;
  j["runs"] = m.runs;
  j["levels"] = m.levels;
  j["strength"] = m.strength;
  Json entries = Json::array();
  for (const auto& e : m.entries) entries.push_back(to_json(e));
  j["entries"] = std::move(entries);
  return j;
}

fs::path entry_dir(int k, Relation r) { return "k" + std::to_string(k) + "-" + relation_tag(r); }

}  // namespace

const CatalogEntry* CatalogManifest::find(int k, Relation r) const {
  for (const auto& e : entries)
    if (e.factors == k && e.relation == r) return &e;
  return nullptr;
}

const CatalogEntry* CatalogManifest::find(int k) const {
  const CatalogEntry* hit = nullptr;
  for (const auto& e : entries)
    if (e.factors == k) {
      if (hit) return nullptr;
      hit = &e;
    }
  return hit;
}

std::optional<int> CatalogManifest::last_k(Relation r) const {
  std::optional<int> out;
  for (const auto& e : entries)
    if (e.relation == r && (!out || e.factors > *out)) out = e.factors;
  return out;
}

std::optional<CatalogManifest> read_manifest(const fs::path& dir) {
  const fs::path path = dir / kManifestName;
  if (!fs::exists(path)) return std::nullopt;
  try {
    const Json j = Json::parse(read_text(path));
    if (j.at("format").get<int>() != 1) throw CatalogCorrupt("unsupported manifest format");
    CatalogManifest m;
    m.runs = j.at("runs").get<int>();
    m.levels = j.at("levels").get<int>();
    m.strength = j.at("strength").get<int>();
    for (const auto& e : j.at("entries")) m.entries.push_back(entry_from_json(e));
    return m;
  } catch (const nlohmann::json::exception& e) {
    throw CatalogCorrupt("malformed manifest " + path.string() + ": " + e.what());
  } catch (const InvalidInput& e) {
    throw CatalogCorrupt("malformed manifest " + path.string() + ": " + e.what());
  }
}

CatalogEntry write_catalog(const ClassSet& cs, const fs::path& dir, double wall_seconds) {
  fs::create_directories(dir);
  CatalogManifest m = read_manifest(dir).value_or(CatalogManifest{cs.runs, cs.levels, cs.strength, {}});
  if (m.runs != cs.runs || m.levels != cs.levels || m.strength != cs.strength)
    throw InvalidInput("catalog " + dir.string() + " holds different OA parameters");

  CatalogEntry e;
  e.factors = cs.factors;
  e.relation = cs.relation;
  e.count = cs.size();
  e.wall_seconds = wall_seconds;
  const GmaReport report = gma_report(cs);
  const fs::path sub = entry_dir(cs.factors, cs.relation);
  fs::create_directories(dir / sub);
  for (std::size_t i = 0; i < cs.size(); ++i) {
    const auto& member = cs.members[i];
    const fs::path file = sub / (member.certificate.digest() + ".oad");
    if (std::ranges::find(e.files, file.generic_string()) != e.files.end())
      throw InvalidInput("two members share a certificate digest");
    write_atomically(dir / file, to_oad(member.design));
    e.files.push_back(file.generic_string());
    e.certificates.push_back(member.certificate.hex());
    e.provenance.push_back(member.provenance);
    std::vector<std::string> a;
    for (const auto& v : report.classes[i].gwp.a) a.push_back(v.str());
    e.gwp.push_back(std::move(a));
    e.gwp_tail.push_back(format_gwp_tail(report.classes[i].gwp, cs.strength));
    e.gma.push_back(report.classes[i].gma);
    e.weak_gma.push_back(report.classes[i].weak_gma);
  }

  std::vector<std::string> stale;
  auto it = std::ranges::find_if(m.entries, [&](const CatalogEntry& x) {
    return x.factors == e.factors && x.relation == e.relation;
  });
  if (it != m.entries.end()) {
    for (const auto& f : it->files)
      if (std::ranges::find(e.files, f) == e.files.end()) stale.push_back(f);
    *it = e;
  } else {
    m.entries.push_back(e);
  }
  std::ranges::sort(m.entries, [](const CatalogEntry& a, const CatalogEntry& b) {
    return std::pair(a.factors, a.relation) < std::pair(b.factors, b.relation);
  });
  write_atomically(dir / kManifestName, to_json(m).dump(2) + "\n");
  for (const auto& f : stale) fs::remove(dir / f);
  return e;
}

ClassSet read_catalog(const fs::path& dir, int k, Relation r) {
  const auto m = read_manifest(dir);
  if (!m) throw InvalidInput("no catalog manifest in " + dir.string());
  const CatalogEntry* e = m->find(k, r);
  if (!e) throw InvalidInput("catalog has no " + relation_tag(r) + " entry for k=" + std::to_string(k));
  if (e->count != e->files.size()) throw CatalogCorrupt("class count differs from the number of files");
  ClassSet cs{m->runs, k, m->levels, m->strength, r, {}};
  std::set<std::string> seen;
  for (std::size_t i = 0; i < e->files.size(); ++i) {
    if (!seen.insert(e->certificates[i]).second) throw CatalogCorrupt("duplicate certificate in manifest");
    Design d;
    try {
      d = parse_oad(read_text(dir / e->files[i]));
    } catch (const InvalidInput& err) {
      throw CatalogCorrupt(e->files[i] + ": " + err.what());
    }
    if (d.runs() != m->runs || d.factors() != k || d.levels() != m->levels)
      throw CatalogCorrupt(e->files[i] + ": dimensions differ from the manifest");
    if (!verify_strength(d, std::min(m->strength, k)))
      throw CatalogCorrupt(e->files[i] + ": design fails the strength check");
    Certificate c = design_certificate(d, r);
    if (c.hex() != e->certificates[i]) throw CatalogCorrupt(e->files[i] + ": certificate mismatch");
    cs.members.push_back({std::move(d), std::move(c), e->provenance[i]});
  }
  return cs;
}

ClassSet read_catalog(const fs::path& dir, int k) {
  const auto m = read_manifest(dir);
  if (!m) throw InvalidInput("no catalog manifest in " + dir.string());
  const CatalogEntry* e = m->find(k);
  if (!e) throw InvalidInput("catalog has no unique entry for k=" + std::to_string(k));
  return read_catalog(dir, k, e->relation);
}

}  // namespace oaenum
