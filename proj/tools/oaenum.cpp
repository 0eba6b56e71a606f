// Command-line front end: seed, extend, reduce, expand-od, rank, verify, stats.

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "oaenum/catalog.hpp"
#include "oaenum/extend.hpp"
#include "oaenum/gwp.hpp"

using namespace oaenum;
namespace fs = std::filesystem;

namespace {

enum Exit { kOk = 0, kEmpty = 1, kUsage = 2, kInternal = 3 };

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

int default_jobs() {
  if (const char* env = std::getenv("OAENUM_JOBS")) {
    try {
      const int j = std::stoi(env);
      if (j > 0) return j;
    } catch (const std::exception&) {
    }
    std::cerr << "warning: ignoring OAENUM_JOBS=" << env << '\n';
  }
  return 1;
}

std::string label(int runs, int k, int s, int t) {
  return "OA(" + std::to_string(runs) + "," + std::to_string(k) + "," + std::to_string(s) + "," +
         std::to_string(t) + ")";
}

struct SeedArgs {
  int runs = 0, levels = 2, strength = 0;
  std::string out, reduce = "iso";
};

int run_seed(const SeedArgs& a) {
  const auto start = Clock::now();
  const ClassSet cs = seed(a.runs, a.levels, a.strength, parse_relation(a.reduce));
  write_catalog(cs, a.out, seconds_since(start));
  std::cout << label(a.runs, a.strength, a.levels, a.strength) << ": 1 class written to " << a.out << '\n';
  return kOk;
}

struct ExtendArgs {
  std::string catalog, method = "compressed", reduce = "iso", pruning = "orbit";
  int to = 0, jobs = 1;
  bool quiet = false;
};

int run_extend(const ExtendArgs& a) {
  const auto manifest = read_manifest(a.catalog);
  if (!manifest) throw InvalidInput("no catalog in " + a.catalog + "; run seed first");
  ExtendOptions opts;
  opts.method = parse_method(a.method);
  opts.reduce = parse_relation(a.reduce);
  opts.pruning = parse_pruning(a.pruning);
  opts.jobs = a.jobs;
  opts.log = a.quiet ? nullptr : &std::cerr;

  // Continue from the last level reduced under the requested relation, or
  // from the seed level, which is a singleton under either relation.
  ClassSet current;
  if (const auto k = manifest->last_k(opts.reduce)) {
    current = read_catalog(a.catalog, *k, opts.reduce);
  } else {
    const CatalogEntry* e = manifest->find(manifest->strength);
    if (!e) throw InvalidInput("catalog has no " + a.reduce + " level to extend");
    current = read_catalog(a.catalog, e->factors, e->relation);
  }
  if (current.factors >= a.to) {
    std::cout << label(current.runs, current.factors, current.levels, current.strength) << ": already present\n";
    return current.empty() ? kEmpty : kOk;
  }
  while (current.factors < a.to) {
    if (current.empty()) break;
    const auto start = Clock::now();
    ClassSet next = extend_all(current, opts);
    const double secs = seconds_since(start);
    write_catalog(next, a.catalog, secs);
    std::cout << label(next.runs, next.factors, next.levels, next.strength) << ": " << next.size() << ' '
              << to_string(next.relation) << " classes (" << secs << " s)\n";
    current = std::move(next);
  }
  if (current.empty()) {
    std::cout << label(current.runs, current.factors, current.levels, current.strength)
              << ": nonexistent; no design extends to k=" << current.factors << '\n';
    return kEmpty;
  }
  return kOk;
}

int run_reduce(const std::vector<std::string>& files, const std::string& relation) {
  const Relation r = parse_relation(relation);
  std::vector<Design> designs;
  for (const auto& f : files) designs.push_back(read_oad(f));
  std::vector<Certificate> seen;
  std::size_t kept = 0;
  for (std::size_t i = 0; i < designs.size(); ++i) {
    if (i > 0 && (designs[i].runs() != designs[0].runs() || designs[i].factors() != designs[0].factors() ||
                  designs[i].levels() != designs[0].levels()))
      throw InvalidInput(files[i] + ": dimensions differ from " + files[0]);
    Certificate c = design_certificate(designs[i], r);
    if (std::find(seen.begin(), seen.end(), c) != seen.end()) continue;
    seen.push_back(std::move(c));
    std::cout << files[i] << '\n';
    ++kept;
  }
  std::cerr << kept << " " << to_string(r) << " classes among " << files.size() << " designs\n";
  return kOk;
}

int run_expand_od(const std::string& catalog, int k) {
  const ClassSet od = read_catalog(catalog, k, Relation::od_equiv);
  const auto start = Clock::now();
  const auto reps = od.designs();
  ClassSet iso{od.runs, od.factors, od.levels, od.strength, Relation::oa_iso, {}};
  for (auto& d : od_expand_to_iso(std::span<const Design>(reps))) {
    Certificate c = design_certificate(d, Relation::oa_iso);
    iso.members.push_back({std::move(d), std::move(c), "expanded from od classes"});
  }
  write_catalog(iso, catalog, seconds_since(start));
  std::cout << label(iso.runs, k, iso.levels, iso.strength) << ": " << od.size() << " od classes expand to "
            << iso.size() << " iso classes\n";
  return iso.empty() ? kEmpty : kOk;
}

int run_rank(const std::string& catalog, int k, const std::string& relation) {
  const ClassSet cs = relation.empty() ? read_catalog(catalog, k) : read_catalog(catalog, k, parse_relation(relation));
  std::cout << format_report(gma_report(cs));
  return cs.empty() ? kEmpty : kOk;
}

int run_verify(const std::string& file, int t) {
  const Design d = read_oad(file);
  if (t > d.factors()) throw InvalidInput("strength exceeds the number of factors");
  if (verify_strength(d, t)) {
    std::cout << file << ": strength " << t << " holds\n";
    return kOk;
  }
  std::cout << file << ": strength " << t << " fails (maximum strength " << max_strength(d) << ")\n";
  return kEmpty;
}

int run_stats(const std::string& file) {
  const Design d = read_oad(file);
  const Gwp a = gwp(d);
  const DistanceDistribution b = distance_distribution(d);
  std::cout << "N=" << d.runs() << " k=" << d.factors() << " s=" << d.levels()
            << " strength=" << max_strength(d) << '\n';
  std::cout << "GWP";
  for (std::size_t i = 0; i < a.a.size(); ++i) std::cout << " A" << i << '=' << a.a[i].str();
  std::cout << "\nGWP (2 d.p.)";
  for (std::size_t i = 0; i < a.a.size(); ++i) std::cout << ' ' << format_decimal(a.a[i], 2);
  std::cout << "\ndistance";
  for (std::size_t i = 0; i < b.b.size(); ++i) std::cout << " B" << i << '=' << b.b[i].str();
  std::cout << "\ndistance (3 d.p.) (" << format_distance(b) << ")\n";
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Enumerate non-isomorphic orthogonal arrays"};
  app.require_subcommand(1);

  SeedArgs seed_args;
  auto* seed_cmd = app.add_subcommand("seed", "Write the k = t full-factorial seed to a new catalog");
  seed_cmd->add_option("--runs", seed_args.runs, "Run size N")->required();
  seed_cmd->add_option("--levels", seed_args.levels, "Levels s")->capture_default_str();
  seed_cmd->add_option("--strength", seed_args.strength, "Strength t")->required();
  seed_cmd->add_option("--out", seed_args.out, "Catalog directory")->required();
  seed_cmd->add_option("--reduce", seed_args.reduce, "iso or od")->capture_default_str();

  ExtendArgs ext;
  ext.jobs = default_jobs();
  auto* ext_cmd = app.add_subcommand("extend", "Extend the catalog's last level up to --to factors");
  ext_cmd->add_option("--catalog", ext.catalog, "Catalog directory")->required();
  ext_cmd->add_option("--to", ext.to, "Target number of factors")->required();
  ext_cmd->add_option("--method", ext.method, "identity, full or compressed")->capture_default_str();
  ext_cmd->add_option("--reduce", ext.reduce, "iso or od")->capture_default_str();
  ext_cmd->add_option("--pruning", ext.pruning, "off or orbit")->capture_default_str();
  ext_cmd->add_option("--jobs", ext.jobs, "Worker threads (default from OAENUM_JOBS)")->capture_default_str();
  ext_cmd->add_flag("--quiet", ext.quiet, "No per-representative progress lines");

  std::vector<std::string> reduce_files;
  std::string reduce_relation = "iso";
  auto* reduce_cmd = app.add_subcommand("reduce", "Print one .oad file per class");
  reduce_cmd->add_option("--in", reduce_files, ".oad files")->required()->check(CLI::ExistingFile);
  reduce_cmd->add_option("--relation", reduce_relation, "iso or od")->capture_default_str();

  std::string catalog;
  int k = 0;
  auto* expand_cmd = app.add_subcommand("expand-od", "Expand od classes at k to isomorphism classes");
  expand_cmd->add_option("--catalog", catalog, "Catalog directory")->required();
  expand_cmd->add_option("--k", k, "Number of factors")->required();

  std::string rank_relation;
  auto* rank_cmd = app.add_subcommand("rank", "GWP and distance distribution per class, GMA flagged");
  rank_cmd->add_option("--catalog", catalog, "Catalog directory")->required();
  rank_cmd->add_option("--k", k, "Number of factors")->required();
  rank_cmd->add_option("--relation", rank_relation, "iso or od when both are stored");

  std::string file;
  int strength = 0;
  auto* verify_cmd = app.add_subcommand("verify", "Check the strength of a .oad design");
  verify_cmd->add_option("--file", file, ".oad file")->required()->check(CLI::ExistingFile);
  verify_cmd->add_option("--strength", strength, "Strength t")->required();

  auto* stats_cmd = app.add_subcommand("stats", "GWP and distance distribution of a .oad design");
  stats_cmd->add_option("--file", file, ".oad file")->required()->check(CLI::ExistingFile);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*seed_cmd) return run_seed(seed_args);
    if (*ext_cmd) return run_extend(ext);
    if (*reduce_cmd) return run_reduce(reduce_files, reduce_relation);
    if (*expand_cmd) return run_expand_od(catalog, k);
    if (*rank_cmd) return run_rank(catalog, k, rank_relation);
    if (*verify_cmd) return run_verify(file, strength);
    if (*stats_cmd) return run_stats(file);
  } catch (const InvalidInput& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const fs::filesystem_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const CatalogCorrupt& e) {
    std::cerr << "catalog corrupt: " << e.what() << '\n';
    return kInternal;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return kInternal;
  }
  return kUsage;
}
