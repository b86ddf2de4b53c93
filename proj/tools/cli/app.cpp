#include "app.hpp"

#include <chrono>
#include <map>
#include <ostream>

#include <CLI11.hpp>

#include "cache.hpp"
#include "commands.hpp"

#ifndef MARKOFF_VERSION
#define MARKOFF_VERSION "0.0.0"
#endif

namespace markoff::cli {

const char* version() { return MARKOFF_VERSION; }

namespace {

struct Flags {
  Params params;
  std::string level;
  std::string cache_dir;
  bool no_cache = false;
  bool timings = false;
};

void add_options(CLI::App& sub, const std::string& name, Flags& f) {
  Params& ps = f.params;
  const auto any = [&name](std::initializer_list<const char*> names) {
    for (const char* n : names)
      if (name == n) return true;
    return false;
  };
  if (any({"classify", "census", "certify", "primitivity", "charsum", "prop56", "orders", "t2", "enumerate"})) {
    sub.add_option("--p", ps.p, "Prime modulus");
  }
  if (any({"enumerate", "composite"})) sub.add_option("--n", ps.n, "Square-free modulus");
  if (any({"classify", "charsum", "prop56", "scan"})) sub.add_option("--x", ps.x, "Coordinate value");
  if (any({"orders", "scan"})) {
    sub.add_option("--x-max", ps.x_max, "Upper bound for the prime scan");
    sub.add_option("--C", ps.C, "Threshold constant for small orders (default 32)");
    sub.add_option("--spacing", ps.spacing, "Checkpoint spacing (default 10)");
  }
  if (any({"enumerate", "primitivity", "composite"})) {
    sub.add_option("--level", f.level, "Action level")->check(CLI::IsMember({"solutions", "blocks"}));
  }
  if (name == "scan") {
    sub.add_option("--task", ps.task, "Per-prime subcommand to run")->required();
    sub.add_option("--lo", ps.lo, "Smallest prime (default 5)");
    sub.add_option("--hi", ps.hi, "Largest prime");
    sub.add_option("--residue", ps.residue, "Residue filter mod 4")->check(CLI::IsMember({"all", "1", "3"}));
    sub.add_flag("--progress", ps.progress, "Report progress on stderr");
  }
  sub.add_option("--format", ps.format, "Output format")->check(CLI::IsMember({"json", "csv", "binary"}));
  sub.add_option("--seed", ps.seed, "Seed for randomized internals");
  sub.add_option("--workers", ps.workers, "Worker threads")->check(CLI::Range(1u, 256u));
  sub.add_option("--cache-dir", f.cache_dir, "Run cache directory (overrides MARKOFF_CACHE_DIR)");
  sub.add_flag("--no-cache", f.no_cache, "Neither read nor write the run cache");
  sub.add_flag("--timings", f.timings, "Include wall-clock timings in the output");
}

void emit(std::ostream& out, const json& payload, const std::string& text, const std::string& format,
          const json* timings) {
  if (format == "json") {
    json shown = payload;
    if (timings) shown["timings"] = *timings;
    out << shown.dump(2) << '\n';
  } else {
    out << text;
  }
}

}  // namespace

int run_app(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Markoff triples modulo n: enumeration, group action certificates and character sums", "markoff"};
  app.require_subcommand(1, 1);
  app.set_version_flag("--version", version());
  std::map<std::string, Flags> flags;
  static const std::map<std::string, std::string> about = {
      {"enumerate", "List X*(n) as json, csv or packed binary"},
      {"classify", "Hyperbolic/elliptic/parabolic class and omega order of each x mod p"},
      {"census", "Check rot1 cycle structure on every conic section of Y*(p)"},
      {"certify", "Transitivity, primitivity and Alt/Sym certificate for Y*(p)"},
      {"primitivity", "Primitivity test at block or solution level"},
      {"composite", "Orbit census on X*(n) and Y*(n) for square-free n"},
      {"charsum", "Joint quadratic-character counts along conic sections"},
      {"prop56", "Sign-pattern count for a maximal elliptic x"},
      {"orders", "Order of the unit (3 + sqrt 5)/2 mod p, or a scan up to --x-max"},
      {"t2", "Trace-triple bijection and Nielsen moves on PSL(2,p)"},
      {"scan", "Run one per-prime subcommand over a prime range"},
  };
  for (const auto& name : kSubcommands) add_options(*app.add_subcommand(name, about.at(name)), name, flags[name]);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitPass : kExitUsage;
  }

  const std::string name = app.get_subcommands().front()->get_name();
  Flags& f = flags[name];
  if (!f.level.empty()) f.params.level = f.level == "blocks" ? Level::Blocks : Level::Solutions;

  const json params = canonical_params(name, f.params);
  std::optional<RunCache> cache;
  std::string key;
  try {
    if (!f.no_cache) {
      cache.emplace(resolve_cache_dir(f.cache_dir));
      key = RunCache::key_of(params, version());
      if (auto hit = cache->lookup(key)) {
        const json timings = {{"wall_seconds", (*hit)["wall_seconds"]}, {"cached", true}};
        emit(out, (*hit)["payload"], (*hit).value("text", ""), f.params.format, f.timings ? &timings : nullptr);
        if ((*hit).value("incomplete", false)) return kExitUsage;
        return (*hit).value("verdict", "pass") == "pass" ? kExitPass : kExitFalsified;
      }
    }

    const auto start = std::chrono::steady_clock::now();
    Outcome o = execute(name, f.params);
    const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    json timings = o.timings;
    timings["wall_seconds"] = wall;

    if (cache) {
      json record = {{"key", key},
                     {"params", params},
                     {"version", version()},
                     {"payload", o.payload},
                     {"verdict", o.verdict == Verdict::Pass ? "pass" : "falsified"},
                     {"incomplete", o.incomplete},
                     {"wall_seconds", wall}};
      // Binary bodies are not valid UTF-8 and are recomputed instead.
      if (f.params.format == "csv") record["text"] = o.text;
      if (f.params.format != "binary") cache->append(record);
    }
    emit(out, o.payload, o.text, f.params.format, f.timings ? &timings : nullptr);
    if (o.incomplete) return kExitUsage;
    return o.verdict == Verdict::Pass ? kExitPass : kExitFalsified;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::domain_error& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
}

}  // namespace markoff::cli
