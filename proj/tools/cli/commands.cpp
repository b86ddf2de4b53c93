#include "commands.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <iostream>
#include <mutex>
#include <sstream>
#include <thread>

#include "json_report.hpp"
#include "markoff/charsum.hpp"
#include "markoff/composite.hpp"
#include "markoff/quadorder.hpp"
#include "markoff/t2.hpp"

namespace markoff::cli {

namespace {

u64 need(const std::optional<u64>& v, const char* flag) {
  if (!v) throw UsageError(std::string("missing required flag ") + flag);
  return *v;
}

u64 need_prime(const Params& ps, u64 min = 2) {
  const u64 p = need(ps.p, "--p");
  if (!is_prime(p)) throw UsageError("--p " + std::to_string(p) + " is not prime");
  if (p < min) throw UsageError("--p must be at least " + std::to_string(min));
  return p;
}

void formats(const Params& ps, std::initializer_list<const char*> allowed) {
  for (const char* f : allowed)
    if (ps.format == f) return;
  throw UsageError("format " + ps.format + " is not available for this subcommand");
}

Verdict verdict_of(bool ok) { return ok ? Verdict::Pass : Verdict::Falsified; }

Outcome run_enumerate(const Params& ps) {
  formats(ps, {"json", "csv", "binary"});
  const u64 n = ps.n ? *ps.n : need(ps.p, "--n");
  const SolutionTable table = SolutionTable::build(n);
  Outcome o;
  o.payload = {{"n", n}, {"solutions", table.size()}, {"blocks", table.block_count()}, {"empty", table.empty()}};
  std::ostringstream os;
  if (ps.format == "binary") {
    table.write_binary(os);
  } else if (ps.format == "csv") {
    if (ps.level.value_or(Level::Solutions) == Level::Solutions) {
      table.write_csv(os);
    } else {
      os << "x,y,z\n";
      for (u32 b = 0; b < table.block_count(); ++b) {
        const Triple t = table.triple(table.block_rep(b));
        os << t.x << ',' << t.y << ',' << t.z << '\n';
      }
    }
  }
  o.text = os.str();
  return o;
}

Outcome run_classify(const Params& ps) {
  formats(ps, {"json"});
  const u64 p = need_prime(ps, 3);
  const Fp2 F(p);
  json rows = json::array();
  const auto row = [&](u64 x) {
    const CoordClass c = classify(x, F.base());
    u64 w = 0, d = p;
    if (c != CoordClass::Parabolic) {
      const Fp2Elem om = omega_of(x, F);
      w = F.order(om);
      d = std::max(w, F.order(F.neg(om))) / 2;
    }
    rows.push_back({{"x", x}, {"class", to_string(c)}, {"omega_order", w}, {"d", d}});
  };
  if (ps.x) {
    row(*ps.x % p);
  } else {
    for (u64 x = 0; x < p; ++x) row(x);
  }
  Outcome o;
  o.payload = {{"p", p}, {"rows", rows}};
  return o;
}

Outcome run_census(const Params& ps) {
  formats(ps, {"json"});
  const CensusReport r = census_verify(need_prime(ps, 5));
  Outcome o;
  o.payload = r;
  o.verdict = verdict_of(r.pass());
  return o;
}

Outcome run_certify(const Params& ps) {
  formats(ps, {"json"});
  const CertificateChain c = certify(need_prime(ps, 5));
  Outcome o;
  o.payload = c;
  o.timings = certificate_timings(c);
  const bool parity_ok = (c.parity_class == Conclusion::Alt) == c.expected_alt;
  o.verdict = verdict_of(c.conclusion != Conclusion::Inconclusive && parity_ok);
  return o;
}

Outcome run_primitivity(const Params& ps) {
  formats(ps, {"json"});
  const u64 p = need_prime(ps, 5);
  const Level level = ps.level.value_or(Level::Blocks);
  const SolutionTable table = SolutionTable::build(p);
  PrimitivityOptions opts;
  opts.seed = ps.seed;
  Outcome o;
  const auto images = generator_images(table, kDefaultGens, level);
  std::vector<Permutation> perms;
  for (const auto& g : images) perms.push_back(g.perm);
  const std::size_t degree = level == Level::Blocks ? table.block_count() : table.size();
  PrimitivityResult r;
  if (orbits(perms, degree).transitive()) {
    r = level == Level::Blocks ? primitivity(table, kDefaultGens, opts) : primitivity(perms, degree, opts);
  }
  o.payload = r;
  o.payload["p"] = p;
  o.payload["level"] = to_string(level);
  o.payload["degree"] = degree;
  // Solution level is imprimitive by construction; only the block level is a claim.
  o.verdict = verdict_of(level == Level::Solutions || (r.transitive && r.primitive));
  return o;
}

Outcome run_composite(const Params& ps) {
  formats(ps, {"json", "csv"});
  const u64 n = ps.n ? *ps.n : need(ps.p, "--n");
  CompositeOptions opts;
  if (ps.level) {
    opts.solutions = *ps.level == Level::Solutions;
    opts.blocks = *ps.level == Level::Blocks;
  }
  const ProductOrbitReport r = composite_transitivity(n, kDefaultGens, opts);
  Outcome o;
  o.payload = r;
  // Convenience fields for the headline action.
  const OrbitCensus& main = opts.solutions ? r.solutions : r.blocks;
  o.payload["transitive"] = r.empty || main.transitive();
  o.payload["orbit"] = main.start_orbit;
  o.timings["composite"] = r.seconds;
  bool ok = true;
  if (!r.empty) {
    if (opts.solutions) ok = ok && r.solutions.transitive();
    if (opts.blocks) ok = ok && r.blocks.transitive();
  }
  o.verdict = verdict_of(ok);
  if (ps.format == "csv") {
    std::ostringstream os;
    write_histogram_csv(os, main);
    o.text = os.str();
  }
  return o;
}

Outcome run_charsum(const Params& ps) {
  formats(ps, {"json", "csv"});
  const u64 p = need_prime(ps, 5);
  std::vector<u64> xs;
  if (ps.x) {
    xs.push_back(*ps.x % p);
  } else {
    for (u64 x = 0; x <= (p - 1) / 2; ++x) xs.push_back(x);
  }
  json rows = json::array();
  json skipped = json::array();
  std::ostringstream os;
  write_csv_header(os);
  bool ok = true;
  for (u64 x : xs) {
    try {
      const auto [first, second] = default_pairs(p, x);
      const JointSignCount c = no_correlation_count(p, x, first, second);
      json row = c;
      row["first"] = first;
      row["second"] = second;
      rows.push_back(row);
      write_csv_row(os, c);
      ok = ok && c.pass;
    } catch (const std::invalid_argument& e) {
      if (ps.x) throw UsageError(e.what());
      skipped.push_back({{"x", x}, {"reason", e.what()}});
    }
  }
  Outcome o;
  o.payload = {{"p", p}, {"rows", rows}, {"skipped", skipped}};
  o.verdict = verdict_of(ok);
  if (ps.format == "csv") o.text = os.str();
  return o;
}

Outcome run_prop56(const Params& ps) {
  formats(ps, {"json", "csv"});
  const u64 p = need_prime(ps, 7);
  if (p % 4 != 3) throw UsageError("prop56 needs p = 3 (mod 4)");
  u64 x = 0;
  if (ps.x) {
    x = *ps.x % p;
  } else {
    const auto maximal = maximal_elliptic(p);
    if (maximal.empty()) throw UsageError("no elliptic x of maximal order");
    x = maximal.front();
  }
  JointSignCount c;
  try {
    c = prop56_count(p, x);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  Outcome o;
  o.payload = {{"p", p}, {"count", c}, {"N_mp", c.n(-1, 1)}, {"bound_asserted", p > 121}};
  if (p != 11) o.payload["witness"] = find_elliptic_order4(p);
  o.verdict = verdict_of(c.pass);
  if (ps.format == "csv") {
    std::ostringstream os;
    write_csv_header(os);
    write_csv_row(os, c);
    o.text = os.str();
  }
  return o;
}

ScanOptions orders_options(const Params& ps) {
  ScanOptions opts;
  opts.C = ps.C.value_or(32.0);
  opts.spacing = ps.spacing;
  opts.workers = ps.workers;
  return opts;
}

Outcome orders_summary(const Params& ps, u64 x_max) {
  formats(ps, {"json", "csv"});
  if (x_max < 2) throw UsageError("--x-max must be at least 2");
  ScanSummary s;
  try {
    s = scan(x_max, orders_options(ps));
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  Outcome o;
  o.payload = s;
  o.verdict = verdict_of(s.divisibility_failures.empty());
  if (ps.format == "csv") {
    std::ostringstream os;
    write_records_csv(os, s.records);
    o.text = os.str();
  }
  return o;
}

Outcome run_orders(const Params& ps) {
  if (!ps.p) return orders_summary(ps, need(ps.x_max, "--p or --x-max"));
  formats(ps, {"json", "csv"});
  const OrderRecord r = op_order(need_prime(ps));
  Outcome o;
  o.payload = r;
  o.verdict = verdict_of(r.p == 2 || r.p == 5 || r.divides);
  if (ps.format == "csv") {
    std::ostringstream os;
    write_records_csv(os, {r});
    o.text = os.str();
  }
  return o;
}

Outcome run_t2(const Params& ps) {
  formats(ps, {"json"});
  const u64 p = need_prime(ps, 5);
  if (p > kDefaultT2MaxPrime) throw UsageError("t2 is limited to p <= " + std::to_string(kDefaultT2MaxPrime));
  const BijectionReport b = verify_bijection(p, ps.seed);
  const NielsenReport n = nielsen_check(p);
  Outcome o;
  o.payload = {{"p", p}, {"bijection", b}, {"nielsen", n}, {"pass", b.pass && n.pass}};
  o.verdict = verdict_of(b.pass && n.pass);
  return o;
}

Outcome dispatch(const std::string& sub, const Params& ps);

Outcome run_scan(const Params& ps) {
  const std::string& task = ps.task;
  if (std::find(kScanTasks.begin(), kScanTasks.end(), task) == kScanTasks.end()) {
    throw UsageError("scan needs --task, one of enumerate, classify, census, certify, primitivity, charsum, prop56, "
                     "orders, t2");
  }
  const u64 hi = ps.hi ? *ps.hi : need(ps.x_max, "--hi");
  if (task == "orders") return orders_summary(ps, hi);
  if (ps.residue != "all" && ps.residue != "1" && ps.residue != "3") throw UsageError("--residue must be all, 1 or 3");
  if (ps.format != "json" && !(ps.format == "csv" && task == "charsum")) {
    throw UsageError("scan output is json, or csv for the charsum task");
  }

  std::vector<u64> primes;
  for (u64 p : primes_in(ps.lo, hi)) {
    if (ps.residue == "1" && p % 4 != 1) continue;
    if (ps.residue == "3" && p % 4 != 3) continue;
    primes.push_back(p);
  }

  struct Slot {
    std::optional<Outcome> outcome;
    std::string error;
  };
  std::vector<Slot> slots(primes.size());
  std::atomic<std::size_t> next{0};
  std::atomic<std::size_t> done{0};
  std::mutex progress_mutex;
  const std::size_t step = std::max<std::size_t>(1, primes.size() / 10);
  const auto worker = [&] {
    for (std::size_t i = next++; i < primes.size(); i = next++) {
      Params one = ps;
      one.p = primes[i];
      one.x_max.reset();
      one.workers = 1;
      try {
        slots[i].outcome = dispatch(task, one);
      } catch (const std::exception& e) {
        slots[i].error = e.what();
      }
      const std::size_t k = ++done;
      if (ps.progress && (k % step == 0 || k == primes.size())) {
        std::lock_guard lock(progress_mutex);
        std::cerr << "scan " << task << ": " << k << '/' << primes.size() << '\n';
      }
    }
  };
  const unsigned workers = std::max(1u, ps.workers);
  if (workers == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }

  json records = json::array();
  json errors = json::array();
  json falsified = json::array();
  std::string csv;
  for (std::size_t i = 0; i < primes.size(); ++i) {
    if (!slots[i].outcome) {
      errors.push_back({{"p", primes[i]}, {"error", slots[i].error}});
      continue;
    }
    const Outcome& r = *slots[i].outcome;
    const bool pass = r.verdict == Verdict::Pass;
    records.push_back({{"p", primes[i]}, {"pass", pass}, {"result", r.payload}});
    if (!pass) falsified.push_back(primes[i]);
    if (!r.text.empty()) csv += csv.empty() ? r.text : r.text.substr(r.text.find('\n') + 1);
  }
  Outcome o;
  o.payload = {{"task", task},
               {"lo", ps.lo},
               {"hi", hi},
               {"residue", ps.residue},
               {"count", records.size()},
               {"records", records},
               {"errors", errors},
               {"falsified", falsified}};
  o.verdict = verdict_of(falsified.empty());
  o.incomplete = !errors.empty();
  o.text = csv;
  return o;
}

Outcome dispatch(const std::string& sub, const Params& ps) {
  if (sub == "enumerate") return run_enumerate(ps);
  if (sub == "classify") return run_classify(ps);
  if (sub == "census") return run_census(ps);
  if (sub == "certify") return run_certify(ps);
  if (sub == "primitivity") return run_primitivity(ps);
  if (sub == "composite") return run_composite(ps);
  if (sub == "charsum") return run_charsum(ps);
  if (sub == "prop56") return run_prop56(ps);
  if (sub == "orders") return run_orders(ps);
  if (sub == "t2") return run_t2(ps);
  if (sub == "scan") return run_scan(ps);
  throw UsageError("unknown subcommand " + sub);
}

}  // namespace

json canonical_params(const std::string& subcommand, const Params& ps) {
  json j = {{"subcommand", subcommand}, {"format", ps.format}, {"seed", ps.seed}, {"spacing", ps.spacing}};
  const auto opt = [&j](const char* key, const auto& v) {
    if (v) j[key] = *v;
  };
  opt("p", ps.p);
  opt("n", ps.n);
  opt("x", ps.x);
  opt("x_max", ps.x_max);
  opt("C", ps.C);
  if (ps.level) j["level"] = to_string(*ps.level);
  if (subcommand == "scan") {
    j["task"] = ps.task;
    j["lo"] = ps.lo;
    opt("hi", ps.hi);
    j["residue"] = ps.residue;
  }
  return j;
}

Outcome execute(const std::string& subcommand, const Params& params) {
  const u64 previous = rho_seed();
  set_rho_seed(params.seed);
  try {
    Outcome o = dispatch(subcommand, params);
    set_rho_seed(previous);
    return o;
  } catch (const LimitExceeded& e) {
    set_rho_seed(previous);
    throw UsageError(e.what());
  } catch (...) {
    set_rho_seed(previous);
    throw;
  }
}

}  // namespace markoff::cli
