// Acceptance suite: one PASS/FAIL line per criterion. Tolerances and runtime
// budgets are fixed below; nothing here is tuned to make a criterion pass.

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <iomanip>
#include <iostream>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "app.hpp"
#include "markoff/action.hpp"
#include "markoff/charsum.hpp"
#include "markoff/composite.hpp"
#include "markoff/ff.hpp"
#include "markoff/poly.hpp"
#include "markoff/quadorder.hpp"
#include "markoff/surface.hpp"
#include "markoff/t2.hpp"

using namespace markoff;

namespace {

struct Result {
  bool pass = true;
  std::string detail;
  void fail(const std::string& why) {
    if (pass) detail.clear();
    if (!detail.empty()) detail += "; ";
    detail += why;
    pass = false;
  }
};

struct Criterion {
  int id;
  const char* name;
  double budget_seconds;
  std::function<Result()> run;
};

std::string str(double v) {
  std::ostringstream os;
  os << v;
  return os.str();
}

Result check_counts() {
  Result r;
  u64 checked = 0;
  for (u64 p : primes_in(5, 500)) {
    const u64 want = p % 4 == 1 ? p * (p + 3) / 4 : p * (p - 3) / 4;
    const u64 got = SolutionTable::build(p).block_count();
    if (got != want) r.fail("p=" + std::to_string(p) + " blocks " + std::to_string(got) + " != " + std::to_string(want));
    ++checked;
  }
  const u64 y2 = SolutionTable::build(2).block_count();
  if (y2 != 4) r.fail("|Y*(2)| = " + std::to_string(y2));
  if (!SolutionTable::build(3).empty()) r.fail("Y*(3) not empty");
  if (r.pass) r.detail = std::to_string(checked) + " primes, |Y*(2)| = 4, Y*(3) empty";
  return r;
}

Result check_cycle_census() {
  Result r;
  u64 rows = 0;
  for (u64 p : primes_in(5, 200)) {
    const CensusReport c = census_verify(p);
    rows += c.rows.size();
    for (const auto& m : c.mismatches) r.fail("p=" + std::to_string(p) + ": " + m);
    // The parabolic conic C_1(+-2) is one p-cycle when p = 1 (mod 4).
    if (p % 4 == 1) {
      bool seen = false;
      for (const CycleCensus& row : c.rows) {
        if (row.x != 2) continue;
        seen = true;
        const auto& len = row.measured.lengths;
        if (!(len.size() == 1 && len.front().first == p && len.front().second == 1))
          r.fail("p=" + std::to_string(p) + ": C1(+-2) is not a single p-cycle");
      }
      if (!seen) r.fail("p=" + std::to_string(p) + ": no row for x = 2");
    }
  }
  if (r.pass) r.detail = std::to_string(rows) + " conic sections match";
  return r;
}

Result check_transitivity() {
  Result r;
  u64 checked = 0;
  for (u64 p : primes_in(5, 1000)) {
    const SolutionTable t = SolutionTable::build(p);
    const auto sol = orbits(t, kDefaultGens, Level::Solutions).count();
    const auto blk = orbits(t, kDefaultGens, Level::Blocks).count();
    if (sol != 1) r.fail("p=" + std::to_string(p) + " X* has " + std::to_string(sol) + " orbits");
    if (blk != 1) r.fail("p=" + std::to_string(p) + " Y* has " + std::to_string(blk) + " orbits");
    ++checked;
  }
  if (r.pass) r.detail = std::to_string(checked) + " primes, single orbit on X* and Y*";
  return r;
}

Result check_certificates() {
  Result r;
  u64 sym = 0, alt = 0;
  for (u64 p : primes_in(5, 200)) {
    const CertificateChain c = certify(p);
    const std::string tag = "p=" + std::to_string(p);
    const bool expect_alt = p % 16 == 3;
    if (c.expected_alt != expect_alt) r.fail(tag + " wrong mod-16 expectation");
    if (!c.transitive) r.fail(tag + " not transitive");
    if (!c.primitive) r.fail(tag + " not primitive");
    if (p % 4 == 1) {
      if (!c.pcycle_ok) r.fail(tag + " no p-cycle");
      if (c.conclusion != Conclusion::Sym) r.fail(tag + " conclusion " + to_string(c.conclusion));
    } else {
      const u64 want = (p + 1) * (p - 3) / 8;
      if (!c.fixed_points || *c.fixed_points != want)
        r.fail(tag + " fixed points " + (c.fixed_points ? std::to_string(*c.fixed_points) : "none") +
               " != " + std::to_string(want));
    }
    const Conclusion by_parity = expect_alt ? Conclusion::Alt : Conclusion::Sym;
    if (c.parity_class != by_parity)
      r.fail(tag + " parity gives " + to_string(c.parity_class) + ", expected " + to_string(by_parity));
    (c.parity_class == Conclusion::Alt ? alt : sym)++;
  }
  if (r.pass) r.detail = std::to_string(sym) + " Sym, " + std::to_string(alt) + " Alt, all primitive";
  return r;
}

Result check_relations() {
  Result r;
  std::size_t points = 0;
  for (u64 p : primes_in(2, 200)) {
    const RelationReport rel = verify_relations(SolutionTable::build(p));
    points += rel.points;
    if (!rel.pass())
      r.fail("p=" + std::to_string(p) + " R3 failures " + std::to_string(rel.r3_failures) + ", T132 failures " +
             std::to_string(rel.t132_failures));
  }
  if (r.pass) r.detail = std::to_string(points) + " points";
  return r;
}

Result check_composite() {
  Result r;
  const ProductOrbitReport base = composite_transitivity(770);
  if (!(base.solutions.transitive() && base.solutions.start_orbit == 394240))
    r.fail("n=770 orbit " + std::to_string(base.solutions.start_orbit) + " of " +
           std::to_string(base.solutions.points));

  std::map<u64, bool> prime_ok;
  const auto certified = [&](u64 p) {
    auto it = prime_ok.find(p);
    if (it == prime_ok.end()) it = prime_ok.emplace(p, certify(p).transitive).first;
    return it->second;
  };

  CompositeOptions opts;
  opts.blocks = false;
  u64 checked = 0, skipped = 0;
  std::vector<u64> ns;
  for (u64 n = 35; n <= 1500; ++n) {
    const Factorization f = factorize(n);
    if (f.factors.size() < 2 || f.factors.front().first < 5) continue;
    bool square_free = true;
    for (const auto& [q, e] : f.factors) square_free &= e == 1;
    if (square_free) ns.push_back(n);
  }
  for (u64 n : ns) {
    bool admitted = true;
    for (const auto& [q, e] : factorize(n).factors) admitted &= certified(q);
    if (!admitted) {
      ++skipped;
      continue;
    }
    const ProductOrbitReport rep = composite_transitivity(n, kDefaultGens, opts);
    if (!rep.solutions.transitive()) r.fail("n=" + std::to_string(n) + " not transitive");
    ++checked;
  }
  for (u64 n : {10ULL, 14ULL, 22ULL, 70ULL, 110ULL, 154ULL, 770ULL}) {
    const ProductOrbitReport rep = composite_transitivity(n, kDefaultGens, opts);
    if (!rep.solutions.transitive()) r.fail("n=" + std::to_string(n) + " not transitive");
    ++checked;
  }
  if (r.pass)
    r.detail = "770 -> 394240; " + std::to_string(checked) + " moduli transitive, " + std::to_string(skipped) +
               " not admitted";
  return r;
}

Result check_order4_witnesses() {
  Result r;
  const std::pair<u64, Triple> fixed[] = {{7, {3, 3, 3}}, {23, {3, 3, 3}}, {19, {6, 6, 8}}};
  for (const auto& [p, t] : fixed) {
    const Triple got = find_elliptic_order4(p).t;
    if (!(got == t)) {
      std::ostringstream os;
      os << "p=" << p << " witness " << got;
      r.fail(os.str());
    }
  }
  const Triple w31 = find_elliptic_order4(31).t;
  if (!is_elliptic_order4_witness(31, w31)) r.fail("p=31 returned witness invalid");
  if (!(w31 == Triple{4, 4, 9}) && !is_elliptic_order4_witness(31, {4, 4, 9})) r.fail("p=31 (4,4,9) invalid");

  u64 checked = 0;
  double worst_margin = INFINITY;
  for (u64 p : primes_in(122, 500)) {
    if (p % 4 != 3) continue;
    const JointSignCount c = prop56_count(p, maximal_elliptic(p).front());
    const double bound = (double(p) - 11.0 * std::sqrt(double(p))) / 4.0;
    const double got = double(c.n(-1, 1));
    worst_margin = std::min(worst_margin, got - bound);
    if (got < bound) r.fail("p=" + std::to_string(p) + " N(-1,1)=" + str(got) + " < " + str(bound));
    ++checked;
  }
  if (r.pass) {
    std::ostringstream os;
    os << "witnesses ok (p=31 gives " << w31 << "); " << checked << " primes, least margin " << worst_margin;
    r.detail = os.str();
  }
  return r;
}

Result check_weil_bound() {
  Result r;
  constexpr int kTrials = 200;
  constexpr u64 kMaxDegree = 16;
  std::mt19937_64 rng(20240611);
  const std::vector<u64> primes = primes_in(3, 499);
  int done = 0;
  double worst = 0;
  while (done < kTrials) {
    const u64 p = primes[rng() % primes.size()];
    const u64 deg = 1 + rng() % std::min<u64>(kMaxDegree, p - 1);
    std::vector<u64> c(deg + 1);
    for (u64& v : c) v = rng() % p;
    c.back() = 1 + rng() % (p - 1);
    const PolyFp f(p, c);
    if (is_square_in_closure(f)) continue;
    ++done;
    const WeilResult w = weil_sum(f);
    // Direct summation through Euler's criterion.
    i64 direct = 0;
    for (u64 s = 0; s < p; ++s) {
      const u64 v = f.eval(s);
      if (v == 0) continue;
      direct += pow_mod(v, (p - 1) / 2, p) == 1 ? 1 : -1;
    }
    if (direct != w.sum) r.fail("sum mismatch at p=" + std::to_string(p));
    if (w.distinct_roots == 0 || w.distinct_roots > deg) r.fail("root count out of range at p=" + std::to_string(p));
    const double bound = (double(w.distinct_roots) - 1.0) * std::sqrt(double(p));
    if (double(std::llabs(direct)) > bound + 1e-9)
      r.fail("p=" + std::to_string(p) + " |sum|=" + std::to_string(std::llabs(direct)) + " > " + str(bound));
    if (bound > 0) worst = std::max(worst, double(std::llabs(direct)) / bound);
  }
  if (r.pass) r.detail = std::to_string(kTrials) + " polynomials, max |sum|/bound " + str(worst);
  return r;
}

Result check_quadratic_orders() {
  Result r;
  constexpr u64 kXMax = 100000;
  constexpr double kC = 32.0;
  constexpr double kMaxFraction = 0.10;
  ScanOptions opts;
  opts.C = kC;
  const ScanSummary s = scan(kXMax, opts);
  if (!s.divisibility_failures.empty())
    r.fail(std::to_string(s.divisibility_failures.size()) + " primes with o_p not dividing p - (5/p)");

  const DivisibilityCheck d = divisibility_check(1000, 200);
  if (!d.literal_failures.empty()) {
    const auto [p, k] = d.literal_failures.front();
    r.fail("p | A_k <=> o_p | k fails for " + std::to_string(d.literal_failures.size()) + " pairs, first (p=" +
           std::to_string(p) + ", k=" + std::to_string(k) + "); with o_p | 2k: " +
           std::to_string(d.doubled_failures.size()) + " failures");
  }

  std::vector<double> ratios;
  for (u64 x : {1000ULL, 10000ULL, 100000ULL}) {
    for (const Checkpoint& c : s.checkpoints)
      if (c.x == x) ratios.push_back(c.ratio_sqrt_p());
  }
  if (ratios.size() != 3) {
    r.fail("missing checkpoints");
    return r;
  }
  if (!(ratios[0] > ratios[1] && ratios[1] > ratios[2]))
    r.fail("checkpoint ratios not decreasing: " + str(ratios[0]) + ", " + str(ratios[1]) + ", " + str(ratios[2]));
  if (!(ratios[2] < kMaxFraction))
    r.fail("fraction with o_p < 32 sqrt(p+1) at 1e5 is " + str(ratios[2]) + ", not below " + str(kMaxFraction));
  if (r.pass)
    r.detail = "fraction " + str(ratios[2]) + ", ratios " + str(ratios[0]) + " > " + str(ratios[1]) + " > " +
               str(ratios[2]);
  return r;
}

Result check_trace_triples() {
  Result r;
  for (u64 p : {5ULL, 7ULL, 11ULL}) {
    const std::string tag = "p=" + std::to_string(p);
    const BijectionReport b = verify_bijection(p);
    const u64 blocks = SolutionTable::build(p).block_count();
    if (b.blocks_hit != blocks) r.fail(tag + " hit " + std::to_string(b.blocks_hit) + " of " + std::to_string(blocks));
    for (u64 f : b.fibers)
      if (f != p * (p * p - 1)) {
        r.fail(tag + " fiber " + std::to_string(f));
        break;
      }
    if (b.zero_triple_generating != 0) r.fail(tag + " generating pair over (0,0,0)");
    if (b.commutator_mismatches != 0) r.fail(tag + " Q differs from tr[A,B]");
    if (!b.pass) r.fail(tag + " bijection check failed");
    const NielsenReport n = nielsen_check(p);
    if (!n.pass)
      r.fail(tag + " Nielsen failures r=" + std::to_string(n.failures[0]) + " s=" + std::to_string(n.failures[1]) +
             " t=" + std::to_string(n.failures[2]));
  }
  if (r.pass) r.detail = "fibers p(p^2-1) on all of Y*(p); r, s, t act as R3, tau12, tau23";
  return r;
}

std::pair<int, std::string> cli(std::vector<std::string> args) {
  args.insert(args.begin(), "markoff");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = cli::run_app(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str()};
}

Result check_cli_determinism() {
  Result r;
  const std::vector<std::vector<std::string>> runs = {
      {"scan", "--task", "certify", "--hi", "60"},
      {"scan", "--task", "charsum", "--hi", "60"},
      {"scan", "--task", "primitivity", "--hi", "60"},
      {"scan", "--task", "orders", "--hi", "20000"},
      {"orders", "--x-max", "20000"},
      {"composite", "--n", "770"},
      {"census", "--p", "101"},
  };
  const auto cache = std::filesystem::temp_directory_path() / "markoff-acceptance-cache";
  std::filesystem::remove_all(cache);
  u64 compared = 0;
  for (const auto& base : runs) {
    std::string label;
    for (const auto& a : base) label += a + " ";
    // Randomized internals may depend on the seed; the bytes must not depend
    // on anything else.
    for (const char* seed : {"1", "7"}) {
      std::string reference;
      for (const char* workers : {"1", "2", "4"}) {
        for (int repeat = 0; repeat < 2; ++repeat) {
          auto args = base;
          args.insert(args.end(), {"--workers", workers, "--seed", seed, "--no-cache"});
          const auto [code, out] = cli(args);
          if (code != 0) r.fail(label + "exit " + std::to_string(code));
          if (reference.empty()) reference = out;
          else if (out != reference) r.fail(label + "differs with workers=" + workers + " seed=" + seed);
          ++compared;
        }
      }
      auto cached = base;
      cached.insert(cached.end(), {"--seed", seed, "--workers", "3", "--cache-dir", cache.string()});
      const auto first = cli(cached), second = cli(cached);
      if (first.second != reference || second.second != reference) r.fail(label + "cache replay differs");
      compared += 2;
    }
  }
  std::filesystem::remove_all(cache);
  if (r.pass) r.detail = std::to_string(compared) + " runs byte-identical";
  return r;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Acceptance suite"};
  int only = 0;
  app.add_option("--criterion", only, "Run a single criterion (1-11)")->check(CLI::Range(1, 11));
  CLI11_PARSE(app, argc, argv);

  const std::vector<Criterion> criteria = {
      {1, "counts", 30, check_counts},
      {2, "cycle_census", 120, check_cycle_census},
      {3, "transitivity", 300, check_transitivity},
      {4, "certificates", 300, check_certificates},
      {5, "relations", 300, check_relations},
      {6, "composite", 600, check_composite},
      {7, "order4_witnesses", 300, check_order4_witnesses},
      {8, "weil_bound", 300, check_weil_bound},
      {9, "quadratic_orders", 600, check_quadratic_orders},
      {10, "trace_triples", 300, check_trace_triples},
      {11, "cli_determinism", 600, check_cli_determinism},
  };

  bool all = true;
  for (const Criterion& c : criteria) {
    if (only != 0 && c.id != only) continue;
    const auto t0 = std::chrono::steady_clock::now();
    Result r;
    try {
      r = c.run();
    } catch (const std::exception& e) {
      r.fail(std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (secs > c.budget_seconds) r.fail("took " + str(secs) + " s, budget " + str(c.budget_seconds) + " s");
    std::cout << "criterion " << c.id << " " << c.name << ": " << (r.pass ? "PASS" : "FAIL") << " (" << r.detail
              << ") [" << std::fixed << std::setprecision(2) << secs << " s]" << std::defaultfloat << std::endl;
    all &= r.pass;
  }
  return all ? 0 : 1;
}
