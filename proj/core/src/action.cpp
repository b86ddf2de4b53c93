#include "markoff/action.hpp"

#include <algorithm>
#include <chrono>
#include <deque>
#include <map>
#include <random>
#include <stdexcept>

namespace markoff {

const char* to_string(Gen g) {
  switch (g) {
    case Gen::R1: return "R1";
    case Gen::R2: return "R2";
    case Gen::R3: return "R3";
    case Gen::T12: return "tau12";
    case Gen::T13: return "tau13";
    case Gen::T23: return "tau23";
    case Gen::T123: return "tau123";
    case Gen::T132: return "tau132";
    case Gen::Rot1: return "rot1";
    case Gen::Rot2: return "rot2";
    case Gen::Rot3: return "rot3";
  }
  return "?";
}

std::optional<Gen> gen_from_string(const std::string& name) {
  for (Gen g : kAllGens) {
    if (name == to_string(g)) return g;
  }
  return std::nullopt;
}

const char* to_string(Level l) { return l == Level::Solutions ? "solutions" : "blocks"; }

Triple apply(Gen g, const Triple& t, u64 n) {
  const u64 x = t.x, y = t.y, z = t.z;
  // a*b - c mod n
  const auto vieta = [n](u64 a, u64 b, u64 c) {
    const u64 ab = mul_mod(a, b, n);
    return static_cast<u32>(ab >= c ? ab - c : ab + n - c);
  };
  switch (g) {
    case Gen::R1: return {vieta(y, z, x), t.y, t.z};
    case Gen::R2: return {t.x, vieta(x, z, y), t.z};
    case Gen::R3: return {t.x, t.y, vieta(x, y, z)};
    case Gen::T12: return {t.y, t.x, t.z};
    case Gen::T13: return {t.z, t.y, t.x};
    case Gen::T23: return {t.x, t.z, t.y};
    case Gen::T123: return {t.z, t.x, t.y};
    case Gen::T132: return {t.y, t.z, t.x};
    case Gen::Rot1: return {t.x, t.z, vieta(x, z, y)};
    case Gen::Rot2: return {vieta(x, y, z), t.y, t.x};
    case Gen::Rot3: return {t.y, vieta(y, z, x), t.z};
  }
  return t;
}

namespace {

std::size_t image_point(const SolutionTable& table, Gen g, Level level, std::size_t i) {
  const std::size_t ordinal = level == Level::Solutions ? i : table.block_rep(static_cast<u32>(i));
  const Triple t = apply(g, table.triple(ordinal), table.modulus());
  const std::size_t j = table.index_of(t);
  if (j == SolutionTable::npos) throw std::logic_error(std::string(to_string(g)) + " left the solution set");
  return level == Level::Solutions ? j : table.block_id(j);
}

std::size_t degree_of(const SolutionTable& table, Level level) {
  return level == Level::Solutions ? table.size() : table.block_count();
}

OrbitPartition partition_from(UnionFind& uf, std::size_t degree) {
  OrbitPartition out;
  out.orbit_of.assign(degree, 0);
  std::vector<u32> id_of_root(degree, static_cast<u32>(-1));
  for (std::size_t i = 0; i < degree; ++i) {
    const std::size_t r = uf.find(i);
    if (id_of_root[r] == static_cast<u32>(-1)) {
      id_of_root[r] = static_cast<u32>(out.sizes.size());
      out.sizes.push_back(0);
    }
    out.orbit_of[i] = id_of_root[r];
    ++out.sizes[id_of_root[r]];
  }
  return out;
}

}  // namespace

GeneratorImage generator_image(const SolutionTable& table, Gen g, Level level) {
  GeneratorImage img{g, level, {}};
  const std::size_t deg = degree_of(table, level);
  img.perm.resize(deg);
  for (std::size_t i = 0; i < deg; ++i) img.perm[i] = static_cast<u32>(image_point(table, g, level, i));
  return img;
}

std::vector<GeneratorImage> generator_images(const SolutionTable& table, std::span<const Gen> gens, Level level) {
  std::vector<GeneratorImage> out;
  for (Gen g : gens) out.push_back(generator_image(table, g, level));
  return out;
}

// ---------------------------------------------------------------------------

UnionFind::UnionFind(std::size_t n) { reset(n); }

void UnionFind::reset(std::size_t n) {
  parent_.resize(n);
  for (std::size_t i = 0; i < n; ++i) parent_[i] = static_cast<u32>(i);
  size_.assign(n, 1);
  n_ = n;
  merges_ = 0;
}

std::size_t UnionFind::find(std::size_t a) {
  while (parent_[a] != a) {
    parent_[a] = parent_[parent_[a]];
    a = parent_[a];
  }
  return a;
}

std::size_t UnionFind::unite(std::size_t a, std::size_t b) {
  a = find(a);
  b = find(b);
  if (a == b) return npos;
  if (size_[a] < size_[b]) std::swap(a, b);
  parent_[b] = static_cast<u32>(a);
  size_[a] += size_[b];
  ++merges_;
  return a;
}

OrbitPartition orbits(std::span<const Permutation> gens, std::size_t degree) {
  UnionFind uf(degree);
  for (const auto& g : gens) {
    for (std::size_t i = 0; i < degree; ++i) uf.unite(i, g[i]);
  }
  return partition_from(uf, degree);
}

OrbitPartition orbits(const SolutionTable& table, std::span<const Gen> gens, Level level) {
  const std::size_t deg = degree_of(table, level);
  UnionFind uf(deg);
  for (std::size_t i = 0; i < deg; ++i) {
    for (Gen g : gens) uf.unite(i, image_point(table, g, level, i));
  }
  return partition_from(uf, deg);
}

// ---------------------------------------------------------------------------

u64 CycleType::cycles() const {
  u64 c = 0;
  for (auto [len, mult] : lengths) c += mult;
  return c;
}

u64 CycleType::points() const {
  u64 c = 0;
  for (auto [len, mult] : lengths) c += len * mult;
  return c;
}

u64 CycleType::order() const {
  u64 o = 1;
  for (auto [len, mult] : lengths) o = lcm_u64(o, len);
  return o;
}

namespace {
CycleType tally(const std::map<u64, u64>& counts) {
  CycleType ct;
  ct.lengths.assign(counts.begin(), counts.end());
  return ct;
}
}  // namespace

CycleType cycle_type(std::span<const u32> perm) {
  std::vector<bool> seen(perm.size(), false);
  std::map<u64, u64> counts;
  for (std::size_t i = 0; i < perm.size(); ++i) {
    if (seen[i]) continue;
    u64 len = 0;
    for (std::size_t j = i; !seen[j]; j = perm[j]) {
      seen[j] = true;
      ++len;
    }
    ++counts[len];
  }
  return tally(counts);
}

CycleType cycle_type_on(std::span<const u32> perm, std::span<const u32> subset) {
  std::vector<u32> sorted(subset.begin(), subset.end());
  std::sort(sorted.begin(), sorted.end());
  std::vector<bool> seen(sorted.size(), false);
  const auto pos = [&](u32 v) -> std::size_t {
    auto it = std::lower_bound(sorted.begin(), sorted.end(), v);
    if (it == sorted.end() || *it != v) throw std::invalid_argument("subset is not invariant");
    return static_cast<std::size_t>(it - sorted.begin());
  };
  std::map<u64, u64> counts;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    if (seen[i]) continue;
    u64 len = 0;
    for (std::size_t k = i; !seen[k]; k = pos(perm[sorted[k]])) {
      seen[k] = true;
      ++len;
    }
    ++counts[len];
  }
  return tally(counts);
}

Permutation compose(std::span<const u32> outer, std::span<const u32> inner) {
  Permutation out(inner.size());
  for (std::size_t i = 0; i < inner.size(); ++i) out[i] = outer[inner[i]];
  return out;
}

Permutation power(std::span<const u32> perm, u64 e) {
  Permutation out(perm.size());
  std::vector<bool> seen(perm.size(), false);
  std::vector<u32> cycle;
  for (std::size_t i = 0; i < perm.size(); ++i) {
    if (seen[i]) continue;
    cycle.clear();
    for (std::size_t j = i; !seen[j]; j = perm[j]) {
      seen[j] = true;
      cycle.push_back(static_cast<u32>(j));
    }
    const std::size_t len = cycle.size();
    const std::size_t shift = static_cast<std::size_t>(e % len);
    for (std::size_t k = 0; k < len; ++k) out[cycle[k]] = cycle[(k + shift) % len];
  }
  return out;
}

u64 order(std::span<const u32> perm) { return cycle_type(perm).order(); }

int sign(std::span<const u32> perm) {
  const u64 c = cycle_type(perm).cycles();
  return ((perm.size() - c) % 2 == 0) ? 1 : -1;
}

Parity parity(std::span<const u32> perm) { return sign(perm) == 1 ? Parity::Even : Parity::Odd; }

const char* to_string(Parity p) { return p == Parity::Even ? "even" : "odd"; }

// ---------------------------------------------------------------------------

u64 rotation_order_formula(u64 p) {
  if (p == 2) return 3;
  if (p % 4 == 1) return p * (p * p - 1) / 4;
  return (p * p - 1) / 4;
}

namespace {

Gen rot_for(int coord) {
  switch (coord) {
    case 1: return Gen::Rot1;
    case 2: return Gen::Rot2;
    case 3: return Gen::Rot3;
  }
  throw std::invalid_argument("coordinate must be 1, 2 or 3");
}

u64 expected_conic_size(u64 p, CoordClass cls, u32 x) {
  if (p % 4 == 3 && (x == 0 || cls == CoordClass::Parabolic)) return 0;
  switch (cls) {
    case CoordClass::Parabolic: return p;
    case CoordClass::Hyperbolic: return (p - 1) / 2;
    case CoordClass::Elliptic: return (p + 1) / 2;
  }
  return 0;
}

CycleCensus census_row(u64 p, const Fp2& F, u32 x, std::span<const u32> rot, std::span<const u32> conic_blocks) {
  CycleCensus row;
  row.x = x;
  row.cls = classify(x, F.base());
  if (row.cls == CoordClass::Parabolic) {
    row.d_predicted = p;
  } else {
    const Fp2Elem w = omega_of(x, F);
    row.omega_order = F.order(w);
    row.d_predicted = std::max(row.omega_order, F.order(F.neg(w))) / 2;
  }
  row.conic_size = conic_blocks.size();
  row.measured = cycle_type_on(rot, conic_blocks);
  const u64 want = expected_conic_size(p, row.cls, x);
  row.matches = row.conic_size == want;
  if (want > 0) {
    row.matches = row.matches && row.measured.lengths.size() == 1 &&
                  row.measured.lengths[0].first == row.d_predicted &&
                  row.measured.lengths[0].first * row.measured.lengths[0].second == want;
  }
  return row;
}


void require_census_prime(const SolutionTable& table) {
  if (!table.is_prime_table() || table.modulus() < 5) {
    throw std::invalid_argument("cycle census needs a prime modulus p >= 5");
  }
}

}  // namespace

CycleCensus cycle_census(const SolutionTable& table, int coord, u32 x) {
  require_census_prime(table);
  const u64 p = table.modulus();
  x %= p;
  x = std::min<u32>(x, static_cast<u32>((p - x) % p));
  const Fp2 F(p);
  const GeneratorImage rot = generator_image(table, rot_for(coord), Level::Blocks);
  const ConicSection cs = table.conic(coord, x, true);
  return census_row(p, F, x, rot.perm, cs.members);
}

CensusReport census_verify(u64 p) {
  const SolutionTable table = SolutionTable::build(p);
  require_census_prime(table);
  const Fp2 F(p);
  const GeneratorImage rot = generator_image(table, Gen::Rot1, Level::Blocks);

  // Block-level conics grouped by the representative of +-x.
  std::vector<std::vector<u32>> conics((p + 1) / 2);
  for (u32 b = 0; b < table.block_count(); ++b) {
    const u32 x = table.triple(table.block_rep(b)).x;
    conics[std::min<u64>(x, (p - x) % p)].push_back(b);
  }

  CensusReport rep;
  rep.p = p;
  std::map<u64, u64> hyp_seen, ell_seen;
  for (u32 x = 0; x <= (p - 1) / 2; ++x) {
    CycleCensus row = census_row(p, F, x, rot.perm, conics[x]);
    if (!row.matches) {
      rep.mismatches.push_back("x=" + std::to_string(x) + ": conic size " + std::to_string(row.conic_size) +
                               ", predicted cycle length " + std::to_string(row.d_predicted));
    }
    if (row.conic_size > 0 && row.measured.lengths.size() == 1) {
      const u64 d = row.measured.lengths[0].first;
      if (row.cls == CoordClass::Hyperbolic) ++hyp_seen[d];
      if (row.cls == CoordClass::Elliptic) ++ell_seen[d];
    }
    rep.rows.push_back(std::move(row));
  }

  const bool one_mod_four = p % 4 == 1;
  const auto check = [&](u64 top, std::map<u64, u64>& seen, bool hyperbolic,
                         std::vector<std::tuple<u64, u64, u64>>& out) {
    for (u64 d : factorize(top).divisors()) {
      if (d == 1) continue;
      if (!hyperbolic && !one_mod_four && d < 3) continue;
      const u64 phi = euler_phi(d);
      const u64 expect = hyperbolic && one_mod_four ? (phi + 1) / 2 : phi / 2;
      out.emplace_back(d, seen[d], expect);
      if (seen[d] != expect) {
        rep.mismatches.push_back(std::string(hyperbolic ? "hyperbolic" : "elliptic") + " d=" + std::to_string(d) +
                                 ": " + std::to_string(seen[d]) + " values, expected " + std::to_string(expect));
      }
      seen.erase(d);
    }
    for (auto [d, c] : seen) {
      if (c > 0) rep.mismatches.push_back("unexpected cycle length " + std::to_string(d));
    }
  };
  check((p - 1) / 2, hyp_seen, true, rep.hyperbolic_multiplicities);
  check((p + 1) / 2, ell_seen, false, rep.elliptic_multiplicities);

  rep.rotation_order = order(rot.perm);
  rep.rotation_order_expected = rotation_order_formula(p);
  if (rep.rotation_order != rep.rotation_order_expected) {
    rep.mismatches.push_back("rotation order " + std::to_string(rep.rotation_order) + ", expected " +
                             std::to_string(rep.rotation_order_expected));
  }
  return rep;
}

// ---------------------------------------------------------------------------

namespace {

// Grows the class of base from the seed pair; returns false once the class
// passes half the degree, which forces the whole set.
bool refine(std::span<const Permutation> gens, std::size_t degree, std::size_t base, std::size_t alpha,
            UnionFind& uf) {
  uf.reset(degree);
  std::deque<std::pair<u32, u32>> queue;
  uf.unite(base, alpha);
  queue.emplace_back(static_cast<u32>(base), static_cast<u32>(alpha));
  while (!queue.empty()) {
    auto [a, b] = queue.front();
    queue.pop_front();
    for (const auto& g : gens) {
      const std::size_t ra = uf.find(g[a]), rb = uf.find(g[b]);
      if (ra == rb) continue;
      uf.unite(ra, rb);
      queue.emplace_back(static_cast<u32>(ra), static_cast<u32>(rb));
      if (2 * uf.size_of(base) > degree) return false;
    }
  }
  return true;
}

std::vector<u32> class_of(UnionFind& uf, std::size_t degree, std::size_t base) {
  std::vector<u32> out;
  const std::size_t r = uf.find(base);
  for (std::size_t i = 0; i < degree; ++i) {
    if (uf.find(i) == r) out.push_back(static_cast<u32>(i));
  }
  return out;
}

// Points to test: one per orbit of a few elements fixing base.
std::vector<std::size_t> candidate_points(std::span<const Permutation> gens, std::size_t degree, std::size_t base,
                                          const PrimitivityOptions& opts) {
  std::vector<std::size_t> all;
  if (!opts.use_stabilizer || gens.empty()) {
    for (std::size_t i = 0; i < degree; ++i) {
      if (i != base) all.push_back(i);
    }
    return all;
  }
  std::mt19937_64 rng(opts.seed);
  std::uniform_int_distribution<std::size_t> pick(0, gens.size() - 1);
  std::vector<Permutation> stab;
  for (std::size_t w = 0; w < opts.stabilizer_words; ++w) {
    Permutation word(gens[pick(rng)]);
    for (int k = 0; k < 24; ++k) word = compose(gens[pick(rng)], word);
    u64 len = 1;
    for (std::size_t j = word[base]; j != base; j = word[j]) ++len;
    Permutation h = power(word, len);
    if (h[base] != base) throw std::logic_error("stabilizer element does not fix the base point");
    stab.push_back(std::move(h));
  }
  const OrbitPartition part = orbits(stab, degree);
  std::vector<bool> taken(part.count(), false);
  taken[part.orbit_of[base]] = true;
  for (std::size_t i = 0; i < degree; ++i) {
    if (!taken[part.orbit_of[i]]) {
      taken[part.orbit_of[i]] = true;
      all.push_back(i);
    }
  }
  return all;
}

}  // namespace

std::vector<u32> minimal_block(std::span<const Permutation> gens, std::size_t degree, std::size_t base,
                               std::size_t alpha) {
  UnionFind uf(degree);
  uf.unite(base, alpha);
  std::deque<std::pair<u32, u32>> queue{{static_cast<u32>(base), static_cast<u32>(alpha)}};
  while (!queue.empty()) {
    auto [a, b] = queue.front();
    queue.pop_front();
    for (const auto& g : gens) {
      const std::size_t ra = uf.find(g[a]), rb = uf.find(g[b]);
      if (ra == rb) continue;
      uf.unite(ra, rb);
      queue.emplace_back(static_cast<u32>(ra), static_cast<u32>(rb));
    }
  }
  return class_of(uf, degree, base);
}

PrimitivityResult primitivity(std::span<const Permutation> gens, std::size_t degree,
                              const PrimitivityOptions& opts) {
  PrimitivityResult res;
  if (degree == 0) throw std::invalid_argument("primitivity of an empty action is undefined");
  if (opts.base >= degree) throw std::invalid_argument("base point out of range");
  res.transitive = orbits(gens, degree).transitive();
  if (!res.transitive) throw std::invalid_argument("primitivity needs a transitive action");
  res.primitive = true;
  UnionFind uf(degree);
  for (std::size_t alpha : candidate_points(gens, degree, opts.base, opts)) {
    ++res.pairs_tested;
    if (refine(gens, degree, opts.base, alpha, uf)) {
      std::vector<u32> block = class_of(uf, degree, opts.base);
      if (block.size() < degree) {
        res.primitive = false;
        res.witness = std::move(block);
        break;
      }
    }
  }
  return res;
}

PrimitivityResult primitivity(const SolutionTable& table, std::span<const Gen> gens,
                              const PrimitivityOptions& opts) {
  std::vector<Permutation> perms;
  for (Gen g : gens) perms.push_back(generator_image(table, g, Level::Blocks).perm);
  const u64 n = table.modulus();
  const std::size_t base = table.index_of({static_cast<u32>(3 % n), static_cast<u32>(3 % n), static_cast<u32>(3 % n)});
  if (base == SolutionTable::npos) throw std::invalid_argument("(3,3,3) is not in the table");
  PrimitivityOptions o = opts;
  o.base = table.block_id(base);
  return primitivity(perms, table.block_count(), o);
}

// ---------------------------------------------------------------------------

RelationReport verify_relations(const SolutionTable& table) {
  RelationReport rep;
  rep.n = table.modulus();
  rep.points = table.size();
  const u64 n = table.modulus();
  for (std::size_t i = 0; i < table.size(); ++i) {
    const Triple t = table.triple(i);
    if (apply(Gen::R3, t, n) != apply(Gen::Rot1, apply(Gen::T23, t, n), n)) ++rep.r3_failures;
    if (apply(Gen::T132, t, n) != apply(Gen::Rot1, apply(Gen::Rot3, t, n), n)) ++rep.t132_failures;
  }
  return rep;
}

// ---------------------------------------------------------------------------

const char* to_string(Conclusion c) {
  switch (c) {
    case Conclusion::Sym: return "Sym";
    case Conclusion::Alt: return "Alt";
    case Conclusion::AltOrSymConditional: return "AltOrSym-conditional";
    case Conclusion::Inconclusive: return "Inconclusive";
  }
  return "?";
}

CertificateChain certify(u64 p, std::span<const Gen> gens) {
  if (p < 5 || !is_prime(p)) throw std::invalid_argument("certify needs a prime p >= 5");
  using clock = std::chrono::steady_clock;
  CertificateChain c;
  c.p = p;
  c.expected_alt = p % 16 == 3;
  auto t0 = clock::now();
  const auto lap = [&](const char* stage) {
    const auto t1 = clock::now();
    c.timings.emplace_back(stage, std::chrono::duration<double>(t1 - t0).count());
    t0 = t1;
  };

  const SolutionTable table = SolutionTable::build(p);
  std::vector<Permutation> perms;
  for (Gen g : gens) perms.push_back(generator_image(table, g, Level::Blocks).perm);
  const Permutation rot1 = generator_image(table, Gen::Rot1, Level::Blocks).perm;
  c.degree = table.block_count();
  lap("images");

  const OrbitPartition part = orbits(perms, c.degree);
  c.transitive = part.transitive();
  c.orbit_sizes = part.sizes;
  lap("transitivity");

  for (std::size_t k = 0; k < gens.size(); ++k) c.parities.emplace_back(gens[k], parity(perms[k]));
  c.all_even = std::all_of(c.parities.begin(), c.parities.end(),
                           [](const auto& gp) { return gp.second == Parity::Even; });
  c.parity_class = c.all_even ? Conclusion::Alt : Conclusion::Sym;

  c.rotation_order = order(rot1);
  if (p % 4 == 1) {
    if (c.rotation_order % p == 0) {
      c.pcycle_exponent = c.rotation_order / p;
      const CycleType ct = cycle_type(power(rot1, *c.pcycle_exponent));
      u64 pcycles = 0, fixed = 0;
      for (auto [len, mult] : ct.lengths) {
        if (len == p) pcycles += mult;
        if (len == 1) fixed += mult;
      }
      c.pcycle_ok = pcycles == 1 && fixed + p == c.degree && p + 3 <= c.degree;
    }
  } else {
    const Permutation sigma = power(rot1, (p + 1) / 2);
    u64 fixed = 0;
    for (std::size_t i = 0; i < sigma.size(); ++i) fixed += sigma[i] == i;
    c.fixed_points = fixed;
    c.fixed_points_expected = (p + 1) * (p - 3) / 8;
    c.fixed_points_ok = fixed == c.fixed_points_expected;
  }
  lap("witness");

  if (!c.transitive) {
    c.failed_stage = "transitivity";
    return c;
  }
  const PrimitivityResult prim = primitivity(perms, c.degree, [&] {
    PrimitivityOptions o;
    o.base = table.block_id(table.index_of({3, 3, 3}));
    return o;
  }());
  c.primitive = prim.primitive;
  c.primitivity_witness = prim.witness;
  lap("primitivity");

  if (!c.primitive) {
    c.failed_stage = "primitivity";
  } else if (p % 4 == 1) {
    if (c.pcycle_ok) {
      c.conclusion = c.parity_class;
    } else {
      c.failed_stage = "pcycle";
    }
  } else {
    if (c.fixed_points_ok) {
      c.conclusion = Conclusion::AltOrSymConditional;
    } else {
      c.failed_stage = "fixed_points";
    }
  }
  return c;
}

}  // namespace markoff
