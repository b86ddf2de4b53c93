#include "markoff/composite.hpp"

#include <algorithm>
#include <chrono>
#include <ostream>

namespace markoff {

u64 order_rank(u64 p) {
  if (!is_prime(p)) throw std::invalid_argument(std::to_string(p) + " is not prime");
  if (p == 3) return 0;  // Y*(3) is empty
  return rotation_order_formula(p);
}

bool rank_before(u64 p, u64 q) {
  const u64 a = order_rank(p), b = order_rank(q);
  if (a != b) return a < b;
  return p > q;
}

std::vector<u64> ranked_primes(u64 n) {
  std::vector<u64> ps = factorize(n).primes();
  std::sort(ps.begin(), ps.end(), rank_before);
  return ps;
}

u64 OrbitCensus::count() const {
  u64 c = 0;
  for (auto [size, k] : histogram) c += k;
  return c;
}

u64 OrbitCensus::largest() const { return histogram.empty() ? 0 : histogram.rbegin()->first; }

namespace {

struct ProductAction {
  std::vector<std::size_t> radix;               // per prime, most significant first
  std::vector<std::vector<Permutation>> images;  // [gen][prime]
  std::size_t total = 1;
};

ProductAction make_action(const SolutionTable& table, std::span<const Gen> gens, Level level) {
  ProductAction act;
  const std::size_t k = table.is_prime_table() ? 1 : table.primes().size();
  act.images.resize(gens.size());
  for (std::size_t j = 0; j < k; ++j) {
    const SolutionTable& c = table.component(j);
    act.radix.push_back(level == Level::Solutions ? c.size() : c.block_count());
    act.total *= act.radix.back();
    for (std::size_t g = 0; g < gens.size(); ++g) act.images[g].push_back(generator_image(c, gens[g], level).perm);
  }
  return act;
}

std::size_t step(const ProductAction& act, std::size_t g, std::size_t point) {
  std::size_t out = 0, scale = 1;
  for (std::size_t j = act.radix.size(); j-- > 0;) {
    const std::size_t digit = point % act.radix[j];
    point /= act.radix[j];
    out += scale * act.images[g][j][digit];
    scale *= act.radix[j];
  }
  return out;
}

OrbitCensus census(const ProductAction& act, std::size_t start) {
  OrbitCensus oc;
  oc.points = act.total;
  std::vector<bool> seen(act.total, false);
  std::vector<std::size_t> queue;
  const auto bfs = [&](std::size_t root) -> u64 {
    queue.clear();
    queue.push_back(root);
    seen[root] = true;
    for (std::size_t head = 0; head < queue.size(); ++head) {
      const std::size_t v = queue[head];
      for (std::size_t g = 0; g < act.images.size(); ++g) {
        const std::size_t w = step(act, g, v);
        if (!seen[w]) {
          seen[w] = true;
          queue.push_back(w);
        }
      }
    }
    return queue.size();
  };
  if (act.total == 0) return oc;
  oc.start_orbit = bfs(start);
  ++oc.histogram[oc.start_orbit];
  for (std::size_t v = 0; v < act.total; ++v) {
    if (!seen[v]) ++oc.histogram[bfs(v)];
  }
  return oc;
}

ProductOrbitReport run(u64 n, std::span<const Gen> gens, const CompositeOptions& opts) {
  const auto t0 = std::chrono::steady_clock::now();
  ProductOrbitReport rep;
  rep.n = n;
  EnumerateOptions eo;
  eo.max_triples = opts.max_points;
  const SolutionTable table = SolutionTable::build(n, eo);
  rep.primes = ranked_primes(n);
  rep.empty = table.empty();
  if (!rep.empty) {
    const std::size_t start = table.index_of(
        {static_cast<u32>(3 % n), static_cast<u32>(3 % n), static_cast<u32>(3 % n)});
    if (opts.solutions) rep.solutions = census(make_action(table, gens, Level::Solutions), start);
    if (opts.blocks) rep.blocks = census(make_action(table, gens, Level::Blocks), table.block_id(start));
  }
  rep.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return rep;
}

}  // namespace

ProductOrbitReport composite_transitivity(u64 n, std::span<const Gen> gens, const CompositeOptions& opts) {
  return run(n, gens, opts);
}

ProductOrbitReport block_transitivity(u64 n, std::span<const Gen> gens, const CompositeOptions& opts) {
  CompositeOptions o = opts;
  o.solutions = false;
  o.blocks = true;
  return run(n, gens, o);
}

void write_histogram_csv(std::ostream& os, const OrbitCensus& c) {
  os << "orbit_size,count\n";
  for (auto [size, k] : c.histogram) os << size << ',' << k << '\n';
}

}  // namespace markoff
