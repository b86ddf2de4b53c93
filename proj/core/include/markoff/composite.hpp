#pragma once

// Diagonal action on X*(n) and Y*(n) for square-free composite n, computed
// over per-prime generator images without materializing CRT residues.

#include <iosfwd>
#include <map>
#include <span>
#include <vector>

#include "markoff/action.hpp"

namespace markoff {

/// Order of rot_1 on Y*(p): 3, p(p^2-1)/4 or (p^2-1)/4.
u64 order_rank(u64 p);
/// Ascending rotation order; ties put the larger prime first.
bool rank_before(u64 p, u64 q);
std::vector<u64> ranked_primes(u64 n);

struct OrbitCensus {
  std::size_t points = 0;
  std::map<u64, u64> histogram;  // orbit size -> number of orbits
  u64 start_orbit = 0;           // size of the orbit of (3,3,3)
  u64 count() const;
  u64 largest() const;
  bool transitive() const { return points > 0 && start_orbit == points; }
};

struct ProductOrbitReport {
  u64 n = 0;
  std::vector<u64> primes;  // ranked
  bool empty = false;
  OrbitCensus solutions;
  OrbitCensus blocks;
  double seconds = 0;
};

struct CompositeOptions {
  u64 max_points = 10'000'000;
  bool solutions = true;
  bool blocks = true;
};

/// Throws LimitExceeded when |X*(n)| passes max_points.
ProductOrbitReport composite_transitivity(u64 n, std::span<const Gen> gens = kDefaultGens,
                                          const CompositeOptions& opts = {});
/// Block-level run only.
ProductOrbitReport block_transitivity(u64 n, std::span<const Gen> gens = kDefaultGens,
                                      const CompositeOptions& opts = {});

void write_histogram_csv(std::ostream& os, const OrbitCensus& c);

}  // namespace markoff
