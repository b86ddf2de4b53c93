#pragma once

// The Vieta involutions, coordinate permutations and rotations acting on
// X*(n) and Y*(n): orbits, cycle censuses, primitivity, parity and the
// Alt/Sym certificate chain.

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "markoff/surface.hpp"

namespace markoff {

enum class Gen { R1, R2, R3, T12, T13, T23, T123, T132, Rot1, Rot2, Rot3 };
inline constexpr std::array<Gen, 11> kAllGens = {Gen::R1,   Gen::R2,   Gen::R3,   Gen::T12,  Gen::T13, Gen::T23,
                                                 Gen::T123, Gen::T132, Gen::Rot1, Gen::Rot2, Gen::Rot3};
inline constexpr std::array<Gen, 4> kDefaultGens = {Gen::Rot1, Gen::Rot2, Gen::Rot3, Gen::T12};

const char* to_string(Gen g);
std::optional<Gen> gen_from_string(const std::string& name);

/// R1 = (yz-x, y, z), R2 = (x, xz-y, z), R3 = (x, y, xy-z);
/// T12 = (y, x, z), T13 = (z, y, x), T23 = (x, z, y),
/// T123 = (z, x, y), T132 = (y, z, x);
/// Rot1 = (x, z, xz-y), Rot2 = (xy-z, y, x), Rot3 = (y, yz-x, z).
Triple apply(Gen g, const Triple& t, u64 n);

using Permutation = std::vector<u32>;

enum class Level { Solutions, Blocks };
const char* to_string(Level l);

struct GeneratorImage {
  Gen gen;
  Level level;
  Permutation perm;
};

/// Throws std::logic_error if the generator leaves the table (never expected).
GeneratorImage generator_image(const SolutionTable& table, Gen g, Level level);
std::vector<GeneratorImage> generator_images(const SolutionTable& table, std::span<const Gen> gens, Level level);

class UnionFind {
 public:
  explicit UnionFind(std::size_t n = 0);
  void reset(std::size_t n);
  std::size_t find(std::size_t a);
  /// Returns the new root, or npos if a and b were already joined.
  std::size_t unite(std::size_t a, std::size_t b);
  std::size_t size_of(std::size_t a) { return size_[find(a)]; }
  std::size_t count() const { return n_ - merges_; }

  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

 private:
  std::vector<u32> parent_;
  std::vector<u32> size_;
  std::size_t n_ = 0;
  std::size_t merges_ = 0;
};

struct OrbitPartition {
  std::vector<u32> orbit_of;        // point -> orbit id, ids ordered by least member
  std::vector<std::size_t> sizes;   // per orbit id
  std::size_t count() const { return sizes.size(); }
  bool transitive() const { return sizes.size() == 1; }
};

OrbitPartition orbits(std::span<const Permutation> gens, std::size_t degree);
/// Computes generator images on the fly from the table.
OrbitPartition orbits(const SolutionTable& table, std::span<const Gen> gens, Level level);

// ---------------------------------------------------------------------------

struct CycleType {
  std::vector<std::pair<u64, u64>> lengths;  // (length, multiplicity), ascending
  u64 cycles() const;
  u64 points() const;
  u64 order() const;  // lcm of the lengths
};

CycleType cycle_type(std::span<const u32> perm);
/// Cycle type restricted to a subset that the permutation preserves.
CycleType cycle_type_on(std::span<const u32> perm, std::span<const u32> subset);

Permutation compose(std::span<const u32> outer, std::span<const u32> inner);  // outer after inner
Permutation power(std::span<const u32> perm, u64 e);
u64 order(std::span<const u32> perm);
/// +1 for even, -1 for odd.
int sign(std::span<const u32> perm);
enum class Parity { Even, Odd };
Parity parity(std::span<const u32> perm);
const char* to_string(Parity p);

// ---------------------------------------------------------------------------

struct CycleCensus {
  u32 x = 0;  // representative of +-x, x <= p - x
  CoordClass cls = CoordClass::Hyperbolic;
  u64 omega_order = 0;     // |w|, 0 for parabolic
  u64 d_predicted = 0;     // max(|w|, |-w|)/2, or p for parabolic
  u64 conic_size = 0;      // blocks in C_j(+-x)
  CycleType measured;
  bool matches = false;
};

/// Cycle structure of rot_j on the block-level conic C_j(+-x).
CycleCensus cycle_census(const SolutionTable& table, int coord, u32 x);

struct CensusReport {
  u64 p = 0;
  std::vector<CycleCensus> rows;
  // d -> (observed count of +-x values, expected count)
  std::vector<std::tuple<u64, u64, u64>> hyperbolic_multiplicities;
  std::vector<std::tuple<u64, u64, u64>> elliptic_multiplicities;
  u64 rotation_order = 0;           // order of rot_1 on Y*(p)
  u64 rotation_order_expected = 0;  // 3, p(p^2-1)/4 or (p^2-1)/4
  std::vector<std::string> mismatches;
  bool pass() const { return mismatches.empty(); }
};

CensusReport census_verify(u64 p);

/// Closed-form order of rot_1 on Y*(p).
u64 rotation_order_formula(u64 p);

// ---------------------------------------------------------------------------

struct PrimitivityResult {
  bool transitive = false;
  bool primitive = false;
  std::vector<u32> witness;     // a proper nontrivial block when imprimitive
  std::size_t pairs_tested = 0;
};

struct PrimitivityOptions {
  std::size_t base = 0;
  /// Restrict the tested points to one per orbit of known stabilizer
  /// elements of the base point.
  bool use_stabilizer = true;
  std::size_t stabilizer_words = 8;
  u64 seed = kDefaultSeed;
};

/// Smallest block of imprimitivity containing {base, alpha}.
std::vector<u32> minimal_block(std::span<const Permutation> gens, std::size_t degree, std::size_t base,
                               std::size_t alpha);
/// Throws std::invalid_argument if the action is not transitive.
PrimitivityResult primitivity(std::span<const Permutation> gens, std::size_t degree,
                              const PrimitivityOptions& opts = {});
/// Block-level test on Y*(p) with base point the block of (3,3,3).
PrimitivityResult primitivity(const SolutionTable& table, std::span<const Gen> gens,
                              const PrimitivityOptions& opts = {});

// ---------------------------------------------------------------------------

struct RelationReport {
  u64 n = 0;
  std::size_t points = 0;
  std::size_t r3_failures = 0;    // R3 == Rot1 after T23
  std::size_t t132_failures = 0;  // T132 == Rot1 after Rot3
  bool pass() const { return r3_failures == 0 && t132_failures == 0; }
};

RelationReport verify_relations(const SolutionTable& table);

// ---------------------------------------------------------------------------

enum class Conclusion { Sym, Alt, AltOrSymConditional, Inconclusive };
const char* to_string(Conclusion c);

struct CertificateChain {
  u64 p = 0;
  std::size_t degree = 0;  // |Y*(p)|
  bool transitive = false;
  std::vector<std::size_t> orbit_sizes;
  bool primitive = false;
  std::vector<u32> primitivity_witness;
  u64 rotation_order = 0;
  // p = 1 mod 4: exponent e with rot_1^e a single p-cycle.
  std::optional<u64> pcycle_exponent;
  bool pcycle_ok = false;
  // p = 3 mod 4: fixed points of rot_1^((p+1)/2).
  std::optional<u64> fixed_points;
  u64 fixed_points_expected = 0;
  bool fixed_points_ok = false;
  std::vector<std::pair<Gen, Parity>> parities;
  bool all_even = false;
  Conclusion parity_class = Conclusion::Inconclusive;  // Alt or Sym by parity alone
  Conclusion conclusion = Conclusion::Inconclusive;
  std::string failed_stage;  // empty unless Inconclusive
  bool expected_alt = false;  // p = 3 mod 16
  std::vector<std::pair<std::string, double>> timings;  // stage -> seconds
};

CertificateChain certify(u64 p, std::span<const Gen> gens = kDefaultGens);

}  // namespace markoff
