#pragma once

// PSL(2,p) for small p: generating pairs, the trace map to triples, the
// commutator-trace invariant Q(x,y,z) = x^2 + y^2 + z^2 - xyz - 2, the
// correspondence between Q = -2 generating pairs and Y*(p), and the Nielsen
// moves r, s, t.

#include <array>
#include <cstdint>
#include <vector>

#include "markoff/surface.hpp"

namespace markoff {

/// 2x2 matrix over F_p, row major: [[a, b], [c, d]].
struct Mat2 {
  u32 a = 1, b = 0, c = 0, d = 1;
  auto operator<=>(const Mat2&) const = default;
};

Mat2 mat_mul(const Mat2& m, const Mat2& n, u64 p);
Mat2 mat_inv(const Mat2& m, u64 p);  // determinant 1 assumed
u64 mat_trace(const Mat2& m, u64 p);
/// Sign-class representative: first nonzero entry in [1, (p-1)/2].
Mat2 normalize(const Mat2& m, u64 p);

inline constexpr u64 kDefaultT2MaxPrime = 13;

/// PSL(2,p) enumerated as normalized representatives, with a full
/// multiplication table.
class PSL2 {
 public:
  explicit PSL2(u64 p, u64 max_prime = kDefaultT2MaxPrime);

  u64 p() const { return p_; }
  std::size_t order() const { return elems_.size(); }
  const Mat2& element(u32 i) const { return elems_[i]; }
  u32 index_of(const Mat2& m) const;
  u32 identity() const { return identity_; }
  u32 mul(u32 i, u32 j) const { return table_[std::size_t(i) * elems_.size() + j]; }
  u32 inv(u32 i) const { return inverse_[i]; }

  /// Closure of {A, B} under multiplication is the whole group.
  bool is_generating(u32 a, u32 b) const;

 private:
  u64 p_;
  std::vector<Mat2> elems_;
  std::vector<u32> index_;  // packed entries -> element, or npos
  std::vector<u32> table_;
  std::vector<u32> inverse_;
  u32 identity_ = 0;
};

/// (tr A, tr B, tr AB) computed on the stored lifts; other lifts differ by
/// a double sign change.
Triple trace_triple(const PSL2& g, u32 a, u32 b);
u64 q_invariant(const Triple& t, u64 p);
/// tr(A B A^-1 B^-1), independent of lifts.
u64 commutator_trace(const PSL2& g, u32 a, u32 b);

struct BijectionReport {
  u64 p = 0;
  u64 group_order = 0;
  u64 pairs = 0;              // all ordered pairs
  u64 q_minus2_pairs = 0;
  u64 generating_pairs = 0;   // generating pairs with Q = -2
  u64 expected_fiber = 0;     // p(p^2 - 1)
  std::vector<u64> fibers;    // per block of Y*(p)
  u64 blocks_hit = 0;
  u64 bad_fibers = 0;
  u64 zero_triple_generating = 0;
  u64 zero_triple_pairs = 0;
  u64 commutator_mismatches = 0;
  u64 commutator_checked = 0;
  u64 markoff_identity_mismatches = 0;  // over all of F_p^3
  bool pass = false;
};

/// Q = tr[A,B] is checked on every pair for p <= 7 and on `samples` seeded
/// random pairs otherwise.
BijectionReport verify_bijection(u64 p, u64 seed = 0, u64 samples = 20000);

struct NielsenReport {
  u64 p = 0;
  u64 pairs_checked = 0;
  // Pairs where the move disagrees with the block-level generator.
  std::array<u64, 3> failures = {0, 0, 0};
  // Induced block permutations agree with R3, tau12, tau23.
  std::array<bool, 3> permutation_matches = {false, false, false};
  bool pass = false;
};

/// r: (A, B) -> (A^-1, B), s: (A, B) -> (B, A), t: (A, B) -> (A^-1, AB),
/// checked on every generating pair with Q = -2.
NielsenReport nielsen_check(u64 p);

}  // namespace markoff
