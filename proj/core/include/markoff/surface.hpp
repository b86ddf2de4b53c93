#pragma once

// Solutions of x^2 + y^2 + z^2 = xyz over Z/nZ for square-free n: the set
// X*(n) of nonzero solutions, its quotient Y*(n) by double sign changes,
// conic sections and coordinate classification.

#include <compare>
#include <cstddef>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "markoff/ff.hpp"

namespace markoff {

struct Triple {
  u32 x = 0, y = 0, z = 0;
  auto operator<=>(const Triple&) const = default;
};

std::ostream& operator<<(std::ostream& os, const Triple& t);

bool is_markoff(const Triple& t, u64 n);

enum class CoordClass { Parabolic, Hyperbolic, Elliptic };
const char* to_string(CoordClass c);

/// Requires an odd prime modulus.
CoordClass classify(u64 x, const Fp& f);

/// A root of T^2 - xT + 1. Hyperbolic x: the smaller of the two roots in F_p
/// (returned embedded). Elliptic x: (x + c*sqrt(t))/2 with c the canonical
/// square root of (x^2 - 4)/t. Throws std::domain_error for parabolic x.
Fp2Elem omega_of(u64 x, const Fp2& F);

/// Thrown when a composite table would exceed the configured size limit.
class LimitExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct EnumerateOptions {
  u64 max_triples = 10'000'000;
  u64 max_prime = 1u << 16;
};

struct Block {
  Triple canonical;
  std::vector<Triple> members;  // sorted
};

struct ConicSection {
  int coord = 1;  // 1, 2 or 3
  u32 value = 0;
  bool up_to_sign = false;
  std::vector<u32> members;  // ordinals, solution level or block level
};

/// Indexed X*(n). For prime n the ordinals follow lexicographic order. For
/// composite n = p1*...*pk (primes ascending) an ordinal is the mixed-radix
/// number whose digits are the ordinals in the prime tables, p1 most
/// significant; triples are reconstructed through the CRT on demand.
class SolutionTable {
 public:
  static SolutionTable build(u64 n, const EnumerateOptions& opts = {});

  u64 modulus() const { return n_; }
  bool is_prime_table() const { return components_.empty(); }
  std::size_t size() const { return size_; }
  std::size_t block_count() const { return block_count_; }
  bool empty() const { return size_ == 0; }

  /// Prime factors (ascending) and their tables; a prime table lists itself.
  const std::vector<u64>& primes() const { return primes_; }
  const SolutionTable& component(std::size_t j) const;

  Triple triple(std::size_t ordinal) const;
  /// Ordinal of t, or npos when t is not in X*(n).
  std::size_t index_of(const Triple& t) const;
  std::size_t index_of_code(u64 code) const;
  u64 code(const Triple& t) const { return (u64(t.x) * n_ + t.y) * n_ + t.z; }

  u32 block_id(std::size_t ordinal) const;
  /// Ordinal of the lexicographically least member of block b.
  std::size_t block_rep(u32 b) const;
  Block block(std::size_t ordinal) const;

  /// Solution-level C_j(a), or block-level C_j(+-a) when up_to_sign.
  ConicSection conic(int coord, u32 value, bool up_to_sign) const;

  /// Sign variants of t: prime-by-prime double sign changes.
  std::vector<Triple> sign_variants(const Triple& t) const;

  void write_csv(std::ostream& os) const;
  /// u32 n, u32 count, then count packed codes, all little-endian.
  /// Requires n^3 <= 2^32 so that codes fit.
  void write_binary(std::ostream& os) const;

  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

 private:
  void build_prime(u64 p, const EnumerateOptions& opts);
  void build_composite(u64 n, const std::vector<u64>& primes, const EnumerateOptions& opts);
  Triple crt(const std::vector<Triple>& parts) const;

  u64 n_ = 0;
  std::size_t size_ = 0;
  std::size_t block_count_ = 0;
  std::vector<u64> primes_;

  // prime tables
  std::vector<Triple> triples_;
  std::vector<u32> row_start_;  // (x*p + y) -> first ordinal, size p^2 + 1
  std::vector<u32> block_of_;
  std::vector<u32> block_rep_;

  // composite tables
  std::vector<SolutionTable> components_;
  std::vector<u64> crt_basis_;  // e_j with e_j = 1 mod p_j, 0 mod p_i (i != j)
};

/// Parametrized listing of the solution-level conic C_1(x) over F_p: the
/// triples (x, a + b, a*w + b/w) with ab = x^2/(x^2-4) for hyperbolic x, or
/// (x, A + A^p, A*w + A^p/w) with A^(p+1) = x^2/(x^2-4) for elliptic x.
/// Sorted and duplicate-free. Throws std::domain_error for parabolic x.
std::vector<Triple> parametrize_conic(u64 p, u64 x);

/// Throws std::invalid_argument with the offending square factor.
void require_square_free(u64 n);

}  // namespace markoff
