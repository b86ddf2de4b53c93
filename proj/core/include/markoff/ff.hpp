#pragma once

// Arithmetic in F_p and F_{p^2}, Legendre symbols, square roots,
// 64-bit factorization and multiplicative orders.

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

namespace markoff {

using u32 = std::uint32_t;
using u64 = std::uint64_t;
using i64 = std::int64_t;
using u128 = unsigned __int128;

inline u64 mul_mod(u64 a, u64 b, u64 m) {
  return static_cast<u64>(static_cast<u128>(a) * b % m);
}
u64 pow_mod(u64 base, u64 exp, u64 m);
u64 gcd_u64(u64 a, u64 b);
u64 lcm_u64(u64 a, u64 b);

/// Deterministic Miller-Rabin, exact for every 64-bit input.
bool is_prime(u64 n);

/// Sieve of Eratosthenes; primes in [lo, hi].
std::vector<u64> primes_in(u64 lo, u64 hi);

struct Factorization {
  std::vector<std::pair<u64, unsigned>> factors;  // ascending primes

  u64 value() const;
  std::vector<u64> primes() const;
  std::vector<u64> divisors() const;  // ascending
  bool operator==(const Factorization&) const = default;
};

/// Fixed default seed for the rho step; overridable for reproducibility checks.
inline constexpr u64 kDefaultSeed = 0x6d61726b6f6666ULL;
void set_rho_seed(u64 seed);
u64 rho_seed();

/// Trial division by small primes, then Brent's rho with Miller-Rabin
/// certification of every reported prime. Throws std::invalid_argument for n < 2.
Factorization factorize(u64 n);
Factorization factorize(u64 n, u64 seed);
Factorization merge(const Factorization& a, const Factorization& b);

u64 euler_phi(u64 n);

/// The prime field F_p. All element values are canonical residues in [0, p).
class Fp {
 public:
  explicit Fp(u64 p);  // throws std::invalid_argument unless p is prime

  u64 p() const { return p_; }
  u64 reduce(i64 v) const;
  u64 add(u64 a, u64 b) const { u64 s = a % p_ + b % p_; return s >= p_ ? s - p_ : s; }
  u64 sub(u64 a, u64 b) const { a %= p_; b %= p_; return a >= b ? a - b : a + p_ - b; }
  u64 neg(u64 a) const { a %= p_; return a == 0 ? 0 : p_ - a; }
  u64 mul(u64 a, u64 b) const { return mul_mod(a, b, p_); }
  u64 pow(u64 a, u64 e) const { return pow_mod(a, e, p_); }
  u64 inv(u64 a) const;  // throws std::domain_error on 0
  u64 div(u64 a, u64 b) const { return mul(a, inv(b)); }

  /// Euler's criterion. Requires odd p.
  int legendre(u64 a) const;
  /// Root in [0, p/2] when one exists.
  std::optional<u64> sqrt(u64 a) const;
  /// Smallest positive quadratic non-residue. Requires odd p.
  u64 nonresidue() const;
  /// Multiplicative order, via factoring p - 1. Throws on 0.
  u64 order(u64 a) const;

 private:
  u64 p_;
};

/// Element a0 + a1*sqrt(t) of F_{p^2}, t the field's fixed non-residue.
struct Fp2Elem {
  u64 a0 = 0;
  u64 a1 = 0;
  bool operator==(const Fp2Elem&) const = default;
};

/// F_{p^2} = F_p(sqrt(t)) with t the smallest non-residue.
/// Restricted to odd p < 2^32 so that p^2 - 1 fits in 64 bits.
class Fp2 {
 public:
  explicit Fp2(u64 p);

  const Fp& base() const { return fp_; }
  u64 p() const { return fp_.p(); }
  u64 t() const { return t_; }

  Fp2Elem embed(u64 a) const { return {a % fp_.p(), 0}; }
  Fp2Elem one() const { return {1, 0}; }
  bool in_base(const Fp2Elem& e) const { return e.a1 == 0; }

  Fp2Elem add(const Fp2Elem& x, const Fp2Elem& y) const;
  Fp2Elem sub(const Fp2Elem& x, const Fp2Elem& y) const;
  Fp2Elem neg(const Fp2Elem& x) const;
  Fp2Elem mul(const Fp2Elem& x, const Fp2Elem& y) const;
  Fp2Elem scale(const Fp2Elem& x, u64 c) const;
  Fp2Elem pow(Fp2Elem x, u64 e) const;
  Fp2Elem inv(const Fp2Elem& x) const;  // throws std::domain_error on 0
  Fp2Elem div(const Fp2Elem& x, const Fp2Elem& y) const { return mul(x, inv(y)); }
  /// a0 - a1*sqrt(t), which equals x^p.
  Fp2Elem conj(const Fp2Elem& x) const { return {x.a0, fp_.neg(x.a1)}; }
  /// x^(p+1) = a0^2 - t*a1^2.
  u64 norm(const Fp2Elem& x) const;

  /// A square root of -1: in F_p when p = 1 (mod 4), otherwise in F_{p^2}.
  Fp2Elem sqrt_minus_one() const;
  /// Multiplicative order, via factoring p^2 - 1 = (p - 1)(p + 1). Throws on 0.
  u64 order(const Fp2Elem& x) const;

 private:
  Fp fp_;
  u64 t_;
};

/// Residue paired with its modulus.
struct FpElem {
  u64 value = 0;
  u64 p = 0;
};

int legendre(const FpElem& x);
std::optional<FpElem> sqrt_mod(const FpElem& x);
u64 mult_order(const FpElem& x);

}  // namespace markoff
