#pragma once

// Multiplicative order modulo p of a norm-one quadratic unit a, a root of
// T^2 - tT + 1 (t = 3 gives a = (3 + sqrt 5)/2), the companion integer
// sequence A_k = (a^k - a^-k)/(a - a^-1), and exact counts of primes where
// the order is small.

#include <iosfwd>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "markoff/ff.hpp"

namespace markoff {

using BigInt = boost::multiprecision::cpp_int;

/// Root of T^2 - trace*T + 1; discriminant trace^2 - 4.
struct QuadUnit {
  u64 trace = 3;
  u64 discriminant() const { return trace * trace - 4; }
  /// log|a| for the real root of larger absolute value.
  double log_abs() const;
};

/// A_0 = 0, A_1 = 1, A_{k+1} = trace*A_k - A_{k-1}.
BigInt a_seq(u64 k, const QuadUnit& a = {});
std::vector<BigInt> a_seq_prefix(u64 k_max, const QuadUnit& a = {});

struct OrderRecord {
  u64 p = 0;
  int residue = 0;  // legendre(D, p); 0 when p | D or p = 2
  u64 order = 0;
  u64 group = 0;    // p - residue for odd p not dividing D
  bool divides = false;
  bool large = false;  // order >= 32 sqrt(p + 1)
};

/// o_p(a). p = 2 is computed in F_4; p | D uses the double root trace/2.
OrderRecord op_order(u64 p, const QuadUnit& a = {});

struct Checkpoint {
  u64 x = 0;
  u64 primes = 0;             // pi(x)
  u64 below_sqrt_x = 0;       // #{p <= x : o_p <= C sqrt x}
  u64 below_sqrt_p = 0;       // #{p <= x : o_p < C sqrt(p + 1)}
  double ratio_sqrt_x() const { return primes ? double(below_sqrt_x) / double(primes) : 0.0; }
  double ratio_sqrt_p() const { return primes ? double(below_sqrt_p) / double(primes) : 0.0; }
};

struct ScanSummary {
  u64 x_max = 0;
  double C = 0;
  u64 spacing = 10;
  std::vector<Checkpoint> checkpoints;  // powers of spacing up to x_max, then x_max
  Checkpoint total;
  std::vector<OrderRecord> records;
  std::vector<u64> divisibility_failures;  // p not dividing 10 with o_p not dividing p - residue
  static constexpr double kDelta = 0.086071;
};

struct ScanOptions {
  double C = 32.0;
  u64 spacing = 10;  // checkpoints at spacing, spacing^2, ...
  unsigned workers = 1;  // results do not depend on it
  QuadUnit unit;
};

ScanSummary scan(u64 x_max, const ScanOptions& opts = {});

struct DivisibilityCheck {
  u64 p_max = 0, k_max = 0;
  // (p, k) where p | A_k and o_p does not divide k, or the reverse.
  std::vector<std::pair<u64, u64>> literal_failures;
  // Same with o_p | 2k in place of o_p | k.
  std::vector<std::pair<u64, u64>> doubled_failures;
};

/// Primes p <= p_max not dividing 2D, 1 <= k <= k_max.
DivisibilityCheck divisibility_check(u64 p_max, u64 k_max, const QuadUnit& a = {});

void write_records_csv(std::ostream& os, const std::vector<OrderRecord>& records);

}  // namespace markoff
