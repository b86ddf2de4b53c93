#pragma once

// Exact Legendre-symbol sums and joint sign counts for the polynomial
// families attached to rot_1-cycles, the rational parametrization of the
// norm-one subgroup of F_{p^2}, and the search for solutions with two
// elliptic coordinates of order divisible by 4.

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "markoff/poly.hpp"
#include "markoff/surface.hpp"

namespace markoff {

struct WeilResult {
  i64 sum = 0;
  std::size_t distinct_roots = 0;
  double bound = 0;  // (m - 1) sqrt(p)
  bool within = false;
};

/// Sum of legendre(f(s)) over s in F_p. Throws on the zero polynomial and
/// when deg f >= p.
WeilResult weil_sum(const PolyFp& f);

enum class Construction { Hyperbolic, Elliptic, EllipticOrder4 };
const char* to_string(Construction c);

struct JointSignCount {
  u64 p = 0;
  u64 x = 0;  // first coordinate after normalizing to |w| = 2d
  Construction construction = Construction::Hyperbolic;
  u64 d = 0;
  u64 m = 0;
  // counts[a][b]: a indexes legendre of the first polynomial (0 -> -1, 1 -> +1)
  u64 counts[2][2] = {{0, 0}, {0, 0}};
  u64 zeros = 0;  // s where either polynomial vanishes
  i64 M1 = 0, M2 = 0, M12 = 0;
  std::vector<std::size_t> root_counts;  // distinct roots of the building blocks
  bool coefficients_in_base = true;
  bool weil_ok = true;
  double bound = 0;
  bool bound_applicable = false;
  bool pass = true;

  u64 n(int a, int b) const { return counts[a < 0 ? 0 : 1][b < 0 ? 0 : 1]; }
};

/// Joint signs of k1 = g(first) g(second) and k2 = g(first*w) g(second*w)
/// for two blocks of C_1(+-x). Each solution must have first coordinate +-x.
/// Throws std::invalid_argument for parabolic x, for solutions in the same
/// block, and for elliptic x with p = 1 (mod 4).
JointSignCount no_correlation_count(u64 p, u64 x, const Triple& first, const Triple& second);

/// The two lexicographically smallest solutions with first coordinate x
/// lying in distinct blocks.
std::pair<Triple, Triple> default_pairs(u64 p, u64 x);

struct HParam {
  u64 s = 0;
  Fp2Elem h;
};

/// h(s) = (2s + i(1 - s^2)) / (1 + s^2). Needs p = 3 (mod 4).
HParam h_param(u64 p, u64 s);

struct HReport {
  u64 p = 0;
  std::size_t distinct = 0;  // image size including -i
  bool all_norm_one = false;
  bool pass = false;
};
HReport verify_H(u64 p);

struct Order4Witness {
  Triple t;
  u64 order_x = 0, order_y = 0;
  int legendre_x_plus_2 = 0, legendre_x_minus_2 = 0;
  int legendre_y_plus_2 = 0, legendre_y_minus_2 = 0;
};

/// Whether t solves the equation with x, y elliptic and 4 dividing both
/// omega orders.
bool is_elliptic_order4_witness(u64 p, const Triple& t);
Order4Witness describe_witness(u64 p, const Triple& t);
/// Lexicographic search. Needs p = 3 (mod 4), p not in {3, 11}.
Order4Witness find_elliptic_order4(u64 p);

/// Elliptic x with max(|w|, |-w|) = p + 1, smallest first.
std::vector<u64> maximal_elliptic(u64 p);

/// Counts s with legendre(g1(s)) = -1 and legendre(g2(s)) = 1 for
/// g1,2 = (1+s^2)[2s(A+A^p) + (1-s^2) i(A-A^p) +- 2(1+s^2)].
/// The bound (p - 11 sqrt p)/4 is asserted for p > 121.
JointSignCount prop56_count(u64 p, u64 x);

void write_csv_header(std::ostream& os);
void write_csv_row(std::ostream& os, const JointSignCount& c);

}  // namespace markoff
