#pragma once

// Dense univariate polynomials over F_p and F_{p^2}, coefficients stored
// lowest degree first.

#include <vector>

#include "markoff/ff.hpp"

namespace markoff {

class PolyFp {
 public:
  PolyFp(u64 p, std::vector<u64> coeffs = {});
  static PolyFp monomial(u64 p, u64 coeff, std::size_t degree);

  u64 p() const { return p_; }
  const std::vector<u64>& coeffs() const { return c_; }
  bool is_zero() const { return c_.empty(); }
  /// -1 for the zero polynomial.
  long degree() const { return static_cast<long>(c_.size()) - 1; }
  u64 lead() const { return c_.empty() ? 0 : c_.back(); }

  u64 eval(u64 s) const;  // Horner
  PolyFp operator+(const PolyFp& o) const;
  PolyFp operator-(const PolyFp& o) const;
  PolyFp operator*(const PolyFp& o) const;
  PolyFp scaled(u64 c) const;
  PolyFp pow(u64 e) const;
  PolyFp derivative() const;
  PolyFp monic() const;
  /// Quotient and remainder; throws std::domain_error on a zero divisor.
  std::pair<PolyFp, PolyFp> divmod(const PolyFp& d) const;
  bool operator==(const PolyFp& o) const { return p_ == o.p_ && c_ == o.c_; }

 private:
  void trim();
  u64 p_;
  std::vector<u64> c_;
};

/// Monic gcd; gcd(0, 0) = 0.
PolyFp gcd(PolyFp a, PolyFp b);

/// Number of distinct roots in the algebraic closure. Needs 0 <= deg < p.
std::size_t distinct_roots(const PolyFp& f);

/// Whether f = c * g^2 over the algebraic closure, via Yun's square-free
/// factorization. Needs 0 <= deg < p.
bool is_square_in_closure(const PolyFp& f);

class PolyFp2 {
 public:
  PolyFp2(const Fp2& F, std::vector<Fp2Elem> coeffs = {});
  const std::vector<Fp2Elem>& coeffs() const { return c_; }
  PolyFp2 operator+(const PolyFp2& o) const;
  PolyFp2 operator-(const PolyFp2& o) const;
  PolyFp2 operator*(const PolyFp2& o) const;
  PolyFp2 scaled(const Fp2Elem& c) const;
  PolyFp2 pow(u64 e) const;
  /// The polynomial over F_p if every coefficient lies in F_p.
  std::optional<PolyFp> to_base() const;

 private:
  void trim();
  const Fp2* F_;
  std::vector<Fp2Elem> c_;
};

}  // namespace markoff
