#include "markoff/poly.hpp"

#include <algorithm>
#include <stdexcept>

namespace markoff {

PolyFp::PolyFp(u64 p, std::vector<u64> coeffs) : p_(p), c_(std::move(coeffs)) {
  for (u64& c : c_) c %= p_;
  trim();
}

PolyFp PolyFp::monomial(u64 p, u64 coeff, std::size_t degree) {
  std::vector<u64> c(degree + 1, 0);
  c[degree] = coeff;
  return PolyFp(p, std::move(c));
}

void PolyFp::trim() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

u64 PolyFp::eval(u64 s) const {
  u64 acc = 0;
  for (std::size_t i = c_.size(); i-- > 0;) acc = (mul_mod(acc, s, p_) + c_[i]) % p_;
  return acc;
}

PolyFp PolyFp::operator+(const PolyFp& o) const {
  std::vector<u64> c(std::max(c_.size(), o.c_.size()), 0);
  for (std::size_t i = 0; i < c.size(); ++i) {
    const u64 a = i < c_.size() ? c_[i] : 0;
    const u64 b = i < o.c_.size() ? o.c_[i] : 0;
    c[i] = (a + b) % p_;
  }
  return PolyFp(p_, std::move(c));
}

PolyFp PolyFp::operator-(const PolyFp& o) const { return *this + o.scaled(p_ - 1); }

PolyFp PolyFp::operator*(const PolyFp& o) const {
  if (is_zero() || o.is_zero()) return PolyFp(p_);
  std::vector<u64> c(c_.size() + o.c_.size() - 1, 0);
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (c_[i] == 0) continue;
    for (std::size_t j = 0; j < o.c_.size(); ++j) c[i + j] = (c[i + j] + mul_mod(c_[i], o.c_[j], p_)) % p_;
  }
  return PolyFp(p_, std::move(c));
}

PolyFp PolyFp::scaled(u64 k) const {
  std::vector<u64> c(c_);
  for (u64& v : c) v = mul_mod(v, k % p_, p_);
  return PolyFp(p_, std::move(c));
}

PolyFp PolyFp::pow(u64 e) const {
  PolyFp result(p_, {1});
  PolyFp base = *this;
  while (e > 0) {
    if (e & 1) result = result * base;
    e >>= 1;
    if (e > 0) base = base * base;
  }
  return result;
}

PolyFp PolyFp::derivative() const {
  std::vector<u64> c;
  for (std::size_t i = 1; i < c_.size(); ++i) c.push_back(mul_mod(c_[i], i % p_, p_));
  return PolyFp(p_, std::move(c));
}

PolyFp PolyFp::monic() const {
  if (is_zero()) return *this;
  return scaled(pow_mod(lead(), p_ - 2, p_));
}

std::pair<PolyFp, PolyFp> PolyFp::divmod(const PolyFp& d) const {
  if (d.is_zero()) throw std::domain_error("polynomial division by zero");
  std::vector<u64> r(c_);
  const std::size_t dd = d.c_.size() - 1;
  if (r.size() <= dd) return {PolyFp(p_), *this};
  std::vector<u64> q(r.size() - dd, 0);
  const u64 inv_lead = pow_mod(d.lead(), p_ - 2, p_);
  for (std::size_t k = r.size(); k-- > dd;) {
    const u64 coef = mul_mod(r[k], inv_lead, p_);
    q[k - dd] = coef;
    if (coef == 0) continue;
    for (std::size_t j = 0; j <= dd; ++j) {
      r[k - dd + j] = (r[k - dd + j] + p_ - mul_mod(coef, d.c_[j], p_)) % p_;
    }
  }
  return {PolyFp(p_, std::move(q)), PolyFp(p_, std::move(r))};
}

PolyFp gcd(PolyFp a, PolyFp b) {
  while (!b.is_zero()) {
    PolyFp r = a.divmod(b).second;
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

namespace {
void require_small_degree(const PolyFp& f) {
  if (f.is_zero()) throw std::invalid_argument("zero polynomial");
  if (static_cast<u64>(f.degree()) >= f.p()) throw std::invalid_argument("degree must be below the characteristic");
}
}  // namespace

std::size_t distinct_roots(const PolyFp& f) {
  require_small_degree(f);
  if (f.degree() == 0) return 0;
  return static_cast<std::size_t>(f.degree() - gcd(f, f.derivative()).degree());
}

bool is_square_in_closure(const PolyFp& f) {
  require_small_degree(f);
  // Yun: f = c * prod a_i^i with the a_i square-free and pairwise coprime.
  PolyFp a = gcd(f, f.derivative());
  PolyFp b = f.divmod(a).first;
  PolyFp c = f.derivative().divmod(a).first;
  PolyFp d = c - b.derivative();
  for (std::size_t i = 1; b.degree() > 0; ++i) {
    const PolyFp ai = gcd(b, d);
    if (i % 2 == 1 && ai.degree() > 0) return false;
    b = b.divmod(ai).first;
    c = d.divmod(ai).first;
    d = c - b.derivative();
  }
  return true;
}

// ---------------------------------------------------------------------------

PolyFp2::PolyFp2(const Fp2& F, std::vector<Fp2Elem> coeffs) : F_(&F), c_(std::move(coeffs)) { trim(); }

void PolyFp2::trim() {
  while (!c_.empty() && c_.back() == Fp2Elem{}) c_.pop_back();
}

PolyFp2 PolyFp2::operator+(const PolyFp2& o) const {
  std::vector<Fp2Elem> c(std::max(c_.size(), o.c_.size()));
  for (std::size_t i = 0; i < c.size(); ++i) {
    const Fp2Elem a = i < c_.size() ? c_[i] : Fp2Elem{};
    const Fp2Elem b = i < o.c_.size() ? o.c_[i] : Fp2Elem{};
    c[i] = F_->add(a, b);
  }
  return PolyFp2(*F_, std::move(c));
}

PolyFp2 PolyFp2::operator-(const PolyFp2& o) const { return *this + o.scaled(F_->neg(F_->one())); }

PolyFp2 PolyFp2::operator*(const PolyFp2& o) const {
  if (c_.empty() || o.c_.empty()) return PolyFp2(*F_);
  std::vector<Fp2Elem> c(c_.size() + o.c_.size() - 1);
  for (std::size_t i = 0; i < c_.size(); ++i) {
    for (std::size_t j = 0; j < o.c_.size(); ++j) c[i + j] = F_->add(c[i + j], F_->mul(c_[i], o.c_[j]));
  }
  return PolyFp2(*F_, std::move(c));
}

PolyFp2 PolyFp2::scaled(const Fp2Elem& k) const {
  std::vector<Fp2Elem> c(c_);
  for (auto& v : c) v = F_->mul(v, k);
  return PolyFp2(*F_, std::move(c));
}

PolyFp2 PolyFp2::pow(u64 e) const {
  PolyFp2 result(*F_, {F_->one()});
  PolyFp2 base = *this;
  while (e > 0) {
    if (e & 1) result = result * base;
    e >>= 1;
    if (e > 0) base = base * base;
  }
  return result;
}

std::optional<PolyFp> PolyFp2::to_base() const {
  std::vector<u64> c;
  for (const auto& v : c_) {
    if (v.a1 != 0) return std::nullopt;
    c.push_back(v.a0);
  }
  return PolyFp(F_->p(), std::move(c));
}

}  // namespace markoff
