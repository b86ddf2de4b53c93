#include "markoff/ff.hpp"

#include <algorithm>
#include <atomic>
#include <random>
#include <stdexcept>
#include <string>

namespace markoff {

u64 pow_mod(u64 base, u64 exp, u64 m) {
  if (m == 1) return 0;
  u64 result = 1;
  base %= m;
  while (exp > 0) {
    if (exp & 1) result = mul_mod(result, base, m);
    base = mul_mod(base, base, m);
    exp >>= 1;
  }
  return result;
}

u64 gcd_u64(u64 a, u64 b) {
  while (b != 0) {
    u64 r = a % b;
    a = b;
    b = r;
  }
  return a;
}

u64 lcm_u64(u64 a, u64 b) {
  if (a == 0 || b == 0) return 0;
  return a / gcd_u64(a, b) * b;
}

bool is_prime(u64 n) {
  if (n < 2) return false;
  for (u64 q : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    if (n % q == 0) return n == q;
  }
  u64 d = n - 1;
  unsigned s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  // This base set is exact below 2^64.
  for (u64 a : {2ULL, 325ULL, 9375ULL, 28178ULL, 450775ULL, 9780504ULL, 1795265022ULL}) {
    u64 x = pow_mod(a, d, n);
    if (x == 0 || x == 1 || x == n - 1) continue;
    bool composite = true;
    for (unsigned r = 1; r < s; ++r) {
      x = mul_mod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

std::vector<u64> primes_in(u64 lo, u64 hi) {
  std::vector<u64> out;
  if (hi < 2 || lo > hi) return out;
  std::vector<bool> composite(hi + 1, false);
  for (u64 i = 2; i * i <= hi; ++i) {
    if (composite[i]) continue;
    for (u64 j = i * i; j <= hi; j += i) composite[j] = true;
  }
  for (u64 i = std::max<u64>(lo, 2); i <= hi; ++i) {
    if (!composite[i]) out.push_back(i);
  }
  return out;
}

u64 Factorization::value() const {
  u64 v = 1;
  for (auto [q, e] : factors) {
    for (unsigned i = 0; i < e; ++i) v *= q;
  }
  return v;
}

std::vector<u64> Factorization::primes() const {
  std::vector<u64> out;
  for (auto [q, e] : factors) out.push_back(q);
  return out;
}

std::vector<u64> Factorization::divisors() const {
  std::vector<u64> divs{1};
  for (auto [q, e] : factors) {
    const std::size_t base = divs.size();
    u64 power = 1;
    for (unsigned i = 0; i < e; ++i) {
      power *= q;
      for (std::size_t k = 0; k < base; ++k) divs.push_back(divs[k] * power);
    }
  }
  std::sort(divs.begin(), divs.end());
  return divs;
}

namespace {

std::atomic<u64> g_rho_seed{kDefaultSeed};

u64 brent_rho(u64 n, std::mt19937_64& rng) {
  if (n % 2 == 0) return 2;
  std::uniform_int_distribution<u64> dist(1, n - 1);
  while (true) {
    u64 y = dist(rng);
    const u64 c = dist(rng);
    const u64 batch = 128;
    u64 g = 1, r = 1, q = 1, x = 0, ys = 0;
    auto step = [&](u64 v) { return (mul_mod(v, v, n) + c) % n; };
    while (g == 1) {
      x = y;
      for (u64 i = 0; i < r; ++i) y = step(y);
      u64 k = 0;
      while (k < r && g == 1) {
        ys = y;
        for (u64 i = 0; i < std::min(batch, r - k); ++i) {
          y = step(y);
          q = mul_mod(q, x > y ? x - y : y - x, n);
        }
        g = gcd_u64(q, n);
        k += batch;
      }
      r <<= 1;
    }
    if (g == n) {
      do {
        ys = step(ys);
        g = gcd_u64(x > ys ? x - ys : ys - x, n);
      } while (g == 1);
    }
    if (g != n) return g;
  }
}

void factor_into(u64 n, std::vector<u64>& out, std::mt19937_64& rng) {
  if (n == 1) return;
  if (is_prime(n)) {
    out.push_back(n);
    return;
  }
  const u64 d = brent_rho(n, rng);
  factor_into(d, out, rng);
  factor_into(n / d, out, rng);
}

Factorization collect(std::vector<u64> primes) {
  std::sort(primes.begin(), primes.end());
  Factorization f;
  for (u64 q : primes) {
    if (!f.factors.empty() && f.factors.back().first == q) {
      ++f.factors.back().second;
    } else {
      f.factors.emplace_back(q, 1);
    }
  }
  return f;
}

}  // namespace

void set_rho_seed(u64 seed) { g_rho_seed.store(seed); }
u64 rho_seed() { return g_rho_seed.load(); }

Factorization factorize(u64 n) { return factorize(n, rho_seed()); }

Factorization factorize(u64 n, u64 seed) {
  if (n < 2) throw std::invalid_argument("factorize: n must be >= 2, got " + std::to_string(n));
  std::vector<u64> primes;
  for (u64 q = 2; q < 1000 && q * q <= n; q += (q == 2 ? 1 : 2)) {
    while (n % q == 0) {
      primes.push_back(q);
      n /= q;
    }
  }
  if (n > 1) {
    std::mt19937_64 rng(seed);
    factor_into(n, primes, rng);
  }
  return collect(std::move(primes));
}

Factorization merge(const Factorization& a, const Factorization& b) {
  std::vector<u64> primes;
  for (const auto* f : {&a, &b}) {
    for (auto [q, e] : f->factors) primes.insert(primes.end(), e, q);
  }
  return collect(std::move(primes));
}

u64 euler_phi(u64 n) {
  if (n == 1) return 1;
  u64 phi = n;
  for (u64 q : factorize(n).primes()) phi = phi / q * (q - 1);
  return phi;
}

// ---------------------------------------------------------------------------

Fp::Fp(u64 p) : p_(p) {
  if (!is_prime(p)) throw std::invalid_argument("modulus " + std::to_string(p) + " is not prime");
}

u64 Fp::reduce(i64 v) const {
  const i64 m = static_cast<i64>(p_ % static_cast<u64>(INT64_MAX));
  i64 r = v % m;
  return static_cast<u64>(r < 0 ? r + m : r);
}

u64 Fp::inv(u64 a) const {
  a %= p_;
  if (a == 0) throw std::domain_error("inverse of zero in F_" + std::to_string(p_));
  return pow_mod(a, p_ - 2, p_);
}

int Fp::legendre(u64 a) const {
  if (p_ == 2) throw std::domain_error("Legendre symbol needs an odd prime modulus");
  a %= p_;
  if (a == 0) return 0;
  return pow_mod(a, (p_ - 1) / 2, p_) == 1 ? 1 : -1;
}

std::optional<u64> Fp::sqrt(u64 a) const {
  a %= p_;
  if (a == 0) return 0;
  if (p_ == 2) return a;
  if (legendre(a) != 1) return std::nullopt;
  u64 r;
  if (p_ % 4 == 3) {
    r = pow_mod(a, (p_ + 1) / 4, p_);
  } else {
    // Tonelli-Shanks
    u64 q = p_ - 1;
    unsigned s = 0;
    while ((q & 1) == 0) {
      q >>= 1;
      ++s;
    }
    u64 z = nonresidue();
    u64 m = s;
    u64 c = pow_mod(z, q, p_);
    u64 t = pow_mod(a, q, p_);
    r = pow_mod(a, (q + 1) / 2, p_);
    while (t != 1) {
      u64 i = 0;
      u64 tt = t;
      while (tt != 1) {
        tt = mul(tt, tt);
        ++i;
      }
      u64 b = c;
      for (u64 k = 0; k + 1 < m - i; ++k) b = mul(b, b);
      m = i;
      c = mul(b, b);
      t = mul(t, c);
      r = mul(r, b);
    }
  }
  return std::min(r, p_ - r);
}

u64 Fp::nonresidue() const {
  if (p_ == 2) throw std::domain_error("F_2 has no quadratic non-residue");
  for (u64 t = 2;; ++t) {
    if (legendre(t) == -1) return t;
  }
}

u64 Fp::order(u64 a) const {
  a %= p_;
  if (a == 0) throw std::domain_error("order of zero is undefined");
  if (p_ == 2) return 1;
  u64 ord = p_ - 1;
  for (auto [q, e] : factorize(p_ - 1).factors) {
    for (unsigned i = 0; i < e && ord % q == 0 && pow(a, ord / q) == 1; ++i) ord /= q;
  }
  return ord;
}

// ---------------------------------------------------------------------------

Fp2::Fp2(u64 p) : fp_(p), t_(0) {
  if (p == 2) throw std::invalid_argument("F_{p^2} model needs an odd prime");
  if (p >= (1ULL << 32)) throw std::invalid_argument("F_{p^2} restricted to p < 2^32");
  t_ = fp_.nonresidue();
}

Fp2Elem Fp2::add(const Fp2Elem& x, const Fp2Elem& y) const {
  return {fp_.add(x.a0, y.a0), fp_.add(x.a1, y.a1)};
}

Fp2Elem Fp2::sub(const Fp2Elem& x, const Fp2Elem& y) const {
  return {fp_.sub(x.a0, y.a0), fp_.sub(x.a1, y.a1)};
}

Fp2Elem Fp2::neg(const Fp2Elem& x) const { return {fp_.neg(x.a0), fp_.neg(x.a1)}; }

Fp2Elem Fp2::mul(const Fp2Elem& x, const Fp2Elem& y) const {
  const u64 a0 = fp_.add(fp_.mul(x.a0, y.a0), fp_.mul(t_, fp_.mul(x.a1, y.a1)));
  const u64 a1 = fp_.add(fp_.mul(x.a0, y.a1), fp_.mul(x.a1, y.a0));
  return {a0, a1};
}

Fp2Elem Fp2::scale(const Fp2Elem& x, u64 c) const {
  c %= fp_.p();
  return {fp_.mul(x.a0, c), fp_.mul(x.a1, c)};
}

Fp2Elem Fp2::pow(Fp2Elem x, u64 e) const {
  Fp2Elem r = one();
  while (e > 0) {
    if (e & 1) r = mul(r, x);
    x = mul(x, x);
    e >>= 1;
  }
  return r;
}

u64 Fp2::norm(const Fp2Elem& x) const {
  return fp_.sub(fp_.mul(x.a0, x.a0), fp_.mul(t_, fp_.mul(x.a1, x.a1)));
}

Fp2Elem Fp2::inv(const Fp2Elem& x) const {
  const u64 n = norm(x);
  if (n == 0) throw std::domain_error("inverse of zero in F_{p^2}");
  return scale(conj(x), fp_.inv(n));
}

Fp2Elem Fp2::sqrt_minus_one() const {
  const u64 minus_one = fp_.p() - 1;
  if (auto r = fp_.sqrt(minus_one)) return {*r, 0};
  // -1 = t * c^2 with c in F_p, so sqrt(-1) = c * sqrt(t).
  const auto c = fp_.sqrt(fp_.div(minus_one, t_));
  return {0, *c};
}

u64 Fp2::order(const Fp2Elem& x) const {
  if (norm(x) == 0) throw std::domain_error("order of zero is undefined");
  const u64 p = fp_.p();
  u64 ord = (p - 1) * (p + 1);
  const Factorization group = merge(factorize(p - 1), factorize(p + 1));
  for (auto [q, e] : group.factors) {
    for (unsigned i = 0; i < e && ord % q == 0 && pow(x, ord / q) == one(); ++i) ord /= q;
  }
  return ord;
}

// ---------------------------------------------------------------------------

namespace {
Fp odd_field(u64 p) {
  if (p % 2 == 0) throw std::invalid_argument("modulus must be an odd prime, got " + std::to_string(p));
  return Fp(p);
}
}  // namespace

int legendre(const FpElem& x) { return odd_field(x.p).legendre(x.value); }

std::optional<FpElem> sqrt_mod(const FpElem& x) {
  auto r = odd_field(x.p).sqrt(x.value);
  if (!r) return std::nullopt;
  return FpElem{*r, x.p};
}

u64 mult_order(const FpElem& x) { return Fp(x.p).order(x.value); }

}  // namespace markoff
