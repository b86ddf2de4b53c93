#pragma once

// Brute-force reference implementations used as test oracles. Nothing here
// shares code with the library beyond plain integer types.

#include <algorithm>
#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <queue>
#include <set>
#include <tuple>
#include <vector>

namespace oracle {

using u64 = std::uint64_t;
using i64 = std::int64_t;

inline u64 mulm(u64 a, u64 b, u64 m) { return static_cast<u64>((unsigned __int128)a * b % m); }

inline bool is_prime(u64 n) {
  if (n < 2) return false;
  for (u64 d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

inline std::vector<u64> primes_upto(u64 hi, u64 lo = 2) {
  std::vector<u64> out;
  for (u64 n = lo; n <= hi; ++n)
    if (is_prime(n)) out.push_back(n);
  return out;
}

inline std::map<u64, unsigned> trial_factor(u64 n) {
  std::map<u64, unsigned> f;
  for (u64 d = 2; d * d <= n; ++d)
    while (n % d == 0) {
      ++f[d];
      n /= d;
    }
  if (n > 1) ++f[n];
  return f;
}

// Legendre symbol by listing squares.
inline int legendre(u64 a, u64 p) {
  a %= p;
  if (a == 0) return 0;
  for (u64 s = 1; s < p; ++s)
    if (s * s % p == a) return 1;
  return -1;
}

inline std::vector<u64> sqrts(u64 a, u64 p) {
  std::vector<u64> out;
  for (u64 s = 0; s < p; ++s)
    if (s * s % p == a % p) out.push_back(s);
  return out;
}

inline u64 order_mod(u64 a, u64 p) {
  a %= p;
  u64 x = a, k = 1;
  while (x != 1) {
    x = x * a % p;
    ++k;
  }
  return k;
}

// F_{p^2} as pairs (a, b) = a + b*r with r^2 = nr, nr found by search.
struct F2 {
  u64 p, nr;
  explicit F2(u64 p_) : p(p_), nr(2) {
    while (legendre(nr, p) != -1) ++nr;
  }
  using E = std::pair<u64, u64>;
  E mul(E x, E y) const {
    return {(x.first * y.first + nr * (x.second * y.second % p)) % p, (x.first * y.second + x.second * y.first) % p};
  }
  u64 order(E x) const {
    E y = x;
    u64 k = 1;
    while (y != E{1, 0}) {
      y = mul(y, x);
      ++k;
    }
    return k;
  }
  // All roots of T^2 - xT + 1 in F_{p^2}.
  std::vector<E> omega_roots(u64 x) const {
    std::vector<E> out;
    for (u64 a = 0; a < p; ++a)
      for (u64 b = 0; b < p; ++b) {
        const E w{a, b};
        const E w2 = mul(w, w);
        const E lhs{(w2.first + p * p - x % p * a % p + 1) % p, (w2.second + p - x % p * b % p) % p};
        if (lhs == E{0, 0}) out.push_back(w);
      }
    return out;
  }
};

using T3 = std::array<u64, 3>;

inline std::vector<T3> markoff_solutions(u64 n) {
  std::vector<T3> out;
  for (u64 x = 0; x < n; ++x)
    for (u64 y = 0; y < n; ++y)
      for (u64 z = 0; z < n; ++z) {
        if ((x * x + y * y + z * z) % n != x * y % n * z % n) continue;
        // Excluded when it vanishes modulo some prime factor.
        bool zero_somewhere = false;
        for (u64 q = 2; q <= n; ++q)
          if (n % q == 0 && is_prime(q) && x % q == 0 && y % q == 0 && z % q == 0) zero_somewhere = true;
        if (!zero_somewhere) out.push_back({x, y, z});
      }
  return out;
}

// Canonical block representative under double sign changes modulo prime p.
inline T3 block_rep(T3 t, u64 p) {
  const auto ng = [p](u64 v) { return (p - v) % p; };
  std::array<T3, 4> v = {t, T3{t[0], ng(t[1]), ng(t[2])}, T3{ng(t[0]), t[1], ng(t[2])}, T3{ng(t[0]), ng(t[1]), t[2]}};
  return *std::min_element(v.begin(), v.end());
}

inline T3 rot1(T3 t, u64 n) { return {t[0], t[2], (t[0] * t[2] % n + n - t[1]) % n}; }
inline T3 rot2(T3 t, u64 n) { return {(t[0] * t[1] % n + n - t[2]) % n, t[1], t[0]}; }
inline T3 rot3(T3 t, u64 n) { return {t[1], (t[1] * t[2] % n + n - t[0]) % n, t[2]}; }
inline T3 tau12(T3 t, u64) { return {t[1], t[0], t[2]}; }

// Orbit of start under rot1, rot2, rot3, tau12 by BFS over a std::set.
inline std::size_t orbit_size(T3 start, u64 n, bool blocks) {
  const auto canon = [&](T3 t) { return blocks ? block_rep(t, n) : t; };
  std::set<T3> seen{canon(start)};
  std::queue<T3> q;
  q.push(canon(start));
  while (!q.empty()) {
    const T3 t = q.front();
    q.pop();
    for (T3 u : {rot1(t, n), rot2(t, n), rot3(t, n), tau12(t, n)}) {
      u = canon(u);
      if (seen.insert(u).second) q.push(u);
    }
  }
  return seen.size();
}

// Sum of legendre(f(s)) with f given by coefficients low to high.
inline i64 legendre_sum(const std::vector<u64>& f, u64 p) {
  i64 sum = 0;
  for (u64 s = 0; s < p; ++s) {
    u64 v = 0, sk = 1;
    for (u64 c : f) {
      v = (v + c % p * sk) % p;
      sk = sk * s % p;
    }
    sum += legendre(v, p);
  }
  return sum;
}

// Order of the companion matrix [[t, -1], [1, 0]] modulo p.
inline u64 companion_order(u64 t, u64 p) {
  using M = std::array<u64, 4>;
  const M c{t % p, p - 1, 1, 0};
  const auto mm = [p](const M& a, const M& b) {
    return M{(a[0] * b[0] + a[1] * b[2]) % p, (a[0] * b[1] + a[1] * b[3]) % p, (a[2] * b[0] + a[3] * b[2]) % p,
             (a[2] * b[1] + a[3] * b[3]) % p};
  };
  M x = c;
  u64 k = 1;
  while (x != M{1, 0, 0, 1}) {
    x = mm(x, c);
    ++k;
  }
  return k;
}

}  // namespace oracle
