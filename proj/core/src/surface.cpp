#include "markoff/surface.hpp"

#include <algorithm>
#include <ostream>
#include <set>

namespace markoff {

std::ostream& operator<<(std::ostream& os, const Triple& t) {
  return os << '(' << t.x << ',' << t.y << ',' << t.z << ')';
}

bool is_markoff(const Triple& t, u64 n) {
  if (n == 0) return false;
  const u64 x = t.x % n, y = t.y % n, z = t.z % n;
  const u64 lhs = (mul_mod(x, x, n) + mul_mod(y, y, n) + mul_mod(z, z, n)) % n;
  return lhs == mul_mod(mul_mod(x, y, n), z, n);
}

const char* to_string(CoordClass c) {
  switch (c) {
    case CoordClass::Parabolic: return "parabolic";
    case CoordClass::Hyperbolic: return "hyperbolic";
    case CoordClass::Elliptic: return "elliptic";
  }
  return "?";
}

CoordClass classify(u64 x, const Fp& f) {
  x %= f.p();
  const int l = f.legendre(f.sub(f.mul(x, x), 4 % f.p()));
  if (l == 0) return CoordClass::Parabolic;
  return l == 1 ? CoordClass::Hyperbolic : CoordClass::Elliptic;
}

Fp2Elem omega_of(u64 x, const Fp2& F) {
  const Fp& f = F.base();
  x %= f.p();
  const u64 disc = f.sub(f.mul(x, x), 4);
  const u64 half = f.inv(2);
  switch (classify(x, f)) {
    case CoordClass::Parabolic:
      throw std::domain_error("omega is undefined for parabolic x = " + std::to_string(x));
    case CoordClass::Hyperbolic: {
      const u64 s = *f.sqrt(disc);
      const u64 r1 = f.mul(f.add(x, s), half);
      const u64 r2 = f.mul(f.sub(x, s), half);
      return F.embed(std::min(r1, r2));
    }
    case CoordClass::Elliptic: {
      const u64 c = *f.sqrt(f.div(disc, F.t()));
      return {f.mul(x, half), f.mul(c, half)};
    }
  }
  return {};
}

void require_square_free(u64 n) {
  if (n < 2) throw std::invalid_argument("modulus must be >= 2, got " + std::to_string(n));
  for (auto [q, e] : factorize(n).factors) {
    if (e > 1) {
      throw std::invalid_argument("modulus " + std::to_string(n) + " is not square-free: divisible by " +
                                  std::to_string(q * q));
    }
  }
}

SolutionTable SolutionTable::build(u64 n, const EnumerateOptions& opts) {
  require_square_free(n);
  SolutionTable t;
  const auto primes = factorize(n).primes();
  if (primes.size() == 1) {
    t.build_prime(n, opts);
  } else {
    t.build_composite(n, primes, opts);
  }
  return t;
}

void SolutionTable::build_prime(u64 p, const EnumerateOptions& opts) {
  if (p > opts.max_prime) {
    throw LimitExceeded("prime " + std::to_string(p) + " exceeds the enumeration bound " +
                        std::to_string(opts.max_prime));
  }
  n_ = p;
  primes_ = {p};
  row_start_.assign(p * p + 1, 0);

  if (p == 2) {
    for (u32 x = 0; x < 2; ++x)
      for (u32 y = 0; y < 2; ++y)
        for (u32 z = 0; z < 2; ++z) {
          const Triple t{x, y, z};
          if ((x | y | z) != 0 && is_markoff(t, 2)) triples_.push_back(t);
        }
  } else {
    const Fp f(p);
    std::vector<i64> root(p, -1);
    for (u64 r = 0; r <= p / 2; ++r) root[f.mul(r, r)] = static_cast<i64>(r);
    const u64 half = f.inv(2);
    triples_.reserve(p * (p + 3));
    for (u64 x = 0; x < p; ++x) {
      const u64 xx = f.mul(x, x);
      for (u64 y = 0; y < p; ++y) {
        // z^2 - (xy) z + (x^2 + y^2) = 0
        const u64 b = f.mul(x, y);
        const u64 c = f.add(xx, f.mul(y, y));
        const u64 disc = f.sub(f.mul(b, b), f.mul(4, c));
        const i64 r = root[disc];
        if (r < 0) continue;
        u64 z1 = f.mul(f.add(b, static_cast<u64>(r)), half);
        u64 z2 = f.mul(f.sub(b, static_cast<u64>(r)), half);
        if (z1 > z2) std::swap(z1, z2);
        const auto push = [&](u64 z) {
          if (x == 0 && y == 0 && z == 0) return;
          triples_.push_back({static_cast<u32>(x), static_cast<u32>(y), static_cast<u32>(z)});
        };
        push(z1);
        if (z2 != z1) push(z2);
      }
    }
  }

  size_ = triples_.size();
  {
    std::size_t i = 0;
    for (u64 row = 0; row < p * p; ++row) {
      row_start_[row] = static_cast<u32>(i);
      while (i < size_ && u64(triples_[i].x) * p + triples_[i].y == row) ++i;
    }
    row_start_[p * p] = static_cast<u32>(size_);
  }

  constexpr u32 kUnset = static_cast<u32>(-1);
  block_of_.assign(size_, kUnset);
  for (std::size_t i = 0; i < size_; ++i) {
    if (block_of_[i] != kUnset) continue;
    const u32 b = static_cast<u32>(block_rep_.size());
    block_rep_.push_back(static_cast<u32>(i));
    for (const Triple& v : sign_variants(triples_[i])) block_of_[index_of(v)] = b;
  }
  block_count_ = block_rep_.size();
}

void SolutionTable::build_composite(u64 n, const std::vector<u64>& primes, const EnumerateOptions& opts) {
  n_ = n;
  primes_ = primes;
  u64 total = 1, blocks = 1;
  for (u64 q : primes) {
    components_.push_back(SolutionTable::build(q, opts));
    const auto& c = components_.back();
    total *= c.size();
    blocks *= c.block_count();
    if (total > opts.max_triples) {
      throw LimitExceeded("X*(" + std::to_string(n) + ") exceeds the table limit of " +
                          std::to_string(opts.max_triples) + " triples; raise max_triples to override");
    }
  }
  size_ = total;
  block_count_ = total == 0 ? 0 : blocks;
  for (u64 q : primes) {
    const u64 m = n / q;
    const u64 inv = Fp(q).inv(m % q);
    crt_basis_.push_back(mul_mod(m, inv, n));
  }
}

const SolutionTable& SolutionTable::component(std::size_t j) const {
  if (is_prime_table()) {
    if (j != 0) throw std::out_of_range("prime table has a single component");
    return *this;
  }
  return components_.at(j);
}

Triple SolutionTable::crt(const std::vector<Triple>& parts) const {
  u64 x = 0, y = 0, z = 0;
  for (std::size_t j = 0; j < parts.size(); ++j) {
    const u64 e = crt_basis_[j];
    x = (x + mul_mod(parts[j].x, e, n_)) % n_;
    y = (y + mul_mod(parts[j].y, e, n_)) % n_;
    z = (z + mul_mod(parts[j].z, e, n_)) % n_;
  }
  return {static_cast<u32>(x), static_cast<u32>(y), static_cast<u32>(z)};
}

Triple SolutionTable::triple(std::size_t ordinal) const {
  if (ordinal >= size_) throw std::out_of_range("ordinal out of range");
  if (is_prime_table()) return triples_[ordinal];
  std::vector<Triple> parts(components_.size());
  for (std::size_t j = components_.size(); j-- > 0;) {
    const std::size_t m = components_[j].size();
    parts[j] = components_[j].triples_[ordinal % m];
    ordinal /= m;
  }
  return crt(parts);
}

std::size_t SolutionTable::index_of(const Triple& t) const {
  if (t.x >= n_ || t.y >= n_ || t.z >= n_) return npos;
  if (is_prime_table()) {
    const u64 row = u64(t.x) * n_ + t.y;
    for (u32 i = row_start_[row]; i < row_start_[row + 1]; ++i) {
      if (triples_[i].z == t.z) return i;
    }
    return npos;
  }
  std::size_t ordinal = 0;
  for (std::size_t j = 0; j < components_.size(); ++j) {
    const u64 q = primes_[j];
    const std::size_t k = components_[j].index_of(
        {static_cast<u32>(t.x % q), static_cast<u32>(t.y % q), static_cast<u32>(t.z % q)});
    if (k == npos) return npos;
    ordinal = ordinal * components_[j].size() + k;
  }
  return ordinal;
}

std::size_t SolutionTable::index_of_code(u64 code) const {
  const u64 z = code % n_;
  code /= n_;
  const u64 y = code % n_;
  const u64 x = code / n_;
  if (x >= n_) return npos;
  return index_of({static_cast<u32>(x), static_cast<u32>(y), static_cast<u32>(z)});
}

u32 SolutionTable::block_id(std::size_t ordinal) const {
  if (is_prime_table()) return block_of_.at(ordinal);
  u64 id = 0, scale = 1;
  for (std::size_t j = components_.size(); j-- > 0;) {
    const auto& c = components_[j];
    id += scale * c.block_of_[ordinal % c.size()];
    scale *= c.block_count();
    ordinal /= c.size();
  }
  return static_cast<u32>(id);
}

std::size_t SolutionTable::block_rep(u32 b) const {
  if (is_prime_table()) return block_rep_.at(b);
  if (b >= block_count_) throw std::out_of_range("block id out of range");
  std::vector<u32> digits(components_.size());
  for (std::size_t j = components_.size(); j-- > 0;) {
    digits[j] = b % components_[j].block_count();
    b /= components_[j].block_count();
  }
  std::size_t ordinal = 0;
  for (std::size_t j = 0; j < components_.size(); ++j) {
    ordinal = ordinal * components_[j].size() + components_[j].block_rep_[digits[j]];
  }
  // The per-prime canonical members need not CRT to the least residue triple.
  return index_of(block(ordinal).canonical);
}

std::vector<Triple> SolutionTable::sign_variants(const Triple& t) const {
  if (is_prime_table()) {
    const u32 p = static_cast<u32>(n_);
    const auto neg = [p](u32 v) { return v == 0 ? 0u : p - v; };
    std::vector<Triple> out{t, {t.x, neg(t.y), neg(t.z)}, {neg(t.x), t.y, neg(t.z)}, {neg(t.x), neg(t.y), t.z}};
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  }
  std::vector<std::vector<Triple>> per_prime;
  for (std::size_t j = 0; j < components_.size(); ++j) {
    const u64 q = primes_[j];
    per_prime.push_back(components_[j].sign_variants(
        {static_cast<u32>(t.x % q), static_cast<u32>(t.y % q), static_cast<u32>(t.z % q)}));
  }
  std::vector<Triple> out;
  std::vector<std::size_t> pick(per_prime.size(), 0);
  std::vector<Triple> parts(per_prime.size());
  while (true) {
    for (std::size_t j = 0; j < per_prime.size(); ++j) parts[j] = per_prime[j][pick[j]];
    out.push_back(crt(parts));
    std::size_t j = 0;
    while (j < pick.size() && ++pick[j] == per_prime[j].size()) pick[j++] = 0;
    if (j == pick.size()) break;
  }
  std::sort(out.begin(), out.end());
  return out;
}

Block SolutionTable::block(std::size_t ordinal) const {
  Block b;
  b.members = sign_variants(triple(ordinal));
  b.canonical = b.members.front();
  return b;
}

ConicSection SolutionTable::conic(int coord, u32 value, bool up_to_sign) const {
  if (coord < 1 || coord > 3) throw std::invalid_argument("coordinate must be 1, 2 or 3");
  ConicSection cs;
  cs.coord = coord;
  cs.value = value;
  cs.up_to_sign = up_to_sign;
  const u64 neg_value = value == 0 ? 0 : n_ - value;
  const auto pick = [coord](const Triple& t) { return coord == 1 ? t.x : coord == 2 ? t.y : t.z; };
  if (up_to_sign) {
    std::set<u32> blocks;
    for (std::size_t i = 0; i < size_; ++i) {
      const u32 c = pick(triple(i));
      if (c == value || c == neg_value) blocks.insert(block_id(i));
    }
    cs.members.assign(blocks.begin(), blocks.end());
  } else {
    for (std::size_t i = 0; i < size_; ++i) {
      if (pick(triple(i)) == value) cs.members.push_back(static_cast<u32>(i));
    }
  }
  return cs;
}

void SolutionTable::write_csv(std::ostream& os) const {
  os << "x,y,z\n";
  for (std::size_t i = 0; i < size_; ++i) {
    const Triple t = triple(i);
    os << t.x << ',' << t.y << ',' << t.z << '\n';
  }
}

namespace {
void put_u32(std::ostream& os, u32 v) {
  const char bytes[4] = {static_cast<char>(v & 0xff), static_cast<char>((v >> 8) & 0xff),
                         static_cast<char>((v >> 16) & 0xff), static_cast<char>((v >> 24) & 0xff)};
  os.write(bytes, 4);
}
}  // namespace

void SolutionTable::write_binary(std::ostream& os) const {
  if (static_cast<u128>(n_) * n_ * n_ > (static_cast<u128>(1) << 32)) {
    throw std::invalid_argument("binary export needs n^3 <= 2^32; use CSV for n = " + std::to_string(n_));
  }
  put_u32(os, static_cast<u32>(n_));
  put_u32(os, static_cast<u32>(size_));
  for (std::size_t i = 0; i < size_; ++i) put_u32(os, static_cast<u32>(code(triple(i))));
}

std::vector<Triple> parametrize_conic(u64 p, u64 x) {
  const Fp2 F(p);
  const Fp& f = F.base();
  x %= p;
  const CoordClass cls = classify(x, f);
  if (cls == CoordClass::Parabolic) {
    throw std::domain_error("no parametrization for parabolic x = " + std::to_string(x));
  }
  const u64 xx = f.mul(x, x);
  const u64 kappa = f.div(xx, f.sub(xx, 4));
  const Fp2Elem w = omega_of(x, F);
  const Fp2Elem w_inv = F.inv(w);
  std::vector<Triple> out;
  const auto emit = [&](const Fp2Elem& y, const Fp2Elem& z) {
    if (!F.in_base(y) || !F.in_base(z)) throw std::logic_error("parametrized point left F_p");
    out.push_back({static_cast<u32>(x), static_cast<u32>(y.a0), static_cast<u32>(z.a0)});
  };
  if (cls == CoordClass::Hyperbolic) {
    for (u64 a = 1; a < p; ++a) {
      const u64 b = f.div(kappa, a);
      const Fp2Elem A = F.embed(a), B = F.embed(b);
      emit(F.add(A, B), F.add(F.mul(A, w), F.mul(B, w_inv)));
    }
    // ab = 0 is a pair of lines; the loop above only walks b = 0.
    if (kappa == 0) {
      for (u64 b = 1; b < p; ++b) {
        const Fp2Elem B = F.embed(b);
        emit(B, F.mul(B, w_inv));
      }
    }
  } else {
    for (u64 a0 = 0; a0 < p; ++a0) {
      for (u64 a1 = 0; a1 < p; ++a1) {
        const Fp2Elem A{a0, a1};
        if (F.norm(A) != kappa) continue;
        const Fp2Elem Ap = F.conj(A);
        emit(F.add(A, Ap), F.add(F.mul(A, w), F.mul(Ap, w_inv)));
      }
    }
  }
  // x = 0 passes through the origin, which is not in X*(p).
  std::erase(out, Triple{0, 0, 0});
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace markoff
