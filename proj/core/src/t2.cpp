#include "markoff/t2.hpp"

#include <random>
#include <stdexcept>
#include <string>

#include "markoff/action.hpp"

namespace markoff {

namespace {

constexpr u32 kNone = static_cast<u32>(-1);

u64 pack(const Mat2& m, u64 p) { return ((u64(m.a) * p + m.b) * p + m.c) * p + m.d; }

u32 neg(u32 v, u64 p) { return v == 0 ? 0 : static_cast<u32>(p - v); }

// Canonical member of the double-sign-change class of a triple.
Triple sign_class(const Triple& t, u64 p) {
  const Triple v[4] = {t,
                       {t.x, neg(t.y, p), neg(t.z, p)},
                       {neg(t.x, p), t.y, neg(t.z, p)},
                       {neg(t.x, p), neg(t.y, p), t.z}};
  Triple best = v[0];
  for (const auto& c : v) best = std::min(best, c);
  return best;
}

}  // namespace

Mat2 mat_mul(const Mat2& m, const Mat2& n, u64 p) {
  const auto dot = [p](u64 a, u64 b, u64 c, u64 d) { return static_cast<u32>((a * b + c * d) % p); };
  return {dot(m.a, n.a, m.b, n.c), dot(m.a, n.b, m.b, n.d), dot(m.c, n.a, m.d, n.c), dot(m.c, n.b, m.d, n.d)};
}

Mat2 mat_inv(const Mat2& m, u64 p) { return {m.d, neg(m.b, p), neg(m.c, p), m.a}; }

u64 mat_trace(const Mat2& m, u64 p) { return (u64(m.a) + m.d) % p; }

Mat2 normalize(const Mat2& m, u64 p) {
  for (u32 v : {m.a, m.b, m.c, m.d}) {
    if (v == 0) continue;
    if (v <= (p - 1) / 2) return m;
    return {neg(m.a, p), neg(m.b, p), neg(m.c, p), neg(m.d, p)};
  }
  throw std::invalid_argument("zero matrix");
}

PSL2::PSL2(u64 p, u64 max_prime) : p_(p) {
  if (p < 3 || !is_prime(p)) throw std::invalid_argument("PSL(2,p) needs an odd prime, got " + std::to_string(p));
  if (p > max_prime) {
    throw std::invalid_argument("p = " + std::to_string(p) + " exceeds the small-prime bound " +
                                std::to_string(max_prime));
  }
  index_.assign(p * p * p * p, kNone);
  for (u32 a = 0; a < p; ++a)
    for (u32 b = 0; b < p; ++b)
      for (u32 c = 0; c < p; ++c)
        for (u32 d = 0; d < p; ++d) {
          const Mat2 m{a, b, c, d};
          if ((u64(a) * d + p * p - u64(b) * c % p) % p != 1 || normalize(m, p) != m) continue;
          index_[pack(m, p)] = static_cast<u32>(elems_.size());
          elems_.push_back(m);
        }
  const std::size_t n = elems_.size();
  identity_ = index_of(Mat2{});
  table_.resize(n * n);
  inverse_.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    inverse_[i] = index_of(mat_inv(elems_[i], p));
    for (std::size_t j = 0; j < n; ++j) table_[i * n + j] = index_of(mat_mul(elems_[i], elems_[j], p));
  }
}

u32 PSL2::index_of(const Mat2& m) const {
  const u32 i = index_[pack(normalize(m, p_), p_)];
  if (i == kNone) throw std::invalid_argument("matrix is not in SL(2,p)");
  return i;
}

bool PSL2::is_generating(u32 a, u32 b) const {
  const std::size_t n = elems_.size();
  std::vector<char> seen(n, 0);
  std::vector<u32> stack{identity_};
  seen[identity_] = 1;
  std::size_t count = 1;
  while (!stack.empty()) {
    const u32 g = stack.back();
    stack.pop_back();
    for (u32 h : {mul(g, a), mul(g, b)}) {
      if (seen[h]) continue;
      seen[h] = 1;
      ++count;
      stack.push_back(h);
    }
  }
  return count == n;
}

Triple trace_triple(const PSL2& g, u32 a, u32 b) {
  const u64 p = g.p();
  const Mat2& A = g.element(a);
  const Mat2& B = g.element(b);
  return {static_cast<u32>(mat_trace(A, p)), static_cast<u32>(mat_trace(B, p)),
          static_cast<u32>(mat_trace(mat_mul(A, B, p), p))};
}

u64 q_invariant(const Triple& t, u64 p) {
  const Fp f(p);
  const u64 x = t.x % p, y = t.y % p, z = t.z % p;
  const u64 squares = f.add(f.add(f.mul(x, x), f.mul(y, y)), f.mul(z, z));
  return f.sub(f.sub(squares, f.mul(f.mul(x, y), z)), 2);
}

u64 commutator_trace(const PSL2& g, u32 a, u32 b) {
  const u64 p = g.p();
  const Mat2& A = g.element(a);
  const Mat2& B = g.element(b);
  return mat_trace(mat_mul(mat_mul(A, B, p), mat_mul(mat_inv(A, p), mat_inv(B, p), p), p), p);
}

BijectionReport verify_bijection(u64 p, u64 seed, u64 samples) {
  const PSL2 g(p);
  const SolutionTable table = SolutionTable::build(p);
  BijectionReport r;
  r.p = p;
  r.group_order = g.order();
  r.expected_fiber = p * (p * p - 1);
  r.fibers.assign(table.block_count(), 0);
  const u64 minus2 = p - 2;
  const auto n = static_cast<u32>(g.order());
  r.pairs = u64(n) * n;

  for (u32 a = 0; a < n; ++a) {
    for (u32 b = 0; b < n; ++b) {
      const Triple t = trace_triple(g, a, b);
      if (q_invariant(t, p) != minus2) continue;
      ++r.q_minus2_pairs;
      const bool zero = t == Triple{};
      if (zero) ++r.zero_triple_pairs;
      if (!g.is_generating(a, b)) continue;
      ++r.generating_pairs;
      if (zero) {
        ++r.zero_triple_generating;
        continue;
      }
      const std::size_t ord = table.index_of(t);
      if (ord == SolutionTable::npos) throw std::logic_error("Q = -2 triple outside X*(p)");
      ++r.fibers[table.block_id(ord)];
    }
  }

  const auto check_commutator = [&](u32 a, u32 b) {
    ++r.commutator_checked;
    if (q_invariant(trace_triple(g, a, b), p) != commutator_trace(g, a, b)) ++r.commutator_mismatches;
  };
  if (p <= 7) {
    for (u32 a = 0; a < n; ++a)
      for (u32 b = 0; b < n; ++b) check_commutator(a, b);
  } else {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<u32> pick(0, n - 1);
    for (u64 i = 0; i < samples; ++i) {
      const u32 a = pick(rng);
      check_commutator(a, pick(rng));
    }
  }

  for (u32 x = 0; x < p; ++x)
    for (u32 y = 0; y < p; ++y)
      for (u32 z = 0; z < p; ++z) {
        const Triple t{x, y, z};
        const bool markoff = (u64(x) * x + u64(y) * y + u64(z) * z) % p == u64(x) * y % p * z % p;
        if ((q_invariant(t, p) == minus2) != markoff) ++r.markoff_identity_mismatches;
      }

  for (u64 f : r.fibers) {
    if (f > 0) ++r.blocks_hit;
    if (f != r.expected_fiber) ++r.bad_fibers;
  }
  r.pass = r.blocks_hit == table.block_count() && r.bad_fibers == 0 && r.zero_triple_generating == 0 &&
           r.commutator_mismatches == 0 && r.markoff_identity_mismatches == 0 && table.block_count() > 0;
  return r;
}

NielsenReport nielsen_check(u64 p) {
  const PSL2 g(p);
  const SolutionTable table = SolutionTable::build(p);
  const std::array<Gen, 3> gens = {Gen::R3, Gen::T12, Gen::T23};
  std::array<Permutation, 3> expected;
  for (std::size_t k = 0; k < 3; ++k) expected[k] = generator_image(table, gens[k], Level::Blocks).perm;
  std::array<std::vector<u32>, 3> induced;
  for (auto& v : induced) v.assign(table.block_count(), kNone);
  std::array<bool, 3> consistent = {true, true, true};

  NielsenReport r;
  r.p = p;
  const auto n = static_cast<u32>(g.order());
  const u64 minus2 = p - 2;
  for (u32 a = 0; a < n; ++a) {
    for (u32 b = 0; b < n; ++b) {
      const Triple t = trace_triple(g, a, b);
      if (t == Triple{} || q_invariant(t, p) != minus2 || !g.is_generating(a, b)) continue;
      ++r.pairs_checked;
      const u32 src = table.block_id(table.index_of(t));
      const std::array<Triple, 3> moved = {trace_triple(g, g.inv(a), b), trace_triple(g, b, a),
                                           trace_triple(g, g.inv(a), g.mul(a, b))};
      for (std::size_t k = 0; k < 3; ++k) {
        if (sign_class(moved[k], p) != sign_class(apply(gens[k], t, p), p)) ++r.failures[k];
        const std::size_t ord = table.index_of(moved[k]);
        if (ord == SolutionTable::npos) {
          consistent[k] = false;
          continue;
        }
        const u32 dst = table.block_id(ord);
        if (induced[k][src] != kNone && induced[k][src] != dst) consistent[k] = false;
        induced[k][src] = dst;
      }
    }
  }
  r.pass = r.pairs_checked > 0;
  for (std::size_t k = 0; k < 3; ++k) {
    r.permutation_matches[k] = consistent[k] && induced[k] == expected[k];
    r.pass = r.pass && r.failures[k] == 0 && r.permutation_matches[k];
  }
  return r;
}

}  // namespace markoff
