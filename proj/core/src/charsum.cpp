#include "markoff/charsum.hpp"

#include <cmath>
#include <ostream>
#include <set>
#include <stdexcept>

namespace markoff {

WeilResult weil_sum(const PolyFp& f) {
  if (f.is_zero()) throw std::invalid_argument("weil_sum of the zero polynomial");
  const Fp fp(f.p());
  WeilResult r;
  for (u64 s = 0; s < f.p(); ++s) r.sum += fp.legendre(f.eval(s));
  r.distinct_roots = distinct_roots(f);
  r.bound = (static_cast<double>(r.distinct_roots) - 1.0) * std::sqrt(static_cast<double>(f.p()));
  r.within = std::abs(static_cast<double>(r.sum)) <= r.bound + 1e-9;
  return r;
}

const char* to_string(Construction c) {
  switch (c) {
    case Construction::Hyperbolic: return "hyperbolic";
    case Construction::Elliptic: return "elliptic";
    case Construction::EllipticOrder4: return "elliptic-order4";
  }
  return "?";
}

namespace {

int sign_index(int legendre) { return legendre < 0 ? 0 : 1; }

struct CycleParams {
  u64 x = 0;    // first coordinate with |w| = 2d
  Fp2Elem w;    // root of T^2 - xT + 1 of order 2d
  u64 d = 0;
};

CycleParams normalize_x(const Fp2& F, u64 x) {
  const Fp& f = F.base();
  CycleParams c;
  c.x = x % f.p();
  c.w = omega_of(c.x, F);
  const u64 ow = F.order(c.w), onw = F.order(F.neg(c.w));
  if (ow < onw) {
    c.x = f.neg(c.x);
    c.w = F.neg(c.w);
  }
  c.d = std::max(ow, onw) / 2;
  return c;
}

// (y0, y1) with (x, y0, y1) in the block of t.
std::pair<u64, u64> align(const Fp& f, u64 x, const Triple& t) {
  if (!is_markoff(t, f.p())) throw std::invalid_argument("not a solution");
  if (t.x == x) return {t.y, t.z};
  if (t.x == f.neg(x)) return {t.y, f.neg(t.z)};
  throw std::invalid_argument("solution does not have first coordinate +-x");
}

u64 measure_d(const Fp& f, u64 x, u64 y0, u64 y1) {
  u64 a = y0, b = y1, j = 0;
  do {
    const u64 next = f.sub(f.mul(x, b), a);
    a = b;
    b = next;
    ++j;
  } while (!((a == y0 && b == y1) || (a == f.neg(y0) && b == f.neg(y1))));
  return j;
}

// A with y0 = A + B and y1 = A w + B / w.
Fp2Elem cycle_coefficient(const Fp2& F, const Fp2Elem& w, u64 y0, u64 y1) {
  const Fp2Elem wi = F.inv(w);
  return F.div(F.sub(F.embed(y1), F.mul(F.embed(y0), wi)), F.sub(w, wi));
}

PolyFp hyperbolic_g(u64 p, u64 alpha, u64 beta, u64 m) {
  const PolyFp u = PolyFp::monomial(p, alpha, 2 * m) + PolyFp(p, {beta});
  return u * u - PolyFp::monomial(p, 4, 2 * m);
}

struct EllipticBasis {
  PolyFp2 Pm, Qm, R2m;
};

EllipticBasis elliptic_basis(const Fp2& F, u64 m) {
  const Fp2Elem i = F.sqrt_minus_one();
  const Fp2Elem two = F.embed(2);
  const PolyFp2 P(F, {i, two, F.neg(i)});
  const PolyFp2 Q(F, {F.neg(i), two, i});
  const PolyFp2 R(F, {F.one(), Fp2Elem{}, F.one()});
  return {P.pow(m), Q.pow(m), R.pow(2 * m)};
}

std::optional<PolyFp> elliptic_g(const Fp2& F, const EllipticBasis& B, const Fp2Elem& A) {
  const PolyFp2 u = B.Pm.scaled(A) + B.Qm.scaled(F.conj(A));
  return (u * u - B.R2m.scaled(F.embed(4))).to_base();
}

}  // namespace

JointSignCount no_correlation_count(u64 p, u64 x, const Triple& first, const Triple& second) {
  if (p < 5 || !is_prime(p)) throw std::invalid_argument("needs a prime p >= 5");
  const Fp2 F(p);
  const Fp& f = F.base();
  x %= p;
  const CoordClass cls = classify(x, f);
  if (cls == CoordClass::Parabolic) throw std::invalid_argument("x must not be parabolic");
  if (cls == CoordClass::Elliptic && p % 4 != 3) {
    throw std::invalid_argument("the elliptic construction needs p = 3 (mod 4)");
  }
  const CycleParams cp = normalize_x(F, x);
  const auto [y0, y1] = align(f, cp.x, first);
  const auto [z0, z1] = align(f, cp.x, second);
  if ((y0 == z0 && y1 == z1) || (y0 == f.neg(z0) && y1 == f.neg(z1))) {
    throw std::invalid_argument("the two solutions lie in the same block");
  }

  JointSignCount out;
  out.p = p;
  out.x = cp.x;
  out.construction = cls == CoordClass::Hyperbolic ? Construction::Hyperbolic : Construction::Elliptic;
  out.d = measure_d(f, cp.x, y0, y1);
  if (out.d != cp.d || measure_d(f, cp.x, z0, z1) != cp.d) {
    throw std::logic_error("measured cycle length disagrees with the order of omega");
  }
  const u64 group = cls == CoordClass::Hyperbolic ? p - 1 : p + 1;
  out.m = group / (2 * out.d);

  const Fp2Elem A = cycle_coefficient(F, cp.w, y0, y1);
  const Fp2Elem C = cycle_coefficient(F, cp.w, z0, z1);
  const Fp2Elem w_inv = F.inv(cp.w);
  const u64 xx = f.mul(cp.x, cp.x);
  const u64 kappa = f.div(xx, f.sub(xx, 4));

  std::vector<PolyFp> gs;  // g(A), g(C), g(A w), g(C w)
  if (cls == CoordClass::Hyperbolic) {
    const Fp2Elem B = F.sub(F.embed(y0), A), D = F.sub(F.embed(z0), C);
    if (!F.in_base(A) || !F.in_base(C) || F.mul(A, B) != F.embed(kappa) || F.mul(C, D) != F.embed(kappa)) {
      throw std::logic_error("bad hyperbolic parameters");
    }
    gs.push_back(hyperbolic_g(p, A.a0, B.a0, out.m));
    gs.push_back(hyperbolic_g(p, C.a0, D.a0, out.m));
    gs.push_back(hyperbolic_g(p, F.mul(A, cp.w).a0, F.mul(B, w_inv).a0, out.m));
    gs.push_back(hyperbolic_g(p, F.mul(C, cp.w).a0, F.mul(D, w_inv).a0, out.m));
  } else {
    for (const Fp2Elem& a : {A, C}) {
      if (F.norm(a) != kappa) throw std::logic_error("bad elliptic parameters");
    }
    const EllipticBasis basis = elliptic_basis(F, out.m);
    for (const Fp2Elem& a : {A, C, F.mul(A, cp.w), F.mul(C, cp.w)}) {
      auto g = elliptic_g(F, basis, a);
      if (!g) {
        out.coefficients_in_base = false;
        out.pass = false;
        return out;
      }
      gs.push_back(std::move(*g));
    }
  }

  for (u64 s = 0; s < p; ++s) {
    const u64 v1 = f.mul(gs[0].eval(s), gs[1].eval(s));
    const u64 v2 = f.mul(gs[2].eval(s), gs[3].eval(s));
    const int l1 = f.legendre(v1), l2 = f.legendre(v2);
    out.M1 += l1;
    out.M2 += l2;
    out.M12 += l1 * l2;
    if (l1 == 0 || l2 == 0) {
      ++out.zeros;
      continue;
    }
    ++out.counts[sign_index(l1)][sign_index(l2)];
  }

  const u64 deg_k = 8 * out.m;
  if (2 * deg_k < p) {
    for (const auto& g : gs) out.root_counts.push_back(distinct_roots(g));
    const PolyFp k1 = gs[0] * gs[1], k2 = gs[2] * gs[3];
    const PolyFp k12 = k1 * k2;
    out.root_counts.push_back(distinct_roots(k1));
    out.root_counts.push_back(distinct_roots(k2));
    out.root_counts.push_back(distinct_roots(k12));
    const double sp = std::sqrt(static_cast<double>(p));
    const auto ok = [&](i64 sum, std::size_t roots) {
      return std::abs(static_cast<double>(sum)) <= (static_cast<double>(roots) - 1.0) * sp + 1e-9;
    };
    out.weil_ok = !is_square_in_closure(k1) && !is_square_in_closure(k2) && !is_square_in_closure(k12) &&
                  ok(out.M1, out.root_counts[4]) && ok(out.M2, out.root_counts[5]) &&
                  ok(out.M12, out.root_counts[6]);
  }

  const double sp = std::sqrt(static_cast<double>(p));
  out.bound = (static_cast<double>(p) - 32.0 * static_cast<double>(out.m) * sp + 3.0 * sp) / 4.0;
  out.bound_applicable = static_cast<double>(out.d) >= 16.0 * std::sqrt(static_cast<double>(group));
  const bool identity =
      out.zeros != 0 || 4 * static_cast<i64>(out.n(-1, -1)) == static_cast<i64>(p) - out.M1 - out.M2 + out.M12;
  const bool no_zeros = p % 4 == 1 || out.zeros == 0;
  out.pass = out.weil_ok && identity && no_zeros &&
             (!out.bound_applicable || static_cast<double>(out.n(-1, -1)) >= out.bound);
  return out;
}

std::pair<Triple, Triple> default_pairs(u64 p, u64 x) {
  const SolutionTable table = SolutionTable::build(p);
  const ConicSection cs = table.conic(1, static_cast<u32>(x % p), false);
  for (std::size_t k = 1; k < cs.members.size(); ++k) {
    if (table.block_id(cs.members[k]) != table.block_id(cs.members[0])) {
      return {table.triple(cs.members[0]), table.triple(cs.members[k])};
    }
  }
  throw std::invalid_argument("C_1(" + std::to_string(x) + ") has fewer than two blocks");
}

// ---------------------------------------------------------------------------

namespace {
void require_three_mod_four(u64 p) {
  if (!is_prime(p) || p % 4 != 3) throw std::invalid_argument("needs a prime p = 3 (mod 4)");
}
}  // namespace

HParam h_param(u64 p, u64 s) {
  require_three_mod_four(p);
  const Fp2 F(p);
  const Fp& f = F.base();
  s %= p;
  const Fp2Elem i = F.sqrt_minus_one();
  const u64 ss = f.mul(s, s);
  const Fp2Elem num = F.add(F.embed(f.mul(2, s)), F.scale(i, f.sub(1, ss)));
  return {s, F.div(num, F.embed(f.add(1, ss)))};
}

HReport verify_H(u64 p) {
  require_three_mod_four(p);
  const Fp2 F(p);
  HReport r;
  r.p = p;
  std::set<std::pair<u64, u64>> seen;
  r.all_norm_one = true;
  const auto add = [&](const Fp2Elem& h) {
    seen.emplace(h.a0, h.a1);
    if (F.norm(h) != 1) r.all_norm_one = false;
  };
  for (u64 s = 0; s < p; ++s) add(h_param(p, s).h);
  add(F.neg(F.sqrt_minus_one()));
  r.distinct = seen.size();
  r.pass = r.all_norm_one && r.distinct == p + 1;
  return r;
}

// ---------------------------------------------------------------------------

namespace {
bool elliptic_order4(const Fp2& F, u64 v) {
  if (classify(v, F.base()) != CoordClass::Elliptic) return false;
  return F.order(omega_of(v, F)) % 4 == 0;
}
}  // namespace

bool is_elliptic_order4_witness(u64 p, const Triple& t) {
  if (p % 2 == 0 || !is_prime(p) || t.x >= p || t.y >= p || t.z >= p) return false;
  if (!is_markoff(t, p) || (t.x == 0 && t.y == 0 && t.z == 0)) return false;
  const Fp2 F(p);
  return elliptic_order4(F, t.x) && elliptic_order4(F, t.y);
}

Order4Witness describe_witness(u64 p, const Triple& t) {
  const Fp2 F(p);
  const Fp& f = F.base();
  Order4Witness w;
  w.t = t;
  if (classify(t.x, f) != CoordClass::Parabolic) w.order_x = F.order(omega_of(t.x, F));
  if (classify(t.y, f) != CoordClass::Parabolic) w.order_y = F.order(omega_of(t.y, F));
  w.legendre_x_plus_2 = f.legendre(f.add(t.x, 2));
  w.legendre_x_minus_2 = f.legendre(f.sub(t.x, 2));
  w.legendre_y_plus_2 = f.legendre(f.add(t.y, 2));
  w.legendre_y_minus_2 = f.legendre(f.sub(t.y, 2));
  return w;
}

Order4Witness find_elliptic_order4(u64 p) {
  require_three_mod_four(p);
  if (p == 3 || p == 11) throw std::invalid_argument("no such solution exists for p = 3 or p = 11");
  const Fp2 F(p);
  std::vector<char> good(p);
  for (u64 v = 0; v < p; ++v) good[v] = elliptic_order4(F, v);
  const SolutionTable table = SolutionTable::build(p);
  for (std::size_t i = 0; i < table.size(); ++i) {
    const Triple t = table.triple(i);
    if (good[t.x] && good[t.y]) return describe_witness(p, t);
  }
  throw std::logic_error("no solution with two elliptic coordinates of order divisible by 4");
}

std::vector<u64> maximal_elliptic(u64 p) {
  const Fp2 F(p);
  std::vector<u64> out;
  for (u64 x = 0; x < p; ++x) {
    if (classify(x, F.base()) != CoordClass::Elliptic) continue;
    const Fp2Elem w = omega_of(x, F);
    if (std::max(F.order(w), F.order(F.neg(w))) == p + 1) out.push_back(x);
  }
  return out;
}

JointSignCount prop56_count(u64 p, u64 x) {
  require_three_mod_four(p);
  const Fp2 F(p);
  const Fp& f = F.base();
  x %= p;
  if (classify(x, f) != CoordClass::Elliptic) throw std::invalid_argument("x must be elliptic");
  const Fp2Elem w = omega_of(x, F);
  if (std::max(F.order(w), F.order(F.neg(w))) != p + 1) {
    throw std::invalid_argument("x must be elliptic of maximal order p + 1");
  }
  const SolutionTable table = SolutionTable::build(p);
  const ConicSection cs = table.conic(1, static_cast<u32>(x), false);
  const Triple t0 = table.triple(cs.members.at(0));
  const Fp2Elem A = cycle_coefficient(F, w, t0.y, t0.z);

  JointSignCount out;
  out.p = p;
  out.x = x;
  out.construction = Construction::EllipticOrder4;
  out.d = (p + 1) / 2;
  out.m = 1;

  const Fp2Elem i = F.sqrt_minus_one();
  const Fp2Elem Ap = F.conj(A);
  const Fp2Elem u = F.add(A, Ap);
  const Fp2Elem v = F.mul(i, F.sub(A, Ap));
  const u64 xx = f.mul(x, x);
  if (F.norm(A) != f.div(xx, f.sub(xx, 4))) throw std::logic_error("bad elliptic parameter");
  if (!F.in_base(u) || !F.in_base(v)) {
    out.coefficients_in_base = false;
    out.pass = false;
    return out;
  }
  const PolyFp R(p, {1, 0, 1});
  const PolyFp inner(p, {v.a0, f.mul(2, u.a0), f.neg(v.a0)});  // 2su + (1 - s^2)v
  const PolyFp g1 = R * (inner + R.scaled(2));
  const PolyFp g2 = R * (inner - R.scaled(2));

  for (u64 s = 0; s < p; ++s) {
    const int l1 = f.legendre(g1.eval(s)), l2 = f.legendre(g2.eval(s));
    out.M1 += l1;
    out.M2 += l2;
    out.M12 += l1 * l2;
    if (l1 == 0 || l2 == 0) {
      ++out.zeros;
      continue;
    }
    ++out.counts[sign_index(l1)][sign_index(l2)];
  }
  const PolyFp g12 = g1 * g2;
  if (static_cast<u64>(g12.degree()) < p) {
    out.root_counts = {distinct_roots(g1), distinct_roots(g2), distinct_roots(g12)};
    const double sp = std::sqrt(static_cast<double>(p));
    const auto ok = [&](i64 sum, std::size_t roots) {
      return std::abs(static_cast<double>(sum)) <= (static_cast<double>(roots) - 1.0) * sp + 1e-9;
    };
    out.weil_ok = ok(out.M1, out.root_counts[0]) && ok(out.M2, out.root_counts[1]) && ok(out.M12, out.root_counts[2]);
  }
  const double sp = std::sqrt(static_cast<double>(p));
  out.bound = (static_cast<double>(p) - 11.0 * sp) / 4.0;
  out.bound_applicable = p > 121;
  const bool identity = out.zeros != 0 || 4 * static_cast<i64>(out.n(-1, 1)) ==
                                              static_cast<i64>(p) - out.M1 + out.M2 - out.M12;
  out.pass = out.weil_ok && identity && out.zeros == 0 &&
             (!out.bound_applicable || static_cast<double>(out.n(-1, 1)) >= std::ceil(out.bound));
  return out;
}

void write_csv_header(std::ostream& os) { os << "p,x,construction,N_mm,N_mp,N_pm,N_pp,bound,pass\n"; }

void write_csv_row(std::ostream& os, const JointSignCount& c) {
  os << c.p << ',' << c.x << ',' << to_string(c.construction) << ',' << c.n(-1, -1) << ',' << c.n(-1, 1) << ','
     << c.n(1, -1) << ',' << c.n(1, 1) << ',' << c.bound << ',' << (c.pass ? "true" : "false") << '\n';
}

}  // namespace markoff
