#include "markoff/quadorder.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <stdexcept>
#include <thread>

#include "markoff/surface.hpp"

namespace markoff {

double QuadUnit::log_abs() const {
  const double t = static_cast<double>(trace);
  return std::log((t + std::sqrt(t * t - 4.0)) / 2.0);
}

BigInt a_seq(u64 k, const QuadUnit& a) { return a_seq_prefix(k, a).back(); }

std::vector<BigInt> a_seq_prefix(u64 k_max, const QuadUnit& a) {
  std::vector<BigInt> out{0};
  if (k_max >= 1) out.emplace_back(1);
  for (u64 k = 2; k <= k_max; ++k) out.push_back(BigInt(a.trace) * out[k - 1] - out[k - 2]);
  return out;
}

OrderRecord op_order(u64 p, const QuadUnit& a) {
  if (!is_prime(p)) throw std::invalid_argument(std::to_string(p) + " is not prime");
  OrderRecord r;
  r.p = p;
  if (a.trace < 3) throw std::invalid_argument("trace must be at least 3");
  if (p == 2) {
    // T^2 + T + 1 is irreducible over F_2 for odd trace; even trace gives (T + 1)^2.
    r.order = a.trace % 2 == 1 ? 3 : 1;
    r.group = a.trace % 2 == 1 ? 3 : 1;
    r.divides = true;
  } else {
    const Fp2 F(p);
    const Fp& f = F.base();
    const u64 t = a.trace % p;
    const u64 D = a.discriminant() % p;
    if (D == 0) {
      r.order = f.order(f.div(t, 2));
      r.group = p - 1;
    } else {
      r.residue = f.legendre(D);
      r.order = F.order(omega_of(t, F));
      r.group = r.residue == 1 ? p - 1 : p + 1;
    }
    r.divides = r.group % r.order == 0;
  }
  r.large = static_cast<double>(r.order) >= 32.0 * std::sqrt(static_cast<double>(p + 1));
  return r;
}

ScanSummary scan(u64 x_max, const ScanOptions& opts) {
  const double C = opts.C;
  const QuadUnit& a = opts.unit;
  if (C < 1.0) throw std::invalid_argument("C must be at least 1");
  if (opts.spacing < 2) throw std::invalid_argument("checkpoint spacing must be at least 2");
  ScanSummary s;
  s.x_max = x_max;
  s.C = C;
  s.spacing = opts.spacing;
  const std::vector<u64> primes = primes_in(2, x_max);
  s.records.resize(primes.size());
  const unsigned workers = std::max(1u, opts.workers);
  const auto work = [&](unsigned w) {
    for (std::size_t i = w; i < primes.size(); i += workers) s.records[i] = op_order(primes[i], a);
  };
  if (workers == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work, w);
    for (auto& th : pool) th.join();
  }

  const u64 D = a.discriminant();
  for (const auto& r : s.records) {
    if (r.p != 2 && D % r.p != 0 && !r.divides) s.divisibility_failures.push_back(r.p);
  }

  const auto checkpoint = [&](u64 x) {
    Checkpoint c;
    c.x = x;
    const double thr = C * std::sqrt(static_cast<double>(x));
    for (const auto& r : s.records) {
      if (r.p > x) break;
      ++c.primes;
      if (static_cast<double>(r.order) <= thr) ++c.below_sqrt_x;
      if (static_cast<double>(r.order) < C * std::sqrt(static_cast<double>(r.p + 1))) ++c.below_sqrt_p;
    }
    return c;
  };
  for (u64 x = opts.spacing; x <= x_max; x *= opts.spacing) {
    s.checkpoints.push_back(checkpoint(x));
    if (x > x_max / opts.spacing) break;
  }
  s.total = checkpoint(x_max);
  if (s.checkpoints.empty() || s.checkpoints.back().x != x_max) s.checkpoints.push_back(s.total);
  return s;
}

DivisibilityCheck divisibility_check(u64 p_max, u64 k_max, const QuadUnit& a) {
  DivisibilityCheck out;
  out.p_max = p_max;
  out.k_max = k_max;
  const std::vector<BigInt> A = a_seq_prefix(k_max, a);
  const u64 D = a.discriminant();
  for (u64 p : primes_in(3, p_max)) {
    if (D % p == 0) continue;
    const u64 o = op_order(p, a).order;
    for (u64 k = 1; k <= k_max; ++k) {
      const bool divides = A[k] % p == 0;
      if (divides != (k % o == 0)) out.literal_failures.emplace_back(p, k);
      if (divides != ((2 * k) % o == 0)) out.doubled_failures.emplace_back(p, k);
    }
  }
  return out;
}

void write_records_csv(std::ostream& os, const std::vector<OrderRecord>& records) {
  os << "p,residue,order,group,divides,large\n";
  for (const auto& r : records) {
    os << r.p << ',' << r.residue << ',' << r.order << ',' << r.group << ',' << (r.divides ? "true" : "false") << ','
       << (r.large ? "true" : "false") << '\n';
  }
}

}  // namespace markoff
