#include <gtest/gtest.h>

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

#include "markoff/surface.hpp"
#include "oracle.hpp"

using namespace markoff;

namespace {
using u8 = std::uint8_t;
oracle::T3 arr(const Triple& t) { return {t.x, t.y, t.z}; }
}  // namespace

TEST(Enumerate, Sizes) {
  EXPECT_EQ(SolutionTable::build(5).size(), 40u);
  EXPECT_EQ(SolutionTable::build(2).size(), 4u);
  EXPECT_EQ(SolutionTable::build(35).size(), 1120u);
  EXPECT_TRUE(SolutionTable::build(3).empty());
}

TEST(Enumerate, MatchesBruteForce) {
  for (u64 n : {2ULL, 3ULL, 5ULL, 7ULL, 10ULL, 11ULL, 13ULL, 14ULL, 17ULL, 35ULL}) {
    const SolutionTable table = SolutionTable::build(n);
    const auto want = oracle::markoff_solutions(n);
    ASSERT_EQ(table.size(), want.size()) << n;
    std::set<oracle::T3> got;
    for (std::size_t i = 0; i < table.size(); ++i) {
      const Triple t = table.triple(i);
      got.insert(arr(t));
      ASSERT_EQ(table.index_of(t), i);
    }
    EXPECT_EQ(got, std::set<oracle::T3>(want.begin(), want.end()));
  }
}

TEST(Enumerate, PrimeCountFormula) {
  for (u64 p : oracle::primes_upto(101, 5)) {
    const SolutionTable table = SolutionTable::build(p);
    const u64 want = p % 4 == 1 ? p * (p + 3) : p * (p - 3);
    EXPECT_EQ(table.size(), want) << p;
    EXPECT_EQ(table.block_count(), want / 4) << p;
  }
}

TEST(Enumerate, RejectsSquareFactors) {
  EXPECT_THROW(SolutionTable::build(12), std::invalid_argument);
  EXPECT_THROW(SolutionTable::build(1), std::invalid_argument);
}

TEST(Enumerate, SizeLimit) {
  EnumerateOptions opts;
  opts.max_triples = 1000;
  EXPECT_THROW(SolutionTable::build(35, opts), LimitExceeded);
}

TEST(Enumerate, IndexOfNonSolution) {
  const SolutionTable table = SolutionTable::build(7);
  EXPECT_EQ(table.index_of({1, 1, 1}), SolutionTable::npos);
  EXPECT_EQ(table.index_of({0, 0, 0}), SolutionTable::npos);
}

TEST(Classify, Examples) {
  for (u64 p : {5ULL, 7ULL, 11ULL, 101ULL}) EXPECT_EQ(classify(2, Fp(p)), CoordClass::Parabolic);
  EXPECT_EQ(classify(3, Fp(7)), CoordClass::Elliptic);
  EXPECT_EQ(classify(0, Fp(5)), CoordClass::Hyperbolic);
}

TEST(Classify, MatchesDiscriminantCharacter) {
  for (u64 p : oracle::primes_upto(60, 3)) {
    for (u64 x = 0; x < p; ++x) {
      const int l = oracle::legendre((x * x + 4 * p - 4) % p, p);
      const CoordClass want = l == 0 ? CoordClass::Parabolic : l == 1 ? CoordClass::Hyperbolic : CoordClass::Elliptic;
      ASSERT_EQ(classify(x, Fp(p)), want);
    }
  }
}

TEST(Omega, Examples) {
  const Fp2 F7(7);
  EXPECT_EQ(F7.order(omega_of(3, F7)), 8u);
  EXPECT_EQ(omega_of(1, F7), F7.embed(3));
  const Fp2 F5(5);
  const Fp2Elem w = omega_of(0, F5);
  EXPECT_EQ(F5.mul(w, w), F5.embed(4));
  EXPECT_EQ(F5.order(w), 4u);
  EXPECT_THROW(omega_of(2, F7), std::domain_error);
}

TEST(Omega, IsARootAndOrdersAgreeWithBruteForce) {
  for (u64 p : {7ULL, 11ULL, 13ULL, 17ULL}) {
    const Fp2 F(p);
    const oracle::F2 G(p);
    for (u64 x = 0; x < p; ++x) {
      if (classify(x, F.base()) == CoordClass::Parabolic) continue;
      const Fp2Elem w = omega_of(x, F);
      ASSERT_EQ(F.add(w, F.inv(w)), F.embed(x));
      const auto roots = G.omega_roots(x);
      ASSERT_EQ(roots.size(), 2u);
      const std::set<u64> want = {G.order(roots[0]), G.order(roots[1])};
      ASSERT_TRUE(want.count(F.order(w))) << p << " " << x;
    }
  }
}

TEST(Block, Examples) {
  const SolutionTable t7 = SolutionTable::build(7);
  const Block b = t7.block(t7.index_of({3, 3, 3}));
  EXPECT_EQ(b.canonical, (Triple{3, 3, 3}));
  EXPECT_EQ(b.members, (std::vector<Triple>{{3, 3, 3}, {3, 4, 4}, {4, 3, 4}, {4, 4, 3}}));

  const SolutionTable t5 = SolutionTable::build(5);
  const Block z = t5.block(t5.index_of({0, 1, 2}));
  EXPECT_EQ(z.members, (std::vector<Triple>{{0, 1, 2}, {0, 1, 3}, {0, 4, 2}, {0, 4, 3}}));

  const SolutionTable t2 = SolutionTable::build(2);
  for (std::size_t i = 0; i < t2.size(); ++i) EXPECT_EQ(t2.block(i).members.size(), 1u);
}

TEST(Block, MatchesSignOracle) {
  for (u64 p : {5ULL, 7ULL, 13ULL, 19ULL}) {
    const SolutionTable table = SolutionTable::build(p);
    std::map<oracle::T3, u32> id_of_rep;
    for (std::size_t i = 0; i < table.size(); ++i) {
      const auto rep = oracle::block_rep(arr(table.triple(i)), p);
      auto [it, fresh] = id_of_rep.emplace(rep, table.block_id(i));
      ASSERT_EQ(it->second, table.block_id(i));
      if (fresh) ASSERT_EQ(arr(table.triple(table.block_rep(table.block_id(i)))), rep);
    }
    EXPECT_EQ(id_of_rep.size(), table.block_count());
  }
}

TEST(Conic, Examples) {
  const SolutionTable t7 = SolutionTable::build(7);
  EXPECT_EQ(t7.conic(1, 3, true).members.size(), 4u);
  EXPECT_EQ(t7.conic(1, 1, true).members.size(), 3u);
  const SolutionTable t5 = SolutionTable::build(5);
  EXPECT_EQ(t5.conic(1, 2, true).members.size(), 5u);
}

TEST(Conic, ParametrizationMatchesEnumeration) {
  for (u64 p : {7ULL, 11ULL, 13ULL, 23ULL}) {
    const SolutionTable table = SolutionTable::build(p);
    for (u64 x = 0; x < p; ++x) {
      if (classify(x, Fp(p)) == CoordClass::Parabolic) continue;
      std::vector<Triple> listed;
      for (u32 ord : table.conic(1, static_cast<u32>(x), false).members) listed.push_back(table.triple(ord));
      std::sort(listed.begin(), listed.end());
      ASSERT_EQ(parametrize_conic(p, x), listed) << p << " " << x;
    }
  }
}

TEST(Export, CsvAndBinary) {
  const SolutionTable table = SolutionTable::build(5);
  std::ostringstream csv;
  table.write_csv(csv);
  const std::string s = csv.str();
  EXPECT_EQ(s.substr(0, 6), "x,y,z\n");
  EXPECT_EQ(std::count(s.begin(), s.end(), '\n'), 41);

  std::ostringstream bin;
  table.write_binary(bin);
  const std::string b = bin.str();
  ASSERT_EQ(b.size(), 8u + 4u * 40u);
  const auto u32_at = [&](std::size_t off) {
    return u32(u8(b[off])) | u32(u8(b[off + 1])) << 8 | u32(u8(b[off + 2])) << 16 | u32(u8(b[off + 3])) << 24;
  };
  EXPECT_EQ(u32_at(0), 5u);
  EXPECT_EQ(u32_at(4), 40u);
  const Triple first = table.triple(0);
  EXPECT_EQ(u32_at(8), (first.x * 5 + first.y) * 5 + first.z);
}
