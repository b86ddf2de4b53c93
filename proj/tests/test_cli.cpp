#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "app.hpp"
#include "cache.hpp"

using nlohmann::json;

namespace {

struct CliRun {
  int code;
  std::string out;
  std::string err;
};

CliRun run(std::vector<std::string> args) {
  args.insert(args.begin(), "markoff");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = markoff::cli::run_app(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = std::filesystem::temp_directory_path() /
           ("markoff-cli-test-" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()) + "-" +
            ::testing::UnitTest::GetInstance()->current_test_info()->name());
    std::filesystem::remove_all(dir_);
  }
  void TearDown() override { std::filesystem::remove_all(dir_); }
  std::string cache() const { return dir_.string(); }
  std::filesystem::path dir_;
};

}  // namespace

TEST(Sha256, KnownVector) {
  EXPECT_EQ(markoff::cli::sha256_hex("abc"), "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

TEST_F(CliTest, CertifyThirteen) {
  const CliRun r = run({"certify", "--p", "13", "--cache-dir", cache()});
  ASSERT_EQ(r.code, 0) << r.err;
  const json j = json::parse(r.out);
  EXPECT_TRUE(j["conclusion"] == "Sym" || j["conclusion"] == "Alt");
  EXPECT_FALSE(j.contains("timings"));
}

TEST_F(CliTest, Composite770) {
  const CliRun r = run({"composite", "--n", "770", "--cache-dir", cache()});
  ASSERT_EQ(r.code, 0) << r.err;
  const json j = json::parse(r.out);
  EXPECT_EQ(j["transitive"], true);
  EXPECT_EQ(j["orbit"], 394240);
}

TEST_F(CliTest, OrdersEleven) {
  const CliRun r = run({"orders", "--p", "11", "--no-cache"});
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(json::parse(r.out)["o"], 5);
}

TEST_F(CliTest, ScanCertify) {
  const CliRun r = run({"scan", "--task", "certify", "--hi", "100", "--no-cache"});
  ASSERT_EQ(r.code, 0) << r.err;
  const json j = json::parse(r.out);
  EXPECT_EQ(j["count"], 23);
  EXPECT_TRUE(j["errors"].empty());
}

TEST_F(CliTest, ScanResidueFilter) {
  const CliRun r = run({"scan", "--task", "census", "--hi", "50", "--residue", "1", "--no-cache"});
  ASSERT_EQ(r.code, 0) << r.err;
  const json j = json::parse(r.out);
  std::vector<int> ps;
  for (const auto& rec : j["records"]) ps.push_back(rec["p"]);
  EXPECT_EQ(ps, (std::vector<int>{5, 13, 17, 29, 37, 41}));
}

TEST_F(CliTest, ScanOrdersSummary) {
  const CliRun r = run({"scan", "--task", "orders", "--hi", "10000", "--C", "32", "--no-cache"});
  ASSERT_EQ(r.code, 0) << r.err;
  const json j = json::parse(r.out);
  EXPECT_TRUE(j.contains("exceptional"));
  EXPECT_EQ(j["total"]["primes"], 1229);
}

TEST_F(CliTest, ScanErrorManifest) {
  const CliRun r = run({"scan", "--task", "t2", "--lo", "11", "--hi", "17", "--no-cache"});
  EXPECT_EQ(r.code, 1);
  const json j = json::parse(r.out);
  EXPECT_EQ(j["count"], 2);
  ASSERT_EQ(j["errors"].size(), 1u);
  EXPECT_EQ(j["errors"][0]["p"], 17);
}

TEST_F(CliTest, WorkerCountInvariance) {
  const CliRun a = run({"scan", "--task", "charsum", "--hi", "40", "--workers", "1", "--no-cache"});
  const CliRun b = run({"scan", "--task", "charsum", "--hi", "40", "--workers", "4", "--no-cache"});
  ASSERT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
}

TEST_F(CliTest, CacheHitIsByteIdentical) {
  const CliRun a = run({"census", "--p", "17", "--cache-dir", cache()});
  const CliRun b = run({"census", "--p", "17", "--cache-dir", cache()});
  ASSERT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
  std::ifstream in(std::filesystem::path(cache()) / "runs.jsonl");
  std::string line;
  int lines = 0;
  while (std::getline(in, line)) ++lines;
  EXPECT_EQ(lines, 1);
}

TEST_F(CliTest, EnvironmentCacheDir) {
  ::setenv("MARKOFF_CACHE_DIR", cache().c_str(), 1);
  const CliRun r = run({"orders", "--p", "7"});
  ::unsetenv("MARKOFF_CACHE_DIR");
  ASSERT_EQ(r.code, 0);
  EXPECT_TRUE(std::filesystem::exists(std::filesystem::path(cache()) / "runs.jsonl"));
}

TEST_F(CliTest, TimingsOnlyOnRequest) {
  const CliRun r = run({"certify", "--p", "7", "--timings", "--no-cache"});
  ASSERT_EQ(r.code, 0);
  EXPECT_TRUE(json::parse(r.out).contains("timings"));
}

TEST_F(CliTest, UsageErrors) {
  EXPECT_EQ(run({}).code, 1);
  EXPECT_EQ(run({"certify", "--no-cache"}).code, 1);
  EXPECT_EQ(run({"certify", "--p", "15", "--no-cache"}).code, 1);
  EXPECT_EQ(run({"enumerate", "--n", "12", "--no-cache"}).code, 1);
  EXPECT_EQ(run({"t2", "--p", "17", "--no-cache"}).code, 1);
  EXPECT_EQ(run({"census", "--p", "7", "--format", "csv", "--no-cache"}).code, 1);
  EXPECT_EQ(run({"--help"}).code, 0);
}

TEST_F(CliTest, CsvOutputs) {
  const CliRun e = run({"enumerate", "--n", "5", "--format", "csv", "--no-cache"});
  ASSERT_EQ(e.code, 0);
  EXPECT_EQ(e.out.substr(0, 6), "x,y,z\n");
  EXPECT_EQ(std::count(e.out.begin(), e.out.end(), '\n'), 41);
  const CliRun c = run({"charsum", "--p", "7", "--x", "3", "--format", "csv", "--no-cache"});
  ASSERT_EQ(c.code, 0);
  EXPECT_EQ(c.out.rfind("p,x,construction,N_mm,N_mp,N_pm,N_pp,bound,pass\n7,3,elliptic,", 0), 0u);
}

TEST_F(CliTest, T2Report) {
  const CliRun r = run({"t2", "--p", "5", "--no-cache"});
  ASSERT_EQ(r.code, 0);
  const json j = json::parse(r.out);
  EXPECT_EQ(j["bijection"]["generating_pairs"], 1200);
  EXPECT_EQ(j["pass"], true);
}
