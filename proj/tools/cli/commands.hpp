#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "markoff/action.hpp"

namespace markoff::cli {

using nlohmann::json;

/// Malformed or missing parameters; maps to exit code 1.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Params {
  std::optional<u64> p;
  std::optional<u64> n;
  std::optional<u64> x;
  std::optional<u64> x_max;
  std::optional<double> C;
  u64 spacing = 10;
  std::optional<Level> level;
  std::string format = "json";
  u64 seed = kDefaultSeed;
  unsigned workers = 1;
  // scan
  std::string task;
  u64 lo = 5;
  std::optional<u64> hi;
  std::string residue = "all";  // all, 1 or 3 (mod 4)
  bool progress = false;
};

enum class Verdict { Pass, Falsified };

struct Outcome {
  json payload;
  Verdict verdict = Verdict::Pass;
  std::string text;  // csv or binary body when format is not json
  bool incomplete = false;  // a scan with errors
  json timings = json::object();
};

inline const std::vector<std::string> kSubcommands = {"enumerate", "classify", "census",  "certify",
                                                      "primitivity", "composite", "charsum", "prop56",
                                                      "orders",    "t2",       "scan"};
inline const std::vector<std::string> kScanTasks = {"enumerate", "classify",    "census", "certify", "primitivity",
                                                    "charsum",   "prop56",      "orders", "t2"};

/// The parameters that determine the payload; used as the cache key.
json canonical_params(const std::string& subcommand, const Params& params);

/// Runs one subcommand. Throws UsageError for bad input.
Outcome execute(const std::string& subcommand, const Params& params);

}  // namespace markoff::cli
