#pragma once

#include <filesystem>
#include <mutex>
#include <optional>
#include <string>

#include <nlohmann/json.hpp>

namespace markoff::cli {

/// Lowercase hex SHA-256 of data.
std::string sha256_hex(const std::string& data);

/// Append-only JSONL store of run records keyed by a content hash of
/// (subcommand, parameters, version).
class RunCache {
 public:
  explicit RunCache(std::filesystem::path dir);

  static std::string key_of(const nlohmann::json& params, const std::string& version);

  /// The most recent record stored under key.
  std::optional<nlohmann::json> lookup(const std::string& key) const;
  void append(const nlohmann::json& record);

  const std::filesystem::path& file() const { return file_; }

 private:
  std::filesystem::path file_;
  mutable std::mutex mutex_;
};

/// --cache-dir, else MARKOFF_CACHE_DIR, else $XDG_CACHE_HOME/markoff or
/// ~/.cache/markoff.
std::filesystem::path resolve_cache_dir(const std::string& flag);

}  // namespace markoff::cli
