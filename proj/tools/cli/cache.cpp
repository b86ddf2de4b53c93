#include "cache.hpp"

#include <cstdlib>
#include <fstream>
#include <stdexcept>

#include <openssl/evp.h>

namespace markoff::cli {

std::string sha256_hex(const std::string& data) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), digest, &len, EVP_sha256(), nullptr) != 1) {
    throw std::runtime_error("SHA-256 failed");
  }
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out;
  out.reserve(2 * len);
  for (unsigned int i = 0; i < len; ++i) {
    out.push_back(kHex[digest[i] >> 4]);
    out.push_back(kHex[digest[i] & 0xf]);
  }
  return out;
}

RunCache::RunCache(std::filesystem::path dir) : file_(std::move(dir) / "runs.jsonl") {
  std::filesystem::create_directories(file_.parent_path());
}

std::string RunCache::key_of(const nlohmann::json& params, const std::string& version) {
  return sha256_hex(nlohmann::json{{"params", params}, {"version", version}}.dump());
}

std::optional<nlohmann::json> RunCache::lookup(const std::string& key) const {
  std::lock_guard lock(mutex_);
  std::ifstream in(file_);
  std::optional<nlohmann::json> found;
  std::string line;
  while (std::getline(in, line)) {
    // A torn final line from an interrupted run is skipped.
    auto rec = nlohmann::json::parse(line, nullptr, false);
    if (rec.is_discarded() || !rec.is_object()) continue;
    if (rec.value("key", "") == key) found = std::move(rec);
  }
  return found;
}

void RunCache::append(const nlohmann::json& record) {
  std::lock_guard lock(mutex_);
  std::ofstream out(file_, std::ios::app);
  out << record.dump() << '\n';
  if (!out) throw std::runtime_error("cannot write cache file " + file_.string());
}

std::filesystem::path resolve_cache_dir(const std::string& flag) {
  if (!flag.empty()) return flag;
  if (const char* env = std::getenv("MARKOFF_CACHE_DIR"); env && *env) return env;
  if (const char* xdg = std::getenv("XDG_CACHE_HOME"); xdg && *xdg) return std::filesystem::path(xdg) / "markoff";
  if (const char* home = std::getenv("HOME"); home && *home) {
    return std::filesystem::path(home) / ".cache" / "markoff";
  }
  return ".markoff-cache";
}

}  // namespace markoff::cli
