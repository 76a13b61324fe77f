#include "raguard/manifest.hpp"

#include <chrono>
#include <cstdio>
#include <ctime>

#include "raguard/embedding.hpp"
#include "raguard/jsonl.hpp"

namespace raguard {

void to_json(nlohmann::json& j, const RunManifest& manifest) {
  j = nlohmann::json{{"format_version", manifest.format_version},
                     {"command", manifest.command},
                     {"config", manifest.config},
                     {"fingerprints", manifest.fingerprints},
                     {"seed", manifest.seed},
                     {"timestamp", manifest.timestamp}};
}

std::string fnv1a64_hex(std::string_view bytes) {
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(fnv1a64(bytes)));
  return std::string(buf);
}

std::string file_fingerprint(const std::filesystem::path& path) {
  return fnv1a64_hex(read_text_file(path));
}

std::string utc_timestamp_now() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t t = std::chrono::system_clock::to_time_t(now);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return std::string(buf);
}

}  // namespace raguard
