#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <string_view>

#include "json.hpp"

namespace raguard {

// Reproducibility record embedded in every emitted report. The timestamp is
// the only field excluded from byte-for-byte output comparisons.
struct RunManifest {
  int format_version = 1;
  std::string command;
  std::map<std::string, std::string> config;        // resolved hyperparameters
  std::map<std::string, std::string> fingerprints;  // input path -> content hash
  std::uint64_t seed = 0;
  std::string timestamp;  // ISO-8601 UTC
};

void to_json(nlohmann::json& j, const RunManifest& manifest);

std::string fnv1a64_hex(std::string_view bytes);
std::string file_fingerprint(const std::filesystem::path& path);
std::string utc_timestamp_now();

}  // namespace raguard
