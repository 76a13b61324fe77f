#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>

namespace raguard {

// "key = value" lines, '#' starts a comment, surrounding whitespace is
// trimmed. Keys mirror the config struct fields (chunk_size, overlap, k1, b,
// alpha, top_k, k_know, k_safe, k_fetch, base_url, ...).
class ConfigFile {
 public:
  ConfigFile() = default;

  static ConfigFile parse_file(const std::filesystem::path& path);
  static ConfigFile parse_string(std::string_view text);

  std::optional<std::string> get(const std::string& key) const;
  std::optional<double> get_double(const std::string& key) const;
  std::optional<std::size_t> get_size(const std::string& key) const;
  std::optional<std::uint64_t> get_u64(const std::string& key) const;

  const std::map<std::string, std::string>& entries() const { return entries_; }

 private:
  std::map<std::string, std::string> entries_;
};

}  // namespace raguard
