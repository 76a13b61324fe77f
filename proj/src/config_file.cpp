#include "raguard/config_file.hpp"

#include <charconv>

#include "raguard/errors.hpp"
#include "raguard/jsonl.hpp"

namespace raguard {

namespace {

std::string_view trim(std::string_view text) {
  const char* ws = " \t\r";
  const auto begin = text.find_first_not_of(ws);
  if (begin == std::string_view::npos) return {};
  const auto end = text.find_last_not_of(ws);
  return text.substr(begin, end - begin + 1);
}

}  // namespace

ConfigFile ConfigFile::parse_file(const std::filesystem::path& path) {
  return parse_string(read_text_file(path));
}

ConfigFile ConfigFile::parse_string(std::string_view text) {
  ConfigFile config;
  std::size_t line_number = 0;
  while (!text.empty()) {
    ++line_number;
    const auto newline = text.find('\n');
    std::string_view line = text.substr(0, newline);
    text = (newline == std::string_view::npos) ? std::string_view{} : text.substr(newline + 1);

    if (const auto comment = line.find('#'); comment != std::string_view::npos)
      line = line.substr(0, comment);
    line = trim(line);
    if (line.empty()) continue;

    const auto eq = line.find('=');
    if (eq == std::string_view::npos)
      throw ConfigurationError("config line " + std::to_string(line_number) + ": expected key = value");
    const std::string key(trim(line.substr(0, eq)));
    const std::string value(trim(line.substr(eq + 1)));
    if (key.empty())
      throw ConfigurationError("config line " + std::to_string(line_number) + ": empty key");
    config.entries_[key] = value;
  }
  return config;
}

std::optional<std::string> ConfigFile::get(const std::string& key) const {
  auto it = entries_.find(key);
  if (it == entries_.end()) return std::nullopt;
  return it->second;
}

std::optional<double> ConfigFile::get_double(const std::string& key) const {
  const auto value = get(key);
  if (!value) return std::nullopt;
  try {
    std::size_t consumed = 0;
    const double parsed = std::stod(*value, &consumed);
    if (consumed != value->size()) throw std::invalid_argument("trailing characters");
    return parsed;
  } catch (const std::exception&) {
    throw ConfigurationError("config key '" + key + "': not a number: '" + *value + "'");
  }
}

std::optional<std::size_t> ConfigFile::get_size(const std::string& key) const {
  const auto value = get_u64(key);
  if (!value) return std::nullopt;
  return static_cast<std::size_t>(*value);
}

std::optional<std::uint64_t> ConfigFile::get_u64(const std::string& key) const {
  const auto value = get(key);
  if (!value) return std::nullopt;
  std::uint64_t parsed = 0;
  const auto [ptr, ec] = std::from_chars(value->data(), value->data() + value->size(), parsed);
  if (ec != std::errc{} || ptr != value->data() + value->size())
    throw ConfigurationError("config key '" + key + "': not an unsigned integer: '" + *value + "'");
  return parsed;
}

}  // namespace raguard
