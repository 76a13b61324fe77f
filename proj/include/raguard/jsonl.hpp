#pragma once

#include <filesystem>
#include <functional>
#include <string>

#include "json.hpp"

namespace raguard {

// Calls fn(line_number, parsed) for every non-empty line. Throws IoError when
// the file cannot be opened and ValidationError naming the line on a parse
// failure.
void for_each_jsonl(const std::filesystem::path& path,
                    const std::function<void(std::size_t, const nlohmann::json&)>& fn);

std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, const std::string& content);

}  // namespace raguard
