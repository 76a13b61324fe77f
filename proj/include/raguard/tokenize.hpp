#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace raguard {

// Lowercases and splits on every byte outside [0-9A-Za-z]. Non-ASCII bytes act
// as separators, which keeps the result identical across platforms and
// locales.
std::vector<std::string> tokenize(std::string_view text);

}  // namespace raguard
