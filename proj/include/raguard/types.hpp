#pragma once

#include <cstddef>
#include <string>
#include <string_view>

namespace raguard {

enum class CorpusTag { knowledge, safety };

// Which index a ranked passage came from.
enum class Origin { knowledge, safety, merged };

enum class Paradigm { sparse, dense, hybrid };

enum class Policy { base, raguard, safety_clamp };

enum class Metric { inner_product, cosine };

// Half-open [start, end) character range within a document.
struct Span {
  std::size_t start = 0;
  std::size_t end = 0;

  std::size_t length() const { return end - start; }
  bool operator==(const Span&) const = default;
};

std::string_view to_string(CorpusTag tag);
std::string_view to_string(Origin origin);
std::string_view to_string(Paradigm paradigm);
std::string_view to_string(Policy policy);
std::string_view to_string(Metric metric);

// All parsers throw ConfigurationError on unknown names.
CorpusTag parse_corpus_tag(std::string_view s);
Origin parse_origin(std::string_view s);
Paradigm parse_paradigm(std::string_view s);
Policy parse_policy(std::string_view s);
Metric parse_metric(std::string_view s);

}  // namespace raguard
