#include "raguard/types.hpp"

#include "raguard/errors.hpp"

namespace raguard {

std::string_view to_string(CorpusTag tag) {
  return tag == CorpusTag::knowledge ? "knowledge" : "safety";
}

std::string_view to_string(Origin origin) {
  switch (origin) {
    case Origin::knowledge: return "knowledge";
    case Origin::safety: return "safety";
    case Origin::merged: return "merged";
  }
  return "merged";
}

std::string_view to_string(Paradigm paradigm) {
  switch (paradigm) {
    case Paradigm::sparse: return "sparse";
    case Paradigm::dense: return "dense";
    case Paradigm::hybrid: return "hybrid";
  }
  return "sparse";
}

std::string_view to_string(Policy policy) {
  switch (policy) {
    case Policy::base: return "base";
    case Policy::raguard: return "raguard";
    case Policy::safety_clamp: return "safety_clamp";
  }
  return "base";
}

std::string_view to_string(Metric metric) {
  return metric == Metric::inner_product ? "inner_product" : "cosine";
}

namespace {

[[noreturn]] void bad_name(std::string_view kind, std::string_view value) {
  throw ConfigurationError("unknown " + std::string(kind) + ": '" + std::string(value) + "'");
}

}  // namespace

CorpusTag parse_corpus_tag(std::string_view s) {
  if (s == "knowledge") return CorpusTag::knowledge;
  if (s == "safety") return CorpusTag::safety;
  bad_name("corpus tag", s);
}

Origin parse_origin(std::string_view s) {
  if (s == "knowledge") return Origin::knowledge;
  if (s == "safety") return Origin::safety;
  if (s == "merged") return Origin::merged;
  bad_name("origin", s);
}

Paradigm parse_paradigm(std::string_view s) {
  if (s == "sparse") return Paradigm::sparse;
  if (s == "dense") return Paradigm::dense;
  if (s == "hybrid") return Paradigm::hybrid;
  bad_name("paradigm", s);
}

Policy parse_policy(std::string_view s) {
  if (s == "base") return Policy::base;
  if (s == "raguard") return Policy::raguard;
  if (s == "safety_clamp") return Policy::safety_clamp;
  bad_name("policy", s);
}

Metric parse_metric(std::string_view s) {
  if (s == "inner_product") return Metric::inner_product;
  if (s == "cosine") return Metric::cosine;
  bad_name("metric", s);
}

}  // namespace raguard
