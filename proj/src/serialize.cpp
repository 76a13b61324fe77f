#include "raguard/serialize.hpp"

namespace raguard {

using nlohmann::json;

void to_json(json& j, const Chunk& chunk) {
  j = json{{"chunk_id", chunk.chunk_id},
           {"doc_id", chunk.doc_id},
           {"start", chunk.span.start},
           {"end", chunk.span.end},
           {"text", chunk.text},
           {"corpus_tag", std::string(to_string(chunk.corpus_tag))}};
}

void from_json(const json& j, Chunk& chunk) {
  chunk.chunk_id = j.at("chunk_id").get<std::string>();
  chunk.doc_id = j.at("doc_id").get<std::string>();
  chunk.span.start = j.at("start").get<std::size_t>();
  chunk.span.end = j.at("end").get<std::size_t>();
  chunk.text = j.at("text").get<std::string>();
  chunk.corpus_tag = parse_corpus_tag(j.at("corpus_tag").get<std::string>());
}

void to_json(json& j, const RetrievalConfig& cfg) {
  j = json{{"policy", std::string(to_string(cfg.policy))},
           {"paradigm", std::string(to_string(cfg.paradigm))},
           {"top_k", cfg.top_k},
           {"k_know", cfg.k_know},
           {"k_safe", cfg.k_safe}};
  if (cfg.k_fetch)
    j["k_fetch"] = *cfg.k_fetch;
  else
    j["k_fetch"] = nullptr;
}

void from_json(const json& j, RetrievalConfig& cfg) {
  cfg.policy = parse_policy(j.at("policy").get<std::string>());
  cfg.paradigm = parse_paradigm(j.at("paradigm").get<std::string>());
  cfg.top_k = j.at("top_k").get<std::size_t>();
  cfg.k_know = j.at("k_know").get<std::size_t>();
  cfg.k_safe = j.at("k_safe").get<std::size_t>();
  cfg.k_fetch.reset();
  if (j.contains("k_fetch") && !j["k_fetch"].is_null()) cfg.k_fetch = j["k_fetch"].get<std::size_t>();
}

void to_json(json& j, const PipelineReport& report) {
  j = json{{"pipeline_id", report.pipeline_id},
           {"knowledge_recall", report.knowledge_recall},
           {"safety_recall", report.safety_recall},
           {"combined_recall", report.combined_recall},
           {"compliance_recall", report.compliance_recall},
           {"mean_utilization", report.mean_utilization},
           {"run_count", report.run_count}};
  if (report.latency_mean) j["latency_mean"] = *report.latency_mean;
  if (report.latency_std) j["latency_std"] = *report.latency_std;
}

void to_json(json& j, const SweepResult& result) {
  j = json{{"config", result.config},
           {"knowledge_recall", result.knowledge_recall},
           {"safety_recall", result.safety_recall},
           {"combined_recall", result.combined_recall}};
}

void from_json(const json& j, SweepResult& result) {
  result.config = j.at("config").get<RetrievalConfig>();
  result.knowledge_recall = j.at("knowledge_recall").get<double>();
  result.safety_recall = j.at("safety_recall").get<double>();
  result.combined_recall = j.at("combined_recall").get<double>();
}

}  // namespace raguard
