// Shared synthetic corpora and datasets for unit, integration and acceptance
// tests. All generators are seeded and deterministic.
#pragma once

#include <filesystem>
#include <fstream>
#include <random>
#include <string>
#include <vector>

#include "json.hpp"

#include "raguard/corpus.hpp"

namespace fixtures {

inline raguard::Chunk make_chunk(const std::string& doc_id, std::size_t index, const std::string& text,
                                 raguard::CorpusTag tag, std::size_t start = 0) {
  raguard::Chunk chunk;
  chunk.chunk_id = doc_id + "#" + std::to_string(index);
  chunk.doc_id = doc_id;
  chunk.span = {start, start + text.size()};
  chunk.text = text;
  chunk.corpus_tag = tag;
  return chunk;
}

// One single-chunk document per text.
inline std::vector<raguard::Chunk> chunks_from_texts(const std::vector<std::string>& texts,
                                                     raguard::CorpusTag tag,
                                                     const std::string& prefix = "d") {
  std::vector<raguard::Chunk> chunks;
  for (std::size_t i = 0; i < texts.size(); ++i)
    chunks.push_back(make_chunk(prefix + std::to_string(i), 0, texts[i], tag));
  return chunks;
}

inline std::string random_text(std::mt19937& rng, std::size_t vocab, std::size_t min_tokens,
                               std::size_t max_tokens) {
  std::uniform_int_distribution<std::size_t> word(0, vocab - 1);
  std::uniform_int_distribution<std::size_t> count(min_tokens, max_tokens);
  const std::size_t n = count(rng);
  std::string text;
  for (std::size_t i = 0; i < n; ++i) {
    if (i) text += ' ';
    text += "tok" + std::to_string(word(rng));
  }
  return text;
}

inline std::vector<std::string> random_texts(std::mt19937& rng, std::size_t n, std::size_t vocab = 40,
                                             std::size_t min_tokens = 3, std::size_t max_tokens = 12) {
  std::vector<std::string> texts;
  for (std::size_t i = 0; i < n; ++i) texts.push_back(random_text(rng, vocab, min_tokens, max_tokens));
  return texts;
}

struct Bench {
  std::vector<raguard::DocumentRecord> know_docs;
  std::vector<raguard::DocumentRecord> safe_docs;
  std::vector<raguard::EvalQuery> queries;
};

inline raguard::DocumentRecord make_doc(const std::string& doc_id, const std::string& text,
                                        raguard::CorpusTag tag) {
  raguard::DocumentRecord doc;
  doc.doc_id = doc_id;
  doc.text = text;
  doc.corpus_tag = tag;
  return doc;
}

inline raguard::GoldAnnotation full_doc_gold(const raguard::DocumentRecord& doc, raguard::GoldKind kind,
                                             const std::string& clause_id = {}) {
  raguard::GoldAnnotation gold;
  gold.doc_id = doc.doc_id;
  gold.span = {0, doc.text.size()};
  gold.kind = kind;
  if (!clause_id.empty()) gold.clause_id = clause_id;
  return gold;
}

// Benchmark with a planted ranking gap: the gold safety document for query i
// tops the safety index but sits below rank 40 in the merged index because 45
// knowledge fillers match the same query terms more strongly.
inline Bench separation_bench(std::size_t num_queries = 50, std::size_t fillers_per_query = 45) {
  Bench bench;
  for (std::size_t i = 0; i < num_queries; ++i) {
    const std::string task = "task" + std::to_string(i);
    const std::string haz = "haz" + std::to_string(i);

    const auto gold_know =
        make_doc("k" + std::to_string(i), task + " " + task + " " + haz + " gold step",
                 raguard::CorpusTag::knowledge);
    bench.know_docs.push_back(gold_know);
    for (std::size_t j = 0; j < fillers_per_query; ++j)
      bench.know_docs.push_back(make_doc("f" + std::to_string(i) + "_" + std::to_string(j),
                                         task + " " + haz + " note fill",
                                         raguard::CorpusTag::knowledge));

    const auto gold_safe =
        make_doc("s" + std::to_string(i), haz + " rule clause text", raguard::CorpusTag::safety);
    bench.safe_docs.push_back(gold_safe);

    raguard::EvalQuery query;
    query.query_id = "q" + std::to_string(i);
    query.question = task + " " + haz;
    query.gold_technical = full_doc_gold(gold_know, raguard::GoldKind::technical);
    query.gold_safety.push_back(
        full_doc_gold(gold_safe, raguard::GoldKind::safety_clause, "clause" + std::to_string(i)));
    bench.queries.push_back(std::move(query));
  }
  return bench;
}

// Every query carries two safety clauses; only the first is ever retrievable
// because the second clause document shares no vocabulary with any query.
inline Bench two_clause_bench(std::size_t num_queries = 5) {
  Bench bench;
  for (std::size_t i = 0; i < num_queries; ++i) {
    const std::string topic = "topic" + std::to_string(i);
    const auto know = make_doc("k" + std::to_string(i), topic + " procedure detail steps",
                               raguard::CorpusTag::knowledge);
    const auto reachable = make_doc("sa" + std::to_string(i), topic + " hazard warning",
                                    raguard::CorpusTag::safety);
    const auto unreachable = make_doc("sb" + std::to_string(i), "zzz" + std::to_string(i) + " qqq www",
                                      raguard::CorpusTag::safety);
    bench.know_docs.push_back(know);
    bench.safe_docs.push_back(reachable);
    bench.safe_docs.push_back(unreachable);

    raguard::EvalQuery query;
    query.query_id = "q" + std::to_string(i);
    query.question = topic + " procedure hazard";
    query.gold_technical = full_doc_gold(know, raguard::GoldKind::technical);
    query.gold_safety.push_back(full_doc_gold(reachable, raguard::GoldKind::safety_clause, "c_a"));
    query.gold_safety.push_back(full_doc_gold(unreachable, raguard::GoldKind::safety_clause, "c_b"));
    bench.queries.push_back(std::move(query));
  }
  return bench;
}

// Small mixed-vocabulary benchmark used for CLI round trips and determinism
// checks: some shared tokens, some query-specific ones.
inline Bench small_bench(std::size_t num_queries = 12, std::uint32_t seed = 7) {
  std::mt19937 rng(seed);
  Bench bench;
  for (std::size_t i = 0; i < num_queries; ++i) {
    const std::string topic = "item" + std::to_string(i);
    const auto know = make_doc("k" + std::to_string(i),
                               topic + " " + random_text(rng, 30, 6, 14) + " repair",
                               raguard::CorpusTag::knowledge);
    const auto safe = make_doc("s" + std::to_string(i),
                               topic + " " + random_text(rng, 30, 4, 10) + " caution",
                               raguard::CorpusTag::safety);
    bench.know_docs.push_back(know);
    bench.safe_docs.push_back(safe);

    raguard::EvalQuery query;
    query.query_id = "q" + std::to_string(i);
    query.question = topic + " repair caution";
    query.gold_technical = full_doc_gold(know, raguard::GoldKind::technical);
    query.gold_safety.push_back(
        full_doc_gold(safe, raguard::GoldKind::safety_clause, "c" + std::to_string(i)));
    bench.queries.push_back(std::move(query));
  }
  return bench;
}

inline void write_corpus_file(const std::filesystem::path& path,
                              const std::vector<raguard::DocumentRecord>& docs) {
  std::ofstream out(path);
  for (const auto& doc : docs) {
    nlohmann::json j{{"doc_id", doc.doc_id}, {"text", doc.text}};
    if (doc.title) j["title"] = *doc.title;
    out << j.dump() << "\n";
  }
}

inline void write_dataset_file(const std::filesystem::path& path,
                               const std::vector<raguard::EvalQuery>& queries) {
  std::ofstream out(path);
  for (const auto& query : queries) {
    nlohmann::json j;
    j["query_id"] = query.query_id;
    j["question"] = query.question;
    j["gold_technical"] = {{"doc_id", query.gold_technical.doc_id},
                           {"start", query.gold_technical.span.start},
                           {"end", query.gold_technical.span.end}};
    j["gold_safety"] = nlohmann::json::array();
    for (const auto& gold : query.gold_safety) {
      nlohmann::json clause{{"doc_id", gold.doc_id}, {"start", gold.span.start}, {"end", gold.span.end}};
      if (gold.clause_id) clause["clause_id"] = *gold.clause_id;
      j["gold_safety"].push_back(clause);
    }
    out << j.dump() << "\n";
  }
}

}  // namespace fixtures
