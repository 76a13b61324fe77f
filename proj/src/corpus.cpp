#include "raguard/corpus.hpp"

#include <algorithm>
#include <iostream>
#include <unordered_set>

#include "json.hpp"

#include "raguard/errors.hpp"
#include "raguard/jsonl.hpp"

namespace raguard {

namespace {

using nlohmann::json;

std::string require_string(const json& record, const char* field, std::size_t line) {
  auto it = record.find(field);
  if (it == record.end() || !it->is_string())
    throw ValidationError("line " + std::to_string(line) + ": missing string field '" + field + "'");
  return it->get<std::string>();
}

Span parse_span(const json& record, std::size_t line) {
  if (!record.contains("start") || !record.contains("end") ||
      !record["start"].is_number_unsigned() || !record["end"].is_number_unsigned())
    throw ValidationError("line " + std::to_string(line) + ": span needs unsigned 'start' and 'end'");
  Span span{record["start"].get<std::size_t>(), record["end"].get<std::size_t>()};
  if (span.end <= span.start)
    throw ValidationError("line " + std::to_string(line) + ": empty span [" +
                          std::to_string(span.start) + "," + std::to_string(span.end) + ")");
  return span;
}

void check_reference(const GoldAnnotation& gold, const DocLengths& docs, std::size_t line) {
  auto it = docs.find(gold.doc_id);
  if (it == docs.end())
    throw ReferenceError("line " + std::to_string(line) + ": unknown doc_id '" + gold.doc_id + "'");
  if (gold.span.end > it->second)
    throw ReferenceError("line " + std::to_string(line) + ": span [" + std::to_string(gold.span.start) +
                         "," + std::to_string(gold.span.end) + ") exceeds document '" + gold.doc_id +
                         "' of length " + std::to_string(it->second));
}

}  // namespace

void ChunkingConfig::validate() const {
  if (chunk_size == 0) throw ValidationError("chunk_size must be positive");
  if (overlap >= chunk_size)
    throw ValidationError("overlap (" + std::to_string(overlap) + ") must be smaller than chunk_size (" +
                          std::to_string(chunk_size) + ")");
}

std::string GoldAnnotation::clause_key() const {
  if (clause_id && !clause_id->empty()) return *clause_id;
  return doc_id + ":" + std::to_string(span.start) + "-" + std::to_string(span.end);
}

std::vector<DocumentRecord> load_corpus(const std::filesystem::path& path, CorpusTag tag) {
  std::vector<DocumentRecord> records;
  std::unordered_set<std::string> seen;
  for_each_jsonl(path, [&](std::size_t line, const json& obj) {
    DocumentRecord rec;
    rec.doc_id = require_string(obj, "doc_id", line);
    rec.text = require_string(obj, "text", line);
    rec.corpus_tag = tag;
    if (obj.contains("title") && obj["title"].is_string()) rec.title = obj["title"].get<std::string>();
    if (rec.text.empty())
      throw ValidationError("line " + std::to_string(line) + ": document '" + rec.doc_id + "' has empty text");
    if (!seen.insert(rec.doc_id).second)
      throw DuplicateIdError("line " + std::to_string(line) + ": duplicate doc_id '" + rec.doc_id + "'");
    records.push_back(std::move(rec));
  });
  return records;
}

std::vector<Chunk> chunk_document(const DocumentRecord& doc, const ChunkingConfig& cfg) {
  cfg.validate();
  const std::size_t stride = cfg.chunk_size - cfg.overlap;
  const std::size_t len = doc.text.size();

  std::vector<Chunk> chunks;
  for (std::size_t i = 0;; ++i) {
    const std::size_t start = i * stride;
    const std::size_t end = std::min(start + cfg.chunk_size, len);
    Chunk chunk;
    chunk.chunk_id = doc.doc_id + "#" + std::to_string(i);
    chunk.doc_id = doc.doc_id;
    chunk.span = {start, end};
    chunk.text = doc.text.substr(start, end - start);
    chunk.corpus_tag = doc.corpus_tag;
    chunks.push_back(std::move(chunk));
    if (end == len) break;
  }
  return chunks;
}

std::vector<Chunk> chunk_corpus(std::span<const DocumentRecord> docs, const ChunkingConfig& cfg) {
  std::vector<Chunk> chunks;
  for (const auto& doc : docs) {
    auto doc_chunks = chunk_document(doc, cfg);
    chunks.insert(chunks.end(), std::make_move_iterator(doc_chunks.begin()),
                  std::make_move_iterator(doc_chunks.end()));
  }
  return chunks;
}

DocLengths doc_length_catalog(std::span<const DocumentRecord> knowledge,
                              std::span<const DocumentRecord> safety) {
  DocLengths lengths;
  for (const auto& doc : knowledge) lengths.emplace(doc.doc_id, doc.text.size());
  for (const auto& doc : safety) lengths.emplace(doc.doc_id, doc.text.size());
  return lengths;
}

void require_disjoint_ids(std::span<const DocumentRecord> knowledge,
                          std::span<const DocumentRecord> safety) {
  std::unordered_set<std::string> ids;
  for (const auto& doc : knowledge) ids.insert(doc.doc_id);
  for (const auto& doc : safety)
    if (ids.count(doc.doc_id))
      throw DuplicateIdError("doc_id '" + doc.doc_id + "' appears in both corpora");
}

std::vector<EvalQuery> load_dataset(const std::filesystem::path& path, const DocLengths& docs,
                                    const WarnSink& warn) {
  const WarnSink emit = warn ? warn : WarnSink([](const std::string& msg) {
    std::cerr << "warning: " << msg << "\n";
  });

  std::vector<EvalQuery> queries;
  std::unordered_set<std::string> seen;
  for_each_jsonl(path, [&](std::size_t line, const json& obj) {
    EvalQuery query;
    query.query_id = require_string(obj, "query_id", line);
    query.question = require_string(obj, "question", line);
    if (query.question.empty())
      throw ValidationError("line " + std::to_string(line) + ": query '" + query.query_id + "' has empty question");
    if (!seen.insert(query.query_id).second)
      throw DuplicateIdError("line " + std::to_string(line) + ": duplicate query_id '" + query.query_id + "'");

    if (!obj.contains("gold_technical") || !obj["gold_technical"].is_object())
      throw ValidationError("line " + std::to_string(line) + ": missing object field 'gold_technical'");
    const json& tech = obj["gold_technical"];
    query.gold_technical.doc_id = require_string(tech, "doc_id", line);
    query.gold_technical.span = parse_span(tech, line);
    query.gold_technical.kind = GoldKind::technical;
    check_reference(query.gold_technical, docs, line);

    if (obj.contains("gold_safety")) {
      if (!obj["gold_safety"].is_array())
        throw ValidationError("line " + std::to_string(line) + ": 'gold_safety' must be an array");
      for (const json& clause : obj["gold_safety"]) {
        GoldAnnotation gold;
        gold.doc_id = require_string(clause, "doc_id", line);
        gold.span = parse_span(clause, line);
        gold.kind = GoldKind::safety_clause;
        if (clause.contains("clause_id") && clause["clause_id"].is_string())
          gold.clause_id = clause["clause_id"].get<std::string>();
        check_reference(gold, docs, line);
        query.gold_safety.push_back(std::move(gold));
      }
    }
    if (query.gold_safety.empty())
      emit("query '" + query.query_id + "' has no safety annotations; compliance is trivially satisfied");

    queries.push_back(std::move(query));
  });
  return queries;
}

bool gold_covered(const GoldAnnotation& gold, std::span<const Chunk> retrieved, double tau) {
  if (tau <= 0.0 || tau > 1.0) throw ValidationError("tau must lie in (0, 1]");

  // Merge the retrieved spans from the gold document and measure the overlap
  // with the gold span.
  std::vector<Span> spans;
  for (const Chunk& chunk : retrieved) {
    if (chunk.doc_id != gold.doc_id) continue;
    const std::size_t lo = std::max(chunk.span.start, gold.span.start);
    const std::size_t hi = std::min(chunk.span.end, gold.span.end);
    if (lo < hi) spans.push_back({lo, hi});
  }
  std::sort(spans.begin(), spans.end(),
            [](const Span& a, const Span& b) { return a.start < b.start || (a.start == b.start && a.end < b.end); });

  std::size_t covered = 0;
  std::size_t cursor = 0;
  for (const Span& span : spans) {
    const std::size_t lo = std::max(span.start, cursor);
    if (span.end > lo) {
      covered += span.end - lo;
      cursor = span.end;
    }
  }
  const double fraction = static_cast<double>(covered) / static_cast<double>(gold.span.length());
  return fraction >= tau;
}

}  // namespace raguard
