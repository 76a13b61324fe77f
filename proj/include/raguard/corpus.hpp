#pragma once

#include <filesystem>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "raguard/types.hpp"

namespace raguard {

struct DocumentRecord {
  std::string doc_id;
  std::string text;
  CorpusTag corpus_tag = CorpusTag::knowledge;
  std::optional<std::string> title;

  bool operator==(const DocumentRecord&) const = default;
};

struct ChunkingConfig {
  std::size_t chunk_size = 512;  // characters
  std::size_t overlap = 128;     // characters shared between adjacent chunks

  // 0 <= overlap < chunk_size, chunk_size > 0; throws ValidationError.
  void validate() const;
};

struct Chunk {
  std::string chunk_id;  // doc_id + "#" + chunk index
  std::string doc_id;
  Span span;             // character range within the source document
  std::string text;      // document substring at span
  CorpusTag corpus_tag = CorpusTag::knowledge;

  bool operator==(const Chunk&) const = default;
};

enum class GoldKind { technical, safety_clause };

struct GoldAnnotation {
  std::string doc_id;
  Span span;
  GoldKind kind = GoldKind::technical;
  std::optional<std::string> clause_id;

  // Key used for compliance grouping: clause_id when present, otherwise the
  // span identity so that every unlabelled excerpt counts as its own clause.
  std::string clause_key() const;

  bool operator==(const GoldAnnotation&) const = default;
};

struct EvalQuery {
  std::string query_id;
  std::string question;
  GoldAnnotation gold_technical;
  std::vector<GoldAnnotation> gold_safety;
};

using WarnSink = std::function<void(const std::string&)>;

// doc_id -> document text length, used to validate gold spans.
using DocLengths = std::unordered_map<std::string, std::size_t>;

// Reads a line-delimited corpus file ({"doc_id":..., "text":..., "title"?})
// and applies `tag` to every record. Order is preserved.
std::vector<DocumentRecord> load_corpus(const std::filesystem::path& path, CorpusTag tag);

// Splits a document into chunks of cfg.chunk_size characters, consecutive
// chunks sharing cfg.overlap characters; the final chunk may be shorter.
std::vector<Chunk> chunk_document(const DocumentRecord& doc, const ChunkingConfig& cfg);

std::vector<Chunk> chunk_corpus(std::span<const DocumentRecord> docs, const ChunkingConfig& cfg);

DocLengths doc_length_catalog(std::span<const DocumentRecord> knowledge,
                              std::span<const DocumentRecord> safety = {});

// The two corpora must not share doc_ids, otherwise chunk ids would collide
// across indices. Throws DuplicateIdError.
void require_disjoint_ids(std::span<const DocumentRecord> knowledge,
                          std::span<const DocumentRecord> safety);

// Reads a line-delimited dataset file; every gold annotation must reference a
// doc_id present in `docs` with a span inside that document. Queries with no
// safety annotations load with an empty list and a warning through `warn`
// (stderr when unset).
std::vector<EvalQuery> load_dataset(const std::filesystem::path& path, const DocLengths& docs,
                                    const WarnSink& warn = {});

// True iff chunks from gold.doc_id jointly cover at least `tau` of the gold
// span's characters.
bool gold_covered(const GoldAnnotation& gold, std::span<const Chunk> retrieved, double tau = 0.8);

inline constexpr double kDefaultCoverageTau = 0.8;

}  // namespace raguard
