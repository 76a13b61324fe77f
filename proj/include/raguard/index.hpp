#pragma once

#include <map>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "raguard/corpus.hpp"
#include "raguard/embedding.hpp"

namespace raguard {

struct Bm25Params {
  double k1 = 1.2;
  double b = 0.75;

  void validate() const;  // k1 > 0, b in [0, 1]
};

struct Posting {
  std::size_t ordinal = 0;  // position in the index's chunk list
  std::size_t tf = 0;       // term frequency in that chunk

  bool operator==(const Posting&) const = default;
};

struct SparseIndex {
  std::map<std::string, std::vector<Posting>> postings;
  std::vector<std::size_t> doc_lengths;  // token count per chunk
  double avg_doc_length = 0.0;
  std::map<std::string, std::size_t> vocab_df;
  Bm25Params params;
  std::vector<Chunk> chunks;
  Origin origin = Origin::merged;
};

struct DenseIndex {
  std::vector<std::vector<double>> vectors;  // one per chunk; unit-length under cosine
  Metric metric = Metric::cosine;
  std::vector<Chunk> chunks;
  std::string provider_id;
  std::shared_ptr<const EmbeddingProvider> provider;  // embeds queries at retrieval time
  Origin origin = Origin::merged;
};

// knowledge when every chunk is tagged knowledge, safety when every chunk is
// tagged safety, merged otherwise.
Origin origin_of(std::span<const Chunk> chunks);

SparseIndex build_sparse_index(std::vector<Chunk> chunks, Bm25Params params = {});

// Okapi BM25 with idf(t) = ln(1 + (N - df + 0.5) / (df + 0.5)). Query terms
// are deduplicated (first occurrence wins); unknown terms contribute 0.
double bm25_score(const SparseIndex& index, const std::string& query, std::size_t ordinal);
std::vector<double> bm25_score_all(const SparseIndex& index, const std::string& query);

DenseIndex build_dense_index(std::vector<Chunk> chunks,
                             std::shared_ptr<const EmbeddingProvider> provider, Metric metric);

// Scores every chunk against the query embedding. A query that embeds to the
// zero vector scores 0 everywhere under cosine.
std::vector<double> dense_score_all(const DenseIndex& index, const std::string& query);

}  // namespace raguard
