#pragma once

#include <memory>
#include <vector>

#include "raguard/index.hpp"

namespace raguard {

struct HybridConfig {
  enum class Normalization { min_max, none };

  double alpha = 0.5;  // weight on the dense score
  Normalization normalization = Normalization::min_max;

  void validate() const;  // alpha in [0, 1]
};

struct ScoredPassage {
  Chunk chunk;
  double score = 0.0;
  std::size_t rank = 0;  // 1-based within its ranked list
  Origin origin = Origin::merged;
};

// Top-k by score, ties broken by ascending chunk_id. Returns the whole corpus
// when it holds fewer than k chunks; k = 0 is a ValidationError.
std::vector<ScoredPassage> retrieve(const SparseIndex& index, const std::string& query, std::size_t k);
std::vector<ScoredPassage> retrieve(const DenseIndex& index, const std::string& query, std::size_t k);

// Fused score per chunk: alpha * norm(dense) + (1 - alpha) * norm(sparse).
// min_max maps each score list onto [0, 1] over all candidates; a constant
// list maps to all zeros. Both indices must cover the identical chunk list.
std::vector<ScoredPassage> hybrid_retrieve(const SparseIndex& sparse, const DenseIndex& dense,
                                           const std::string& query, std::size_t k,
                                           const HybridConfig& cfg = {});

// Read-only ranked-retrieval handle over one corpus. Handles are immutable
// views and safe to share across threads.
class Retriever {
 public:
  virtual ~Retriever() = default;

  virtual std::vector<ScoredPassage> top_k(const std::string& query, std::size_t k) const = 0;
  virtual std::vector<double> score_all(const std::string& query) const = 0;
  virtual const std::vector<Chunk>& chunks() const = 0;
  virtual Origin origin() const = 0;

  std::size_t size() const { return chunks().size(); }
};

class SparseRetriever final : public Retriever {
 public:
  explicit SparseRetriever(std::shared_ptr<const SparseIndex> index);

  std::vector<ScoredPassage> top_k(const std::string& query, std::size_t k) const override;
  std::vector<double> score_all(const std::string& query) const override;
  const std::vector<Chunk>& chunks() const override { return index_->chunks; }
  Origin origin() const override { return index_->origin; }

 private:
  std::shared_ptr<const SparseIndex> index_;
};

class DenseRetriever final : public Retriever {
 public:
  explicit DenseRetriever(std::shared_ptr<const DenseIndex> index);

  std::vector<ScoredPassage> top_k(const std::string& query, std::size_t k) const override;
  std::vector<double> score_all(const std::string& query) const override;
  const std::vector<Chunk>& chunks() const override { return index_->chunks; }
  Origin origin() const override { return index_->origin; }

 private:
  std::shared_ptr<const DenseIndex> index_;
};

class HybridRetriever final : public Retriever {
 public:
  HybridRetriever(std::shared_ptr<const SparseIndex> sparse, std::shared_ptr<const DenseIndex> dense,
                  HybridConfig cfg = {});

  std::vector<ScoredPassage> top_k(const std::string& query, std::size_t k) const override;
  std::vector<double> score_all(const std::string& query) const override;
  const std::vector<Chunk>& chunks() const override { return sparse_->chunks; }
  Origin origin() const override { return sparse_->origin; }

 private:
  std::shared_ptr<const SparseIndex> sparse_;
  std::shared_ptr<const DenseIndex> dense_;
  HybridConfig cfg_;
};

// All indices a pipeline can draw on: per corpus, the sparse and/or dense
// index needed by the requested paradigms. Built once, shared read-only.
struct IndexBundle {
  std::shared_ptr<const SparseIndex> sparse_know, sparse_safe, sparse_merged;
  std::shared_ptr<const DenseIndex> dense_know, dense_safe, dense_merged;
  HybridConfig hybrid;

  bool has_sparse() const { return sparse_know && sparse_safe && sparse_merged; }
  bool has_dense() const { return dense_know && dense_safe && dense_merged; }
};

struct CorpusRetrievers {
  std::unique_ptr<Retriever> know, safe, merged;
};

// Materialises retriever handles for one paradigm; ConfigurationError when
// the bundle lacks the indices that paradigm needs.
CorpusRetrievers make_retrievers(const IndexBundle& bundle, Paradigm paradigm);

// Builds every index the requested paradigms need over the two chunk lists.
// The merged index covers knowledge ++ safety chunks.
IndexBundle build_index_bundle(const std::vector<Chunk>& know_chunks,
                               const std::vector<Chunk>& safe_chunks, const Bm25Params& bm25,
                               const std::shared_ptr<const EmbeddingProvider>& provider, Metric metric,
                               const HybridConfig& hybrid, std::span<const Paradigm> paradigms);

}  // namespace raguard
