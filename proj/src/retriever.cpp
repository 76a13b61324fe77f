#include "raguard/retriever.hpp"

#include <algorithm>

#include "raguard/errors.hpp"

namespace raguard {

void HybridConfig::validate() const {
  if (!(alpha >= 0.0 && alpha <= 1.0)) throw ValidationError("hybrid alpha must lie in [0, 1]");
}

namespace {

std::vector<ScoredPassage> rank_top_k(const std::vector<Chunk>& chunks,
                                      const std::vector<double>& scores, std::size_t k,
                                      Origin origin) {
  if (k == 0) throw ValidationError("k must be at least 1");

  std::vector<std::size_t> order(chunks.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;

  const auto better = [&](std::size_t a, std::size_t b) {
    if (scores[a] != scores[b]) return scores[a] > scores[b];
    return chunks[a].chunk_id < chunks[b].chunk_id;
  };
  const std::size_t take = std::min(k, order.size());
  std::partial_sort(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(take), order.end(), better);

  std::vector<ScoredPassage> ranked;
  ranked.reserve(take);
  for (std::size_t r = 0; r < take; ++r)
    ranked.push_back({chunks[order[r]], scores[order[r]], r + 1, origin});
  return ranked;
}

void min_max_normalize(std::vector<double>& scores) {
  if (scores.empty()) return;
  const auto [lo, hi] = std::minmax_element(scores.begin(), scores.end());
  const double min = *lo;
  const double max = *hi;
  if (max == min) {
    std::fill(scores.begin(), scores.end(), 0.0);
    return;
  }
  const double inv = 1.0 / (max - min);
  for (double& s : scores) s = (s - min) * inv;
}

void check_same_chunks(const SparseIndex& sparse, const DenseIndex& dense) {
  if (sparse.chunks.size() != dense.chunks.size())
    throw IndexMismatchError("hybrid retrieval needs identical chunk lists (" +
                             std::to_string(sparse.chunks.size()) + " vs " +
                             std::to_string(dense.chunks.size()) + " chunks)");
  for (std::size_t i = 0; i < sparse.chunks.size(); ++i)
    if (sparse.chunks[i].chunk_id != dense.chunks[i].chunk_id)
      throw IndexMismatchError("hybrid retrieval chunk lists diverge at ordinal " + std::to_string(i));
}

std::vector<double> hybrid_score_all(const SparseIndex& sparse, const DenseIndex& dense,
                                     const std::string& query, const HybridConfig& cfg) {
  cfg.validate();
  check_same_chunks(sparse, dense);

  std::vector<double> sparse_scores = bm25_score_all(sparse, query);
  std::vector<double> dense_scores = dense_score_all(dense, query);
  if (cfg.normalization == HybridConfig::Normalization::min_max) {
    min_max_normalize(sparse_scores);
    min_max_normalize(dense_scores);
  }
  std::vector<double> fused(sparse_scores.size(), 0.0);
  for (std::size_t i = 0; i < fused.size(); ++i)
    fused[i] = cfg.alpha * dense_scores[i] + (1.0 - cfg.alpha) * sparse_scores[i];
  return fused;
}

}  // namespace

std::vector<ScoredPassage> retrieve(const SparseIndex& index, const std::string& query, std::size_t k) {
  return rank_top_k(index.chunks, bm25_score_all(index, query), k, index.origin);
}

std::vector<ScoredPassage> retrieve(const DenseIndex& index, const std::string& query, std::size_t k) {
  return rank_top_k(index.chunks, dense_score_all(index, query), k, index.origin);
}

std::vector<ScoredPassage> hybrid_retrieve(const SparseIndex& sparse, const DenseIndex& dense,
                                           const std::string& query, std::size_t k,
                                           const HybridConfig& cfg) {
  return rank_top_k(sparse.chunks, hybrid_score_all(sparse, dense, query, cfg), k, sparse.origin);
}

SparseRetriever::SparseRetriever(std::shared_ptr<const SparseIndex> index) : index_(std::move(index)) {
  if (!index_) throw ValidationError("sparse retriever needs an index");
}

std::vector<ScoredPassage> SparseRetriever::top_k(const std::string& query, std::size_t k) const {
  return retrieve(*index_, query, k);
}

std::vector<double> SparseRetriever::score_all(const std::string& query) const {
  return bm25_score_all(*index_, query);
}

DenseRetriever::DenseRetriever(std::shared_ptr<const DenseIndex> index) : index_(std::move(index)) {
  if (!index_) throw ValidationError("dense retriever needs an index");
}

std::vector<ScoredPassage> DenseRetriever::top_k(const std::string& query, std::size_t k) const {
  return retrieve(*index_, query, k);
}

std::vector<double> DenseRetriever::score_all(const std::string& query) const {
  return dense_score_all(*index_, query);
}

HybridRetriever::HybridRetriever(std::shared_ptr<const SparseIndex> sparse,
                                 std::shared_ptr<const DenseIndex> dense, HybridConfig cfg)
    : sparse_(std::move(sparse)), dense_(std::move(dense)), cfg_(cfg) {
  if (!sparse_ || !dense_) throw ValidationError("hybrid retriever needs both indices");
  cfg_.validate();
  check_same_chunks(*sparse_, *dense_);
}

std::vector<ScoredPassage> HybridRetriever::top_k(const std::string& query, std::size_t k) const {
  return hybrid_retrieve(*sparse_, *dense_, query, k, cfg_);
}

std::vector<double> HybridRetriever::score_all(const std::string& query) const {
  return hybrid_score_all(*sparse_, *dense_, query, cfg_);
}

CorpusRetrievers make_retrievers(const IndexBundle& bundle, Paradigm paradigm) {
  const auto missing = [&](const char* what) {
    throw ConfigurationError(std::string("index bundle is missing the ") + what + " indices needed by " +
                             std::string(to_string(paradigm)));
  };
  CorpusRetrievers out;
  switch (paradigm) {
    case Paradigm::sparse:
      if (!bundle.has_sparse()) missing("sparse");
      out.know = std::make_unique<SparseRetriever>(bundle.sparse_know);
      out.safe = std::make_unique<SparseRetriever>(bundle.sparse_safe);
      out.merged = std::make_unique<SparseRetriever>(bundle.sparse_merged);
      break;
    case Paradigm::dense:
      if (!bundle.has_dense()) missing("dense");
      out.know = std::make_unique<DenseRetriever>(bundle.dense_know);
      out.safe = std::make_unique<DenseRetriever>(bundle.dense_safe);
      out.merged = std::make_unique<DenseRetriever>(bundle.dense_merged);
      break;
    case Paradigm::hybrid:
      if (!bundle.has_sparse() || !bundle.has_dense()) missing("sparse+dense");
      out.know = std::make_unique<HybridRetriever>(bundle.sparse_know, bundle.dense_know, bundle.hybrid);
      out.safe = std::make_unique<HybridRetriever>(bundle.sparse_safe, bundle.dense_safe, bundle.hybrid);
      out.merged =
          std::make_unique<HybridRetriever>(bundle.sparse_merged, bundle.dense_merged, bundle.hybrid);
      break;
  }
  return out;
}

IndexBundle build_index_bundle(const std::vector<Chunk>& know_chunks,
                               const std::vector<Chunk>& safe_chunks, const Bm25Params& bm25,
                               const std::shared_ptr<const EmbeddingProvider>& provider, Metric metric,
                               const HybridConfig& hybrid, std::span<const Paradigm> paradigms) {
  bool want_sparse = false;
  bool want_dense = false;
  for (Paradigm p : paradigms) {
    want_sparse |= (p == Paradigm::sparse || p == Paradigm::hybrid);
    want_dense |= (p == Paradigm::dense || p == Paradigm::hybrid);
  }

  std::vector<Chunk> merged_chunks = know_chunks;
  merged_chunks.insert(merged_chunks.end(), safe_chunks.begin(), safe_chunks.end());

  IndexBundle bundle;
  bundle.hybrid = hybrid;
  if (want_sparse) {
    bundle.sparse_know = std::make_shared<SparseIndex>(build_sparse_index(know_chunks, bm25));
    bundle.sparse_safe = std::make_shared<SparseIndex>(build_sparse_index(safe_chunks, bm25));
    bundle.sparse_merged = std::make_shared<SparseIndex>(build_sparse_index(merged_chunks, bm25));
  }
  if (want_dense) {
    if (!provider) throw ConfigurationError("dense paradigm requested without an embedding provider");
    bundle.dense_know = std::make_shared<DenseIndex>(build_dense_index(know_chunks, provider, metric));
    bundle.dense_safe = std::make_shared<DenseIndex>(build_dense_index(safe_chunks, provider, metric));
    bundle.dense_merged = std::make_shared<DenseIndex>(build_dense_index(merged_chunks, provider, metric));
  }
  return bundle;
}

}  // namespace raguard
