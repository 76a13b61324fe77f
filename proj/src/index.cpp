#include "raguard/index.hpp"

#include <cmath>
#include <unordered_map>

#include "raguard/errors.hpp"
#include "raguard/tokenize.hpp"

namespace raguard {

void Bm25Params::validate() const {
  if (!(k1 > 0.0)) throw ValidationError("bm25 k1 must be positive");
  if (!(b >= 0.0 && b <= 1.0)) throw ValidationError("bm25 b must lie in [0, 1]");
}

Origin origin_of(std::span<const Chunk> chunks) {
  bool any_knowledge = false;
  bool any_safety = false;
  for (const Chunk& chunk : chunks) {
    if (chunk.corpus_tag == CorpusTag::knowledge)
      any_knowledge = true;
    else
      any_safety = true;
  }
  if (any_knowledge && !any_safety) return Origin::knowledge;
  if (any_safety && !any_knowledge) return Origin::safety;
  return Origin::merged;
}

SparseIndex build_sparse_index(std::vector<Chunk> chunks, Bm25Params params) {
  params.validate();
  if (chunks.empty()) throw EmptyCorpusError("cannot build a sparse index over an empty chunk list");

  SparseIndex index;
  index.params = params;
  index.origin = origin_of(chunks);
  index.chunks = std::move(chunks);
  index.doc_lengths.reserve(index.chunks.size());

  std::size_t total_tokens = 0;
  for (std::size_t ordinal = 0; ordinal < index.chunks.size(); ++ordinal) {
    std::map<std::string, std::size_t> tf;
    std::size_t length = 0;
    for (const std::string& token : tokenize(index.chunks[ordinal].text)) {
      ++tf[token];
      ++length;
    }
    index.doc_lengths.push_back(length);
    total_tokens += length;
    for (const auto& [term, count] : tf) {
      index.postings[term].push_back({ordinal, count});
      ++index.vocab_df[term];
    }
  }
  index.avg_doc_length = static_cast<double>(total_tokens) / static_cast<double>(index.chunks.size());
  return index;
}

namespace {

std::vector<std::string> dedup_query_terms(const std::string& query) {
  std::vector<std::string> terms = tokenize(query);
  std::vector<std::string> unique;
  unique.reserve(terms.size());
  for (std::string& term : terms) {
    bool seen = false;
    for (const std::string& u : unique) {
      if (u == term) {
        seen = true;
        break;
      }
    }
    if (!seen) unique.push_back(std::move(term));
  }
  return unique;
}

double idf(const SparseIndex& index, std::size_t df) {
  const double n = static_cast<double>(index.chunks.size());
  const double d = static_cast<double>(df);
  return std::log(1.0 + (n - d + 0.5) / (d + 0.5));
}

double term_weight(const SparseIndex& index, double idf_value, std::size_t tf, std::size_t doc_len) {
  const double k1 = index.params.k1;
  const double b = index.params.b;
  const double f = static_cast<double>(tf);
  const double norm_len =
      index.avg_doc_length > 0.0 ? static_cast<double>(doc_len) / index.avg_doc_length : 0.0;
  return idf_value * (f * (k1 + 1.0)) / (f + k1 * (1.0 - b + b * norm_len));
}

}  // namespace

std::vector<double> bm25_score_all(const SparseIndex& index, const std::string& query) {
  std::vector<double> scores(index.chunks.size(), 0.0);
  for (const std::string& term : dedup_query_terms(query)) {
    auto it = index.postings.find(term);
    if (it == index.postings.end()) continue;
    const double idf_value = idf(index, it->second.size());
    for (const Posting& posting : it->second)
      scores[posting.ordinal] += term_weight(index, idf_value, posting.tf, index.doc_lengths[posting.ordinal]);
  }
  return scores;
}

double bm25_score(const SparseIndex& index, const std::string& query, std::size_t ordinal) {
  if (ordinal >= index.chunks.size())
    throw ValidationError("chunk ordinal " + std::to_string(ordinal) + " out of range");
  double score = 0.0;
  for (const std::string& term : dedup_query_terms(query)) {
    auto it = index.postings.find(term);
    if (it == index.postings.end()) continue;
    for (const Posting& posting : it->second) {
      if (posting.ordinal != ordinal) continue;
      score += term_weight(index, idf(index, it->second.size()), posting.tf, index.doc_lengths[ordinal]);
      break;
    }
  }
  return score;
}

DenseIndex build_dense_index(std::vector<Chunk> chunks,
                             std::shared_ptr<const EmbeddingProvider> provider, Metric metric) {
  if (!provider) throw ValidationError("dense index needs an embedding provider");
  if (chunks.empty()) throw EmptyCorpusError("cannot build a dense index over an empty chunk list");

  DenseIndex index;
  index.metric = metric;
  index.origin = origin_of(chunks);
  index.provider_id = provider->id();
  index.provider = provider;
  index.chunks = std::move(chunks);
  index.vectors.reserve(index.chunks.size());

  for (const Chunk& chunk : index.chunks) {
    std::vector<double> vec;
    try {
      vec = provider->embed(chunk.text);
    } catch (const ProviderError&) {
      throw;
    } catch (const std::exception& e) {
      throw ProviderError(std::string("embedding failed: ") + e.what(), chunk.chunk_id);
    }
    if (vec.size() != provider->dimension())
      throw ProviderError("provider returned dimension " + std::to_string(vec.size()) + ", expected " +
                              std::to_string(provider->dimension()),
                          chunk.chunk_id);
    if (metric == Metric::cosine) {
      double norm_sq = 0.0;
      for (double v : vec) norm_sq += v * v;
      if (norm_sq == 0.0)
        throw ValidationError("chunk '" + chunk.chunk_id + "' embeds to the zero vector; cosine is undefined");
      const double inv = 1.0 / std::sqrt(norm_sq);
      for (double& v : vec) v *= inv;
    }
    index.vectors.push_back(std::move(vec));
  }
  return index;
}

std::vector<double> dense_score_all(const DenseIndex& index, const std::string& query) {
  if (!index.provider) throw ConfigurationError("dense index has no provider to embed queries");
  std::vector<double> q = index.provider->embed(query);
  if (q.size() != index.provider->dimension())
    throw ProviderError("provider returned dimension " + std::to_string(q.size()) + " for the query");

  if (index.metric == Metric::cosine) {
    double norm_sq = 0.0;
    for (double v : q) norm_sq += v * v;
    if (norm_sq == 0.0) return std::vector<double>(index.chunks.size(), 0.0);
    const double inv = 1.0 / std::sqrt(norm_sq);
    for (double& v : q) v *= inv;
  }

  std::vector<double> scores(index.chunks.size(), 0.0);
  for (std::size_t i = 0; i < index.vectors.size(); ++i) {
    const std::vector<double>& v = index.vectors[i];
    double dot = 0.0;
    for (std::size_t d = 0; d < v.size(); ++d) dot += q[d] * v[d];
    scores[i] = dot;
  }
  return scores;
}

}  // namespace raguard
