#pragma once

#include <optional>
#include <string>
#include <vector>

#include "raguard/retriever.hpp"

namespace raguard {

struct RetrievalConfig {
  Policy policy = Policy::base;
  std::size_t top_k = 10;  // K: total passages placed in the prompt
  std::size_t k_know = 0;  // knowledge quota
  std::size_t k_safe = 0;  // safety quota
  std::optional<std::size_t> k_fetch;  // over-retrieval pool size
  Paradigm paradigm = Paradigm::sparse;

  // base: quotas zero, no fetch. raguard: quotas >= 1, top_k = k_know +
  // k_safe, no fetch. safety_clamp: quotas >= 1, top_k >= k_know + k_safe,
  // k_fetch > top_k. Throws ValidationError.
  void validate() const;

  bool operator==(const RetrievalConfig&) const = default;
};

// Ordered retrieval output: knowledge quota, then safety quota, then
// wildcards. Base retrieval puts its single top-K list in wildcard_slots.
struct SlottedContext {
  std::vector<ScoredPassage> knowledge_slots;
  std::vector<ScoredPassage> safety_slots;
  std::vector<ScoredPassage> wildcard_slots;
  RetrievalConfig config;

  std::vector<ScoredPassage> assembled() const;  // knowledge ++ safety ++ wildcard
  std::size_t size() const { return knowledge_slots.size() + safety_slots.size() + wildcard_slots.size(); }
  bool underfilled() const { return size() < config.top_k; }
};

// Single-index retrieval: the top-K passages from the merged corpus fill
// wildcard_slots; the quota slots stay empty.
SlottedContext base_rag(const std::string& query, const Retriever& merged, std::size_t k);

// Dual-index retrieval: k_know from the knowledge index followed by k_safe
// from the safety index, no interleaving.
SlottedContext raguard(const std::string& query, const Retriever& know, const Retriever& safe,
                       std::size_t k_know, std::size_t k_safe);

// Over-retrieved candidate pool: top-k_fetch over the union of both indices'
// candidates, ranked by score with ties on chunk_id, no repetition. Each
// passage keeps the origin of the index it came from.
std::vector<ScoredPassage> clamp_candidates(const std::string& query, const Retriever& know,
                                            const Retriever& safe, std::size_t k_fetch);

// Candidates with every chunk_id already present in m_know or s_safe removed,
// original order preserved.
std::vector<ScoredPassage> wildcard_pool(const std::vector<ScoredPassage>& candidates,
                                         const std::vector<ScoredPassage>& m_know,
                                         const std::vector<ScoredPassage>& s_safe);

// Hard-clamped assembly: exactly the two quotas, then the remaining slots
// filled from the wildcard pool. When the corpora cannot fill K slots the
// context is returned short with its underfilled() flag set.
SlottedContext safety_clamp(const std::string& query, const Retriever& know, const Retriever& safe,
                            const RetrievalConfig& cfg);

// Dispatch on cfg.policy. base uses `merged`; the other policies use `know`
// and `safe`. Unused handles may be null.
SlottedContext run_policy(const RetrievalConfig& cfg, const std::string& query, const Retriever* know,
                          const Retriever* safe, const Retriever* merged);

}  // namespace raguard
