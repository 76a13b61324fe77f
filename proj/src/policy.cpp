#include "raguard/policy.hpp"

#include <algorithm>
#include <unordered_set>

#include "raguard/errors.hpp"

namespace raguard {

void RetrievalConfig::validate() const {
  if (top_k == 0) throw ValidationError("top_k must be at least 1");
  switch (policy) {
    case Policy::base:
      if (k_know != 0 || k_safe != 0)
        throw ValidationError("base policy takes no quotas");
      if (k_fetch) throw ValidationError("base policy takes no k_fetch");
      break;
    case Policy::raguard:
      if (k_know < 1 || k_safe < 1) throw ValidationError("raguard needs k_know >= 1 and k_safe >= 1");
      if (top_k != k_know + k_safe)
        throw ValidationError("raguard needs top_k = k_know + k_safe (got " + std::to_string(top_k) +
                              " vs " + std::to_string(k_know + k_safe) + ")");
      if (k_fetch) throw ValidationError("raguard takes no k_fetch");
      break;
    case Policy::safety_clamp:
      if (k_know < 1 || k_safe < 1)
        throw ValidationError("safety_clamp needs k_know >= 1 and k_safe >= 1");
      if (top_k < k_know + k_safe)
        throw ValidationError("safety_clamp needs top_k >= k_know + k_safe");
      if (!k_fetch) throw ValidationError("safety_clamp needs k_fetch");
      if (*k_fetch <= top_k) throw ValidationError("safety_clamp needs k_fetch > top_k");
      break;
  }
}

std::vector<ScoredPassage> SlottedContext::assembled() const {
  std::vector<ScoredPassage> all;
  all.reserve(size());
  all.insert(all.end(), knowledge_slots.begin(), knowledge_slots.end());
  all.insert(all.end(), safety_slots.begin(), safety_slots.end());
  all.insert(all.end(), wildcard_slots.begin(), wildcard_slots.end());
  return all;
}

namespace {

void require_nonempty(const Retriever& retriever, const char* name) {
  if (retriever.size() == 0) throw EmptyCorpusError(std::string(name) + " index is empty");
}

}  // namespace

SlottedContext base_rag(const std::string& query, const Retriever& merged, std::size_t k) {
  if (k == 0) throw ValidationError("top_k must be at least 1");
  require_nonempty(merged, "merged");

  SlottedContext ctx;
  ctx.config.policy = Policy::base;
  ctx.config.top_k = k;
  ctx.wildcard_slots = merged.top_k(query, k);
  return ctx;
}

SlottedContext raguard(const std::string& query, const Retriever& know, const Retriever& safe,
                       std::size_t k_know, std::size_t k_safe) {
  if (k_know < 1 || k_safe < 1) throw ValidationError("raguard needs k_know >= 1 and k_safe >= 1");
  require_nonempty(know, "knowledge");
  require_nonempty(safe, "safety");

  SlottedContext ctx;
  ctx.config.policy = Policy::raguard;
  ctx.config.top_k = k_know + k_safe;
  ctx.config.k_know = k_know;
  ctx.config.k_safe = k_safe;
  ctx.knowledge_slots = know.top_k(query, k_know);
  ctx.safety_slots = safe.top_k(query, k_safe);
  return ctx;
}

std::vector<ScoredPassage> clamp_candidates(const std::string& query, const Retriever& know,
                                            const Retriever& safe, std::size_t k_fetch) {
  if (k_fetch == 0) throw ValidationError("k_fetch must be at least 1");
  if (know.size() == 0 && safe.size() == 0) throw EmptyCorpusError("both indices are empty");

  struct Candidate {
    const Chunk* chunk;
    double score;
    Origin origin;
  };
  std::vector<Candidate> pool;
  pool.reserve(know.size() + safe.size());
  for (const Retriever* retriever : {&know, &safe}) {
    const std::vector<double> scores = retriever->score_all(query);
    const std::vector<Chunk>& chunks = retriever->chunks();
    for (std::size_t i = 0; i < chunks.size(); ++i)
      pool.push_back({&chunks[i], scores[i], retriever->origin()});
  }
  std::sort(pool.begin(), pool.end(), [](const Candidate& a, const Candidate& b) {
    if (a.score != b.score) return a.score > b.score;
    return a.chunk->chunk_id < b.chunk->chunk_id;
  });

  std::vector<ScoredPassage> candidates;
  std::unordered_set<std::string> taken;
  for (const Candidate& c : pool) {
    if (candidates.size() == k_fetch) break;
    if (!taken.insert(c.chunk->chunk_id).second) continue;
    candidates.push_back({*c.chunk, c.score, candidates.size() + 1, c.origin});
  }
  return candidates;
}

std::vector<ScoredPassage> wildcard_pool(const std::vector<ScoredPassage>& candidates,
                                         const std::vector<ScoredPassage>& m_know,
                                         const std::vector<ScoredPassage>& s_safe) {
  std::unordered_set<std::string> selected;
  for (const ScoredPassage& p : m_know) selected.insert(p.chunk.chunk_id);
  for (const ScoredPassage& p : s_safe) selected.insert(p.chunk.chunk_id);

  std::vector<ScoredPassage> survivors;
  for (const ScoredPassage& p : candidates) {
    if (selected.count(p.chunk.chunk_id)) continue;
    ScoredPassage kept = p;
    kept.rank = survivors.size() + 1;
    survivors.push_back(std::move(kept));
  }
  return survivors;
}

SlottedContext safety_clamp(const std::string& query, const Retriever& know, const Retriever& safe,
                            const RetrievalConfig& cfg) {
  cfg.validate();
  if (cfg.policy != Policy::safety_clamp) throw ValidationError("config policy must be safety_clamp");
  require_nonempty(know, "knowledge");
  require_nonempty(safe, "safety");

  SlottedContext ctx;
  ctx.config = cfg;
  ctx.knowledge_slots = know.top_k(query, cfg.k_know);
  ctx.safety_slots = safe.top_k(query, cfg.k_safe);

  // Fill whatever the quotas left open, so |context| = min(K, available).
  const std::size_t filled = ctx.knowledge_slots.size() + ctx.safety_slots.size();
  if (filled < cfg.top_k) {
    const std::vector<ScoredPassage> pool =
        wildcard_pool(clamp_candidates(query, know, safe, *cfg.k_fetch), ctx.knowledge_slots,
                      ctx.safety_slots);
    const std::size_t want = cfg.top_k - filled;
    ctx.wildcard_slots.assign(pool.begin(),
                              pool.begin() + static_cast<std::ptrdiff_t>(std::min(want, pool.size())));
    for (std::size_t i = 0; i < ctx.wildcard_slots.size(); ++i) ctx.wildcard_slots[i].rank = i + 1;
  }
  return ctx;
}

SlottedContext run_policy(const RetrievalConfig& cfg, const std::string& query, const Retriever* know,
                          const Retriever* safe, const Retriever* merged) {
  cfg.validate();
  SlottedContext ctx;
  switch (cfg.policy) {
    case Policy::base:
      if (!merged) throw ConfigurationError("base policy needs the merged index");
      ctx = base_rag(query, *merged, cfg.top_k);
      break;
    case Policy::raguard:
      if (!know || !safe) throw ConfigurationError("raguard needs the knowledge and safety indices");
      ctx = raguard(query, *know, *safe, cfg.k_know, cfg.k_safe);
      break;
    case Policy::safety_clamp:
      if (!know || !safe) throw ConfigurationError("safety_clamp needs the knowledge and safety indices");
      ctx = safety_clamp(query, *know, *safe, cfg);
      break;
  }
  ctx.config = cfg;
  return ctx;
}

}  // namespace raguard
