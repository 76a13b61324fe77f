// Acceptance suite: one pass/fail line per criterion, nonzero exit when any
// criterion fails. Usage: acceptance_tests <path-to-cli-binary>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <random>
#include <set>
#include <sstream>
#include <unordered_set>

#include "json.hpp"

#include "cli_util.hpp"
#include "fixtures.hpp"
#include "oracles.hpp"

#include "raguard/corpus.hpp"
#include "raguard/jsonl.hpp"
#include "raguard/metrics.hpp"
#include "raguard/policy.hpp"
#include "raguard/prompt.hpp"
#include "raguard/retriever.hpp"
#include "raguard/sweep.hpp"

namespace fs = std::filesystem;
using namespace raguard;

namespace {

std::string g_cli;
fs::path g_scratch;

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool condition, const std::string& what) {
    if (!condition && pass) {
      pass = false;
      detail = what;
    }
  }
};

struct PipelineHandles {
  std::unique_ptr<Retriever> know, safe, merged;
};

PipelineHandles sparse_handles(const std::vector<Chunk>& know, const std::vector<Chunk>& safe) {
  PipelineHandles h;
  std::vector<Chunk> merged = know;
  merged.insert(merged.end(), safe.begin(), safe.end());
  h.know = std::make_unique<SparseRetriever>(std::make_shared<SparseIndex>(build_sparse_index(know)));
  h.safe = std::make_unique<SparseRetriever>(std::make_shared<SparseIndex>(build_sparse_index(safe)));
  h.merged = std::make_unique<SparseRetriever>(std::make_shared<SparseIndex>(build_sparse_index(merged)));
  return h;
}

// --------------------------------------------------------------------------
// 1. Exact configuration count.

Outcome criterion_config_count() {
  Outcome out;
  out.require(base_clamp_family_size(10, 8) == 1330, "closed form != 1330 for N=10, F=8");

  SweepGrid grid;
  for (std::size_t k = 1; k <= 10; ++k) grid.k_values.push_back(k);
  for (std::size_t f = 25; f <= 200; f += 25) grid.fetch_values.push_back(f);
  grid.paradigms = {Paradigm::sparse};
  grid.policies = {Policy::base, Policy::safety_clamp};
  out.require(enumerate_configs(grid).size() == 1330, "enumerate_configs != 1330 for the defaults");

  for (std::size_t n = 1; n <= 12; ++n)
    for (std::size_t f = 1; f <= 10; ++f)
      out.require(base_clamp_family_size(n, f) == oracle::count_base_clamp_configs(n, f),
                  "closed form disagrees with the triple loop at N=" + std::to_string(n) +
                      ", F=" + std::to_string(f));
  return out;
}

// --------------------------------------------------------------------------
// 2. Pinned report-table arithmetic.

Outcome criterion_reference_table() {
  Outcome out;
  const fs::path path = fs::path(RAGUARD_DATA_DIR) / "reference_recall_table.jsonl";
  std::size_t rows = 0;
  for_each_jsonl(path, [&](std::size_t, const nlohmann::json& row) {
    ++rows;
    const double knowledge = row.at("knowledge_recall").get<double>();
    const double safety = row.at("safety_recall").get<double>();
    const double printed = row.at("combined_recall").get<double>();
    out.require(std::abs(combined_recall(knowledge, safety) - printed) <= 0.001,
                "combined mismatch in row " + row.at("paradigm").get<std::string>() + "/" +
                    row.at("policy").get<std::string>());
  });
  out.require(rows == 9, "reference fixture must hold 9 rows, found " + std::to_string(rows));
  return out;
}

// --------------------------------------------------------------------------
// 3. SafetyClamp quota guarantee on randomized corpora.

Outcome criterion_quota_guarantee() {
  Outcome out;
  std::mt19937 rng(20230817);
  const auto provider = std::make_shared<HashedBowProvider>(32);

  for (int round = 0; round < 200; ++round) {
    const std::size_t total = 20 + rng() % 181;  // 20..200 chunks
    const std::size_t n_know = 1 + rng() % (total - 1);
    const std::size_t n_safe = total - n_know;
    const auto know_chunks =
        fixtures::chunks_from_texts(fixtures::random_texts(rng, n_know), CorpusTag::knowledge, "k");
    const auto safe_chunks =
        fixtures::chunks_from_texts(fixtures::random_texts(rng, n_safe), CorpusTag::safety, "s");

    DenseRetriever know(std::make_shared<DenseIndex>(
        build_dense_index(know_chunks, provider, Metric::inner_product)));
    DenseRetriever safe(std::make_shared<DenseIndex>(
        build_dense_index(safe_chunks, provider, Metric::inner_product)));

    RetrievalConfig cfg;
    cfg.policy = Policy::safety_clamp;
    cfg.k_know = 1 + rng() % 4;
    cfg.k_safe = 1 + rng() % 4;
    cfg.top_k = cfg.k_know + cfg.k_safe + rng() % 6;
    cfg.k_fetch = cfg.top_k + 1 + rng() % 50;

    const auto ctx = safety_clamp(fixtures::random_text(rng, 40, 1, 5), know, safe, cfg);

    std::size_t knowledge_origin = 0;
    std::size_t safety_origin = 0;
    std::unordered_set<std::string> ids;
    for (const auto& p : ctx.assembled()) {
      out.require(ids.insert(p.chunk.chunk_id).second, "duplicate chunk_id in context");
      if (p.origin == Origin::knowledge) ++knowledge_origin;
      if (p.origin == Origin::safety) ++safety_origin;
    }
    if (n_know >= cfg.k_know)
      out.require(ctx.knowledge_slots.size() == cfg.k_know && knowledge_origin >= cfg.k_know,
                  "knowledge quota violated");
    if (n_safe >= cfg.k_safe)
      out.require(ctx.safety_slots.size() == cfg.k_safe && safety_origin >= cfg.k_safe,
                  "safety quota violated");
    if (total >= cfg.top_k) out.require(ctx.size() == cfg.top_k, "context size != K despite enough chunks");
  }
  return out;
}

// --------------------------------------------------------------------------
// 4. Oracle equivalence for every retrieval operation.

struct OracleCorpus {
  std::vector<Chunk> chunks;
  std::vector<std::string> texts;
  std::vector<std::string> ids;
};

OracleCorpus make_corpus(std::mt19937& rng, std::size_t n, CorpusTag tag, const std::string& prefix) {
  OracleCorpus corpus;
  corpus.texts = fixtures::random_texts(rng, n);
  corpus.chunks = fixtures::chunks_from_texts(corpus.texts, tag, prefix);
  for (const auto& chunk : corpus.chunks) corpus.ids.push_back(chunk.chunk_id);
  return corpus;
}

bool ranked_equal(const std::vector<ScoredPassage>& got, const std::vector<oracle::Ranked>& want) {
  if (got.size() != want.size()) return false;
  for (std::size_t i = 0; i < got.size(); ++i) {
    if (got[i].chunk.chunk_id != want[i].chunk_id) return false;
    if (std::abs(got[i].score - want[i].score) > 1e-9) return false;
  }
  return true;
}

Outcome criterion_oracle_equivalence() {
  Outcome out;
  std::mt19937 rng(424242);
  const auto provider = std::make_shared<HashedBowProvider>(24);
  const Metric metric = Metric::cosine;

  for (int round = 0; round < 50 && out.pass; ++round) {
    const std::size_t n_know = 2 + rng() % 9;   // know + safe <= 20
    const std::size_t n_safe = 2 + rng() % 9;
    const auto know = make_corpus(rng, n_know, CorpusTag::knowledge, "k");
    const auto safe = make_corpus(rng, n_safe, CorpusTag::safety, "s");

    std::vector<Chunk> merged_chunks = know.chunks;
    merged_chunks.insert(merged_chunks.end(), safe.chunks.begin(), safe.chunks.end());
    std::vector<std::string> merged_texts = know.texts;
    merged_texts.insert(merged_texts.end(), safe.texts.begin(), safe.texts.end());
    std::vector<std::string> merged_ids = know.ids;
    merged_ids.insert(merged_ids.end(), safe.ids.begin(), safe.ids.end());

    const std::string query = fixtures::random_text(rng, 40, 1, 5);
    const std::size_t k = 1 + rng() % 8;
    const HybridConfig hybrid_cfg;

    const auto sparse_know = std::make_shared<SparseIndex>(build_sparse_index(know.chunks));
    const auto sparse_safe = std::make_shared<SparseIndex>(build_sparse_index(safe.chunks));
    const auto sparse_merged = std::make_shared<SparseIndex>(build_sparse_index(merged_chunks));
    const auto dense_know = std::make_shared<DenseIndex>(build_dense_index(know.chunks, provider, metric));
    const auto dense_safe = std::make_shared<DenseIndex>(build_dense_index(safe.chunks, provider, metric));
    const auto dense_merged =
        std::make_shared<DenseIndex>(build_dense_index(merged_chunks, provider, metric));

    // retrieve + hybrid_retrieve on the merged corpus.
    const auto sparse_scores = oracle::bm25_scores(merged_texts, query);
    out.require(ranked_equal(retrieve(*sparse_merged, query, k),
                             oracle::rank(merged_ids, sparse_scores, k)),
                "sparse retrieve != oracle");
    const auto dense_scores = oracle::dense_scores(merged_texts, *provider, metric, query);
    out.require(ranked_equal(retrieve(*dense_merged, query, k),
                             oracle::rank(merged_ids, dense_scores, k)),
                "dense retrieve != oracle");
    const auto hybrid_scores =
        oracle::hybrid_scores(merged_texts, *provider, metric, query, hybrid_cfg.alpha);
    out.require(ranked_equal(hybrid_retrieve(*sparse_merged, *dense_merged, query, k, hybrid_cfg),
                             oracle::rank(merged_ids, hybrid_scores, k)),
                "hybrid retrieve != oracle");

    // Policies under every paradigm.
    struct ParadigmSetup {
      const char* name;
      std::unique_ptr<Retriever> know_r, safe_r, merged_r;
      std::vector<double> know_scores, safe_scores, merged_scores;
    };
    std::vector<ParadigmSetup> setups;
    {
      ParadigmSetup s;
      s.name = "sparse";
      s.know_r = std::make_unique<SparseRetriever>(sparse_know);
      s.safe_r = std::make_unique<SparseRetriever>(sparse_safe);
      s.merged_r = std::make_unique<SparseRetriever>(sparse_merged);
      s.know_scores = oracle::bm25_scores(know.texts, query);
      s.safe_scores = oracle::bm25_scores(safe.texts, query);
      s.merged_scores = sparse_scores;
      setups.push_back(std::move(s));
    }
    {
      ParadigmSetup s;
      s.name = "dense";
      s.know_r = std::make_unique<DenseRetriever>(dense_know);
      s.safe_r = std::make_unique<DenseRetriever>(dense_safe);
      s.merged_r = std::make_unique<DenseRetriever>(dense_merged);
      s.know_scores = oracle::dense_scores(know.texts, *provider, metric, query);
      s.safe_scores = oracle::dense_scores(safe.texts, *provider, metric, query);
      s.merged_scores = dense_scores;
      setups.push_back(std::move(s));
    }
    {
      ParadigmSetup s;
      s.name = "hybrid";
      s.know_r = std::make_unique<HybridRetriever>(sparse_know, dense_know, hybrid_cfg);
      s.safe_r = std::make_unique<HybridRetriever>(sparse_safe, dense_safe, hybrid_cfg);
      s.merged_r = std::make_unique<HybridRetriever>(sparse_merged, dense_merged, hybrid_cfg);
      s.know_scores = oracle::hybrid_scores(know.texts, *provider, metric, query, hybrid_cfg.alpha);
      s.safe_scores = oracle::hybrid_scores(safe.texts, *provider, metric, query, hybrid_cfg.alpha);
      s.merged_scores = hybrid_scores;
      setups.push_back(std::move(s));
    }

    for (const auto& s : setups) {
      const std::string tag = s.name;
      const auto base_ctx = base_rag(query, *s.merged_r, k);
      out.require(ranked_equal(base_ctx.wildcard_slots, oracle::rank(merged_ids, s.merged_scores, k)),
                  tag + " base_rag != oracle");

      const std::size_t k_know = 1 + rng() % 3;
      const std::size_t k_safe = 1 + rng() % 3;
      const auto rg_ctx = raguard::raguard(query, *s.know_r, *s.safe_r, k_know, k_safe);
      out.require(ranked_equal(rg_ctx.knowledge_slots, oracle::rank(know.ids, s.know_scores, k_know)),
                  tag + " raguard knowledge slice != oracle");
      out.require(ranked_equal(rg_ctx.safety_slots, oracle::rank(safe.ids, s.safe_scores, k_safe)),
                  tag + " raguard safety slice != oracle");

      const std::size_t k_fetch = 6 + rng() % 20;
      const auto candidates = clamp_candidates(query, *s.know_r, *s.safe_r, k_fetch);
      const auto pool =
          oracle::clamp_candidates(know.ids, s.know_scores, safe.ids, s.safe_scores, k_fetch);
      out.require(candidates.size() == pool.size(), tag + " clamp_candidates size != oracle");
      for (std::size_t i = 0; i < candidates.size() && out.pass; ++i) {
        out.require(candidates[i].chunk.chunk_id == pool[i].chunk_id &&
                        std::abs(candidates[i].score - pool[i].score) <= 1e-9 &&
                        candidates[i].origin == pool[i].origin,
                    tag + " clamp_candidates entry != oracle");
      }

      // wildcard_pool against the ordered set-difference oracle.
      std::set<std::string> selected;
      for (const auto& p : rg_ctx.knowledge_slots) selected.insert(p.chunk.chunk_id);
      for (const auto& p : rg_ctx.safety_slots) selected.insert(p.chunk.chunk_id);
      const auto survivors = wildcard_pool(candidates, rg_ctx.knowledge_slots, rg_ctx.safety_slots);
      const auto survivors_oracle = oracle::wildcard_pool(pool, selected);
      out.require(survivors.size() == survivors_oracle.size(), tag + " wildcard_pool size != oracle");
      for (std::size_t i = 0; i < survivors.size() && out.pass; ++i)
        out.require(survivors[i].chunk.chunk_id == survivors_oracle[i].chunk_id,
                    tag + " wildcard_pool order != oracle");

      // Full safety_clamp assembly.
      RetrievalConfig cfg;
      cfg.policy = Policy::safety_clamp;
      cfg.k_know = k_know;
      cfg.k_safe = k_safe;
      cfg.top_k = k_know + k_safe + rng() % 4;
      cfg.k_fetch = cfg.top_k + 1 + rng() % 20;
      const auto clamp_ctx = safety_clamp(query, *s.know_r, *s.safe_r, cfg);
      out.require(ranked_equal(clamp_ctx.knowledge_slots, oracle::rank(know.ids, s.know_scores, k_know)),
                  tag + " safety_clamp knowledge slice != oracle");
      out.require(ranked_equal(clamp_ctx.safety_slots, oracle::rank(safe.ids, s.safe_scores, k_safe)),
                  tag + " safety_clamp safety slice != oracle");
      const auto full_pool =
          oracle::clamp_candidates(know.ids, s.know_scores, safe.ids, s.safe_scores, *cfg.k_fetch);
      std::set<std::string> clamp_selected;
      for (const auto& p : clamp_ctx.knowledge_slots) clamp_selected.insert(p.chunk.chunk_id);
      for (const auto& p : clamp_ctx.safety_slots) clamp_selected.insert(p.chunk.chunk_id);
      const auto expect_wild = oracle::wildcard_pool(full_pool, clamp_selected);
      const std::size_t want =
          std::min(cfg.top_k - std::min(cfg.top_k, clamp_selected.size()), expect_wild.size());
      out.require(clamp_ctx.wildcard_slots.size() == want, tag + " safety_clamp wildcard count != oracle");
      for (std::size_t i = 0; i < clamp_ctx.wildcard_slots.size() && out.pass; ++i)
        out.require(clamp_ctx.wildcard_slots[i].chunk.chunk_id == expect_wild[i].chunk_id,
                    tag + " safety_clamp wildcard order != oracle");
    }
  }
  return out;
}

// --------------------------------------------------------------------------
// 5. Base-vs-RAGuard safety recall separation.

Outcome criterion_safety_separation() {
  Outcome out;
  const auto bench = fixtures::separation_bench(50);
  const ChunkingConfig chunking{512, 64};
  const auto know_chunks = chunk_corpus(bench.know_docs, chunking);
  const auto safe_chunks = chunk_corpus(bench.safe_docs, chunking);
  const auto handles = sparse_handles(know_chunks, safe_chunks);

  // Planted ranking gap: gold safety top-3 in the safety index, below 40 in
  // the merged index.
  for (const auto& query : bench.queries) {
    const std::string gold_chunk = query.gold_safety[0].doc_id + "#0";
    const auto safety_ranked = handles.safe->top_k(query.question, 3);
    bool in_top3 = false;
    for (const auto& p : safety_ranked) in_top3 |= (p.chunk.chunk_id == gold_chunk);
    out.require(in_top3, "gold safety chunk not in safety-index top-3 for " + query.query_id);

    const auto merged_ranked = handles.merged->top_k(query.question, 40);
    for (const auto& p : merged_ranked)
      out.require(p.chunk.chunk_id != gold_chunk,
                  "gold safety chunk inside merged top-40 for " + query.query_id);
  }

  RetrievalConfig base_cfg;
  base_cfg.policy = Policy::base;
  base_cfg.top_k = 10;
  const auto base_results = run_pipeline(bench.queries, base_cfg, nullptr, nullptr, handles.merged.get());
  const auto base_recall = recall_at_k(base_results);

  RetrievalConfig rg_cfg;
  rg_cfg.policy = Policy::raguard;
  rg_cfg.k_know = 7;
  rg_cfg.k_safe = 3;
  rg_cfg.top_k = 10;
  const auto rg_results = run_pipeline(bench.queries, rg_cfg, handles.know.get(), handles.safe.get(), nullptr);
  const auto rg_recall = recall_at_k(rg_results);

  std::ostringstream detail;
  detail << "base=(" << base_recall.knowledge << "," << base_recall.safety << ") raguard=("
         << rg_recall.knowledge << "," << rg_recall.safety << ")";
  out.detail = detail.str();

  out.require(base_recall.safety <= 0.1, "base safety recall > 0.1: " + detail.str());
  out.require(rg_recall.safety >= 0.9, "raguard safety recall < 0.9: " + detail.str());
  out.require(rg_recall.knowledge >= base_recall.knowledge - 0.4,
              "raguard knowledge recall dropped more than 40 pp: " + detail.str());
  return out;
}

// --------------------------------------------------------------------------
// 6. Compliance is at most at-least-one safety recall.

Outcome criterion_compliance_gap() {
  Outcome out;

  // Constructed 2-clause benchmark: second clause is never retrievable.
  const auto bench = fixtures::two_clause_bench(8);
  const ChunkingConfig chunking{512, 64};
  const auto handles =
      sparse_handles(chunk_corpus(bench.know_docs, chunking), chunk_corpus(bench.safe_docs, chunking));

  RetrievalConfig cfg;
  cfg.policy = Policy::raguard;
  cfg.k_know = 1;
  cfg.k_safe = 2;
  cfg.top_k = 3;
  const auto results = run_pipeline(bench.queries, cfg, handles.know.get(), handles.safe.get(), nullptr);
  const auto recall = recall_at_k(results);
  const double compliance = safety_compliance_recall(results, bench.queries);
  out.require(recall.safety == 1.0, "two-clause fixture: safety recall != 1.0");
  out.require(compliance == 0.0, "two-clause fixture: compliance != 0.0");

  // Randomized end-to-end fixtures where every query has at least one clause.
  std::mt19937 rng(1303);
  for (int round = 0; round < 20; ++round) {
    fixtures::Bench random_bench;
    const std::size_t n_know = 4 + rng() % 8;
    const std::size_t n_safe = 4 + rng() % 8;
    for (std::size_t i = 0; i < n_know; ++i)
      random_bench.know_docs.push_back(fixtures::make_doc(
          "k" + std::to_string(i), fixtures::random_text(rng, 25, 4, 10), CorpusTag::knowledge));
    for (std::size_t i = 0; i < n_safe; ++i)
      random_bench.safe_docs.push_back(fixtures::make_doc(
          "s" + std::to_string(i), fixtures::random_text(rng, 25, 4, 10), CorpusTag::safety));
    for (std::size_t q = 0; q < 6; ++q) {
      EvalQuery query;
      query.query_id = "q" + std::to_string(q);
      query.question = fixtures::random_text(rng, 25, 2, 5);
      query.gold_technical = fixtures::full_doc_gold(random_bench.know_docs[rng() % n_know],
                                                     GoldKind::technical);
      const std::size_t clause_count = 1 + rng() % 3;
      for (std::size_t c = 0; c < clause_count; ++c)
        query.gold_safety.push_back(fixtures::full_doc_gold(random_bench.safe_docs[rng() % n_safe],
                                                            GoldKind::safety_clause,
                                                            "c" + std::to_string(c)));
      random_bench.queries.push_back(std::move(query));
    }

    const auto rnd_handles = sparse_handles(chunk_corpus(random_bench.know_docs, chunking),
                                            chunk_corpus(random_bench.safe_docs, chunking));
    RetrievalConfig rnd_cfg;
    rnd_cfg.policy = Policy::safety_clamp;
    rnd_cfg.k_know = 1 + rng() % 2;
    rnd_cfg.k_safe = 1 + rng() % 2;
    rnd_cfg.top_k = rnd_cfg.k_know + rnd_cfg.k_safe + rng() % 3;
    rnd_cfg.k_fetch = rnd_cfg.top_k + 5;
    const auto rnd_results = run_pipeline(random_bench.queries, rnd_cfg, rnd_handles.know.get(),
                                          rnd_handles.safe.get(), rnd_handles.merged.get());
    out.require(safety_compliance_recall(rnd_results, random_bench.queries) <=
                    recall_at_k(rnd_results).safety + 1e-12,
                "compliance exceeded safety recall on a random fixture");
  }
  return out;
}

// --------------------------------------------------------------------------
// 7. Pinned BM25 values.

Outcome criterion_bm25_pinned() {
  Outcome out;
  const auto chunks =
      fixtures::chunks_from_texts({"the cat", "the dog", "cat cat"}, CorpusTag::knowledge);
  const auto index = build_sparse_index(chunks, {1.2, 0.75});

  out.require(std::abs(bm25_score(index, "cat", 0) - 0.47000362924573563) <= 1e-9,
              "score('the cat') off the pinned value");
  out.require(bm25_score(index, "cat", 1) == 0.0, "score('the dog') != 0");
  out.require(std::abs(bm25_score(index, "cat", 2) - 0.6462549902128865) <= 1e-9,
              "score('cat cat') off the pinned value");
  out.require(bm25_score(index, "cat", 2) > bm25_score(index, "cat", 0),
              "tf ordering violated");

  for (std::size_t i = 0; i < 3; ++i)
    out.require(bm25_score(index, "zebra quark", i) == 0.0, "zero law violated");
  return out;
}

// --------------------------------------------------------------------------
// 8. Hybrid endpoint laws.

Outcome criterion_hybrid_endpoints() {
  Outcome out;
  std::mt19937 rng(5150);
  const auto provider = std::make_shared<HashedBowProvider>(24);

  for (int round = 0; round < 50; ++round) {
    const auto texts = fixtures::random_texts(rng, 3 + rng() % 16);
    const auto chunks = fixtures::chunks_from_texts(texts, CorpusTag::knowledge);
    const auto sparse = std::make_shared<SparseIndex>(build_sparse_index(chunks));
    const auto dense =
        std::make_shared<DenseIndex>(build_dense_index(chunks, provider, Metric::cosine));
    const std::string query = fixtures::random_text(rng, 40, 1, 4);
    const std::size_t k = 1 + rng() % texts.size();

    HybridConfig cfg;
    cfg.alpha = 0.0;
    const auto alpha0 = hybrid_retrieve(*sparse, *dense, query, k, cfg);
    const auto sparse_rank = retrieve(*sparse, query, k);
    out.require(alpha0.size() == sparse_rank.size(), "alpha=0 size mismatch");
    for (std::size_t i = 0; i < alpha0.size(); ++i)
      out.require(alpha0[i].chunk.chunk_id == sparse_rank[i].chunk.chunk_id,
                  "alpha=0 ranking differs from sparse");

    cfg.alpha = 1.0;
    const auto alpha1 = hybrid_retrieve(*sparse, *dense, query, k, cfg);
    const auto dense_rank = retrieve(*dense, query, k);
    out.require(alpha1.size() == dense_rank.size(), "alpha=1 size mismatch");
    for (std::size_t i = 0; i < alpha1.size(); ++i)
      out.require(alpha1[i].chunk.chunk_id == dense_rank[i].chunk.chunk_id,
                  "alpha=1 ranking differs from dense");
  }
  return out;
}

// --------------------------------------------------------------------------
// 9. Bench harness statistics and utilization.

Outcome criterion_bench_harness() {
  Outcome out;

  // Exact utilization: 1024 estimated tokens over a 4096-token window.
  SlottedContext ctx;
  ctx.config.policy = Policy::base;
  ctx.config.top_k = 2;
  for (int i = 0; i < 2; ++i) {
    ScoredPassage p;
    p.chunk.chunk_id = "c" + std::to_string(i);
    p.chunk.doc_id = p.chunk.chunk_id;
    p.chunk.text = std::string(2048, 'x');  // 512 tokens each
    p.chunk.span = {0, 2048};
    ctx.wildcard_slots.push_back(p);
  }
  out.require(context_utilization(ctx, 4096).fraction == 0.25, "utilization 1024/4096 != 0.25 exactly");

  // CLI bench: 100 runs, stats must match the independent oracle.
  const fs::path dir = g_scratch / "bench";
  fs::create_directories(dir);
  const auto bench = fixtures::small_bench(10);
  fixtures::write_corpus_file(dir / "know.jsonl", bench.know_docs);
  fixtures::write_corpus_file(dir / "safe.jsonl", bench.safe_docs);
  fixtures::write_dataset_file(dir / "ds.jsonl", bench.queries);

  int rc = fixtures::run_cli(g_cli,
                             {"--output-dir", (dir / "idx").string(), "build-index", "--knowledge",
                              (dir / "know.jsonl").string(), "--safety", (dir / "safe.jsonl").string(),
                              "--chunk-size", "512", "--overlap", "64", "--dim", "32"},
                             dir / "build.log");
  out.require(rc == 0, "build-index failed, see " + (dir / "build.log").string());
  if (!out.pass) return out;

  rc = fixtures::run_cli(
      g_cli, {"--output-dir", (dir / "out").string(), "bench", "--index-dir", (dir / "idx").string(),
              "--dataset", (dir / "ds.jsonl").string(), "--runs", "100", "--top-k", "4", "--k-know", "2",
              "--k-safe", "2", "--k-fetch", "9"},
      dir / "bench.log");
  out.require(rc == 0, "bench failed, see " + (dir / "bench.log").string());
  if (!out.pass) return out;

  const auto report = nlohmann::json::parse(read_text_file(dir / "out" / "bench_report.json"));
  out.require(report.at("pipelines").size() == 9, "bench must report 9 pipelines");
  for (const auto& entry : report.at("pipelines")) {
    const auto samples = entry.at("samples").get<std::vector<double>>();
    out.require(samples.size() == 100, "bench sample count != 100");
    out.require(entry.at("report").at("run_count").get<std::size_t>() == 100, "run_count != 100");
    const auto [mean, stddev] = oracle::welford_stats(samples);
    out.require(std::abs(entry.at("report").at("latency_mean").get<double>() - mean) <= 1e-12,
                "latency mean differs from the oracle");
    out.require(std::abs(entry.at("report").at("latency_std").get<double>() - stddev) <= 1e-12,
                "latency std differs from the oracle");
    out.require(std::isfinite(stddev), "latency std not finite");
  }
  return out;
}

// --------------------------------------------------------------------------
// 10. Byte-identical eval and sweep outputs across runs and job counts.

Outcome criterion_determinism() {
  Outcome out;
  const fs::path dir = g_scratch / "determinism";
  fs::create_directories(dir);
  const auto bench = fixtures::small_bench(12);
  fixtures::write_corpus_file(dir / "know.jsonl", bench.know_docs);
  fixtures::write_corpus_file(dir / "safe.jsonl", bench.safe_docs);
  fixtures::write_dataset_file(dir / "ds.jsonl", bench.queries);

  int rc = fixtures::run_cli(g_cli,
                             {"--output-dir", (dir / "idx").string(), "build-index", "--knowledge",
                              (dir / "know.jsonl").string(), "--safety", (dir / "safe.jsonl").string(),
                              "--chunk-size", "256", "--overlap", "32", "--dim", "32"},
                             dir / "build.log");
  out.require(rc == 0, "build-index failed");
  if (!out.pass) return out;

  const auto run_eval = [&](const std::string& name, const std::string& jobs) {
    return fixtures::run_cli(
        g_cli, {"--output-dir", (dir / name).string(), "--jobs", jobs, "eval", "--index-dir",
                (dir / "idx").string(), "--dataset", (dir / "ds.jsonl").string(), "--top-k", "4",
                "--k-know", "2", "--k-safe", "2", "--k-fetch", "9"},
        dir / (name + ".log"));
  };
  out.require(run_eval("eval_a", "1") == 0, "first eval run failed");
  out.require(run_eval("eval_b", "4") == 0, "second eval run failed");
  if (!out.pass) return out;

  for (const char* paradigm : {"sparse", "dense", "hybrid"}) {
    for (const char* policy : {"base", "raguard", "safety_clamp"}) {
      const std::string name = std::string("eval_") + paradigm + "_" + policy + ".json";
      out.require(fixtures::without_timestamp(dir / "eval_a" / name) ==
                      fixtures::without_timestamp(dir / "eval_b" / name),
                  "eval outputs differ across job counts: " + name);
    }
  }
  out.require(fixtures::slurp(dir / "eval_a" / "eval_summary.txt") ==
                  fixtures::slurp(dir / "eval_b" / "eval_summary.txt"),
              "eval summaries differ");

  const auto run_sweep_cmd = [&](const std::string& name, const std::string& jobs) {
    return fixtures::run_cli(
        g_cli, {"--output-dir", (dir / name).string(), "--jobs", jobs, "sweep", "--index-dir",
                (dir / "idx").string(), "--dataset", (dir / "ds.jsonl").string(), "--k-max", "4",
                "--fetch", "25,50"},
        dir / (name + ".log"));
  };
  out.require(run_sweep_cmd("sweep_a", "1") == 0, "first sweep run failed");
  out.require(run_sweep_cmd("sweep_b", "4") == 0, "second sweep run failed");
  if (!out.pass) return out;

  out.require(fixtures::slurp(dir / "sweep_a" / "sweep_results.jsonl") ==
                  fixtures::slurp(dir / "sweep_b" / "sweep_results.jsonl"),
              "sweep result rows differ across job counts");
  out.require(fixtures::without_timestamp(dir / "sweep_a" / "sweep_best.json") ==
                  fixtures::without_timestamp(dir / "sweep_b" / "sweep_best.json"),
              "sweep best configs differ");
  out.require(fixtures::slurp(dir / "sweep_a" / "sweep_summary.txt") ==
                  fixtures::slurp(dir / "sweep_b" / "sweep_summary.txt"),
              "sweep summaries differ");
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 2) {
    std::fprintf(stderr, "usage: %s <path-to-cli-binary>\n", argv[0]);
    return 2;
  }
  g_cli = argv[1];
  g_scratch = fs::path("acceptance_scratch");
  std::error_code ec;
  fs::remove_all(g_scratch, ec);
  fs::create_directories(g_scratch);

  struct Criterion {
    const char* name;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria = {
      {"config enumeration count (1,330 and the triple-loop oracle)", criterion_config_count},
      {"reference table arithmetic within 0.001", criterion_reference_table},
      {"safety_clamp quota guarantee on 200 random corpora", criterion_quota_guarantee},
      {"oracle equivalence for all retrieval operations", criterion_oracle_equivalence},
      {"base vs raguard safety-recall separation", criterion_safety_separation},
      {"compliance bounded by at-least-one safety recall", criterion_compliance_gap},
      {"bm25 pinned values and zero law", criterion_bm25_pinned},
      {"hybrid alpha endpoint laws on 50 random fixtures", criterion_hybrid_endpoints},
      {"bench statistics vs independent oracle, exact utilization", criterion_bench_harness},
      {"byte-identical eval/sweep outputs at any job count", criterion_determinism},
  };

  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto start = std::chrono::steady_clock::now();
    Outcome outcome;
    try {
      outcome = criteria[i].run();
    } catch (const std::exception& e) {
      outcome.pass = false;
      outcome.detail = std::string("exception: ") + e.what();
    }
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("%s [%zu] %s (%.2fs)%s%s\n", outcome.pass ? "PASS" : "FAIL", i + 1, criteria[i].name,
                seconds, outcome.detail.empty() ? "" : " -- ", outcome.detail.c_str());
    if (!outcome.pass) ++failures;
  }
  return failures == 0 ? 0 : 1;
}
