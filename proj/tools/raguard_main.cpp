// Command-line front end: build-index, query, eval, sweep, bench.
#include <algorithm>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "raguard/config_file.hpp"
#include "raguard/corpus.hpp"
#include "raguard/errors.hpp"
#include "raguard/jsonl.hpp"
#include "raguard/llm_client.hpp"
#include "raguard/manifest.hpp"
#include "raguard/metrics.hpp"
#include "raguard/policy.hpp"
#include "raguard/prompt.hpp"
#include "raguard/serialize.hpp"
#include "raguard/snapshot.hpp"
#include "raguard/sweep.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr int kReportFormatVersion = 1;

struct CommonOpts {
  std::string config_path;
  raguard::ConfigFile config;
  unsigned jobs = 1;
  std::uint64_t seed = 0;
  std::string output_dir = ".";
};

struct PipelineOpts {
  std::size_t top_k = 10;
  std::size_t k_know = 5;
  std::size_t k_safe = 5;
  std::size_t k_fetch = 25;
  double alpha = 0.5;
  std::string normalization = "min_max";
  double tau = raguard::kDefaultCoverageTau;
  std::size_t window = raguard::kDefaultContextWindow;
};

// Flag > config file > default.
template <typename T, typename Get>
void fall_back(const CLI::Option* opt, T& value, Get&& from_config) {
  if (opt != nullptr && opt->count() > 0) return;
  if (auto v = from_config()) value = static_cast<T>(*v);
}

void apply_common_config(CommonOpts& common, const CLI::Option* jobs_opt, const CLI::Option* seed_opt) {
  if (!common.config_path.empty()) common.config = raguard::ConfigFile::parse_file(common.config_path);
  fall_back(jobs_opt, common.jobs, [&] { return common.config.get_size("jobs"); });
  fall_back(seed_opt, common.seed, [&] { return common.config.get_u64("seed"); });
}

struct PipelineFlagSet {
  CLI::Option* top_k = nullptr;
  CLI::Option* k_know = nullptr;
  CLI::Option* k_safe = nullptr;
  CLI::Option* k_fetch = nullptr;
  CLI::Option* alpha = nullptr;
  CLI::Option* normalization = nullptr;
  CLI::Option* tau = nullptr;
  CLI::Option* window = nullptr;
};

PipelineFlagSet add_pipeline_flags(CLI::App* cmd, PipelineOpts& opts) {
  PipelineFlagSet set;
  set.top_k = cmd->add_option("--top-k", opts.top_k, "K: total passages in the prompt context");
  set.k_know = cmd->add_option("--k-know", opts.k_know, "knowledge quota");
  set.k_safe = cmd->add_option("--k-safe", opts.k_safe, "safety quota");
  set.k_fetch = cmd->add_option("--k-fetch", opts.k_fetch, "over-retrieval pool size (safety_clamp)");
  set.alpha = cmd->add_option("--alpha", opts.alpha, "hybrid weight on the dense score");
  set.normalization =
      cmd->add_option("--normalization", opts.normalization, "hybrid score normalization: min_max|none");
  set.tau = cmd->add_option("--tau", opts.tau, "gold span coverage threshold");
  set.window = cmd->add_option("--window", opts.window, "context window size in tokens");
  return set;
}

void apply_pipeline_config(const raguard::ConfigFile& config, PipelineOpts& opts,
                           const PipelineFlagSet& set) {
  fall_back(set.top_k, opts.top_k, [&] { return config.get_size("top_k"); });
  fall_back(set.k_know, opts.k_know, [&] { return config.get_size("k_know"); });
  fall_back(set.k_safe, opts.k_safe, [&] { return config.get_size("k_safe"); });
  fall_back(set.k_fetch, opts.k_fetch, [&] { return config.get_size("k_fetch"); });
  fall_back(set.alpha, opts.alpha, [&] { return config.get_double("alpha"); });
  fall_back(set.normalization, opts.normalization, [&] { return config.get("normalization"); });
  fall_back(set.tau, opts.tau, [&] { return config.get_double("tau"); });
  fall_back(set.window, opts.window, [&] { return config.get_size("window"); });
}

raguard::HybridConfig hybrid_config(const PipelineOpts& opts) {
  raguard::HybridConfig cfg;
  cfg.alpha = opts.alpha;
  if (opts.normalization == "min_max")
    cfg.normalization = raguard::HybridConfig::Normalization::min_max;
  else if (opts.normalization == "none")
    cfg.normalization = raguard::HybridConfig::Normalization::none;
  else
    throw raguard::ConfigurationError("unknown normalization: '" + opts.normalization + "'");
  cfg.validate();
  return cfg;
}

std::vector<raguard::Paradigm> parse_paradigms(const std::string& csv) {
  if (csv == "all") return {raguard::Paradigm::sparse, raguard::Paradigm::dense, raguard::Paradigm::hybrid};
  std::vector<raguard::Paradigm> out;
  std::stringstream in(csv);
  std::string item;
  while (std::getline(in, item, ',')) out.push_back(raguard::parse_paradigm(item));
  if (out.empty()) throw raguard::ConfigurationError("no paradigms selected");
  return out;
}

std::vector<raguard::Policy> parse_policies(const std::string& csv) {
  if (csv == "all") return {raguard::Policy::base, raguard::Policy::raguard, raguard::Policy::safety_clamp};
  std::vector<raguard::Policy> out;
  std::stringstream in(csv);
  std::string item;
  while (std::getline(in, item, ',')) out.push_back(raguard::parse_policy(item));
  if (out.empty()) throw raguard::ConfigurationError("no policies selected");
  return out;
}

std::vector<std::size_t> parse_size_csv(const std::string& csv, const char* what) {
  std::vector<std::size_t> out;
  std::stringstream in(csv);
  std::string item;
  while (std::getline(in, item, ',')) {
    try {
      out.push_back(static_cast<std::size_t>(std::stoull(item)));
    } catch (const std::exception&) {
      throw raguard::ConfigurationError(std::string(what) + ": not an integer: '" + item + "'");
    }
  }
  return out;
}

raguard::RetrievalConfig make_config(raguard::Policy policy, raguard::Paradigm paradigm,
                                     const PipelineOpts& opts) {
  raguard::RetrievalConfig cfg;
  cfg.policy = policy;
  cfg.paradigm = paradigm;
  switch (policy) {
    case raguard::Policy::base:
      cfg.top_k = opts.top_k;
      break;
    case raguard::Policy::raguard:
      cfg.k_know = opts.k_know;
      cfg.k_safe = opts.k_safe;
      cfg.top_k = opts.k_know + opts.k_safe;
      break;
    case raguard::Policy::safety_clamp:
      cfg.top_k = opts.top_k;
      cfg.k_know = opts.k_know;
      cfg.k_safe = opts.k_safe;
      cfg.k_fetch = opts.k_fetch;
      break;
  }
  cfg.validate();
  return cfg;
}

// Provider reconstruction at load time: hashed ids rebuild directly, remote
// ids need embed_base_url (and optionally embed_timeout, api_key_env) from
// the config file.
raguard::ProviderFactory cli_provider_factory(const raguard::ConfigFile& config) {
  return [config](const std::string& id) -> std::shared_ptr<const raguard::EmbeddingProvider> {
    if (auto hashed = raguard::hashed_provider_from_id(id)) return hashed;
    if (id.rfind("remote:", 0) == 0) {
      raguard::RemoteProviderConfig remote;
      const auto url = config.get("embed_base_url");
      if (!url)
        throw raguard::ConfigurationError("snapshot was built with a remote provider; set embed_base_url");
      remote.base_url = *url;
      const auto dim_pos = id.rfind(":dim=");
      if (dim_pos == std::string::npos)
        throw raguard::ConfigurationError("remote provider id lacks a dimension: '" + id + "'");
      remote.dimension = static_cast<std::size_t>(std::stoull(id.substr(dim_pos + 5)));
      if (auto timeout = config.get_double("embed_timeout")) remote.timeout_seconds = *timeout;
      if (auto env = config.get("api_key_env")) remote.api_key_env = *env;
      return std::make_shared<raguard::RemoteEmbeddingProvider>(remote);
    }
    throw raguard::ConfigurationError("no provider available for id '" + id + "'");
  };
}

struct LoadedIndexes {
  raguard::IndexBundle bundle;
  std::map<std::string, std::string> fingerprints;
  raguard::ChunkingConfig chunking;
};

const char* snapshot_name(raguard::Origin origin) {
  switch (origin) {
    case raguard::Origin::knowledge: return "index_knowledge.json";
    case raguard::Origin::safety: return "index_safety.json";
    case raguard::Origin::merged: return "index_merged.json";
  }
  return "index_merged.json";
}

LoadedIndexes load_indexes(const fs::path& index_dir, std::span<const raguard::Paradigm> paradigms,
                           const raguard::HybridConfig& hybrid, const raguard::ConfigFile& config) {
  bool want_sparse = false;
  bool want_dense = false;
  for (raguard::Paradigm p : paradigms) {
    want_sparse |= (p == raguard::Paradigm::sparse || p == raguard::Paradigm::hybrid);
    want_dense |= (p == raguard::Paradigm::dense || p == raguard::Paradigm::hybrid);
  }

  LoadedIndexes loaded;
  loaded.bundle.hybrid = hybrid;
  const auto factory = cli_provider_factory(config);

  for (raguard::Origin origin :
       {raguard::Origin::knowledge, raguard::Origin::safety, raguard::Origin::merged}) {
    const fs::path path = index_dir / snapshot_name(origin);
    if (!fs::exists(path))
      throw raguard::IoError("missing index snapshot: " + path.string() + " (run build-index first)");
    const auto snapshot = raguard::load_snapshot(path);
    loaded.fingerprints[path.string()] = raguard::file_fingerprint(path);
    loaded.chunking = snapshot.chunking;

    std::shared_ptr<const raguard::SparseIndex> sparse;
    std::shared_ptr<const raguard::DenseIndex> dense;
    if (want_sparse)
      sparse = std::make_shared<raguard::SparseIndex>(raguard::sparse_from_snapshot(snapshot));
    if (want_dense) {
      if (!snapshot.dense)
        throw raguard::ConfigurationError(path.string() +
                                          " has no dense vectors; rebuild with --paradigm dense|hybrid|all");
      dense = std::make_shared<raguard::DenseIndex>(raguard::dense_from_snapshot(snapshot, factory));
    }
    switch (origin) {
      case raguard::Origin::knowledge:
        loaded.bundle.sparse_know = sparse;
        loaded.bundle.dense_know = dense;
        break;
      case raguard::Origin::safety:
        loaded.bundle.sparse_safe = sparse;
        loaded.bundle.dense_safe = dense;
        break;
      case raguard::Origin::merged:
        loaded.bundle.sparse_merged = sparse;
        loaded.bundle.dense_merged = dense;
        break;
    }
  }
  return loaded;
}

raguard::RunManifest make_manifest(const std::string& command,
                                   std::map<std::string, std::string> config_snapshot,
                                   std::map<std::string, std::string> fingerprints, std::uint64_t seed) {
  raguard::RunManifest manifest;
  manifest.command = command;
  manifest.config = std::move(config_snapshot);
  manifest.fingerprints = std::move(fingerprints);
  manifest.seed = seed;
  manifest.timestamp = raguard::utc_timestamp_now();
  return manifest;
}

std::map<std::string, std::string> pipeline_config_snapshot(const PipelineOpts& opts) {
  return {{"top_k", std::to_string(opts.top_k)},
          {"k_know", std::to_string(opts.k_know)},
          {"k_safe", std::to_string(opts.k_safe)},
          {"k_fetch", std::to_string(opts.k_fetch)},
          {"alpha", std::to_string(opts.alpha)},
          {"normalization", opts.normalization},
          {"tau", std::to_string(opts.tau)},
          {"window", std::to_string(opts.window)}};
}

std::string fixed3(double value) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.3f", value);
  return std::string(buf);
}

// Table-style summary: paradigm, policy, top/know/safe/fetch, then recalls.
std::string summary_table(const std::vector<raguard::SweepResult>& rows) {
  std::ostringstream out;
  char line[256];
  std::snprintf(line, sizeof(line), "%-8s %-13s %5s %5s %5s %6s %10s %8s %9s\n", "RAG", "Variant", "top",
                "know", "safe", "fetch", "Knowledge", "Safety", "Combined");
  out << line;
  for (const auto& row : rows) {
    const auto& cfg = row.config;
    const bool quotas = cfg.policy != raguard::Policy::base;
    const std::string know_cell = quotas ? std::to_string(cfg.k_know) : "-";
    const std::string safe_cell = quotas ? std::to_string(cfg.k_safe) : "-";
    const std::string fetch_cell = cfg.k_fetch ? std::to_string(*cfg.k_fetch) : "-";
    std::snprintf(line, sizeof(line), "%-8s %-13s %5zu %5s %5s %6s %10s %8s %9s\n",
                  std::string(raguard::to_string(cfg.paradigm)).c_str(),
                  std::string(raguard::to_string(cfg.policy)).c_str(), cfg.top_k, know_cell.c_str(),
                  safe_cell.c_str(), fetch_cell.c_str(), fixed3(row.knowledge_recall).c_str(),
                  fixed3(row.safety_recall).c_str(), fixed3(row.combined_recall).c_str());
    out << line;
  }
  return out.str();
}

void write_json_file(const fs::path& path, const json& j) {
  raguard::write_text_file(path, j.dump(2) + "\n");
}

// ---------------------------------------------------------------------------
// build-index

struct BuildOpts {
  std::string knowledge_path;
  std::string safety_path;
  std::string paradigm = "all";
  std::size_t chunk_size = 512;
  std::size_t overlap = 128;
  double k1 = 1.2;
  double b = 0.75;
  std::string provider = "hashed";
  std::size_t dim = 64;
  std::string metric = "cosine";
};

int cmd_build_index(const CommonOpts& common, const BuildOpts& opts) {
  const raguard::ChunkingConfig chunking{opts.chunk_size, opts.overlap};
  chunking.validate();
  const raguard::Bm25Params bm25{opts.k1, opts.b};
  bm25.validate();

  const auto know_docs = raguard::load_corpus(opts.knowledge_path, raguard::CorpusTag::knowledge);
  const auto safe_docs = raguard::load_corpus(opts.safety_path, raguard::CorpusTag::safety);
  raguard::require_disjoint_ids(know_docs, safe_docs);

  const auto know_chunks = raguard::chunk_corpus(know_docs, chunking);
  const auto safe_chunks = raguard::chunk_corpus(safe_docs, chunking);
  std::vector<raguard::Chunk> merged_chunks = know_chunks;
  merged_chunks.insert(merged_chunks.end(), safe_chunks.begin(), safe_chunks.end());

  const bool want_dense = opts.paradigm == "dense" || opts.paradigm == "hybrid" || opts.paradigm == "all";

  std::shared_ptr<const raguard::EmbeddingProvider> provider;
  if (want_dense) {
    if (opts.provider == "hashed") {
      provider = std::make_shared<raguard::HashedBowProvider>(opts.dim, common.seed);
    } else if (opts.provider == "remote") {
      raguard::RemoteProviderConfig remote;
      const auto url = common.config.get("embed_base_url");
      if (!url) throw raguard::ConfigurationError("remote provider needs embed_base_url in the config");
      remote.base_url = *url;
      remote.dimension = opts.dim;
      if (auto timeout = common.config.get_double("embed_timeout")) remote.timeout_seconds = *timeout;
      if (auto env = common.config.get("api_key_env")) remote.api_key_env = *env;
      provider = std::make_shared<raguard::RemoteEmbeddingProvider>(remote);
    } else {
      throw raguard::ConfigurationError("unknown provider: '" + opts.provider + "'");
    }
  }
  const raguard::Metric metric = raguard::parse_metric(opts.metric);

  fs::create_directories(common.output_dir);
  const auto emit = [&](raguard::Origin origin, const std::vector<raguard::Chunk>& chunks) {
    std::optional<raguard::DenseIndex> dense;
    if (want_dense) dense = raguard::build_dense_index(chunks, provider, metric);
    const auto snapshot = raguard::make_snapshot(chunking, bm25, chunks, dense ? &*dense : nullptr);
    const fs::path path = fs::path(common.output_dir) / snapshot_name(origin);
    raguard::save_snapshot(snapshot, path);
    std::cout << path.string() << ": " << chunks.size() << " chunks, fingerprint "
              << raguard::file_fingerprint(path) << "\n";
  };
  emit(raguard::Origin::knowledge, know_chunks);
  emit(raguard::Origin::safety, safe_chunks);
  emit(raguard::Origin::merged, merged_chunks);

  raguard::RunManifest manifest = make_manifest(
      "build-index",
      {{"chunk_size", std::to_string(opts.chunk_size)},
       {"overlap", std::to_string(opts.overlap)},
       {"k1", std::to_string(opts.k1)},
       {"b", std::to_string(opts.b)},
       {"paradigm", opts.paradigm},
       {"provider", want_dense ? provider->id() : std::string("none")},
       {"metric", opts.metric}},
      {{opts.knowledge_path, raguard::file_fingerprint(opts.knowledge_path)},
       {opts.safety_path, raguard::file_fingerprint(opts.safety_path)}},
      common.seed);
  json manifest_json;
  manifest_json["format_version"] = kReportFormatVersion;
  manifest_json["manifest"] = manifest;
  write_json_file(fs::path(common.output_dir) / "build_manifest.json", manifest_json);
  return 0;
}

// ---------------------------------------------------------------------------
// query

struct QueryOpts {
  std::string index_dir;
  std::string question;
  std::string policy = "raguard";
  std::string paradigm = "sparse";
  std::string template_path;
  bool generate = false;
};

int cmd_query(const CommonOpts& common, const QueryOpts& opts, const PipelineOpts& pipeline) {
  const auto paradigm = raguard::parse_paradigm(opts.paradigm);
  const auto policy = raguard::parse_policy(opts.policy);
  const std::vector<raguard::Paradigm> paradigms = {paradigm};
  const auto loaded = load_indexes(opts.index_dir, paradigms, hybrid_config(pipeline), common.config);
  const auto retrievers = raguard::make_retrievers(loaded.bundle, paradigm);

  const auto cfg = make_config(policy, paradigm, pipeline);
  const auto ctx = raguard::run_policy(cfg, opts.question, retrievers.know.get(), retrievers.safe.get(),
                                       retrievers.merged.get());

  const auto print_slot = [](const char* label, const std::vector<raguard::ScoredPassage>& slots) {
    for (const auto& p : slots) {
      std::printf("[%s %zu] %s origin=%s score=%.6f doc=%s span=[%zu,%zu)\n", label, p.rank,
                  p.chunk.chunk_id.c_str(), std::string(raguard::to_string(p.origin)).c_str(), p.score,
                  p.chunk.doc_id.c_str(), p.chunk.span.start, p.chunk.span.end);
      std::printf("    %s\n", p.chunk.text.c_str());
    }
  };
  print_slot("knowledge", ctx.knowledge_slots);
  print_slot("safety", ctx.safety_slots);
  print_slot("wildcard", ctx.wildcard_slots);

  if (ctx.underfilled())
    std::printf("warning: context underfilled: %zu of %zu slots\n", ctx.size(), cfg.top_k);

  const auto util = raguard::context_utilization(ctx, pipeline.window);
  std::printf("utilization: %.4f of a %zu-token window%s\n", util.fraction, pipeline.window,
              util.over_budget ? " (over budget)" : "");

  const auto prompt =
      opts.template_path.empty()
          ? raguard::render_prompt(ctx, opts.question)
          : raguard::render_prompt(ctx, opts.question, raguard::read_text_file(opts.template_path));
  std::printf("--- prompt (%zu tokens estimated) ---\n%s\n", prompt.token_estimate, prompt.text.c_str());

  if (opts.generate) {
    raguard::EndpointConfig endpoint;
    endpoint.base_url = common.config.get("base_url").value_or("");
    endpoint.model_name = common.config.get("model_name").value_or("default");
    if (auto timeout = common.config.get_double("timeout")) endpoint.timeout_seconds = *timeout;
    if (auto tokens = common.config.get_size("max_tokens")) endpoint.max_tokens = *tokens;
    if (auto env = common.config.get("api_key_env")) endpoint.api_key_env = *env;

    const auto answer = raguard::generate(prompt, endpoint);
    std::printf("--- completion%s ---\n", answer.partial ? " (partial parse)" : "");
    std::printf("procedure: %s\n", answer.procedure.c_str());
    std::printf("safety considerations: %s\n", answer.safety_considerations.c_str());
  }
  return 0;
}

// ---------------------------------------------------------------------------
// eval

struct EvalOpts {
  std::string index_dir;
  std::string dataset_path;
  std::string paradigms = "all";
  std::string policies = "all";
};

json query_detail(const raguard::QueryResult& result) {
  json slots;
  const auto ids = [](const std::vector<raguard::ScoredPassage>& slot) {
    json out = json::array();
    for (const auto& p : slot) out.push_back(p.chunk.chunk_id);
    return out;
  };
  slots["knowledge"] = ids(result.context.knowledge_slots);
  slots["safety"] = ids(result.context.safety_slots);
  slots["wildcard"] = ids(result.context.wildcard_slots);

  return json{{"query_id", result.query_id},
              {"knowledge_hit", result.knowledge_hit},
              {"safety_hit", result.safety_hit},
              {"clauses_covered", result.clauses_covered},
              {"utilization", result.utilization},
              {"slots", slots}};
}

std::vector<raguard::EvalQuery> load_dataset_for(const LoadedIndexes& loaded, const fs::path& path) {
  // Reconstruct document lengths from the merged snapshot's chunks.
  raguard::DocLengths lengths;
  const auto& sparse = loaded.bundle.sparse_merged;
  const auto& dense = loaded.bundle.dense_merged;
  const std::vector<raguard::Chunk>& chunks = sparse ? sparse->chunks : dense->chunks;
  for (const auto& chunk : chunks) {
    auto& len = lengths[chunk.doc_id];
    len = std::max(len, chunk.span.end);
  }
  return raguard::load_dataset(path, lengths);
}

int cmd_eval(const CommonOpts& common, const EvalOpts& opts, const PipelineOpts& pipeline) {
  const auto paradigms = parse_paradigms(opts.paradigms);
  const auto policies = parse_policies(opts.policies);
  const auto loaded = load_indexes(opts.index_dir, paradigms, hybrid_config(pipeline), common.config);
  const auto dataset = load_dataset_for(loaded, opts.dataset_path);

  auto fingerprints = loaded.fingerprints;
  fingerprints[opts.dataset_path] = raguard::file_fingerprint(opts.dataset_path);

  fs::create_directories(common.output_dir);
  std::vector<raguard::SweepResult> summary_rows;
  for (const auto paradigm : paradigms) {
    const auto retrievers = raguard::make_retrievers(loaded.bundle, paradigm);
    for (const auto policy : policies) {
      const auto cfg = make_config(policy, paradigm, pipeline);
      const auto results =
          raguard::run_pipeline(dataset, cfg, retrievers.know.get(), retrievers.safe.get(),
                                retrievers.merged.get(), pipeline.tau, pipeline.window, common.jobs);
      const auto report = raguard::make_report(raguard::pipeline_id(paradigm, policy), results, dataset);

      json detail;
      detail["format_version"] = kReportFormatVersion;
      detail["manifest"] =
          make_manifest("eval", pipeline_config_snapshot(pipeline), fingerprints, common.seed);
      detail["config"] = cfg;
      detail["report"] = report;
      detail["queries"] = json::array();
      for (const auto& result : results) detail["queries"].push_back(query_detail(result));

      const std::string name = "eval_" + std::string(raguard::to_string(paradigm)) + "_" +
                               std::string(raguard::to_string(policy)) + ".json";
      write_json_file(fs::path(common.output_dir) / name, detail);

      raguard::SweepResult row;
      row.config = cfg;
      row.knowledge_recall = report.knowledge_recall;
      row.safety_recall = report.safety_recall;
      row.combined_recall = report.combined_recall;
      summary_rows.push_back(row);

      std::cout << report.pipeline_id << ": knowledge=" << fixed3(report.knowledge_recall)
                << " safety=" << fixed3(report.safety_recall)
                << " combined=" << fixed3(report.combined_recall)
                << " compliance=" << fixed3(report.compliance_recall) << "\n";
    }
  }

  raguard::write_text_file(fs::path(common.output_dir) / "eval_summary.txt", summary_table(summary_rows));
  return 0;
}

// ---------------------------------------------------------------------------
// sweep

struct SweepOpts {
  std::string index_dir;
  std::string dataset_path;
  std::size_t k_max = 10;
  std::string fetch = "25,50,75,100,125,150,175,200";
  std::string paradigms = "all";
  std::string policies = "all";
};

int cmd_sweep(const CommonOpts& common, const SweepOpts& opts, const PipelineOpts& pipeline) {
  raguard::SweepGrid grid;
  for (std::size_t k = 1; k <= opts.k_max; ++k) grid.k_values.push_back(k);
  grid.fetch_values = parse_size_csv(opts.fetch, "--fetch");
  grid.paradigms = parse_paradigms(opts.paradigms);
  grid.policies = parse_policies(opts.policies);
  grid.validate();

  const auto loaded = load_indexes(opts.index_dir, grid.paradigms, hybrid_config(pipeline), common.config);
  const auto dataset = load_dataset_for(loaded, opts.dataset_path);
  auto fingerprints = loaded.fingerprints;
  fingerprints[opts.dataset_path] = raguard::file_fingerprint(opts.dataset_path);

  const auto results =
      raguard::run_sweep(grid, dataset, loaded.bundle, pipeline.tau, pipeline.window, common.jobs);
  const auto best = raguard::select_best(results);

  fs::create_directories(common.output_dir);
  std::ostringstream rows;
  for (const auto& result : results) rows << json(result).dump() << "\n";
  raguard::write_text_file(fs::path(common.output_dir) / "sweep_results.jsonl", rows.str());

  json best_json;
  best_json["format_version"] = kReportFormatVersion;
  best_json["manifest"] = make_manifest(
      "sweep",
      {{"k_max", std::to_string(opts.k_max)},
       {"fetch", opts.fetch},
       {"paradigms", opts.paradigms},
       {"policies", opts.policies},
       {"tau", std::to_string(pipeline.tau)},
       {"window", std::to_string(pipeline.window)},
       {"alpha", std::to_string(pipeline.alpha)}},
      fingerprints, common.seed);
  best_json["best"] = best;
  write_json_file(fs::path(common.output_dir) / "sweep_best.json", best_json);

  // Config-family counts for the enumerated grid.
  std::size_t base_count = 0, raguard_count = 0, clamp_count = 0;
  for (const auto& cfg : raguard::enumerate_configs(grid)) {
    if (cfg.policy == raguard::Policy::base) ++base_count;
    if (cfg.policy == raguard::Policy::raguard) ++raguard_count;
    if (cfg.policy == raguard::Policy::safety_clamp) ++clamp_count;
  }
  std::ostringstream summary;
  summary << "configurations: base=" << base_count << " safety_clamp=" << clamp_count
          << " (base+clamp family=" << base_count + clamp_count << ") raguard=" << raguard_count
          << "; rows=" << results.size() << " over " << grid.paradigms.size() << " paradigm(s)\n\n";
  summary << "best configurations by combined recall:\n" << summary_table(best);
  raguard::write_text_file(fs::path(common.output_dir) / "sweep_summary.txt", summary.str());
  std::cout << summary.str();
  return 0;
}

// ---------------------------------------------------------------------------
// bench

struct BenchOpts {
  std::string index_dir;
  std::string dataset_path;
  std::string paradigms = "all";
  std::string policies = "all";
  std::size_t runs = 100;
};

int cmd_bench(const CommonOpts& common, const BenchOpts& opts, const PipelineOpts& pipeline) {
  if (opts.runs < 2) throw raguard::ValidationError("bench needs at least 2 runs");

  const auto paradigms = parse_paradigms(opts.paradigms);
  const auto policies = parse_policies(opts.policies);
  const auto loaded = load_indexes(opts.index_dir, paradigms, hybrid_config(pipeline), common.config);
  const auto dataset = load_dataset_for(loaded, opts.dataset_path);
  auto fingerprints = loaded.fingerprints;
  fingerprints[opts.dataset_path] = raguard::file_fingerprint(opts.dataset_path);

  auto config_snapshot = pipeline_config_snapshot(pipeline);
  config_snapshot["runs"] = std::to_string(opts.runs);

  json report_json;
  report_json["format_version"] = kReportFormatVersion;
  report_json["manifest"] = make_manifest("bench", config_snapshot, fingerprints, common.seed);
  report_json["pipelines"] = json::array();

  std::ostringstream summary;
  summary << "pipeline | mean_utilization | latency_mean_ms | latency_std_ms | runs\n";

  for (const auto paradigm : paradigms) {
    const auto retrievers = raguard::make_retrievers(loaded.bundle, paradigm);
    for (const auto policy : policies) {
      const auto cfg = make_config(policy, paradigm, pipeline);

      // Untimed pass for recall and utilization.
      const auto results =
          raguard::run_pipeline(dataset, cfg, retrievers.know.get(), retrievers.safe.get(),
                                retrievers.merged.get(), pipeline.tau, pipeline.window, 1);
      auto report = raguard::make_report(raguard::pipeline_id(paradigm, policy), results, dataset);

      // Timed passes: one sample per pass = mean per-query retrieval seconds.
      std::vector<double> samples;
      samples.reserve(opts.runs);
      for (std::size_t run = 0; run < opts.runs; ++run) {
        double total = 0.0;
        for (const auto& query : dataset) {
          const auto start = std::chrono::steady_clock::now();
          const auto ctx = raguard::run_policy(cfg, query.question, retrievers.know.get(),
                                               retrievers.safe.get(), retrievers.merged.get());
          const auto stop = std::chrono::steady_clock::now();
          total += std::chrono::duration<double>(stop - start).count();
          (void)ctx;
        }
        samples.push_back(total / static_cast<double>(dataset.size()));
      }
      const auto stats = raguard::latency_stats(samples);
      report.latency_mean = stats.mean;
      report.latency_std = stats.std_dev;
      report.run_count = opts.runs;

      json entry;
      entry["config"] = cfg;
      entry["report"] = report;
      entry["samples"] = samples;
      report_json["pipelines"].push_back(entry);

      summary << report.pipeline_id << " | " << fixed3(report.mean_utilization) << " | "
              << stats.mean * 1e3 << " | " << stats.std_dev * 1e3 << " | " << opts.runs << "\n";
    }
  }

  fs::create_directories(common.output_dir);
  write_json_file(fs::path(common.output_dir) / "bench_report.json", report_json);
  raguard::write_text_file(fs::path(common.output_dir) / "bench_summary.txt", summary.str());
  std::cout << summary.str();
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"safety-aware retrieval engine and evaluation harness"};
  app.require_subcommand(1);

  CommonOpts common;
  app.add_option("--config", common.config_path, "key = value config file");
  auto* jobs_opt = app.add_option("--jobs", common.jobs, "worker threads for eval/sweep");
  auto* seed_opt = app.add_option("--seed", common.seed, "seed for the hashed embedding provider");
  app.add_option("--output-dir", common.output_dir, "directory for emitted files");

  BuildOpts build;
  auto* build_cmd = app.add_subcommand("build-index", "chunk corpora and persist index snapshots");
  build_cmd->add_option("--knowledge", build.knowledge_path, "knowledge corpus (jsonl)")->required();
  build_cmd->add_option("--safety", build.safety_path, "safety corpus (jsonl)")->required();
  build_cmd->add_option("--paradigm", build.paradigm, "sparse|dense|hybrid|all");
  auto* chunk_size_opt = build_cmd->add_option("--chunk-size", build.chunk_size, "chunk size in characters");
  auto* overlap_opt = build_cmd->add_option("--overlap", build.overlap, "chunk overlap in characters");
  auto* k1_opt = build_cmd->add_option("--k1", build.k1, "bm25 k1");
  auto* b_opt = build_cmd->add_option("--b", build.b, "bm25 b");
  build_cmd->add_option("--provider", build.provider, "hashed|remote");
  auto* dim_opt = build_cmd->add_option("--dim", build.dim, "embedding dimension");
  auto* metric_opt = build_cmd->add_option("--metric", build.metric, "inner_product|cosine");

  QueryOpts query;
  PipelineOpts query_pipeline;
  auto* query_cmd = app.add_subcommand("query", "retrieve a context and render the prompt");
  query_cmd->add_option("--index-dir", query.index_dir, "directory with index snapshots")->required();
  query_cmd->add_option("--question", query.question, "question text")->required();
  auto* query_policy_opt = query_cmd->add_option("--policy", query.policy, "base|raguard|safety_clamp");
  auto* query_paradigm_opt = query_cmd->add_option("--paradigm", query.paradigm, "sparse|dense|hybrid");
  query_cmd->add_option("--template", query.template_path, "prompt template file");
  query_cmd->add_flag("--generate", query.generate, "send the prompt to the chat endpoint");
  const auto query_flags = add_pipeline_flags(query_cmd, query_pipeline);

  EvalOpts eval;
  PipelineOpts eval_pipeline;
  auto* eval_cmd = app.add_subcommand("eval", "run pipelines over a dataset and report metrics");
  eval_cmd->add_option("--index-dir", eval.index_dir, "directory with index snapshots")->required();
  eval_cmd->add_option("--dataset", eval.dataset_path, "evaluation dataset (jsonl)")->required();
  eval_cmd->add_option("--paradigms", eval.paradigms, "csv of sparse,dense,hybrid or 'all'");
  eval_cmd->add_option("--policies", eval.policies, "csv of base,raguard,safety_clamp or 'all'");
  const auto eval_flags = add_pipeline_flags(eval_cmd, eval_pipeline);

  SweepOpts sweep;
  PipelineOpts sweep_pipeline;
  auto* sweep_cmd = app.add_subcommand("sweep", "grid-search quota configurations");
  sweep_cmd->add_option("--index-dir", sweep.index_dir, "directory with index snapshots")->required();
  sweep_cmd->add_option("--dataset", sweep.dataset_path, "evaluation dataset (jsonl)")->required();
  sweep_cmd->add_option("--k-max", sweep.k_max, "K values 1..k_max");
  sweep_cmd->add_option("--fetch", sweep.fetch, "csv of k_fetch values");
  sweep_cmd->add_option("--paradigms", sweep.paradigms, "csv or 'all'");
  sweep_cmd->add_option("--policies", sweep.policies, "csv or 'all'");
  const auto sweep_flags = add_pipeline_flags(sweep_cmd, sweep_pipeline);

  BenchOpts bench;
  PipelineOpts bench_pipeline;
  auto* bench_cmd = app.add_subcommand("bench", "measure retrieval latency and context utilization");
  bench_cmd->add_option("--index-dir", bench.index_dir, "directory with index snapshots")->required();
  bench_cmd->add_option("--dataset", bench.dataset_path, "evaluation dataset (jsonl)")->required();
  bench_cmd->add_option("--paradigms", bench.paradigms, "csv or 'all'");
  bench_cmd->add_option("--policies", bench.policies, "csv or 'all'");
  bench_cmd->add_option("--runs", bench.runs, "timing passes per pipeline");
  const auto bench_flags = add_pipeline_flags(bench_cmd, bench_pipeline);

  CLI11_PARSE(app, argc, argv);

  try {
    apply_common_config(common, jobs_opt, seed_opt);

    if (build_cmd->parsed()) {
      fall_back(chunk_size_opt, build.chunk_size, [&] { return common.config.get_size("chunk_size"); });
      fall_back(overlap_opt, build.overlap, [&] { return common.config.get_size("overlap"); });
      fall_back(k1_opt, build.k1, [&] { return common.config.get_double("k1"); });
      fall_back(b_opt, build.b, [&] { return common.config.get_double("b"); });
      fall_back(dim_opt, build.dim, [&] { return common.config.get_size("dim"); });
      fall_back(metric_opt, build.metric, [&] { return common.config.get("metric"); });
      return cmd_build_index(common, build);
    }
    if (query_cmd->parsed()) {
      apply_pipeline_config(common.config, query_pipeline, query_flags);
      fall_back(query_policy_opt, query.policy, [&] { return common.config.get("policy"); });
      fall_back(query_paradigm_opt, query.paradigm, [&] { return common.config.get("paradigm"); });
      return cmd_query(common, query, query_pipeline);
    }
    if (eval_cmd->parsed()) {
      apply_pipeline_config(common.config, eval_pipeline, eval_flags);
      return cmd_eval(common, eval, eval_pipeline);
    }
    if (sweep_cmd->parsed()) {
      apply_pipeline_config(common.config, sweep_pipeline, sweep_flags);
      return cmd_sweep(common, sweep, sweep_pipeline);
    }
    if (bench_cmd->parsed()) {
      apply_pipeline_config(common.config, bench_pipeline, bench_flags);
      return cmd_bench(common, bench, bench_pipeline);
    }
  } catch (const raguard::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return raguard::exit_code(e.error_class());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
