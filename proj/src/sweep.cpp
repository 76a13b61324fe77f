#include "raguard/sweep.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <tuple>

#include "raguard/errors.hpp"
#include "raguard/parallel.hpp"

namespace raguard {

namespace {

void require_increasing(const std::vector<std::size_t>& values, const char* name) {
  if (values.empty()) throw ValidationError(std::string(name) + " must be non-empty");
  for (std::size_t i = 1; i < values.size(); ++i)
    if (values[i] <= values[i - 1])
      throw ValidationError(std::string(name) + " must be strictly increasing");
}

int policy_rank(Policy policy) {
  switch (policy) {
    case Policy::base: return 0;
    case Policy::raguard: return 1;
    case Policy::safety_clamp: return 2;
  }
  return 3;
}

auto config_order_key(const RetrievalConfig& cfg) {
  return std::make_tuple(cfg.top_k, cfg.k_know, cfg.k_safe, cfg.k_fetch.value_or(0),
                         policy_rank(cfg.policy));
}

bool has_policy(const SweepGrid& grid, Policy policy) {
  return std::find(grid.policies.begin(), grid.policies.end(), policy) != grid.policies.end();
}

}  // namespace

void SweepGrid::validate() const {
  require_increasing(k_values, "k_values");
  require_increasing(fetch_values, "fetch_values");
  if (paradigms.empty()) throw ValidationError("paradigms must be non-empty");
  if (policies.empty()) throw ValidationError("policies must be non-empty");
}

SweepGrid default_sweep_grid() {
  SweepGrid grid;
  for (std::size_t k = 1; k <= 10; ++k) grid.k_values.push_back(k);
  for (std::size_t f = 25; f <= 200; f += 25) grid.fetch_values.push_back(f);
  grid.paradigms = {Paradigm::sparse, Paradigm::dense, Paradigm::hybrid};
  grid.policies = {Policy::base, Policy::raguard, Policy::safety_clamp};
  return grid;
}

std::size_t base_clamp_family_size(std::size_t n, std::size_t f) {
  std::size_t triples = 0;
  for (std::size_t k = 1; k <= n; ++k) triples += (k - 1) * k / 2;
  return f * triples + n;
}

std::vector<RetrievalConfig> enumerate_configs(const SweepGrid& grid) {
  grid.validate();
  std::vector<RetrievalConfig> configs;

  if (has_policy(grid, Policy::base)) {
    for (std::size_t k : grid.k_values) {
      RetrievalConfig cfg;
      cfg.policy = Policy::base;
      cfg.top_k = k;
      configs.push_back(cfg);
    }
  }

  std::set<std::tuple<std::size_t, std::size_t, std::size_t>> raguard_seen;
  for (std::size_t k : grid.k_values) {
    for (std::size_t k_know = 1; k_know < k; ++k_know) {
      for (std::size_t k_safe = 1; k_safe + k_know <= k; ++k_safe) {
        if (has_policy(grid, Policy::raguard)) {
          // Project onto the fetch-free policy: its K is the quota sum.
          const auto key = std::make_tuple(k_know + k_safe, k_know, k_safe);
          if (raguard_seen.insert(key).second) {
            RetrievalConfig cfg;
            cfg.policy = Policy::raguard;
            cfg.top_k = k_know + k_safe;
            cfg.k_know = k_know;
            cfg.k_safe = k_safe;
            configs.push_back(cfg);
          }
        }
        if (has_policy(grid, Policy::safety_clamp)) {
          for (std::size_t fetch : grid.fetch_values) {
            RetrievalConfig cfg;
            cfg.policy = Policy::safety_clamp;
            cfg.top_k = k;
            cfg.k_know = k_know;
            cfg.k_safe = k_safe;
            cfg.k_fetch = fetch;
            configs.push_back(cfg);
          }
        }
      }
    }
  }

  std::sort(configs.begin(), configs.end(), [](const RetrievalConfig& a, const RetrievalConfig& b) {
    return config_order_key(a) < config_order_key(b);
  });
  for (const RetrievalConfig& cfg : configs) cfg.validate();
  return configs;
}

std::vector<SweepResult> run_sweep(const SweepGrid& grid, std::span<const EvalQuery> dataset,
                                   const IndexBundle& bundle, double tau, std::size_t window,
                                   unsigned jobs) {
  grid.validate();
  const std::vector<RetrievalConfig> configs = enumerate_configs(grid);

  struct ParadigmHandles {
    Paradigm paradigm;
    CorpusRetrievers retrievers;
  };
  std::vector<ParadigmHandles> handles;
  for (Paradigm paradigm : grid.paradigms)
    handles.push_back({paradigm, make_retrievers(bundle, paradigm)});

  std::vector<SweepResult> results(handles.size() * configs.size());
  parallel_for(results.size(), jobs, [&](std::size_t i) {
    const ParadigmHandles& h = handles[i / configs.size()];
    RetrievalConfig cfg = configs[i % configs.size()];
    cfg.paradigm = h.paradigm;

    const std::vector<QueryResult> run =
        run_pipeline(dataset, cfg, h.retrievers.know.get(), h.retrievers.safe.get(),
                     h.retrievers.merged.get(), tau, window, 1);
    const RecallPair recall = recall_at_k(run);

    SweepResult& out = results[i];
    out.config = cfg;
    out.knowledge_recall = recall.knowledge;
    out.safety_recall = recall.safety;
    out.combined_recall = combined_recall(recall.knowledge, recall.safety);
  });
  return results;
}

std::vector<SweepResult> select_best(std::span<const SweepResult> results) {
  if (results.empty()) throw ValidationError("select_best needs at least one result");

  // Tie rule: smaller K, then smaller k_fetch, then lexicographic quotas.
  const auto cheaper = [](const RetrievalConfig& a, const RetrievalConfig& b) {
    return std::make_tuple(a.top_k, a.k_fetch.value_or(0), a.k_know, a.k_safe) <
           std::make_tuple(b.top_k, b.k_fetch.value_or(0), b.k_know, b.k_safe);
  };

  std::map<std::pair<int, int>, const SweepResult*> best;
  for (const SweepResult& r : results) {
    const auto key = std::make_pair(static_cast<int>(r.config.paradigm), policy_rank(r.config.policy));
    auto it = best.find(key);
    if (it == best.end() || r.combined_recall > it->second->combined_recall ||
        (r.combined_recall == it->second->combined_recall && cheaper(r.config, it->second->config)))
      best[key] = &r;
  }

  std::vector<SweepResult> out;
  out.reserve(best.size());
  for (const auto& [key, result] : best) out.push_back(*result);
  return out;
}

}  // namespace raguard
