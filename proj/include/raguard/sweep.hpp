#pragma once

#include <span>
#include <vector>

#include "raguard/metrics.hpp"

namespace raguard {

struct SweepGrid {
  std::vector<std::size_t> k_values;      // total-K candidates
  std::vector<std::size_t> fetch_values;  // k_fetch candidates (clamp only)
  std::vector<Paradigm> paradigms;
  std::vector<Policy> policies;

  void validate() const;  // non-empty, k/fetch strictly increasing
};

// K in 1..10, fetch in {25, 50, ..., 200}, all paradigms, all policies.
SweepGrid default_sweep_grid();

struct SweepResult {
  RetrievalConfig config;
  double knowledge_recall = 0.0;
  double safety_recall = 0.0;
  double combined_recall = 0.0;
};

// Size of the base + clamp config family over K in 1..n and f fetch options:
// f * sum_{K=1..n} (K-1)K/2 + n.
std::size_t base_clamp_family_size(std::size_t n, std::size_t f);

// Emits configs for every policy in the grid, ordered by
// (K, k_know, k_safe, k_fetch, policy):
//   base:         one per K, no quotas, no fetch.
//   safety_clamp: every (K, k_know, k_safe) with 1 <= k_know < K and
//                 1 <= k_safe <= K - k_know, crossed with fetch_values.
//   raguard:      the fetch-free projection of those triples onto
//                 K = k_know + k_safe, deduplicated.
// config.paradigm is left at its default; run_sweep assigns it.
std::vector<RetrievalConfig> enumerate_configs(const SweepGrid& grid);

// One result per (paradigm, config), paradigms outermost, config order as
// enumerated. Deterministic for any job count.
std::vector<SweepResult> run_sweep(const SweepGrid& grid, std::span<const EvalQuery> dataset,
                                   const IndexBundle& bundle, double tau = kDefaultCoverageTau,
                                   std::size_t window = kDefaultContextWindow, unsigned jobs = 1);

// Argmax of combined_recall per pipeline (paradigm x policy); ties prefer the
// cheaper config: smaller K, then smaller k_fetch, then lexicographic
// (k_know, k_safe). Output ordered by (paradigm, policy).
std::vector<SweepResult> select_best(std::span<const SweepResult> results);

}  // namespace raguard
