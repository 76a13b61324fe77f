#pragma once

#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "raguard/corpus.hpp"
#include "raguard/policy.hpp"
#include "raguard/prompt.hpp"

namespace raguard {

struct QueryResult {
  std::string query_id;
  SlottedContext context;
  bool knowledge_hit = false;
  bool safety_hit = false;
  std::set<std::string> clauses_covered;  // clause keys, see GoldAnnotation::clause_key
  double retrieval_latency = 0.0;         // seconds, the retrieval call only
  double utilization = 0.0;
};

struct RecallPair {
  double knowledge = 0.0;
  double safety = 0.0;
};

struct PipelineReport {
  std::string pipeline_id;  // paradigm "/" policy
  double knowledge_recall = 0.0;
  double safety_recall = 0.0;
  double combined_recall = 0.0;
  double compliance_recall = 0.0;
  std::optional<double> latency_mean;  // seconds; filled by the bench path only
  std::optional<double> latency_std;
  double mean_utilization = 0.0;
  std::size_t run_count = 0;

  void validate() const;  // fractions in [0,1], combined = mean of the recalls
};

struct LatencyStats {
  double mean = 0.0;
  double std_dev = 0.0;  // sample standard deviation (n-1)
};

// Scores one query's context against its gold annotations. safety_hit is
// true when at least one gold clause is covered; queries without safety
// annotations count as trivially satisfied.
QueryResult evaluate_query(const EvalQuery& query, SlottedContext ctx, double latency_seconds,
                           double tau = kDefaultCoverageTau,
                           std::size_t window = kDefaultContextWindow);

// Mean knowledge / safety hit rates. Empty input is a ValidationError.
RecallPair recall_at_k(std::span<const QueryResult> results);

// Arithmetic mean of the two recalls; inputs outside [0,1] are a
// ValidationError.
double combined_recall(double knowledge, double safety);

// Fraction of queries whose covered clause set equals the full gold clause
// set; queries with no gold clauses count as compliant. Results must align
// with the dataset by query_id.
double safety_compliance_recall(std::span<const QueryResult> results,
                                std::span<const EvalQuery> dataset);

// Mean and sample standard deviation; fewer than 2 samples is a
// ValidationError.
LatencyStats latency_stats(std::span<const double> samples);

std::string pipeline_id(Paradigm paradigm, Policy policy);

// Runs one pipeline over the dataset; latency is measured around the policy
// call only. Results come back in dataset order regardless of `jobs`.
std::vector<QueryResult> run_pipeline(std::span<const EvalQuery> dataset, const RetrievalConfig& cfg,
                                      const Retriever* know, const Retriever* safe,
                                      const Retriever* merged, double tau = kDefaultCoverageTau,
                                      std::size_t window = kDefaultContextWindow, unsigned jobs = 1);

// Aggregates per-query results; latency fields stay empty unless requested
// (bench fills them from its own timing samples).
PipelineReport make_report(std::string pipeline_id, std::span<const QueryResult> results,
                           std::span<const EvalQuery> dataset);

}  // namespace raguard
