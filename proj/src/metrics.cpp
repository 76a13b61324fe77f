#include "raguard/metrics.hpp"

#include <chrono>
#include <cmath>
#include <unordered_map>

#include "raguard/errors.hpp"
#include "raguard/parallel.hpp"

namespace raguard {

void PipelineReport::validate() const {
  const auto in_unit = [](double v) { return v >= 0.0 && v <= 1.0; };
  if (!in_unit(knowledge_recall) || !in_unit(safety_recall) || !in_unit(combined_recall) ||
      !in_unit(compliance_recall))
    throw ValidationError("recall fractions must lie in [0, 1]");
  if (std::abs(combined_recall - (knowledge_recall + safety_recall) / 2.0) > 1e-12)
    throw ValidationError("combined_recall must be the mean of knowledge and safety recall");
}

QueryResult evaluate_query(const EvalQuery& query, SlottedContext ctx, double latency_seconds,
                           double tau, std::size_t window) {
  QueryResult result;
  result.query_id = query.query_id;
  result.retrieval_latency = latency_seconds;
  result.utilization = context_utilization(ctx, window).fraction;

  std::vector<Chunk> retrieved;
  for (const ScoredPassage& p : ctx.assembled()) retrieved.push_back(p.chunk);

  result.knowledge_hit = gold_covered(query.gold_technical, retrieved, tau);
  for (const GoldAnnotation& clause : query.gold_safety)
    if (gold_covered(clause, retrieved, tau)) result.clauses_covered.insert(clause.clause_key());
  result.safety_hit = query.gold_safety.empty() || !result.clauses_covered.empty();

  result.context = std::move(ctx);
  return result;
}

RecallPair recall_at_k(std::span<const QueryResult> results) {
  if (results.empty()) throw ValidationError("recall needs at least one query result");
  double knowledge_hits = 0.0;
  double safety_hits = 0.0;
  for (const QueryResult& r : results) {
    knowledge_hits += r.knowledge_hit ? 1.0 : 0.0;
    safety_hits += r.safety_hit ? 1.0 : 0.0;
  }
  const double n = static_cast<double>(results.size());
  return {knowledge_hits / n, safety_hits / n};
}

double combined_recall(double knowledge, double safety) {
  if (!(knowledge >= 0.0 && knowledge <= 1.0 && safety >= 0.0 && safety <= 1.0))
    throw ValidationError("recall values must lie in [0, 1]");
  return (knowledge + safety) / 2.0;
}

double safety_compliance_recall(std::span<const QueryResult> results,
                                std::span<const EvalQuery> dataset) {
  if (results.empty()) throw ValidationError("compliance needs at least one query result");
  std::unordered_map<std::string, const EvalQuery*> by_id;
  for (const EvalQuery& q : dataset) by_id.emplace(q.query_id, &q);
  if (by_id.size() != dataset.size() || results.size() != dataset.size())
    throw AlignmentError("results and dataset must pair up one-to-one by query_id");

  double compliant = 0.0;
  for (const QueryResult& r : results) {
    auto it = by_id.find(r.query_id);
    if (it == by_id.end()) throw AlignmentError("result query_id '" + r.query_id + "' is not in the dataset");
    std::set<std::string> required;
    for (const GoldAnnotation& clause : it->second->gold_safety) required.insert(clause.clause_key());
    if (r.clauses_covered == required) compliant += 1.0;
  }
  return compliant / static_cast<double>(results.size());
}

LatencyStats latency_stats(std::span<const double> samples) {
  if (samples.size() < 2) throw ValidationError("latency stats need at least 2 samples");
  double sum = 0.0;
  for (double s : samples) sum += s;
  const double mean = sum / static_cast<double>(samples.size());
  double sq = 0.0;
  for (double s : samples) sq += (s - mean) * (s - mean);
  return {mean, std::sqrt(sq / static_cast<double>(samples.size() - 1))};
}

std::string pipeline_id(Paradigm paradigm, Policy policy) {
  return std::string(to_string(paradigm)) + "/" + std::string(to_string(policy));
}

std::vector<QueryResult> run_pipeline(std::span<const EvalQuery> dataset, const RetrievalConfig& cfg,
                                      const Retriever* know, const Retriever* safe,
                                      const Retriever* merged, double tau, std::size_t window,
                                      unsigned jobs) {
  cfg.validate();
  std::vector<QueryResult> results(dataset.size());
  parallel_for(dataset.size(), jobs, [&](std::size_t i) {
    const EvalQuery& query = dataset[i];
    const auto start = std::chrono::steady_clock::now();
    SlottedContext ctx = run_policy(cfg, query.question, know, safe, merged);
    const auto stop = std::chrono::steady_clock::now();
    const double seconds = std::chrono::duration<double>(stop - start).count();
    results[i] = evaluate_query(query, std::move(ctx), seconds, tau, window);
  });
  return results;
}

PipelineReport make_report(std::string pipeline_id, std::span<const QueryResult> results,
                           std::span<const EvalQuery> dataset) {
  const RecallPair recall = recall_at_k(results);

  PipelineReport report;
  report.pipeline_id = std::move(pipeline_id);
  report.knowledge_recall = recall.knowledge;
  report.safety_recall = recall.safety;
  report.combined_recall = combined_recall(recall.knowledge, recall.safety);
  report.compliance_recall = safety_compliance_recall(results, dataset);
  double util = 0.0;
  for (const QueryResult& r : results) util += r.utilization;
  report.mean_utilization = util / static_cast<double>(results.size());
  report.run_count = results.size();
  report.validate();
  return report;
}

}  // namespace raguard
