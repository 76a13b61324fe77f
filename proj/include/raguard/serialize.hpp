#pragma once

#include "json.hpp"

#include "raguard/metrics.hpp"
#include "raguard/policy.hpp"
#include "raguard/sweep.hpp"

namespace raguard {

void to_json(nlohmann::json& j, const Chunk& chunk);
void from_json(const nlohmann::json& j, Chunk& chunk);

void to_json(nlohmann::json& j, const RetrievalConfig& cfg);
void from_json(const nlohmann::json& j, RetrievalConfig& cfg);

void to_json(nlohmann::json& j, const PipelineReport& report);

void to_json(nlohmann::json& j, const SweepResult& result);
void from_json(const nlohmann::json& j, SweepResult& result);

}  // namespace raguard
