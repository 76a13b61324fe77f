#pragma once

#include <string>

#include "raguard/prompt.hpp"

namespace raguard {

struct EndpointConfig {
  std::string base_url;      // e.g. http://localhost:8080
  std::string model_name;
  double timeout_seconds = 30.0;
  std::size_t max_tokens = 512;
  std::string api_key_env;   // env var holding a bearer token, optional
  int max_retries = 2;       // transport retries with exponential backoff

  void validate() const;
};

struct ParsedAnswer {
  std::string procedure;              // slot 1
  std::string safety_considerations;  // slot 2
  std::string raw;                    // full completion
  bool partial = false;               // a slot marker was missing
};

// Splits a completion at the "1) Procedure:" and "2) Safety Considerations:"
// markers. Missing markers flag the parse as partial; nothing is dropped.
ParsedAnswer parse_answer(const std::string& completion);

// Sends the prompt to a chat-completions endpoint (POST /v1/chat/completions)
// with temperature 0 and a single sample, then parses the answer.
ParsedAnswer generate(const RenderedPrompt& prompt, const EndpointConfig& cfg);

inline constexpr std::string_view kProcedureMarker = "1) Procedure:";
inline constexpr std::string_view kSafetyMarker = "2) Safety Considerations:";

}  // namespace raguard
