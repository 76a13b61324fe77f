#include "raguard/llm_client.hpp"

#include <chrono>
#include <cstdlib>
#include <thread>

#include "httplib.h"
#include "json.hpp"

#include "raguard/errors.hpp"

namespace raguard {

void EndpointConfig::validate() const {
  if (base_url.empty()) throw ConfigurationError("endpoint base_url must be set");
  if (!(timeout_seconds > 0.0)) throw ConfigurationError("endpoint timeout must be positive");
  if (max_retries < 0) throw ConfigurationError("max_retries must be non-negative");
}

namespace {

std::string trim(std::string_view text) {
  const char* ws = " \t\r\n";
  const auto begin = text.find_first_not_of(ws);
  if (begin == std::string_view::npos) return {};
  const auto end = text.find_last_not_of(ws);
  return std::string(text.substr(begin, end - begin + 1));
}

}  // namespace

ParsedAnswer parse_answer(const std::string& completion) {
  ParsedAnswer answer;
  answer.raw = completion;

  const std::size_t proc = completion.find(kProcedureMarker);
  const std::size_t safe = completion.find(kSafetyMarker);

  if (proc != std::string::npos) {
    const std::size_t begin = proc + kProcedureMarker.size();
    const std::size_t end = (safe != std::string::npos && safe > begin) ? safe : completion.size();
    answer.procedure = trim(std::string_view(completion).substr(begin, end - begin));
  }
  if (safe != std::string::npos)
    answer.safety_considerations = trim(std::string_view(completion).substr(safe + kSafetyMarker.size()));

  answer.partial = (proc == std::string::npos) || (safe == std::string::npos);
  return answer;
}

ParsedAnswer generate(const RenderedPrompt& prompt, const EndpointConfig& cfg) {
  cfg.validate();

  nlohmann::json body;
  body["model"] = cfg.model_name;
  body["messages"] = nlohmann::json::array({nlohmann::json{{"role", "user"}, {"content", prompt.text}}});
  body["temperature"] = 0.0;
  body["max_tokens"] = cfg.max_tokens;
  const std::string payload = body.dump();

  httplib::Headers headers;
  if (!cfg.api_key_env.empty()) {
    if (const char* key = std::getenv(cfg.api_key_env.c_str()))
      headers.emplace("Authorization", std::string("Bearer ") + key);
  }

  std::string last_error;
  for (int attempt = 0; attempt <= cfg.max_retries; ++attempt) {
    if (attempt > 0)
      std::this_thread::sleep_for(std::chrono::milliseconds(100LL << (attempt - 1)));

    httplib::Client client(cfg.base_url);
    client.set_connection_timeout(static_cast<time_t>(cfg.timeout_seconds), 0);
    client.set_read_timeout(static_cast<time_t>(cfg.timeout_seconds), 0);

    auto res = client.Post("/v1/chat/completions", headers, payload, "application/json");
    if (!res) {
      last_error = httplib::to_string(res.error());
      continue;
    }
    if (res->status != 200) {
      std::string excerpt = res->body.substr(0, 200);
      throw EndpointError("endpoint returned status " + std::to_string(res->status) + ": " + excerpt,
                          res->status);
    }

    nlohmann::json parsed = nlohmann::json::parse(res->body, nullptr, false);
    if (parsed.is_discarded() || !parsed.contains("choices") || parsed["choices"].empty() ||
        !parsed["choices"][0].contains("message"))
      throw EndpointError("endpoint returned a malformed completion body", res->status);

    const nlohmann::json& message = parsed["choices"][0]["message"];
    if (!message.contains("content") || !message["content"].is_string())
      throw EndpointError("completion message has no content", res->status);
    return parse_answer(message["content"].get<std::string>());
  }
  throw TransportError("endpoint unreachable after " + std::to_string(cfg.max_retries + 1) +
                           " attempts: " + last_error,
                       cfg.max_retries);
}

}  // namespace raguard
