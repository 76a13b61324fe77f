#include <cstdlib>

#include "httplib.h"
#include "json.hpp"

#include "raguard/embedding.hpp"
#include "raguard/errors.hpp"

namespace raguard {

RemoteEmbeddingProvider::RemoteEmbeddingProvider(RemoteProviderConfig config)
    : config_(std::move(config)) {
  if (config_.base_url.empty()) throw ConfigurationError("remote provider needs a base_url");
  if (config_.dimension == 0) throw ConfigurationError("remote provider needs a positive dimension");
}

std::string RemoteEmbeddingProvider::id() const {
  return "remote:" + config_.base_url + ":dim=" + std::to_string(config_.dimension);
}

std::vector<double> RemoteEmbeddingProvider::embed(const std::string& text) const {
  httplib::Client client(config_.base_url);
  client.set_connection_timeout(static_cast<time_t>(config_.timeout_seconds),
                                static_cast<time_t>((config_.timeout_seconds - static_cast<time_t>(config_.timeout_seconds)) * 1e6));
  client.set_read_timeout(static_cast<time_t>(config_.timeout_seconds), 0);

  httplib::Headers headers;
  if (!config_.api_key_env.empty()) {
    if (const char* key = std::getenv(config_.api_key_env.c_str()))
      headers.emplace("Authorization", std::string("Bearer ") + key);
  }

  nlohmann::json body;
  body["texts"] = nlohmann::json::array({text});

  auto res = client.Post("/embed", headers, body.dump(), "application/json");
  if (!res) throw ProviderError("embed endpoint unreachable: " + config_.base_url);
  if (res->status != 200)
    throw ProviderError("embed endpoint returned status " + std::to_string(res->status));

  nlohmann::json parsed = nlohmann::json::parse(res->body, nullptr, false);
  if (parsed.is_discarded() || !parsed.contains("vectors") || !parsed["vectors"].is_array() ||
      parsed["vectors"].size() != 1)
    throw ProviderError("embed endpoint returned a malformed body");

  std::vector<double> vec = parsed["vectors"][0].get<std::vector<double>>();
  if (vec.size() != config_.dimension)
    throw ProviderError("embed endpoint returned dimension " + std::to_string(vec.size()) +
                        ", expected " + std::to_string(config_.dimension));
  return vec;
}

}  // namespace raguard
