#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <vector>

namespace raguard {

// Deterministic text -> fixed-dimension vector contract: embed() must return
// the same vector for the same text under a fixed provider id.
class EmbeddingProvider {
 public:
  virtual ~EmbeddingProvider() = default;
  virtual std::size_t dimension() const = 0;
  virtual std::string id() const = 0;
  virtual std::vector<double> embed(const std::string& text) const = 0;
};

// Offline test provider: each token is hashed into one of `dimension` buckets
// and the bucket counts are L2-normalised. Texts with no tokens embed to the
// zero vector.
class HashedBowProvider final : public EmbeddingProvider {
 public:
  explicit HashedBowProvider(std::size_t dimension, std::uint64_t seed = 0);

  std::size_t dimension() const override { return dimension_; }
  std::string id() const override;
  std::vector<double> embed(const std::string& text) const override;

 private:
  std::size_t dimension_;
  std::uint64_t seed_;
};

struct RemoteProviderConfig {
  std::string base_url;       // e.g. http://localhost:8089
  std::size_t dimension = 0;  // expected vector length
  double timeout_seconds = 30.0;
  std::string api_key_env;    // name of the env var holding a bearer token, optional
};

// Speaks the embed endpoint: POST /embed with {"texts": [...]} and expects
// {"vectors": [[...]]}. A response vector of the wrong length is a
// ProviderError.
class RemoteEmbeddingProvider final : public EmbeddingProvider {
 public:
  explicit RemoteEmbeddingProvider(RemoteProviderConfig config);

  std::size_t dimension() const override { return config_.dimension; }
  std::string id() const override;
  std::vector<double> embed(const std::string& text) const override;

 private:
  RemoteProviderConfig config_;
};

using ProviderFactory = std::function<std::shared_ptr<const EmbeddingProvider>(const std::string& provider_id)>;

// Reconstructs a HashedBowProvider from an id of the form
// "hashed-bow:dim=D:seed=S"; returns nullptr for any other scheme.
std::shared_ptr<const EmbeddingProvider> hashed_provider_from_id(const std::string& provider_id);

// Factory that only understands hashed-bow ids; throws ConfigurationError for
// anything else. The CLI layers remote providers on top of this.
ProviderFactory default_provider_factory();

std::uint64_t fnv1a64(std::string_view bytes, std::uint64_t seed = 14695981039346656037ULL);

}  // namespace raguard
