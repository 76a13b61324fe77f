#include "raguard/embedding.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>

#include "raguard/errors.hpp"
#include "raguard/tokenize.hpp"

namespace raguard {

std::uint64_t fnv1a64(std::string_view bytes, std::uint64_t seed) {
  std::uint64_t hash = seed;
  for (unsigned char c : bytes) {
    hash ^= c;
    hash *= 1099511628211ULL;
  }
  return hash;
}

HashedBowProvider::HashedBowProvider(std::size_t dimension, std::uint64_t seed)
    : dimension_(dimension), seed_(seed) {
  if (dimension_ == 0) throw ValidationError("embedding dimension must be positive");
}

std::string HashedBowProvider::id() const {
  return "hashed-bow:dim=" + std::to_string(dimension_) + ":seed=" + std::to_string(seed_);
}

std::vector<double> HashedBowProvider::embed(const std::string& text) const {
  std::vector<double> vec(dimension_, 0.0);
  for (const std::string& token : tokenize(text)) {
    const std::uint64_t hash = fnv1a64(token, fnv1a64("\x01", 14695981039346656037ULL ^ seed_));
    vec[hash % dimension_] += 1.0;
  }
  double norm_sq = 0.0;
  for (double v : vec) norm_sq += v * v;
  if (norm_sq > 0.0) {
    const double inv = 1.0 / std::sqrt(norm_sq);
    for (double& v : vec) v *= inv;
  }
  return vec;
}

std::shared_ptr<const EmbeddingProvider> hashed_provider_from_id(const std::string& provider_id) {
  unsigned long long dim = 0;
  unsigned long long seed = 0;
  if (std::sscanf(provider_id.c_str(), "hashed-bow:dim=%llu:seed=%llu", &dim, &seed) != 2) return nullptr;
  return std::make_shared<HashedBowProvider>(static_cast<std::size_t>(dim),
                                             static_cast<std::uint64_t>(seed));
}

ProviderFactory default_provider_factory() {
  return [](const std::string& provider_id) -> std::shared_ptr<const EmbeddingProvider> {
    if (auto provider = hashed_provider_from_id(provider_id)) return provider;
    throw ConfigurationError("no provider available for id '" + provider_id + "'");
  };
}

}  // namespace raguard
