#include "raguard/snapshot.hpp"

#include "json.hpp"

#include "raguard/errors.hpp"
#include "raguard/jsonl.hpp"
#include "raguard/serialize.hpp"

namespace raguard {

using nlohmann::json;

void save_snapshot(const IndexSnapshot& snapshot, const std::filesystem::path& path) {
  json j;
  j["format_version"] = kSnapshotFormatVersion;
  j["kind"] = "index_snapshot";
  j["chunking"] = json{{"chunk_size", snapshot.chunking.chunk_size}, {"overlap", snapshot.chunking.overlap}};
  j["bm25"] = json{{"k1", snapshot.bm25.k1}, {"b", snapshot.bm25.b}};
  j["chunks"] = snapshot.chunks;
  if (snapshot.dense) {
    j["dense"] = json{{"provider_id", snapshot.dense->provider_id},
                      {"metric", std::string(to_string(snapshot.dense->metric))},
                      {"dimension", snapshot.dense->dimension},
                      {"vectors", snapshot.dense->vectors}};
  }
  write_text_file(path, j.dump(2) + "\n");
}

IndexSnapshot load_snapshot(const std::filesystem::path& path) {
  const std::string raw = read_text_file(path);
  json j = json::parse(raw, nullptr, false);
  if (j.is_discarded() || !j.is_object())
    throw ValidationError("snapshot is not a valid record: " + path.string());
  if (!j.contains("format_version") || j["format_version"].get<int>() != kSnapshotFormatVersion)
    throw ValidationError("snapshot has an unsupported format_version: " + path.string());

  IndexSnapshot snapshot;
  snapshot.chunking.chunk_size = j.at("chunking").at("chunk_size").get<std::size_t>();
  snapshot.chunking.overlap = j.at("chunking").at("overlap").get<std::size_t>();
  snapshot.bm25.k1 = j.at("bm25").at("k1").get<double>();
  snapshot.bm25.b = j.at("bm25").at("b").get<double>();
  snapshot.chunks = j.at("chunks").get<std::vector<Chunk>>();
  if (j.contains("dense") && !j["dense"].is_null()) {
    IndexSnapshot::DensePayload dense;
    dense.provider_id = j["dense"].at("provider_id").get<std::string>();
    dense.metric = parse_metric(j["dense"].at("metric").get<std::string>());
    dense.dimension = j["dense"].at("dimension").get<std::size_t>();
    dense.vectors = j["dense"].at("vectors").get<std::vector<std::vector<double>>>();
    if (dense.vectors.size() != snapshot.chunks.size())
      throw ValidationError("snapshot vector count does not match chunk count: " + path.string());
    snapshot.dense = std::move(dense);
  }
  return snapshot;
}

IndexSnapshot make_snapshot(const ChunkingConfig& chunking, const Bm25Params& bm25,
                            std::vector<Chunk> chunks, const DenseIndex* dense) {
  IndexSnapshot snapshot;
  snapshot.chunking = chunking;
  snapshot.bm25 = bm25;
  snapshot.chunks = std::move(chunks);
  if (dense) {
    IndexSnapshot::DensePayload payload;
    payload.provider_id = dense->provider_id;
    payload.metric = dense->metric;
    payload.dimension = dense->provider ? dense->provider->dimension()
                                        : (dense->vectors.empty() ? 0 : dense->vectors[0].size());
    payload.vectors = dense->vectors;
    snapshot.dense = std::move(payload);
  }
  return snapshot;
}

SparseIndex sparse_from_snapshot(const IndexSnapshot& snapshot) {
  return build_sparse_index(snapshot.chunks, snapshot.bm25);
}

DenseIndex dense_from_snapshot(const IndexSnapshot& snapshot, const ProviderFactory& factory) {
  if (!snapshot.dense) throw ValidationError("snapshot has no dense payload");

  DenseIndex index;
  index.metric = snapshot.dense->metric;
  index.chunks = snapshot.chunks;
  index.origin = origin_of(index.chunks);
  index.provider_id = snapshot.dense->provider_id;
  index.provider = factory(snapshot.dense->provider_id);
  if (!index.provider)
    throw ConfigurationError("provider factory returned nothing for '" + snapshot.dense->provider_id + "'");
  if (index.provider->dimension() != snapshot.dense->dimension)
    throw ConfigurationError("provider dimension " + std::to_string(index.provider->dimension()) +
                             " does not match snapshot dimension " +
                             std::to_string(snapshot.dense->dimension));
  index.vectors = snapshot.dense->vectors;
  return index;
}

}  // namespace raguard
