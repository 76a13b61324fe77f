#pragma once

#include <filesystem>
#include <optional>

#include "raguard/index.hpp"

namespace raguard {

inline constexpr int kSnapshotFormatVersion = 1;

// On-disk image of one corpus' indices. The sparse side stores only chunks
// and parameters (the index rebuild is deterministic); the dense side stores
// the embedded vectors so loading never re-embeds.
struct IndexSnapshot {
  ChunkingConfig chunking;
  Bm25Params bm25;
  std::vector<Chunk> chunks;

  struct DensePayload {
    std::string provider_id;
    Metric metric = Metric::cosine;
    std::size_t dimension = 0;
    std::vector<std::vector<double>> vectors;
  };
  std::optional<DensePayload> dense;
};

// Serialisation is canonical (sorted keys, shortest round-trip numbers), so
// save(load(f)) reproduces f byte for byte.
void save_snapshot(const IndexSnapshot& snapshot, const std::filesystem::path& path);
IndexSnapshot load_snapshot(const std::filesystem::path& path);

IndexSnapshot make_snapshot(const ChunkingConfig& chunking, const Bm25Params& bm25,
                            std::vector<Chunk> chunks, const DenseIndex* dense = nullptr);

SparseIndex sparse_from_snapshot(const IndexSnapshot& snapshot);

// Rebuilds the dense index from stored vectors; the factory supplies the
// provider (matched by provider_id) used to embed queries.
DenseIndex dense_from_snapshot(const IndexSnapshot& snapshot, const ProviderFactory& factory);

}  // namespace raguard
