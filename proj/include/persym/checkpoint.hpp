#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>

#include "persym/persym.hpp"

namespace persym {

// Identifies one completed chunk of a sweep on disk.
struct ChunkKey {
  Shape shape;
  int k;
  std::uint64_t chunk_index;
  std::uint64_t chunk_count;
  int layout_version = kLayoutVersion;
};

std::filesystem::path checkpoint_path(const std::filesystem::path& dir, const ChunkKey& key);

// Writes via a temporary file and rename, so a partial file is never visible
// under the final name.
void write_checkpoint(const std::filesystem::path& dir, const ChunkKey& key,
                      const RankHistogram& hist);

// nullopt if no file exists. Throws StructuralError when the file's recorded
// shape, k, chunk index, chunk count or layout version disagree with `key`,
// or when its counts do not add up to the chunk's range size.
std::optional<RankHistogram> read_checkpoint(const std::filesystem::path& dir, const ChunkKey& key);

struct ResumableSweep {
  RankHistogram histogram;
  std::uint64_t chunks_resumed = 0;
  std::uint64_t chunks_computed = 0;
};

// Sweeps (shape, k) in chunk_count chunks, skipping chunks already on disk and
// persisting each newly finished one.
ResumableSweep resumable_sweep(const Shape& shape, int k, std::uint64_t chunk_count,
                               const std::filesystem::path& dir, const SweepOptions& options);

}  // namespace persym
