#include "persym/checkpoint.hpp"

#include <fstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "persym/errors.hpp"

namespace persym {

namespace fs = std::filesystem;
using nlohmann::json;

fs::path checkpoint_path(const fs::path& dir, const ChunkKey& key) {
  std::string shape = key.shape.to_string();
  for (char& c : shape) {
    if (c == ',') c = '-';
  }
  return dir / ("persym_s" + shape + "_k" + std::to_string(key.k) + "_c" +
                std::to_string(key.chunk_index) + "of" + std::to_string(key.chunk_count) + "_v" +
                std::to_string(key.layout_version) + ".json");
}

void write_checkpoint(const fs::path& dir, const ChunkKey& key, const RankHistogram& hist) {
  json doc;
  doc["shape"] = key.shape.to_string();
  doc["k"] = key.k;
  doc["chunk_index"] = key.chunk_index;
  doc["chunk_count"] = key.chunk_count;
  doc["layout_version"] = key.layout_version;
  std::vector<std::string> counts;
  for (std::uint64_t c : hist.counts) counts.push_back(std::to_string(c));
  doc["counts"] = counts;

  fs::create_directories(dir);
  const fs::path final_path = checkpoint_path(dir, key);
  fs::path tmp = final_path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::trunc);
    out << doc.dump() << '\n';
    if (!out) throw std::runtime_error("failed to write checkpoint " + tmp.string());
  }
  fs::rename(tmp, final_path);
}

std::optional<RankHistogram> read_checkpoint(const fs::path& dir, const ChunkKey& key) {
  const fs::path path = checkpoint_path(dir, key);
  if (!fs::exists(path)) return std::nullopt;
  const auto bad = [&](const std::string& why) {
    return StructuralError("checkpoint " + path.string() + ": " + why);
  };

  json doc;
  try {
    std::ifstream in(path);
    doc = json::parse(in);
    if (doc.at("shape").get<std::string>() != key.shape.to_string()) throw bad("shape mismatch");
    if (doc.at("k").get<int>() != key.k) throw bad("k mismatch");
    if (doc.at("chunk_index").get<std::uint64_t>() != key.chunk_index) {
      throw bad("chunk index mismatch");
    }
    if (doc.at("chunk_count").get<std::uint64_t>() != key.chunk_count) {
      throw bad("chunk count mismatch");
    }
    if (doc.at("layout_version").get<int>() != key.layout_version) {
      throw bad("layout version mismatch");
    }
  } catch (const json::exception& e) {
    throw bad(e.what());
  }

  RankHistogram hist(key.shape, key.k);
  const auto& counts = doc.at("counts");
  if (!counts.is_array() || counts.size() != hist.counts.size()) throw bad("wrong number of ranks");
  for (std::size_t i = 0; i < counts.size(); ++i) {
    hist.counts[i] = std::stoull(counts[i].get<std::string>());
  }
  const std::uint64_t space = std::uint64_t{1} << key.shape.coeff_bits(key.k);
  const IndexRange range = chunk_range(space, key.chunk_index, key.chunk_count);
  if (hist.total() != range.end - range.begin) throw bad("counts do not cover the chunk");
  return hist;
}

ResumableSweep resumable_sweep(const Shape& shape, int k, std::uint64_t chunk_count,
                               const fs::path& dir, const SweepOptions& options) {
  check_sweep(shape, k, options.budget_bits);
  const std::uint64_t space = std::uint64_t{1} << shape.coeff_bits(k);
  ResumableSweep result{RankHistogram(shape, k), 0, 0};
  std::uint64_t done = 0;

  std::vector<std::uint64_t> pending;
  for (std::uint64_t c = 0; c < chunk_count; ++c) {
    if (auto part = read_checkpoint(dir, {shape, k, c, chunk_count})) {
      result.histogram += *part;
      ++result.chunks_resumed;
      done += part->total();
    } else {
      pending.push_back(c);
    }
  }
  if (options.progress && done > 0) options.progress(done, space);

  run_chunks(
      shape, k, chunk_count, pending, options.jobs,
      [&](std::uint64_t idx, RankHistogram&& part) {
        write_checkpoint(dir, {shape, k, idx, chunk_count}, part);
        result.histogram += part;
        ++result.chunks_computed;
        done += part.total();
        if (options.progress) options.progress(done, space);
      },
      options.budget_bits);
  return result;
}

}  // namespace persym
