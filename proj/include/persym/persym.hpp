#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "persym/bitmat.hpp"
#include "persym/source.hpp"

namespace persym {

inline constexpr int kDefaultSweepBudgetBits = 40;
// Counters are 64-bit; no budget override may push a sweep past this.
inline constexpr int kHardSweepLimitBits = 62;
// Bumped whenever the index -> coefficient bit mapping changes.
inline constexpr int kLayoutVersion = 1;

// Stack of persymmetric blocks, top to bottom. A height-2 block contributes
// the rows (a1..ak) and (a2..a_{k+1}); a height-1 block the single row (a1..ak).
class Shape {
 public:
  explicit Shape(std::vector<int> blocks);

  // [2]*n, the n-times persymmetric 2n x k family.
  static Shape uniform(int n);
  // "2,2,2,2" or "2,2,2,2,1". Throws StructuralError on malformed input.
  static Shape parse(std::string_view text);

  const std::vector<int>& blocks() const noexcept { return blocks_; }
  int n() const noexcept { return static_cast<int>(blocks_.size()); }
  int total_rows() const noexcept { return total_rows_; }
  int max_rank(int k) const noexcept { return total_rows_ < k ? total_rows_ : k; }

  // Bits of coefficient data for k columns: sum over blocks of k + height - 1.
  int coeff_bits(int k) const noexcept;

  // n when every block has height 2, otherwise 0.
  int uniform_pairs() const noexcept;

  std::string to_string() const;

  friend bool operator==(const Shape&, const Shape&) = default;

 private:
  std::vector<int> blocks_;
  int total_rows_ = 0;
};

// Coefficient sequences, one bit-mask per block. Bit t of block j is the
// coefficient a_{t+1} of that block.
struct CoeffSeq {
  int k = 0;
  std::vector<std::uint64_t> blocks;

  // Unpacks a sweep index: bits are consumed block by block, least
  // significant first, a1 first within each block.
  static CoeffSeq from_index(const Shape& shape, int k, std::uint64_t index);
};

struct RankHistogram {
  Shape shape;
  int k;
  std::vector<std::uint64_t> counts;  // counts[i] = number of sequences of rank i
  Source source = Source::Enumerated;

  RankHistogram(Shape s, int cols, Source src = Source::Enumerated);

  std::uint64_t total() const noexcept;
  // Element-wise sum. Throws StructuralError if (shape, k) differ.
  RankHistogram& operator+=(const RankHistogram& other);
};

BitMatrix build_persym(const CoeffSeq& seq, const Shape& shape);

using ProgressSink = std::function<void(std::uint64_t done, std::uint64_t total)>;

struct SweepOptions {
  int jobs = 1;  // 0 = all hardware threads
  ProgressSink progress;
  int budget_bits = kDefaultSweepBudgetBits;
};

// Throws StructuralError for k outside the shape's supported range and
// BudgetExceeded when coeff_bits(k) > budget_bits.
void check_sweep(const Shape& shape, int k, int budget_bits);

// Half-open index range covered by chunk `chunk_index` of `chunk_count`.
struct IndexRange {
  std::uint64_t begin;
  std::uint64_t end;
};
IndexRange chunk_range(std::uint64_t space, std::uint64_t chunk_index, std::uint64_t chunk_count);

// Histogram of one deterministic slice of the index space 0..2^B-1.
RankHistogram partition_sweep(const Shape& shape, int k, std::uint64_t chunk_index,
                              std::uint64_t chunk_count, int budget_bits = kDefaultSweepBudgetBits);

// Sweeps the listed chunks on `jobs` worker threads. `on_chunk` is called
// once per finished chunk, serialized, in completion order.
void run_chunks(const Shape& shape, int k, std::uint64_t chunk_count,
                std::span<const std::uint64_t> chunk_indices, int jobs,
                const std::function<void(std::uint64_t, RankHistogram&&)>& on_chunk,
                int budget_bits = kDefaultSweepBudgetBits);

// Exact rank histogram over every coefficient sequence of (shape, k).
// Result is independent of jobs.
RankHistogram enumerate_histogram(const Shape& shape, int k, const SweepOptions& options = {});

int resolve_jobs(int jobs) noexcept;

}  // namespace persym
