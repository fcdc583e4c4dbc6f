#include "persym/persym.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <mutex>
#include <numeric>
#include <thread>

#include "persym/errors.hpp"

namespace persym {

namespace {

constexpr int kMaxBlocks = 9;

struct BlockLayout {
  int width;   // coefficient bits
  int height;  // rows
};

std::vector<BlockLayout> layout(const Shape& shape, int k) {
  std::vector<BlockLayout> out;
  out.reserve(shape.blocks().size());
  for (int h : shape.blocks()) out.push_back({k + h - 1, h});
  return out;
}

// Rows of the blocks from `first_block` on, decoded from `rest` (whose low
// bits belong to `first_block`). Returns the number of rows written.
int decode_rows(const std::vector<BlockLayout>& blocks, std::size_t first_block, std::uint64_t rest,
                std::uint64_t col_mask, std::array<std::uint64_t, kMaxBitDim>& rows) {
  int r = 0;
  for (std::size_t j = first_block; j < blocks.size(); ++j) {
    const auto& b = blocks[j];
    const std::uint64_t alpha = rest & low_mask(b.width);
    rest = b.width >= 64 ? 0 : rest >> b.width;
    rows[static_cast<std::size_t>(r++)] = alpha & col_mask;
    if (b.height == 2) rows[static_cast<std::size_t>(r++)] = (alpha >> 1) & col_mask;
  }
  return r;
}

// Per-index elimination, used for ragged chunk ends.
void sweep_direct(const std::vector<BlockLayout>& blocks, int k, std::uint64_t begin,
                  std::uint64_t end, std::vector<std::uint64_t>& counts) {
  const std::uint64_t col_mask = low_mask(k);
  std::array<std::uint64_t, kMaxBitDim> rows{};
  for (std::uint64_t index = begin; index < end; ++index) {
    const int n_rows = decode_rows(blocks, 0, index, col_mask, rows);
    ++counts[static_cast<std::size_t>(
        rank_of_rows(std::span<const std::uint64_t>(rows.data(), static_cast<std::size_t>(n_rows)), k))];
  }
}

// All 2^{w} sequences that share the coefficients of blocks 1.. (the high
// index bits `prefix`) and vary only the first block. The other blocks are
// eliminated once; the first block's rows are then tracked through the
// projection that kills their span, walking the first block in Gray-code
// order so each step is one XOR per row.
void sweep_group(const std::vector<BlockLayout>& blocks, int k, std::uint64_t prefix,
                 std::vector<std::uint64_t>& counts) {
  const std::uint64_t col_mask = low_mask(k);
  std::array<std::uint64_t, kMaxBitDim> rows{};
  const int n_rows = decode_rows(blocks, 1, prefix, col_mask, rows);
  EchelonBasis basis;
  for (int r = 0; r < n_rows; ++r) basis.insert(rows[static_cast<std::size_t>(r)]);

  const BlockLayout first = blocks.front();
  // Flipping coefficient t toggles column t of the first row and column t-1
  // of the second.
  std::array<std::uint64_t, kMaxBitDim + 1> flip_top{};
  std::array<std::uint64_t, kMaxBitDim + 1> flip_bottom{};
  for (int t = 0; t < first.width; ++t) {
    if (t < k) flip_top[static_cast<std::size_t>(t)] = basis.reduce(std::uint64_t{1} << t);
    if (first.height == 2 && t >= 1) {
      flip_bottom[static_cast<std::size_t>(t)] = basis.reduce(std::uint64_t{1} << (t - 1));
    }
  }

  std::array<std::uint64_t, 3> by_increment{1, 0, 0};  // alpha = 0 adds nothing
  std::uint64_t top = 0;
  std::uint64_t bottom = 0;
  const std::uint64_t steps = std::uint64_t{1} << first.width;
  for (std::uint64_t s = 1; s < steps; ++s) {
    const auto t = static_cast<std::size_t>(__builtin_ctzll(s));
    top ^= flip_top[t];
    bottom ^= flip_bottom[t];
    ++by_increment[static_cast<std::size_t>((top != 0) + (bottom != 0 && bottom != top))];
  }
  for (std::size_t inc = 0; inc < by_increment.size(); ++inc) {
    if (by_increment[inc] != 0) counts[static_cast<std::size_t>(basis.rank()) + inc] += by_increment[inc];
  }
}

// Counts ranks of sequences with index in [begin, end).
void sweep_range(const Shape& shape, int k, std::uint64_t begin, std::uint64_t end,
                 std::vector<std::uint64_t>& counts) {
  const auto blocks = layout(shape, k);
  const int w = blocks.front().width;
  const std::uint64_t group = std::uint64_t{1} << w;
  const std::uint64_t first_full = (begin + group - 1) / group;
  const std::uint64_t last_full = end / group;  // exclusive
  if (first_full >= last_full) {
    sweep_direct(blocks, k, begin, end, counts);
    return;
  }
  sweep_direct(blocks, k, begin, first_full * group, counts);
  for (std::uint64_t p = first_full; p < last_full; ++p) sweep_group(blocks, k, p, counts);
  sweep_direct(blocks, k, last_full * group, end, counts);
}

}  // namespace

Shape::Shape(std::vector<int> blocks) : blocks_(std::move(blocks)) {
  if (blocks_.empty() || static_cast<int>(blocks_.size()) > kMaxBlocks) {
    throw StructuralError("shape must have 1..9 blocks, got " + std::to_string(blocks_.size()));
  }
  for (int h : blocks_) {
    if (h != 1 && h != 2) {
      throw StructuralError("block height " + std::to_string(h) + " is not 1 or 2");
    }
    total_rows_ += h;
  }
}

Shape Shape::uniform(int n) {
  if (n < 1) throw StructuralError("block count must be >= 1");
  return Shape(std::vector<int>(static_cast<std::size_t>(n), 2));
}

Shape Shape::parse(std::string_view text) {
  std::vector<int> blocks;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t comma = std::min(text.find(',', pos), text.size());
    const std::string_view field = text.substr(pos, comma - pos);
    int h = 0;
    const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), h);
    if (field.empty() || ec != std::errc{} || ptr != field.data() + field.size()) {
      throw StructuralError("malformed shape '" + std::string(text) + "'");
    }
    blocks.push_back(h);
    pos = comma + 1;
  }
  return Shape(std::move(blocks));
}

int Shape::coeff_bits(int k) const noexcept {
  int bits = 0;
  for (int h : blocks_) bits += k + h - 1;
  return bits;
}

int Shape::uniform_pairs() const noexcept {
  return std::all_of(blocks_.begin(), blocks_.end(), [](int h) { return h == 2; }) ? n() : 0;
}

std::string Shape::to_string() const {
  std::string out;
  for (std::size_t i = 0; i < blocks_.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(blocks_[i]);
  }
  return out;
}

CoeffSeq CoeffSeq::from_index(const Shape& shape, int k, std::uint64_t index) {
  CoeffSeq seq{k, {}};
  for (const auto& b : layout(shape, k)) {
    seq.blocks.push_back(index & low_mask(b.width));
    index = b.width >= 64 ? 0 : index >> b.width;
  }
  return seq;
}

RankHistogram::RankHistogram(Shape s, int cols, Source src)
    : shape(std::move(s)), k(cols), source(src) {
  counts.assign(static_cast<std::size_t>(shape.max_rank(k) + 1), 0);
}

std::uint64_t RankHistogram::total() const noexcept {
  return std::accumulate(counts.begin(), counts.end(), std::uint64_t{0});
}

RankHistogram& RankHistogram::operator+=(const RankHistogram& other) {
  if (!(shape == other.shape) || k != other.k) {
    throw StructuralError("cannot merge histograms of different (shape, k)");
  }
  for (std::size_t i = 0; i < counts.size(); ++i) counts[i] += other.counts[i];
  return *this;
}

BitMatrix build_persym(const CoeffSeq& seq, const Shape& shape) {
  if (seq.blocks.size() != shape.blocks().size()) {
    throw StructuralError("sequence has " + std::to_string(seq.blocks.size()) +
                          " blocks, shape has " + std::to_string(shape.blocks().size()));
  }
  if (seq.k < 1 || seq.k > kMaxBitDim || shape.total_rows() > kMaxBitDim) {
    throw StructuralError("matrix " + std::to_string(shape.total_rows()) + "x" +
                          std::to_string(seq.k) + " exceeds 64x64");
  }
  BitMatrix m(shape.total_rows(), seq.k);
  const std::uint64_t col_mask = low_mask(seq.k);
  int r = 0;
  for (std::size_t j = 0; j < seq.blocks.size(); ++j) {
    const int h = shape.blocks()[j];
    const int width = seq.k + h - 1;
    if (width > 64 || (seq.blocks[j] & ~low_mask(width))) {
      throw StructuralError("block " + std::to_string(j + 1) + " carries more than " +
                            std::to_string(width) + " coefficient bits");
    }
    m.set_row(r++, seq.blocks[j] & col_mask);
    if (h == 2) m.set_row(r++, (seq.blocks[j] >> 1) & col_mask);
  }
  return m;
}

void check_sweep(const Shape& shape, int k, int budget_bits) {
  if (k < 1 || k > kMaxBitDim) {
    throw StructuralError("k = " + std::to_string(k) + " outside 1..64");
  }
  const int bits = shape.coeff_bits(k);
  const int limit = std::min(budget_bits, kHardSweepLimitBits);
  if (bits > limit) {
    throw BudgetExceeded("sweep of shape " + shape.to_string() + " at k=" + std::to_string(k),
                         bits, limit);
  }
}

IndexRange chunk_range(std::uint64_t space, std::uint64_t chunk_index, std::uint64_t chunk_count) {
  if (chunk_count == 0 || chunk_index >= chunk_count) {
    throw StructuralError("chunk index " + std::to_string(chunk_index) + " not in 0.." +
                          std::to_string(chunk_count) + ")");
  }
  using u128 = unsigned __int128;
  const auto at = [&](std::uint64_t i) {
    return static_cast<std::uint64_t>(static_cast<u128>(space) * i / chunk_count);
  };
  return {at(chunk_index), at(chunk_index + 1)};
}

RankHistogram partition_sweep(const Shape& shape, int k, std::uint64_t chunk_index,
                              std::uint64_t chunk_count, int budget_bits) {
  check_sweep(shape, k, budget_bits);
  const std::uint64_t space = std::uint64_t{1} << shape.coeff_bits(k);
  const IndexRange range = chunk_range(space, chunk_index, chunk_count);
  RankHistogram hist(shape, k);
  sweep_range(shape, k, range.begin, range.end, hist.counts);
  return hist;
}

int resolve_jobs(int jobs) noexcept {
  if (jobs > 0) return jobs;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

void run_chunks(const Shape& shape, int k, std::uint64_t chunk_count,
                std::span<const std::uint64_t> chunk_indices, int jobs,
                const std::function<void(std::uint64_t, RankHistogram&&)>& on_chunk,
                int budget_bits) {
  check_sweep(shape, k, budget_bits);
  for (std::uint64_t idx : chunk_indices) {
    if (idx >= chunk_count) throw StructuralError("chunk index out of range");
  }
  const int workers =
      static_cast<int>(std::min<std::size_t>(static_cast<std::size_t>(resolve_jobs(jobs)),
                                             std::max<std::size_t>(chunk_indices.size(), 1)));
  std::atomic<std::size_t> next{0};
  std::mutex sink_mutex;
  std::exception_ptr failure;

  auto worker = [&] {
    try {
      for (std::size_t slot = next++; slot < chunk_indices.size(); slot = next++) {
        RankHistogram part = partition_sweep(shape, k, chunk_indices[slot], chunk_count, budget_bits);
        std::lock_guard lock(sink_mutex);
        on_chunk(chunk_indices[slot], std::move(part));
      }
    } catch (...) {
      std::lock_guard lock(sink_mutex);
      if (!failure) failure = std::current_exception();
      next = chunk_indices.size();
    }
  };

  if (workers == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (int w = 0; w < workers; ++w) pool.emplace_back(worker);
  }
  if (failure) std::rethrow_exception(failure);
}

RankHistogram enumerate_histogram(const Shape& shape, int k, const SweepOptions& options) {
  check_sweep(shape, k, options.budget_bits);
  const int jobs = resolve_jobs(options.jobs);
  const std::uint64_t space = std::uint64_t{1} << shape.coeff_bits(k);
  std::uint64_t chunk_count = static_cast<std::uint64_t>(jobs) * 16;
  if (options.progress) chunk_count = std::max<std::uint64_t>(chunk_count, 64);
  chunk_count = std::min(chunk_count, space);

  std::vector<std::uint64_t> indices(chunk_count);
  std::iota(indices.begin(), indices.end(), std::uint64_t{0});

  RankHistogram total(shape, k);
  std::uint64_t done = 0;
  run_chunks(
      shape, k, chunk_count, indices, jobs,
      [&](std::uint64_t idx, RankHistogram&& part) {
        total += part;
        const IndexRange r = chunk_range(space, idx, chunk_count);
        done += r.end - r.begin;
        if (options.progress) options.progress(done, space);
      },
      options.budget_bits);
  return total;
}

}  // namespace persym
