#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <vector>

namespace persym {

inline constexpr int kMaxBitDim = 64;

inline constexpr std::uint64_t low_mask(int bits) noexcept {
  return bits >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << bits) - 1;
}

// Dense matrix over F2 with one 64-bit word per row. Bit j of a row holds
// the entry in column j (0-based).
class BitMatrix {
 public:
  BitMatrix(int n_rows, int n_cols);

  // Throws StructuralError if a mask has bits at or above n_cols.
  static BitMatrix from_rows(std::vector<std::uint64_t> rows, int n_cols);
  static BitMatrix identity(int n);

  int rows() const noexcept { return static_cast<int>(rows_.size()); }
  int cols() const noexcept { return n_cols_; }

  std::uint64_t row(int r) const { return rows_.at(static_cast<std::size_t>(r)); }
  void set_row(int r, std::uint64_t mask);

  bool get(int r, int c) const { return (row(r) >> c) & 1u; }
  void set(int r, int c, bool value);

  std::span<const std::uint64_t> row_masks() const noexcept { return rows_; }

  friend bool operator==(const BitMatrix&, const BitMatrix&) = default;

 private:
  std::vector<std::uint64_t> rows_;
  int n_cols_;
};

// Row-echelon basis over F2. The pivot of each basis vector is its lowest set
// bit, and every vector was reduced by all earlier ones before insertion, so a
// single ordered pass clears every pivot. `reduce` is the linear projection
// onto the pivot-free coordinates; its kernel is the span of the basis.
class EchelonBasis {
 public:
  int rank() const noexcept { return rank_; }

  std::uint64_t reduce(std::uint64_t r) const noexcept {
    for (int b = 0; b < rank_; ++b) {
      r ^= basis_[b] & (std::uint64_t{0} - ((r >> pivot_[b]) & 1u));
    }
    return r;
  }

  // Returns true if `r` was independent of the basis.
  bool insert(std::uint64_t r) noexcept {
    r = reduce(r);
    if (r == 0) return false;
    basis_[rank_] = r;
    pivot_[rank_] = __builtin_ctzll(r);
    ++rank_;
    return true;
  }

 private:
  std::array<std::uint64_t, kMaxBitDim> basis_;
  std::array<int, kMaxBitDim> pivot_;
  int rank_ = 0;
};

// Rank over F2 of the matrix whose rows are `rows`. Allocation-free.
inline int rank_of_rows(std::span<const std::uint64_t> rows, int n_cols) noexcept {
  EchelonBasis basis;
  for (std::uint64_t r : rows) {
    if (basis.insert(r) && basis.rank() == n_cols) break;
  }
  return basis.rank();
}

int rank(const BitMatrix& m) noexcept;

}  // namespace persym
