#include "persym/bitmat.hpp"

#include <string>
#include <utility>

#include "persym/errors.hpp"

namespace persym {

namespace {

void check_dims(int n_rows, int n_cols) {
  if (n_rows < 0 || n_rows > kMaxBitDim || n_cols < 1 || n_cols > kMaxBitDim) {
    throw StructuralError("BitMatrix dimensions " + std::to_string(n_rows) + "x" +
                          std::to_string(n_cols) + " outside 0..64 x 1..64");
  }
}

}  // namespace

BitMatrix::BitMatrix(int n_rows, int n_cols) : n_cols_(n_cols) {
  check_dims(n_rows, n_cols);
  rows_.assign(static_cast<std::size_t>(n_rows), 0);
}

BitMatrix BitMatrix::from_rows(std::vector<std::uint64_t> rows, int n_cols) {
  BitMatrix m(0, n_cols);
  check_dims(static_cast<int>(rows.size()), n_cols);
  for (std::uint64_t r : rows) {
    if (r & ~low_mask(n_cols)) {
      throw StructuralError("row mask has bits beyond column " + std::to_string(n_cols));
    }
  }
  m.rows_ = std::move(rows);
  return m;
}

BitMatrix BitMatrix::identity(int n) {
  BitMatrix m(n, n);
  for (int i = 0; i < n; ++i) m.rows_[static_cast<std::size_t>(i)] = std::uint64_t{1} << i;
  return m;
}

void BitMatrix::set_row(int r, std::uint64_t mask) {
  if (mask & ~low_mask(n_cols_)) {
    throw StructuralError("row mask has bits beyond column " + std::to_string(n_cols_));
  }
  rows_.at(static_cast<std::size_t>(r)) = mask;
}

void BitMatrix::set(int r, int c, bool value) {
  if (c < 0 || c >= n_cols_) throw StructuralError("column index out of range");
  auto& word = rows_.at(static_cast<std::size_t>(r));
  const std::uint64_t bit = std::uint64_t{1} << c;
  word = value ? (word | bit) : (word & ~bit);
}

int rank(const BitMatrix& m) noexcept { return rank_of_rows(m.row_masks(), m.cols()); }

}  // namespace persym
