#include <cstdint>
#include <random>
#include <vector>

#include "doctest.h"
#include "oracle.hpp"
#include "persym/bitmat.hpp"
#include "persym/errors.hpp"

using persym::BitMatrix;
using persym::rank;
using persym::rank_of_rows;

namespace {

std::vector<std::uint64_t> random_rows(std::mt19937_64& rng, int rows, int cols) {
  std::vector<std::uint64_t> out(static_cast<std::size_t>(rows));
  for (auto& r : out) r = rng() & persym::low_mask(cols);
  return out;
}

BitMatrix transpose(const BitMatrix& m) {
  BitMatrix t(m.cols(), m.rows());
  for (int r = 0; r < m.rows(); ++r) {
    for (int c = 0; c < m.cols(); ++c) t.set(c, r, m.get(r, c));
  }
  return t;
}

}  // namespace

TEST_CASE("rank of fixed matrices") {
  CHECK(rank(BitMatrix(8, 5)) == 0);
  CHECK(rank(BitMatrix::identity(8)) == 8);
  CHECK(rank(BitMatrix::from_rows({0b11, 0b10}, 2)) == 2);
  CHECK(rank(BitMatrix::from_rows({0b11, 0b11}, 2)) == 1);
  CHECK(rank(BitMatrix(0, 5)) == 0);
  CHECK_THROWS_AS(BitMatrix(2, 65), persym::StructuralError);
  CHECK(rank(BitMatrix::identity(64)) == 64);
}

TEST_CASE("rank_of_rows on raw masks") {
  CHECK(rank_of_rows({}, 5) == 0);
  const std::vector<std::uint64_t> dependent{0b101, 0b011, 0b110};
  CHECK(rank_of_rows(dependent, 3) == 2);
  const std::vector<std::uint64_t> one{0b1};
  CHECK(rank_of_rows(one, 1) == 1);
  // Full column rank reached early: trailing rows are ignored.
  const std::vector<std::uint64_t> tall{0b01, 0b10, 0b11, 0b01};
  CHECK(rank_of_rows(tall, 2) == 2);
}

TEST_CASE("from_rows rejects masks wider than the column count") {
  CHECK_THROWS_AS(BitMatrix::from_rows({0b100}, 2), persym::StructuralError);
  CHECK_NOTHROW(BitMatrix::from_rows({0b11}, 2));
  BitMatrix m(2, 3);
  CHECK_THROWS_AS(m.set_row(0, 0b1000), persym::StructuralError);
}

TEST_CASE("set and get address single entries") {
  BitMatrix m(3, 4);
  m.set(1, 2, true);
  CHECK(m.row(1) == 0b0100);
  CHECK(m.get(1, 2));
  m.set(1, 2, false);
  CHECK(m.row(1) == 0);
}

TEST_CASE("echelon basis reduce is a projection with the basis as kernel") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    persym::EchelonBasis basis;
    const auto rows = random_rows(rng, 6, 10);
    for (auto r : rows) basis.insert(r);
    for (auto r : rows) CHECK(basis.reduce(r) == 0);
    const std::uint64_t a = rng() & persym::low_mask(10);
    const std::uint64_t b = rng() & persym::low_mask(10);
    CHECK(basis.reduce(a ^ b) == (basis.reduce(a) ^ basis.reduce(b)));
    CHECK(basis.reduce(basis.reduce(a)) == basis.reduce(a));
  }
}

TEST_CASE("property: rank agrees with naive elimination on random matrices") {
  std::mt19937_64 rng(20240601);
  for (int trial = 0; trial < 1000; ++trial) {
    const int rows = 1 + static_cast<int>(rng() % 12);
    const int cols = 1 + static_cast<int>(rng() % 12);
    // Bias some trials towards sparse matrices so low ranks are exercised.
    auto masks = random_rows(rng, rows, cols);
    if (trial % 3 == 0) {
      for (auto& m : masks) m &= rng();
    }
    const auto m = BitMatrix::from_rows(masks, cols);
    REQUIRE(rank(m) == oracle::rank_mod2(oracle::from_masks(masks, cols)));
  }
}

TEST_CASE("property: rank is invariant under transpose and row operations") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 300; ++trial) {
    const int rows = 1 + static_cast<int>(rng() % 12);
    const int cols = 1 + static_cast<int>(rng() % 12);
    auto masks = random_rows(rng, rows, cols);
    const auto m = BitMatrix::from_rows(masks, cols);
    const int r = rank(m);
    CHECK(r <= std::min(rows, cols));
    CHECK(rank(transpose(m)) == r);
    // Add row a to row b, then swap two rows.
    const auto a = static_cast<std::size_t>(rng() % static_cast<unsigned>(rows));
    const auto b = static_cast<std::size_t>(rng() % static_cast<unsigned>(rows));
    if (a != b) masks[b] ^= masks[a];
    std::swap(masks[a], masks[b]);
    CHECK(rank(BitMatrix::from_rows(masks, cols)) == r);
  }
}
