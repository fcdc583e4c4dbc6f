#include <random>
#include <stdexcept>
#include <string>

#include "doctest.h"
#include "persym/bigcount.hpp"
#include "persym/errors.hpp"

using persym::BigCount;
using persym::BigInt;

TEST_CASE("pow2 and exact division") {
  CHECK(persym::pow2(0) == 1);
  CHECK(persym::pow2(70).str() == "1180591620717411303424");
  CHECK_THROWS_AS(persym::pow2(-1), persym::DomainError);
  CHECK(persym::exact_div(BigInt(12), BigInt(4), "x") == 3);
  CHECK_THROWS_AS(persym::exact_div(BigInt(13), BigInt(4), "x"), persym::DomainError);
}

TEST_CASE("from_signed rejects negative values") {
  CHECK(BigCount::from_signed(BigInt(5), "five") == BigCount(5));
  CHECK_THROWS_AS(BigCount::from_signed(BigInt(-1), "neg"), persym::DomainError);
}

TEST_CASE("decimal parsing") {
  CHECK(BigCount::parse("0") == BigCount(0));
  CHECK(BigCount::parse("21139292160") == BigCount(21139292160ULL));
  CHECK_THROWS_AS(BigCount::parse(""), std::invalid_argument);
  CHECK_THROWS_AS(BigCount::parse("-3"), std::invalid_argument);
  CHECK_THROWS_AS(BigCount::parse("12a"), std::invalid_argument);
}

TEST_CASE("u64 conversion") {
  const BigCount big = BigCount::from_signed(persym::pow2(64), "2^64");
  CHECK_FALSE(big.fits_u64());
  CHECK_THROWS(big.to_u64());
  CHECK(BigCount(~0ULL).to_u64() == ~0ULL);
}

TEST_CASE("property: decimal serialization round-trips") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 200; ++trial) {
    BigInt v = 0;
    const int words = 1 + static_cast<int>(rng() % 5);
    for (int w = 0; w < words; ++w) v = (v << 64) + BigInt(rng());
    const BigCount c = BigCount::from_signed(v, "random");
    CHECK(BigCount::parse(c.to_string()) == c);
  }
}

TEST_CASE("arithmetic and ordering") {
  const BigCount a(3), b(4);
  CHECK(a + b == BigCount(7));
  CHECK(a * b == BigCount(12));
  CHECK(a < b);
  BigCount c = a;
  c += b;
  CHECK(c == BigCount(7));
}
