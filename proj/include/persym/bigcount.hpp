#pragma once

#include <compare>
#include <cstdint>
#include <ostream>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace persym {

// Signed intermediate for evaluating closed forms.
using BigInt = boost::multiprecision::cpp_int;

// 2^e for e >= 0.
BigInt pow2(int e);

// num / den, throwing DomainError naming `what` unless the division is exact.
BigInt exact_div(const BigInt& num, const BigInt& den, std::string_view what);

// Exact non-negative integer count.
class BigCount {
 public:
  BigCount() = default;
  BigCount(std::uint64_t v) : value_(v) {}  // NOLINT(google-explicit-constructor)

  // Throws DomainError if v < 0; `what` names the expression for the message.
  static BigCount from_signed(BigInt v, std::string_view what);
  // Decimal digits only. Throws std::invalid_argument otherwise.
  static BigCount parse(std::string_view decimal);

  const BigInt& value() const noexcept { return value_; }
  std::string to_string() const { return value_.str(); }

  bool fits_u64() const noexcept { return value_ <= std::numeric_limits<std::uint64_t>::max(); }
  std::uint64_t to_u64() const;

  BigCount& operator+=(const BigCount& o) {
    value_ += o.value_;
    return *this;
  }
  friend BigCount operator+(BigCount a, const BigCount& b) { return a += b; }
  friend BigCount operator*(const BigCount& a, const BigCount& b) {
    BigCount r;
    r.value_ = a.value_ * b.value_;
    return r;
  }

  friend bool operator==(const BigCount& a, const BigCount& b) { return a.value_ == b.value_; }
  friend std::strong_ordering operator<=>(const BigCount& a, const BigCount& b) {
    if (a.value_ < b.value_) return std::strong_ordering::less;
    if (b.value_ < a.value_) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }

  friend std::ostream& operator<<(std::ostream& os, const BigCount& c) { return os << c.value_; }

 private:
  BigInt value_;
};

}  // namespace persym
