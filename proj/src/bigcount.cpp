#include "persym/bigcount.hpp"

#include <stdexcept>

#include "persym/errors.hpp"

namespace persym {

BigInt pow2(int e) {
  if (e < 0) throw DomainError("negative power of two 2^" + std::to_string(e));
  BigInt r = 1;
  r <<= e;
  return r;
}

BigInt exact_div(const BigInt& num, const BigInt& den, std::string_view what) {
  if (den == 0) throw DomainError(std::string(what) + ": division by zero");
  BigInt q, r;
  boost::multiprecision::divide_qr(num, den, q, r);
  if (r != 0) {
    throw DomainError(std::string(what) + ": " + num.str() + " is not divisible by " + den.str());
  }
  return q;
}

BigCount BigCount::from_signed(BigInt v, std::string_view what) {
  if (v < 0) throw DomainError(std::string(what) + " evaluated to negative value " + v.str());
  BigCount c;
  c.value_ = std::move(v);
  return c;
}

BigCount BigCount::parse(std::string_view decimal) {
  if (decimal.empty() || decimal.find_first_not_of("0123456789") != std::string_view::npos) {
    throw std::invalid_argument("not a decimal count: '" + std::string(decimal) + "'");
  }
  BigCount c;
  c.value_ = BigInt(std::string(decimal));
  return c;
}

std::uint64_t BigCount::to_u64() const {
  if (!fits_u64()) throw std::overflow_error("count " + to_string() + " exceeds 64 bits");
  return static_cast<std::uint64_t>(value_);
}

}  // namespace persym
