#include "langgen/count.hpp"

#include "langgen/error.hpp"

namespace langgen {

BigNat pow2(std::size_t exponent) {
  BigNat r = 1;
  r <<= exponent;
  return r;
}

Count::Count(BigNat value) : value_(std::move(value)) {
  if (*value_ < 0) throw Error(ErrorCode::InvalidArgument, "negative count");
}

Count Count::infinite() {
  Count c;
  c.value_.reset();
  return c;
}

const BigNat& Count::value() const {
  if (!value_) throw Error(ErrorCode::InvalidArgument, "count is infinite");
  return *value_;
}

std::string Count::to_string() const { return value_ ? value_->str() : std::string("inf"); }

std::strong_ordering operator<=>(const Count& a, const Count& b) {
  if (a.is_infinite() || b.is_infinite()) {
    return a.is_infinite() <=> b.is_infinite();
  }
  const auto& x = *a.value_;
  const auto& y = *b.value_;
  if (x < y) return std::strong_ordering::less;
  if (y < x) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

std::ostream& operator<<(std::ostream& os, const Count& c) { return os << c.to_string(); }

}  // namespace langgen
