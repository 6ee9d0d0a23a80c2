#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <compare>
#include <optional>
#include <ostream>
#include <string>

namespace langgen {

/// Arbitrary-precision natural number.
using BigNat = boost::multiprecision::cpp_int;

/// Returns 2^exponent exactly.
BigNat pow2(std::size_t exponent);

/// An exact cardinality: either a finite natural or the marker "infinite".
/// Finite values never saturate. Infinite compares greater than every finite value.
class Count {
 public:
  Count() = default;
  Count(BigNat value);  // NOLINT(google-explicit-constructor)
  Count(unsigned long long value) : Count(BigNat(value)) {}  // NOLINT
  Count(int value) : Count(BigNat(value)) {}                 // NOLINT

  static Count infinite();

  bool is_infinite() const noexcept { return !value_.has_value(); }
  bool is_finite() const noexcept { return value_.has_value(); }

  /// Throws InvalidArgument when infinite.
  const BigNat& value() const;

  /// Decimal digits, or "inf".
  std::string to_string() const;

  friend bool operator==(const Count& a, const Count& b) = default;
  friend std::strong_ordering operator<=>(const Count& a, const Count& b);

 private:
  std::optional<BigNat> value_ = BigNat(0);
};

std::ostream& operator<<(std::ostream& os, const Count& c);

}  // namespace langgen
