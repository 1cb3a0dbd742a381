#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace zaremba {

using Integer = boost::multiprecision::cpp_int;

inline std::string to_decimal(const Integer& value) { return value.str(); }

// Accepts only non-empty runs of ASCII digits; no sign, no whitespace.
inline Integer parse_decimal(std::string_view text) {
  if (text.empty()) throw std::invalid_argument("empty integer literal");
  for (char c : text) {
    if (c < '0' || c > '9')
      throw std::invalid_argument("not a decimal integer: '" + std::string(text) + "'");
  }
  return Integer(std::string(text));
}

// Square-and-multiply, kept separate from the fold arithmetic so that
// certificate checks have an independent route to d^k.
inline Integer power(Integer base, std::uint64_t exponent) {
  Integer result = 1;
  while (exponent != 0) {
    if (exponent & 1u) result *= base;
    exponent >>= 1;
    if (exponent != 0) base *= base;
  }
  return result;
}

inline Integer gcd(const Integer& a, const Integer& b) {
  return boost::multiprecision::gcd(a, b);
}

// Narrowing for values that must fit a machine word (exponents, JSON ints).
inline std::uint64_t to_u64(const Integer& value) {
  if (value < 0 || value > Integer(UINT64_MAX))
    throw std::out_of_range("integer does not fit in 64 bits: " + value.str());
  return static_cast<std::uint64_t>(value);
}

}  // namespace zaremba
