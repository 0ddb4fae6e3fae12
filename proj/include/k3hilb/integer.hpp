#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>

#include <boost/multiprecision/cpp_int.hpp>

namespace k3hilb {

using BigInt = boost::multiprecision::cpp_int;

/// Floor of the square root of a non-negative integer.
inline BigInt isqrt(const BigInt& n) {
  if (n < 0) throw std::domain_error("isqrt of a negative integer");
  BigInt r = boost::multiprecision::sqrt(n);
  // The library result is already floor(sqrt(n)); the loops pin it exactly.
  while (r * r > n) --r;
  while ((r + 1) * (r + 1) <= n) ++r;
  return r;
}

/// Integer Newton iteration; exact for every 64-bit input.
inline std::uint64_t isqrt(std::uint64_t n) {
  if (n < 2) return n;
  std::uint64_t x = n;
  std::uint64_t y = x / 2 + (x & 1);
  while (y < x) {
    x = y;
    y = (x + n / x) / 2;
  }
  return x;
}

inline std::int64_t isqrt(std::int64_t n) {
  if (n < 0) throw std::domain_error("isqrt of a negative integer");
  return static_cast<std::int64_t>(isqrt(static_cast<std::uint64_t>(n)));
}

/// Exact perfect-square test by re-multiplication.
inline bool is_perfect_square(const BigInt& n) {
  if (n < 0) return false;
  const BigInt r = isqrt(n);
  return r * r == n;
}

inline bool is_perfect_square(std::int64_t n) {
  if (n < 0) return false;
  const std::int64_t r = isqrt(n);
  return r * r == n;
}

inline BigInt gcd(const BigInt& a, const BigInt& b) {
  return boost::multiprecision::gcd(abs(a), abs(b));
}

inline int sign(const BigInt& n) { return n.sign(); }

/// Floor division for a positive divisor.
inline std::int64_t floor_div(std::int64_t num, std::int64_t den) {
  std::int64_t q = num / den;
  if ((num % den != 0) && ((num < 0) != (den < 0))) --q;
  return q;
}

inline std::string to_decimal(const BigInt& n) { return n.str(); }

inline BigInt from_decimal(const std::string& s) {
  // cpp_int's string constructor also accepts hex and octal prefixes; only
  // plain decimal is a valid serialization here.
  std::size_t i = (!s.empty() && (s[0] == '-' || s[0] == '+')) ? 1 : 0;
  if (i == s.size()) throw std::invalid_argument("not a decimal integer: '" + s + "'");
  for (std::size_t j = i; j < s.size(); ++j) {
    if (s[j] < '0' || s[j] > '9') throw std::invalid_argument("not a decimal integer: '" + s + "'");
  }
  return s[0] == '+' ? BigInt(s.substr(1)) : BigInt(s);
}

}  // namespace k3hilb
