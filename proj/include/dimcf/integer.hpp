#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <boost/multiprecision/integer.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <utility>

#include "dimcf/error.hpp"

namespace dimcf {

// Expression templates off: every operation yields a plain Integer.
using Integer = boost::multiprecision::number<boost::multiprecision::cpp_int_backend<>,
                                              boost::multiprecision::et_off>;

inline int sign(const Integer& x) { return x.sign(); }

inline Integer abs(const Integer& x) { return x < 0 ? Integer(-x) : x; }

inline Integer gcd(const Integer& a, const Integer& b) {
  return boost::multiprecision::gcd(a, b);
}

// Quotient rounded towards negative infinity.
inline Integer floor_div(const Integer& a, const Integer& b) {
  if (b == 0) fail(ErrorKind::ZeroDenominator, "integer division by zero");
  Integer q = a / b;
  Integer r = a - q * b;
  if (r != 0 && ((r < 0) != (b < 0))) --q;
  return q;
}

inline Integer ceil_div(const Integer& a, const Integer& b) {
  return -floor_div(-a, b);
}

/// floor(sqrt(n)) for n >= 0.
inline Integer isqrt(const Integer& n) {
  if (n < 0) fail(ErrorKind::NegativeRadicand, "square root of a negative integer");
  return boost::multiprecision::sqrt(n);
}

inline bool is_perfect_square(const Integer& n) {
  if (n < 0) return false;
  Integer r = isqrt(n);
  return r * r == n;
}

/// Splits n > 0 as root^2 * core with core squarefree.
///
/// Trial division runs only up to the cube root of n: once every prime below
/// that bound is removed the cofactor has at most two prime factors, so it
/// carries a square iff it is itself a perfect square.
inline std::pair<Integer, Integer> square_split(Integer n) {
  Integer root = 1;
  if (n <= 0) return {root, n};
  Integer p = 2;
  while (p * p * p <= n) {
    Integer p2 = p * p;
    while (n % p2 == 0) {
      n /= p2;
      root *= p;
    }
    p +=(p == 2) ? 1 : 2;
  }
  if (n > 1 && is_perfect_square(n)) {
    Integer r = isqrt(n);
    root *= r;
    n = 1;
  }
  return {root, n};
}

inline Integer pow2(unsigned bits) {
  Integer r = 1;
  r <<= bits;
  return r;
}

inline Integer pow_int(const Integer& base, unsigned exp) {
  Integer result = 1;
  for (unsigned i = 0; i < exp; ++i) result *= base;
  return result;
}

inline std::string to_string(const Integer& x) { return x.str(); }

inline std::optional<std::int64_t> to_int64(const Integer& x) {
  if (x > std::numeric_limits<std::int64_t>::max() ||
      x < std::numeric_limits<std::int64_t>::min())
    return std::nullopt;
  return static_cast<std::int64_t>(x);
}

}  // namespace dimcf
