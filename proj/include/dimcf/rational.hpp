#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <compare>
#include <string>

#include "dimcf/error.hpp"
#include "dimcf/integer.hpp"

namespace dimcf {

/// Exact rational number, always stored reduced with a positive denominator.
class Rational {
 public:
  Rational() = default;
  Rational(int value) : value_(value) {}  // NOLINT(google-explicit-constructor)
  Rational(const Integer& value) : value_(value) {}  // NOLINT
  Rational(const Integer& num, const Integer& den) {
    if (den == 0) fail(ErrorKind::ZeroDenominator, "rational with zero denominator");
    value_ = den < 0 ? Backing(-num, -den) : Backing(num, den);
  }

  Integer num() const { return boost::multiprecision::numerator(value_); }
  Integer den() const { return boost::multiprecision::denominator(value_); }

  int sign() const { return value_.sign(); }
  bool is_zero() const { return value_.is_zero(); }
  bool is_integer() const { return den() == 1; }

  Integer floor() const { return floor_div(num(), den()); }
  Integer ceil() const { return ceil_div(num(), den()); }

  Rational abs() const { return sign() < 0 ? -*this : *this; }

  Rational reciprocal() const {
    if (is_zero()) fail(ErrorKind::ZeroDenominator, "reciprocal of zero");
    return Rational(den(), num());
  }

  Rational operator-() const { return Rational(Backing(-value_)); }

  Rational& operator+=(const Rational& o) { value_ += o.value_; return *this; }
  Rational& operator-=(const Rational& o) { value_ -= o.value_; return *this; }
  Rational& operator*=(const Rational& o) { value_ *= o.value_; return *this; }
  Rational& operator/=(const Rational& o) {
    if (o.is_zero()) fail(ErrorKind::ZeroDenominator, "division by zero");
    value_ /= o.value_;
    return *this;
  }

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

  friend bool operator==(const Rational& a, const Rational& b) {
    return a.value_ == b.value_;
  }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    if (a.value_ < b.value_) return std::strong_ordering::less;
    if (a.value_ > b.value_) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }

  /// `p/q`, or just `p` for integers.
  std::string str() const {
    if (is_integer()) return num().str();
    return num().str() + "/" + den().str();
  }

  /// Multiplies by 2^shift (shift may be negative).
  Rational ldexp(int shift) const {
    if (shift >= 0) return Rational(num() << shift, den());
    return Rational(num(), den() << (-shift));
  }

  double to_double() const { return value_.convert_to<double>(); }

 private:
  using Backing = boost::multiprecision::number<boost::multiprecision::rational_adaptor<
                                                    boost::multiprecision::cpp_int_backend<>>,
                                                boost::multiprecision::et_off>;
  explicit Rational(Backing v) : value_(std::move(v)) {}
  Backing value_;
};

inline Rational min(const Rational& a, const Rational& b) { return a < b ? a : b; }
inline Rational max(const Rational& a, const Rational& b) { return a < b ? b : a; }

/// Largest multiple of 2^-bits not above x.
inline Rational round_down(const Rational& x, unsigned bits) {
  return Rational(floor_div(x.num() << bits, x.den()), pow2(bits));
}

/// Smallest multiple of 2^-bits not below x.
inline Rational round_up(const Rational& x, unsigned bits) {
  return Rational(ceil_div(x.num() << bits, x.den()), pow2(bits));
}

/// Decimal rendering with `digits` fractional digits, rounded towards -inf
/// (`upward == false`) or +inf.
inline std::string to_decimal(const Rational& x, unsigned digits, bool upward = false) {
  Integer scale = pow_int(Integer(10), digits);
  Integer scaled = upward ? ceil_div(x.num() * scale, x.den())
                          : floor_div(x.num() * scale, x.den());
  bool negative = scaled < 0;
  std::string body = abs(scaled).str();
  if (digits > 0) {
    if (body.size() <= digits) body.insert(0, digits + 1 - body.size(), '0');
    body.insert(body.size() - digits, ".");
  }
  return negative ? "-" + body : body;
}

}  // namespace dimcf
