#pragma once

#include <cmath>
#include <string>
#include <variant>

#include "dimcf/error.hpp"
#include "dimcf/integer.hpp"
#include "dimcf/rational.hpp"

namespace dimcf {

class QuadraticSurd;

/// Either a rational or an irrational element of Q(sqrt(d)).
using ExactQuadratic = std::variant<Rational, QuadraticSurd>;

/// The irrational number (a + b*sqrt(d))/c in canonical form:
/// c > 0, d > 1 squarefree, b != 0 and gcd(a, b, c) = 1.
///
/// Canonical forms are unique, so equality is structural.
class QuadraticSurd {
 public:
  const Integer& a() const { return a_; }
  const Integer& b() const { return b_; }
  const Integer& c() const { return c_; }
  const Integer& d() const { return d_; }

  /// Canonicalizes (a + b*sqrt(d))/c. Collapses to a Rational when b = 0 or
  /// d is a perfect square.
  static ExactQuadratic normalize(Integer a, Integer b, Integer c, Integer d) {
    if (c == 0) fail(ErrorKind::ZeroDenominator, "surd with zero denominator");
    if (d < 0) fail(ErrorKind::NegativeRadicand, "surd with negative radicand");
    if (b == 0 || d == 0) return Rational(a, c);
    auto [root, core] = square_split(d);
    b *= root;
    if (core == 1) return Rational(a + b, c);
    if (c < 0) {
      a = -a;
      b = -b;
      c = -c;
    }
    Integer g = gcd(gcd(abs(a), abs(b)), c);
    if (g > 1) {
      a /= g;
      b /= g;
      c /= g;
    }
    return QuadraticSurd(std::move(a), std::move(b), std::move(c), std::move(core));
  }

  /// Sign of the (irrational, hence non-zero) value.
  int sign() const {
    int sa = a_.sign();
    int sb = b_.sign();
    if (sa == 0 || sa == sb) return sb;
    // a and b*sqrt(d) have opposite signs; the larger magnitude wins.
    return a_ * a_ > b_ * b_ * d_ ? sa : sb;
  }

  Integer floor() const {
    // floor(b*sqrt(d)) is exact because b^2 d is never a perfect square.
    Integer s = isqrt(b_ * b_ * d_);
    Integer fb = b_ > 0 ? s : Integer(-s - 1);
    // a + b*sqrt(d) lies strictly inside (a + fb, a + fb + 1).
    return floor_div(a_ + fb, c_);
  }

  QuadraticSurd operator-() const { return QuadraticSurd(-a_, -b_, c_, d_); }

  /// (a - b*sqrt(d))/c, the Galois conjugate.
  QuadraticSurd conjugate() const { return QuadraticSurd(a_, -b_, c_, d_); }

  std::string str() const {
    std::string s = "surd:(";
    if (a_ != 0) s += a_.str();
    if (b_ < 0) {
      s += "-";
    } else if (a_ != 0) {
      s += "+";
    }
    if (abs(b_) != 1) s += abs(b_).str() + "*";
    s += "sqrt(" + d_.str() + "))";
    if (c_ != 1) s += "/" + c_.str();
    return s;
  }

  double to_double() const {
    return (a_.convert_to<double>() +
            b_.convert_to<double>() * std::sqrt(d_.convert_to<double>())) /
           c_.convert_to<double>();
  }

  friend bool operator==(const QuadraticSurd&, const QuadraticSurd&) = default;

 private:
  QuadraticSurd(Integer a, Integer b, Integer c, Integer d)
      : a_(std::move(a)), b_(std::move(b)), c_(std::move(c)), d_(std::move(d)) {}

  Integer a_, b_, c_, d_;
};

namespace detail {

// Unnormalized element (a + b*sqrt(d))/c of Q(sqrt(d)) used for field
// arithmetic before canonicalization.
struct QuadElem {
  Integer a, b, c;
};

inline QuadElem as_elem(const ExactQuadratic& x) {
  if (const auto* r = std::get_if<Rational>(&x)) return {r->num(), 0, r->den()};
  const auto& s = std::get<QuadraticSurd>(x);
  return {s.a(), s.b(), s.c()};
}

}  // namespace detail

/// Field operations inside Q(sqrt(d)); both operands must live in that field.
namespace quadratic {

inline ExactQuadratic add(const ExactQuadratic& x, const ExactQuadratic& y,
                          const Integer& d) {
  auto p = detail::as_elem(x);
  auto q = detail::as_elem(y);
  return QuadraticSurd::normalize(p.a * q.c + q.a * p.c, p.b * q.c + q.b * p.c,
                                  p.c * q.c, d);
}

inline ExactQuadratic neg(const ExactQuadratic& x, const Integer& d) {
  auto p = detail::as_elem(x);
  return QuadraticSurd::normalize(-p.a, -p.b, p.c, d);
}

inline ExactQuadratic sub(const ExactQuadratic& x, const ExactQuadratic& y,
                          const Integer& d) {
  return add(x, neg(y, d), d);
}

inline ExactQuadratic mul(const ExactQuadratic& x, const ExactQuadratic& y,
                          const Integer& d) {
  auto p = detail::as_elem(x);
  auto q = detail::as_elem(y);
  return QuadraticSurd::normalize(p.a * q.a + p.b * q.b * d, p.a * q.b + p.b * q.a,
                                  p.c * q.c, d);
}

inline ExactQuadratic reciprocal(const ExactQuadratic& x, const Integer& d) {
  auto p = detail::as_elem(x);
  // c/(a + b sqrt d) = c (a - b sqrt d) / (a^2 - b^2 d)
  Integer norm = p.a * p.a - p.b * p.b * d;
  if (norm == 0) fail(ErrorKind::ZeroDenominator, "reciprocal of zero");
  return QuadraticSurd::normalize(p.c * p.a, -p.c * p.b, norm, d);
}

inline ExactQuadratic div(const ExactQuadratic& x, const ExactQuadratic& y,
                          const Integer& d) {
  return mul(x, reciprocal(y, d), d);
}

}  // namespace quadratic

}  // namespace dimcf
