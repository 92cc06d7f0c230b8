#pragma once

#include <optional>
#include <string>
#include <utility>
#include <variant>

#include "dimcf/error.hpp"
#include "dimcf/integer.hpp"
#include "dimcf/precision_real.hpp"
#include "dimcf/rational.hpp"
#include "dimcf/surd.hpp"

namespace dimcf {

enum class Ordering { Less, Equal, Greater };

constexpr std::string_view to_string(Ordering o) {
  switch (o) {
    case Ordering::Less: return "less";
    case Ordering::Equal: return "equal";
    case Ordering::Greater: return "greater";
  }
  return "?";
}

/// Rational | QuadraticSurd | PrecisionReal.
///
/// Arithmetic between rationals and surds over one radicand stays exact;
/// anything else degrades to a PrecisionReal. A PrecisionReal whose tracked
/// linear form collapses to a constant is turned back into a Rational.
class RealValue {
 public:
  using Variant = std::variant<Rational, QuadraticSurd, PrecisionReal>;

  RealValue() : v_(Rational(0)) {}
  RealValue(int x) : v_(Rational(x)) {}                  // NOLINT
  RealValue(Rational x) : v_(std::move(x)) {}             // NOLINT
  RealValue(QuadraticSurd x) : v_(std::move(x)) {}        // NOLINT
  RealValue(PrecisionReal x) : v_(std::move(x)) {}        // NOLINT
  RealValue(const ExactQuadratic& x) {                    // NOLINT
    if (const auto* r = std::get_if<Rational>(&x)) {
      v_ = *r;
    } else {
      v_ = std::get<QuadraticSurd>(x);
    }
  }

  bool is_rational() const { return std::holds_alternative<Rational>(v_); }
  bool is_surd() const { return std::holds_alternative<QuadraticSurd>(v_); }
  bool is_precision() const { return std::holds_alternative<PrecisionReal>(v_); }
  bool is_exact() const { return !is_precision(); }

  const Rational& rational() const { return std::get<Rational>(v_); }
  const QuadraticSurd& surd() const { return std::get<QuadraticSurd>(v_); }
  const PrecisionReal& precision() const { return std::get<PrecisionReal>(v_); }
  const Variant& variant() const { return v_; }

  /// Exact value as an element of Q(sqrt(d)); std::nullopt for PrecisionReal.
  std::optional<ExactQuadratic> exact() const {
    if (is_rational()) return ExactQuadratic(rational());
    if (is_surd()) return ExactQuadratic(surd());
    return std::nullopt;
  }

  /// Radicand of a surd, 0 for a rational.
  std::optional<Integer> field() const {
    if (is_rational()) return Integer(0);
    if (is_surd()) return surd().d();
    return std::nullopt;
  }

  /// The value as an interval real; exact values get the default ceiling.
  PrecisionReal to_precision(unsigned max_precision = PrecisionReal::kDefaultMaxPrecision) const {
    if (is_precision()) return precision();
    if (is_rational()) return PrecisionReal::exact(rational()).capped(max_precision);
    const auto& s = surd();
    return PrecisionReal::exact(Rational(s.a(), s.c())) +
           PrecisionReal::exact(Rational(s.b(), s.c())) *
               PrecisionReal::sqrt_of(s.d(), max_precision);
  }

  double to_double() const {
    if (is_rational()) return rational().to_double();
    if (is_surd()) return surd().to_double();
    return ((precision().low() + precision().high()) / Rational(2)).to_double();
  }

  /// Canonical text: `p/q`, `surd:(a+b*sqrt(d))/c`, or
  /// `interval:[lo,hi]~budget`.
  std::string str() const {
    if (is_rational()) return rational().str();
    if (is_surd()) return surd().str();
    const auto& p = precision();
    return "interval:[" + p.low().str() + "," + p.high().str() + "]~" +
           std::to_string(p.budget());
  }

  /// Exact structural equality (same variant, same canonical value).
  /// PrecisionReal values never compare equal here.
  friend bool operator==(const RealValue& x, const RealValue& y) {
    if (x.is_rational() && y.is_rational()) return x.rational() == y.rational();
    if (x.is_surd() && y.is_surd()) return x.surd() == y.surd();
    return false;
  }

 private:
  Variant v_;
};

/// (a + b*sqrt(d))/c in canonical form.
inline RealValue surd_normalize(const Integer& a, const Integer& b, const Integer& c,
                                const Integer& d) {
  return RealValue(QuadraticSurd::normalize(a, b, c, d));
}

namespace detail {

// Radicand shared by two exact operands (0 when both are rational).
inline std::optional<Integer> common_field(const RealValue& x, const RealValue& y) {
  auto fx = x.field();
  auto fy = y.field();
  if (!fx || !fy) return std::nullopt;
  if (*fx == 0) return *fy;
  if (*fy == 0 || *fx == *fy) return *fx;
  return std::nullopt;
}

inline RealValue collapse(PrecisionReal p) {
  if (const auto& f = p.linear_form(); f && f->is_constant()) return RealValue(f->constant);
  return RealValue(std::move(p));
}

}  // namespace detail

inline RealValue operator-(const RealValue& x) {
  if (auto e = x.exact()) return RealValue(quadratic::neg(*e, *x.field()));
  return RealValue(-x.precision());
}

inline RealValue operator+(const RealValue& x, const RealValue& y) {
  if (auto d = detail::common_field(x, y)) return quadratic::add(*x.exact(), *y.exact(), *d);
  return detail::collapse(x.to_precision() + y.to_precision());
}

inline RealValue operator-(const RealValue& x, const RealValue& y) {
  if (auto d = detail::common_field(x, y)) return quadratic::sub(*x.exact(), *y.exact(), *d);
  return detail::collapse(x.to_precision() - y.to_precision());
}

inline RealValue operator*(const RealValue& x, const RealValue& y) {
  if (auto d = detail::common_field(x, y)) return quadratic::mul(*x.exact(), *y.exact(), *d);
  return detail::collapse(x.to_precision() * y.to_precision());
}

inline RealValue operator/(const RealValue& x, const RealValue& y) {
  if (auto d = detail::common_field(x, y)) return quadratic::div(*x.exact(), *y.exact(), *d);
  PrecisionReal px = x.to_precision();
  PrecisionReal py = y.to_precision();
  const auto& fx = px.linear_form();
  const auto& fy = py.linear_form();
  if (fy && fy->is_constant() && fy->constant.is_zero())
    fail(ErrorKind::ZeroDenominator, "division by zero");
  if (fx && fy) {
    if (auto r = fx->ratio_to(*fy)) return RealValue(*r);
  }
  return detail::collapse(px / py);
}

/// Sign of an interval real, refining until the enclosure excludes zero.
/// Zero is reported only when the tracked linear form proves it.
inline int real_sign(const PrecisionReal& x) {
  if (const auto& f = x.linear_form(); f && f->is_constant()) return f->constant.sign();
  PrecisionReal cur = x;
  for (;;) {
    if (cur.low().sign() > 0) return 1;
    if (cur.high().sign() < 0) return -1;
    if (cur.budget() == 0)
      fail(ErrorKind::PrecisionExhausted, "sign undecided: enclosure [" + cur.low().str() + ", " +
                                              cur.high().str() + "] straddles zero");
    cur = cur.refined();
  }
}

inline int real_sign(const RealValue& x) {
  if (x.is_rational()) return x.rational().sign();
  if (x.is_surd()) return x.surd().sign();
  return real_sign(x.precision());
}

inline Ordering real_compare(const RealValue& x, const RealValue& y) {
  int s = real_sign(x - y);
  return s < 0 ? Ordering::Less : s > 0 ? Ordering::Greater : Ordering::Equal;
}

/// floor(x) together with the refined enclosure that decided it.
inline std::pair<Integer, PrecisionReal> floor_refined(const PrecisionReal& x) {
  if (const auto& f = x.linear_form(); f && f->is_constant()) return {f->constant.floor(), x};
  PrecisionReal cur = x;
  for (;;) {
    Integer fl = cur.low().floor();
    if (cur.high() < Rational(fl + 1)) return {fl, cur};
    if (cur.budget() == 0)
      fail(ErrorKind::PrecisionExhausted, "floor undecided: enclosure [" + cur.low().str() +
                                              ", " + cur.high().str() + "] straddles an integer");
    cur = cur.refined();
  }
}

inline Integer real_floor(const RealValue& x) {
  if (x.is_rational()) return x.rational().floor();
  if (x.is_surd()) return x.surd().floor();
  return floor_refined(x.precision()).first;
}

/// Enclosure of |x - r| from above, refined until it is below `bound` or the
/// budget runs out. Returns the final upper bound.
inline Rational distance_upper_bound(const RealValue& x, const Rational& r,
                                     const Rational& bound) {
  PrecisionReal cur = (x - RealValue(r)).to_precision();
  for (;;) {
    Rational up = max(cur.high().abs(), cur.low().abs());
    if (up < bound || cur.budget() == 0) return up;
    cur = cur.refined();
  }
}

}  // namespace dimcf
