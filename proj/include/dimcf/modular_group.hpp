#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "dimcf/error.hpp"
#include "dimcf/integer.hpp"
#include "dimcf/matrix.hpp"
#include "dimcf/precision_real.hpp"
#include "dimcf/real_value.hpp"
#include "dimcf/regular_cf.hpp"

namespace dimcf {

enum class ElementClass { Elliptic, Parabolic, Hyperbolic };

constexpr std::string_view to_string(ElementClass c) {
  switch (c) {
    case ElementClass::Elliptic: return "elliptic";
    case ElementClass::Parabolic: return "parabolic";
    case ElementClass::Hyperbolic: return "hyperbolic";
  }
  return "?";
}

/// A point of the boundary R u {infinity}.
struct BoundaryPoint {
  std::optional<RealValue> value;  // empty means infinity

  static BoundaryPoint infinity() { return {}; }
  bool is_infinity() const { return !value.has_value(); }
  std::string str() const { return value ? value->str() : "infinity"; }
};

/// Level N of the principal congruence subgroup Gamma(N).
class CongruenceLevel {
 public:
  explicit CongruenceLevel(Integer n) : n_(std::move(n)) {
    if (n_ < 1) fail(ErrorKind::OutOfRange, "congruence level must be >= 1, got " + n_.str());
  }
  const Integer& n() const { return n_; }

 private:
  Integer n_;
};

struct GammaMembership {
  bool member = false;
  std::string diagnostic;

  explicit operator bool() const { return member; }
};

struct AuditRow {
  std::size_t k = 0;
  UniModMatrix t;
  bool member = false;
};

namespace detail {

inline void require_2x2(const UniModMatrix& g) {
  if (g.n() != 2) fail(ErrorKind::DimensionMismatch, "expected a 2x2 matrix");
}

}  // namespace detail

/// By |trace|, whatever the sign of the determinant.
inline ElementClass classify_element(const UniModMatrix& g) {
  detail::require_2x2(g);
  Integer t = abs(g.trace());
  if (t < 2) return ElementClass::Elliptic;
  if (t == 2) return ElementClass::Parabolic;
  return ElementClass::Hyperbolic;
}

/// Fixed points on the boundary: roots of c z^2 + (d - a) z - b = 0, plus
/// infinity when c = 0.
///
/// Elliptic means no real root here, so a det -1 matrix with |tr| < 2 still
/// has two boundary points.
inline std::vector<BoundaryPoint> fixed_points(const UniModMatrix& g) {
  detail::require_2x2(g);
  const Integer &a = g.a(), &b = g.b(), &c = g.c(), &d = g.d();
  if (b == 0 && c == 0 && a == d) fail(ErrorKind::IdentityInput, "+-identity fixes every point");
  Integer disc = (d - a) * (d - a) + 4 * b * c;
  if (disc < 0) fail(ErrorKind::EllipticInput, "no fixed point on the boundary");

  if (c == 0) {
    std::vector<BoundaryPoint> out{BoundaryPoint::infinity()};
    if (a != d) out.push_back({RealValue(Rational(b, d - a))});
    return out;
  }
  if (disc == 0) return {{RealValue(Rational(a - d, 2 * c))}};
  return {{surd_normalize(a - d, 1, 2 * c, disc)}, {surd_normalize(a - d, -1, 2 * c, disc)}};
}

/// Translation length 2 arccosh(|tr|/2) = 2 log((t + sqrt(t^2 - 4))/2),
/// refined to at least `bits` of precision.
inline PrecisionReal axis_length(const UniModMatrix& g, unsigned bits = 64,
                                 unsigned max_precision = PrecisionReal::kDefaultMaxPrecision) {
  detail::require_2x2(g);
  if (classify_element(g) != ElementClass::Hyperbolic)
    fail(ErrorKind::NotHyperbolic, "trace " + g.trace().str() + " is not hyperbolic");
  Integer t = abs(g.trace());
  PrecisionReal x = surd_normalize(t, 1, 2, t * t - 4).to_precision(max_precision);
  PrecisionReal len = PrecisionReal::exact(Rational(2)).capped(max_precision) * log(x);
  while (len.precision() < bits) len = len.refined();
  return len;
}

/// g == identity (mod N), for det g = +1.
/// Entrywise g = I mod N, with no condition on the determinant.
inline bool congruent_to_identity(const UniModMatrix& g, const CongruenceLevel& level) {
  detail::require_2x2(g);
  const Integer& n = level.n();
  auto divisible = [&](const Integer& x) { return x % n == 0; };
  return divisible(g.a() - 1) && divisible(g.b()) && divisible(g.c()) && divisible(g.d() - 1);
}

inline GammaMembership gamma_membership(const UniModMatrix& g, const CongruenceLevel& level) {
  detail::require_2x2(g);
  if (g.det() != 1) return {false, "determinant -1: not in SL(2,Z)"};
  bool member = congruent_to_identity(g, level);
  return {member, member ? "" : "not congruent to the identity mod " + level.n().str()};
}

/// Partial products T_k = T(a_0) ... T(a_k) for k < depth, each checked
/// entrywise against the identity mod N. T_0 has determinant -1, so the
/// determinant is not part of the test here.
inline std::vector<AuditRow> legendre_audit(const CFExpansion& e, const CongruenceLevel& level,
                                            std::size_t depth) {
  auto digits = e.digits(depth);
  std::vector<AuditRow> rows;
  rows.reserve(depth);
  UniModMatrix t = UniModMatrix::identity(2);
  for (std::size_t k = 0; k < depth; ++k) {
    t = t * UniModMatrix::elementary(digits[k]);
    rows.push_back({k, t, congruent_to_identity(t, level)});
  }
  return rows;
}

}  // namespace dimcf
