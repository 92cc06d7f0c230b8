#pragma once

#include <cstddef>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "dimcf/error.hpp"
#include "dimcf/integer.hpp"
#include "dimcf/matrix.hpp"
#include "dimcf/rational.hpp"
#include "dimcf/real_value.hpp"

namespace dimcf {

/// Partial quotients a0; a1, a2, ... of a regular continued fraction.
///
/// A periodic expansion stores a minimal preperiod and a minimal period. A
/// finite expansion (rational input) is canonical: it never ends in 1 unless
/// it is the single digit [1].
struct CFExpansion {
  std::vector<Integer> preperiod;
  std::optional<std::vector<Integer>> period;
  bool truncated = false;

  bool is_periodic() const { return period.has_value(); }
  bool is_finite() const { return !period && !truncated; }

  /// Number of digits available; unbounded for periodic expansions.
  std::size_t available() const {
    return period ? std::numeric_limits<std::size_t>::max() : preperiod.size();
  }

  Integer digit(std::size_t i) const {
    if (i < preperiod.size()) return preperiod[i];
    if (!period) fail(ErrorKind::NotEnoughDigits, "expansion has only " +
                                                      std::to_string(preperiod.size()) + " digits",
                      i);
    return (*period)[(i - preperiod.size()) % period->size()];
  }

  std::vector<Integer> digits(std::size_t count) const {
    if (count > available())
      fail(ErrorKind::NotEnoughDigits, "requested " + std::to_string(count) + " digits, have " +
                                           std::to_string(available()));
    std::vector<Integer> out;
    out.reserve(count);
    for (std::size_t i = 0; i < count; ++i) out.push_back(digit(i));
    return out;
  }

  friend bool operator==(const CFExpansion&, const CFExpansion&) = default;
};

/// A convergent p/q together with the partial product
/// (0 1; 1 a0)(0 1; 1 a1)...(0 1; 1 ai) whose columns are (q_{i-1}, p_{i-1})
/// and (q_i, p_i).
struct Convergent {
  Integer p;
  Integer q;
  UniModMatrix t_product;
};

enum class Decision { Yes, No, Unknown };

constexpr std::string_view to_string(Decision d) {
  switch (d) {
    case Decision::Yes: return "yes";
    case Decision::No: return "no";
    case Decision::Unknown: return "unknown";
  }
  return "?";
}

struct DecisionReport {
  Decision decision;
  std::string diagnostic;
};

namespace detail {

inline CFExpansion expand_surd(QuadraticSurd x, std::size_t max_depth,
                               std::vector<Integer> prefix = {}) {
  CFExpansion e;
  e.preperiod = std::move(prefix);
  std::map<std::tuple<Integer, Integer, Integer>, std::size_t> seen;
  const Integer d = x.d();
  for (;;) {
    auto key = std::make_tuple(x.a(), x.b(), x.c());
    if (auto it = seen.find(key); it != seen.end()) {
      auto start = e.preperiod.begin() + static_cast<std::ptrdiff_t>(it->second);
      e.period = std::vector<Integer>(start, e.preperiod.end());
      e.preperiod.erase(start, e.preperiod.end());
      return e;
    }
    if (e.preperiod.size() >= max_depth) {
      e.truncated = true;
      return e;
    }
    // a0 stays in the preperiod, so the initial state is not recorded.
    if (!e.preperiod.empty()) seen.emplace(std::move(key), e.preperiod.size());
    Integer a = x.floor();
    e.preperiod.push_back(a);
    // x - a is irrational, so its reciprocal is again a surd over d.
    auto frac = quadratic::sub(ExactQuadratic(x), ExactQuadratic(Rational(a)), d);
    x = std::get<QuadraticSurd>(quadratic::reciprocal(frac, d));
  }
}

inline void canonicalize_finite(std::vector<Integer>& digits) {
  if (digits.size() > 1 && digits.back() == 1) {
    digits.pop_back();
    digits.back() += 1;
  }
}

}  // namespace detail

/// Regular continued fraction expansion of x.
///
/// Rationals give a finite canonical expansion, quadratic surds a minimal
/// preperiod and period (found by exact repetition of the Gauss-map state),
/// and interval reals a digit prefix with `truncated` set. Hitting
/// `max_depth` first also sets `truncated`.
inline CFExpansion cf_expand(const RealValue& x, std::size_t max_depth) {
  if (x.is_surd()) return detail::expand_surd(x.surd(), max_depth);
  CFExpansion e;
  RealValue cur = x;
  for (;;) {
    if (e.preperiod.size() >= max_depth) {
      e.truncated = true;
      return e;
    }
    Integer a;
    RealValue frac;
    if (cur.is_precision()) {
      std::pair<Integer, PrecisionReal> fl{0, cur.precision()};
      try {
        fl = floor_refined(cur.precision());
      } catch (const Error& err) {
        if (err.kind() != ErrorKind::PrecisionExhausted || e.preperiod.empty()) throw;
        e.truncated = true;
        return e;
      }
      a = fl.first;
      frac = RealValue(fl.second) - RealValue(Rational(a));
    } else {
      a = cur.rational().floor();
      frac = cur - RealValue(Rational(a));
    }
    e.preperiod.push_back(a);
    if (frac.is_rational() && frac.rational().is_zero()) {
      detail::canonicalize_finite(e.preperiod);
      return e;
    }
    try {
      cur = RealValue(1) / frac;
    } catch (const Error& err) {
      if (err.kind() != ErrorKind::PrecisionExhausted) throw;
      e.truncated = true;
      return e;
    }
  }
}

/// The exact value of a finite digit list, evaluated bottom-up.
inline Rational cf_evaluate(const std::vector<Integer>& digits) {
  if (digits.empty()) fail(ErrorKind::NotEnoughDigits, "empty continued fraction");
  Rational acc(digits.back());
  for (auto it = digits.rbegin() + 1; it != digits.rend(); ++it)
    acc = Rational(*it) + acc.reciprocal();
  return acc;
}

/// Convergents 0..k with their partial products.
inline std::vector<Convergent> cf_convergents(const CFExpansion& e, std::size_t k) {
  auto digits = e.digits(k + 1);
  std::vector<Convergent> out;
  out.reserve(k + 1);
  Integer p_prev = 1, q_prev = 0, p_prev2 = 0, q_prev2 = 1;
  UniModMatrix t = UniModMatrix::identity(2);
  for (const auto& a : digits) {
    Integer p = a * p_prev + p_prev2;
    Integer q = a * q_prev + q_prev2;
    t = t * UniModMatrix::elementary(a);
    out.push_back({p, q, t});
    p_prev2 = std::exchange(p_prev, p);
    q_prev2 = std::exchange(q_prev, q);
  }
  return out;
}

/// Ordered product (0 1; 1 a0)...(0 1; 1 ak); the identity for no factors.
inline UniModMatrix product_of_factors(const std::vector<Integer>& digits) {
  UniModMatrix t = UniModMatrix::identity(2);
  for (const auto& a : digits) t = t * UniModMatrix::elementary(a);
  return t;
}

/// True when `b` is a cyclic rotation of `a`.
inline bool is_rotation(const std::vector<Integer>& a, const std::vector<Integer>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t shift = 0; shift < a.size(); ++shift) {
    bool match = true;
    for (std::size_t i = 0; i < a.size() && match; ++i)
      match = a[(i + shift) % a.size()] == b[i];
    if (match) return true;
  }
  return a.empty();
}

/// Length of the longest common tail of two digit prefixes over all offset
/// pairs, together with the offsets achieving it.
struct TailMatch {
  std::size_t length = 0;
  std::size_t offset_x = 0;
  std::size_t offset_y = 0;
};

inline TailMatch longest_common_tail(const std::vector<Integer>& x, const std::vector<Integer>& y) {
  TailMatch best;
  for (std::size_t i = 0; i < x.size(); ++i)
    for (std::size_t j = 0; j < y.size(); ++j) {
      std::size_t len = std::min(x.size() - i, y.size() - j);
      bool ok = true;
      for (std::size_t t = 0; t < len && ok; ++t) ok = x[i + t] == y[j + t];
      if (ok && len > best.length) best = {len, i, j};
    }
  return best;
}

/// GL(2,Z)-equivalence of two reals.
///
/// Exact inputs are decided: all rationals form one class, a rational is never
/// equivalent to an irrational, surds over different radicands lie in different
/// fields, and surds over one radicand are equivalent iff their minimal
/// periods are cyclic rotations of each other. Interval inputs only yield
/// `unknown` (with the observed common-tail length), unless their difference
/// is provably zero.
inline DecisionReport gl2_equivalent(const RealValue& x, const RealValue& y,
                                     std::size_t depth_budget) {
  if (x.is_exact() && y.is_exact()) {
    if (x.is_rational() && y.is_rational()) return {Decision::Yes, "both rational"};
    if (x.is_rational() != y.is_rational()) return {Decision::No, "rational versus irrational"};
    if (x.surd().d() != y.surd().d())
      return {Decision::No, "different quadratic fields sqrt(" + x.surd().d().str() + ") and sqrt(" +
                                y.surd().d().str() + ")"};
    auto ex = detail::expand_surd(x.surd(), std::numeric_limits<std::size_t>::max());
    auto ey = detail::expand_surd(y.surd(), std::numeric_limits<std::size_t>::max());
    if (is_rotation(*ex.period, *ey.period))
      return {Decision::Yes, "periods are cyclic rotations of each other"};
    return {Decision::No, "period cycles differ"};
  }
  try {
    auto diff = x - y;
    if (diff.is_rational() && diff.rational().is_zero()) return {Decision::Yes, "identical values"};
  } catch (const Error&) {
  }
  std::string note;
  auto prefix = [&](const RealValue& v, const char* name) -> std::vector<Integer> {
    try {
      return cf_expand(v, depth_budget).preperiod;
    } catch (const Error& err) {
      note += std::string(name) + ": " + err.what() + "; ";
      return {};
    }
  };
  auto dx = prefix(x, "x");
  auto dy = prefix(y, "y");
  auto tail = longest_common_tail(dx, dy);
  note += "digits compared " + std::to_string(dx.size()) + "/" + std::to_string(dy.size()) +
          ", longest common tail " + std::to_string(tail.length);
  return {Decision::Unknown, note};
}

/// (a x + b)/(c x + d).
inline RealValue mobius_apply(const UniModMatrix& m, const RealValue& x) {
  if (m.n() != 2) fail(ErrorKind::DimensionMismatch, "Mobius action needs a 2x2 matrix");
  RealValue den = RealValue(Rational(m.c())) * x + RealValue(Rational(m.d()));
  if (den.is_rational() && den.rational().is_zero())
    fail(ErrorKind::PoleAtInput, "c*x + d vanishes at " + x.str());
  RealValue num = RealValue(Rational(m.a())) * x + RealValue(Rational(m.b()));
  return num / den;
}

/// Digits [a0, ..., ak] with (0 1; 1 a0)...(0 1; 1 ak) = m.
///
/// The factorization follows the Euclidean algorithm on the columns and is
/// minimal: a0 >= 0, interior digits >= 1, and a final 0 only when parity
/// requires it (the factor count is even iff det m = +1). With `pad_parity`
/// the result is a non-empty list of even length; the identity becomes
/// [0, 0] and determinant -1 inputs are rejected.
inline std::vector<Integer> factor_unimodular(const UniModMatrix& m, bool pad_parity = false) {
  if (m.n() != 2) fail(ErrorKind::NotFactorable, "only 2x2 matrices factor into (0 1; 1 a)");
  if (!m.matrix().all_non_negative()) fail(ErrorKind::NotFactorable, "negative entry in " + m.str());
  if (pad_parity && m.det() == -1)
    fail(ErrorKind::NotFactorable, "an even factor count forces determinant +1");
  // Reduce w = m (det +1) or m*(0 1; 1 0) (det -1) to the identity by
  // column operations w <- w L^-k or w R^-k, recording the word in L, R.
  Integer x = m.a(), y = m.b(), z = m.c(), w = m.d();
  if (m.det() == -1) {
    std::swap(x, y);
    std::swap(z, w);
  }
  struct Block {
    bool is_l;
    Integer count;
  };
  std::vector<Block> reversed;
  while (!(x == 1 && y == 0 && z == 0 && w == 1)) {
    if (x >= y && z >= w) {
      // First column dominates: strip L = (1 0; 1 1) from the right.
      Integer k = y > 0 ? x / y : z / w;
      if (y > 0 && w > 0) k = std::min(x / y, z / w);
      if (k == 0) fail(ErrorKind::NotFactorable, "no Euclidean step for " + m.str());
      x -= k * y;
      z -= k * w;
      reversed.push_back({true, k});
    } else if (y >= x && w >= z) {
      // Second column dominates: strip R = (1 1; 0 1).
      Integer k = x > 0 ? y / x : w / z;
      if (x > 0 && z > 0) k = std::min(y / x, w / z);
      if (k == 0) fail(ErrorKind::NotFactorable, "no Euclidean step for " + m.str());
      y -= k * x;
      w -= k * z;
      reversed.push_back({false, k});
    } else {
      fail(ErrorKind::NotFactorable, "no Euclidean step for " + m.str());
    }
  }
  // The word reads L^a0 R^a1 L^a2 ... from the left; T(a0) T(a1) = L^a0 R^a1.
  std::vector<Block> word;
  for (auto it = reversed.rbegin(); it != reversed.rend(); ++it) {
    if (!word.empty() && word.back().is_l == it->is_l) {
      word.back().count += it->count;
    } else {
      word.push_back(*it);
    }
  }
  std::vector<Integer> digits;
  if (!word.empty() && !word.front().is_l) digits.push_back(0);
  for (const auto& b : word) digits.push_back(b.count);
  bool want_even = m.det() == 1;
  if ((digits.size() % 2 == 0) != want_even) digits.push_back(0);
  if (pad_parity && digits.empty()) digits = {0, 0};
  return digits;
}

}  // namespace dimcf
