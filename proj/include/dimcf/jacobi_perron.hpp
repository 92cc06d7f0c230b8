#pragma once

#include <algorithm>
#include <cstddef>
#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "dimcf/error.hpp"
#include "dimcf/integer.hpp"
#include "dimcf/matrix.hpp"
#include "dimcf/real_value.hpp"

namespace dimcf {

/// Digits b1..b_{n-1} produced by one Jacobi-Perron step.
struct JPDigitVector {
  std::vector<Integer> digits;

  friend bool operator==(const JPDigitVector&, const JPDigitVector&) = default;
};

struct JPExpansion {
  std::size_t n = 2;
  std::vector<JPDigitVector> steps;
  bool terminated = false;  // a degenerate step ended the expansion
  bool truncated = false;   // max_depth reached first
};

struct JPStep {
  JPDigitVector b;
  std::vector<RealValue> next;
};

/// Product of the step matrices over the first k digit vectors.
struct JPConvergent {
  UniModMatrix a;
  std::size_t k = 0;
};

namespace detail {

struct JPSplit {
  JPDigitVector b;
  std::vector<RealValue> frac;
};

// Integer and fractional parts of every coordinate.
inline JPSplit jp_split(const std::vector<RealValue>& theta) {
  JPSplit out;
  out.b.digits.reserve(theta.size());
  out.frac.reserve(theta.size());
  for (const auto& t : theta) {
    if (t.is_precision()) {
      auto [fl, refined] = floor_refined(t.precision());
      out.frac.push_back(RealValue(refined) - RealValue(Rational(fl)));
      out.b.digits.push_back(std::move(fl));
    } else {
      Integer fl = real_floor(t);
      out.frac.push_back(t - RealValue(Rational(fl)));
      out.b.digits.push_back(std::move(fl));
    }
  }
  return out;
}

inline bool is_exact_zero(const RealValue& x) {
  return x.is_rational() && x.rational().is_zero();
}

}  // namespace detail

/// One step of the Jacobi-Perron map: b_i = floor(theta_i), f_i = theta_i - b_i
/// and theta' = (f_2/f_1, ..., f_{n-1}/f_1, 1/f_1).
///
/// Throws DegenerateStep when f_1 = 0.
inline JPStep jp_step(const std::vector<RealValue>& theta) {
  if (theta.empty()) fail(ErrorKind::DimensionMismatch, "Jacobi-Perron needs n >= 2");
  auto split = detail::jp_split(theta);
  const RealValue& f1 = split.frac.front();
  if (detail::is_exact_zero(f1))
    fail(ErrorKind::DegenerateStep, "first coordinate is an integer");
  JPStep out{std::move(split.b), {}};
  out.next.reserve(theta.size());
  for (std::size_t i = 1; i < split.frac.size(); ++i) out.next.push_back(split.frac[i] / f1);
  out.next.push_back(RealValue(1) / f1);
  return out;
}

namespace detail {

// Jacobi-Perron on enclosures. theta after k steps is the projective image
// of (1, theta) under the inverse of the k-th convergent matrix, so every
// step evaluates a flat integer combination of the input enclosures instead
// of a growing expression. Linear forms decide exact zeros.
class ProjectiveJP {
 public:
  explicit ProjectiveJP(const std::vector<RealValue>& theta) {
    std::size_t n = theta.size() + 1;
    for (const auto& t : theta) {
      PrecisionReal p = t.to_precision();
      precision_ = std::max(precision_, p.precision());
      forms_.push_back(p.linear_form());
      w_.push_back(std::move(p));
    }
    rows_.assign(n, std::vector<Integer>(n, Integer(0)));
    for (std::size_t i = 0; i < n; ++i) rows_[i][i] = 1;
  }

  // Digits of the current point, refining the inputs as needed. Sets
  // `degenerate` when the first fractional part is exactly zero.
  JPDigitVector digits(bool& degenerate) {
    for (;;) {
      if (auto d = try_digits(degenerate)) return *d;
      refine();
    }
  }

  void advance(const JPDigitVector& b) {
    std::size_t n = rows_.size();
    std::vector<std::vector<Integer>> next(n);
    for (std::size_t i = 1; i < n; ++i) {
      next[i - 1] = rows_[i];
      for (std::size_t m = 0; m < n; ++m) next[i - 1][m] -= b.digits[i - 1] * rows_[0][m];
    }
    next[n - 1] = rows_[0];
    rows_ = std::move(next);
  }

 private:
  Interval row_value(const std::vector<Integer>& row) const {
    Interval out{Rational(row[0]), Rational(row[0])};
    for (std::size_t m = 1; m < row.size(); ++m) {
      if (row[m] == 0) continue;
      Rational c(row[m]);
      Rational a = c * w_[m - 1].low(), b = c * w_[m - 1].high();
      out.lo += min(a, b);
      out.hi += max(a, b);
    }
    return out;
  }

  // True when sum(row[m] w_m) - k * sum(row0[m] w_m) is provably zero.
  bool exactly_zero(const std::vector<Integer>& row, const Integer& k) const {
    LinearForm acc;
    acc.constant = Rational(row[0] - k * rows_[0][0]);
    for (std::size_t m = 1; m < row.size(); ++m) {
      if (!forms_[m - 1]) return false;
      Integer c = row[m] - k * rows_[0][m];
      if (c != 0) acc = acc + forms_[m - 1]->scaled(Rational(c));
    }
    return acc.constant.is_zero() && acc.terms.empty();
  }

  std::optional<JPDigitVector> try_digits(bool& degenerate) const {
    Interval u0 = row_value(rows_[0]);
    int s = u0.lo.sign();
    if (s == 0 || s != u0.hi.sign()) return std::nullopt;
    JPDigitVector b;
    degenerate = false;
    for (std::size_t i = 1; i < rows_.size(); ++i) {
      Interval ui = row_value(rows_[i]);
      Rational q[4] = {ui.lo / u0.lo, ui.lo / u0.hi, ui.hi / u0.lo, ui.hi / u0.hi};
      Rational lo = *std::min_element(q, q + 4), hi = *std::max_element(q, q + 4);
      Integer fl = lo.floor();
      if (lo > Rational(fl) && hi < Rational(fl + 1)) {
        b.digits.push_back(fl);
        continue;
      }
      // The enclosure touches an integer: settle it only if the value is
      // exactly that integer.
      Integer k = lo == Rational(fl) ? fl : fl + 1;
      if (hi >= Rational(k + 1) || !exactly_zero(rows_[i], k)) return std::nullopt;
      b.digits.push_back(k);
      if (i == 1) degenerate = true;
    }
    return b;
  }

  void refine() {
    if (precision_ >= std::numeric_limits<unsigned>::max() / 2) precision_ /= 2;
    precision_ *= 2;
    bool progressed = false;
    for (auto& p : w_)
      while (p.precision() < precision_ && p.budget() > 0) {
        p = p.refined();
        progressed = true;
      }
    if (!progressed) fail(ErrorKind::PrecisionExhausted, "digit undecided at the input precision");
  }

  std::vector<PrecisionReal> w_;
  std::vector<std::optional<LinearForm>> forms_;
  std::vector<std::vector<Integer>> rows_;
  unsigned precision_ = PrecisionReal::kInitialPrecision;
};

}  // namespace detail

/// Iterates the Jacobi-Perron map up to max_depth times.
///
/// A degenerate step records its digit vector and sets `terminated`.
/// PrecisionExhausted propagates with the step index reached.
inline JPExpansion jp_expand(std::vector<RealValue> theta, std::size_t max_depth) {
  if (theta.empty()) fail(ErrorKind::DimensionMismatch, "Jacobi-Perron needs n >= 2");
  JPExpansion e;
  e.n = theta.size() + 1;
  if (theta.size() == 1 && theta.front().is_exact()) {
    // Exact rational or surd arithmetic: the regular continued fraction.
    while (e.steps.size() < max_depth) {
      JPStep s;
      try {
        s = jp_step(theta);
      } catch (const Error& err) {
        if (err.kind() != ErrorKind::DegenerateStep) throw;
        e.steps.push_back({{real_floor(theta.front())}});
        e.terminated = true;
        return e;
      }
      e.steps.push_back(std::move(s.b));
      theta = std::move(s.next);
    }
    e.truncated = true;
    return e;
  }

  detail::ProjectiveJP state(theta);
  while (e.steps.size() < max_depth) {
    bool degenerate = false;
    JPDigitVector b;
    try {
      b = state.digits(degenerate);
    } catch (const Error& err) {
      if (err.kind() != ErrorKind::PrecisionExhausted) throw;
      fail(ErrorKind::PrecisionExhausted,
           "Jacobi-Perron step " + std::to_string(e.steps.size()) + ": " + err.what(),
           e.steps.size());
    }
    e.steps.push_back(b);
    if (degenerate) {
      e.terminated = true;
      return e;
    }
    state.advance(b);
  }
  e.truncated = true;
  return e;
}

/// The n x n step matrix: first row (0, ..., 0, 1), the identity on the
/// subdiagonal block and last column (1, b1, ..., b_{n-1}).
inline UniModMatrix jp_step_matrix(const JPDigitVector& b, std::size_t n) {
  if (n < 2 || b.digits.size() + 1 != n)
    fail(ErrorKind::DimensionMismatch, "step matrix of size " + std::to_string(n) + " needs " +
                                           std::to_string(n - 1) + " digits, got " +
                                           std::to_string(b.digits.size()));
  IntMatrix m(n, n);
  m(0, n - 1) = 1;
  for (std::size_t i = 1; i < n; ++i) {
    m(i, i - 1) = 1;
    m(i, n - 1) += b.digits[i - 1];
  }
  return UniModMatrix(std::move(m));
}

/// Ordered product of the first k step matrices; the identity at k = 0.
inline JPConvergent jp_convergents(const JPExpansion& e, std::size_t k) {
  if (k > e.steps.size())
    fail(ErrorKind::NotEnoughSteps, "requested step " + std::to_string(k) + " of " +
                                        std::to_string(e.steps.size()));
  UniModMatrix a = UniModMatrix::identity(e.n);
  for (std::size_t i = 0; i < k; ++i) a = a * jp_step_matrix(e.steps[i], e.n);
  return {std::move(a), k};
}

/// Ratio vector A_i/A_0 read off the image of (0, ..., 0, 1) (the last
/// column of the convergent matrix).
inline std::vector<Rational> jp_ratios(const JPConvergent& c) {
  std::size_t n = c.a.n();
  const Integer& lead = c.a(0, n - 1);
  if (lead == 0) fail(ErrorKind::ZeroLeadingEntry, "convergent column has leading entry 0", c.k);
  std::vector<Rational> out;
  out.reserve(n - 1);
  for (std::size_t i = 1; i < n; ++i) out.emplace_back(c.a(i, n - 1), lead);
  return out;
}

/// The rational approximation of theta after k steps.
inline std::vector<RealValue> jp_reconstruct(const JPExpansion& e, std::size_t k) {
  auto ratios = jp_ratios(jp_convergents(e, k));
  return {ratios.begin(), ratios.end()};
}

}  // namespace dimcf
