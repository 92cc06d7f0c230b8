#pragma once

#include <algorithm>
#include <climits>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <tuple>
#include <unordered_map>
#include <utility>
#include <vector>

#include "dimcf/error.hpp"
#include "dimcf/integer.hpp"
#include "dimcf/rational.hpp"

namespace dimcf {

struct Interval {
  Rational lo;
  Rational hi;

  Rational width() const { return hi - lo; }
  bool contains(const Rational& x) const { return lo <= x && x <= hi; }
};

/// Identity of an irrational building block inside a linear form.
///
/// Square roots of squarefree integers are keyed by value, so separately
/// constructed copies of sqrt(d) cancel. Every other leaf is keyed by the
/// address of its node.
struct LeafKey {
  enum class Kind { Sqrt, Opaque };
  Kind kind = Kind::Opaque;
  Integer radicand = 0;
  std::uintptr_t id = 0;

  static LeafKey sqrt(Integer d) { return {Kind::Sqrt, std::move(d), 0}; }
  static LeafKey opaque(const void* p) {
    return {Kind::Opaque, 0, reinterpret_cast<std::uintptr_t>(p)};
  }

  /// True when the leaf value is known exactly (a square root), so that a
  /// set of such leaves together with 1 is linearly independent over Q.
  bool is_exact() const { return kind == Kind::Sqrt; }

  friend bool operator<(const LeafKey& x, const LeafKey& y) {
    return std::tie(x.kind, x.radicand, x.id) < std::tie(y.kind, y.radicand, y.id);
  }
  friend bool operator==(const LeafKey& x, const LeafKey& y) {
    return x.kind == y.kind && x.radicand == y.radicand && x.id == y.id;
  }
};

/// constant + sum(coefficient * leaf), tracked alongside expressions that
/// stay affine in their leaves.
struct LinearForm {
  Rational constant;
  std::map<LeafKey, Rational> terms;

  bool is_constant() const { return terms.empty(); }

  LinearForm scaled(const Rational& s) const {
    LinearForm out;
    if (s.is_zero()) return out;
    out.constant = constant * s;
    for (const auto& [k, v] : terms) out.terms.emplace(k, v * s);
    return out;
  }

  friend LinearForm operator+(const LinearForm& x, const LinearForm& y) {
    LinearForm out = x;
    out.constant += y.constant;
    for (const auto& [k, v] : y.terms) {
      auto [it, inserted] = out.terms.emplace(k, v);
      if (!inserted) {
        it->second += v;
        if (it->second.is_zero()) out.terms.erase(it);
      }
    }
    return out;
  }

  friend LinearForm operator-(const LinearForm& x, const LinearForm& y) {
    return x + y.scaled(Rational(-1));
  }

  /// r with *this == r * other, when such a rational exists.
  std::optional<Rational> ratio_to(const LinearForm& other) const {
    std::optional<Rational> r;
    auto consider = [&](const Rational& mine, const Rational& theirs) -> bool {
      if (theirs.is_zero()) return mine.is_zero();
      Rational q = mine / theirs;
      if (r && *r != q) return false;
      r = q;
      return true;
    };
    if (!consider(constant, other.constant)) return std::nullopt;
    for (const auto& [k, v] : terms)
      if (!other.terms.contains(k)) return std::nullopt;
    for (const auto& [k, v] : other.terms) {
      auto it = terms.find(k);
      if (!consider(it == terms.end() ? Rational(0) : it->second, v)) return std::nullopt;
    }
    if (!r) return std::nullopt;  // other is identically zero
    return r;
  }
};

namespace detail {

inline constexpr unsigned kGuardBits = 24;

class Node;
using NodePtr = std::shared_ptr<const Node>;
using EvalCache = std::unordered_map<const Node*, std::optional<Interval>>;

/// Immutable expression node. `enclose(bits)` returns an interval containing
/// the exact value whose width shrinks as `bits` grows; std::nullopt means
/// the value is unbounded at this precision (a divisor straddles zero).
class Node {
 public:
  virtual ~Node() = default;

  std::optional<Interval> enclose(unsigned bits, EvalCache& cache) const {
    if (auto it = cache.find(this); it != cache.end()) return it->second;
    auto result = compute(bits, cache);
    cache.emplace(this, result);
    return result;
  }

 protected:
  virtual std::optional<Interval> compute(unsigned bits, EvalCache& cache) const = 0;
};

inline Interval outward(const Rational& lo, const Rational& hi, unsigned bits) {
  unsigned grid = bits + kGuardBits;
  return {round_down(lo, grid), round_up(hi, grid)};
}

class ConstNode final : public Node {
 public:
  explicit ConstNode(Rational v) : v_(std::move(v)) {}

 protected:
  std::optional<Interval> compute(unsigned, EvalCache&) const override {
    return Interval{v_, v_};
  }

 private:
  Rational v_;
};

/// A seed enclosure with no refinement source.
class FixedNode final : public Node {
 public:
  explicit FixedNode(Interval iv) : iv_(std::move(iv)) {}

 protected:
  std::optional<Interval> compute(unsigned, EvalCache&) const override { return iv_; }

 private:
  Interval iv_;
};

class SqrtNode final : public Node {
 public:
  explicit SqrtNode(Integer d) : d_(std::move(d)) {}

 protected:
  std::optional<Interval> compute(unsigned bits, EvalCache&) const override {
    Integer scaled = d_ << (2 * bits);
    Integer r = isqrt(scaled);
    Rational lo(r, pow2(bits));
    if (r * r == scaled) return Interval{lo, lo};
    return Interval{lo, Rational(r + 1, pow2(bits))};
  }

 private:
  Integer d_;
};

/// Sign of the integer polynomial (coefficients lowest degree first) at x.
inline int poly_sign(const std::vector<Integer>& poly, const Rational& x) {
  Rational acc = 0;
  for (auto it = poly.rbegin(); it != poly.rend(); ++it) acc = acc * x + Rational(*it);
  return acc.sign();
}

/// The unique root of an integer polynomial inside an isolating interval,
/// refined by bisection.
class RootNode final : public Node {
 public:
  RootNode(std::vector<Integer> poly, Interval isolating)
      : poly_(std::move(poly)), iv_(std::move(isolating)) {}

 protected:
  std::optional<Interval> compute(unsigned bits, EvalCache&) const override {
    Rational lo = iv_.lo;
    Rational hi = iv_.hi;
    int s_lo = poly_sign(poly_, lo);
    if (s_lo == 0) return Interval{lo, lo};
    if (poly_sign(poly_, hi) == 0) return Interval{hi, hi};
    Rational target = Rational(1).ldexp(-static_cast<int>(bits));
    while (hi - lo > target) {
      Rational mid = (lo + hi) / Rational(2);
      int s = poly_sign(poly_, mid);
      if (s == 0) return Interval{mid, mid};
      if (s == s_lo) {
        lo = mid;
      } else {
        hi = mid;
      }
    }
    return Interval{lo, hi};
  }

 private:
  std::vector<Integer> poly_;
  Interval iv_;
};

enum class UnaryOp { Neg, Log };
enum class BinaryOp { Add, Sub, Mul, Div };

/// atanh(y) for 0 <= y < 1/2, enclosed to about 2^-bits.
inline Interval atanh_enclosure(const Rational& y, unsigned bits) {
  unsigned grid = bits + kGuardBits + 16;
  Rational eps = Rational(1).ldexp(-static_cast<int>(grid));
  Rational y2_lo = round_down(y * y, grid);
  Rational y2_hi = round_up(y * y, grid);
  Rational pw_lo = round_down(y, grid);
  Rational pw_hi = round_up(y, grid);
  Rational sum_lo = 0;
  Rational sum_hi = 0;
  for (unsigned j = 0;; ++j) {
    Integer denom = 2 * j + 1;
    sum_lo += round_down(pw_lo / Rational(denom), grid);
    sum_hi += round_up(pw_hi / Rational(denom), grid);
    pw_lo = round_down(pw_lo * y2_lo, grid);
    pw_hi = round_up(pw_hi * y2_hi, grid);
    if (pw_hi <= eps) {
      // Remaining terms sum to at most pw/(2j+3) * 1/(1 - y^2) <= 2 pw.
      sum_hi += round_up(pw_hi * Rational(2), grid);
      break;
    }
  }
  return {sum_lo, sum_hi};
}

/// Natural logarithm of a positive rational, enclosed to about 2^-bits.
inline Interval log_enclosure(const Rational& x, unsigned bits) {
  if (x.sign() <= 0) fail(ErrorKind::OutOfRange, "logarithm of a non-positive value");
  // x = m * 2^e with m in [1, 2)
  long e = static_cast<long>(boost::multiprecision::msb(x.num())) -
           static_cast<long>(boost::multiprecision::msb(x.den()));
  Rational m = x.ldexp(static_cast<int>(-e));
  if (m < Rational(1)) {
    m = m.ldexp(1);
    --e;
  } else if (m >= Rational(2)) {
    m = m.ldexp(-1);
    ++e;
  }
  unsigned work = bits + 8 + static_cast<unsigned>(boost::multiprecision::msb(Integer(std::abs(e) + 1)));
  Interval core = atanh_enclosure((m - Rational(1)) / (m + Rational(1)), work);
  Interval ln2 = atanh_enclosure(Rational(1, 3), work);
  Rational lo = Rational(2) * core.lo;
  Rational hi = Rational(2) * core.hi;
  if (e >= 0) {
    lo += Rational(Integer(2 * e)) * ln2.lo;
    hi += Rational(Integer(2 * e)) * ln2.hi;
  } else {
    lo += Rational(Integer(2 * e)) * ln2.hi;
    hi += Rational(Integer(2 * e)) * ln2.lo;
  }
  return {lo, hi};
}

class UnaryNode final : public Node {
 public:
  UnaryNode(UnaryOp op, NodePtr child) : op_(op), child_(std::move(child)) {}

 protected:
  std::optional<Interval> compute(unsigned bits, EvalCache& cache) const override {
    auto c = child_->enclose(bits, cache);
    if (!c) return std::nullopt;
    switch (op_) {
      case UnaryOp::Neg:
        return Interval{-c->hi, -c->lo};
      case UnaryOp::Log: {
        if (c->lo.sign() <= 0) return std::nullopt;
        auto lo = log_enclosure(c->lo, bits);
        auto hi = log_enclosure(c->hi, bits);
        return outward(lo.lo, hi.hi, bits);
      }
    }
    return std::nullopt;
  }

 private:
  UnaryOp op_;
  NodePtr child_;
};

class BinaryNode final : public Node {
 public:
  BinaryNode(BinaryOp op, NodePtr lhs, NodePtr rhs)
      : op_(op), lhs_(std::move(lhs)), rhs_(std::move(rhs)) {}

 protected:
  std::optional<Interval> compute(unsigned bits, EvalCache& cache) const override {
    auto x = lhs_->enclose(bits, cache);
    if (!x) return std::nullopt;
    auto y = rhs_->enclose(bits, cache);
    if (!y) return std::nullopt;
    switch (op_) {
      case BinaryOp::Add:
        return outward(x->lo + y->lo, x->hi + y->hi, bits);
      case BinaryOp::Sub:
        return outward(x->lo - y->hi, x->hi - y->lo, bits);
      case BinaryOp::Mul:
        return product(*x, *y, bits);
      case BinaryOp::Div: {
        if (y->lo.sign() <= 0 && y->hi.sign() >= 0) return std::nullopt;
        return product(*x, Interval{y->hi.reciprocal(), y->lo.reciprocal()}, bits);
      }
    }
    return std::nullopt;
  }

 private:
  static Interval product(const Interval& x, const Interval& y, unsigned bits) {
    Rational p[4] = {x.lo * y.lo, x.lo * y.hi, x.hi * y.lo, x.hi * y.hi};
    Rational lo = *std::min_element(p, p + 4);
    Rational hi = *std::max_element(p, p + 4);
    return outward(lo, hi, bits);
  }

  BinaryOp op_;
  NodePtr lhs_;
  NodePtr rhs_;
};

}  // namespace detail

/// A real number known through a shrinking rational enclosure [low, high].
///
/// Refinement re-evaluates the underlying expression at a higher working
/// precision; `budget()` is the number of precision bits still available and
/// strictly decreases with every refinement. The enclosure never widens.
class PrecisionReal {
 public:
  static constexpr unsigned kDefaultMaxPrecision = 1024;
  static constexpr unsigned kInitialPrecision = 64;

  /// A fixed enclosure with no refinement source; refinement only spends
  /// budget.
  static PrecisionReal seed(Interval iv, unsigned budget) {
    if (iv.hi < iv.lo) fail(ErrorKind::OutOfRange, "interval with low > high");
    auto node = std::make_shared<detail::FixedNode>(iv);
    LinearForm form;
    form.terms.emplace(LeafKey::opaque(node.get()), Rational(1));
    return PrecisionReal(node, std::move(iv), 0, budget, std::move(form));
  }

  /// A truncated decimal: `1.414` denotes the enclosure [1.414, 1.415]
  /// (mirrored for negative values).
  static PrecisionReal from_decimal(std::string_view text, unsigned budget) {
    bool negative = !text.empty() && text.front() == '-';
    if (!text.empty() && (text.front() == '-' || text.front() == '+')) text.remove_prefix(1);
    auto dot = text.find('.');
    std::string int_part(text.substr(0, dot));
    std::string frac_part = dot == std::string_view::npos ? "" : std::string(text.substr(dot + 1));
    if ((int_part.empty() && frac_part.empty()) ||
        int_part.find_first_not_of("0123456789") != std::string::npos ||
        frac_part.find_first_not_of("0123456789") != std::string::npos)
      fail(ErrorKind::ParseError, "malformed decimal '" + std::string(text) + "'");
    Integer scale = pow_int(Integer(10), static_cast<unsigned>(frac_part.size()));
    Integer digits(int_part.empty() ? std::string("0") : int_part);
    if (!frac_part.empty()) digits = digits * scale + Integer(frac_part);
    Rational lo(digits, scale);
    Rational hi(digits + 1, scale);
    if (negative) return seed({-hi, -lo}, budget);
    return seed({lo, hi}, budget);
  }

  static PrecisionReal exact(const Rational& r) {
    LinearForm form;
    form.constant = r;
    return PrecisionReal(std::make_shared<detail::ConstNode>(r), Interval{r, r}, 0,
                         kDefaultMaxPrecision, std::move(form));
  }

  /// sqrt(d) for squarefree d > 1.
  static PrecisionReal sqrt_of(const Integer& d, unsigned max_precision = kDefaultMaxPrecision) {
    auto node = std::make_shared<detail::SqrtNode>(d);
    LinearForm form;
    form.terms.emplace(LeafKey::sqrt(d), Rational(1));
    return derived(node, kInitialPrecision, max_precision, std::move(form));
  }

  /// The root of `poly` (coefficients lowest degree first) isolated by
  /// [lo, hi]: poly must change sign strictly across the interval.
  static PrecisionReal algebraic_root(std::vector<Integer> poly, const Rational& lo,
                                      const Rational& hi, unsigned max_precision) {
    int s_lo = detail::poly_sign(poly, lo);
    int s_hi = detail::poly_sign(poly, hi);
    if (!(lo < hi) || s_lo * s_hi > 0 || (s_lo == 0 && s_hi == 0))
      fail(ErrorKind::OutOfRange, "interval does not isolate a sign change");
    auto node = std::make_shared<detail::RootNode>(std::move(poly), Interval{lo, hi});
    LinearForm form;
    form.terms.emplace(LeafKey::opaque(node.get()), Rational(1));
    return derived(node, std::min(kInitialPrecision, max_precision), max_precision,
                   std::move(form));
  }

  /// The real k-th root of r (r > 0), i.e. the positive root of x^k - r.
  static PrecisionReal kth_root(const Rational& r, unsigned k, unsigned max_precision) {
    if (k == 0 || r.sign() <= 0) fail(ErrorKind::OutOfRange, "k-th root needs k >= 1 and r > 0");
    std::vector<Integer> poly(k + 1, Integer(0));
    poly[0] = -r.num();
    poly[k] = r.den();
    Rational hi = max(Rational(1), r) + Rational(1);
    return algebraic_root(std::move(poly), Rational(0), hi, max_precision);
  }

  const Rational& low() const { return iv_.lo; }
  const Rational& high() const { return iv_.hi; }
  const Interval& interval() const { return iv_; }
  unsigned precision() const { return precision_; }
  unsigned max_precision() const { return max_precision_; }
  unsigned budget() const { return max_precision_ - precision_; }
  const std::optional<LinearForm>& linear_form() const { return form_; }

  /// Re-evaluates at a higher precision. Throws PrecisionExhausted when no
  /// budget remains.
  PrecisionReal refined() const {
    if (precision_ >= max_precision_)
      fail(ErrorKind::PrecisionExhausted, "no refinement budget left");
    unsigned next = precision_ < kInitialPrecision / 2 ? kInitialPrecision
                    : precision_ > UINT_MAX / 2      ? UINT_MAX
                                                     : precision_ * 2;
    next = std::clamp(next, precision_ + 1, max_precision_);
    detail::EvalCache cache;
    Interval iv = iv_;
    if (auto e = node_->enclose(next, cache)) iv = {max(iv.lo, e->lo), min(iv.hi, e->hi)};
    return PrecisionReal(node_, std::move(iv), next, max_precision_, form_);
  }

  /// The same value with its precision ceiling lowered (never raised).
  PrecisionReal capped(unsigned max_precision) const {
    PrecisionReal out = *this;
    out.max_precision_ = std::max(precision_, std::min(max_precision_, max_precision));
    return out;
  }

  friend PrecisionReal operator-(const PrecisionReal& x) {
    std::optional<LinearForm> form;
    if (x.form_) form = x.form_->scaled(Rational(-1));
    return PrecisionReal(std::make_shared<detail::UnaryNode>(detail::UnaryOp::Neg, x.node_),
                         Interval{-x.iv_.hi, -x.iv_.lo}, x.precision_, x.max_precision_,
                         std::move(form));
  }

  friend PrecisionReal operator+(const PrecisionReal& x, const PrecisionReal& y) {
    std::optional<LinearForm> form;
    if (x.form_ && y.form_) form = *x.form_ + *y.form_;
    return combine(detail::BinaryOp::Add, x, y, std::move(form));
  }

  friend PrecisionReal operator-(const PrecisionReal& x, const PrecisionReal& y) {
    std::optional<LinearForm> form;
    if (x.form_ && y.form_) form = *x.form_ - *y.form_;
    return combine(detail::BinaryOp::Sub, x, y, std::move(form));
  }

  friend PrecisionReal operator*(const PrecisionReal& x, const PrecisionReal& y) {
    std::optional<LinearForm> form;
    if (x.form_ && y.form_) {
      if (x.form_->is_constant()) {
        form = y.form_->scaled(x.form_->constant);
      } else if (y.form_->is_constant()) {
        form = x.form_->scaled(y.form_->constant);
      }
    }
    return combine(detail::BinaryOp::Mul, x, y, std::move(form));
  }

  friend PrecisionReal operator/(const PrecisionReal& x, const PrecisionReal& y) {
    std::optional<LinearForm> form;
    if (y.form_ && y.form_->is_constant()) {
      if (y.form_->constant.is_zero()) fail(ErrorKind::ZeroDenominator, "division by zero");
      if (x.form_) form = x.form_->scaled(y.form_->constant.reciprocal());
    }
    return combine(detail::BinaryOp::Div, x, y, std::move(form));
  }

  friend PrecisionReal log(const PrecisionReal& x) {
    return derived(std::make_shared<detail::UnaryNode>(detail::UnaryOp::Log, x.node_),
                   x.precision_, x.max_precision_, std::nullopt);
  }

 private:
  PrecisionReal(detail::NodePtr node, Interval iv, unsigned precision, unsigned max_precision,
                std::optional<LinearForm> form)
      : node_(std::move(node)),
        iv_(std::move(iv)),
        precision_(precision),
        max_precision_(std::max(precision, max_precision)),
        form_(std::move(form)) {}

  static PrecisionReal combine(detail::BinaryOp op, const PrecisionReal& x,
                               const PrecisionReal& y, std::optional<LinearForm> form) {
    auto node = std::make_shared<detail::BinaryNode>(op, x.node_, y.node_);
    return derived(std::move(node), std::max(x.precision_, y.precision_),
                   std::min(x.max_precision_, y.max_precision_), std::move(form));
  }

  // Evaluates a fresh node, raising precision until the enclosure is bounded.
  static PrecisionReal derived(detail::NodePtr node, unsigned precision, unsigned max_precision,
                               std::optional<LinearForm> form) {
    precision = std::min(std::max(precision, kInitialPrecision), std::max(precision, max_precision));
    for (;;) {
      detail::EvalCache cache;
      if (auto iv = node->enclose(precision, cache))
        return PrecisionReal(std::move(node), std::move(*iv), precision, max_precision,
                             std::move(form));
      if (precision >= max_precision)
        fail(ErrorKind::PrecisionExhausted, "operand cannot be separated from zero");
      precision = std::min(max_precision, precision * 2);
    }
  }

  detail::NodePtr node_;
  Interval iv_;
  unsigned precision_ = 0;
  unsigned max_precision_ = 0;
  std::optional<LinearForm> form_;
};

}  // namespace dimcf
