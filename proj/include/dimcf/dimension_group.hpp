#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "dimcf/error.hpp"
#include "dimcf/integer.hpp"
#include "dimcf/jacobi_perron.hpp"
#include "dimcf/matrix.hpp"
#include "dimcf/precision_real.hpp"
#include "dimcf/rational.hpp"
#include "dimcf/real_value.hpp"
#include "dimcf/regular_cf.hpp"

namespace dimcf {

/// An element of Z^n.
struct GroupElement {
  std::vector<Integer> coords;

  std::size_t size() const { return coords.size(); }
  bool is_zero() const {
    return std::all_of(coords.begin(), coords.end(), [](const Integer& x) { return x == 0; });
  }
  friend bool operator==(const GroupElement&, const GroupElement&) = default;
};

inline GroupElement operator+(const GroupElement& x, const GroupElement& y) {
  GroupElement out = x;
  for (std::size_t i = 0; i < out.size(); ++i) out.coords[i] += y.coords[i];
  return out;
}

inline GroupElement operator-(const GroupElement& x) {
  GroupElement out = x;
  for (auto& c : out.coords) c = -c;
  return out;
}

inline GroupElement operator-(const GroupElement& x, const GroupElement& y) { return x + (-y); }

inline GroupElement operator*(const Integer& k, const GroupElement& x) {
  GroupElement out = x;
  for (auto& c : out.coords) c *= k;
  return out;
}

enum class Dependence { Independent, Dependent, Undetermined };

constexpr std::string_view to_string(Dependence d) {
  switch (d) {
    case Dependence::Independent: return "independent";
    case Dependence::Dependent: return "dependent";
    case Dependence::Undetermined: return "undetermined";
  }
  return "?";
}

/// The group Z lambda_1 + ... + Z lambda_n in R, ordered by the sign of the
/// image x -> sum x_i lambda_i.
struct ModuleRep {
  std::size_t n = 0;
  std::vector<RealValue> lambda;
  std::vector<RealValue> theta;  // lambda_{i+1} / lambda_1
  GroupElement order_unit;
  Dependence dependence = Dependence::Undetermined;
  std::optional<GroupElement> relation;  // non-zero element with image 0
};

enum class ConeSign { Positive, Zero, Negative };

constexpr std::string_view to_string(ConeSign s) {
  switch (s) {
    case ConeSign::Positive: return "positive";
    case ConeSign::Zero: return "zero";
    case ConeSign::Negative: return "negative";
  }
  return "?";
}

enum class ChainSource { RegularCF, JacobiPerron };

constexpr std::string_view to_string(ChainSource s) {
  return s == ChainSource::RegularCF ? "regular_cf" : "jacobi_perron";
}

struct SimplicialChain {
  std::size_t n = 0;
  std::vector<UniModMatrix> matrices;
  ChainSource source = ChainSource::RegularCF;
  bool terminated = false;  // the expansion ended before the requested depth
};

namespace detail {

// Rational coordinates over the leaves {1, sqrt(d), ...} plus opaque leaves.
// sqrt(1) stands for the constant 1.
using Coordinates = std::map<LeafKey, Rational>;

inline std::optional<Coordinates> coordinates(const RealValue& x) {
  Coordinates out;
  auto put = [&](const LeafKey& k, const Rational& v) {
    if (!v.is_zero()) out[k] += v;
  };
  if (x.is_rational()) {
    put(LeafKey::sqrt(1), x.rational());
    return out;
  }
  if (x.is_surd()) {
    const auto& s = x.surd();
    put(LeafKey::sqrt(1), Rational(s.a(), s.c()));
    put(LeafKey::sqrt(s.d()), Rational(s.b(), s.c()));
    return out;
  }
  const auto& form = x.precision().linear_form();
  if (!form) return std::nullopt;
  put(LeafKey::sqrt(1), form->constant);
  for (const auto& [k, v] : form->terms) put(k, v);
  return out;
}

struct CoordinateMatrix {
  std::vector<LeafKey> keys;
  std::vector<std::vector<Rational>> rows;
  bool exact = true;  // all keys are square roots, hence independent over Q
};

inline std::optional<CoordinateMatrix> coordinate_matrix(const std::vector<RealValue>& values,
                                                         std::vector<LeafKey> extra_keys = {}) {
  std::vector<Coordinates> coords;
  for (const auto& v : values) {
    auto c = coordinates(v);
    if (!c) return std::nullopt;
    coords.push_back(std::move(*c));
  }
  CoordinateMatrix out;
  std::map<LeafKey, std::size_t> index;
  for (const auto& k : extra_keys) index.emplace(k, 0);
  for (const auto& c : coords)
    for (const auto& [k, v] : c) index.emplace(k, 0);
  for (auto& [k, i] : index) {
    i = out.keys.size();
    out.keys.push_back(k);
    if (!k.is_exact()) out.exact = false;
  }
  for (const auto& c : coords) {
    std::vector<Rational> row(out.keys.size());
    for (const auto& [k, v] : c) row[index.at(k)] = v;
    out.rows.push_back(std::move(row));
  }
  return out;
}

// Rows scaled by the common denominator.
inline std::pair<std::vector<std::vector<Integer>>, Integer> integer_rows(
    const std::vector<std::vector<Rational>>& rows) {
  Integer den = 1;
  for (const auto& r : rows)
    for (const auto& v : r) den = den / gcd(den, v.den()) * v.den();
  std::vector<std::vector<Integer>> out;
  for (const auto& r : rows) {
    std::vector<Integer> ir;
    for (const auto& v : r) ir.push_back(v.num() * (den / v.den()));
    out.push_back(std::move(ir));
  }
  return {std::move(out), den};
}

// Canonical basis of the Q-scaled lattice spanned by the rows.
inline std::vector<std::vector<Rational>> rational_hermite(
    const std::vector<std::vector<Rational>>& rows) {
  auto [ints, den] = integer_rows(rows);
  std::vector<std::vector<Rational>> out;
  for (const auto& r : lattice::hermite_basis(std::move(ints))) {
    std::vector<Rational> rr;
    for (const auto& v : r) rr.emplace_back(v, den);
    out.push_back(std::move(rr));
  }
  return out;
}

inline RealValue key_value(const LeafKey& k) {
  if (k.radicand == 1) return RealValue(1);
  return surd_normalize(0, 1, 1, k.radicand);
}

inline RealValue image(const std::vector<RealValue>& lambda, const GroupElement& x) {
  RealValue sum(0);
  for (std::size_t i = 0; i < lambda.size(); ++i)
    if (x.coords[i] != 0) sum = sum + RealValue(Rational(x.coords[i])) * lambda[i];
  return sum;
}

inline void check_length(const ModuleRep& m, const GroupElement& x) {
  if (x.size() != m.n)
    fail(ErrorKind::DimensionMismatch, "element has " + std::to_string(x.size()) +
                                           " coordinates, module rank is " + std::to_string(m.n));
}

}  // namespace detail

/// Builds the module, caches theta and detects integer relations among the
/// lambda_i. Exact data (rationals, surds, and sums of square roots) is
/// classified exactly; otherwise a relation is reported only when the
/// tracked linear forms prove one.
inline ModuleRep build_module(std::vector<RealValue> lambda,
                              std::optional<GroupElement> order_unit = std::nullopt) {
  if (lambda.size() < 2) fail(ErrorKind::DimensionMismatch, "a module needs rank n >= 2");
  int lead = real_sign(lambda.front());
  if (lead == 0) fail(ErrorKind::ZeroLeading, "lambda_1 = 0");

  ModuleRep m;
  m.n = lambda.size();
  m.lambda = std::move(lambda);
  for (std::size_t i = 1; i < m.n; ++i) m.theta.push_back(m.lambda[i] / m.lambda.front());

  if (order_unit) {
    if (order_unit->size() != m.n)
      fail(ErrorKind::DimensionMismatch, "order unit has the wrong length");
    if (real_sign(detail::image(m.lambda, *order_unit)) <= 0)
      fail(ErrorKind::NonPositiveUnit, "order unit image is not positive");
    m.order_unit = std::move(*order_unit);
  } else {
    m.order_unit.coords.assign(m.n, Integer(0));
    m.order_unit.coords.front() = lead > 0 ? 1 : -1;
  }

  if (auto cm = detail::coordinate_matrix(m.lambda)) {
    auto kernel = lattice::integer_kernel(detail::integer_rows(cm->rows).first);
    if (!kernel.empty()) {
      m.dependence = Dependence::Dependent;
      m.relation = GroupElement{kernel.front()};
    } else if (cm->exact) {
      m.dependence = Dependence::Independent;
    }
  }
  return m;
}

inline RealValue module_image(const ModuleRep& m, const GroupElement& x) {
  detail::check_length(m, x);
  return detail::image(m.lambda, x);
}

inline ConeSign cone_contains(const ModuleRep& m, const GroupElement& x) {
  int s = real_sign(module_image(m, x));
  return s > 0 ? ConeSign::Positive : s < 0 ? ConeSign::Negative : ConeSign::Zero;
}

/// The normalized state f(x) = image(x) / image(unit).
inline RealValue state_eval(const ModuleRep& m, const GroupElement& x) {
  return module_image(m, x) / module_image(m, m.order_unit);
}

/// Decides whether the two groups are order-isomorphic.
///
/// Rank 2 with exact slopes reduces to GL(2,Z)-equivalence of the slopes.
/// Otherwise the image lattices are compared in coordinates over Q-independent
/// leaves: equal lattices up to a positive scale prove yes; for exact data a
/// rank difference proves no and rank-2 images reduce to slopes again.
/// Everything else is unknown, with a Jacobi-Perron tail diagnostic.
inline DecisionReport order_iso(const ModuleRep& a, const ModuleRep& b, std::size_t budget) {
  if (a.n != b.n)
    fail(ErrorKind::RankMismatch,
         "ranks " + std::to_string(a.n) + " and " + std::to_string(b.n) + " differ");
  if (a.n == 2 && a.theta[0].is_exact() && b.theta[0].is_exact()) {
    auto r = gl2_equivalent(a.theta[0], b.theta[0], budget);
    r.diagnostic = "slopes: " + r.diagnostic;
    return r;
  }

  auto ca = detail::coordinate_matrix(a.lambda);
  auto cb = detail::coordinate_matrix(b.lambda);
  if (ca && cb) {
    std::vector<LeafKey> keys = ca->keys;
    keys.insert(keys.end(), cb->keys.begin(), cb->keys.end());
    ca = detail::coordinate_matrix(a.lambda, keys);
    cb = detail::coordinate_matrix(b.lambda, keys);
    auto ha = detail::rational_hermite(ca->rows);
    auto hb = detail::rational_hermite(cb->rows);
    bool exact = ca->exact && cb->exact;

    if (ha.size() == hb.size() && !ha.empty()) {
      std::size_t pivot = 0;
      while (ha[0][pivot].is_zero()) ++pivot;
      if (!hb[0][pivot].is_zero()) {
        Rational s = hb[0][pivot] / ha[0][pivot];
        bool same = true;
        for (std::size_t i = 0; i < ha.size() && same; ++i)
          for (std::size_t j = 0; j < ha[i].size() && same; ++j) same = hb[i][j] == s * ha[i][j];
        if (same) return {Decision::Yes, "image lattices agree up to the scale " + s.str()};
      }
    }
    if (exact) {
      if (ha.size() != hb.size())
        return {Decision::No, "image ranks " + std::to_string(ha.size()) + " and " +
                                  std::to_string(hb.size()) + " differ"};
      if (ha.size() == 1) return {Decision::Yes, "both images are cyclic"};
      if (ha.size() == 2) {
        auto slope = [&](const std::vector<std::vector<Rational>>& h) {
          RealValue g1(0), g2(0);
          for (std::size_t j = 0; j < ca->keys.size(); ++j) {
            RealValue kv = detail::key_value(ca->keys[j]);
            g1 = g1 + RealValue(h[0][j]) * kv;
            g2 = g2 + RealValue(h[1][j]) * kv;
          }
          return g2 / g1;
        };
        RealValue sa = slope(ha);
        RealValue sb = slope(hb);
        if (sa.is_exact() && sb.is_exact()) {
          auto r = gl2_equivalent(sa, sb, budget);
          r.diagnostic = "image slopes: " + r.diagnostic;
          return r;
        }
      }
    }
  }

  std::string note;
  if (a.dependence != Dependence::Undetermined && b.dependence != Dependence::Undetermined &&
      a.dependence != b.dependence)
    note = "dependence differs but image ranks are not certified; ";

  auto steps = [&](const ModuleRep& m, const char* name) {
    std::vector<JPDigitVector> out;
    try {
      out = jp_expand(m.theta, budget).steps;
    } catch (const Error& err) {
      note += std::string(name) + ": " + err.what() + "; ";
    }
    return out;
  };
  auto sa = steps(a, "a");
  auto sb = steps(b, "b");
  std::size_t best = 0;
  for (std::size_t i = 0; i < sa.size(); ++i)
    for (std::size_t j = 0; j < sb.size(); ++j) {
      std::size_t len = 0;
      while (i + len < sa.size() && j + len < sb.size() && sa[i + len] == sb[j + len]) ++len;
      if (i + len == sa.size() || j + len == sb.size()) best = std::max(best, len);
    }
  note += "Jacobi-Perron steps " + std::to_string(sa.size()) + "/" + std::to_string(sb.size()) +
          ", longest common tail " + std::to_string(best);
  return {Decision::Unknown, note};
}

/// The approximating chain: (0 1; 1 a_k) from the regular continued
/// fraction of theta_1 for n = 2, Jacobi-Perron step matrices for n >= 3.
inline SimplicialChain simplicial_chain(const ModuleRep& m, std::size_t depth) {
  SimplicialChain chain;
  chain.n = m.n;
  if (m.n == 2) {
    chain.source = ChainSource::RegularCF;
    auto e = cf_expand(m.theta[0], depth);
    std::size_t got = std::min(depth, e.available());
    if (got < depth && !e.is_finite())
      fail(ErrorKind::PrecisionExhausted,
           "continued fraction digits ran out at depth " + std::to_string(got), got);
    for (const auto& a : e.digits(got)) chain.matrices.push_back(UniModMatrix::elementary(a));
    chain.terminated = got < depth;
    return chain;
  }
  chain.source = ChainSource::JacobiPerron;
  auto e = jp_expand(m.theta, depth);
  for (const auto& b : e.steps) chain.matrices.push_back(jp_step_matrix(b, m.n));
  chain.terminated = e.terminated;
  return chain;
}

/// n = 2g + |lambda| - 1.
inline Integer rank_from_topology(const Integer& genus, const Integer& principal_regions) {
  if (genus < 2) fail(ErrorKind::OutOfRange, "genus must be >= 2, got " + genus.str());
  if (principal_regions < 1)
    fail(ErrorKind::OutOfRange, "need at least one principal region, got " + principal_regions.str());
  return 2 * genus + principal_regions - 1;
}

struct RieszViolation {
  std::string axiom;
  std::vector<GroupElement> witness;
};

struct RieszReport {
  std::size_t samples = 0;
  std::size_t violation_count = 0;
  std::vector<RieszViolation> violations;  // the first few witnesses
  std::size_t exhausted = 0;               // samples abandoned on PrecisionExhausted
  std::vector<std::string> incidents;
};

/// Samples elements with coordinates in [-bound, bound] and checks cone
/// closure, P n -P = {0}, unperforation for multipliers 2..10, and
/// interpolation (w = max(u, v) lies below x and y). A known integer
/// relation is checked first.
inline RieszReport riesz_audit(const ModuleRep& m, std::size_t sample_count,
                               const Integer& bound, std::uint64_t seed = 0x5eed) {
  constexpr std::size_t kKeepWitnesses = 16;
  RieszReport report;
  auto violate = [&](std::string axiom, std::vector<GroupElement> w) {
    ++report.violation_count;
    if (report.violations.size() < kKeepWitnesses)
      report.violations.push_back({std::move(axiom), std::move(w)});
  };
  auto sign = [&](const GroupElement& x) { return real_sign(module_image(m, x)); };
  auto antisymmetry = [&](const GroupElement& x) {
    if (!x.is_zero() && sign(x) == 0) violate("P n -P = {0}", {x, -x});
  };

  if (m.relation) antisymmetry(*m.relation);

  std::mt19937_64 rng(seed);
  auto b = to_int64(bound);
  if (!b || *b < 0) fail(ErrorKind::OutOfRange, "coordinate bound must fit in 64 bits and be >= 0");
  std::uniform_int_distribution<std::int64_t> coord(-*b, *b);
  auto draw = [&] {
    GroupElement x;
    for (std::size_t i = 0; i < m.n; ++i) x.coords.emplace_back(coord(rng));
    return x;
  };

  for (std::size_t s = 0; s < sample_count; ++s) {
    GroupElement u = draw(), v = draw(), x = draw(), y = draw();
    ++report.samples;
    try {
      int su = sign(u), sv = sign(v);
      if (su >= 0 && sv >= 0 && sign(u + v) < 0) violate("P + P in P", {u, v});
      antisymmetry(u);
      for (int k = 2; k <= 10; ++k)
        if (sign(Integer(k) * u) >= 0 && su < 0) {
          violate("unperforation", {u});
          break;
        }
      // In a total order, max(u, v) interpolates whenever u, v <= x, y.
      if (sign(x - u) >= 0 && sign(x - v) >= 0 && sign(y - u) >= 0 && sign(y - v) >= 0) {
        GroupElement w = sign(u - v) >= 0 ? u : v;
        if (sign(w - u) < 0 || sign(w - v) < 0 || sign(x - w) < 0 || sign(y - w) < 0)
          violate("interpolation", {u, v, x, y});
      }
    } catch (const Error& err) {
      if (err.kind() != ErrorKind::PrecisionExhausted) throw;
      ++report.exhausted;
      if (report.incidents.size() < kKeepWitnesses) report.incidents.push_back(err.what());
    }
  }
  return report;
}

/// ng >= 0 implies g >= 0 for one multiplier.
inline bool unperforation_holds(const ModuleRep& m, const GroupElement& g, const Integer& n) {
  bool scaled = real_sign(module_image(m, n * g)) >= 0;
  return !scaled || real_sign(module_image(m, g)) >= 0;
}

}  // namespace dimcf
