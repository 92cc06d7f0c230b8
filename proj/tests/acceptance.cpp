// One PASS/FAIL line per acceptance criterion, with wall-clock timings.
#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>

#include "support.hpp"

using namespace dimcf;
using testing_support::Mp;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

void require(Outcome& o, bool cond, const std::string& what) {
  if (!cond && o.pass) {
    o.pass = false;
    o.detail = what;
  }
}

int failures = 0;

void criterion(int id, const char* name, double limit_s, const std::function<Outcome()>& body) {
  auto t0 = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (limit_s > 0 && s >= limit_s) {
    if (o.pass) o.detail = "over the time limit";
    o.pass = false;
  }
  if (!o.pass) ++failures;
  std::printf("%s criterion %2d  %-44s %8.3f s", o.pass ? "PASS" : "FAIL", id, name, s);
  if (limit_s > 0) std::printf(" (limit %.0f s)", limit_s);
  if (!o.detail.empty()) std::printf("  %s", o.detail.c_str());
  std::printf("\n");
  std::fflush(stdout);
}

std::vector<Integer> chain_digits(const SimplicialChain& c) {
  std::vector<Integer> out;
  for (const auto& m : c.matrices) out.push_back(m(c.n - 1, c.n - 1));
  return out;
}

}  // namespace

int main() {
  criterion(1, "regular continued fractions", 1.0, [] {
    Outcome o;
    std::mt19937_64 rng(101);
    std::uniform_int_distribution<long> num(-1000000, 1000000), den(1, 1000000);
    for (int i = 0; i < 1000; ++i) {
      Rational x(num(rng), den(rng));
      auto e = cf_expand(x, 200);
      require(o, !e.period && !e.truncated && cf_evaluate(e.preperiod) == x, "round trip " + x.str());
      require(o, e.preperiod == testing_support::euclid_digits(x.num(), x.den()), "Euclid " + x.str());
    }
    auto g = cf_expand(surd_normalize(1, 1, 2, 5), 50);
    require(o, g.preperiod == std::vector<Integer>{1} && g.period == std::vector<Integer>{1}, "phi");
    auto r = cf_expand(surd_normalize(0, 1, 1, 2), 50);
    require(o, r.preperiod == std::vector<Integer>{1} && r.period == std::vector<Integer>{2}, "sqrt 2");
    return o;
  });

  criterion(2, "GL(2,Z) equivalence and order isomorphism", 30.0, [] {
    Outcome o;
    std::mt19937_64 rng(102);
    int yes = 0;
    while (yes < 500) {
      auto s = testing_support::random_surd(rng);
      auto m = testing_support::random_unimodular(rng, 10);
      RealValue y;
      try {
        y = mobius_apply(m, s);
      } catch (const Error&) {
        continue;
      }
      ++yes;
      std::string tag = s.str() + " under " + m.str();
      require(o, gl2_equivalent(s, y, 50).decision == Decision::Yes, "gl2 " + tag);
      auto ga = build_module({RealValue(1), RealValue(s)});
      auto gb = build_module({RealValue(1), y});
      require(o, order_iso(ga, gb, 50).decision == Decision::Yes, "order_iso " + tag);
    }
    int no = 0;
    while (no < 500) {
      auto s = testing_support::random_surd(rng), t = testing_support::random_surd(rng);
      if (testing_support::orbit_discriminant(s) == testing_support::orbit_discriminant(t)) continue;
      ++no;
      std::string tag = s.str() + " vs " + t.str();
      require(o, gl2_equivalent(s, t, 50).decision == Decision::No, "gl2 " + tag);
      auto ga = build_module({RealValue(1), RealValue(s)});
      auto gb = build_module({RealValue(1), RealValue(t)});
      require(o, order_iso(ga, gb, 50).decision == Decision::No, "order_iso " + tag);
    }
    return o;
  });

  criterion(3, "unimodular factorization round trip", 5.0, [] {
    Outcome o;
    std::mt19937_64 rng(103);
    std::uniform_int_distribution<int> len(1, 12);
    std::uniform_int_distribution<long> digit(0, 20);
    for (int i = 0; i < 1000; ++i) {
      std::vector<Integer> digits;
      for (int k = len(rng); k > 0; --k) digits.emplace_back(digit(rng));
      auto m = product_of_factors(digits);
      require(o, product_of_factors(factor_unimodular(m)) == m, "factor " + m.str());
    }
    return o;
  });

  criterion(4, "Jacobi-Perron n=2 reduction", 0, [] {
    Outcome o;
    std::mt19937_64 rng(104);
    for (int i = 0; i < 200; ++i) {
      auto s = testing_support::random_surd(rng);
      auto jp = jp_expand({RealValue(s)}, 50);
      auto cf = cf_expand(s, 100).digits(50);
      require(o, jp.steps.size() == 50, "depth " + s.str());
      for (std::size_t k = 0; k < jp.steps.size(); ++k)
        require(o, jp.steps[k].digits == std::vector<Integer>{cf[k]}, "digit mismatch " + s.str());
    }
    return o;
  });

  criterion(5, "convergents as step-matrix products", 0, [] {
    Outcome o;
    std::mt19937_64 rng(105);
    for (int i = 0; i < 100; ++i) {
      std::size_t n = 2 + i % 3;
      auto e = jp_expand(testing_support::random_theta(rng, n), 50);
      require(o, e.steps.size() == 50, "expansion stopped early");
      auto acc = testing_support::rows_of(UniModMatrix::identity(n));
      for (std::size_t k = 1; k <= e.steps.size(); ++k) {
        acc = testing_support::naive_product(acc, testing_support::rows_of(jp_step_matrix(e.steps[k - 1], n)));
        require(o, testing_support::rows_of(jp_convergents(e, k).a) == acc, "product at k=" + std::to_string(k));
        Integer det = testing_support::naive_det(acc);
        require(o, det == 1 || det == -1, "determinant at k=" + std::to_string(k));
      }
    }
    return o;
  });

  criterion(6, "Jacobi-Perron convergence for (cbrt 2, cbrt 4)", 5.0, [] {
    Outcome o;
    std::vector<RealValue> theta{RealValue(PrecisionReal::kth_root(Rational(2), 3, 256)),
                                 RealValue(PrecisionReal::kth_root(Rational(4), 3, 256))};
    Mp a = Mp::cbrt(2, 1024), b = Mp::cbrt(4, 1024);
    auto e = jp_expand(theta, 30);
    require(o, e.steps.size() == 30, "expansion stopped early");
    std::vector<double> res;
    for (std::size_t k = 1; k <= e.steps.size(); ++k) {
      auto r = jp_reconstruct(e, k);
      double d0 = (a - Mp::value(r[0], 1024)).abs().to_double();
      double d1 = (b - Mp::value(r[1], 1024)).abs().to_double();
      res.push_back(std::max(d0, d1));
    }
    std::ostringstream trace;
    trace << "residual(30) = " << res.back();
    require(o, res.back() < 1e-8, trace.str());
    for (std::size_t k = 6; k < res.size(); ++k)
      if (res[k] > res[k - 1]) {
        std::ostringstream why;
        why << "residual rises at step " << k + 1 << ": " << res[k - 1] << " -> " << res[k];
        require(o, false, why.str());
      }
    if (o.pass) o.detail = trace.str();
    return o;
  });

  criterion(7, "modular group", 0, [] {
    Outcome o;
    require(o, classify_element(UniModMatrix({{0, -1}, {1, 0}})) == ElementClass::Elliptic, "elliptic");
    require(o, classify_element(UniModMatrix({{1, 1}, {0, 1}})) == ElementClass::Parabolic, "parabolic");
    require(o, classify_element(UniModMatrix({{2, 1}, {1, 1}})) == ElementClass::Hyperbolic, "hyperbolic");

    std::mt19937_64 rng(107);
    int fixed = 0;
    while (fixed < 500) {
      auto g = testing_support::random_unimodular(rng, 8);
      if (classify_element(g) == ElementClass::Elliptic || (g.b() == 0 && g.c() == 0)) continue;
      std::vector<BoundaryPoint> pts;
      try {
        pts = fixed_points(g);
      } catch (const Error&) {
        continue;  // det -1 with a negative discriminant
      }
      ++fixed;
      for (const auto& p : pts)
        if (!p.is_infinity()) require(o, mobius_apply(g, *p.value) == *p.value, "fixed point of " + g.str());
    }

    auto len = axis_length(UniModMatrix({{2, 1}, {1, 1}}), 64);
    Mp expect = Mp::of(2, 1024) * Mp::acosh(Mp::of(Rational(3, 2), 1024));
    require(o, Mp::of(len.low(), 1024) <= expect && expect <= Mp::of(len.high(), 1024), "axis enclosure");
    require(o, (Mp::of(len.high(), 1024) - Mp::of(len.low(), 1024)).to_double() < 1e-12, "axis width");

    for (long n : {2, 3, 5}) {
      CongruenceLevel level(n);
      for (int i = 0; i < 500; ++i) {
        auto g = testing_support::random_gamma_member(rng, n);
        auto h = testing_support::random_gamma_member(rng, n);
        require(o, gamma_membership(g, level).member, "sampled member");
        require(o, gamma_membership(g * h, level).member, "product " + g.str() + " " + h.str());
        require(o, gamma_membership(g.inverse(), level).member, "inverse " + g.str());
      }
    }
    return o;
  });

  criterion(8, "Legendre audit table", 0, [] {
    Outcome o;
    CFExpansion twos{{2, 2, 2, 2}, std::nullopt, false};
    std::vector<bool> got, expect{false, true, false, true};
    for (const auto& r : legendre_audit(twos, CongruenceLevel(2), 4)) got.push_back(r.member);
    require(o, got == expect, "N=2 members");
    for (const auto& r : legendre_audit(twos, CongruenceLevel(1), 4)) require(o, r.member, "N=1 member");
    return o;
  });

  criterion(9, "Riesz audit", 0, [] {
    Outcome o;
    std::vector<std::vector<RealValue>> modules{
        {RealValue(1), surd_normalize(1, 1, 2, 5)},
        {RealValue(1), surd_normalize(0, 1, 1, 2)},
        {surd_normalize(-3, 2, 7, 13), RealValue(1)},
        {RealValue(1), surd_normalize(0, 1, 1, 2), surd_normalize(0, 1, 1, 3)},
    };
    for (const auto& lambda : modules) {
      auto r = riesz_audit(build_module(lambda), 1000, 50);
      require(o, r.violation_count == 0 && r.exhausted == 0, "violations on an irrational module");
    }
    auto planted = riesz_audit(build_module({RealValue(2), RealValue(1)}), 1000, 50);
    bool found = false;
    GroupElement w{{1, -2}};
    for (const auto& v : planted.violations)
      found = found || (v.axiom == "P n -P = {0}" && (v.witness[0] == w || v.witness[0] == -w));
    require(o, found, "planted witness (1,-2) not reported");
    return o;
  });

  criterion(10, "chains versus convergents and tails", 0, [] {
    Outcome o;
    std::vector<std::vector<RealValue>> modules{
        {RealValue(1), surd_normalize(1, 1, 2, 5)},
        {RealValue(1), surd_normalize(0, 1, 1, 2)},
        {RealValue(1), RealValue(PrecisionReal::kth_root(Rational(2), 3, 256)),
         RealValue(PrecisionReal::kth_root(Rational(4), 3, 256))},
    };
    std::mt19937_64 rng(110);
    for (int i = 0; i < 6; ++i)
      for (std::size_t n : {3, 4}) {
        std::vector<RealValue> lambda{RealValue(1)};
        for (auto& t : testing_support::random_theta(rng, n)) lambda.push_back(t);
        modules.push_back(lambda);
      }
    for (const auto& lambda : modules) {
      auto m = build_module(lambda);
      auto chain = simplicial_chain(m, 30);
      UniModMatrix acc = UniModMatrix::identity(m.n);
      for (std::size_t k = 0; k < chain.matrices.size(); ++k) {
        acc = acc * chain.matrices[k];
        if (m.n == 2) {
          auto c = cf_convergents(cf_expand(m.theta[0], 40), k);
          require(o, acc == c[k].t_product, "regular chain at depth " + std::to_string(k + 1));
        } else {
          require(o, acc == jp_convergents(jp_expand(m.theta, k + 1), k + 1).a,
                  "Jacobi-Perron chain at depth " + std::to_string(k + 1));
        }
      }
    }
    int pairs = 0;
    std::size_t shortest = 40;
    while (pairs < 200) {
      auto s = testing_support::random_surd(rng);
      auto mat = testing_support::random_unimodular(rng, 10);
      RealValue y;
      try {
        y = mobius_apply(mat, s);
      } catch (const Error&) {
        continue;
      }
      ++pairs;
      auto a = chain_digits(simplicial_chain(build_module({RealValue(1), RealValue(s)}), 40));
      auto b = chain_digits(simplicial_chain(build_module({RealValue(1), y}), 40));
      auto tail = longest_common_tail(a, b);
      shortest = std::min(shortest, tail.length);
      require(o, tail.length >= 20, "tail " + std::to_string(tail.length) + " for " + s.str());
    }
    if (o.pass) o.detail = "shortest common tail " + std::to_string(shortest) + " of 40";
    return o;
  });

  std::printf("%d criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
