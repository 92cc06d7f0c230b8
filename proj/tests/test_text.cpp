#include <gtest/gtest.h>

#include <optional>
#include <random>

#include "dimcf/json_io.hpp"
#include "dimcf/text.hpp"
#include "support.hpp"

using namespace dimcf;

namespace {

std::optional<ErrorKind> kind_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  return std::nullopt;
}

}  // namespace

TEST(ParseReal, Syntaxes) {
  EXPECT_EQ(text::parse_real("surd:(1+sqrt(5))/2"), surd_normalize(1, 1, 2, 5));
  EXPECT_EQ(text::parse_real("surd:sqrt(2)"), surd_normalize(0, 1, 1, 2));
  EXPECT_EQ(text::parse_real("surd:(3-2*sqrt(8))/4"), surd_normalize(3, -2, 4, 8));
  EXPECT_EQ(text::parse_real("surd:-sqrt(3)/2"), surd_normalize(0, -1, 2, 3));
  EXPECT_EQ(text::parse_real("22/7"), RealValue(Rational(22, 7)));
  EXPECT_EQ(text::parse_real("-5"), RealValue(-5));

  auto d = text::parse_real("dec:1.414~64");
  ASSERT_TRUE(d.is_precision());
  EXPECT_EQ(d.precision().low(), Rational(1414, 1000));
  EXPECT_EQ(d.precision().high(), Rational(1415, 1000));

  auto iv = text::parse_real("interval:[1/3,1/2]~16");
  EXPECT_EQ(iv.precision().low(), Rational(1, 3));
  EXPECT_EQ(iv.precision().high(), Rational(1, 2));

  auto r = text::parse_real("root:3:2~128");
  EXPECT_NEAR(r.to_double(), 1.2599210498948732, 1e-15);
}

TEST(ParseReal, Malformed) {
  for (const char* bad : {"surd:(1+sqrt(5)/2", "surd:1+sqrt5", "abc", "1/x", "interval:[1]", "root:2"})
    EXPECT_EQ(kind_of([&] { text::parse_real(bad); }), ErrorKind::ParseError) << bad;
  EXPECT_EQ(kind_of([] { text::parse_real("1/0"); }), ErrorKind::ZeroDenominator);
  EXPECT_EQ(kind_of([] { text::parse_real("surd:sqrt(-2)"); }), ErrorKind::NegativeRadicand);
}

TEST(ParseReal, ExactValuesRoundTrip) {
  std::mt19937_64 rng(61);
  for (int i = 0; i < 500; ++i) {
    RealValue s = testing_support::random_surd(rng);
    EXPECT_EQ(text::parse_real(s.str()), s) << s.str();
    RealValue q(Rational(static_cast<long>(rng() % 2001) - 1000, static_cast<long>(rng() % 999) + 1));
    EXPECT_EQ(text::parse_real(q.str()), q) << q.str();
  }
}

TEST(ParseMatrix, RowsAndErrors) {
  auto m = text::parse_matrix("[[2, 1], [1, 1]]");
  EXPECT_EQ(UniModMatrix(m), UniModMatrix({{2, 1}, {1, 1}}));
  EXPECT_EQ(kind_of([] { text::parse_matrix("[[1,2],[3]]"); }), ErrorKind::ParseError);
  EXPECT_EQ(kind_of([] { UniModMatrix(text::parse_matrix("[[2,0],[0,1]]")); }),
            ErrorKind::NotUnimodular);
}

TEST(ParseModule, Literal) {
  auto lit = text::parse_module("module:{lambda:[1, surd:(1+sqrt(5))/2], unit:[1,0]}");
  ASSERT_EQ(lit.lambda.size(), 2u);
  EXPECT_EQ(lit.lambda[1], surd_normalize(1, 1, 2, 5));
  ASSERT_TRUE(lit.unit);
  EXPECT_EQ(lit.unit->coords, (std::vector<Integer>{1, 0}));
  auto bare = text::parse_module("module:{lambda:[2,1]}");
  EXPECT_FALSE(bare.unit);
  EXPECT_EQ(kind_of([] { text::parse_module("module:{unit:[1,0]}"); }), ErrorKind::ParseError);
}

TEST(FormatCf, RoundTrip) {
  std::mt19937_64 rng(62);
  EXPECT_EQ(text::format_cf(cf_expand(surd_normalize(1, 1, 2, 5), 10)), "[1;(1)]");
  EXPECT_EQ(text::format_cf(cf_expand(Rational(3, 2), 10)), "[1;2]");
  EXPECT_EQ(text::format_cf(cf_expand(Rational(4), 10)), "[4]");
  for (int i = 0; i < 200; ++i) {
    auto e = cf_expand(testing_support::random_surd(rng), 200);
    auto back = text::parse_cf(text::format_cf(e));
    EXPECT_EQ(back.preperiod, e.preperiod);
    EXPECT_EQ(back.period, e.period);
    EXPECT_EQ(back.truncated, e.truncated);
  }
  auto t = text::parse_cf("[1;2,2,...]");
  EXPECT_TRUE(t.truncated);
  EXPECT_EQ(t.preperiod, (std::vector<Integer>{1, 2, 2}));
}

TEST(Json, Shapes) {
  auto cf = json::cf(cf_expand(surd_normalize(1, 1, 2, 5), 10));
  EXPECT_EQ(cf.dump(), R"({"period":[1],"preperiod":[1],"truncated":false})");
  auto jp = json::jp(jp_expand({RealValue(Rational(3, 2)), RealValue(Rational(4, 3))}, 10));
  EXPECT_EQ(jp["n"], 3);
  EXPECT_EQ(jp["steps"].dump(), "[[1,1],[0,2],[0,1]]");
  EXPECT_TRUE(jp["terminated"].get<bool>());

  Integer big = Integer(1) << 80;
  EXPECT_TRUE(json::integer(big).is_string());
  EXPECT_EQ(json::integer(Integer(-7)), -7);

  Error e(ErrorKind::NotHyperbolic, "trace 2");
  auto err = json::error(e);
  EXPECT_EQ(err["error"]["kind"], "NotHyperbolic");
}
