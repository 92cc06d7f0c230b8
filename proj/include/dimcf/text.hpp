#pragma once

#include <cctype>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "dimcf/dimension_group.hpp"
#include "dimcf/error.hpp"
#include "dimcf/integer.hpp"
#include "dimcf/jacobi_perron.hpp"
#include "dimcf/matrix.hpp"
#include "dimcf/precision_real.hpp"
#include "dimcf/rational.hpp"
#include "dimcf/real_value.hpp"
#include "dimcf/regular_cf.hpp"

// Text syntax shared by the CLI and tests:
//
//   p/q                        rational
//   surd:(a+b*sqrt(d))/c       quadratic surd, any exact spelling
//   dec:1.414~64               truncated decimal with a refinement budget
//   interval:[lo,hi]~64        rational enclosure with a refinement budget
//   root:3:2~256               real k-th root of a positive rational
//   [[a,b],[c,d]]              integer matrix
//   module:{lambda:[...], unit:[...]}

namespace dimcf::text {

namespace detail {

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

inline bool consume(std::string_view& s, std::string_view prefix) {
  if (!s.starts_with(prefix)) return false;
  s.remove_prefix(prefix.size());
  return true;
}

[[noreturn]] inline void malformed(std::string_view what, std::string_view text) {
  fail(ErrorKind::ParseError, "malformed " + std::string(what) + " '" + std::string(text) + "'");
}

// Splits at `sep` outside any bracket pair.
inline std::vector<std::string_view> split_top(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  int depth = 0;
  std::size_t start = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    char ch = s[i];
    if (ch == '[' || ch == '(' || ch == '{') ++depth;
    if (ch == ']' || ch == ')' || ch == '}') --depth;
    if (depth < 0) malformed("brackets in", s);
    if (ch == sep && depth == 0) {
      out.push_back(trim(s.substr(start, i - start)));
      start = i + 1;
    }
  }
  if (depth != 0) malformed("brackets in", s);
  out.push_back(trim(s.substr(start)));
  return out;
}

inline unsigned parse_bits(std::string_view s) {
  s = trim(s);
  if (s.empty() || s.size() > 9 || s.find_first_not_of("0123456789") != std::string_view::npos)
    malformed("bit budget", s);
  return static_cast<unsigned>(std::stoul(std::string(s)));
}

// Splits `body~bits`; the budget is optional.
inline std::pair<std::string_view, unsigned> split_budget(std::string_view s, unsigned fallback) {
  auto tilde = s.rfind('~');
  if (tilde == std::string_view::npos) return {trim(s), fallback};
  return {trim(s.substr(0, tilde)), parse_bits(s.substr(tilde + 1))};
}

}  // namespace detail

inline Integer parse_integer(std::string_view s) {
  s = detail::trim(s);
  std::string_view digits = s;
  if (!digits.empty() && (digits.front() == '-' || digits.front() == '+')) digits.remove_prefix(1);
  if (digits.empty() || digits.find_first_not_of("0123456789") != std::string_view::npos)
    detail::malformed("integer", s);
  std::string str(s.front() == '+' ? s.substr(1) : s);
  return Integer(str);
}

inline Rational parse_rational(std::string_view s) {
  s = detail::trim(s);
  auto slash = s.find('/');
  if (slash == std::string_view::npos) return Rational(parse_integer(s));
  return Rational(parse_integer(s.substr(0, slash)), parse_integer(s.substr(slash + 1)));
}

/// Body of `surd:`. Accepts `(a+b*sqrt(d))/c` and its abbreviations such as
/// `sqrt(2)`, `-sqrt(3)/2` or `(1-sqrt(5))/2`.
inline RealValue parse_surd(std::string_view body) {
  std::string_view s = detail::trim(body);
  Integer c = 1;
  std::string_view inner = s;
  if (s.starts_with('(')) {
    int depth = 0;
    std::size_t close = 0;
    for (; close < s.size(); ++close) {
      if (s[close] == '(') ++depth;
      if (s[close] == ')' && --depth == 0) break;
    }
    if (close == s.size()) detail::malformed("surd", body);
    inner = detail::trim(s.substr(1, close - 1));
    auto rest = detail::trim(s.substr(close + 1));
    if (!rest.empty()) {
      if (!rest.starts_with('/')) detail::malformed("surd", body);
      c = parse_integer(rest.substr(1));
    }
  } else if (auto slash = s.rfind('/');
             slash != std::string_view::npos &&
             (s.rfind(')') == std::string_view::npos || slash > s.rfind(')'))) {
    c = parse_integer(s.substr(slash + 1));
    inner = detail::trim(s.substr(0, slash));
  }

  auto at = inner.find("sqrt(");
  if (at == std::string_view::npos) {
    auto r = parse_rational(inner);
    return RealValue(r / Rational(c));
  }
  auto close = inner.find(')', at);
  if (close == std::string_view::npos || detail::trim(inner.substr(close + 1)) != "")
    detail::malformed("surd", body);
  Integer d = parse_integer(inner.substr(at + 5, close - at - 5));

  std::string_view head = detail::trim(inner.substr(0, at));
  Integer b = 1;
  if (head.ends_with('*')) {
    head = detail::trim(head.substr(0, head.size() - 1));
    auto start = head.find_last_not_of("0123456789");
    start = start == std::string_view::npos ? 0 : start + 1;
    if (start == head.size()) detail::malformed("surd", body);
    b = parse_integer(head.substr(start));
    head = detail::trim(head.substr(0, start));
  }
  if (head.ends_with('-')) {
    b = -b;
    head = detail::trim(head.substr(0, head.size() - 1));
  } else if (head.ends_with('+')) {
    head = detail::trim(head.substr(0, head.size() - 1));
  } else if (!head.empty()) {
    detail::malformed("surd", body);
  }
  Integer a = head.empty() ? Integer(0) : parse_integer(head);
  return surd_normalize(a, b, c, d);
}

inline RealValue parse_real(std::string_view text,
                            unsigned default_budget = PrecisionReal::kDefaultMaxPrecision) {
  std::string_view s = detail::trim(text);
  if (detail::consume(s, "surd:")) return parse_surd(s);
  if (detail::consume(s, "dec:")) {
    auto [body, bits] = detail::split_budget(s, default_budget);
    return RealValue(PrecisionReal::from_decimal(body, bits));
  }
  if (detail::consume(s, "interval:")) {
    auto [body, bits] = detail::split_budget(s, default_budget);
    if (!body.starts_with('[') || !body.ends_with(']')) detail::malformed("interval", text);
    auto parts = detail::split_top(body.substr(1, body.size() - 2), ',');
    if (parts.size() != 2) detail::malformed("interval", text);
    return RealValue(PrecisionReal::seed({parse_rational(parts[0]), parse_rational(parts[1])}, bits));
  }
  if (detail::consume(s, "root:")) {
    auto [body, bits] = detail::split_budget(s, default_budget);
    auto colon = body.find(':');
    if (colon == std::string_view::npos) detail::malformed("root", text);
    unsigned k = detail::parse_bits(body.substr(0, colon));
    return RealValue(PrecisionReal::kth_root(parse_rational(body.substr(colon + 1)), k, bits));
  }
  return RealValue(parse_rational(s));
}

/// Top-level elements of `[x, y, ...]`.
inline std::vector<std::string_view> parse_list(std::string_view text) {
  std::string_view s = detail::trim(text);
  if (!s.starts_with('[') || !s.ends_with(']')) detail::malformed("list", text);
  s = detail::trim(s.substr(1, s.size() - 2));
  if (s.empty()) return {};
  return detail::split_top(s, ',');
}

inline std::vector<Integer> parse_integers(std::string_view text) {
  std::vector<Integer> out;
  for (auto item : parse_list(text)) out.push_back(parse_integer(item));
  return out;
}

inline std::vector<RealValue> parse_reals(std::string_view text,
                                          unsigned default_budget = PrecisionReal::kDefaultMaxPrecision) {
  std::vector<RealValue> out;
  for (auto item : parse_list(text)) out.push_back(parse_real(item, default_budget));
  return out;
}

inline IntMatrix parse_matrix(std::string_view text) {
  std::vector<std::vector<Integer>> rows;
  for (auto row : parse_list(text)) rows.push_back(parse_integers(row));
  if (rows.empty() || rows.front().empty()) detail::malformed("matrix", text);
  for (const auto& r : rows)
    if (r.size() != rows.front().size()) detail::malformed("matrix (ragged rows)", text);
  return IntMatrix::from_rows(rows);
}

struct ModuleLiteral {
  std::vector<RealValue> lambda;
  std::optional<GroupElement> unit;
};

inline ModuleLiteral parse_module(std::string_view text,
                                  unsigned default_budget = PrecisionReal::kDefaultMaxPrecision) {
  std::string_view s = detail::trim(text);
  if (!detail::consume(s, "module:")) detail::malformed("module literal", text);
  s = detail::trim(s);
  if (!s.starts_with('{') || !s.ends_with('}')) detail::malformed("module literal", text);
  ModuleLiteral out;
  bool have_lambda = false;
  for (auto field : detail::split_top(s.substr(1, s.size() - 2), ',')) {
    auto colon = field.find(':');
    if (colon == std::string_view::npos) detail::malformed("module field", field);
    auto key = detail::trim(field.substr(0, colon));
    auto value = field.substr(colon + 1);
    if (key == "lambda") {
      out.lambda = parse_reals(value, default_budget);
      have_lambda = true;
    } else if (key == "unit") {
      out.unit = GroupElement{parse_integers(value)};
    } else {
      detail::malformed("module field", field);
    }
  }
  if (!have_lambda) detail::malformed("module literal (no lambda)", text);
  return out;
}

/// `[a0;a1,a2,(p1,p2)]`, with `,...` before the bracket when truncated.
inline std::string format_cf(const CFExpansion& e) {
  std::vector<std::string> tail;
  for (std::size_t i = 1; i < e.preperiod.size(); ++i) tail.push_back(e.preperiod[i].str());
  if (e.period) {
    std::string p = "(";
    for (std::size_t i = 0; i < e.period->size(); ++i) p += (i ? "," : "") + (*e.period)[i].str();
    tail.push_back(p + ")");
  }
  if (e.truncated) tail.push_back("...");
  std::string s = "[";
  if (!e.preperiod.empty()) s += e.preperiod.front().str() + (tail.empty() ? "" : ";");
  for (std::size_t i = 0; i < tail.size(); ++i) s += (i ? "," : "") + tail[i];
  return s + "]";
}

inline CFExpansion parse_cf(std::string_view text) {
  std::string_view s = detail::trim(text);
  if (!s.starts_with('[') || !s.ends_with(']')) detail::malformed("continued fraction", text);
  s = s.substr(1, s.size() - 2);
  CFExpansion e;
  std::vector<std::string_view> items;
  if (auto semi = s.find(';'); semi != std::string_view::npos) {
    items.push_back(detail::trim(s.substr(0, semi)));
    for (auto it : detail::split_top(s.substr(semi + 1), ',')) items.push_back(it);
  } else if (!detail::trim(s).empty()) {
    items = detail::split_top(s, ',');
  }
  for (std::size_t i = 0; i < items.size(); ++i) {
    auto it = items[i];
    bool last = i + 1 == items.size();
    if (it == "..." && last) {
      e.truncated = true;
    } else if (it.starts_with('(') && it.ends_with(')') && (last || (i + 2 == items.size() && items.back() == "..."))) {
      std::vector<Integer> period;
      for (auto p : detail::split_top(it.substr(1, it.size() - 2), ',')) period.push_back(parse_integer(p));
      if (period.empty()) detail::malformed("period", it);
      e.period = std::move(period);
    } else {
      e.preperiod.push_back(parse_integer(it));
    }
  }
  return e;
}

inline std::string format_integers(const std::vector<Integer>& v) {
  std::string s = "[";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + v[i].str();
  return s + "]";
}

inline std::string format_jp(const JPExpansion& e) {
  std::string s = "[";
  for (std::size_t i = 0; i < e.steps.size(); ++i) {
    if (i) s += ",";
    s += "(";
    for (std::size_t j = 0; j < e.steps[i].digits.size(); ++j)
      s += (j ? "," : "") + e.steps[i].digits[j].str();
    s += ")";
  }
  if (e.truncated) s += e.steps.empty() ? "..." : ",...";
  return s + "]";
}

}  // namespace dimcf::text
