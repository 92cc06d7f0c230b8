#pragma once

#include <functional>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "dimcf/dimcf.hpp"

namespace dimcf::cli {

enum ExitCode { kOk = 0, kMalformed = 1, kDomain = 2, kExhausted = 3 };

struct Output {
  nlohmann::json json;
  std::string text;
};

namespace detail {

inline std::string join_reals(const std::vector<RealValue>& v) {
  std::string s = "[";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + v[i].str();
  return s + "]";
}

inline std::string format_rows(const IntMatrix& m) { return m.str(); }

inline std::string decimal(const PrecisionReal& x, unsigned digits) {
  return to_decimal(x.low(), digits) + " .. " + to_decimal(x.high(), digits, true);
}

}  // namespace detail

/// Runs one invocation. Output goes to `out`, diagnostics to `err`.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Continued fractions, the modular group and ordered Z-modules in R", "dimcf"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string format = "text";
  unsigned precision = PrecisionReal::kDefaultMaxPrecision;
  std::size_t depth = 20;
  std::size_t budget = 50;
  app.add_option("--format", format, "Output format")->check(CLI::IsMember({"text", "json"}));
  app.add_option("--precision", precision, "Refinement budget in bits for dec: and root: inputs")
      ->check(CLI::Range(1u, 1u << 20));
  app.add_option("--depth", depth, "Expansion depth")->check(CLI::PositiveNumber);
  app.add_option("--budget", budget, "Depth budget for equivalence decisions")
      ->check(CLI::PositiveNumber);

  std::function<Output()> action;
  auto command = [&](const char* name, const char* help) { return app.add_subcommand(name, help); };

  std::string input, input_y, matrix_text, theta_text, module_text, module_b, element_text,
      digits_text;
  std::string level = "1", genus, regions;
  std::size_t step = 0, samples = 1000;
  std::string bound = "50";
  std::uint64_t seed = 0x5eed;
  unsigned bits = 64;
  bool pad = false;

  auto real = [&](const std::string& s) { return text::parse_real(s, precision); };
  auto unimod = [&](const std::string& s) { return UniModMatrix(text::parse_matrix(s)); };
  auto module_of = [&](const std::string& s) {
    auto lit = text::parse_module(s, precision);
    return build_module(std::move(lit.lambda), std::move(lit.unit));
  };
  auto element = [&](const std::string& s) { return GroupElement{text::parse_integers(s)}; };

  auto* c = command("cf-expand", "Regular continued fraction");
  c->add_option("--input", input, "Real number")->required();
  c->callback([&] {
    action = [&] {
      auto e = cf_expand(real(input), depth);
      return Output{json::cf(e), text::format_cf(e)};
    };
  });

  c = command("convergents", "Convergents p/q with their partial products");
  c->add_option("--input", input, "Real number")->required();
  c->callback([&] {
    action = [&] {
      auto e = cf_expand(real(input), depth);
      std::size_t k = std::min(depth, e.available());
      auto cs = cf_convergents(e, k - 1);
      nlohmann::json j = nlohmann::json::array();
      std::string t;
      for (std::size_t i = 0; i < cs.size(); ++i) {
        j.push_back({{"k", i},
                     {"p", json::integer(cs[i].p)},
                     {"q", json::integer(cs[i].q)},
                     {"matrix", json::matrix(cs[i].t_product)}});
        t += std::to_string(i) + " " + cs[i].p.str() + "/" + cs[i].q.str() + " " +
             cs[i].t_product.str() + "\n";
      }
      if (!t.empty()) t.pop_back();
      return Output{j, t};
    };
  });

  c = command("cf-equiv", "GL(2,Z)-equivalence of two reals");
  c->add_option("--x", input, "First real")->required();
  c->add_option("--y", input_y, "Second real")->required();
  c->callback([&] {
    action = [&] {
      auto r = gl2_equivalent(real(input), real(input_y), budget);
      return Output{json::decision(r), std::string(to_string(r.decision)) + " (" + r.diagnostic + ")"};
    };
  });

  c = command("mobius", "Apply (a x + b)/(c x + d)");
  c->add_option("--matrix", matrix_text, "2x2 unimodular matrix")->required();
  c->add_option("--input", input, "Real number")->required();
  c->callback([&] {
    action = [&] {
      auto v = mobius_apply(unimod(matrix_text), real(input));
      return Output{json::real(v), v.str()};
    };
  });

  c = command("factor", "Factor into (0 1; 1 a) matrices");
  c->add_option("--matrix", matrix_text, "2x2 matrix with non-negative entries")->required();
  c->add_flag("--pad-parity", pad, "Pad to an even, non-empty factor count");
  c->callback([&] {
    action = [&] {
      auto d = factor_unimodular(unimod(matrix_text), pad);
      return Output{json::integers(d), text::format_integers(d)};
    };
  });

  c = command("jp-expand", "Jacobi-Perron expansion");
  c->add_option("--theta", theta_text, "List of n-1 reals")->required();
  c->callback([&] {
    action = [&] {
      auto e = jp_expand(text::parse_reals(theta_text, precision), depth);
      std::string t = text::format_jp(e);
      if (e.terminated) t += " terminated";
      return Output{json::jp(e), t};
    };
  });

  c = command("jp-reconstruct", "Ratio vector of a Jacobi-Perron convergent");
  c->add_option("--theta", theta_text, "List of n-1 reals")->required();
  c->add_option("--step", step, "Step index k (defaults to --depth)");
  c->callback([&] {
    action = [&] {
      std::size_t k = step ? step : depth;
      auto e = jp_expand(text::parse_reals(theta_text, precision), k);
      auto conv = jp_convergents(e, std::min(k, e.steps.size()));
      auto ratios = jp_ratios(conv);
      nlohmann::json rj = nlohmann::json::array();
      std::string t = conv.a.str() + "\n";
      for (std::size_t i = 0; i < ratios.size(); ++i) {
        rj.push_back(ratios[i].str());
        t += (i ? " " : "") + ratios[i].str();
      }
      return Output{{{"k", conv.k}, {"matrix", json::matrix(conv.a)}, {"ratios", rj}}, t};
    };
  });

  c = command("classify", "Elliptic, parabolic or hyperbolic");
  c->add_option("--matrix", matrix_text, "2x2 unimodular matrix")->required();
  c->callback([&] {
    action = [&] {
      std::string k(to_string(classify_element(unimod(matrix_text))));
      return Output{k, k};
    };
  });

  c = command("fixed-points", "Fixed points on the boundary");
  c->add_option("--matrix", matrix_text, "2x2 unimodular matrix")->required();
  c->callback([&] {
    action = [&] {
      nlohmann::json j = nlohmann::json::array();
      std::string t;
      for (const auto& p : fixed_points(unimod(matrix_text))) {
        j.push_back(p.str());
        t += (t.empty() ? "" : " ") + p.str();
      }
      return Output{j, t};
    };
  });

  c = command("axis-length", "Translation length of a hyperbolic element");
  c->add_option("--matrix", matrix_text, "2x2 unimodular matrix")->required();
  c->add_option("--bits", bits, "Precision of the enclosure")->check(CLI::Range(8u, 1u << 16));
  c->callback([&] {
    action = [&] {
      auto len = axis_length(unimod(matrix_text), bits, std::max(precision, bits));
      RealValue v(len);
      return Output{{{"interval", {len.low().str(), len.high().str()}},
                     {"approx", detail::decimal(len, 18)},
                     {"precision", len.precision()}},
                    detail::decimal(len, 18)};
    };
  });

  c = command("gamma", "Membership in Gamma(N)");
  c->add_option("--matrix", matrix_text, "2x2 unimodular matrix")->required();
  c->add_option("--level", level, "Level N");
  c->callback([&] {
    action = [&] {
      auto m = gamma_membership(unimod(matrix_text), CongruenceLevel(text::parse_integer(level)));
      return Output{m.member, m.member ? "true" : "false"};
    };
  });

  c = command("legendre-audit", "Partial products against Gamma(N)");
  c->add_option("--input", input, "Real number");
  c->add_option("--digits", digits_text, "Digit list [a0,a1,...]");
  c->add_option("--level", level, "Level N");
  c->callback([&] {
    action = [&] {
      if (input.empty() == digits_text.empty())
        fail(ErrorKind::ParseError, "give exactly one of --input and --digits");
      CFExpansion e;
      if (!digits_text.empty()) e.preperiod = text::parse_integers(digits_text);
      else e = cf_expand(real(input), depth);
      auto rows = legendre_audit(e, CongruenceLevel(text::parse_integer(level)),
                                 std::min(depth, e.available()));
      std::string t;
      for (const auto& r : rows)
        t += std::to_string(r.k) + " " + r.t.str() + " " + (r.member ? "true" : "false") + "\n";
      if (!t.empty()) t.pop_back();
      return Output{json::audit(rows), t};
    };
  });

  c = command("module-build", "Build the module Z lambda_1 + ... + Z lambda_n");
  c->add_option("--module", module_text, "module:{lambda:[...], unit:[...]}")->required();
  c->callback([&] {
    action = [&] {
      auto m = module_of(module_text);
      std::string t = "theta " + detail::join_reals(m.theta) + "\nunit " +
                      text::format_integers(m.order_unit.coords) + "\n" +
                      std::string(to_string(m.dependence));
      if (m.relation) t += " " + text::format_integers(m.relation->coords);
      return Output{json::module(m), t};
    };
  });

  c = command("cone", "Sign of an element");
  c->add_option("--module", module_text, "Module literal")->required();
  c->add_option("--element", element_text, "Integer coordinates")->required();
  c->callback([&] {
    action = [&] {
      auto m = module_of(module_text);
      std::string s(to_string(cone_contains(m, element(element_text))));
      return Output{s, s};
    };
  });

  c = command("state", "Normalized state f(x) with f(unit) = 1");
  c->add_option("--module", module_text, "Module literal")->required();
  c->add_option("--element", element_text, "Integer coordinates")->required();
  c->callback([&] {
    action = [&] {
      auto v = state_eval(module_of(module_text), element(element_text));
      return Output{json::real(v), v.str()};
    };
  });

  c = command("order-iso", "Order isomorphism of two modules");
  c->add_option("--a", module_text, "First module literal")->required();
  c->add_option("--b", module_b, "Second module literal")->required();
  c->callback([&] {
    action = [&] {
      auto r = order_iso(module_of(module_text), module_of(module_b), budget);
      return Output{json::decision(r), std::string(to_string(r.decision)) + " (" + r.diagnostic + ")"};
    };
  });

  c = command("chain", "Simplicial approximation chain");
  c->add_option("--module", module_text, "Module literal")->required();
  c->callback([&] {
    action = [&] {
      auto ch = simplicial_chain(module_of(module_text), depth);
      std::string t = std::string(to_string(ch.source));
      for (const auto& m : ch.matrices) t += "\n" + m.str();
      if (ch.terminated) t += "\nterminated";
      return Output{json::chain(ch), t};
    };
  });

  c = command("rank", "Rank n = 2g + |lambda| - 1");
  c->add_option("--genus", genus, "Genus g >= 2")->required();
  c->add_option("--regions", regions, "Number of principal regions >= 1")->required();
  c->callback([&] {
    action = [&] {
      auto n = rank_from_topology(text::parse_integer(genus), text::parse_integer(regions));
      return Output{json::integer(n), n.str()};
    };
  });

  c = command("riesz-audit", "Sampled audit of the ordered-group axioms");
  c->add_option("--module", module_text, "Module literal")->required();
  c->add_option("--samples", samples, "Number of samples")->check(CLI::PositiveNumber);
  c->add_option("--bound", bound, "Coordinate bound");
  c->add_option("--seed", seed, "Random seed");
  c->callback([&] {
    action = [&] {
      auto r = riesz_audit(module_of(module_text), samples, text::parse_integer(bound), seed);
      std::string t = "samples " + std::to_string(r.samples) + "\nviolations " +
                      std::to_string(r.violation_count) + "\nexhausted " + std::to_string(r.exhausted);
      for (const auto& v : r.violations) {
        t += "\n" + v.axiom + ":";
        for (const auto& w : v.witness) t += " " + text::format_integers(w.coords);
      }
      return Output{json::riesz(r), t};
    };
  });

  std::vector<const char*> argv{"dimcf"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kOk : kMalformed;
  }

  bool as_json = format == "json";
  try {
    Output result = action();
    if (as_json) out << result.json.dump() << "\n";
    else out << result.text << "\n";
    return kOk;
  } catch (const Error& e) {
    err << e.what() << "\n";
    if (as_json) out << json::error(e).dump() << "\n";
    if (e.kind() == ErrorKind::ParseError) return kMalformed;
    if (e.kind() == ErrorKind::PrecisionExhausted) return kExhausted;
    return kDomain;
  }
}

}  // namespace dimcf::cli
