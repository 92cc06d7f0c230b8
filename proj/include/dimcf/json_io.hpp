#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "dimcf/dimension_group.hpp"
#include "dimcf/error.hpp"
#include "dimcf/integer.hpp"
#include "dimcf/jacobi_perron.hpp"
#include "dimcf/matrix.hpp"
#include "dimcf/modular_group.hpp"
#include "dimcf/real_value.hpp"
#include "dimcf/regular_cf.hpp"

namespace dimcf::json {

using nlohmann::json;

/// Integers that fit in 64 bits become JSON numbers, larger ones strings.
inline json integer(const Integer& x) {
  if (auto v = to_int64(x)) return *v;
  return x.str();
}

inline json integers(const std::vector<Integer>& v) {
  json out = json::array();
  for (const auto& x : v) out.push_back(integer(x));
  return out;
}

inline json matrix(const IntMatrix& m) {
  json out = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) out.push_back(integers(m.row(i)));
  return out;
}

inline json matrix(const UniModMatrix& m) { return matrix(m.matrix()); }

inline json real(const RealValue& x) { return x.str(); }

inline json cf(const CFExpansion& e) {
  return {{"preperiod", integers(e.preperiod)},
          {"period", e.period ? integers(*e.period) : json(nullptr)},
          {"truncated", e.truncated}};
}

inline json jp(const JPExpansion& e) {
  json steps = json::array();
  for (const auto& s : e.steps) steps.push_back(integers(s.digits));
  return {{"n", e.n}, {"steps", steps}, {"terminated", e.terminated}, {"truncated", e.truncated}};
}

inline json audit(const std::vector<AuditRow>& rows) {
  json out = json::array();
  for (const auto& r : rows) out.push_back({{"k", r.k}, {"matrix", matrix(r.t)}, {"member", r.member}});
  return out;
}

inline json chain(const SimplicialChain& c) {
  json ms = json::array();
  for (const auto& m : c.matrices) ms.push_back(matrix(m));
  return {{"n", c.n}, {"source", std::string(to_string(c.source))}, {"matrices", ms},
          {"terminated", c.terminated}};
}

inline json element(const GroupElement& x) { return integers(x.coords); }

inline json module(const ModuleRep& m) {
  json lambda = json::array(), theta = json::array();
  for (const auto& v : m.lambda) lambda.push_back(real(v));
  for (const auto& v : m.theta) theta.push_back(real(v));
  return {{"n", m.n},
          {"lambda", lambda},
          {"theta", theta},
          {"unit", element(m.order_unit)},
          {"dependence", std::string(to_string(m.dependence))},
          {"relation", m.relation ? element(*m.relation) : json(nullptr)}};
}

inline json decision(const DecisionReport& r) {
  return {{"decision", std::string(to_string(r.decision))}, {"diagnostic", r.diagnostic}};
}

inline json riesz(const RieszReport& r) {
  json vs = json::array();
  for (const auto& v : r.violations) {
    json w = json::array();
    for (const auto& x : v.witness) w.push_back(element(x));
    vs.push_back({{"axiom", v.axiom}, {"witness", w}});
  }
  return {{"samples", r.samples},
          {"violation_count", r.violation_count},
          {"violations", vs},
          {"exhausted", r.exhausted},
          {"incidents", r.incidents}};
}

inline json error(const Error& e) {
  json out = {{"kind", std::string(to_string(e.kind()))}, {"message", e.what()}};
  if (e.index()) out["index"] = *e.index();
  return {{"error", out}};
}

}  // namespace dimcf::json
