#pragma once

// JSON rendering shared by the report and the command-line tool. Every number
// is exact: plain integers stay JSON integers, rationals become "p/q" strings.

#include <string>

#include <json.hpp>

#include "spliceq/cycles.hpp"
#include "spliceq/invariants.hpp"
#include "spliceq/lattice.hpp"

namespace spliceq {

inline constexpr const char* kVersion = "0.1.0";

inline nlohmann::json to_json(const Rational& r) { return r.str(); }

/// Cycle as a map id -> rational string (zero coordinates included).
inline nlohmann::json to_json(const LatticeContext& ctx, const QCycle& x) {
  nlohmann::json o = nlohmann::json::object();
  for (std::size_t v = 0; v < ctx.size(); ++v) o[ctx.id(v)] = x.coord(v).str();
  return o;
}

inline nlohmann::json to_json(const HClass& h) { return h.residues; }

inline std::string class_label(const HClass& h) {
  std::string s = "(";
  for (std::size_t i = 0; i < h.residues.size(); ++i) s += (i ? "," : "") + std::to_string(h.residues[i]);
  return s + ")";
}

inline nlohmann::json to_json(const SwTable& t) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& [h, v] : t) arr.push_back({{"class", to_json(h)}, {"sw", to_json(v)}});
  return arr;
}

inline nlohmann::json to_json(const LatticeContext& ctx, const MonomialExponent& a) {
  const auto ends = monomial_ends(ctx);
  nlohmann::json o = nlohmann::json::object();
  for (std::size_t i = 0; i < ends.size(); ++i) o[ends[i].name] = a[i];
  return o;
}

inline nlohmann::json to_json(const std::vector<LatticePoint2>& pts) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& p : pts) arr.push_back({p.a, p.b});
  return arr;
}

inline nlohmann::json to_json(const LatticeContext& ctx, const NewtonStaircase& s) {
  nlohmann::json o;
  if (s.kind == DoublePointKind::Edge) {
    o["kind"] = "edge";
    o["components"] = {ctx.id(s.first_vertex), ctx.id(s.second_vertex)};
  } else {
    o["kind"] = "end_curve";
    o["end"] = s.end_name;
    o["components"] = {"H:" + s.end_name, ctx.id(s.second_vertex)};
  }
  o["base_point"] = s.base_point;
  o["minimal_points"] = to_json(s.minimal_points);
  o["boundary"] = to_json(s.boundary);
  o["doubled_area"] = s.doubled_area;
  return o;
}

inline nlohmann::json lattice_json(const LatticeContext& ctx) {
  nlohmann::json o;
  o["det"] = ctx.det();
  o["invariant_factors"] = ctx.invariant_factors();
  nlohmann::json duals = nlohmann::json::object();
  nlohmann::json orders = nlohmann::json::object();
  nlohmann::json valency = nlohmann::json::object();
  for (std::size_t v = 0; v < ctx.size(); ++v) {
    duals[ctx.id(v)] = to_json(ctx, ctx.dual(v));
    orders[ctx.id(v)] = ctx.order_e(v);
    valency[ctx.id(v)] = ctx.valency(v);
  }
  o["duals"] = std::move(duals);
  o["order_e"] = std::move(orders);
  o["valency"] = std::move(valency);
  o["K"] = to_json(ctx, ctx.canonical());
  o["K2"] = to_json(ctx.pair(ctx.canonical(), ctx.canonical()));
  return o;
}

struct ReportOptions {
  unsigned threads = 1;
  std::int64_t staircase_cap = kDefaultStaircaseCap;
};

/// Everything in one document: det, H, K, K^2, Z_min, Z_max, p_g, mult and
/// the SW table, plus the tool version and the canonical graph.
inline nlohmann::json invariant_report(const LatticeContext& ctx, ReportOptions opt = {}) {
  nlohmann::json o;
  o["version"] = kVersion;
  o["graph"] = graph_to_json(canonical(ctx.graph()));
  o["det"] = ctx.det();
  o["invariant_factors"] = ctx.invariant_factors();
  o["K"] = to_json(ctx, ctx.canonical());
  o["K2"] = to_json(ctx.pair(ctx.canonical(), ctx.canonical()));
  const QCycle zmin = ctx.laufer_zmin();
  o["zmin"] = to_json(ctx, zmin);
  o["zmin2"] = to_json(ctx.pair(zmin, zmin));
  const auto mult = multiplicity(ctx, opt.staircase_cap);
  o["zmax"] = to_json(ctx, mult.zmax);
  o["zmax2"] = -mult.neg_zmax_square;
  o["pg"] = geometric_genus(ctx);
  o["multiplicity"] = mult.total;
  o["sw"] = to_json(sw_table(ctx, opt.threads));
  return o;
}

}  // namespace spliceq
