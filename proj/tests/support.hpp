#pragma once

#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "spliceq/spliceq.hpp"

#ifndef SPLICEQ_GRAPHS_DIR
#error "SPLICEQ_GRAPHS_DIR must point at the sample graph directory"
#endif

namespace support {

using namespace spliceq;

inline std::string graph_path(const std::string& name) { return std::string(SPLICEQ_GRAPHS_DIR) + "/" + name + ".json"; }

inline PlumbingGraph load(const std::string& name) {
  std::ifstream in(graph_path(name));
  if (!in) throw std::runtime_error("missing fixture " + name);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_graph(buf.str());
}

/// The valid sample graphs.
inline const std::vector<std::string>& fixture_names() {
  static const std::vector<std::string> names{"single_m2", "ex_m8", "ex61_left", "ex61_right", "sigma_2_3_7", "e8"};
  return names;
}

inline PlumbingGraph string_graph(const std::vector<std::int64_t>& eulers) {
  PlumbingGraph g;
  for (std::size_t i = 0; i < eulers.size(); ++i) {
    g.vertices.push_back({"s" + std::to_string(i), eulers[i], 0});
    if (i) g.edges.emplace_back("s" + std::to_string(i - 1), "s" + std::to_string(i));
  }
  return g;
}

inline PlumbingGraph star_graph(std::int64_t center, const std::vector<std::vector<std::int64_t>>& legs) {
  PlumbingGraph g;
  g.vertices.push_back({"c", center, 0});
  for (std::size_t l = 0; l < legs.size(); ++l)
    for (std::size_t j = 0; j < legs[l].size(); ++j) {
      const std::string id = "l" + std::to_string(l) + "_" + std::to_string(j);
      g.vertices.push_back({id, legs[l][j], 0});
      g.edges.emplace_back(j ? "l" + std::to_string(l) + "_" + std::to_string(j - 1) : "c", id);
    }
  return g;
}

/// A_n, D_n, E_6, E_7, E_8 with all Euler numbers -2.
inline std::vector<std::pair<std::string, PlumbingGraph>> ade_trees() {
  std::vector<std::pair<std::string, PlumbingGraph>> out;
  for (std::size_t n = 1; n <= 7; ++n) out.emplace_back("A" + std::to_string(n), string_graph(std::vector<std::int64_t>(n, -2)));
  for (std::size_t n = 4; n <= 8; ++n)
    out.emplace_back("D" + std::to_string(n), star_graph(-2, {{-2}, {-2}, std::vector<std::int64_t>(n - 3, -2)}));
  out.emplace_back("E6", star_graph(-2, {{-2}, {-2, -2}, {-2, -2}}));
  out.emplace_back("E7", star_graph(-2, {{-2}, {-2, -2}, {-2, -2, -2}}));
  out.emplace_back("E8", star_graph(-2, {{-2}, {-2, -2}, {-2, -2, -2, -2}}));
  return out;
}

using Rng = std::mt19937_64;

inline std::int64_t uniform(Rng& rng, std::int64_t lo, std::int64_t hi) {
  return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng);
}

/// Negative-definite string with 1..max_n vertices; Euler numbers in
/// [min_euler, -1], -1 only where validation still passes, and |det| <= max_det.
inline PlumbingGraph random_string(Rng& rng, std::size_t max_n, std::int64_t min_euler = -5,
                                   std::int64_t max_det = INT64_MAX) {
  for (;;) {
    const auto n = static_cast<std::size_t>(uniform(rng, 1, static_cast<std::int64_t>(max_n)));
    std::vector<std::int64_t> e(n);
    for (auto& x : e) x = uniform(rng, 0, 5) == 0 ? -1 : uniform(rng, min_euler, -2);
    auto g = string_graph(e);
    if (validate(g).ok() && spliceq::LatticeContext(g).det() <= max_det) return g;
  }
}

/// Negative-definite star with 3 or 4 legs of length 1..max_leg and
/// |det| <= max_det; truncated-sum regions grow like a power of |det|.
inline PlumbingGraph random_star(Rng& rng, std::size_t max_leg, std::size_t max_vertices = 10, std::int64_t min_euler = -4,
                                 std::int64_t max_det = 400) {
  for (;;) {
    const auto nlegs = static_cast<std::size_t>(uniform(rng, 3, 4));
    std::vector<std::vector<std::int64_t>> legs(nlegs);
    std::size_t total = 1;
    for (auto& leg : legs) {
      leg.resize(static_cast<std::size_t>(uniform(rng, 1, static_cast<std::int64_t>(max_leg))));
      for (auto& x : leg) x = uniform(rng, min_euler, -2);
      total += leg.size();
    }
    if (total > max_vertices) continue;
    auto g = star_graph(uniform(rng, -3, -1), legs);
    if (validate(g).ok() && spliceq::LatticeContext(g).det() <= max_det) return g;
  }
}

/// sum_v k_v E_v^* with k_v uniform in [lo, hi]: arbitrary points of L'.
inline QCycle random_dual_point(const LatticeContext& ctx, Rng& rng, std::int64_t lo, std::int64_t hi) {
  std::vector<std::int64_t> k(ctx.size());
  for (auto& x : k) x = uniform(rng, lo, hi);
  return ctx.from_dual_coords(k);
}

/// Random point of L' with E coordinates inside roughly [-spread, spread].
inline QCycle random_lprime(const LatticeContext& ctx, Rng& rng, std::int64_t spread) {
  const auto classes = ctx.all_classes();
  QCycle x = ctx.r_rep(ctx.lift(classes[static_cast<std::size_t>(uniform(rng, 0, static_cast<std::int64_t>(classes.size()) - 1))]));
  std::vector<std::int64_t> shift(ctx.size());
  for (auto& s : shift) s = uniform(rng, -spread, spread);
  return x + ctx.from_integers(shift);
}

inline QCycle random_effective_integral(const LatticeContext& ctx, Rng& rng, std::int64_t hi) {
  std::vector<std::int64_t> c(ctx.size());
  for (auto& x : c) x = uniform(rng, 0, hi);
  return ctx.from_integers(c);
}

/// The same graph with vertex ids renamed and listed in reverse order.
inline PlumbingGraph relabeled(const PlumbingGraph& g) {
  PlumbingGraph r;
  auto rename = [](const std::string& id) { return "x_" + id; };
  for (auto it = g.vertices.rbegin(); it != g.vertices.rend(); ++it) r.vertices.push_back({rename(it->id), it->euler, 0});
  for (auto it = g.edges.rbegin(); it != g.edges.rend(); ++it) r.edges.emplace_back(rename(it->second), rename(it->first));
  return r;
}

}  // namespace support

namespace spliceq {

inline void PrintTo(const Rational& r, std::ostream* os) { *os << r.str(); }
inline void PrintTo(const HClass& h, std::ostream* os) { *os << class_label(h); }
inline void PrintTo(const QCycle& x, std::ostream* os) {
  *os << "[";
  for (std::size_t v = 0; v < x.size(); ++v) *os << (v ? " " : "") << x.coord(v).str();
  *os << "]";
}

}  // namespace spliceq
