#pragma once

// Plumbing graphs: parsing, canonical serialization and validation.
//
// File format:
//   {"vertices":[{"id":"v1","euler":-2},...],"edges":[["v1","v2"],...]}
// An optional integer "genus" per vertex is accepted by the parser so that a
// nonzero value can be reported by validate() instead of being dropped.

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <json.hpp>

#include "spliceq/matrix.hpp"

namespace spliceq {

struct Vertex {
  std::string id;
  std::int64_t euler = 0;
  std::int64_t genus = 0;

  friend bool operator==(const Vertex&, const Vertex&) = default;
};

struct PlumbingGraph {
  std::vector<Vertex> vertices;
  std::vector<std::pair<std::string, std::string>> edges;

  std::optional<std::size_t> index_of(std::string_view id) const {
    for (std::size_t i = 0; i < vertices.size(); ++i)
      if (vertices[i].id == id) return i;
    return std::nullopt;
  }

  friend bool operator==(const PlumbingGraph&, const PlumbingGraph&) = default;
};

enum class GraphErrorKind { Syntax, DuplicateId, UnknownEndpoint };

inline const char* to_string(GraphErrorKind k) {
  switch (k) {
    case GraphErrorKind::Syntax: return "SyntaxError";
    case GraphErrorKind::DuplicateId: return "DuplicateId";
    case GraphErrorKind::UnknownEndpoint: return "UnknownEndpoint";
  }
  return "?";
}

class GraphError : public std::runtime_error {
 public:
  GraphError(GraphErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  GraphErrorKind kind() const { return kind_; }

 private:
  GraphErrorKind kind_;
};

inline PlumbingGraph parse_graph(std::string_view text) {
  using nlohmann::json;
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw GraphError(GraphErrorKind::Syntax, e.what());
  }
  auto syntax = [](const std::string& msg) { return GraphError(GraphErrorKind::Syntax, msg); };
  if (!doc.is_object()) throw syntax("graph document must be a JSON object");
  if (!doc.contains("vertices") || !doc["vertices"].is_array()) throw syntax("missing \"vertices\" array");
  if (doc.contains("edges") && !doc["edges"].is_array()) throw syntax("\"edges\" must be an array");

  PlumbingGraph g;
  std::set<std::string> seen;
  for (const auto& v : doc["vertices"]) {
    if (!v.is_object()) throw syntax("vertex entries must be objects");
    if (!v.contains("id") || !v["id"].is_string()) throw syntax("vertex without string \"id\"");
    if (!v.contains("euler") || !v["euler"].is_number_integer()) throw syntax("vertex without integer \"euler\"");
    Vertex vx{v["id"].get<std::string>(), v["euler"].get<std::int64_t>(), 0};
    if (v.contains("genus")) {
      if (!v["genus"].is_number_integer()) throw syntax("\"genus\" must be an integer");
      vx.genus = v["genus"].get<std::int64_t>();
    }
    if (!seen.insert(vx.id).second) throw GraphError(GraphErrorKind::DuplicateId, "duplicate vertex id '" + vx.id + "'");
    g.vertices.push_back(std::move(vx));
  }
  if (doc.contains("edges")) {
    for (const auto& e : doc["edges"]) {
      if (!e.is_array() || e.size() != 2 || !e[0].is_string() || !e[1].is_string())
        throw syntax("edges must be pairs of vertex ids");
      auto a = e[0].get<std::string>();
      auto b = e[1].get<std::string>();
      for (const auto& end : {a, b})
        if (!seen.count(end)) throw GraphError(GraphErrorKind::UnknownEndpoint, "edge endpoint '" + end + "' is not a vertex");
      g.edges.emplace_back(std::move(a), std::move(b));
    }
  }
  return g;
}

/// Vertices sorted by id, each edge with sorted endpoints, edges sorted.
inline PlumbingGraph canonical(const PlumbingGraph& g) {
  PlumbingGraph c = g;
  std::sort(c.vertices.begin(), c.vertices.end(), [](const Vertex& a, const Vertex& b) { return a.id < b.id; });
  for (auto& [a, b] : c.edges)
    if (b < a) std::swap(a, b);
  std::sort(c.edges.begin(), c.edges.end());
  return c;
}

inline nlohmann::json graph_to_json(const PlumbingGraph& g) {
  nlohmann::json verts = nlohmann::json::array();
  for (const auto& v : g.vertices) {
    nlohmann::json o;
    o["id"] = v.id;
    o["euler"] = v.euler;
    if (v.genus != 0) o["genus"] = v.genus;
    verts.push_back(std::move(o));
  }
  nlohmann::json edges = nlohmann::json::array();
  for (const auto& [a, b] : g.edges) edges.push_back({a, b});
  return {{"vertices", std::move(verts)}, {"edges", std::move(edges)}};
}

inline std::string serialize_graph(const PlumbingGraph& g) { return graph_to_json(canonical(g)).dump(); }

/// Intersection matrix in vertex order: euler numbers on the diagonal, 1 per edge.
inline IntMatrix intersection_matrix(const PlumbingGraph& g) {
  const std::size_t n = g.vertices.size();
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = g.vertices[i].euler;
  for (const auto& [a, b] : g.edges) {
    const auto i = *g.index_of(a);
    const auto j = *g.index_of(b);
    if (i == j) continue;
    m(i, j) += 1;
    m(j, i) += 1;
  }
  return m;
}

enum class Violation {
  Empty,
  NonzeroGenus,
  SelfLoop,
  DuplicateEdge,
  EulerNotNegative,
  NotConnected,
  NotATree,
  NotNegativeDefinite,
};

inline const char* to_string(Violation v) {
  switch (v) {
    case Violation::Empty: return "Empty";
    case Violation::NonzeroGenus: return "NonzeroGenus";
    case Violation::SelfLoop: return "SelfLoop";
    case Violation::DuplicateEdge: return "DuplicateEdge";
    case Violation::EulerNotNegative: return "EulerNotNegative";
    case Violation::NotConnected: return "NotConnected";
    case Violation::NotATree: return "NotATree";
    case Violation::NotNegativeDefinite: return "NotNegativeDefinite";
  }
  return "?";
}

struct ViolationEntry {
  Violation kind;
  std::string detail;
};

struct ValidationReport {
  std::vector<ViolationEntry> violations;

  bool ok() const { return violations.empty(); }
  bool has(Violation v) const {
    return std::any_of(violations.begin(), violations.end(), [v](const auto& e) { return e.kind == v; });
  }
};

inline ValidationReport validate(const PlumbingGraph& g) {
  ValidationReport rep;
  auto add = [&](Violation v, std::string detail) { rep.violations.push_back({v, std::move(detail)}); };
  const std::size_t n = g.vertices.size();
  if (n == 0) {
    add(Violation::Empty, "graph has no vertices");
    return rep;
  }
  for (const auto& v : g.vertices) {
    if (v.genus != 0) add(Violation::NonzeroGenus, "vertex '" + v.id + "' has genus " + std::to_string(v.genus));
    if (v.euler >= 0) add(Violation::EulerNotNegative, "vertex '" + v.id + "' has euler " + std::to_string(v.euler));
  }

  std::set<std::pair<std::string, std::string>> seen;
  std::vector<std::vector<std::size_t>> adj(n);
  std::size_t simple_edges = 0;
  for (const auto& [a, b] : g.edges) {
    if (a == b) {
      add(Violation::SelfLoop, "self-loop at '" + a + "'");
      continue;
    }
    auto key = a < b ? std::make_pair(a, b) : std::make_pair(b, a);
    if (!seen.insert(key).second) {
      add(Violation::DuplicateEdge, "duplicate edge '" + key.first + "'-'" + key.second + "'");
      continue;
    }
    const auto i = *g.index_of(a);
    const auto j = *g.index_of(b);
    adj[i].push_back(j);
    adj[j].push_back(i);
    ++simple_edges;
  }

  // Components by union-find over the simple edges; a simple graph has a
  // cycle iff it has more than n - components edges.
  std::vector<std::size_t> parent(n);
  for (std::size_t i = 0; i < n; ++i) parent[i] = i;
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  std::size_t components = n;
  for (std::size_t u = 0; u < n; ++u)
    for (auto w : adj[u]) {
      const auto a = find(u), b = find(w);
      if (a != b) {
        parent[a] = b;
        --components;
      }
    }
  if (components != 1) add(Violation::NotConnected, "graph has " + std::to_string(components) + " components");
  if (simple_edges > n - components) add(Violation::NotATree, "graph contains a cycle");

  const auto minors = leading_principal_minors([&] {
    IntMatrix m = intersection_matrix(g);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) m(i, j) = -m(i, j);
    return m;
  }());
  for (std::size_t k = 0; k < minors.size(); ++k)
    if (minors[k] <= 0) {
      add(Violation::NotNegativeDefinite,
          "leading principal minor " + std::to_string(k + 1) + " of the negated form is " + std::to_string(minors[k]));
      break;
    }
  return rep;
}

}  // namespace spliceq
