#pragma once

// Monomial cycles D(alpha) = sum_i alpha_i E_i^* over the ends of the graph,
// and what they determine: principal Q-cycles, the maximal cycle, base points
// of the maximal ideal with their Newton staircases, and the multiplicity.
//
// A one-vertex graph carries two formal ends on its single vertex.

#include <algorithm>
#include <cstdint>
#include <limits>
#include <map>
#include <numeric>
#include <optional>
#include <queue>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "spliceq/lattice.hpp"

namespace spliceq {

class UnknownEnd : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class InputOutsideCone : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class UnboundedStaircase : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct MonomialEnd {
  std::size_t vertex;
  std::string name;
};

inline std::vector<MonomialEnd> monomial_ends(const LatticeContext& ctx) {
  if (ctx.size() == 1) return {{0, ctx.id(0) + "#1"}, {0, ctx.id(0) + "#2"}};
  std::vector<MonomialEnd> out;
  for (auto v : ctx.ends()) out.push_back({v, ctx.id(v)});
  return out;
}

/// Exponents indexed like monomial_ends().
using MonomialExponent = std::vector<std::int64_t>;

inline QCycle monomial_cycle(const LatticeContext& ctx, const MonomialExponent& alpha) {
  const auto ends = monomial_ends(ctx);
  if (alpha.size() != ends.size())
    throw UnknownEnd("exponent has " + std::to_string(alpha.size()) + " entries for " + std::to_string(ends.size()) + " ends");
  QCycle d = ctx.zero();
  for (std::size_t i = 0; i < ends.size(); ++i) {
    if (alpha[i] < 0) throw std::invalid_argument("monomial exponents must be nonnegative");
    if (alpha[i] != 0) d += alpha[i] * ctx.dual(ends[i].vertex);
  }
  return d;
}

inline QCycle monomial_cycle(const LatticeContext& ctx, const std::map<std::string, std::int64_t>& alpha) {
  const auto ends = monomial_ends(ctx);
  MonomialExponent a(ends.size(), 0);
  for (const auto& [name, value] : alpha) {
    auto it = std::find_if(ends.begin(), ends.end(), [&](const MonomialEnd& e) { return e.name == name; });
    if (it == ends.end()) throw UnknownEnd("'" + name + "' is not an end of the graph");
    a[static_cast<std::size_t>(it - ends.begin())] = value;
  }
  return monomial_cycle(ctx, a);
}

namespace detail {

inline bool integral_difference(const std::vector<std::int64_t>& a, const std::vector<std::int64_t>& b, std::int64_t d) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if ((a[i] - b[i]) % d != 0) return false;
  return true;
}

struct CoordinateCap {
  std::size_t coordinate;
  std::int64_t numerator;  // D(alpha)_coordinate * d must stay <= this
};

/// Depth-first enumeration of exponents alpha over the monomial ends subject
/// to per-end maxima (nullopt = unbounded) and caps on coordinates of D(alpha).
/// Every end must be bounded by its maximum or by some cap. With `congruent_to`
/// only alpha with D(alpha) - congruent_to integral are visited; the end with
/// the widest range then steps through its residue class directly.
/// `visit(alpha, num)` returns true to stop the enumeration; the function then
/// returns true.
template <typename Visit>
bool enumerate_monomials(const LatticeContext& ctx, const std::vector<MonomialEnd>& ends,
                         const std::vector<std::optional<std::int64_t>>& alpha_max,
                         const std::vector<CoordinateCap>& caps, Visit visit,
                         const std::vector<std::int64_t>* congruent_to = nullptr) {
  const std::size_t n = ctx.size();
  const std::int64_t d = ctx.det();
  std::vector<std::int64_t> bound(ends.size());
  for (std::size_t i = 0; i < ends.size(); ++i) {
    std::optional<std::int64_t> b = alpha_max[i];
    for (const auto& c : caps) {
      const auto cb = std::max<std::int64_t>(-1, floor_div(c.numerator, ctx.dual_numerator(ends[i].vertex, c.coordinate)));
      b = b ? std::min(*b, cb) : cb;
    }
    if (!b) throw std::logic_error("unbounded monomial enumeration");
    bound[i] = *b;
  }
  for (const auto& c : caps)
    if (c.numerator < 0) return false;

  std::vector<std::size_t> order(ends.size());
  std::iota(order.begin(), order.end(), 0);
  std::map<std::vector<std::int64_t>, std::int64_t> residue;
  std::int64_t period = 1;
  if (congruent_to && !ends.empty()) {
    const auto widest = std::max_element(bound.begin(), bound.end()) - bound.begin();
    std::rotate(order.begin() + widest, order.begin() + widest + 1, order.end());
    const auto f = ends[order.back()].vertex;
    period = ctx.order_e(f);
    std::vector<std::int64_t> step(n, 0);
    for (std::int64_t r = 0; r < period; ++r) {
      residue.emplace(step, r);
      for (std::size_t u = 0; u < n; ++u) step[u] = (step[u] + ctx.dual_numerator(f, u)) % d;
    }
  }

  MonomialExponent alpha(ends.size(), 0);
  std::vector<std::int64_t> num(n, 0);
  std::vector<std::int64_t> want(n);
  auto within_caps = [&] {
    for (const auto& c : caps)
      if (num[c.coordinate] > c.numerator) return false;
    return true;
  };
  auto rec = [&](auto&& self, std::size_t depth) -> bool {
    if (depth == ends.size()) {
      if (congruent_to && !integral_difference(num, *congruent_to, d)) return false;
      return visit(static_cast<const MonomialExponent&>(alpha), static_cast<const std::vector<std::int64_t>&>(num));
    }
    const auto i = order[depth];
    const auto v = ends[i].vertex;
    std::int64_t start = 0;
    std::int64_t stride = 1;
    if (congruent_to && depth + 1 == ends.size()) {
      for (std::size_t u = 0; u < n; ++u) want[u] = mod_floor((*congruent_to)[u] - num[u], d);
      const auto it = residue.find(want);
      if (it == residue.end()) return false;
      start = it->second;
      stride = period;
    }
    const auto saved = num;
    bool stop = false;
    for (std::int64_t kv = start; kv <= bound[i]; kv += stride) {
      for (std::size_t u = 0; u < n; ++u)
        num[u] = checked::add(saved[u], checked::mul(kv, ctx.dual_numerator(v, u)));
      if (!within_caps()) break;
      alpha[i] = kv;
      if (self(self, depth + 1)) {
        stop = true;
        break;
      }
    }
    num = saved;
    alpha[i] = 0;
    return stop;
  };
  return rec(rec, 0);
}


}  // namespace detail

// ---------------------------------------------------------------------------
// Principal Q-cycles

struct PrincipalCertificate {
  bool principal = false;
  /// witness[v]: alpha with D(alpha) - l' integral, effective, zero at v.
  std::vector<std::optional<MonomialExponent>> witnesses;
  std::optional<std::size_t> refuting_vertex;
};

/// Decides l' in Pr' by a per-vertex witness search. l' must be anti-nef.
inline PrincipalCertificate is_principal(const LatticeContext& ctx, const QCycle& x) {
  ctx.own(x);
  if (!ctx.is_antinef(x)) throw InputOutsideCone("principal test requires an anti-nef cycle");
  const auto ends = monomial_ends(ctx);
  const auto& target = x.numerators();
  PrincipalCertificate cert;
  cert.principal = true;
  for (std::size_t v = 0; v < ctx.size(); ++v) {
    std::optional<MonomialExponent> found;
    // The v-coordinate of D(alpha) is pinned to l'_v; every end contributes
    // positively to it, which bounds the search.
    detail::enumerate_monomials(ctx, ends, std::vector<std::optional<std::int64_t>>(ends.size()),
                                {{v, target[v]}}, [&](const MonomialExponent& a, const std::vector<std::int64_t>& num) {
                                  if (num[v] != target[v]) return false;
                                  if (!detail::integral_difference(num, target, ctx.det())) return false;
                                  for (std::size_t u = 0; u < num.size(); ++u)
                                    if (num[u] < target[u]) return false;
                                  found = a;
                                  return true;
                                }, &target);
    if (!found && cert.principal) {
      cert.principal = false;
      cert.refuting_vertex = v;
    }
    cert.witnesses.push_back(std::move(found));
  }
  return cert;
}

// ---------------------------------------------------------------------------
// Maximal cycle

/// inf(L_E \ {0}), one coordinate at a time. D(alpha) is integral exactly when
/// sum_i alpha_i [E_i^*] = 0 in H, so the u-coordinate of the infimum is the
/// lightest nonempty closed walk at 0 in the Cayley graph of H on the end
/// classes, the step along end i weighing (E_i^*)_u.
inline QCycle zmax(const LatticeContext& ctx) {
  const auto ends = monomial_ends(ctx);
  const auto classes = ctx.all_classes();
  const std::size_t order = classes.size();
  const auto& factors = ctx.invariant_factors();
  auto index_of = [&](const HClass& h) {
    std::size_t idx = 0;
    for (std::size_t i = 0; i < factors.size(); ++i) idx = idx * static_cast<std::size_t>(factors[i]) + static_cast<std::size_t>(h.residues[i]);
    return idx;
  };
  std::vector<std::vector<std::size_t>> next(ends.size(), std::vector<std::size_t>(order));
  std::vector<std::size_t> back(ends.size());
  for (std::size_t i = 0; i < ends.size(); ++i) {
    const auto g = ctx.class_of(ctx.dual(ends[i].vertex));
    for (std::size_t c = 0; c < order; ++c) next[i][c] = index_of(ctx.add(classes[c], g));
    back[i] = index_of(ctx.negate(g));
  }

  constexpr auto kInf = std::numeric_limits<std::int64_t>::max();
  std::vector<Rational> coords(ctx.size());
  for (std::size_t u = 0; u < ctx.size(); ++u) {
    std::vector<std::int64_t> dist(order, kInf);
    using Item = std::pair<std::int64_t, std::size_t>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> queue;
    dist[0] = 0;
    queue.emplace(0, 0);
    while (!queue.empty()) {
      const auto [du, c] = queue.top();
      queue.pop();
      if (du != dist[c]) continue;
      for (std::size_t i = 0; i < ends.size(); ++i) {
        const auto nd = checked::add(du, ctx.dual_numerator(ends[i].vertex, u));
        if (nd < dist[next[i][c]]) {
          dist[next[i][c]] = nd;
          queue.emplace(nd, next[i][c]);
        }
      }
    }
    std::int64_t best = kInf;
    for (std::size_t i = 0; i < ends.size(); ++i)
      best = std::min(best, checked::add(dist[back[i]], ctx.dual_numerator(ends[i].vertex, u)));
    coords[u] = Rational(best, ctx.det());
  }
  return ctx.from_rationals(coords);
}

// ---------------------------------------------------------------------------
// Monomial condition

struct BranchVerdict {
  std::size_t node;
  std::size_t neighbor;  // first vertex of the branch
  std::optional<MonomialExponent> witness;
};

struct MonomialConditionReport {
  bool satisfied = true;
  std::vector<BranchVerdict> branches;
};

/// For every node v and branch C of v: is there D(alpha), alpha supported on
/// the ends of C, with D(alpha) - E_v^* integral, effective and supported on C?
inline MonomialConditionReport monomial_condition(const LatticeContext& ctx) {
  MonomialConditionReport rep;
  const auto ends = monomial_ends(ctx);
  for (auto v : ctx.nodes()) {
    const auto& target = ctx.dual(v).numerators();
    for (auto w : ctx.neighbors(v)) {
      std::vector<bool> in_branch(ctx.size(), false);
      std::vector<std::size_t> stack{w};
      in_branch[w] = true;
      while (!stack.empty()) {
        const auto u = stack.back();
        stack.pop_back();
        for (auto x : ctx.neighbors(u))
          if (x != v && !in_branch[x]) {
            in_branch[x] = true;
            stack.push_back(x);
          }
      }
      std::vector<std::optional<std::int64_t>> maxima;
      for (const auto& e : ends) maxima.push_back(in_branch[e.vertex] ? std::nullopt : std::optional<std::int64_t>(0));
      BranchVerdict verdict{v, w, std::nullopt};
      detail::enumerate_monomials(ctx, ends, maxima, {{v, target[v]}},
                                  [&](const MonomialExponent& a, const std::vector<std::int64_t>& num) {
                                    for (std::size_t u = 0; u < num.size(); ++u) {
                                      if (!in_branch[u] && num[u] != target[u]) return false;
                                      if (num[u] < target[u]) return false;
                                    }
                                    if (!detail::integral_difference(num, target, ctx.det())) return false;
                                    verdict.witness = a;
                                    return true;
                                  }, &target);
      if (!verdict.witness) rep.satisfied = false;
      rep.branches.push_back(std::move(verdict));
    }
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Base points and Newton staircases

struct LatticePoint2 {
  std::int64_t a = 0;
  std::int64_t b = 0;
  friend bool operator==(const LatticePoint2&, const LatticePoint2&) = default;
  friend auto operator<=>(const LatticePoint2&, const LatticePoint2&) = default;
};

enum class DoublePointKind { Edge, EndCurve };

struct NewtonStaircase {
  DoublePointKind kind = DoublePointKind::Edge;
  /// Edge: the two vertices ordered by id. EndCurve: the end's vertex twice.
  std::size_t first_vertex = 0;
  std::size_t second_vertex = 0;
  /// For EndCurve points, the name of the end (see monomial_ends()).
  std::string end_name;
  bool base_point = false;
  std::vector<LatticePoint2> minimal_points;  // sorted by a
  std::vector<LatticePoint2> boundary;        // Newton polygon vertices, sorted by a
  std::int64_t doubled_area = 0;
};

/// Minimal elements of a finite point set, sorted by a.
inline std::vector<LatticePoint2> minimal_points(std::vector<LatticePoint2> pts) {
  std::sort(pts.begin(), pts.end());
  std::vector<LatticePoint2> out;
  for (const auto& p : pts)
    if (out.empty() || p.b < out.back().b) out.push_back(p);
  return out;
}

/// Vertices of the lower convex hull of points sorted by a (collinear ones dropped).
inline std::vector<LatticePoint2> newton_boundary(const std::vector<LatticePoint2>& sorted) {
  std::vector<LatticePoint2> hull;
  auto cross = [](const LatticePoint2& o, const LatticePoint2& p, const LatticePoint2& q) {
    return static_cast<__int128>(p.a - o.a) * (q.b - o.b) - static_cast<__int128>(p.b - o.b) * (q.a - o.a);
  };
  for (const auto& p : sorted) {
    while (hull.size() >= 2 && cross(hull[hull.size() - 2], hull.back(), p) <= 0) hull.pop_back();
    hull.push_back(p);
  }
  return hull;
}

inline std::int64_t doubled_area(const std::vector<LatticePoint2>& boundary) {
  std::int64_t s = 0;
  for (std::size_t j = 0; j + 1 < boundary.size(); ++j)
    s = checked::add(s, checked::mul(boundary[j + 1].a - boundary[j].a, boundary[j].b + boundary[j + 1].b));
  return s;
}

constexpr std::int64_t kDefaultStaircaseCap = std::int64_t{1} << 16;

namespace detail {

/// Points (a, b) with a <= amax and b <= bmax over alpha with D(alpha) - Z_max
/// integral and effective.
inline std::vector<LatticePoint2> staircase_points(const LatticeContext& ctx, const std::vector<MonomialEnd>& ends,
                                                   const NewtonStaircase& p, std::size_t end_index, const QCycle& zmax,
                                                   std::int64_t amax, std::int64_t bmax) {
  const auto& z = zmax.numerators();
  const auto d = ctx.det();
  std::vector<std::optional<std::int64_t>> maxima(ends.size());
  std::vector<CoordinateCap> caps;
  if (p.kind == DoublePointKind::Edge) {
    caps.push_back({p.first_vertex, checked::add(z[p.first_vertex], checked::mul(amax, d))});
    caps.push_back({p.second_vertex, checked::add(z[p.second_vertex], checked::mul(bmax, d))});
  } else {
    maxima[end_index] = amax;
    caps.push_back({p.second_vertex, checked::add(z[p.second_vertex], checked::mul(bmax, d))});
  }
  std::vector<LatticePoint2> pts;
  enumerate_monomials(ctx, ends, maxima, caps, [&](const MonomialExponent& a, const std::vector<std::int64_t>& num) {
    for (std::size_t u = 0; u < num.size(); ++u)
      if (num[u] < z[u] || (num[u] - z[u]) % d != 0) return false;
    LatticePoint2 q;
    q.a = p.kind == DoublePointKind::Edge ? (num[p.first_vertex] - z[p.first_vertex]) / d : a[end_index];
    q.b = (num[p.second_vertex] - z[p.second_vertex]) / d;
    pts.push_back(q);
    return false;
  }, &z);
  return pts;
}

}  // namespace detail

/// One staircase per double point of E together with the end curves.
inline std::vector<NewtonStaircase> newton_staircases(const LatticeContext& ctx, const QCycle& zmax_cycle,
                                                      std::int64_t cap = kDefaultStaircaseCap) {
  const auto ends = monomial_ends(ctx);
  std::vector<std::pair<NewtonStaircase, std::size_t>> points;
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  for (std::size_t v = 0; v < ctx.size(); ++v)
    for (auto w : ctx.neighbors(v))
      if (ctx.id(v) < ctx.id(w)) edges.emplace_back(v, w);
  std::sort(edges.begin(), edges.end(), [&](const auto& x, const auto& y) {
    return std::pair(ctx.id(x.first), ctx.id(x.second)) < std::pair(ctx.id(y.first), ctx.id(y.second));
  });
  for (const auto& [v, w] : edges) {
    NewtonStaircase s;
    s.kind = DoublePointKind::Edge;
    s.first_vertex = v;
    s.second_vertex = w;
    points.emplace_back(std::move(s), 0);
  }
  for (std::size_t i = 0; i < ends.size(); ++i) {
    NewtonStaircase s;
    s.kind = DoublePointKind::EndCurve;
    s.first_vertex = s.second_vertex = ends[i].vertex;
    s.end_name = ends[i].name;
    points.emplace_back(std::move(s), i);
  }

  std::vector<NewtonStaircase> out;
  for (auto& [s, end_index] : points) {
    auto pts = detail::staircase_points(ctx, ends, s, end_index, zmax_cycle, 0, 0);
    if (!pts.empty()) {
      s.base_point = false;
      s.minimal_points = {{0, 0}};
      s.boundary = {{0, 0}};
      s.doubled_area = 0;
      out.push_back(std::move(s));
      continue;
    }
    s.base_point = true;
    auto axis = [&](bool along_a) -> std::int64_t {
      for (std::int64_t t = 1;; t = std::min(cap, t * 2)) {
        auto found = along_a ? detail::staircase_points(ctx, ends, s, end_index, zmax_cycle, t, 0)
                             : detail::staircase_points(ctx, ends, s, end_index, zmax_cycle, 0, t);
        if (!found.empty()) {
          std::int64_t best = t;
          for (const auto& q : found) best = std::min(best, along_a ? q.a : q.b);
          return best;
        }
        if (t >= cap) break;
      }
      throw UnboundedStaircase("no " + std::string(along_a ? "a" : "b") + "-axis point below the search cap " +
                               std::to_string(cap));
    };
    const auto a_star = axis(true);
    const auto b_star = axis(false);
    s.minimal_points = minimal_points(detail::staircase_points(ctx, ends, s, end_index, zmax_cycle, a_star, b_star));
    s.boundary = newton_boundary(s.minimal_points);
    s.doubled_area = doubled_area(s.boundary);
    out.push_back(std::move(s));
  }
  return out;
}

struct MultiplicityReport {
  QCycle zmax;
  std::int64_t neg_zmax_square = 0;
  std::vector<NewtonStaircase> staircases;
  std::int64_t total = 0;
};

inline MultiplicityReport multiplicity(const LatticeContext& ctx, std::int64_t cap = kDefaultStaircaseCap) {
  MultiplicityReport r;
  r.zmax = zmax(ctx);
  const Rational sq = ctx.pair(r.zmax, r.zmax);
  if (!sq.is_integer()) throw std::logic_error("Z_max^2 is not an integer");
  r.neg_zmax_square = -sq.num();
  r.staircases = newton_staircases(ctx, r.zmax, cap);
  r.total = r.neg_zmax_square;
  for (const auto& s : r.staircases) r.total = checked::add(r.total, s.doubled_area);
  return r;
}

}  // namespace spliceq
