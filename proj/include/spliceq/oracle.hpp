#pragma once

// Brute-force oracles for the test suite and the hidden `oracle` CLI
// namespace. Deliberately slow and structurally unlike the production paths:
// nothing here includes or calls the series engine or the monomial searches.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "spliceq/lattice.hpp"
#include "spliceq/rational.hpp"

namespace spliceq::oracle {

class NotAString : public std::invalid_argument {
 public:
  NotAString() : std::invalid_argument("graph is not a string (path)") {}
};

class BoxTooSmall : public std::runtime_error {
 public:
  BoxTooSmall() : std::runtime_error("no nonzero anti-nef cycle inside the search box") {}
};

namespace detail {

inline std::vector<Rational> coords(const LatticeContext& ctx, const QCycle& x) {
  std::vector<Rational> c;
  for (std::size_t v = 0; v < ctx.size(); ++v) c.push_back(x.coord(v));
  return c;
}

inline bool all_geq(const std::vector<Rational>& a, const std::vector<Rational>& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] < b[i]) return false;
  return true;
}

inline bool differs_by_integral(const std::vector<Rational>& a, const std::vector<Rational>& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (!(a[i] - b[i]).is_integer()) return false;
  return true;
}

/// Calls f(k) for every k in prod_i [0, hi_i].
template <typename F>
void for_each_in_box(const std::vector<std::int64_t>& hi, F f) {
  std::vector<std::int64_t> k(hi.size(), 0);
  if (std::any_of(hi.begin(), hi.end(), [](auto h) { return h < 0; })) return;
  for (;;) {
    f(static_cast<const std::vector<std::int64_t>&>(k));
    std::size_t i = 0;
    while (i < k.size() && k[i] == hi[i]) k[i++] = 0;
    if (i == k.size()) return;
    ++k[i];
  }
}

/// Coefficients of (1 - x)^m up to degree `deg` by repeated multiplication.
inline std::vector<std::int64_t> power_of_one_minus_x(std::int64_t m, std::int64_t deg) {
  std::vector<std::int64_t> p(static_cast<std::size_t>(deg + 1), 0);
  p[0] = 1;
  for (std::int64_t r = 0; r < (m >= 0 ? m : -m); ++r) {
    std::vector<std::int64_t> q(p.size(), 0);
    for (std::size_t i = 0; i < p.size(); ++i) {
      if (m >= 0) {
        q[i] += p[i];
        if (i + 1 < q.size()) q[i + 1] -= p[i];
      } else {
        // times 1 + x + x^2 + ...
        for (std::size_t j = i; j < q.size(); ++j) q[j] += p[i];
      }
    }
    p = std::move(q);
  }
  return p;
}

}  // namespace detail

/// Ends of a string graph: the two extremities (both formal ends on a single vertex).
inline std::pair<std::size_t, std::size_t> string_ends(const LatticeContext& ctx) {
  if (ctx.size() == 1) return {0, 0};
  std::vector<std::size_t> leaves;
  for (std::size_t v = 0; v < ctx.size(); ++v) {
    if (ctx.valency(v) > 2) throw NotAString();
    if (ctx.valency(v) == 1) leaves.push_back(v);
  }
  if (leaves.size() != 2) throw NotAString();
  return {leaves[0], leaves[1]};
}

/// A box size large enough for string_hilbert_count at l'.
inline std::int64_t string_box_bound(const LatticeContext& ctx, const QCycle& x) {
  const auto [e1, e2] = string_ends(ctx);
  std::int64_t b = 0;
  for (auto e : {e1, e2})
    for (std::size_t u = 0; u < ctx.size(); ++u) b = std::max(b, (x.coord(u) / ctx.dual(e).coord(u)).ceil());
  return b;
}

/// Number of monomials z1^a1 z2^a2 of the class of l' with a1 E_1^* + a2 E_2^* not >= l',
/// by a double loop over [0, B]^2.
inline std::int64_t string_hilbert_count(const LatticeContext& ctx, const QCycle& x, std::int64_t box) {
  const auto [e1, e2] = string_ends(ctx);
  const auto target = detail::coords(ctx, x);
  std::int64_t count = 0;
  for (std::int64_t a1 = 0; a1 <= box; ++a1)
    for (std::int64_t a2 = 0; a2 <= box; ++a2) {
      const auto d = detail::coords(ctx, a1 * ctx.dual(e1) + a2 * ctx.dual(e2));
      if (detail::differs_by_integral(d, target) && !detail::all_geq(d, target)) ++count;
    }
  return count;
}

enum class RegionMode { NotGeq, EffNotGeq };

/// Unpruned box re-implementation of the truncated sums:
///   NotGeq:    sum of c_{l''} over l'' in l' + L, l'' not >= l'
///   EffNotGeq: same with l'' >= l' and l'' not >= l' + l.
/// The box is prod_v [0, K_v] over all vertices, with K_v the smallest k
/// such that k E_v^* dominates the region's upper corner, cut down to the
/// degree of the vertex factor where that factor is a polynomial.
inline std::int64_t naive_series_region(const LatticeContext& ctx, const QCycle& x, RegionMode mode,
                                        std::optional<QCycle> l = std::nullopt) {
  const std::size_t n = ctx.size();
  const auto low = detail::coords(ctx, x);
  auto high = low;
  if (mode == RegionMode::EffNotGeq) {
    if (!l) throw std::invalid_argument("EffNotGeq needs the cycle l");
    high = detail::coords(ctx, x + *l);
  }
  std::vector<std::int64_t> hi(n);
  std::int64_t max_deg = 0;
  for (std::size_t v = 0; v < n; ++v) {
    std::int64_t k = 0;
    for (std::size_t u = 0; u < n; ++u) k = std::max(k, (high[u] / ctx.dual(v).coord(u)).ceil());
    // (1 - x)^m with m >= 0 is a polynomial of degree m.
    const auto m = static_cast<std::int64_t>(ctx.valency(v)) - 2;
    hi[v] = m >= 0 ? std::min(k, m) : k;
    max_deg = std::max(max_deg, k);
  }
  std::vector<std::vector<std::int64_t>> series(n);
  for (std::size_t v = 0; v < n; ++v)
    series[v] = detail::power_of_one_minus_x(static_cast<std::int64_t>(ctx.valency(v)) - 2, max_deg);

  std::int64_t total = 0;
  detail::for_each_in_box(hi, [&](const std::vector<std::int64_t>& k) {
    std::vector<Rational> p(n, Rational(0));
    for (std::size_t v = 0; v < n; ++v)
      for (std::size_t u = 0; u < n; ++u) p[u] += Rational(k[v]) * ctx.dual(v).coord(u);
    if (!detail::differs_by_integral(p, low)) return;
    if (detail::all_geq(p, high)) return;
    if (mode == RegionMode::EffNotGeq && !detail::all_geq(p, low)) return;
    std::int64_t c = 1;
    for (std::size_t v = 0; v < n; ++v) c *= series[v][static_cast<std::size_t>(k[v])];
    total += c;
  });
  return total;
}

/// Minimal nonzero anti-nef integral cycle among all cycles in [0, bound]^V.
inline QCycle brute_zmin(const LatticeContext& ctx, std::int64_t bound) {
  if (ctx.size() > 6 || bound > 10) throw std::invalid_argument("brute_zmin is limited to 6 vertices and bound 10");
  std::vector<std::vector<std::int64_t>> found;
  detail::for_each_in_box(std::vector<std::int64_t>(ctx.size(), bound), [&](const std::vector<std::int64_t>& c) {
    if (std::all_of(c.begin(), c.end(), [](auto x) { return x == 0; })) return;
    // (c, E_v) = euler_v c_v + sum over neighbours, straight from the graph.
    for (std::size_t v = 0; v < ctx.size(); ++v) {
      std::int64_t p = ctx.graph().vertices[v].euler * c[v];
      for (const auto& [a, b] : ctx.graph().edges) {
        if (a == ctx.id(v)) p += c[ctx.index_of(b)];
        if (b == ctx.id(v)) p += c[ctx.index_of(a)];
      }
      if (p > 0) return;
    }
    found.push_back(c);
  });
  if (found.empty()) throw BoxTooSmall();
  std::vector<std::int64_t> m = found.front();
  for (const auto& c : found)
    for (std::size_t v = 0; v < m.size(); ++v) m[v] = std::min(m[v], c[v]);
  if (std::find(found.begin(), found.end(), m) == found.end())
    throw std::logic_error("anti-nef cycles have no minimum in the box");
  return ctx.from_integers(m);
}

/// Principal test through the cycle condition: for every v an effective
/// integral l_v with zero v-coordinate, (l_v, E_u) = -(l', E_u) off the ends
/// and <= on the ends. Searched over [0, bound]^V per vertex by backtracking
/// in breadth-first order: a vertex's equation is checked once its closed
/// neighbourhood is assigned, and an equality fixes the last neighbour. With
/// no bound given, one is derived from the v-coordinate of l'.
inline bool principal_by_cycle_condition(const LatticeContext& ctx, const QCycle& x,
                                         std::optional<std::int64_t> bound = std::nullopt) {
  const std::size_t n = ctx.size();
  std::vector<bool> is_end(n, false);
  if (n == 1) is_end[0] = true;
  for (std::size_t v = 0; v < n; ++v)
    if (ctx.valency(v) == 1) is_end[v] = true;

  const auto xc = detail::coords(ctx, x);
  std::vector<Rational> rhs(n);
  for (std::size_t u = 0; u < n; ++u) {
    Rational p = Rational(ctx.euler(u)) * xc[u];
    for (auto w : ctx.neighbors(u)) p += xc[w];
    rhs[u] = -p;
  }
  for (std::size_t u = 0; u < n; ++u)
    if (!is_end[u] && !rhs[u].is_integer()) return false;

  // Breadth-first order from vertex 0; closes[i] lists the vertices whose
  // closed neighbourhood is complete once position i is assigned.
  std::vector<std::size_t> order{0}, pos(n, 0);
  std::vector<bool> seen(n, false);
  seen[0] = true;
  for (std::size_t i = 0; i < order.size(); ++i)
    for (auto w : ctx.neighbors(order[i]))
      if (!seen[w]) {
        seen[w] = true;
        order.push_back(w);
      }
  for (std::size_t i = 0; i < n; ++i) pos[order[i]] = i;
  std::vector<std::vector<std::size_t>> closes(n);
  for (std::size_t u = 0; u < n; ++u) {
    std::size_t last = pos[u];
    for (auto w : ctx.neighbors(u)) last = std::max(last, pos[w]);
    closes[last].push_back(u);
  }

  std::vector<std::int64_t> c(n, 0);
  auto partial = [&](std::size_t u, std::size_t skip) {
    std::int64_t p = u == skip ? 0 : ctx.euler(u) * c[u];
    for (auto w : ctx.neighbors(u))
      if (w != skip) p += c[w];
    return p;
  };

  for (std::size_t v = 0; v < n; ++v) {
    std::int64_t b = bound.value_or(0);
    if (!bound) {
      for (std::size_t u = 0; u < n; ++u) {
        Rational s(0);
        for (std::size_t e = 0; e < n; ++e)
          if (is_end[e]) s += (xc[v] / ctx.dual(e).coord(v)) * ctx.dual(e).coord(u);
        b = std::max(b, s.floor());
      }
    }
    auto rec = [&](auto&& self, std::size_t i) -> bool {
      if (i == n) return true;
      const auto w = order[i];
      std::int64_t lo = 0, hi = w == v ? 0 : b;
      for (auto u : closes[i])
        if (!is_end[u] && u != w) {
          // w is a neighbour of u with coefficient 1.
          const auto forced = rhs[u].num() - partial(u, w);
          lo = std::max(lo, forced);
          hi = std::min(hi, forced);
        }
      for (std::int64_t k = lo; k <= hi; ++k) {
        c[w] = k;
        bool ok = true;
        for (auto u : closes[i]) {
          const Rational p(partial(u, n));
          if (is_end[u] ? p > rhs[u] : p != rhs[u]) {
            ok = false;
            break;
          }
        }
        if (ok && self(self, i + 1)) return true;
      }
      c[w] = 0;
      return false;
    };
    std::fill(c.begin(), c.end(), 0);
    if (!rec(rec, 0)) return false;
  }
  return true;
}

}  // namespace spliceq::oracle
