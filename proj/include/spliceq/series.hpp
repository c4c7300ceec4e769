#pragma once

// Coefficients of prod_v (1 - t^{E_v^*})^{valency_v - 2} and truncated sums
// of them over lattice regions.
//
// The E_v^* form a basis of L', so every point l'' has a unique exponent
// vector k_v = -(l'', E_v) and its coefficient is a product of per-vertex
// factors. Vertices of valency 2 contribute (1 - x)^0 and force k_v = 0;
// nodes contribute a polynomial of degree valency - 2. Only ends (and the
// single vertex of a one-vertex graph, exponent -2) have unbounded range,
// which the region queries cut off by domination pruning.

#include <algorithm>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <utility>
#include <vector>

#include "spliceq/lattice.hpp"
#include "spliceq/rational.hpp"

namespace spliceq {

class NotEffective : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct SeriesOptions {
  /// Extra slack added to every unbounded exponent range. Results must not
  /// depend on it; tests use it as a stability check.
  std::int64_t bound_padding = 0;
};

inline std::int64_t binomial(std::int64_t n, std::int64_t k) {
  if (k < 0 || k > n) return 0;
  std::int64_t r = 1;
  for (std::int64_t i = 1; i <= k; ++i) r = checked::mul(r, n - k + i) / i;
  return r;
}

/// Coefficient of x^k in (1 - x)^{valency - 2}.
inline std::int64_t vertex_weight(std::size_t valency, std::int64_t k) {
  if (k < 0) return 0;
  switch (valency) {
    case 0: return checked::add(k, 1);
    case 1: return 1;
    case 2: return k == 0 ? 1 : 0;
    default: {
      const auto top = static_cast<std::int64_t>(valency) - 2;
      if (k > top) return 0;
      const auto b = binomial(top, k);
      return (k % 2 == 0) ? b : -b;
    }
  }
}

/// c_{l'}.
inline std::int64_t coeff_c(const LatticeContext& ctx, const QCycle& x) {
  const auto k = ctx.dual_coords(x);
  std::int64_t c = 1;
  for (std::size_t v = 0; v < ctx.size(); ++v) {
    const auto w = vertex_weight(ctx.valency(v), k[v]);
    if (w == 0) return 0;
    c = checked::mul(c, w);
  }
  return c;
}

namespace detail {

/// Depth-first enumeration of support points sum_v k_v E_v^* over the
/// vertices of valency != 2. `limit(v)` caps k_v for ends and one-vertex
/// graphs; nodes are capped at valency - 2. `dominated(num)` returns true
/// when the partial point, and so every completion of it, is outside the
/// region; for a fixed prefix the test is monotone in the current exponent.
/// Vertices listed in `skip` are left at k = 0.
template <typename Limit, typename Dominated, typename Visit>
void enumerate_support(const LatticeContext& ctx, Limit limit, Dominated dominated, Visit visit,
                       const std::vector<std::size_t>& skip = {}) {
  const std::size_t n = ctx.size();
  std::vector<std::size_t> free;
  for (std::size_t v = 0; v < n; ++v)
    if (ctx.valency(v) != 2 && std::find(skip.begin(), skip.end(), v) == skip.end()) free.push_back(v);

  std::vector<std::int64_t> bound(free.size());
  for (std::size_t i = 0; i < free.size(); ++i) {
    const auto val = ctx.valency(free[i]);
    bound[i] = val >= 3 ? static_cast<std::int64_t>(val) - 2 : limit(free[i]);
  }

  std::vector<std::int64_t> k(n, 0);
  std::vector<std::int64_t> num(n, 0);

  auto rec = [&](auto&& self, std::size_t depth, std::int64_t weight) -> void {
    if (depth == free.size()) {
      visit(static_cast<const std::vector<std::int64_t>&>(k), static_cast<const std::vector<std::int64_t>&>(num), weight);
      return;
    }
    const auto v = free[depth];
    const auto saved = num;
    for (std::int64_t kv = 0; kv <= bound[depth]; ++kv) {
      if (kv > 0)
        for (std::size_t u = 0; u < n; ++u) num[u] = checked::add(num[u], ctx.dual_numerator(v, u));
      if (dominated(static_cast<const std::vector<std::int64_t>&>(num))) break;
      k[v] = kv;
      self(self, depth + 1, checked::mul(weight, vertex_weight(ctx.valency(v), kv)));
    }
    k[v] = 0;
    num = saved;
  };
  rec(rec, 0, 1);
}

inline bool dominates(const std::vector<std::int64_t>& a, const std::vector<std::int64_t>& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] < b[i]) return false;
  return true;
}

inline bool congruent(const std::vector<std::int64_t>& a, const std::vector<std::int64_t>& b, std::int64_t d) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (mod_floor(a[i] - b[i], d) != 0) return false;
  return true;
}

/// Smallest k with k * E_v^* >= cap componentwise (0 if cap <= 0).
inline std::int64_t domination_bound(const LatticeContext& ctx, std::size_t v, const std::vector<std::int64_t>& cap) {
  std::int64_t b = 0;
  for (std::size_t u = 0; u < ctx.size(); ++u) b = std::max(b, ceil_div(cap[u], ctx.dual_numerator(v, u)));
  return b;
}

}  // namespace detail

namespace detail {

inline __int128 floor_div_wide(__int128 a, __int128 b) {
  __int128 q = a / b;
  if (a % b != 0 && ((a < 0) != (b < 0))) --q;
  return q;
}

/// sum_{i=0}^{n-1} floor((a i + b) / m) for m > 0.
inline __int128 floor_sum(__int128 n, __int128 m, __int128 a, __int128 b) {
  __int128 ans = 0;
  if (n <= 0) return 0;
  if (a < 0 || a >= m) {
    const auto q = floor_div_wide(a, m);
    ans += q * (n * (n - 1) / 2);
    a -= q * m;
  }
  if (b < 0 || b >= m) {
    const auto q = floor_div_wide(b, m);
    ans += q * n;
    b -= q * m;
  }
  for (;;) {
    if (a >= m) {
      ans += (n * (n - 1) / 2) * (a / m);
      a %= m;
    }
    if (b >= m) {
      ans += n * (b / m);
      b %= m;
    }
    const __int128 y = a * n + b;
    if (y < m) break;
    n = y / m;
    b = y % m;
    std::swap(m, a);
  }
  return ans;
}

/// sum_{k=0}^{count-1} max_u floor((alpha_u - beta_u k) / gamma_u) with
/// gamma_u > 0, split along the upper envelope of the lines.
inline __int128 sum_of_max_floor(std::int64_t count, const std::vector<__int128>& alpha,
                                 const std::vector<__int128>& beta, const std::vector<__int128>& gamma) {
  __int128 total = 0;
  const std::size_t n = alpha.size();
  for (std::size_t u = 0; u < n; ++u) {
    __int128 lo = 0, hi = count - 1;
    for (std::size_t w = 0; w < n && lo <= hi; ++w) {
      if (w == u) continue;
      // Line u beats line w at k iff k * s <= t (strictly for w < u).
      const __int128 t = alpha[u] * gamma[w] - alpha[w] * gamma[u];
      const __int128 s = beta[u] * gamma[w] - beta[w] * gamma[u];
      const bool strict = w < u;
      if (s == 0) {
        if (strict ? t <= 0 : t < 0) hi = -1;
      } else if (s > 0) {
        hi = std::min(hi, floor_div_wide(strict ? t - 1 : t, s));
      } else {
        lo = std::max(lo, strict ? floor_div_wide(t, s) + 1 : -floor_div_wide(-t, s));
      }
    }
    if (lo <= hi) total += floor_sum(hi - lo + 1, gamma[u], -beta[u], alpha[u] - beta[u] * lo);
  }
  return total;
}

/// Sum of c_{l''} over l'' congruent to `target` mod L with l'' not >= cap.
/// The two ends with the widest ranges are summed in closed form: their
/// weights are 1, so for a fixed prefix and a fixed residue of the first end
/// the count along the second is the floor of a maximum of linear functions.
inline std::int64_t region_sum(const LatticeContext& ctx, const std::vector<std::int64_t>& target,
                               const std::vector<std::int64_t>& cap, std::int64_t padding) {
  const std::size_t n = ctx.size();
  const std::int64_t d = ctx.det();
  auto limit = [&](std::size_t v) { return domination_bound(ctx, v, cap) + padding; };
  auto pruned = [&](const auto& num) { return dominates(num, cap); };

  std::vector<std::size_t> ends;
  for (std::size_t v = 0; v < n; ++v)
    if (ctx.valency(v) == 1) ends.push_back(v);

  std::int64_t total = 0;
  if (ends.size() < 2) {
    enumerate_support(ctx, limit, pruned, [&](const auto&, const auto& num, std::int64_t w) {
      if (congruent(num, target, d)) total = checked::add(total, w);
    });
    return total;
  }

  std::stable_sort(ends.begin(), ends.end(), [&](std::size_t x, std::size_t y) {
    return domination_bound(ctx, x, cap) > domination_bound(ctx, y, cap);
  });
  const std::size_t fb = ends[0];
  const std::size_t fa = ends[1];
  const std::int64_t ea = ctx.order_e(fa);
  const std::int64_t eb = ctx.order_e(fb);
  std::map<std::vector<std::int64_t>, std::int64_t> residue;
  std::vector<std::int64_t> step(n, 0);
  for (std::int64_t r = 0; r < eb; ++r) {
    residue.emplace(step, r);
    for (std::size_t u = 0; u < n; ++u) step[u] = (step[u] + ctx.dual_numerator(fb, u)) % d;
  }

  std::vector<std::int64_t> rest(n), gap(n);
  std::vector<__int128> alpha(n), beta(n), gamma(n);
  for (std::size_t u = 0; u < n; ++u) {
    beta[u] = static_cast<__int128>(ea) * ctx.dual_numerator(fa, u);
    gamma[u] = static_cast<__int128>(eb) * ctx.dual_numerator(fb, u);
  }
  enumerate_support(
      ctx, limit, pruned,
      [&](const auto&, const auto& num, std::int64_t w) {
        if (w == 0) return;
        // i E_a^* + j E_b^* completes the prefix; i < first_i keeps some
        // coordinate below the cap for j = 0.
        std::int64_t first_i = 0;
        for (std::size_t u = 0; u < n; ++u) {
          gap[u] = checked::sub(cap[u], num[u]);
          first_i = std::max(first_i, ceil_div(gap[u], ctx.dual_numerator(fa, u)));
          rest[u] = mod_floor(target[u] - num[u], d);
        }
        __int128 sum = 0;
        for (std::int64_t rho = 0; rho < std::min(ea, first_i); ++rho) {
          if (rho > 0)
            for (std::size_t u = 0; u < n; ++u) rest[u] = mod_floor(rest[u] - ctx.dual_numerator(fa, u), d);
          const auto it = residue.find(rest);
          if (it == residue.end()) continue;
          const std::int64_t r = it->second;
          const std::int64_t count = floor_div(first_i - rho - 1, ea) + 1;
          for (std::size_t u = 0; u < n; ++u)
            alpha[u] = static_cast<__int128>(gap[u]) - 1 - static_cast<__int128>(r) * ctx.dual_numerator(fb, u) -
                       static_cast<__int128>(rho) * ctx.dual_numerator(fa, u);
          // Each i contributes 1 + floor((t(i) - 1 - r) / e_b) with t(i) the
          // first j reaching the cap.
          sum += count + sum_of_max_floor(count, alpha, beta, gamma);
        }
        total = checked::add(total, checked::mul(w, checked::narrow(sum)));
      },
      {fa, fb});
  return total;
}

}  // namespace detail

/// sum_{a in L, a not >= 0} c_{l'+a}, the Hilbert coefficient h(l').
inline std::int64_t sum_trunc(const LatticeContext& ctx, const QCycle& x, SeriesOptions opt = {}) {
  ctx.own(x);
  return detail::region_sum(ctx, x.numerators(), x.numerators(), opt.bound_padding);
}

/// dim H^0(O(-l')) / H^0(O(-l'-l)) for an integral effective l: the sum of
/// c_{l''} over l'' in l' + L with l'' >= l' and l'' not >= l' + l. The
/// region is {not >= l' + l} minus {not >= l'}.
inline std::int64_t h0_quotient_dim(const LatticeContext& ctx, const QCycle& x, const QCycle& l, SeriesOptions opt = {}) {
  ctx.own(x);
  ctx.own(l);
  if (!l.is_integral() || !l.is_effective()) throw NotEffective("the cycle l must be integral and effective");
  const QCycle upper = x + l;
  return checked::sub(detail::region_sum(ctx, x.numerators(), upper.numerators(), opt.bound_padding),
                      detail::region_sum(ctx, x.numerators(), x.numerators(), opt.bound_padding));
}

struct PoincareTerm {
  Rational exponent;
  std::int64_t coefficient;

  friend bool operator==(const PoincareTerm&, const PoincareTerm&) = default;
};

/// The h-eigenpart of the series restricted to the variable t_u, up to
/// E_u-degree max_degree. Terms with zero aggregated coefficient are omitted.
inline std::vector<PoincareTerm> vertex_poincare(const LatticeContext& ctx, std::size_t u, const HClass& h,
                                                 std::int64_t max_degree) {
  if (max_degree < 0) throw std::invalid_argument("max degree must be nonnegative");
  if (u >= ctx.size()) throw std::invalid_argument("vertex index out of range");
  const auto target = ctx.r_rep(ctx.lift(h)).numerators();
  const std::int64_t cap = checked::mul(max_degree, ctx.det());
  std::map<std::int64_t, std::int64_t> agg;
  detail::enumerate_support(
      ctx, [&](std::size_t v) { return cap / ctx.dual_numerator(v, u); },
      [&](const auto& num) { return num[u] > cap; },
      [&](const auto&, const auto& num, std::int64_t w) {
        if (detail::congruent(num, target, ctx.det())) agg[num[u]] = checked::add(agg[num[u]], w);
      });
  std::vector<PoincareTerm> out;
  for (const auto& [e, c] : agg)
    if (c != 0) out.push_back({Rational(e, ctx.det()), c});
  return out;
}

}  // namespace spliceq
