#pragma once

// Seiberg-Witten invariants, h^1 of natural line bundles and the geometric
// genus, all from truncated sums of the series coefficients.
//
// For l' with l' + K anti-nef,
//   sw([-l'] * sigma_can) = -sum_{a in L, a not >= 0} c_{l'+a} - ((K + 2l')^2 + |V|) / 8,
// independently of the representative. Spin^c structures are addressed by
// their offset h from the canonical one.

#include <algorithm>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <thread>
#include <vector>

#include "spliceq/lattice.hpp"
#include "spliceq/rational.hpp"
#include "spliceq/series.hpp"

namespace spliceq {

class NonIntegralResult : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class NegativeResult : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// ((K + 2l')^2 + |V|) / 8.
inline Rational quadratic_term(const LatticeContext& ctx, const QCycle& x) {
  const QCycle y = ctx.canonical() + 2 * x;
  return (ctx.pair(y, y) + Rational(static_cast<std::int64_t>(ctx.size()))) / Rational(8);
}

/// The invariant from a caller-chosen representative x (x + K must be anti-nef);
/// the value belongs to the class -[x].
inline Rational sw_from_representative(const LatticeContext& ctx, const QCycle& x) {
  if (!ctx.is_antinef(x + ctx.canonical()))
    throw std::invalid_argument("representative must satisfy l' + K anti-nef");
  return Rational(-sum_trunc(ctx, x)) - quadratic_term(ctx, x);
}

/// sw(h * sigma_can).
inline Rational sw_invariant(const LatticeContext& ctx, const HClass& h) {
  return sw_from_representative(ctx, ctx.artin_shift(ctx.negate(h)));
}

using SwTable = std::map<HClass, Rational>;

/// The full table; classes are split across `threads` workers.
inline SwTable sw_table(const LatticeContext& ctx, unsigned threads = 1) {
  const auto classes = ctx.all_classes();
  std::vector<Rational> values(classes.size());
  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(classes.size())));
  if (threads == 1) {
    for (std::size_t i = 0; i < classes.size(); ++i) values[i] = sw_invariant(ctx, classes[i]);
  } else {
    std::vector<std::exception_ptr> errors(threads);
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t)
      pool.emplace_back([&, t] {
        try {
          for (std::size_t i = t; i < classes.size(); i += threads) values[i] = sw_invariant(ctx, classes[i]);
        } catch (...) {
          errors[t] = std::current_exception();
        }
      });
    pool.clear();
    for (const auto& e : errors)
      if (e) std::rethrow_exception(e);
  }
  SwTable table;
  for (std::size_t i = 0; i < classes.size(); ++i) table.emplace(classes[i], values[i]);
  return table;
}

struct H1Report {
  QCycle l_prime;
  std::int64_t value = 0;
  std::int64_t truncated_sum = 0;
  Rational sw_term;
  Rational quadratic;
};

/// h^1(O(-l')) = -( sum_trunc(l') + sw([-l'] * sigma_can) + ((K+2l')^2 + |V|)/8 ).
/// Throws NonIntegralResult / NegativeResult instead of rounding or clamping.
inline H1Report h1_natural(const LatticeContext& ctx, const QCycle& x) {
  H1Report r;
  r.l_prime = x;
  r.truncated_sum = sum_trunc(ctx, x);
  r.sw_term = sw_invariant(ctx, ctx.class_of(-x));
  r.quadratic = quadratic_term(ctx, x);
  const Rational v = -(Rational(r.truncated_sum) + r.sw_term + r.quadratic);
  if (!v.is_integer()) throw NonIntegralResult("h^1 evaluated to the non-integer " + v.str());
  if (v.num() < 0) throw NegativeResult("h^1 evaluated to the negative value " + v.str());
  r.value = v.num();
  return r;
}

inline std::int64_t geometric_genus(const LatticeContext& ctx) { return h1_natural(ctx, ctx.zero()).value; }

}  // namespace spliceq
