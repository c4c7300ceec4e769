#pragma once

// The lattice L of a plumbing graph, its dual L', and the discriminant group
// H = L'/L.
//
// Points of L' are stored in the E basis as integer numerators over the
// shared denominator d = |det I|. With that representation the integral
// lattice L is exactly the set of points whose numerators are all divisible
// by d, and the representative in Q = [0,1)^V is a componentwise remainder.

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "spliceq/graph.hpp"
#include "spliceq/matrix.hpp"
#include "spliceq/rational.hpp"

namespace spliceq {

class ContextMismatch : public std::logic_error {
 public:
  ContextMismatch() : std::logic_error("cycles belong to different lattice contexts") {}
};

class NotInDualLattice : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class InvalidGraph : public std::invalid_argument {
 public:
  explicit InvalidGraph(ValidationReport report)
      : std::invalid_argument("graph failed validation"), report_(std::move(report)) {}
  const ValidationReport& report() const { return report_; }

 private:
  ValidationReport report_;
};

/// A point of L' in E coordinates.
class QCycle {
 public:
  QCycle() = default;

  std::size_t size() const { return num_.size(); }
  std::int64_t denominator() const { return den_; }
  std::uint64_t context_id() const { return ctx_; }
  const std::vector<std::int64_t>& numerators() const { return num_; }
  std::int64_t numerator(std::size_t v) const { return num_[v]; }
  Rational coord(std::size_t v) const { return Rational(num_[v], den_); }

  bool is_zero() const {
    return std::all_of(num_.begin(), num_.end(), [](auto x) { return x == 0; });
  }
  bool is_integral() const {
    return std::all_of(num_.begin(), num_.end(), [this](auto x) { return x % den_ == 0; });
  }
  bool is_effective() const {
    return std::all_of(num_.begin(), num_.end(), [](auto x) { return x >= 0; });
  }
  /// Componentwise >=.
  bool geq(const QCycle& o) const {
    check(o);
    for (std::size_t i = 0; i < num_.size(); ++i)
      if (num_[i] < o.num_[i]) return false;
    return true;
  }

  QCycle& operator+=(const QCycle& o) {
    check(o);
    for (std::size_t i = 0; i < num_.size(); ++i) num_[i] = checked::add(num_[i], o.num_[i]);
    return *this;
  }
  QCycle& operator-=(const QCycle& o) {
    check(o);
    for (std::size_t i = 0; i < num_.size(); ++i) num_[i] = checked::sub(num_[i], o.num_[i]);
    return *this;
  }
  QCycle& operator*=(std::int64_t k) {
    for (auto& x : num_) x = checked::mul(x, k);
    return *this;
  }
  friend QCycle operator+(QCycle a, const QCycle& b) { return a += b; }
  friend QCycle operator-(QCycle a, const QCycle& b) { return a -= b; }
  friend QCycle operator*(std::int64_t k, QCycle a) { return a *= k; }
  QCycle operator-() const { return (-1) * *this; }

  friend bool operator==(const QCycle&, const QCycle&) = default;

  /// Componentwise minimum.
  friend QCycle inf(const QCycle& a, const QCycle& b) {
    a.check(b);
    QCycle out = a;
    for (std::size_t i = 0; i < out.num_.size(); ++i) out.num_[i] = std::min(a.num_[i], b.num_[i]);
    return out;
  }
  /// Componentwise maximum with 0.
  friend QCycle pos_part(const QCycle& a) {
    QCycle out = a;
    for (auto& x : out.num_) x = std::max<std::int64_t>(x, 0);
    return out;
  }

  void check(const QCycle& o) const {
    if (ctx_ != o.ctx_ || num_.size() != o.num_.size()) throw ContextMismatch();
  }

 private:
  friend class LatticeContext;
  QCycle(std::uint64_t ctx, std::int64_t den, std::vector<std::int64_t> num)
      : ctx_(ctx), den_(den), num_(std::move(num)) {}

  std::uint64_t ctx_ = 0;
  std::int64_t den_ = 1;
  std::vector<std::int64_t> num_;
};

/// Element of H, as residues modulo the nontrivial invariant factors.
struct HClass {
  std::vector<std::int64_t> residues;

  friend bool operator==(const HClass&, const HClass&) = default;
  friend auto operator<=>(const HClass&, const HClass&) = default;
};

class LatticeContext {
 public:
  /// Throws InvalidGraph when validate(g) reports violations.
  explicit LatticeContext(const PlumbingGraph& g) : graph_(g), id_(next_id()) {
    auto report = validate(g);
    if (!report.ok()) throw InvalidGraph(std::move(report));
    const std::size_t n = g.vertices.size();
    for (const auto& v : g.vertices) ids_.push_back(v.id);
    form_ = intersection_matrix(g);

    neighbors_.resize(n);
    for (const auto& [a, b] : g.edges) {
      const auto i = *g.index_of(a), j = *g.index_of(b);
      neighbors_[i].push_back(j);
      neighbors_[j].push_back(i);
    }
    for (auto& nb : neighbors_) std::sort(nb.begin(), nb.end());
    for (std::size_t v = 0; v < n; ++v) {
      if (valency(v) == 1) ends_.push_back(v);
      if (valency(v) >= 3) nodes_.push_back(v);
    }

    // M = -I^{-1}; column v holds E_v^* in the E basis.
    const RatMatrix inv = inverse(form_);
    const auto minors = leading_principal_minors(form_);
    det_ = std::abs(minors.back());
    dual_num_ = IntMatrix(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        const Rational scaled = -inv(i, j) * Rational(det_);
        if (!scaled.is_integer()) throw std::logic_error("d * (E_v^*) is not integral");
        if (scaled.num() <= 0) throw std::logic_error("dual basis entry is not strictly positive");
        dual_num_(i, j) = scaled.num();
      }
    for (std::size_t v = 0; v < n; ++v) {
      std::vector<std::int64_t> col(n);
      for (std::size_t i = 0; i < n; ++i) col[i] = dual_num_(i, v);
      duals_.push_back(make(std::move(col)));
    }

    canonical_ = zero();
    for (std::size_t v = 0; v < n; ++v) canonical_ += (g.vertices[v].euler + 2) * duals_[v];

    smith_ = smith_normal_form(form_);
    if (multiply(multiply(smith_.u, form_), smith_.v) != diagonal_matrix(smith_.diagonal))
      throw std::logic_error("Smith normal form failed re-multiplication check");
    if (multiply(smith_.u, smith_.u_inv) != IntMatrix::identity(n))
      throw std::logic_error("Smith normal form transform is not unimodular");
    for (std::size_t k = 0; k < n; ++k)
      if (smith_.diagonal[k] > 1) {
        factor_rows_.push_back(k);
        factors_.push_back(smith_.diagonal[k]);
      }

    for (std::size_t v = 0; v < n; ++v) {
      std::int64_t g0 = det_;
      for (std::size_t i = 0; i < n; ++i) g0 = std::gcd(g0, dual_num_(i, v));
      order_e_.push_back(det_ / g0);
    }
  }

  std::size_t size() const { return ids_.size(); }
  const PlumbingGraph& graph() const { return graph_; }
  const std::vector<std::string>& ids() const { return ids_; }
  const std::string& id(std::size_t v) const { return ids_[v]; }
  std::size_t index_of(std::string_view id) const {
    for (std::size_t v = 0; v < ids_.size(); ++v)
      if (ids_[v] == id) return v;
    throw std::invalid_argument("unknown vertex id '" + std::string(id) + "'");
  }
  std::int64_t euler(std::size_t v) const { return form_(v, v); }
  const IntMatrix& form() const { return form_; }
  /// |det I|, also the order of H and the common denominator of L'.
  std::int64_t det() const { return det_; }
  std::uint64_t context_id() const { return id_; }

  std::size_t valency(std::size_t v) const { return neighbors_[v].size(); }
  const std::vector<std::size_t>& neighbors(std::size_t v) const { return neighbors_[v]; }
  const std::vector<std::size_t>& ends() const { return ends_; }
  const std::vector<std::size_t>& nodes() const { return nodes_; }

  QCycle zero() const { return make(std::vector<std::int64_t>(size(), 0)); }
  QCycle unit(std::size_t v) const {
    std::vector<std::int64_t> num(size(), 0);
    num[v] = det_;
    return make(std::move(num));
  }
  /// Sum of all E_v.
  QCycle reduced_cycle() const { return make(std::vector<std::int64_t>(size(), det_)); }
  const QCycle& dual(std::size_t v) const { return duals_[v]; }
  /// Numerator of (E_v^*)_u over det().
  std::int64_t dual_numerator(std::size_t v, std::size_t u) const { return dual_num_(u, v); }
  const QCycle& canonical() const { return canonical_; }

  /// Builds an L' point from E coordinates. Throws NotInDualLattice otherwise.
  QCycle from_rationals(const std::vector<Rational>& coords) const {
    if (coords.size() != size()) throw std::invalid_argument("coordinate vector has wrong length");
    std::vector<std::int64_t> num(size());
    for (std::size_t v = 0; v < size(); ++v) {
      const Rational scaled = coords[v] * Rational(det_);
      if (!scaled.is_integer())
        throw NotInDualLattice("coordinate at '" + ids_[v] + "' has denominator not dividing " + std::to_string(det_));
      num[v] = scaled.num();
    }
    QCycle x = make(std::move(num));
    for (std::size_t v = 0; v < size(); ++v)
      if (form_row_dot(v, x) % det_ != 0)
        throw NotInDualLattice("cycle pairs non-integrally with E at '" + ids_[v] + "'");
    return x;
  }
  /// sum_v k_v E_v^*.
  QCycle from_dual_coords(const std::vector<std::int64_t>& k) const {
    if (k.size() != size()) throw std::invalid_argument("coordinate vector has wrong length");
    QCycle x = zero();
    for (std::size_t v = 0; v < size(); ++v)
      if (k[v] != 0) x += k[v] * duals_[v];
    return x;
  }
  QCycle from_integers(const std::vector<std::int64_t>& coords) const {
    if (coords.size() != size()) throw std::invalid_argument("coordinate vector has wrong length");
    std::vector<std::int64_t> num(size());
    for (std::size_t v = 0; v < size(); ++v) num[v] = checked::mul(coords[v], det_);
    return make(std::move(num));
  }

  /// (x, E_v); an integer for every point of L'.
  std::int64_t pair_unit(const QCycle& x, std::size_t v) const {
    own(x);
    return form_row_dot(v, x) / det_;
  }
  /// k_v = -(x, E_v): the coordinates of x in the E^* basis.
  std::vector<std::int64_t> dual_coords(const QCycle& x) const {
    std::vector<std::int64_t> k(size());
    for (std::size_t v = 0; v < size(); ++v) k[v] = -pair_unit(x, v);
    return k;
  }

  Rational pair(const QCycle& x, const QCycle& y) const {
    own(x);
    own(y);
    __int128 acc = 0;
    for (std::size_t v = 0; v < size(); ++v) acc += static_cast<__int128>(form_row_dot(v, x)) * y.numerator(v);
    return Rational::from_wide(acc, static_cast<__int128>(det_) * det_);
  }

  bool is_antinef(const QCycle& x) const {
    own(x);
    for (std::size_t v = 0; v < size(); ++v)
      if (form_row_dot(v, x) > 0) return false;
    return true;
  }

  // ---- discriminant group ----

  const std::vector<std::int64_t>& invariant_factors() const { return factors_; }
  /// Order of [E_v^*] in H.
  std::int64_t order_e(std::size_t v) const { return order_e_[v]; }

  HClass class_of(const QCycle& x) const {
    const auto k = dual_coords(x);
    HClass h;
    for (std::size_t i = 0; i < factor_rows_.size(); ++i) {
      __int128 acc = 0;
      for (std::size_t v = 0; v < size(); ++v) acc += static_cast<__int128>(smith_.u(factor_rows_[i], v)) * k[v];
      h.residues.push_back(static_cast<std::int64_t>(((acc % factors_[i]) + factors_[i]) % factors_[i]));
    }
    return h;
  }
  /// Some point of L' in the class h.
  QCycle lift(const HClass& h) const {
    check_class(h);
    std::vector<std::int64_t> k(size(), 0);
    for (std::size_t v = 0; v < size(); ++v)
      for (std::size_t i = 0; i < factor_rows_.size(); ++i)
        k[v] = checked::add(k[v], checked::mul(smith_.u_inv(v, factor_rows_[i]), h.residues[i]));
    return from_dual_coords(k);
  }
  /// Representative of [x] with all E coordinates in [0, 1).
  QCycle r_rep(const QCycle& x) const {
    own(x);
    QCycle r = x;
    for (auto& a : r.num_) a = mod_floor(a, det_);
    return r;
  }
  bool same_class(const QCycle& x, const QCycle& y) const {
    own(x);
    own(y);
    for (std::size_t v = 0; v < size(); ++v)
      if (mod_floor(checked::sub(x.numerator(v), y.numerator(v)), det_) != 0) return false;
    return true;
  }

  HClass identity_class() const { return HClass{std::vector<std::int64_t>(factors_.size(), 0)}; }
  HClass add(const HClass& a, const HClass& b) const {
    check_class(a);
    check_class(b);
    HClass out = a;
    for (std::size_t i = 0; i < factors_.size(); ++i) out.residues[i] = (a.residues[i] + b.residues[i]) % factors_[i];
    return out;
  }
  HClass negate(const HClass& a) const {
    check_class(a);
    HClass out = a;
    for (std::size_t i = 0; i < factors_.size(); ++i) out.residues[i] = (factors_[i] - a.residues[i]) % factors_[i];
    return out;
  }
  /// All of H, last residue varying fastest.
  std::vector<HClass> all_classes() const {
    std::vector<HClass> out{identity_class()};
    for (std::size_t i = 0; i < factors_.size(); ++i) {
      std::vector<HClass> next;
      for (const auto& h : out)
        for (std::int64_t r = 0; r < factors_[i]; ++r) {
          HClass c = h;
          c.residues[i] = r;
          next.push_back(std::move(c));
        }
      out = std::move(next);
    }
    return out;
  }
  /// theta(a)(b) as a phase in [0, 1): (l'_a, l'_b) mod 1.
  Rational phase(const HClass& a, const HClass& b) const {
    const Rational p = pair(lift(a), lift(b));
    return p - Rational(p.floor());
  }
  void check_class(const HClass& h) const {
    if (h.residues.size() != factors_.size())
      throw std::invalid_argument("class tuple has " + std::to_string(h.residues.size()) + " entries, expected " +
                                  std::to_string(factors_.size()));
    for (std::size_t i = 0; i < factors_.size(); ++i)
      if (h.residues[i] < 0 || h.residues[i] >= factors_[i])
        throw std::invalid_argument("class residue out of range");
  }

  // ---- distinguished cycles ----

  /// Laufer's algorithm: from the reduced cycle, add E_v while (z, E_v) > 0,
  /// choosing the smallest vertex id among the candidates.
  QCycle laufer_zmin() const {
    std::vector<std::size_t> by_id(size());
    std::iota(by_id.begin(), by_id.end(), 0);
    std::sort(by_id.begin(), by_id.end(), [this](auto a, auto b) { return ids_[a] < ids_[b]; });
    QCycle z = reduced_cycle();
    for (;;) {
      bool moved = false;
      for (auto v : by_id)
        if (pair_unit(z, v) > 0) {
          z += unit(v);
          moved = true;
          break;
        }
      if (!moved) return z;
    }
  }

  /// A representative l' of h with l' + K anti-nef. Starts from the Q
  /// representative and adds sum_v e_v E_v^* (integral, pairing -e_v with
  /// each E_v) until the cone condition holds.
  QCycle artin_shift(const HClass& h) const {
    QCycle step = zero();
    for (std::size_t v = 0; v < size(); ++v) step += order_e_[v] * duals_[v];
    QCycle x = r_rep(lift(h));
    while (!is_antinef(x + canonical_)) x += step;
    return x;
  }

  void own(const QCycle& x) const {
    if (x.ctx_ != id_ || x.size() != size()) throw ContextMismatch();
  }

 private:
  static std::uint64_t next_id() {
    static std::atomic<std::uint64_t> counter{1};
    return counter.fetch_add(1);
  }
  static IntMatrix diagonal_matrix(const std::vector<std::int64_t>& d) {
    IntMatrix m(d.size(), d.size());
    for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
    return m;
  }
  QCycle make(std::vector<std::int64_t> num) const { return QCycle(id_, det_, std::move(num)); }
  /// Row v of I dotted with the numerators of x, i.e. d * (x, E_v).
  std::int64_t form_row_dot(std::size_t v, const QCycle& x) const {
    __int128 acc = static_cast<__int128>(form_(v, v)) * x.num_[v];
    for (auto w : neighbors_[v]) acc += x.num_[w];
    return checked::narrow(acc);
  }

  PlumbingGraph graph_;
  std::uint64_t id_;
  std::vector<std::string> ids_;
  IntMatrix form_;
  std::vector<std::vector<std::size_t>> neighbors_;
  std::vector<std::size_t> ends_, nodes_;
  std::int64_t det_ = 1;
  IntMatrix dual_num_;
  std::vector<QCycle> duals_;
  QCycle canonical_;
  SmithForm smith_;
  std::vector<std::size_t> factor_rows_;
  std::vector<std::int64_t> factors_;
  std::vector<std::int64_t> order_e_;
};

}  // namespace spliceq
