#pragma once

#include <cstddef>
#include <cstdlib>
#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

#include "spliceq/rational.hpp"

namespace spliceq {

/// Small dense row-major matrix. Sizes here are the vertex count of a
/// resolution graph, so no attempt is made at blocking or vectorization.
template <typename T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, T fill = T{}) : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = T{1};
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  T& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const T& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  void swap_rows(std::size_t a, std::size_t b) {
    for (std::size_t c = 0; c < cols_; ++c) std::swap((*this)(a, c), (*this)(b, c));
  }
  void swap_cols(std::size_t a, std::size_t b) {
    for (std::size_t r = 0; r < rows_; ++r) std::swap((*this)(r, a), (*this)(r, b));
  }

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

using IntMatrix = Matrix<std::int64_t>;
using RatMatrix = Matrix<Rational>;

inline IntMatrix multiply(const IntMatrix& a, const IntMatrix& b) {
  if (a.cols() != b.rows()) throw std::invalid_argument("matrix shape mismatch");
  IntMatrix out(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      if (a(i, k) == 0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j)
        out(i, j) = checked::add(out(i, j), checked::mul(a(i, k), b(k, j)));
    }
  return out;
}

/// Leading principal minors of a square integer matrix via fraction-free
/// (Bareiss) elimination without pivoting. Entry k is det of the top-left
/// (k+1)x(k+1) block. Elimination stops at the first zero minor; later
/// entries are then left empty.
inline std::vector<std::int64_t> leading_principal_minors(const IntMatrix& m) {
  const std::size_t n = m.rows();
  std::vector<std::vector<__int128>> a(n, std::vector<__int128>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) a[i][j] = m(i, j);
  std::vector<std::int64_t> minors;
  __int128 prev = 1;
  for (std::size_t k = 0; k < n; ++k) {
    minors.push_back(checked::narrow(a[k][k]));
    if (a[k][k] == 0) break;
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) {
        a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
        checked::narrow(a[i][j]);
      }
    prev = a[k][k];
  }
  return minors;
}

/// Exact inverse over the rationals (Gauss-Jordan with nonzero pivoting).
/// Throws std::domain_error for a singular matrix.
inline RatMatrix inverse(const IntMatrix& m) {
  const std::size_t n = m.rows();
  RatMatrix a(n, n), inv = RatMatrix::identity(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) a(i, j) = Rational(m(i, j));
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    while (piv < n && a(piv, col) == Rational(0)) ++piv;
    if (piv == n) throw std::domain_error("singular matrix");
    a.swap_rows(piv, col);
    inv.swap_rows(piv, col);
    const Rational p = a(col, col);
    for (std::size_t j = 0; j < n; ++j) {
      a(col, j) /= p;
      inv(col, j) /= p;
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || a(r, col) == Rational(0)) continue;
      const Rational f = a(r, col);
      for (std::size_t j = 0; j < n; ++j) {
        a(r, j) -= f * a(col, j);
        inv(r, j) -= f * inv(col, j);
      }
    }
  }
  return inv;
}

/// Smith normal form U * A * V = D of a square nonsingular integer matrix,
/// with U, V unimodular and D diagonal with nonnegative entries
/// d_1 | d_2 | ... . U^{-1} is tracked alongside U.
struct SmithForm {
  IntMatrix u, u_inv, v;
  std::vector<std::int64_t> diagonal;
};

inline SmithForm smith_normal_form(const IntMatrix& input) {
  const std::size_t n = input.rows();
  IntMatrix a = input;
  SmithForm s{IntMatrix::identity(n), IntMatrix::identity(n), IntMatrix::identity(n), {}};

  // Row op: row[i] += f * row[j]; U tracks row ops, U^{-1} the inverse column op.
  auto row_add = [&](std::size_t i, std::size_t j, std::int64_t f) {
    for (std::size_t c = 0; c < n; ++c) {
      a(i, c) = checked::add(a(i, c), checked::mul(f, a(j, c)));
      s.u(i, c) = checked::add(s.u(i, c), checked::mul(f, s.u(j, c)));
      s.u_inv(c, j) = checked::sub(s.u_inv(c, j), checked::mul(f, s.u_inv(c, i)));
    }
  };
  auto row_swap = [&](std::size_t i, std::size_t j) {
    a.swap_rows(i, j);
    s.u.swap_rows(i, j);
    s.u_inv.swap_cols(i, j);
  };
  auto row_negate = [&](std::size_t i) {
    for (std::size_t c = 0; c < n; ++c) {
      a(i, c) = -a(i, c);
      s.u(i, c) = -s.u(i, c);
      s.u_inv(c, i) = -s.u_inv(c, i);
    }
  };
  auto col_add = [&](std::size_t i, std::size_t j, std::int64_t f) {
    for (std::size_t r = 0; r < n; ++r) {
      a(r, i) = checked::add(a(r, i), checked::mul(f, a(r, j)));
      s.v(r, i) = checked::add(s.v(r, i), checked::mul(f, s.v(r, j)));
    }
  };
  auto col_swap = [&](std::size_t i, std::size_t j) {
    a.swap_cols(i, j);
    s.v.swap_cols(i, j);
  };

  for (std::size_t k = 0; k < n; ++k) {
    for (;;) {
      // Move the smallest nonzero entry of the trailing block to (k, k).
      std::size_t pr = n, pc = n;
      for (std::size_t i = k; i < n; ++i)
        for (std::size_t j = k; j < n; ++j)
          if (a(i, j) != 0 && (pr == n || std::abs(a(i, j)) < std::abs(a(pr, pc)))) {
            pr = i;
            pc = j;
          }
      if (pr == n) throw std::domain_error("singular matrix in Smith normal form");
      if (pr != k) row_swap(pr, k);
      if (pc != k) col_swap(pc, k);

      bool clean = true;
      for (std::size_t i = k + 1; i < n; ++i) {
        if (a(i, k) == 0) continue;
        row_add(i, k, -(a(i, k) / a(k, k)));
        if (a(i, k) != 0) clean = false;
      }
      for (std::size_t j = k + 1; j < n; ++j) {
        if (a(k, j) == 0) continue;
        col_add(j, k, -(a(k, j) / a(k, k)));
        if (a(k, j) != 0) clean = false;
      }
      if (!clean) continue;

      // Divisibility: the pivot must divide the whole trailing block.
      bool divides = true;
      for (std::size_t i = k + 1; i < n && divides; ++i)
        for (std::size_t j = k + 1; j < n; ++j)
          if (a(i, j) % a(k, k) != 0) {
            row_add(k, i, 1);
            divides = false;
            break;
          }
      if (divides) break;
    }
    if (a(k, k) < 0) row_negate(k);
  }
  for (std::size_t k = 0; k < n; ++k) s.diagonal.push_back(a(k, k));
  return s;
}

}  // namespace spliceq
