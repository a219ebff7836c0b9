#pragma once

// Exact Gaussian elimination and the subspace calculus built on it.
// Pivoting always takes the first nonzero entry in column order, so every
// result (kernel bases in particular) is deterministic.

#include "adhm/matrix.hpp"

#include <algorithm>
#include <optional>
#include <utility>
#include <vector>

namespace adhm {

template <Field K>
struct RowEchelon {
  Matrix<K> reduced;                 // reduced row echelon form
  std::vector<std::size_t> pivots;   // pivot column of each nonzero row
  std::size_t rank() const { return pivots.size(); }
};

template <Field K>
RowEchelon<K> rref(Matrix<K> m) {
  RowEchelon<K> out;
  const std::size_t rows = m.rows(), cols = m.cols();
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t piv = r;
    while (piv < rows && m(piv, c).is_zero()) ++piv;
    if (piv == rows) continue;
    if (piv != r)
      for (std::size_t j = c; j < cols; ++j) std::swap(m(piv, j), m(r, j));
    const K inv = m(r, c).inverse();
    for (std::size_t j = c; j < cols; ++j) m(r, j) *= inv;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || m(i, c).is_zero()) continue;
      const K f = m(i, c);
      for (std::size_t j = c; j < cols; ++j)
        if (!m(r, j).is_zero()) m(i, j) -= f * m(r, j);
    }
    out.pivots.push_back(c);
    ++r;
  }
  out.reduced = std::move(m);
  return out;
}

template <Field K>
std::size_t rank(const Matrix<K>& m) {
  if (m.rows() == 0 || m.cols() == 0) return 0;
  // Forward elimination only; cheaper than a full rref.
  Matrix<K> a = m;
  const std::size_t rows = a.rows(), cols = a.cols();
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t piv = r;
    while (piv < rows && a(piv, c).is_zero()) ++piv;
    if (piv == rows) continue;
    if (piv != r)
      for (std::size_t j = c; j < cols; ++j) std::swap(a(piv, j), a(r, j));
    const K inv = a(r, c).inverse();
    for (std::size_t i = r + 1; i < rows; ++i) {
      if (a(i, c).is_zero()) continue;
      const K f = a(i, c) * inv;
      for (std::size_t j = c; j < cols; ++j)
        if (!a(r, j).is_zero()) a(i, j) -= f * a(r, j);
    }
    ++r;
  }
  return r;
}

/// Basis of the right null space {v : M v = 0}; one vector per free column,
/// with a 1 in that column.
template <Field K>
std::vector<Vector<K>> kernel_basis(const Matrix<K>& m) {
  const std::size_t cols = m.cols();
  const auto ech = rref(m);
  std::vector<bool> is_pivot(cols, false);
  for (auto p : ech.pivots) is_pivot[p] = true;
  std::vector<Vector<K>> basis;
  for (std::size_t free = 0; free < cols; ++free) {
    if (is_pivot[free]) continue;
    Vector<K> v(cols, K(0));
    v[free] = K(1);
    for (std::size_t i = 0; i < ech.pivots.size(); ++i) v[ech.pivots[i]] = -ech.reduced(i, free);
    basis.push_back(std::move(v));
  }
  return basis;
}

/// Kernel as the columns of a matrix (cols x nullity).
template <Field K>
Matrix<K> kernel_matrix(const Matrix<K>& m) {
  return Matrix<K>::from_columns(m.cols(), kernel_basis(m));
}

/// One exact solution of A x = b, or nullopt when the system is inconsistent.
template <Field K>
std::optional<Vector<K>> solve_linear(const Matrix<K>& a, const Vector<K>& b) {
  if (a.rows() != b.size())
    throw DimensionError("solve_linear: A has " + std::to_string(a.rows()) + " rows but b has length " +
                         std::to_string(b.size()));
  Matrix<K> aug(a.rows(), a.cols() + 1);
  aug.set_block(0, 0, a);
  for (std::size_t i = 0; i < b.size(); ++i) aug(i, a.cols()) = b[i];
  const auto ech = rref(std::move(aug));
  if (!ech.pivots.empty() && ech.pivots.back() == a.cols()) return std::nullopt;
  Vector<K> x(a.cols(), K(0));
  for (std::size_t i = 0; i < ech.pivots.size(); ++i) x[ech.pivots[i]] = ech.reduced(i, a.cols());
  return x;
}

template <Field K>
std::optional<Matrix<K>> inverse(const Matrix<K>& m) {
  if (m.rows() != m.cols()) throw DimensionError("inverse: non-square matrix " + m.shape());
  const std::size_t n = m.rows();
  if (n == 0) return Matrix<K>();
  Matrix<K> aug(n, 2 * n);
  aug.set_block(0, 0, m);
  aug.set_block(0, n, Matrix<K>::identity(n));
  const auto ech = rref(std::move(aug));
  if (ech.rank() < n || ech.pivots[n - 1] >= n) return std::nullopt;
  return ech.reduced.block(0, n, n, n);
}

template <Field K>
K determinant(Matrix<K> a) {
  if (a.rows() != a.cols()) throw DimensionError("determinant: non-square matrix " + a.shape());
  const std::size_t n = a.rows();
  K det(1);
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    while (piv < n && a(piv, c).is_zero()) ++piv;
    if (piv == n) return K(0);
    if (piv != c) {
      for (std::size_t j = c; j < n; ++j) std::swap(a(piv, j), a(c, j));
      det = -det;
    }
    det *= a(c, c);
    const K inv = a(c, c).inverse();
    for (std::size_t i = c + 1; i < n; ++i) {
      if (a(i, c).is_zero()) continue;
      const K f = a(i, c) * inv;
      for (std::size_t j = c; j < n; ++j) a(i, j) -= f * a(c, j);
    }
  }
  return det;
}

// ---------------------------------------------------------------------------
// Subspaces of K^n, represented by a matrix whose columns form a basis.

/// Column basis of the column span of `m` (pivot columns of m).
template <Field K>
Matrix<K> column_space(const Matrix<K>& m) {
  const auto ech = rref(m);
  Matrix<K> out(m.rows(), ech.rank());
  for (std::size_t j = 0; j < ech.pivots.size(); ++j)
    for (std::size_t i = 0; i < m.rows(); ++i) out(i, j) = m(i, ech.pivots[j]);
  return out;
}

/// Rows spanning the annihilator {y : y^T S = 0} of the column span of S,
/// i.e. a matrix P with ker P = span S.
template <Field K>
Matrix<K> annihilator(const Matrix<K>& basis, std::size_t ambient) {
  if (basis.cols() == 0) return Matrix<K>::identity(ambient);
  return kernel_matrix(basis.transpose()).transpose();
}

template <Field K>
Matrix<K> intersect(const Matrix<K>& s, const Matrix<K>& t) {
  const std::size_t n = s.rows();
  if (s.cols() == 0 || t.cols() == 0) return Matrix<K>(n, 0);
  return kernel_matrix(vstack<K>({annihilator(s, n), annihilator(t, n)}));
}

template <Field K>
std::size_t sum_dimension(const Matrix<K>& s, const Matrix<K>& t) {
  return rank(hstack<K>({s, t}));
}

template <Field K>
bool in_span(const Matrix<K>& basis, const Vector<K>& v) {
  if (basis.cols() == 0) return is_zero_vector(v);
  return solve_linear(basis, v).has_value();
}

/// S is invariant under `a` when a·S ⊂ S.
template <Field K>
bool is_invariant(const Matrix<K>& s, const Matrix<K>& a) {
  if (s.cols() == 0) return true;
  return rank(hstack<K>({s, a * s})) == rank(s);
}

// ---------------------------------------------------------------------------
// Multiplication operators on row-major vec(X).

/// Matrix of X -> L X, for X of shape L.cols() x n.
template <Field K>
Matrix<K> left_multiplication(const Matrix<K>& l, std::size_t n) {
  Matrix<K> op(l.rows() * n, l.cols() * n);
  for (std::size_t i = 0; i < l.rows(); ++i)
    for (std::size_t j = 0; j < l.cols(); ++j)
      if (!l(i, j).is_zero())
        for (std::size_t col = 0; col < n; ++col) op(i * n + col, j * n + col) = l(i, j);
  return op;
}

/// Matrix of X -> X R, for X of shape m x R.rows().
template <Field K>
Matrix<K> right_multiplication(const Matrix<K>& r, std::size_t m) {
  Matrix<K> op(m * r.cols(), m * r.rows());
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < r.rows(); ++j)
      for (std::size_t col = 0; col < r.cols(); ++col)
        if (!r(j, col).is_zero()) op(i * r.cols() + col, i * r.rows() + j) = r(j, col);
  return op;
}

/// Inverse of `flatten`.
template <Field K>
Matrix<K> unflatten(std::span<const K> v, std::size_t rows, std::size_t cols) {
  if (v.size() != rows * cols) throw DimensionError("unflatten: length mismatch");
  return Matrix<K>(rows, cols, std::vector<K>(v.begin(), v.end()));
}

}  // namespace adhm
