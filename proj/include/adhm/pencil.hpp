#pragma once

// Matrices whose entries are homogeneous forms of degree 1 or 2, stored as
// one constant coefficient matrix per monomial.

#include "adhm/matrix.hpp"
#include "adhm/polynomial.hpp"

#include <span>
#include <vector>

namespace adhm {

/// M(z) = sum_k coeffs[k] * z_k: a matrix of linear forms in num_vars
/// homogeneous variables.
template <Field K>
class PencilMatrix {
public:
  PencilMatrix() = default;
  PencilMatrix(std::size_t rows, std::size_t cols, std::size_t num_vars)
      : rows_(rows), cols_(cols), coeffs_(num_vars, Matrix<K>(rows, cols)) {}
  explicit PencilMatrix(std::vector<Matrix<K>> coeffs) : coeffs_(std::move(coeffs)) {
    if (coeffs_.empty()) throw DimensionError("PencilMatrix: at least one variable required");
    rows_ = coeffs_.front().rows();
    cols_ = coeffs_.front().cols();
    for (const auto& m : coeffs_)
      if (m.rows() != rows_ || m.cols() != cols_) throw DimensionError("PencilMatrix: coefficient shapes differ");
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t num_vars() const { return coeffs_.size(); }
  const Matrix<K>& coeff(std::size_t k) const { return coeffs_.at(k); }
  Matrix<K>& coeff(std::size_t k) { return coeffs_.at(k); }
  const std::vector<Matrix<K>>& coeffs() const { return coeffs_; }

  Matrix<K> evaluate(std::span<const K> point) const {
    if (point.size() != coeffs_.size()) throw DimensionError("PencilMatrix::evaluate: point has wrong length");
    Matrix<K> out(rows_, cols_);
    for (std::size_t k = 0; k < coeffs_.size(); ++k)
      if (!point[k].is_zero()) out += coeffs_[k] * point[k];
    return out;
  }

  HomogPoly<K> entry(std::size_t i, std::size_t j) const {
    std::vector<K> lin(coeffs_.size());
    for (std::size_t k = 0; k < coeffs_.size(); ++k) lin[k] = coeffs_[k](i, j);
    return HomogPoly<K>::linear(lin);
  }

  PencilMatrix transpose() const {
    std::vector<Matrix<K>> t;
    t.reserve(coeffs_.size());
    for (const auto& m : coeffs_) t.push_back(m.transpose());
    return PencilMatrix(std::move(t));
  }

  bool is_zero() const {
    for (const auto& m : coeffs_)
      if (!m.is_zero()) return false;
    return true;
  }

  PencilMatrix& operator+=(const PencilMatrix& o) {
    check(o);
    for (std::size_t k = 0; k < coeffs_.size(); ++k) coeffs_[k] += o.coeffs_[k];
    return *this;
  }
  PencilMatrix& operator-=(const PencilMatrix& o) {
    check(o);
    for (std::size_t k = 0; k < coeffs_.size(); ++k) coeffs_[k] -= o.coeffs_[k];
    return *this;
  }
  friend PencilMatrix operator+(PencilMatrix a, const PencilMatrix& b) { return a += b; }
  friend PencilMatrix operator-(PencilMatrix a, const PencilMatrix& b) { return a -= b; }
  PencilMatrix operator-() const {
    PencilMatrix out(*this);
    for (auto& m : out.coeffs_) m = -m;
    return out;
  }
  friend bool operator==(const PencilMatrix&, const PencilMatrix&) = default;

  /// Left/right multiplication by a constant matrix.
  friend PencilMatrix operator*(const Matrix<K>& g, const PencilMatrix& p) {
    std::vector<Matrix<K>> out;
    for (const auto& m : p.coeffs_) out.push_back(g * m);
    return PencilMatrix(std::move(out));
  }
  friend PencilMatrix operator*(const PencilMatrix& p, const Matrix<K>& g) {
    std::vector<Matrix<K>> out;
    for (const auto& m : p.coeffs_) out.push_back(m * g);
    return PencilMatrix(std::move(out));
  }

private:
  void check(const PencilMatrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_ || coeffs_.size() != o.coeffs_.size())
      throw DimensionError("PencilMatrix: operand shapes differ");
  }

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Matrix<K>> coeffs_;
};

/// Index of the degree-2 monomial z_a z_b (a <= b) in the ordering
/// (0,0), (0,1), ..., (0,n-1), (1,1), (1,2), ..., (n-1,n-1).
inline std::size_t quadratic_index(std::size_t a, std::size_t b, std::size_t num_vars) {
  if (a > b) std::swap(a, b);
  return a * num_vars - a * (a - 1) / 2 + (b - a);
}

inline std::size_t quadratic_count(std::size_t num_vars) { return num_vars * (num_vars + 1) / 2; }

/// Matrix of quadratic forms, one coefficient matrix per monomial z_a z_b.
template <Field K>
class QuadraticPencil {
public:
  QuadraticPencil(std::size_t rows, std::size_t cols, std::size_t num_vars)
      : rows_(rows), cols_(cols), num_vars_(num_vars), coeffs_(quadratic_count(num_vars), Matrix<K>(rows, cols)) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t num_vars() const { return num_vars_; }
  const std::vector<Matrix<K>>& coeffs() const { return coeffs_; }
  const Matrix<K>& coeff(std::size_t a, std::size_t b) const { return coeffs_[quadratic_index(a, b, num_vars_)]; }
  Matrix<K>& coeff(std::size_t a, std::size_t b) { return coeffs_[quadratic_index(a, b, num_vars_)]; }

  bool is_zero() const {
    for (const auto& m : coeffs_)
      if (!m.is_zero()) return false;
    return true;
  }

  Matrix<K> evaluate(std::span<const K> point) const {
    Matrix<K> out(rows_, cols_);
    for (std::size_t a = 0; a < num_vars_; ++a)
      for (std::size_t b = a; b < num_vars_; ++b) {
        const K w = point[a] * point[b];
        if (!w.is_zero()) out += coeff(a, b) * w;
      }
    return out;
  }

  QuadraticPencil& operator+=(const QuadraticPencil& o) {
    if (rows_ != o.rows_ || cols_ != o.cols_ || num_vars_ != o.num_vars_)
      throw DimensionError("QuadraticPencil: operand shapes differ");
    for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
    return *this;
  }
  QuadraticPencil& operator-=(const QuadraticPencil& o) {
    if (rows_ != o.rows_ || cols_ != o.cols_ || num_vars_ != o.num_vars_)
      throw DimensionError("QuadraticPencil: operand shapes differ");
    for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] -= o.coeffs_[i];
    return *this;
  }
  friend QuadraticPencil operator+(QuadraticPencil a, const QuadraticPencil& b) { return a += b; }
  friend QuadraticPencil operator-(QuadraticPencil a, const QuadraticPencil& b) { return a -= b; }
  friend bool operator==(const QuadraticPencil&, const QuadraticPencil&) = default;

private:
  std::size_t rows_, cols_, num_vars_;
  std::vector<Matrix<K>> coeffs_;
};

/// Product of two linear-form matrices: coefficient of z_a z_b is
/// P_a Q_b + P_b Q_a for a < b and P_a Q_a on the diagonal.
template <Field K>
QuadraticPencil<K> operator*(const PencilMatrix<K>& p, const PencilMatrix<K>& q) {
  if (p.num_vars() != q.num_vars()) throw DimensionError("pencil product: variable count mismatch");
  if (p.cols() != q.rows()) throw DimensionError("pencil product: inner dimensions differ");
  const std::size_t n = p.num_vars();
  QuadraticPencil<K> out(p.rows(), q.cols(), n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a; b < n; ++b) {
      Matrix<K> c = p.coeff(a) * q.coeff(b);
      if (a != b) c += p.coeff(b) * q.coeff(a);
      out.coeff(a, b) = std::move(c);
    }
  return out;
}

}  // namespace adhm
