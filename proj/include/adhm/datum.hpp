#pragma once

// d-dimensional ADHM data: four matrices of linear forms in d+1 homogeneous
// variables,
//
//   A(z) = sum_k A_k z_k,  B(z) = sum_k B_k z_k   in End(V),  dim V = c
//   I(z) = sum_k I_k z_k                          in Hom(W,V), dim W = r
//   J(z) = sum_k J_k z_k                          in Hom(V,W)
//
// and their constant (0-dimensional) counterparts.

#include "adhm/linalg.hpp"
#include "adhm/pencil.hpp"

#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace adhm {

/// A documented precondition of an operation does not hold.
class PreconditionError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// An internal consistency check failed (a computed identity did not hold).
class AssertionFailure : public std::logic_error {
public:
  using std::logic_error::logic_error;
};

struct Dimensions {
  std::size_t d = 0;  // projective dimension of the parameter space
  std::size_t r = 1;  // dim W
  std::size_t c = 1;  // dim V
  friend bool operator==(const Dimensions&, const Dimensions&) = default;
};

/// Constant ADHM datum (A, B, I, J).
template <Field K>
struct Datum0 {
  Matrix<K> A, B, I, J;

  std::size_t c() const { return A.rows(); }
  std::size_t r() const { return I.cols(); }

  void validate_shapes() const {
    const std::size_t c = A.rows(), r = I.cols();
    if (A.cols() != c || B.rows() != c || B.cols() != c || I.rows() != c || J.rows() != r || J.cols() != c)
      throw DimensionError("Datum0: inconsistent shapes A " + A.shape() + ", B " + B.shape() + ", I " +
                           I.shape() + ", J " + J.shape());
  }

  /// The datum (A^T, B^T, J^T, I^T); costability of *this is stability of the result.
  Datum0 transposed() const { return {A.transpose(), B.transpose(), J.transpose(), I.transpose()}; }

  /// [A,B] + IJ
  Matrix<K> residual() const { return commutator(A, B) + I * J; }

  friend bool operator==(const Datum0&, const Datum0&) = default;
};

/// Point of P^d given by homogeneous coordinates, not all zero.
template <Field K>
class ProjPoint {
public:
  explicit ProjPoint(std::vector<K> coords) : x_(std::move(coords)) {
    if (x_.empty()) throw PreconditionError("ProjPoint: no coordinates");
    if (is_zero_vector(x_)) throw PreconditionError("ProjPoint: all coordinates are zero");
  }
  ProjPoint(std::initializer_list<long> coords) : ProjPoint(std::vector<K>(coords.begin(), coords.end())) {}

  std::size_t size() const { return x_.size(); }
  std::span<const K> coords() const { return x_; }
  const K& operator[](std::size_t i) const { return x_[i]; }

  /// Representative whose first nonzero coordinate is 1.
  ProjPoint canonical() const {
    std::size_t i = 0;
    while (x_[i].is_zero()) ++i;
    const K inv = x_[i].inverse();
    std::vector<K> y(x_);
    for (auto& v : y) v *= inv;
    return ProjPoint(std::move(y));
  }

  /// Equality as points of projective space.
  bool same_point(const ProjPoint& o) const { return canonical().x_ == o.canonical().x_; }

  std::string to_string() const {
    std::string s = "[";
    for (std::size_t i = 0; i < x_.size(); ++i) s += (i ? ":" : "") + x_[i].to_string();
    return s + "]";
  }

  friend bool operator==(const ProjPoint&, const ProjPoint&) = default;

private:
  std::vector<K> x_;
};

/// d-dimensional ADHM datum, stored coefficientwise.
template <Field K>
class ADHMDatum {
public:
  ADHMDatum(PencilMatrix<K> a, PencilMatrix<K> b, PencilMatrix<K> i, PencilMatrix<K> j)
      : A_(std::move(a)), B_(std::move(b)), I_(std::move(i)), J_(std::move(j)) {
    validate();
  }

  static ADHMDatum zero(Dimensions dims) {
    const std::size_t n = dims.d + 1;
    return ADHMDatum(PencilMatrix<K>(dims.c, dims.c, n), PencilMatrix<K>(dims.c, dims.c, n),
                     PencilMatrix<K>(dims.c, dims.r, n), PencilMatrix<K>(dims.r, dims.c, n));
  }
  /// The d = 0 datum with the given constant matrices.
  static ADHMDatum constant(const Datum0<K>& x) {
    return ADHMDatum(PencilMatrix<K>({x.A}), PencilMatrix<K>({x.B}), PencilMatrix<K>({x.I}),
                     PencilMatrix<K>({x.J}));
  }

  Dimensions dims() const { return {A_.num_vars() - 1, I_.cols(), A_.rows()}; }
  std::size_t d() const { return A_.num_vars() - 1; }
  std::size_t r() const { return I_.cols(); }
  std::size_t c() const { return A_.rows(); }
  std::size_t num_vars() const { return A_.num_vars(); }

  const PencilMatrix<K>& A() const { return A_; }
  const PencilMatrix<K>& B() const { return B_; }
  const PencilMatrix<K>& I() const { return I_; }
  const PencilMatrix<K>& J() const { return J_; }

  /// Constant datum (A_k, B_k, I_k, J_k).
  Datum0<K> coefficient(std::size_t k) const { return {A_.coeff(k), B_.coeff(k), I_.coeff(k), J_.coeff(k)}; }

  /// (A^T, B^T, J^T, I^T) coefficientwise.
  ADHMDatum transposed() const { return ADHMDatum(A_.transpose(), B_.transpose(), J_.transpose(), I_.transpose()); }

  friend bool operator==(const ADHMDatum&, const ADHMDatum&) = default;

private:
  void validate() const {
    const std::size_t n = A_.num_vars(), c = A_.rows(), r = I_.cols();
    if (n == 0) throw DimensionError("ADHMDatum: no coefficient matrices");
    if (B_.num_vars() != n || I_.num_vars() != n || J_.num_vars() != n)
      throw DimensionError("ADHMDatum: coefficient tuples have different lengths");
    if (c == 0 || r == 0) throw DimensionError("ADHMDatum: c and r must be positive");
    if (A_.cols() != c || B_.rows() != c || B_.cols() != c || I_.rows() != c || J_.rows() != r || J_.cols() != c)
      throw DimensionError("ADHMDatum: matrix shapes inconsistent with (r, c)");
  }

  PencilMatrix<K> A_, B_, I_, J_;
};

/// X(p) = (sum A_k p_k, sum B_k p_k, sum I_k p_k, sum J_k p_k).
template <Field K>
Datum0<K> evaluate(const ADHMDatum<K>& x, const ProjPoint<K>& p) {
  if (p.size() != x.num_vars())
    throw PreconditionError("evaluate: point has " + std::to_string(p.size()) + " coordinates, expected " +
                            std::to_string(x.num_vars()));
  return {x.A().evaluate(p.coords()), x.B().evaluate(p.coords()), x.I().evaluate(p.coords()),
          x.J().evaluate(p.coords())};
}

/// Invertible c x c matrix acting on V.
template <Field K>
class GaugeElement {
public:
  explicit GaugeElement(Matrix<K> g) : g_(std::move(g)) {
    if (g_.rows() != g_.cols()) throw PreconditionError("GaugeElement: matrix is not square");
    auto inv = inverse(g_);
    if (!inv) throw PreconditionError("GaugeElement: matrix is singular");
    inv_ = std::move(*inv);
  }
  static GaugeElement identity(std::size_t c) { return GaugeElement(Matrix<K>::identity(c)); }

  const Matrix<K>& matrix() const { return g_; }
  const Matrix<K>& inverse_matrix() const { return inv_; }
  std::size_t size() const { return g_.rows(); }

private:
  Matrix<K> g_, inv_;
};

}  // namespace adhm
