#pragma once

// First-order deformation theory of ADHM data, and generation of random
// globally regular solutions.
//
// Parameter vectors list, for k = 0..d, the row-major entries of
// (A_k, B_k, I_k, J_k); see ParameterLayout.

#include "adhm/gauge.hpp"
#include "adhm/regularity.hpp"

#include <cstdint>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>

namespace adhm {

struct ParameterLayout {
  std::size_t c, r, num_vars;

  std::size_t per_variable() const { return 2 * c * c + 2 * r * c; }
  std::size_t size() const { return num_vars * per_variable(); }
  std::size_t a_offset(std::size_t k) const { return k * per_variable(); }
  std::size_t b_offset(std::size_t k) const { return a_offset(k) + c * c; }
  std::size_t i_offset(std::size_t k) const { return b_offset(k) + c * c; }
  std::size_t j_offset(std::size_t k) const { return i_offset(k) + c * r; }
  /// Rows of the linearized equation: c*c per quadratic monomial.
  std::size_t equations() const { return quadratic_count(num_vars) * c * c; }
};

template <Field K>
ParameterLayout layout_of(const ADHMDatum<K>& x) {
  return {x.c(), x.r(), x.num_vars()};
}

template <Field K>
Vector<K> to_parameters(const ADHMDatum<K>& x) {
  Vector<K> v;
  v.reserve(layout_of(x).size());
  for (std::size_t k = 0; k < x.num_vars(); ++k)
    for (const auto* m : {&x.A().coeff(k), &x.B().coeff(k), &x.I().coeff(k), &x.J().coeff(k)})
      v.insert(v.end(), m->data().begin(), m->data().end());
  return v;
}

template <Field K>
ADHMDatum<K> from_parameters(const ParameterLayout& lay, std::span<const K> v) {
  if (v.size() != lay.size()) throw DimensionError("from_parameters: wrong vector length");
  const std::size_t c = lay.c, r = lay.r;
  std::vector<Matrix<K>> a, b, i, j;
  for (std::size_t k = 0; k < lay.num_vars; ++k) {
    a.push_back(unflatten<K>(v.subspan(lay.a_offset(k), c * c), c, c));
    b.push_back(unflatten<K>(v.subspan(lay.b_offset(k), c * c), c, c));
    i.push_back(unflatten<K>(v.subspan(lay.i_offset(k), c * r), c, r));
    j.push_back(unflatten<K>(v.subspan(lay.j_offset(k), r * c), r, c));
  }
  return ADHMDatum<K>(PencilMatrix<K>(a), PencilMatrix<K>(b), PencilMatrix<K>(i), PencilMatrix<K>(j));
}

/// Matrix of the linearized ADHM map
///   (dA, dB, dI, dJ) -> [dA~, B~] + [A~, dB~] + dI~ J~ + I~ dJ~
/// from parameter vectors to quadratic coefficient vectors.
template <Field K>
Matrix<K> linearization(const ADHMDatum<K>& x) {
  const auto lay = layout_of(x);
  const std::size_t c = lay.c, n = lay.num_vars, cc = c * c;
  Matrix<K> L(lay.equations(), lay.size());
  auto add = [&](std::size_t row0, std::size_t col0, const Matrix<K>& block) {
    for (std::size_t i = 0; i < block.rows(); ++i)
      for (std::size_t j = 0; j < block.cols(); ++j)
        if (!block(i, j).is_zero()) L(row0 + i, col0 + j) += block(i, j);
  };
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t l = 0; l < n; ++l) {
      const std::size_t row0 = quadratic_index(k, l, n) * cc;
      const auto& Al = x.A().coeff(l);
      const auto& Bl = x.B().coeff(l);
      add(row0, lay.a_offset(k), right_multiplication(Bl, c) - left_multiplication(Bl, c));
      add(row0, lay.b_offset(k), left_multiplication(Al, c) - right_multiplication(Al, c));
      add(row0, lay.i_offset(k), right_multiplication(x.J().coeff(l), c));
      add(row0, lay.j_offset(k), left_multiplication(x.I().coeff(l), c));
    }
  return L;
}

/// Columns: infinitesimal gauge directions xi -> ([xi, A_k], [xi, B_k], xi I_k, -J_k xi)
/// for xi running over the elementary matrices of End(V).
template <Field K>
Matrix<K> gauge_directions(const ADHMDatum<K>& x) {
  const auto lay = layout_of(x);
  const std::size_t c = lay.c;
  Matrix<K> G(lay.size(), c * c);
  for (std::size_t k = 0; k < lay.num_vars; ++k) {
    const auto& Ak = x.A().coeff(k);
    const auto& Bk = x.B().coeff(k);
    G.set_block(lay.a_offset(k), 0, right_multiplication(Ak, c) - left_multiplication(Ak, c));
    G.set_block(lay.b_offset(k), 0, right_multiplication(Bk, c) - left_multiplication(Bk, c));
    G.set_block(lay.i_offset(k), 0, right_multiplication(x.I().coeff(k), c));
    G.set_block(lay.j_offset(k), 0, -left_multiplication(x.J().coeff(k), c));
  }
  return G;
}

/// Columns: infinitesimal framing changes eta in gl(W),
/// (0, 0, I_k eta, -eta J_k).
template <Field K>
Matrix<K> framing_directions(const ADHMDatum<K>& x) {
  const auto lay = layout_of(x);
  const std::size_t r = lay.r;
  Matrix<K> F(lay.size(), r * r);
  for (std::size_t k = 0; k < lay.num_vars; ++k) {
    F.set_block(lay.i_offset(k), 0, left_multiplication(x.I().coeff(k), r));
    F.set_block(lay.j_offset(k), 0, -right_multiplication(x.J().coeff(k), r));
  }
  return F;
}

/// Regularity check used by preconditions: exact for d <= 1, sampled beyond.
template <Field K>
bool default_global_regularity(const ADHMDatum<K>& x) {
  const auto method = x.d() <= 1 ? RegularityMethod::symbolic() : RegularityMethod::randomized(32, 0);
  return is_globally_regular(x, method).globally_regular;
}

template <Field K>
void require_regular_solution(const ADHMDatum<K>& x, const char* op) {
  if (!solves_adhm(x)) throw PreconditionError(std::string(op) + ": datum does not solve the ADHM equation");
  if (!default_global_regularity(x)) throw PreconditionError(std::string(op) + ": datum is not globally regular");
}

/// Infinitesimal gauge action must be injective on regular data (trivial
/// stabilizer); throws AssertionFailure otherwise.
template <Field K>
Matrix<K> checked_gauge_directions(const ADHMDatum<K>& x) {
  Matrix<K> G = gauge_directions(x);
  if (rank(G) != x.c() * x.c())
    throw AssertionFailure("gauge action has a nontrivial infinitesimal stabilizer");
  return G;
}

/// dim ker(linearization) - c^2: the dimension of the tangent space of
/// M_d(r, c) at the class of X.
template <Field K>
std::size_t tangent_dimension(const ADHMDatum<K>& x, bool check_preconditions = true) {
  if (check_preconditions) require_regular_solution(x, "tangent_dimension");
  checked_gauge_directions(x);
  const Matrix<K> L = linearization(x);
  return L.cols() - rank(L) - x.c() * x.c();
}

/// Tangent dimension of the 0-dimensional moduli space at a regular solution.
template <Field K>
std::size_t m0_tangent_dimension(const Datum0<K>& x0) {
  x0.validate_shapes();
  if (!x0.residual().is_zero()) throw PreconditionError("m0_tangent_dimension: [A,B] + IJ != 0");
  const auto v = is_regular(x0);
  if (!v.regular())
    throw PreconditionError(std::string("m0_tangent_dimension: datum is not regular (") +
                            (v.stable ? "" : "unstable") + (!v.stable && !v.costable ? ", " : "") +
                            (v.costable ? "" : "not costable") + ")");
  return tangent_dimension(ADHMDatum<K>::constant(x0), false);
}

/// Dimension of the framing-change orbit through [X] in the moduli space:
/// directions from gl(W) modulo gauge directions.
template <Field K>
std::size_t framing_orbit_dimension(const ADHMDatum<K>& x) {
  const Matrix<K> G = gauge_directions(x);
  return rank(hstack<K>({G, framing_directions(x)})) - rank(G);
}

// ---------------------------------------------------------------------------
// Random solutions.

class RetryExhausted : public std::runtime_error {
public:
  RetryExhausted(std::size_t attempts, const std::string& what)
      : std::runtime_error(what + " (gave up after " + std::to_string(attempts) + " attempts)"), attempts_(attempts) {}
  std::size_t attempts() const { return attempts_; }

private:
  std::size_t attempts_;
};

inline constexpr long kCoefficientRadius = 10;
inline constexpr std::size_t kRetryBudget = 100;

template <Field K>
K random_small(std::mt19937_64& rng) {
  return detail::sample_coordinate<K>(rng, kCoefficientRadius);
}

template <Field K>
Matrix<K> random_matrix(std::size_t rows, std::size_t cols, std::mt19937_64& rng) {
  Matrix<K> m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = random_small<K>(rng);
  return m;
}

template <Field K>
Matrix<K> random_invertible(std::size_t n, std::mt19937_64& rng) {
  while (true) {
    Matrix<K> g = random_matrix<K>(n, n, rng);
    if (rank(g) == n) return g;
  }
}

/// Completes given A~ and I~ to a solution: the equation is linear in
/// (B~, J~), and a random integer combination of a kernel basis of that
/// linear map is taken. nullopt when only B~ = J~ = 0 solves it.
template <Field K>
std::optional<ADHMDatum<K>> complete_solution(const PencilMatrix<K>& a, const PencilMatrix<K>& i,
                                              std::mt19937_64& rng) {
  const std::size_t n = a.num_vars(), c = a.rows(), r = i.cols(), cc = c * c;
  if (a.cols() != c || i.rows() != c || i.num_vars() != n)
    throw DimensionError("complete_solution: inconsistent shapes");
  const std::size_t per_var = cc + r * c;  // unknowns (B_k, J_k)
  Matrix<K> system(quadratic_count(n) * cc, n * per_var);
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t l = 0; l < n; ++l) {
      const std::size_t row0 = quadratic_index(k, l, n) * cc;
      const Matrix<K> on_b = left_multiplication(a.coeff(l), c) - right_multiplication(a.coeff(l), c);
      const Matrix<K> on_j = left_multiplication(i.coeff(l), c);
      for (std::size_t p = 0; p < cc; ++p) {
        for (std::size_t q = 0; q < cc; ++q) system(row0 + p, k * per_var + q) += on_b(p, q);
        for (std::size_t q = 0; q < r * c; ++q) system(row0 + p, k * per_var + cc + q) += on_j(p, q);
      }
    }
  const auto kernel = kernel_basis(system);
  if (kernel.empty()) return std::nullopt;
  Vector<K> sol(n * per_var, K(0));
  for (const auto& kv : kernel) {
    const K s = random_small<K>(rng);
    for (std::size_t p = 0; p < sol.size(); ++p) sol[p] += s * kv[p];
  }
  std::vector<Matrix<K>> b, j;
  const std::span<const K> view(sol);
  for (std::size_t k = 0; k < n; ++k) {
    b.push_back(unflatten<K>(view.subspan(k * per_var, cc), c, c));
    j.push_back(unflatten<K>(view.subspan(k * per_var + cc, r * c), r, c));
  }
  ADHMDatum<K> x{a, PencilMatrix<K>(b), i, PencilMatrix<K>(j)};
  if (!solves_adhm(x)) throw AssertionFailure("complete_solution: kernel element does not solve the equation");
  return x;
}

/// Random globally regular solution of the ADHM equation: A~ and I~ are
/// drawn with integer coefficients in [-10, 10] and completed by
/// `complete_solution`. Draws failing global regularity are discarded, up to
/// `max_attempts`.
template <Field K>
ADHMDatum<K> random_solution(Dimensions dims, std::uint64_t seed, std::size_t max_attempts = kRetryBudget) {
  if (dims.r == 0 || dims.c == 0) throw PreconditionError("random_solution: r and c must be positive");
  std::mt19937_64 rng(seed);
  const std::size_t n = dims.d + 1, c = dims.c, r = dims.r;
  for (std::size_t attempt = 1; attempt <= max_attempts; ++attempt) {
    std::vector<Matrix<K>> a, i;
    for (std::size_t k = 0; k < n; ++k) {
      a.push_back(random_matrix<K>(c, c, rng));
      i.push_back(random_matrix<K>(c, r, rng));
    }
    const auto x = complete_solution(PencilMatrix<K>(a), PencilMatrix<K>(i), rng);
    if (!x) continue;
    const auto method = dims.d <= 1 ? RegularityMethod::symbolic() : RegularityMethod::randomized(32, seed);
    if (is_globally_regular(*x, method).globally_regular) return *x;
  }
  throw RetryExhausted(max_attempts, "random_solution: no globally regular solution for (d, r, c) = (" +
                                         std::to_string(dims.d) + ", " + std::to_string(r) + ", " +
                                         std::to_string(c) + ")");
}

/// Random datum, not necessarily a solution.
template <Field K>
ADHMDatum<K> random_datum(Dimensions dims, std::mt19937_64& rng) {
  const std::size_t n = dims.d + 1;
  std::vector<Matrix<K>> a, b, i, j;
  for (std::size_t k = 0; k < n; ++k) {
    a.push_back(random_matrix<K>(dims.c, dims.c, rng));
    b.push_back(random_matrix<K>(dims.c, dims.c, rng));
    i.push_back(random_matrix<K>(dims.c, dims.r, rng));
    j.push_back(random_matrix<K>(dims.r, dims.c, rng));
  }
  return ADHMDatum<K>(PencilMatrix<K>(a), PencilMatrix<K>(b), PencilMatrix<K>(i), PencilMatrix<K>(j));
}

}  // namespace adhm
