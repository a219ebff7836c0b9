#pragma once

#include "adhm/adhm.hpp"

#include <random>

namespace adhm::testing {

using Q = Rational;

/// I = (z0, z1), J = (-z1, z0)^T, A = B = 0.
inline ADHMDatum<Q> standard_c1() {
  PencilMatrix<Q> a(1, 1, 2), b(1, 1, 2), i(1, 2, 2), j(2, 1, 2);
  i.coeff(0) = Matrix<Q>{{1, 0}};
  i.coeff(1) = Matrix<Q>{{0, 1}};
  j.coeff(0) = Matrix<Q>{{0}, {1}};
  j.coeff(1) = Matrix<Q>{{-1}, {0}};
  return {a, b, i, j};
}

/// I = (z0, z0), J = (z0, -z0)^T: a solution that is regular except at [0:1].
inline ADHMDatum<Q> degenerate_c1() {
  PencilMatrix<Q> a(1, 1, 2), b(1, 1, 2), i(1, 2, 2), j(2, 1, 2);
  i.coeff(0) = Matrix<Q>{{1, 1}};
  j.coeff(0) = Matrix<Q>{{1}, {-1}};
  return {a, b, i, j};
}

/// A d = 1 datum whose I vanishes at the point [p1 : -p0] (not a solution in general).
template <Field K>
ADHMDatum<K> with_vanishing_i(const ADHMDatum<K>& x, long p0, long p1) {
  PencilMatrix<K> i = x.I();
  i.coeff(0) = x.I().coeff(0) * K(p0);
  i.coeff(1) = x.I().coeff(0) * K(p1);
  return {x.A(), x.B(), i, x.J()};
}

template <Field K>
Datum0<K> random_datum0(std::size_t r, std::size_t c, std::mt19937_64& rng) {
  return {random_matrix<K>(c, c, rng), random_matrix<K>(c, c, rng), random_matrix<K>(c, r, rng),
          random_matrix<K>(r, c, rng)};
}

/// Random matrix of the given rank (product of random factors).
template <Field K>
Matrix<K> random_rank(std::size_t rows, std::size_t cols, std::size_t rk, std::mt19937_64& rng) {
  return random_matrix<K>(rows, rk, rng) * random_matrix<K>(rk, cols, rng);
}

}  // namespace adhm::testing
