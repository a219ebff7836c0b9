// Builds the standard charge-one datum on P^1, checks it, and prints its
// tangent dimension, cohomology on P^3 and the splitting type on the framing line.

#include "adhm/adhm.hpp"

#include <iostream>

int main() {
  using namespace adhm;
  using Q = Rational;

  // I(z) = (z0, z1), J(z) = (-z1, z0)^T, A = B = 0.
  auto x = ADHMDatum<Q>::zero({1, 2, 1});
  PencilMatrix<Q> i(1, 2, 2), j(2, 1, 2);
  i.coeff(0) = Matrix<Q>{{1, 0}};
  i.coeff(1) = Matrix<Q>{{0, 1}};
  j.coeff(0) = Matrix<Q>{{0}, {1}};
  j.coeff(1) = Matrix<Q>{{-1}, {0}};
  x = ADHMDatum<Q>(x.A(), x.B(), i, j);

  std::cout << "solves ADHM: " << solves_adhm(x) << "\n";
  std::cout << "globally regular: " << is_globally_regular(x).globally_regular << "\n";
  std::cout << "tangent dimension: " << tangent_dimension(x) << "\n";

  const auto m = build_monad(x);
  const auto t = cohomology_dims(m, -3, 0);
  std::cout << "h^1(E(-1)) = " << t.at(1, -1) << "\n";

  std::cout << "splitting on framing line:";
  for (int a : restrict_to_line(m, framing_line<Q>(m.n)).exponents) std::cout << " " << a;
  std::cout << "\n";

  auto y = random_solution<Q>({1, 2, 2}, 42);
  std::cout << "random (1,2,2) tangent dimension: " << tangent_dimension(y) << "\n";
}
