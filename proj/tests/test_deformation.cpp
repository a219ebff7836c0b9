#include "helpers.hpp"

#include <gtest/gtest.h>

using namespace adhm;
using namespace adhm::testing;

TEST(Tangent, StandardSolutionHasDimensionEight) { EXPECT_EQ(tangent_dimension(standard_c1()), 8u); }

TEST(Tangent, DimensionFourRC) {
  for (auto [r, c] : {std::pair<std::size_t, std::size_t>{2, 1}, {2, 2}, {3, 1}, {3, 2}})
    for (std::uint64_t seed = 0; seed < 3; ++seed)
      EXPECT_EQ(tangent_dimension(random_solution<Q>({1, r, c}, seed)), 4 * r * c) << r << "," << c;
}

TEST(Tangent, RejectsNonRegularData) {
  EXPECT_THROW(tangent_dimension(degenerate_c1()), PreconditionError);
  std::mt19937_64 rng(1);
  EXPECT_THROW(tangent_dimension(random_datum<Q>({1, 2, 2}, rng)), PreconditionError);
}

TEST(Linearization, GaugeDirectionsLieInKernel) {
  for (std::uint64_t seed = 0; seed < 3; ++seed) {
    const auto x = random_solution<Q>({1, 2, 2}, seed);
    EXPECT_TRUE((linearization(x) * gauge_directions(x)).is_zero());
    EXPECT_EQ(rank(gauge_directions(x)), 4u);
  }
}

TEST(Linearization, MatchesPolarizationOfTheResidual) {
  // residual(X + D) = residual(X) + L(D) + residual(D)
  std::mt19937_64 rng(41);
  for (int it = 0; it < 10; ++it) {
    const auto x = random_datum<Q>({1, 2, 2}, rng);
    const auto dx = random_datum<Q>({1, 2, 2}, rng);
    const auto lay = layout_of(x);
    Vector<Q> sum = to_parameters(x);
    const Vector<Q> dv = to_parameters(dx);
    for (std::size_t i = 0; i < sum.size(); ++i) sum[i] += dv[i];
    const auto xs = from_parameters<Q>(lay, sum);
    const auto lhs = adhm_residual(xs) - adhm_residual(x) - adhm_residual(dx);
    const Vector<Q> ld = linearization(x) * dv;
    std::size_t row = 0;
    for (const auto& m : lhs.coeffs())
      for (const auto& v : m.data()) EXPECT_EQ(v, ld[row++]);
  }
}

TEST(Parameters, RoundTrip) {
  std::mt19937_64 rng(42);
  const auto x = random_datum<Q>({2, 3, 2}, rng);
  EXPECT_EQ(from_parameters<Q>(layout_of(x), to_parameters(x)), x);
}

TEST(M0Tangent, Examples) {
  const Datum0<Q> x{Matrix<Q>(1, 1), Matrix<Q>(1, 1), Matrix<Q>{{1, 0}}, Matrix<Q>{{0}, {1}}};
  EXPECT_EQ(m0_tangent_dimension(x), 4u);
  EXPECT_EQ(m0_tangent_dimension(random_solution<Q>({0, 2, 2}, 5).coefficient(0)), 8u);
  EXPECT_EQ(m0_tangent_dimension(random_solution<Q>({0, 3, 1}, 5).coefficient(0)), 6u);
}

TEST(M0Tangent, RankOneHasNoRegularSolutions) {
  // IJ = 0 with scalar I, J forces I = 0 or J = 0.
  for (long i : {0L, 1L})
    for (long j : {0L, 1L}) {
      if (i * j != 0) continue;
      const Datum0<Q> x{Matrix<Q>{{3}}, Matrix<Q>{{-2}}, Matrix<Q>{{i}}, Matrix<Q>{{j}}};
      EXPECT_THROW(m0_tangent_dimension(x), PreconditionError);
    }
  EXPECT_THROW(random_solution<Q>({0, 1, 1}, 1, 5), RetryExhausted);
}

TEST(FramingOrbit, DimensionThreeForRankTwo) {
  EXPECT_EQ(framing_orbit_dimension(standard_c1()), 3u);
  for (std::uint64_t seed = 0; seed < 3; ++seed) {
    EXPECT_EQ(framing_orbit_dimension(random_solution<Q>({1, 2, 1}, seed)), 3u);
    EXPECT_EQ(framing_orbit_dimension(random_solution<Q>({1, 2, 2}, seed)), 3u);
  }
}

TEST(RandomSolution, DeterministicAndValid) {
  const auto x = random_solution<Q>({1, 2, 2}, 42);
  EXPECT_EQ(x, random_solution<Q>({1, 2, 2}, 42));
  EXPECT_FALSE(x == random_solution<Q>({1, 2, 2}, 43));
  EXPECT_TRUE(solves_adhm(x));
  EXPECT_TRUE(is_globally_regular(x).globally_regular);
}

TEST(RandomSolution, ExhaustionReportsAttempts) {
  try {
    random_solution<Q>({1, 1, 3}, 7, 4);
    FAIL() << "expected RetryExhausted";
  } catch (const RetryExhausted& e) {
    EXPECT_EQ(e.attempts(), 4u);
  }
}

TEST(RandomSolution, ModularField) {
  ModP::set_modulus(ModP::kDefaultPrime);
  const auto x = random_solution<ModP>({1, 2, 2}, 3);
  EXPECT_TRUE(solves_adhm(x));
  EXPECT_EQ(tangent_dimension(x), 16u);
}
