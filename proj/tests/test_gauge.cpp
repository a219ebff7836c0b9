#include "helpers.hpp"

#include <gtest/gtest.h>

using namespace adhm;
using namespace adhm::testing;

TEST(Gauge, EvaluationCompatibility) {
  std::mt19937_64 rng(31);
  for (int it = 0; it < 20; ++it) {
    const auto x = random_datum<Q>({1, 2, 2}, rng);
    const GaugeElement<Q> g(random_invertible<Q>(2, rng));
    for (const auto& p : sample_points<Q>(2, 3, rng(), 50))
      EXPECT_EQ(evaluate(gauge_act(g, x), p), gauge_act(g, evaluate(x, p)));
  }
}

TEST(Gauge, ResidualIsConjugated) {
  std::mt19937_64 rng(32);
  for (int it = 0; it < 20; ++it) {
    const auto x = random_datum<Q>({1, 2, 2}, rng);
    const GaugeElement<Q> g(random_invertible<Q>(2, rng));
    const auto rx = adhm_residual(x), rg = adhm_residual(gauge_act(g, x));
    for (std::size_t k = 0; k < rx.coeffs().size(); ++k)
      EXPECT_EQ(rg.coeffs()[k], g.matrix() * rx.coeffs()[k] * g.inverse_matrix());
  }
}

TEST(Gauge, InvariantsOfSolutions) {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    std::mt19937_64 rng(seed);
    const auto x = random_solution<Q>({1, 2, 2}, seed);
    const GaugeElement<Q> g(random_invertible<Q>(2, rng));
    const auto y = gauge_act(g, x);
    EXPECT_TRUE(solves_adhm(y));
    EXPECT_TRUE(is_globally_regular(y).globally_regular);
    EXPECT_EQ(tangent_dimension(y), tangent_dimension(x));
  }
}

TEST(Gauge, EquivalenceIsFoundAndVerified) {
  std::mt19937_64 rng(33);
  for (int it = 0; it < 10; ++it) {
    const auto x = random_solution<Q>({1, 2, 2}, static_cast<std::uint64_t>(it));
    const GaugeElement<Q> g(random_invertible<Q>(2, rng));
    const auto y = gauge_act(g, x);
    const auto h = gauge_equivalent(x, y);
    ASSERT_TRUE(h.has_value());
    EXPECT_EQ(gauge_act(*h, x), y);
    // regular data have trivial stabilizer, so the intertwiner is g itself
    EXPECT_EQ(h->matrix(), g.matrix());
  }
}

TEST(Gauge, DistinctSolutionsAreNotEquivalent) {
  const auto x = random_solution<Q>({1, 2, 2}, 1);
  const auto y = random_solution<Q>({1, 2, 2}, 2);
  EXPECT_FALSE(gauge_equivalent(x, y).has_value());
  EXPECT_FALSE(gauge_equivalent(x, random_solution<Q>({1, 2, 1}, 1)).has_value());
}
