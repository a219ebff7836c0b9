#include "helpers.hpp"

#include <gtest/gtest.h>

using namespace adhm;
using namespace adhm::testing;

namespace {

Datum0<Q> d0(Matrix<Q> a, Matrix<Q> b, Matrix<Q> i, Matrix<Q> j) { return {a, b, i, j}; }

}  // namespace

TEST(Stability, Examples) {
  EXPECT_TRUE(is_stable(d0(Matrix<Q>(1, 1), Matrix<Q>(1, 1), Matrix<Q>{{1, 0}}, Matrix<Q>(2, 1))).holds);
  const auto unstable = is_stable(d0(Matrix<Q>(3, 3), Matrix<Q>(3, 3), Matrix<Q>(3, 2), Matrix<Q>(2, 3)));
  EXPECT_FALSE(unstable.holds);
  EXPECT_EQ(unstable.subspace.cols(), 0u);
  // A e1 = e2 saturates from e1
  const auto st = is_stable(d0(Matrix<Q>{{0, 0}, {1, 0}}, Matrix<Q>(2, 2), Matrix<Q>{{1}, {0}}, Matrix<Q>(1, 2)));
  EXPECT_TRUE(st.holds);
}

TEST(Costability, Examples) {
  EXPECT_TRUE(is_costable(d0(Matrix<Q>(2, 2), Matrix<Q>(2, 2), Matrix<Q>(2, 2), Matrix<Q>::identity(2))).holds);
  const auto co = is_costable(d0(Matrix<Q>(2, 2), Matrix<Q>(2, 2), Matrix<Q>(2, 1), Matrix<Q>(1, 2)));
  EXPECT_FALSE(co.holds);
  EXPECT_EQ(co.subspace.cols(), 2u);
  EXPECT_TRUE(is_costable(d0(Matrix<Q>(1, 1), Matrix<Q>(1, 1), Matrix<Q>(1, 2), Matrix<Q>{{0}, {1}})).holds);
}

TEST(Regularity, Examples) {
  const auto reg = is_regular(d0(Matrix<Q>(1, 1), Matrix<Q>(1, 1), Matrix<Q>{{1, 0}}, Matrix<Q>{{0}, {1}}));
  EXPECT_TRUE(reg.regular());
  EXPECT_TRUE(d0(Matrix<Q>(1, 1), Matrix<Q>(1, 1), Matrix<Q>{{1, 0}}, Matrix<Q>{{0}, {1}}).residual().is_zero());
  EXPECT_FALSE(is_regular(d0(Matrix<Q>(1, 1), Matrix<Q>(1, 1), Matrix<Q>(1, 2), Matrix<Q>{{0}, {1}})).regular());
  EXPECT_FALSE(is_regular(d0(Matrix<Q>(1, 1), Matrix<Q>(1, 1), Matrix<Q>{{1, 0}}, Matrix<Q>(2, 1))).regular());
}

TEST(Regularity, DualityAndWitnesses) {
  std::mt19937_64 rng(21);
  int failures = 0;
  for (int it = 0; it < 200; ++it) {
    const std::size_t c = 1 + rng() % 3, r = 1 + rng() % 2;
    Datum0<Q> x = random_datum0<Q>(r, c, rng);
    // Low-rank and structured choices to produce failures.
    if (it % 3 == 0) x.I = random_rank<Q>(c, r, rng() % 2, rng);
    if (it % 4 == 0) x.J = random_rank<Q>(r, c, rng() % 2, rng);
    if (it % 5 == 0) x.A = Matrix<Q>(c, c), x.B = Matrix<Q>::scalar(c, Q(2));
    const auto st = is_stable(x), co = is_costable(x);
    EXPECT_EQ(co.holds, is_stable(x.transposed()).holds);
    EXPECT_LE(st.iterations, c);
    if (!st.holds) {
      ++failures;
      EXPECT_TRUE(verifies_instability(x, st.subspace));
    }
    if (!co.holds) {
      ++failures;
      EXPECT_TRUE(verifies_noncostability(x, co.subspace));
    }
  }
  EXPECT_GT(failures, 20);
}

TEST(Regularity, StabilityMatchesFullKrylovRank) {
  std::mt19937_64 rng(22);
  for (int it = 0; it < 100; ++it) {
    const std::size_t c = 2 + rng() % 2;
    Datum0<Q> x = random_datum0<Q>(1, c, rng);
    if (it % 2) x.A = random_rank<Q>(c, c, 1, rng), x.B = x.A * Q(3);
    // Oracle: all words of length < c applied to I.
    std::vector<Matrix<Q>> blocks{x.I};
    std::vector<Matrix<Q>> layer{x.I};
    for (std::size_t len = 1; len < c; ++len) {
      std::vector<Matrix<Q>> next;
      for (const auto& m : layer) {
        next.push_back(x.A * m);
        next.push_back(x.B * m);
      }
      blocks.insert(blocks.end(), next.begin(), next.end());
      layer = next;
    }
    EXPECT_EQ(is_stable(x).holds, rank(hstack<Q>(blocks)) == c);
  }
}

TEST(GlobalRegularity, StandardSolutionIsRegular) {
  const auto g = is_globally_regular(standard_c1());
  EXPECT_TRUE(g.globally_regular);
  EXPECT_FALSE(g.probabilistic);
  ASSERT_TRUE(g.stability_gcd.has_value());
  EXPECT_EQ(g.stability_gcd->degree(), 0);
}

TEST(GlobalRegularity, DegenerateDatumFailsExactlyAtOnePoint) {
  const auto x = degenerate_c1();
  const auto g = is_globally_regular(x);
  EXPECT_FALSE(g.globally_regular);
  EXPECT_FALSE(g.fails_everywhere);
  EXPECT_TRUE(g.failure_points_complete);
  ASSERT_EQ(g.failure_points.size(), 1u);
  EXPECT_TRUE(g.failure_points[0].same_point(ProjPoint<Q>{0, 1}));
  // gcd of the entries of I = (z0, z0)
  EXPECT_EQ(*g.stability_gcd, HomogPoly<Q>::variable(2, 0));
  const auto v = is_regular(evaluate(x, g.failure_points[0]));
  EXPECT_FALSE(v.regular());
  EXPECT_TRUE(verifies_instability(evaluate(x, g.failure_points[0]), *v.stability_witness));
}

TEST(GlobalRegularity, ZeroDatumFailsEverywhere) {
  const auto g = is_globally_regular(ADHMDatum<Q>::zero({1, 2, 2}));
  EXPECT_FALSE(g.globally_regular);
  EXPECT_TRUE(g.fails_everywhere);
  EXPECT_FALSE(g.stability_gcd.has_value());
}

TEST(GlobalRegularity, CertifiedFailurePointsAreNonRegular) {
  std::mt19937_64 rng(23);
  for (int it = 0; it < 30; ++it) {
    const auto x = with_vanishing_i(random_datum<Q>({1, 2, 2}, rng), 1 + static_cast<long>(rng() % 5),
                                    -static_cast<long>(rng() % 5));
    const auto g = is_globally_regular(x);
    EXPECT_FALSE(g.globally_regular);
    ASSERT_FALSE(g.failure_points.empty());
    for (const auto& p : g.failure_points) {
      const auto x0 = evaluate(x, p);
      const auto v = is_regular(x0);
      EXPECT_FALSE(v.regular());
      if (v.stability_witness) {
        EXPECT_TRUE(verifies_instability(x0, *v.stability_witness));
      }
      if (v.costability_witness) {
        EXPECT_TRUE(verifies_noncostability(x0, *v.costability_witness));
      }
    }
  }
}

TEST(GlobalRegularity, SymbolicRegularImpliesRandomizedRegular) {
  std::mt19937_64 rng(24);
  for (int it = 0; it < 15; ++it) {
    const auto x = random_datum<Q>({1, 1 + rng() % 2, 1 + rng() % 2}, rng);
    const auto sym = is_globally_regular(x);
    const auto rnd = is_globally_regular(x, RegularityMethod::randomized(50, rng()));
    EXPECT_TRUE(rnd.probabilistic);
    if (sym.globally_regular) {
      EXPECT_TRUE(rnd.globally_regular);
    }
    if (!rnd.globally_regular) {
      EXPECT_FALSE(sym.globally_regular);
    }
  }
}

TEST(GlobalRegularity, SymbolicMethodNeedsDimensionAtMostOne) {
  std::mt19937_64 rng(25);
  const auto x = random_datum<Q>({2, 2, 1}, rng);
  EXPECT_THROW(is_globally_regular(x, RegularityMethod::symbolic()), PreconditionError);
  const auto g = is_globally_regular(x, RegularityMethod::randomized(20, 1));
  EXPECT_TRUE(g.probabilistic);
  EXPECT_EQ(g.samples.size(), 20u);
}

TEST(GlobalRegularity, ModularFieldAgreesOnStandardSolution) {
  ModP::set_modulus(ModP::kDefaultPrime);
  PencilMatrix<ModP> a(1, 1, 2), b(1, 1, 2), i(1, 2, 2), j(2, 1, 2);
  i.coeff(0) = Matrix<ModP>{{1, 0}};
  i.coeff(1) = Matrix<ModP>{{1, 1}};
  j.coeff(0) = Matrix<ModP>{{1}, {-1}};
  const ADHMDatum<ModP> x(a, b, i, j);  // I = (z0 + z1, z1), J = (z0, -z0)^T: IJ = z0^2 != 0
  EXPECT_FALSE(solves_adhm(x));
  const auto g = is_globally_regular(x);
  EXPECT_FALSE(g.globally_regular);  // J vanishes at [0:1]
  ASSERT_EQ(g.failure_points.size(), 1u);
  EXPECT_TRUE(g.failure_points[0].same_point(ProjPoint<ModP>{0, 1}));
}
