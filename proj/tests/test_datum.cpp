#include "helpers.hpp"

#include <gtest/gtest.h>

using namespace adhm;
using namespace adhm::testing;

TEST(Evaluate, BasisPointsGiveCoefficients) {
  std::mt19937_64 rng(1);
  const auto x = random_datum<Q>({1, 2, 2}, rng);
  EXPECT_EQ(evaluate(x, ProjPoint<Q>{1, 0}), x.coefficient(0));
  EXPECT_EQ(evaluate(x, ProjPoint<Q>{0, 1}), x.coefficient(1));
  const Datum0<Q> sum = evaluate(x, ProjPoint<Q>{1, 1});
  const Datum0<Q> a = x.coefficient(0), b = x.coefficient(1);
  EXPECT_EQ(sum.A, a.A + b.A);
  EXPECT_EQ(sum.B, a.B + b.B);
  EXPECT_EQ(sum.I, a.I + b.I);
  EXPECT_EQ(sum.J, a.J + b.J);
}

TEST(Evaluate, ScalingThePointScalesTheDatum) {
  std::mt19937_64 rng(2);
  const auto x = random_datum<Q>({2, 2, 2}, rng);
  const Datum0<Q> p = evaluate(x, ProjPoint<Q>{1, -2, 3});
  const Datum0<Q> q = evaluate(x, ProjPoint<Q>{-5, 10, -15});
  EXPECT_EQ(q.A, p.A * Q(-5));
  EXPECT_EQ(q.J, p.J * Q(-5));
  EXPECT_EQ(is_regular(p).regular(), is_regular(q).regular());
}

TEST(Evaluate, Errors) {
  const auto x = standard_c1();
  EXPECT_THROW(evaluate(x, ProjPoint<Q>{1, 0, 0}), PreconditionError);
  EXPECT_THROW(ProjPoint<Q>({0, 0}), PreconditionError);
}

TEST(ProjPoint, CanonicalRepresentative) {
  const ProjPoint<Q> p{0, 3, -6};
  EXPECT_EQ(p.canonical().to_string(), "[0:1:-2]");
  EXPECT_TRUE(p.same_point(ProjPoint<Q>{0, -1, 2}));
  EXPECT_FALSE(p.same_point(ProjPoint<Q>{1, 1, 2}));
}

TEST(Residual, ZeroDatum) {
  EXPECT_TRUE(adhm_residual(ADHMDatum<Q>::zero({2, 3, 2})).is_zero());
}

TEST(Residual, StandardSolutionVanishes) {
  EXPECT_TRUE(solves_adhm(standard_c1()));
  EXPECT_EQ(adhm_residual(standard_c1()).coeffs().size(), 3u);  // z0^2, z0 z1, z1^2
}

TEST(Residual, CommutatorExample) {
  const Datum0<Q> x0{Matrix<Q>{{0, 1}, {0, 0}}, Matrix<Q>{{0, 0}, {1, 0}}, Matrix<Q>(2, 1), Matrix<Q>(1, 2)};
  const auto res = adhm_residual(ADHMDatum<Q>::constant(x0));
  EXPECT_EQ(res.coeff(0, 0), (Matrix<Q>{{1, 0}, {0, -1}}));
  EXPECT_FALSE(solves_adhm(ADHMDatum<Q>::constant(x0)));
}

TEST(Residual, MatchesPointwiseEvaluation) {
  std::mt19937_64 rng(3);
  for (int it = 0; it < 20; ++it) {
    const auto x = random_datum<Q>({2, 2, 2}, rng);
    const auto res = adhm_residual(x);
    for (const auto& p : sample_points<Q>(3, 3, rng(), 20)) {
      const Datum0<Q> x0 = evaluate(x, p);
      EXPECT_EQ(res.evaluate(p.coords()), x0.A * x0.B - x0.B * x0.A + x0.I * x0.J);
    }
  }
}

TEST(ADHMDatum, RejectsInconsistentShapes) {
  PencilMatrix<Q> a(2, 2, 2), b(2, 2, 2), i(2, 1, 2), j(1, 2, 2), bad(3, 2, 2);
  EXPECT_NO_THROW(ADHMDatum<Q>(a, b, i, j));
  EXPECT_THROW(ADHMDatum<Q>(a, bad, i, j), DimensionError);
  EXPECT_THROW(ADHMDatum<Q>(a, b, i, PencilMatrix<Q>(1, 2, 3)), DimensionError);
}

TEST(GaugeElement, RejectsSingular) {
  EXPECT_THROW(GaugeElement<Q>(Matrix<Q>{{1, 2}, {2, 4}}), PreconditionError);
  EXPECT_THROW(GaugeElement<Q>(Matrix<Q>(2, 3)), PreconditionError);
}
