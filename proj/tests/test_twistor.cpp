#include "helpers.hpp"

#include <gtest/gtest.h>

using namespace adhm;
using namespace adhm::testing;

TEST(Sections, RegularDatumGivesRegularSamples) {
  const auto x = random_solution<Q>({1, 2, 2}, 1);
  const auto s = section_samples(x, sample_points<Q>(2, 20, 3));
  ASSERT_EQ(s.size(), 20u);
  for (const auto& sample : s) {
    EXPECT_TRUE(sample.verdict.regular());
    EXPECT_EQ(sample.datum, evaluate(x, sample.point));
    EXPECT_EQ(is_regular(sample.datum).regular(), sample.verdict.regular());
  }
}

TEST(Sections, DegenerateDatumIsNonRegularAtZeroOne) {
  const auto s = section_samples(degenerate_c1(), {ProjPoint<Q>{1, 0}, ProjPoint<Q>{0, 1}});
  EXPECT_TRUE(s[0].verdict.regular());
  EXPECT_FALSE(s[1].verdict.regular());
  EXPECT_TRUE(s[1].datum.I.is_zero());
}

TEST(Sections, EmptyAndWrongDimension) {
  EXPECT_TRUE(section_samples(standard_c1(), {}).empty());
  EXPECT_THROW(section_samples(random_solution<Q>({0, 2, 1}, 1), {}), PreconditionError);
}

TEST(TangentSpace, DimensionsAndLinearizedEquation) {
  for (auto [r, c] : {std::pair<std::size_t, std::size_t>{2, 1}, {2, 2}, {3, 1}}) {
    const auto x = random_solution<Q>({1, r, c}, 2);
    const auto t = tangent_space(x);
    EXPECT_EQ(t.dim(), 4 * r * c);
    EXPECT_TRUE((linearization(x) * t.basis).is_zero());
    // complement of the gauge directions
    EXPECT_EQ(rank(hstack<Q>({t.basis, gauge_directions(x)})), t.dim() + c * c);
  }
  EXPECT_EQ(tangent_space(standard_c1()).dim(), 8u);
}

TEST(WebSubspace, StandardSolutionAtOneZero) {
  const auto x = standard_c1();
  const auto t = tangent_space(x);
  const auto s = web_subspace(x, ProjPoint<Q>{1, 0}, t);
  EXPECT_EQ(s.dim(), 4u);
  // every direction in S_t evaluates into the gauge image at X([1:0])
  const auto x0 = ADHMDatum<Q>::constant(evaluate(x, ProjPoint<Q>{1, 0}));
  const Matrix<Q> g0 = gauge_directions(x0);
  const Matrix<Q> values = evaluation_operator(t.layout, ProjPoint<Q>{1, 0}) * t.basis * s.coords;
  EXPECT_EQ(rank(hstack<Q>({g0, values})), rank(g0));
}

TEST(WebSubspace, DirectionsVanishingAtThePointLieInIt) {
  // tangent vectors of the form (direction) * z1 vanish at [1:0]
  const auto x = standard_c1();
  const auto t = tangent_space(x);
  const Matrix<Q> ev = evaluation_operator(t.layout, ProjPoint<Q>{1, 0});
  const auto s = web_subspace(x, ProjPoint<Q>{1, 0}, t);
  const Matrix<Q> vanishing = kernel_matrix(ev * t.basis);
  EXPECT_GT(vanishing.cols(), 0u);
  for (std::size_t j = 0; j < vanishing.cols(); ++j) EXPECT_TRUE(in_span(s.coords, vanishing.col(j)));
}

TEST(WebReport, StandardSolutionThreePoints) {
  const auto rep = web_report(standard_c1(), {ProjPoint<Q>{1, 0}, ProjPoint<Q>{0, 1}, ProjPoint<Q>{1, 1}});
  EXPECT_EQ(rep.tangent_dim, 8u);
  for (const auto& s : rep.subspaces) EXPECT_EQ(s.dim(), 4u);
  EXPECT_TRUE(rep.all_transversal());
  EXPECT_TRUE(rep.projections_idempotent);
  EXPECT_TRUE(rep.projections_complementary);
  EXPECT_EQ(rep.projection_span, 4u);
  EXPECT_EQ(rep.projections.size(), 6u);
  EXPECT_TRUE(rep.flagged().empty());
}

TEST(WebReport, RandomSolutionsDefaultPoints) {
  for (auto [r, c] : {std::pair<std::size_t, std::size_t>{2, 2}, {3, 1}}) {
    const auto x = random_solution<Q>({1, r, c}, 5);
    const auto rep = web_report(x, default_web_points<Q>());
    EXPECT_EQ(rep.tangent_dim, 4 * r * c);
    for (const auto& s : rep.subspaces) EXPECT_EQ(s.dim(), 2 * r * c);
    EXPECT_TRUE(rep.all_transversal());
    EXPECT_TRUE(rep.projections_idempotent);
    EXPECT_TRUE(rep.projections_complementary);
    EXPECT_EQ(rep.projection_span, 4u);
    // independent check of one projection
    const auto& [ij, p] = rep.projections.front();
    const auto& s = rep.subspaces[ij.first].coords;
    const auto& t = rep.subspaces[ij.second].coords;
    EXPECT_EQ(p * s, s);
    EXPECT_TRUE((p * t).is_zero());
  }
}

TEST(WebReport, GaugeInvariantDimensions) {
  std::mt19937_64 rng(61);
  const auto x = random_solution<Q>({1, 2, 2}, 6);
  const auto y = gauge_act(GaugeElement<Q>(random_invertible<Q>(2, rng)), x);
  const auto a = web_report(x, default_web_points<Q>()), b = web_report(y, default_web_points<Q>());
  EXPECT_EQ(a.tangent_dim, b.tangent_dim);
  EXPECT_EQ(a.projection_span, b.projection_span);
  for (std::size_t i = 0; i < a.subspaces.size(); ++i) EXPECT_EQ(a.subspaces[i].dim(), b.subspaces[i].dim());
}

TEST(WebReport, RejectsRepeatedOrTooFewPoints) {
  const auto x = standard_c1();
  EXPECT_THROW(web_report(x, {ProjPoint<Q>{1, 0}, ProjPoint<Q>{0, 1}, ProjPoint<Q>{2, 0}}), PreconditionError);
  EXPECT_THROW(web_report(x, {ProjPoint<Q>{1, 0}, ProjPoint<Q>{0, 1}}), PreconditionError);
  EXPECT_THROW(web_report(degenerate_c1(), default_web_points<Q>()), PreconditionError);
}
