#include <gtest/gtest.h>

#include "symspace/root_system.hpp"

using namespace symspace;

TEST(MaximalAbelian, RankOfCatalogSpaces) {
  EXPECT_EQ(maximal_abelian(build_so(2)).cols(), 1);
  EXPECT_EQ(maximal_abelian(build_so(5)).cols(), 1);
  EXPECT_EQ(maximal_abelian(build_su(2)).cols(), 1);
  EXPECT_EQ(maximal_abelian(build_sp(2)).cols(), 1);
  EXPECT_EQ(maximal_abelian(build_sl(3)).cols(), 2);
  EXPECT_EQ(maximal_abelian(build_sl(4)).cols(), 3);
  EXPECT_EQ(maximal_abelian(direct_sum(build_so(2), build_so(2))).cols(), 2);
}

TEST(RestrictedRoots, Multiplicities) {
  {
    auto rs = restricted_roots(build_so(4));
    ASSERT_EQ(rs.positive.size(), 1u);
    EXPECT_EQ(rs.positive[0].multiplicity(), 3);
  }
  {
    auto rs = restricted_roots(build_su(3));
    ASSERT_EQ(rs.positive.size(), 2u);
    // sorted by alpha(v0): alpha then 2 alpha
    EXPECT_EQ(rs.positive[0].multiplicity(), 4);
    EXPECT_EQ(rs.positive[1].multiplicity(), 1);
    EXPECT_NEAR(rs.positive[1].alpha.norm() / rs.positive[0].alpha.norm(), 2.0, 1e-9);
  }
  {
    auto rs = restricted_roots(build_sl(3));
    EXPECT_EQ(rs.positive.size(), 3u);
    EXPECT_EQ(rs.simple.size(), 2u);
    for (auto& d : rs.positive) EXPECT_EQ(d.multiplicity(), 1);
  }
}

TEST(RestrictedRoots, RootSpaceBracketGrading) {
  // [g_alpha, g_beta] subset g_{alpha+beta}
  for (const auto& g : {build_su(2), build_sl(3), build_sp(2)}) {
    auto rs = restricted_roots(g);
    const double scale = g.bracket_scale();
    const int m = rs.n_minus_r();
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j) {
        VectorXd br = rs.g.bracket(rs.roots[i].x, rs.roots[j].x);
        VectorXd target = rs.roots[i].alpha + rs.roots[j].alpha;
        // subtract the component inside g_{alpha_i + alpha_j}
        VectorXd resid = br;
        for (int k = 0; k < m; ++k)
          if ((rs.roots[k].alpha - target).norm() < 1e-6)
            resid -= rs.roots[k].x.dot(br) * rs.roots[k].x;
        EXPECT_LT(resid.norm(), 1e-8 * scale) << g.label;
      }
  }
}

TEST(RestrictedRoots, KillingHalfIdentity) {
  // sum_l alpha_l^# alpha_l(v) = v/2 for v in a (Killing metric only)
  for (const auto& g : {build_so(3), build_su(2), build_sp(2), build_sl(3), build_sl(4)}) {
    auto rs = restricted_roots(g);
    for (int j = 0; j < rs.rank; ++j) {
      VectorXd v = VectorXd::Unit(rs.rank, j);
      VectorXd acc = VectorXd::Zero(rs.rank);
      for (const auto& rv : rs.roots) acc += rv.alpha * rv.alpha[j];
      EXPECT_LT((acc - 0.5 * v).norm(), 1e-8) << g.label;
    }
  }
}

TEST(RestrictedRoots, SimpleRootsObtuse) {
  for (const auto& g : {build_sl(3), build_sl(4), direct_sum(build_so(3), build_sl(3))}) {
    auto rs = restricted_roots(g);
    for (std::size_t i = 0; i < rs.simple.size(); ++i)
      for (std::size_t j = i + 1; j < rs.simple.size(); ++j)
        EXPECT_LE(rs.positive[rs.simple[i]].alpha.dot(rs.positive[rs.simple[j]].alpha), 1e-8)
            << g.label;
  }
}

TEST(RestrictedRoots, Su21NotSimpleTwiceAlpha) {
  auto rs = restricted_roots(build_su(2));
  ASSERT_EQ(rs.simple.size(), 1u);
  EXPECT_EQ(rs.positive[rs.simple[0]].multiplicity(), 2);  // the short root
}

TEST(Walls, CountsAndExtremes) {
  {
    auto rs = restricted_roots(build_so(3));
    auto walls = enumerate_walls(rs);
    ASSERT_EQ(walls.size(), 2u);
    EXPECT_TRUE(walls[0].ov_distinct.empty());
    EXPECT_EQ(walls[0].un_distinct.size(), rs.positive.size());
    EXPECT_EQ(walls[1].ov_distinct.size(), rs.positive.size());
    EXPECT_TRUE(walls[1].un_distinct.empty());
  }
  {
    auto rs = restricted_roots(build_sl(3));
    auto walls = enumerate_walls(rs);
    ASSERT_EQ(walls.size(), 4u);
    for (const auto& w : walls) {
      if (w.wall_key.size() == 1) {
        EXPECT_EQ(w.ov_distinct.size(), 1u);
        EXPECT_EQ(w.un_distinct.size(), 2u);
      }
      // splittings orthogonal
      if (w.ov_a.cols() > 0 && w.un_a.cols() > 0)
        EXPECT_LT((w.ov_a.transpose() * w.un_a).cwiseAbs().maxCoeff(), 1e-8);
      EXPECT_EQ(w.ov_a.cols() + w.un_a.cols(), rs.rank);
    }
  }
}

TEST(Nilpotent, RealHyperbolicAbelian) {
  auto nd = nilpotent_structure(restricted_roots(build_so(4)));
  EXPECT_EQ(nd.n_dim, 3);
  EXPECT_EQ(nd.t_scale(), 0.0);
}

TEST(Nilpotent, Su21SingleIndependentBracket) {
  auto nd = nilpotent_structure(restricted_roots(build_su(2)));
  // [g_alpha, g_alpha] -> g_{2alpha}: exactly one independent entry up to
  // antisymmetry
  int nonzero = 0;
  for (int k = 0; k < nd.n_dim; ++k)
    for (int i = 0; i < nd.n_dim; ++i)
      for (int j = i + 1; j < nd.n_dim; ++j)
        if (std::abs(nd.t[k](i, j)) > 1e-10) ++nonzero;
  EXPECT_EQ(nonzero, 1);
}

TEST(Nilpotent, DirectSumBlockDiagonal) {
  auto g = direct_sum(build_su(2), build_su(2));
  auto rs = restricted_roots(g);
  auto nd = nilpotent_structure(rs);
  // brackets across factors vanish: factors are orthogonal in a-coordinates
  for (int i = 0; i < nd.n_dim; ++i)
    for (int j = 0; j < nd.n_dim; ++j) {
      bool same_factor = std::abs(nd.alphas[i].dot(nd.alphas[j])) > 1e-9;
      if (!same_factor)
        for (int k = 0; k < nd.n_dim; ++k)
          EXPECT_LT(std::abs(nd.t[k](i, j)), 1e-12);
    }
}

TEST(DivisionModels, DimensionsAndScales) {
  auto r4 = build_division_algebra_nilpotent(DivisionKind::R, 4);
  EXPECT_EQ(r4.n_dim, 3);
  EXPECT_EQ(r4.t_scale(), 0.0);
  auto c3 = build_division_algebra_nilpotent(DivisionKind::C, 3);
  EXPECT_EQ(c3.n_dim, 5);
  auto o2 = build_division_algebra_nilpotent(DivisionKind::O, 2);
  EXPECT_EQ(o2.n_dim, 15);
  EXPECT_THROW(build_division_algebra_nilpotent(DivisionKind::O, 3), std::invalid_argument);
  EXPECT_LT(nilpotency_residual(o2), 1e-9);
}

TEST(DivisionModels, MatchMatrixModels) {
  // graded dims + sorted singular values of Lambda^2 g_alpha -> g_{2alpha}
  auto cmp = [](const LieAlgebraData& g, DivisionKind k, int n) {
    auto nd = nilpotent_structure(restricted_roots(g));
    auto md = build_division_algebra_nilpotent(k, n);
    ASSERT_EQ(nd.n_dim, md.n_dim) << g.label;
    auto s1 = grade_bracket_singular_values(nd);
    auto s2 = grade_bracket_singular_values(md);
    ASSERT_EQ(s1.size(), s2.size()) << g.label;
    if (s1.size() > 0) EXPECT_LT((s1 - s2).cwiseAbs().maxCoeff(), 1e-6) << g.label;
  };
  cmp(build_su(2), DivisionKind::C, 2);
  cmp(build_su(3), DivisionKind::C, 3);
  cmp(build_sp(2), DivisionKind::H, 2);
}

TEST(RestrictedRoots, DeterministicRebuild) {
  auto rs1 = restricted_roots(build_su(2));
  auto rs2 = restricted_roots(build_su(2));
  for (int i = 0; i < rs1.n_minus_r(); ++i)
    EXPECT_EQ((rs1.roots[i].x - rs2.roots[i].x).cwiseAbs().maxCoeff(), 0.0);
}
