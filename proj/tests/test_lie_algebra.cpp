#include <gtest/gtest.h>

#include "symspace/lie_algebra.hpp"

using namespace symspace;

namespace {

void expect_dims(const LieAlgebraData& g, int dim, int pdim, int kdim) {
  EXPECT_EQ(g.dim, dim) << g.label;
  EXPECT_EQ(g.p_dim(), pdim) << g.label;
  EXPECT_EQ(g.k_dim(), kdim) << g.label;
}

}  // namespace

TEST(Builders, Dimensions) {
  expect_dims(build_so(2), 3, 2, 1);
  expect_dims(build_so(3), 6, 3, 3);
  expect_dims(build_so(4), 10, 4, 6);
  expect_dims(build_su(2), 8, 4, 4);
  expect_dims(build_su(3), 15, 6, 9);
  expect_dims(build_sp(2), 21, 8, 13);
  expect_dims(build_sl(3), 8, 5, 3);
  expect_dims(build_sl(4), 15, 9, 6);
}

TEST(Builders, RejectsOutOfRange) {
  EXPECT_THROW(build_so(1), std::invalid_argument);
  EXPECT_THROW(build_su(1), std::invalid_argument);
  EXPECT_THROW(build_sp(1), std::invalid_argument);
  EXPECT_THROW(build_sl(2), std::invalid_argument);
}

TEST(Invariants, AllBuildersPassChecks) {
  for (const auto& g : {build_so(2), build_so(3), build_so(5), build_su(2), build_su(3),
                        build_sp(2), build_sl(3), build_sl(4)}) {
    auto d = check_algebra(g);
    EXPECT_TRUE(d.pass) << g.label;
    EXPECT_LE(d.jacobi, 1e-9 * d.scale) << g.label;
    EXPECT_LE(d.involution_square, 1e-9 * d.scale) << g.label;
    EXPECT_LE(d.killing_ad_invariance, 1e-9 * d.scale) << g.label;
    EXPECT_LE(d.btheta_orthonormality, 1e-9 * d.scale) << g.label;
  }
}

TEST(Invariants, AdjointSymmetryInBThetaBasis) {
  // ad(v) symmetric for v in p, antisymmetric for u in k.
  for (const auto& g : {build_so(3), build_su(2), build_sl(3)}) {
    for (int i : g.p_indices)
      EXPECT_LT((g.adj[i] - g.adj[i].transpose()).cwiseAbs().maxCoeff(), 1e-9) << g.label;
    for (int i : g.k_indices)
      EXPECT_LT((g.adj[i] + g.adj[i].transpose()).cwiseAbs().maxCoeff(), 1e-9) << g.label;
  }
}

TEST(Invariants, KillingSignature) {
  auto g = build_sl(3);
  auto e = sym_eig(g.killing);
  int pos = 0, neg = 0;
  for (int i = 0; i < e.values.size(); ++i) (e.values[i] > 0 ? pos : neg)++;
  EXPECT_EQ(pos, 5);
  EXPECT_EQ(neg, 3);
}

TEST(Invariants, KillingMatchesDefiningTraceForm) {
  for (const auto& g : {build_so(3), build_so(4), build_su(2), build_sp(2), build_sl(3)})
    EXPECT_LT(killing_trace_form_deviation(g), 1e-8) << g.label;
}

TEST(DirectSum, BlockStructure) {
  auto h2 = build_so(2);
  auto s = direct_sum(h2, h2);
  expect_dims(s, 6, 4, 2);
  for (int i = 0; i < h2.dim; ++i) {
    EXPECT_LT(s.adj[i].bottomRightCorner(h2.dim, h2.dim).cwiseAbs().maxCoeff(), 1e-15);
    EXPECT_LT(s.adj[h2.dim + i].topLeftCorner(h2.dim, h2.dim).cwiseAbs().maxCoeff(), 1e-15);
  }
  EXPECT_TRUE(check_algebra(s).pass);

  auto mixed = direct_sum(build_so(3), build_sl(3));
  EXPECT_EQ(mixed.p_dim(), 8);
  EXPECT_TRUE(check_algebra(mixed).pass);
}

TEST(CheckAlgebra, DetectsPerturbedBracket) {
  auto g = build_so(3);
  // perturb C[0][1][2], keeping antisymmetry
  g.adj[0](2, 1) += 1e-3;
  g.adj[1](2, 0) -= 1e-3;
  auto d = check_algebra(g);
  EXPECT_FALSE(d.pass);
  EXPECT_GE(d.jacobi, 1e-4 * d.scale);
}
