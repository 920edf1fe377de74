#include <gtest/gtest.h>

#include "symspace/geometry.hpp"

using namespace symspace;

TEST(BallVolume, EuclideanLimitH3) {
  // V(r)/((4 pi/3) r^3) -> 1 as r -> 0, with V0 = 4 pi
  for (double r : {0.01, 0.003}) {
    const double v = ball_volume({1.0, 1.0}, r);
    EXPECT_NEAR(v / ((4.0 * M_PI / 3.0) * r * r * r), 1.0, 1e-3);
  }
  EXPECT_EQ(ball_volume({1.0, 1.0}, 0.0), 0.0);
  EXPECT_THROW(ball_volume({1.0}, -1.0), std::invalid_argument);
}

TEST(BallVolume, GrowthExponentIsRootSum) {
  // log V(r)/r -> n-1 for H^n
  for (int n : {2, 3, 4}) {
    std::vector<double> alphas(n - 1, 1.0);
    const double e1 = std::log(ball_volume(alphas, 20.0)) / 20.0;
    const double e2 = std::log(ball_volume(alphas, 40.0)) / 40.0;
    EXPECT_NEAR(e2, n - 1.0, 0.05);
    EXPECT_LT(std::abs(e2 - (n - 1.0)), std::abs(e1 - (n - 1.0)));  // converging
  }
}

TEST(BallVolume, MonotoneConvexWithLinearLogSlope) {
  // V is increasing and convex; log V approaches a line of slope n-1
  double prev = 0.0, prev_diff = 0.0;
  for (int i = 1; i <= 30; ++i) {
    const double r = 0.5 * i;
    const double v = ball_volume({1.0, 1.0}, r);
    EXPECT_GT(v, prev);
    const double diff = v - prev;
    if (i > 1) EXPECT_GT(diff, prev_diff);
    prev = v;
    prev_diff = diff;
  }
  const double s1 = (std::log(ball_volume({1.0, 1.0}, 15.5)) -
                     std::log(ball_volume({1.0, 1.0}, 15.0))) / 0.5;
  EXPECT_NEAR(s1, 2.0, 0.01);
}

TEST(Sector, ZeroViolationsOnDocumentedSweep) {
  auto rep = sector_volume_sweep(3, 1024);
  EXPECT_EQ(rep.violations, 0);
  EXPECT_GT(rep.samples, 100000);
  EXPECT_GT(rep.fitted_c, 0.0);
  EXPECT_LT(rep.fitted_c, 100.0);
}

TEST(Sector, NegativeDBranchHolds) {
  auto r = sector_volume_check(3, 5.0, -2.0, 0.5, 2048);
  EXPECT_EQ(r.violations, 0);
}

TEST(Sector, WideAngleLargeDistanceComplementVanishes) {
  auto r = sector_volume_check(3, 5.0, 8.0, 1.5, 256);
  EXPECT_LT(r.complement_volume, 1e-8);
}

TEST(Sector, RejectsBadAngles) {
  EXPECT_THROW(sector_volume_check(3, 5.0, 1.0, 2.0, 16), std::invalid_argument);
  EXPECT_THROW(sector_volume_check(3, 1.0, -2.0, 0.5, 16), std::invalid_argument);
}

TEST(Regions, ConstantsSatisfyRecursions) {
  for (const auto& g : {build_sl(3), build_so(3), direct_sum(build_so(2), build_so(2))}) {
    auto rs = restricted_roots(g);
    auto rc = choose_region_constants(rs);  // throws on recursion failure
    auto walls = enumerate_walls(rs);
    ASSERT_EQ(rc.a.size(), walls.size());
    for (std::size_t i = 0; i < walls.size(); ++i) {
      EXPECT_GE(rc.a[i], 1.0);
      EXPECT_GE(rc.b[i] - rc.c0 * rc.a[i], 1.0 - 1e-12);
    }
  }
}

TEST(Regions, RankOneIntervalsTrivial) {
  auto rs = restricted_roots(build_so(3));
  auto rc = choose_region_constants(rs);
  auto rep = verify_regions(rs, rc, 12.0, 5000);
  EXPECT_EQ(rep.violations_p1, 0);
  EXPECT_EQ(rep.violations_p2, 0);
  EXPECT_EQ(rep.violations_p3, 0);
}

TEST(Regions, Sl3SamplingVerification) {
  auto rs = restricted_roots(build_sl(3));
  auto rc = choose_region_constants(rs);
  auto rep = verify_regions(rs, rc, 12.0, 10000);
  EXPECT_EQ(rep.violations_p1, 0);
  EXPECT_EQ(rep.violations_p2, 0);
  EXPECT_EQ(rep.violations_p3, 0);
  EXPECT_GE(rep.worst_margin_p1, 0.0);
}

TEST(Regions, RequiresLargeSigma) {
  auto rs = restricted_roots(build_so(3));
  auto rc = choose_region_constants(rs);
  EXPECT_THROW(verify_regions(rs, rc, 5.0, 10), std::invalid_argument);
}
