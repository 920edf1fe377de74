#include <gtest/gtest.h>

#include "symspace/heat.hpp"

using namespace symspace;

TEST(FitDecay, ExactExponential) {
  std::vector<std::pair<double, double>> s;
  for (int i = 0; i <= 200; ++i) {
    const double t = 0.05 * i;
    s.emplace_back(t, 3.0 * std::exp(-2.0 * t));
  }
  auto fit = fit_decay(s, 0.0, 10.0);
  EXPECT_NEAR(fit.rate, 2.0, 1e-9);
  EXPECT_NEAR(fit.log_prefactor, std::log(3.0), 1e-9);
  EXPECT_LT(fit.max_residual, 1e-10);
  EXPECT_FALSE(fit.window_short);
}

TEST(FitDecay, PolynomialCorrectionBias) {
  // H(t) = (t+2) e^{-t} on [10, 30]: fitted rate lands in [0.93, 1.0]
  std::vector<std::pair<double, double>> s;
  for (int i = 0; i <= 600; ++i) {
    const double t = 0.05 * i;
    s.emplace_back(t, (t + 2.0) * std::exp(-t));
  }
  auto fit = fit_decay(s, 10.0, 30.0);
  EXPECT_GE(fit.rate, 0.93);
  EXPECT_LE(fit.rate, 1.0);
}

TEST(FitDecay, ConstantSeries) {
  std::vector<std::pair<double, double>> s;
  for (int i = 0; i <= 100; ++i) s.emplace_back(0.1 * i, 7.0);
  auto fit = fit_decay(s, 0.0, 10.0);
  EXPECT_NEAR(fit.rate, 0.0, 1e-9);
  EXPECT_TRUE(fit.window_short);
}

TEST(FitDecay, RejectsNonpositiveAndShortWindows) {
  std::vector<std::pair<double, double>> s;
  for (int i = 0; i <= 100; ++i) s.emplace_back(0.1 * i, i == 50 ? -1.0 : 1.0);
  EXPECT_THROW(fit_decay(s, 0.0, 10.0), std::invalid_argument);
  std::vector<std::pair<double, double>> few = {{0.0, 1.0}, {1.0, 0.5}};
  EXPECT_THROW(fit_decay(few, 0.0, 1.0), std::invalid_argument);
}

TEST(HeatModels, RefusesHigherRankAndBadParams) {
  auto rs = restricted_roots(build_sl(3));
  EXPECT_THROW(make_heat_model(rs, BundleKind::sym2, "einstein"), std::invalid_argument);
  auto m = make_trivial_model({1.0}, 2);
  HeatParams p;
  p.dr = 0.1;
  p.t0 = 0.01;  // < 4 dr^2
  p.t_end = 1.0;
  EXPECT_THROW(run_heat(m, p), std::invalid_argument);
  HeatParams p2;
  p2.dr = 0.1;
  p2.t0 = 0.05;
  p2.t_end = 1.0;
  p2.dt = 0.19 * p2.dr * p2.dr;  // above the zero-order stability bound
  auto rs3 = restricted_roots(build_so(3));
  auto ms = make_heat_model(rs3, BundleKind::sym2, "plain");
  EXPECT_THROW(run_heat(ms, p2), std::invalid_argument);
}

TEST(HeatScalar, MassConservation) {
  auto m = make_trivial_model({1.0, 1.0}, 3);
  HeatParams p;
  p.dr = 0.03;
  p.r_max = 14.0;
  p.t0 = 0.004;
  p.t_end = 2.0;
  p.sample_every = 0.05;
  auto run = run_heat(m, p);
  const double mass0 = run.samples.front().h1 * detail::sphere_area(3);
  EXPECT_NEAR(mass0, 1.0, 0.01);
  // H^(1) constant in t within 1 percent
  for (const auto& s : run.samples)
    EXPECT_NEAR(s.h1 / run.samples.front().h1, 1.0, 0.01);
  // trivial bundle: mu = 0, lambda_C = 0, K^o identical to K
  EXPECT_NEAR(run.domination_worst, 1.0, 1e-9);
}

TEST(HeatScalar, GridRefinementSelfCheck) {
  auto m = make_trivial_model({1.0, 1.0}, 3);
  HeatParams p;
  p.dr = 0.05;
  p.r_max = 10.0;
  p.t0 = 0.011;
  p.t_end = 0.5;
  p.sample_every = 0.05;
  auto run1 = run_heat(m, p);
  p.dr = 0.025;
  auto run2 = run_heat(m, p);
  EXPECT_NEAR(run1.samples.front().h1 / run2.samples.front().h1, 1.0, 0.005);
}

TEST(HeatRuns, H3OneFormsRateAndChecks) {
  auto rs = restricted_roots(build_so(3));
  auto m = make_heat_model(rs, BundleKind::one_forms, "plain");
  EXPECT_NEAR(m.lambda_chamber(), 1.0, 1e-9);
  for (double mu : m.mu()) EXPECT_GT(mu, 0.0);
  HeatParams p;
  p.dr = 0.1;
  p.r_max = 26.0;
  p.t0 = 0.05;
  p.t_end = 8.0;
  p.sample_every = 0.05;
  auto run = run_heat(m, p);
  auto fit = fit_decay(run.h1_series(), 4.0, 8.0);
  EXPECT_GE(fit.rate, 0.9);
  EXPECT_LE(fit.rate, 1.1);
  EXPECT_LE(run.domination_worst, 1.02);
  EXPECT_GE(run.mineig_worst, -1e-7);
  EXPECT_LE(run.equivariance_worst, 1e-6);
  EXPECT_LE(run.asym_rate_worst, 1e-7);

  // Green's kernel: finite below the rate, divergent above
  auto g1 = green_l1(run.h1_series(), fit, 0.5);
  EXPECT_FALSE(g1.divergent);
  EXPECT_GT(g1.value, 0.0);
  EXPECT_TRUE(std::isfinite(g1.value));
  auto g2 = green_l1(run.h1_series(), fit, 1.5);
  EXPECT_TRUE(g2.divergent);
  // scalar-bundle closed form: lambda = -1 gives roughly e^{-t0} * H1 scale
  auto mflat = make_trivial_model({1.0, 1.0}, 3);
  HeatParams pf = p;
  pf.t_end = 4.0;
  auto runf = run_heat(mflat, pf);
  DecayFit flat_fit;
  flat_fit.rate = 0.0;
  auto g3 = green_l1(runf.h1_series(), flat_fit, -1.0);
  // integral of e^{lambda t} * const from t0: H1 * e^{-t0}
  const double expected = runf.samples.front().h1 * std::exp(-pf.t0);
  EXPECT_NEAR(g3.value / expected, 1.0, 0.05);
}

TEST(HeatRuns, H2QuadraticDifferentialsRate) {
  auto rs = restricted_roots(build_so(2));
  auto m = make_heat_model(rs, BundleKind::sym2_traceless, "plain");
  EXPECT_NEAR(m.lambda_chamber(), 4.0, 1e-9);
  HeatParams p;
  p.dr = 0.08;
  p.r_max = 16.0;
  p.t0 = 0.05;
  p.t_end = 6.0;
  p.sample_every = 0.05;
  auto run = run_heat(m, p);
  auto fit = fit_decay(run.h1_series(), 2.5, 6.0);
  EXPECT_GE(fit.rate, 1.8);
  EXPECT_LE(fit.rate, 2.2);
  EXPECT_LE(run.domination_worst, 1.02);
}

TEST(HeatRuns, H3Sym2EinsteinEnvelopeAndRadialBound) {
  auto rs = restricted_roots(build_so(3));
  auto m = make_heat_model(rs, BundleKind::sym2, "einstein");
  EXPECT_NEAR(m.lambda_chamber(), 0.0, 1e-9);
  HeatParams p;
  p.dr = 0.12;
  p.r_max = 20.0;
  p.t0 = 0.06;
  p.t_end = 6.0;
  p.sample_every = 0.05;
  p.radial_weights = {{0.0, 1.0}, {0.0, 2.0}, {10.0, 1.0}};
  auto run = run_heat(m, p);
  EXPECT_LE(run.domination_worst, 1.02);
  EXPECT_GE(run.mineig_worst, -1e-7);

  auto env = pointwise_envelope(run, 0.0);
  EXPECT_TRUE(std::isfinite(env.sup_ratio));
  EXPECT_LE(env.late_growth, 1.05);
  // negative control: lambda0 deliberately 0.2 too large makes the ratio grow
  auto bad = pointwise_envelope(run, 0.2);
  EXPECT_GT(bad.late_growth, 1.1);
  EXPECT_GT(bad.late_growth, env.late_growth * 1.5);

  auto rb1 = radial_integral_bound(run, 0, 0.0, 1.0);
  EXPECT_LE(rb1.late_over_early, 2.0);  // (1+t) I(t) stays bounded
  auto rb2 = radial_integral_bound(run, 1, 0.0, 2.0);
  EXPECT_TRUE(std::isfinite(rb2.worst_product));
  // a = 10: I(t0) <= H1(t0) / 11
  EXPECT_LE(run.samples.front().radial_integrals[2],
            run.samples.front().h1 / 11.0 * (1.0 + 1e-9));
}

TEST(HeatRuns, Deterministic) {
  auto m = make_trivial_model({1.0}, 2);
  HeatParams p;
  p.dr = 0.05;
  p.r_max = 8.0;
  p.t0 = 0.011;
  p.t_end = 1.0;
  p.sample_every = 0.1;
  auto r1 = run_heat(m, p);
  auto r2 = run_heat(m, p);
  ASSERT_EQ(r1.samples.size(), r2.samples.size());
  for (std::size_t i = 0; i < r1.samples.size(); ++i)
    EXPECT_EQ(r1.samples[i].h1, r2.samples[i].h1);
}
