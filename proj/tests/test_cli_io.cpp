#include <gtest/gtest.h>

#include "symspace/catalog.hpp"
#include "symspace/json_io.hpp"

using namespace symspace;

TEST(Catalog, ExpressionsAndTextConfig) {
  EXPECT_EQ(parse_space_expr("so(3)").dim, 6);
  EXPECT_EQ(parse_space_expr("so(2) + so(2)").dim, 6);
  EXPECT_EQ(parse_space_expr("su(2)+sl(3)").p_dim(), 4 + 5);
  EXPECT_THROW(parse_space_expr("xx(3)"), std::invalid_argument);
  const std::string path = ::testing::TempDir() + "catalog_test.cfg";
  {
    std::ofstream f(path);
    f << "# test catalog\nMYSUM = so(2)+sl(3)\n";
  }
  load_catalog_file(path);
  EXPECT_EQ(make_space("MYSUM").dim, 3 + 8);
  EXPECT_EQ(make_space("so(4)").dim, 10);  // inline expression fallback
}

TEST(Catalog, AllKeysResolve) {
  for (const auto& key : catalog_keys()) {
    if (catalog_has_algebra(key)) {
      auto g = make_space(key);
      EXPECT_GT(g.dim, 0) << key;
    }
    auto nd = make_nilpotent(key);
    EXPECT_GT(nd.n_dim, 0) << key;
  }
  EXPECT_THROW(make_space("OH16"), std::invalid_argument);
  EXPECT_THROW(make_space("XYZ"), std::invalid_argument);
  EXPECT_EQ(make_nilpotent("C2").n_dim, 3);
  EXPECT_EQ(make_nilpotent("Q2").n_dim, 7);
}

TEST(JsonIo, AlgebraRoundTrip) {
  auto g = make_space("CH4");
  auto j = algebra_to_json(g);
  auto g2 = algebra_from_json(j);
  EXPECT_EQ(g2.dim, g.dim);
  EXPECT_EQ(g2.label, g.label);
  EXPECT_EQ(g2.p_indices, g.p_indices);
  for (int i = 0; i < g.dim; ++i)
    EXPECT_EQ((g2.adj[i] - g.adj[i]).cwiseAbs().maxCoeff(), 0.0);
  EXPECT_EQ((g2.killing - g.killing).cwiseAbs().maxCoeff(), 0.0);
  // deserialized data still passes the structural checks
  EXPECT_TRUE(check_algebra(g2).pass);
}

TEST(JsonIo, DeterministicEmission) {
  auto rs = restricted_roots(make_space("H3"));
  auto j1 = roots_to_json(rs).dump(2);
  auto j2 = roots_to_json(restricted_roots(make_space("H3"))).dump(2);
  EXPECT_EQ(j1, j2);

  auto rep1 = compute_spectral_report(rs, BundleKind::sym2, "einstein");
  auto rep2 = compute_spectral_report(rs, BundleKind::sym2, "einstein");
  EXPECT_EQ(spectral_report_to_json(rep1).dump(), spectral_report_to_json(rep2).dump());
  EXPECT_EQ(spectral_report_csv_row(rep1), spectral_report_csv_row(rep2));
}

TEST(JsonIo, SpectraJsonCarriesNormalizationTags) {
  auto rs = restricted_roots(make_space("H2"));
  auto rep = compute_spectral_report(rs, BundleKind::sym2, "einstein");
  auto j = spectral_report_to_json(rep);
  ASSERT_TRUE(j["lambda_L"].contains("killing"));
  ASSERT_TRUE(j["lambda_L"].contains("unit_root"));
  EXPECT_NEAR(j["lambda_L"]["unit_root"].get<double>(),
              j["lambda_L"]["killing"].get<double>() * rep.scale, 1e-12);
}

TEST(JsonIo, HeatCsvShape) {
  auto model = make_trivial_model({1.0}, 2);
  HeatParams p;
  p.dr = 0.05;
  p.r_max = 6.0;
  p.t0 = 0.011;
  p.t_end = 0.5;
  p.sample_every = 0.1;
  auto run = run_heat(model, p);
  auto csv = heat_series_csv(run, 0.0);
  EXPECT_EQ(csv.substr(0, 31), "t,H1,H2,sup_envelope_ratio\n0.01");
  auto manifest = heat_manifest_to_json("scalar", p, run, nullptr, 0.0);
  EXPECT_EQ(manifest["schema_version"].get<int>(), 1);
  EXPECT_TRUE(manifest["checks"].contains("domination_worst"));
}

TEST(JsonIo, RegionAndSectorReports) {
  auto rs = restricted_roots(make_space("H2"));
  auto rc = choose_region_constants(rs);
  auto rep = verify_regions(rs, rc, 12.0, 500);
  auto j = region_report_to_json("H2", rc, rep, 12.0);
  EXPECT_EQ(j["violations"]["property1"].get<long>(), 0);
  auto sweep = sector_volume_sweep(2, 64);
  auto csv = sector_sweep_csv(sweep);
  EXPECT_EQ(csv.substr(0, 6), "sinh_a");
}
