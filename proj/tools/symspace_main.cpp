// Batch research CLI: restricted-root data, Einstein-operator spectra, cusp
// nullspaces, rank-1 heat-kernel simulation, chamber-region and sector-volume
// checks.  All outputs are deterministic for a fixed config and seed.

#include <CLI11.hpp>
#include <filesystem>
#include <iostream>

#include "symspace/acceptance.hpp"
#include "symspace/json_io.hpp"

using namespace symspace;
namespace fs = std::filesystem;

namespace {

struct CommonOpts {
  std::string out_dir = ".";
  std::string emit = "json";
  std::uint64_t seed = 20240901;
};

void add_common(CLI::App* cmd, CommonOpts& o) {
  cmd->add_option("--out", o.out_dir, "output directory");
  cmd->add_option("--emit", o.emit, "json|csv|both")
      ->check(CLI::IsMember({"json", "csv", "both"}));
  cmd->add_option("--seed", o.seed, "seed for sampling checks");
}

fs::path out_path(const CommonOpts& o, const std::string& name) {
  fs::create_directories(o.out_dir);
  return fs::path(o.out_dir) / name;
}

BundleKind parse_bundle(const std::string& s) {
  if (s == "one_forms") return BundleKind::one_forms;
  if (s == "sym2") return BundleKind::sym2;
  if (s == "sym2_traceless") return BundleKind::sym2_traceless;
  throw CLI::ValidationError("--bundle", "unknown bundle kind: " + s);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"symmetric-space spectra and heat-kernel toolkit"};
  app.set_config("--config", "", "flat key-value config file; sections per command");
  std::string catalog_file;
  app.add_option("--catalog", catalog_file, "text catalog file with KEY = expr lines");
  app.require_subcommand(1);

  std::string space = "H3";
  std::string bundle = "sym2";
  std::string variant = "einstein";
  std::string normalize = "unit_root";
  double dr = 0.02, rmax = 30.0, t0 = 0.01, tmax = 20.0, sample_every = 0.1;
  double sigma = 12.0;
  long samples = 100000;
  int sector_n = 3;
  double lambda0 = std::numeric_limits<double>::quiet_NaN();

  CommonOpts roots_o, spectra_o, null_o, heat_o, regions_o, sector_o;

  auto* cmd_roots = app.add_subcommand("roots", "restricted root system summary");
  cmd_roots->add_option("--space", space, "catalog key")->required();
  add_common(cmd_roots, roots_o);

  auto* cmd_spectra = app.add_subcommand("spectra", "spectral report (walls, blocks, lambdas)");
  cmd_spectra->add_option("--space", space, "catalog key")->required();
  cmd_spectra->add_option("--bundle", bundle, "one_forms|sym2|sym2_traceless");
  cmd_spectra->add_option("--variant", variant, "plain|einstein")
      ->check(CLI::IsMember({"plain", "einstein"}));
  cmd_spectra->add_option("--normalize", normalize, "killing|unit_root")
      ->check(CLI::IsMember({"killing", "unit_root"}));
  add_common(cmd_spectra, spectra_o);

  auto* cmd_null = app.add_subcommand("nullspace", "cusp nullspace basis and dimension");
  cmd_null->add_option("--space", space, "catalog key or division model (R3, C2, Q2, O2)")
      ->required();
  add_common(cmd_null, null_o);

  auto* cmd_heat = app.add_subcommand("heatsim", "rank-1 spherical heat-kernel run");
  cmd_heat->add_option("--space", space, "catalog key (rank 1)")->required();
  cmd_heat->add_option("--bundle", bundle, "one_forms|sym2|sym2_traceless");
  cmd_heat->add_option("--variant", variant, "plain|einstein")
      ->check(CLI::IsMember({"plain", "einstein"}));
  cmd_heat->add_option("--normalize", normalize, "killing|unit_root")
      ->check(CLI::IsMember({"killing", "unit_root"}));
  cmd_heat->add_option("--dr", dr, "grid step")->check(CLI::PositiveNumber);
  cmd_heat->add_option("--rmax", rmax, "grid extent")->check(CLI::PositiveNumber);
  cmd_heat->add_option("--t0", t0, "initialization time (>= 4 dr^2)");
  cmd_heat->add_option("--tmax", tmax, "final time");
  cmd_heat->add_option("--sample-every", sample_every, "sampling interval");
  cmd_heat->add_option("--lambda0", lambda0,
                       "decay constant for the envelope column (default: lambda_C)");
  add_common(cmd_heat, heat_o);

  auto* cmd_regions = app.add_subcommand("regions", "chamber-region constants + verification");
  cmd_regions->add_option("--space", space, "catalog key")->required();
  cmd_regions->add_option("--sigma", sigma, "region parameter (> 10)");
  cmd_regions->add_option("--samples", samples, "samples per wall");
  add_common(cmd_regions, regions_o);

  auto* cmd_sector = app.add_subcommand("sector", "sector-complement volume sweep");
  cmd_sector->add_option("--n", sector_n, "dimension")->check(CLI::Range(2, 8));
  cmd_sector->add_option("--samples", samples, "containment samples per point");
  add_common(cmd_sector, sector_o);

  auto* cmd_verify = app.add_subcommand("verify-all", "run the complete acceptance suite");

  CLI11_PARSE(app, argc, argv);

  try {
    if (!catalog_file.empty()) load_catalog_file(catalog_file);
    if (cmd_roots->parsed()) {
      auto rs = restricted_roots(make_space(space));
      Json j = roots_to_json(rs);
      std::cout << "space " << space << ": rank " << rs.rank << ", "
                << rs.positive.size() << " positive roots, " << rs.simple.size()
                << " simple, dim k0 = " << rs.k0_basis.cols() << "\n";
      if (roots_o.emit != "csv")
        write_text(out_path(roots_o, "roots_" + space + ".json").string(), j.dump(2) + "\n");
    } else if (cmd_spectra->parsed()) {
      auto rs = restricted_roots(make_space(space));
      auto rep = compute_spectral_report(rs, parse_bundle(bundle), variant,
                                         normalize == "unit_root");
      if (normalize == "killing") rep.scale = 1.0;
      std::cout << "space " << space << " bundle " << bundle << " variant " << variant
                << ": lambda_L = " << rep.lambda_l()
                << ", lambda_B_lower = " << rep.lambda_b_lower()
                << ", lambda0_lower = " << rep.lambda0()
                << ", nullspace dim = " << rep.nullspace_dim << "\n";
      const std::string base = "spectra_" + space + "_" + bundle + "_" + variant;
      if (spectra_o.emit != "csv")
        write_text(out_path(spectra_o, base + ".json").string(),
                   spectral_report_to_json(rep).dump(2) + "\n");
      if (spectra_o.emit != "json")
        write_text(out_path(spectra_o, base + ".csv").string(),
                   std::string(spectral_report_csv_header()) + "\n" +
                       spectral_report_csv_row(rep) + "\n");
    } else if (cmd_null->parsed()) {
      auto nd = make_nilpotent(space);
      auto cusp = cusp_nullspace(nd);
      std::cout << "nullspace " << space << ": dim " << cusp.dim << "\n";
      Json j;
      j["schema_version"] = kSchemaVersion;
      j["model"] = nd.label;
      j["n_dim"] = nd.n_dim;
      j["normalization"] = "killing";
      j["dim"] = cusp.dim;
      j["basis"] = matrix_to_json(cusp.coords);
      if (null_o.emit != "csv")
        write_text(out_path(null_o, "nullspace_" + space + ".json").string(), j.dump(2) + "\n");
    } else if (cmd_heat->parsed()) {
      auto rs = restricted_roots(make_space(space));
      auto model = make_heat_model(rs, parse_bundle(bundle), variant,
                                   normalize == "unit_root");
      HeatParams prm;
      prm.dr = dr;
      prm.r_max = rmax;
      prm.t0 = t0;
      prm.t_end = tmax;
      prm.sample_every = sample_every;
      auto run = run_heat(model, prm);
      const double lam0 = std::isnan(lambda0) ? run.lambda_chamber : lambda0;
      DecayFit fit;
      bool have_fit = false;
      try {
        fit = fit_decay(run.h1_series(), prm.t0 + (tmax - prm.t0) / 2.0, tmax);
        have_fit = true;
      } catch (const std::exception&) {
      }
      std::cout << "heatsim " << model.label << ": dt = " << run.dt;
      if (have_fit) std::cout << ", fitted H1 rate = " << fit.rate;
      std::cout << ", domination_worst = " << run.domination_worst
                << ", mineig_worst = " << run.mineig_worst << "\n";
      const std::string base = "heatsim_" + space + "_" + bundle + "_" + variant;
      if (heat_o.emit != "json")
        write_text(out_path(heat_o, base + ".csv").string(), heat_series_csv(run, lam0));
      if (heat_o.emit != "csv")
        write_text(out_path(heat_o, base + ".json").string(),
                   heat_manifest_to_json(model.label, prm, run, have_fit ? &fit : nullptr,
                                         lam0)
                           .dump(2) +
                       "\n");
    } else if (cmd_regions->parsed()) {
      auto rs = restricted_roots(make_space(space));
      auto rc = choose_region_constants(rs);
      auto rep = verify_regions(rs, rc, sigma, samples, regions_o.seed);
      std::cout << "regions " << space << ": samples " << rep.samples << ", violations "
                << rep.violations_p1 << "/" << rep.violations_p2 << "/" << rep.violations_p3
                << "\n";
      if (regions_o.emit != "csv")
        write_text(out_path(regions_o, "regions_" + space + ".json").string(),
                   region_report_to_json(space, rc, rep, sigma).dump(2) + "\n");
    } else if (cmd_sector->parsed()) {
      auto rep = sector_volume_sweep(sector_n, static_cast<int>(samples));
      std::cout << "sector n=" << sector_n << ": violations " << rep.violations << "/"
                << rep.samples << ", fitted C = " << rep.fitted_c << "\n";
      if (sector_o.emit != "json")
        write_text(out_path(sector_o, "sector_n" + std::to_string(sector_n) + ".csv").string(),
                   sector_sweep_csv(rep));
      if (sector_o.emit != "csv") {
        Json j;
        j["schema_version"] = kSchemaVersion;
        j["n"] = sector_n;
        j["violations"] = rep.violations;
        j["samples"] = rep.samples;
        j["fitted_c"] = rep.fitted_c;
        write_text(out_path(sector_o, "sector_n" + std::to_string(sector_n) + ".json").string(),
                   j.dump(2) + "\n");
      }
    } else if (cmd_verify->parsed()) {
      auto results = run_acceptance(std::cout);
      int failed = 0;
      for (const auto& r : results)
        if (!r.pass) ++failed;
      return failed == 0 ? 0 : 1;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
