#pragma once

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "symspace/geometry.hpp"
#include "symspace/heat.hpp"

namespace symspace {

using Json = nlohmann::ordered_json;

constexpr int kSchemaVersion = 1;

inline Json matrix_to_json(const MatrixXd& m) {
  Json rows = Json::array();
  for (int i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (int j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

inline MatrixXd matrix_from_json(const Json& j) {
  const int r = static_cast<int>(j.size());
  const int c = r > 0 ? static_cast<int>(j[0].size()) : 0;
  MatrixXd m(r, c);
  for (int i = 0; i < r; ++i)
    for (int k = 0; k < c; ++k) m(i, k) = j[i][k].get<double>();
  return m;
}

inline Json algebra_to_json(const LieAlgebraData& g) {
  Json j;
  j["schema_version"] = kSchemaVersion;
  j["label"] = g.label;
  j["dim"] = g.dim;
  j["p_indices"] = g.p_indices;
  j["k_indices"] = g.k_indices;
  Json bracket = Json::array();
  for (const auto& m : g.adj) bracket.push_back(matrix_to_json(m));
  j["bracket_ad"] = std::move(bracket);
  j["killing"] = matrix_to_json(g.killing);
  j["involution"] = matrix_to_json(g.involution);
  return j;
}

inline LieAlgebraData algebra_from_json(const Json& j) {
  LieAlgebraData g;
  g.label = j.at("label").get<std::string>();
  g.dim = j.at("dim").get<int>();
  g.p_indices = j.at("p_indices").get<std::vector<int>>();
  g.k_indices = j.at("k_indices").get<std::vector<int>>();
  for (const auto& m : j.at("bracket_ad")) g.adj.push_back(matrix_from_json(m));
  g.killing = matrix_from_json(j.at("killing"));
  g.involution = matrix_from_json(j.at("involution"));
  return g;
}

inline Json roots_to_json(const RestrictedRootSystem& rs) {
  Json j;
  j["schema_version"] = kSchemaVersion;
  j["space"] = rs.g.label;
  j["normalization"] = "killing";
  j["rank"] = rs.rank;
  j["dim"] = rs.g.dim;
  j["k0_dim"] = static_cast<int>(rs.k0_basis.cols());
  Json roots = Json::array();
  for (const auto& d : rs.positive) {
    Json r;
    Json coords = Json::array();
    for (int i = 0; i < d.alpha.size(); ++i) coords.push_back(d.alpha[i]);
    r["alpha"] = std::move(coords);
    r["multiplicity"] = d.multiplicity();
    r["dual_norm"] = d.alpha.norm();
    roots.push_back(std::move(r));
  }
  j["positive_roots"] = std::move(roots);
  j["simple_indices"] = rs.simple;
  MatrixXd gram(rs.positive.size(), rs.positive.size());
  for (std::size_t a = 0; a < rs.positive.size(); ++a)
    for (std::size_t b = 0; b < rs.positive.size(); ++b)
      gram(a, b) = rs.positive[a].alpha.dot(rs.positive[b].alpha);
  j["gram"] = matrix_to_json(gram);
  auto nd = nilpotent_structure(rs);
  Json triplets = Json::array();
  for (int k = 0; k < nd.n_dim; ++k)
    for (int a = 0; a < nd.n_dim; ++a)
      for (int b = a + 1; b < nd.n_dim; ++b)
        if (std::abs(nd.t[k](a, b)) > 1e-12)
          triplets.push_back(Json{{"i", a}, {"j", b}, {"k", k}, {"value", nd.t[k](a, b)}});
  j["t_symbols"] = std::move(triplets);
  return j;
}

inline Json spectral_report_to_json(const SpectralReport& rep) {
  Json j;
  j["schema_version"] = kSchemaVersion;
  j["space"] = rep.space;
  j["bundle"] = to_string(rep.bundle);
  j["variant"] = rep.variant;
  j["scale"] = rep.scale;
  auto tagged = [&](double raw) {
    return Json{{"killing", raw}, {"unit_root", raw * rep.scale}};
  };
  j["lambda_L"] = tagged(rep.lambda_l_raw);
  j["lambda_B_lower"] = tagged(rep.lambda_b_lower_raw);
  j["lambda0_lower"] = tagged(rep.lambda0_raw);
  j["lambda1_lower"] = tagged(rep.lambda1_raw);
  Json walls = Json::array();
  for (const auto& ws : rep.walls) {
    Json w;
    w["key"] = ws.wall_key;
    Json blocks;
    for (const auto& [name, v] : ws.block_min) blocks[name] = tagged(v);
    w["blocks"] = std::move(blocks);
    w["min"] = tagged(ws.wall_min);
    walls.push_back(std::move(w));
  }
  j["walls"] = std::move(walls);
  j["nullspace"] = Json{{"dim", rep.nullspace_dim},
                        {"basis", matrix_to_json(rep.nullspace_coords)}};
  j["positive"] = rep.positive;
  return j;
}

inline std::string spectral_report_csv_row(const SpectralReport& rep) {
  std::ostringstream os;
  os.precision(17);
  os << rep.space << "," << to_string(rep.bundle) << "," << rep.variant << "," << rep.scale
     << "," << rep.lambda_l() << "," << rep.lambda_b_lower() << "," << rep.lambda0() << ","
     << rep.lambda1() << "," << rep.nullspace_dim << "," << (rep.positive ? 1 : 0);
  return os.str();
}

inline const char* spectral_report_csv_header() {
  return "space,bundle,variant,scale,lambda_L,lambda_B_lower,lambda0_lower,lambda1_lower,"
         "nullspace_dim,positive";
}

inline Json heat_manifest_to_json(const std::string& label, const HeatParams& prm,
                                  const HeatRunResult& run, const DecayFit* fit,
                                  double lambda0) {
  Json j;
  j["schema_version"] = kSchemaVersion;
  j["model"] = label;
  j["normalization"] = "unit_root";
  j["params"] = Json{{"dr", prm.dr},
                     {"r_max", prm.r_max},
                     {"t0", prm.t0},
                     {"t_end", prm.t_end},
                     {"sample_every", prm.sample_every},
                     {"dt", run.dt}};
  j["lambda_chamber"] = run.lambda_chamber;
  j["lambda0_envelope"] = lambda0;
  if (fit) {
    j["fit"] = Json{{"rate", fit->rate},
                    {"log_prefactor", fit->log_prefactor},
                    {"window", Json::array({fit->t_lo, fit->t_hi})},
                    {"max_residual", fit->max_residual},
                    {"window_short", fit->window_short}};
  }
  j["checks"] = Json{{"domination_worst", run.domination_worst},
                     {"mineig_worst", run.mineig_worst},
                     {"equivariance_worst", run.equivariance_worst},
                     {"asym_rate_worst", run.asym_rate_worst},
                     {"boundary_worst", run.boundary_worst}};
  return j;
}

inline std::string heat_series_csv(const HeatRunResult& run, double lambda0) {
  std::ostringstream os;
  os.precision(17);
  os << "t,H1,H2,sup_envelope_ratio\n";
  for (const auto& s : run.samples)
    os << s.t << "," << s.h1 << "," << s.h2 << ","
       << s.envelope_sup * std::exp(lambda0 * s.t) << "\n";
  return os.str();
}

inline Json region_report_to_json(const std::string& space, const RegionConstants& rc,
                                  const RegionVerifyReport& rep, double sigma) {
  Json j;
  j["schema_version"] = kSchemaVersion;
  j["space"] = space;
  j["sigma"] = sigma;
  j["c0"] = rc.c0;
  j["c1"] = rc.c1;
  j["a_w"] = rc.a;
  j["b_w"] = rc.b;
  j["samples"] = rep.samples;
  j["violations"] = Json{{"property1", rep.violations_p1},
                         {"property2", rep.violations_p2},
                         {"property3", rep.violations_p3}};
  j["worst_margin_property1"] = rep.worst_margin_p1;
  return j;
}

inline std::string sector_sweep_csv(const SectorSweepReport& rep) {
  std::ostringstream os;
  os.precision(17);
  os << "sinh_a,complement_volume,bound,ratio,violations,samples\n";
  for (const auto& r : rep.rows)
    os << r.sinh_a << "," << r.complement_volume << "," << r.bound << "," << r.ratio << ","
       << r.violations << "," << r.samples_checked << "\n";
  return os.str();
}

inline void write_text(const std::string& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open for writing: " + path);
  f << content;
}

}  // namespace symspace
