#pragma once

#include <chrono>
#include <functional>
#include <iomanip>
#include <iostream>

#include "symspace/catalog.hpp"
#include "symspace/geometry.hpp"
#include "symspace/heat.hpp"

namespace symspace {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  double seconds = 0.0;
  std::string detail;
};

namespace acceptance_detail {

struct Check {
  bool ok = true;
  std::ostringstream detail;

  void require(bool cond, const std::string& what) {
    if (!cond) {
      ok = false;
      detail << "[FAILED: " << what << "] ";
    }
  }
  template <typename T>
  void note(const std::string& k, T v) {
    detail << k << "=" << std::setprecision(6) << v << " ";
  }
};

struct HeatOutcome {
  HeatRunResult run;
  DecayFit fit;
};

inline HeatOutcome heat_run_with_fit(const HeatModel& model, double dr, double r_max,
                                     double t0, double t_end, double fit_lo,
                                     std::vector<std::pair<double, double>> rw = {}) {
  HeatParams p;
  p.dr = dr;
  p.r_max = r_max;
  p.t0 = t0;
  p.t_end = t_end;
  p.sample_every = 0.05;
  p.radial_weights = std::move(rw);
  HeatOutcome out;
  out.run = run_heat(model, p);
  out.fit = fit_decay(out.run.h1_series(), fit_lo, t_end);
  return out;
}

}  // namespace acceptance_detail

/// The full acceptance pipeline; one pass/fail line per criterion.  Returns
/// the per-criterion results (exit gate: all pass).
inline std::vector<CriterionResult> run_acceptance(std::ostream& os) {
  using acceptance_detail::Check;
  using acceptance_detail::heat_run_with_fit;
  using acceptance_detail::HeatOutcome;
  namespace chrono = std::chrono;

  std::vector<CriterionResult> results;
  // shared heat diagnostics for criterion 9
  std::vector<std::pair<std::string, const HeatRunResult*>> heat_runs;
  std::optional<HeatOutcome> run6, run7, run8;

  auto execute = [&](int id, const std::string& name, const std::function<void(Check&)>& body) {
    CriterionResult r;
    r.id = id;
    r.name = name;
    const auto start = chrono::steady_clock::now();
    Check c;
    try {
      body(c);
      r.pass = c.ok;
    } catch (const std::exception& e) {
      r.pass = false;
      c.detail << "[EXCEPTION: " << e.what() << "]";
    }
    r.seconds = chrono::duration<double>(chrono::steady_clock::now() - start).count();
    r.detail = c.detail.str();
    os << (r.pass ? "PASS" : "FAIL") << "  " << std::setw(2) << r.id << "  " << std::left
       << std::setw(34) << r.name << std::right << std::fixed << std::setprecision(1)
       << std::setw(7) << r.seconds << "s  " << r.detail << "\n"
       << std::defaultfloat;
    os.flush();
    results.push_back(std::move(r));
  };

  execute(1, "example-a-constants", [&](Check& c) {
    for (int n : {2, 3, 4, 5}) {
      auto rs = restricted_roots(build_so(n));
      const double s = unit_root_scale(rs);
      auto rep = bundle_rep(rs, BundleKind::one_forms);
      const double lam_l = min_eig(s_par_plain(rep)) * s;
      const double lam_b = bochner_zero_order(rs, BundleKind::one_forms).lambda_lower_raw * s;
      c.require(std::abs(lam_l - 1.0) <= 1e-8, "lambda_L(H" + std::to_string(n) + ") = 1");
      c.require(std::abs(lam_b - (n - 1.0)) <= 1e-8,
                "lambda_B(H" + std::to_string(n) + ") = n-1");
      if (n == 3) {
        c.note("lamL_H3", lam_l);
        c.note("lamB_H3", lam_b);
      }
    }
  });

  execute(2, "example-b-lambda-l", [&](Check& c) {
    auto rs = restricted_roots(build_so(2));
    const double s = unit_root_scale(rs);
    auto rep = bundle_rep(rs, BundleKind::sym2_traceless);
    const double lam = min_eig(s_par_plain(rep)) * s;
    c.require(std::abs(lam - 4.0) <= 1e-8, "lambda_L(H2 quadratic differentials) = 4");
    c.note("lamL", lam);
  });

  execute(3, "wall-positivity-classification", [&](Check& c) {
    double worst = 0.0;
    for (const auto& key : catalog_keys()) {
      if (!catalog_has_algebra(key)) {
        c.require(cusp_nullspace(make_nilpotent(key)).dim == 0, key + " nullspace trivial");
        continue;
      }
      auto rs = restricted_roots(make_space(key));
      auto rep = compute_spectral_report(rs, BundleKind::sym2, "einstein");
      double space_min = std::numeric_limits<double>::infinity();
      for (const auto& ws : rep.walls)
        for (const auto& [name, v] : ws.block_min) {
          const double nv = rep.normalized(v);
          worst = std::min(worst, nv);
          space_min = std::min(space_min, nv);
          c.require(nv >= -1e-8, key + " block " + name + " nonnegative");
        }
      if (key == "SL3" || key == "SL4" || key == "HH8")
        c.require(rep.lambda0() > 1e-4, key + " strictly positive");
      if (has_hyperbolic_factor(key))
        c.require(space_min <= 1e-8, key + " attains zero");
    }
    c.note("worst_block_min", worst);
  });

  execute(4, "cusp-nullspace-dimensions", [&](Check& c) {
    for (int n : {3, 4, 5}) {
      const int expected = (n - 1) * n / 2 - 1;
      const std::string key = "H" + std::to_string(n);
      c.require(cusp_nullspace(make_nilpotent(key)).dim == expected, key + " dim");
      c.require(cusp_nullspace(build_division_algebra_nilpotent(DivisionKind::R, n)).dim ==
                    expected,
                "division R" + std::to_string(n) + " dim");
    }
    c.require(cusp_nullspace(make_nilpotent("HH8")).dim == 0, "HH8 dim 0");
    c.require(cusp_nullspace(make_nilpotent("OH16")).dim == 0, "OH16 dim 0");

    // CH: kernel coincides with the anti-J-commuting forms
    for (int n : {2, 3}) {
      auto nd = build_division_algebra_nilpotent(DivisionKind::C, n);
      auto cusp = cusp_nullspace(nd);
      const int m = nd.n_dim;
      const int ma = 2 * (n - 1);
      MatrixXd jm = MatrixXd::Zero(m, m);
      for (int s = 0; s < n - 1; ++s) {
        jm(2 * s, 2 * s + 1) = -1.0;
        jm(2 * s + 1, 2 * s) = 1.0;
      }
      // explicit basis: symmetric h on the K^{n-1} part with J h + h J = 0
      Sym2Basis s2(m);
      std::vector<Eigen::RowVectorXd> rows;
      for (int a = 0; a < m; ++a)
        for (int b = a; b < m; ++b) {
          Eigen::RowVectorXd row = Eigen::RowVectorXd::Zero(s2.dim());
          for (int t = 0; t < s2.dim(); ++t) {
            auto [i, j] = s2.pairs[t];
            const double w = i == j ? 1.0 : 1.0 / std::sqrt(2.0);
            auto hval = [&](int x, int y) {
              return ((i == x && j == y) || (i == y && j == x)) ? w : 0.0;
            };
            double v = 0.0;
            for (int k = 0; k < m; ++k) v += jm(a, k) * hval(k, b) + hval(a, k) * jm(k, b);
            row[t] = v;
          }
          rows.push_back(row);
        }
      for (int t = 0; t < s2.dim(); ++t) {  // vanish outside the K^{n-1} part
        auto [i, j] = s2.pairs[t];
        if (i >= ma || j >= ma) {
          Eigen::RowVectorXd row = Eigen::RowVectorXd::Zero(s2.dim());
          row[t] = 1.0;
          rows.push_back(row);
        }
      }
      MatrixXd sys(rows.size(), s2.dim());
      for (std::size_t i = 0; i < rows.size(); ++i) sys.row(static_cast<int>(i)) = rows[i];
      MatrixXd expl = kernel_basis(sys);
      c.require(expl.cols() == cusp.coords.cols(), "C" + std::to_string(n) + " dims match");
      if (expl.cols() == cusp.coords.cols())
        c.require(max_principal_angle(expl, cusp.coords) <= 1e-6,
                  "C" + std::to_string(n) + " kernel = anti-J forms");
      if (n == 2) c.note("dimN_C2", cusp.dim);
    }

    // NWWN cross-check: chamber-block kernel equals the cusp nullspace
    for (const std::string& key : {"H3", "CH4", "HH8"}) {
      auto rs = restricted_roots(make_space(key));
      c.require(nullspace_cross_check(rs, enumerate_walls(rs)[0]), key + " NWWN cross-check");
    }
  });

  execute(5, "bochner-sym2-n-minus-2", [&](Check& c) {
    for (int n : {2, 3, 4, 5}) {
      auto rs = restricted_roots(build_so(n));
      const double lam = bochner_zero_order(rs, BundleKind::sym2).lambda_lower_raw *
                         unit_root_scale(rs);
      c.require(std::abs(lam - (n - 2.0)) <= 1e-8, "lambda_B(Sym2 H" + std::to_string(n) + ")");
      if (n == 5) c.note("lamB_H5", lam);
    }
  });

  execute(6, "heat-h3-one-forms-rate", [&](Check& c) {
    auto rs = restricted_roots(build_so(3));
    auto model = make_heat_model(rs, BundleKind::one_forms, "plain");
    run6 = heat_run_with_fit(model, 0.05, 38.0, 0.02, 10.0, 5.0);
    auto half = heat_run_with_fit(model, 0.025, 38.0, 0.02, 10.0, 5.0);
    auto t0x2 = heat_run_with_fit(model, 0.05, 38.0, 0.04, 10.0, 5.0);
    c.require(run6->fit.rate >= 0.9 && run6->fit.rate <= 1.1, "rate in [0.9, 1.1]");
    const double grid_change = std::abs(run6->fit.rate - half.fit.rate) / half.fit.rate;
    c.require(grid_change <= 0.02, "grid-independence certificate (dr halving <= 2%)");
    const double t0_change = std::abs(run6->fit.rate - t0x2.fit.rate) / run6->fit.rate;
    c.require(t0_change <= 0.02, "t0-doubling insensitivity <= 2%");
    c.note("rate", run6->fit.rate);
    c.note("halved", half.fit.rate);
    c.note("grid_change", grid_change);
    c.note("t0_change", t0_change);
    heat_runs.emplace_back("H3 one_forms", &run6->run);
  });

  execute(7, "heat-h2-quadratic-differentials", [&](Check& c) {
    auto rs = restricted_roots(build_so(2));
    auto model = make_heat_model(rs, BundleKind::sym2_traceless, "plain");
    run7 = heat_run_with_fit(model, 0.04, 24.0, 0.011, 6.0, 2.5);
    auto half = heat_run_with_fit(model, 0.02, 24.0, 0.011, 6.0, 2.5);
    c.require(run7->fit.rate >= 1.8 && run7->fit.rate <= 2.2, "rate in [1.8, 2.2]");
    c.require(std::abs(run7->fit.rate - half.fit.rate) / half.fit.rate <= 0.02,
              "grid-independence certificate");
    c.note("rate", run7->fit.rate);
    c.note("halved", half.fit.rate);
    heat_runs.emplace_back("H2 sym2_traceless", &run7->run);
  });

  execute(8, "heat-h3-sym2-einstein", [&](Check& c) {
    auto rs = restricted_roots(build_so(3));
    auto model = make_heat_model(rs, BundleKind::sym2, "einstein");
    run8 = heat_run_with_fit(model, 0.06, 38.0, 0.02, 10.0, 5.0,
                             {{0.0, 1.0}, {0.0, 2.0}, {10.0, 1.0}});
    c.require(run8->fit.rate >= -0.05 && run8->fit.rate <= 0.1,
              "H1 rate consistent with lambda0 = 0");
    auto env = pointwise_envelope(run8->run, 0.0);
    c.require(std::isfinite(env.sup_ratio), "envelope bounded");
    c.require(env.late_growth <= 1.05, "no envelope growth trend > 5%");
    auto rb1 = radial_integral_bound(run8->run, 0, 0.0, 1.0);
    c.require(rb1.late_over_early <= 2.0, "(1+t) I(t) bounded (w=1)");
    auto rb2 = radial_integral_bound(run8->run, 1, 0.0, 2.0);
    c.require(std::isfinite(rb2.worst_product), "(1+t)^2 I(t) finite (w=2)");
    c.require(run8->run.samples.front().radial_integrals[2] <=
                  run8->run.samples.front().h1 / 11.0 * (1.0 + 1e-9),
              "I(t0) <= H1/(1+a) for a=10");
    c.note("rate", run8->fit.rate);
    c.note("env_sup", env.sup_ratio);
    c.note("env_growth", env.late_growth);
    heat_runs.emplace_back("H3 sym2 einstein", &run8->run);
  });

  execute(9, "comparison-principle-positivity", [&](Check& c) {
    c.require(!heat_runs.empty(), "heat runs available");
    for (const auto& [name, run] : heat_runs) {
      c.require(run->domination_worst <= 1.02, name + ": K(max) <= 1.02 K-circ");
      c.require(run->mineig_worst >= -1e-7, name + ": min eigenvalue >= -1e-7 ||K||");
      c.note(name + "_dom", run->domination_worst);
    }
  });

  execute(10, "sector-volume-sweep", [&](Check& c) {
    for (int n : {2, 3}) {
      auto rep = sector_volume_sweep(n, 2048);
      c.require(rep.violations == 0, "zero containment violations (n=" + std::to_string(n) + ")");
      c.require(rep.fitted_c < 100.0, "fitted C stable across the sweep");
      if (n == 3) {
        c.note("samples", rep.samples);
        c.note("fitted_C", rep.fitted_c);
      }
    }
  });

  execute(11, "structural-property-suite", [&](Check& c) {
    for (const auto& key : catalog_keys()) {
      if (!catalog_has_algebra(key)) continue;
      auto g = make_space(key);
      auto diag = check_algebra(g);
      c.require(diag.pass, key + " algebra invariants at 1e-9");
      auto rs = restricted_roots(g);
      const double scale = g.bracket_scale();
      // Eq (xiyi)
      for (const auto& rv : rs.roots)
        c.require((g.bracket(rv.x, rv.y) + rs.root_dual(rv.alpha)).norm() <= 1e-8 * scale,
                  key + " [x,y] = -alpha#");
      // obtuse simple roots
      for (std::size_t i = 0; i < rs.simple.size(); ++i)
        for (std::size_t j = i + 1; j < rs.simple.size(); ++j)
          c.require(rs.positive[rs.simple[i]].alpha.dot(rs.positive[rs.simple[j]].alpha) <= 1e-8,
                    key + " obtuse simple roots");
      // half identity
      for (int jx = 0; jx < rs.rank; ++jx) {
        VectorXd acc = VectorXd::Zero(rs.rank);
        for (const auto& rv : rs.roots) acc += rv.alpha * rv.alpha[jx];
        acc[jx] -= 0.5;
        c.require(acc.norm() <= 1e-8, key + " half identity");
      }
      // [g_a, g_b] in g_{a+b}
      const int m = rs.n_minus_r();
      for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) {
          VectorXd br = g.bracket(rs.roots[i].x, rs.roots[j].x);
          VectorXd target = rs.roots[i].alpha + rs.roots[j].alpha;
          for (int k = 0; k < m; ++k)
            if ((rs.roots[k].alpha - target).norm() < 1e-6)
              br -= rs.roots[k].x.dot(br) * rs.roots[k].x;
          c.require(br.norm() <= 1e-8 * scale, key + " root grading");
        }
      // S_W block structure; Sym2 un_a block = identity
      for (const auto& w : enumerate_walls(rs)) {
        auto basis = wall_adapted_basis(rs, w);
        MatrixXd s = s_wall_einstein(rs, w, basis);  // throws if asymmetric
        auto bd = block_check(basis, s);
        c.require(bd.cross_leakage <= 1e-8, key + " wall cross-block leakage");
        if (bd.idx[static_cast<int>(FiberBlock::Sym2UnA)].size() > 0)
          c.require(bd.una_identity_residual <= 1e-8, key + " Sym2 un_a block = identity");
      }
    }
    // closed-form sum-of-squares oracle for the wall operator on representative spaces
    std::mt19937_64 rng(23);
    std::normal_distribution<double> dist;
    for (const std::string& key : {"CH4", "HH8", "SL3"}) {
      auto rs = restricted_roots(make_space(key));
      auto nd = nilpotent_structure(rs);
      for (const auto& w : enumerate_walls(rs)) {
        if (w.un_members.empty()) continue;
        auto basis = wall_adapted_basis(rs, w);
        MatrixXd s = s_wall_einstein(rs, w, basis);
        Sym2Basis s2(static_cast<int>(basis.p_basis.cols()));
        std::map<int, double> lam;
        VectorXd hc = VectorXd::Zero(s2.dim());
        for (int t = 0; t < s2.dim(); ++t) {
          auto [i, j] = s2.pairs[t];
          if (i == j && basis.cls[i] == WallAdaptedBasis::UnRoot) {
            const double v = dist(rng);
            lam[basis.root_of[i]] = v;
            hc[t] = v;
          }
        }
        const double lhs = 2.0 * hc.dot(s * hc);
        double rhs = 0.0;
        for (int x : w.un_members)
          for (int y : w.un_members)
            for (int z : w.un_members) {
              const double t = nd.t[z](x, y);
              const double d = lam[x] + lam[y] - lam[z];
              rhs += 2.0 * d * d * t * t;
            }
        for (int l = 0; l < nd.n_dim; ++l) {
          double acc = 0.0;
          for (int a : w.un_members) acc += lam[a] * nd.t[a](a, l);
          rhs += 8.0 * acc * acc;
        }
        for (int a : w.un_members)
          for (int b : w.un_members)
            for (int l : w.ov_members) {
              const double t = nd.t[b](a, l) + nd.t[a](b, l);
              rhs += t * t * (lam[a] - lam[b]) * (lam[a] - lam[b]);
            }
        VectorXd acc = VectorXd::Zero(rs.rank);
        for (int a : w.un_members) acc += lam[a] * rs.roots[a].alpha;
        rhs += 4.0 * acc.squaredNorm();
        c.require(std::abs(lhs - rhs) <= 1e-7 * (1.0 + std::abs(rhs)),
                  key + " T-symbol quadratic oracle");
      }
    }
  });

  execute(12, "region-combinatorics", [&](Check& c) {
    for (const std::string& key : {"SL3", "H2xH2"}) {
      auto rs = restricted_roots(make_space(key));
      auto rc = choose_region_constants(rs);  // throws if (aWbW1)/(aWbW2) fail
      const long per_wall = 25000;            // 4 walls -> 1e5 samples per space
      auto rep = verify_regions(rs, rc, 12.0, per_wall);
      c.require(rep.samples >= 100000, key + " sample count");
      c.require(rep.violations_p1 == 0, key + " property (1)");
      c.require(rep.violations_p2 == 0, key + " property (2)");
      c.require(rep.violations_p3 == 0, key + " property (3)");
      if (key == "SL3") c.note("samples", rep.samples);
    }
  });

  int failed = 0;
  for (const auto& r : results)
    if (!r.pass) ++failed;
  os << (failed == 0 ? "ALL CRITERIA PASSED" : std::to_string(failed) + " CRITERIA FAILED")
     << " (" << results.size() << " total)\n";
  return results;
}

}  // namespace symspace
