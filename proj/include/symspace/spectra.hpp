#pragma once

#include "symspace/bundle.hpp"

namespace symspace {

inline MatrixXd s_par_plain(const BundleRep& rep) {
  MatrixXd m = MatrixXd::Zero(rep.fiber_dim, rep.fiber_dim);
  for (const auto& r : rep.rho_root) m -= r * r;
  return (m + m.transpose()) / 2.0;
}

/// Wall-adapted orthonormal p-basis: [ov_a | ov-root p_i | un_a | un-root p_i],
/// with per-column classification.
struct WallAdaptedBasis {
  enum Class { OvA = 0, OvRoot = 1, UnA = 2, UnRoot = 3 };
  MatrixXd p_basis;            // ambient columns
  std::vector<Class> cls;      // per column
  std::vector<int> root_of;    // root-vector id for *Root columns, -1 otherwise

  bool is_ov(int col) const { return cls[col] == OvA || cls[col] == OvRoot; }
};

inline WallAdaptedBasis wall_adapted_basis(const RestrictedRootSystem& rs,
                                           const WallDecomposition& w) {
  WallAdaptedBasis b;
  const int np = rs.rank + rs.n_minus_r();
  b.p_basis.resize(rs.g.dim, np);
  int col = 0;
  auto push = [&](const VectorXd& v, WallAdaptedBasis::Class c, int rid) {
    b.p_basis.col(col) = v;
    b.cls.push_back(c);
    b.root_of.push_back(rid);
    ++col;
  };
  for (int j = 0; j < w.ov_a.cols(); ++j)
    push(rs.a_basis * w.ov_a.col(j), WallAdaptedBasis::OvA, -1);
  for (int m : w.ov_members) push(rs.roots[m].p, WallAdaptedBasis::OvRoot, m);
  for (int j = 0; j < w.un_a.cols(); ++j)
    push(rs.a_basis * w.un_a.col(j), WallAdaptedBasis::UnA, -1);
  for (int m : w.un_members) push(rs.roots[m].p, WallAdaptedBasis::UnRoot, m);
  return b;
}

/// Zero-order endomorphism of the Einstein operator on un-P-invariant lifts,
/// as a symmetric matrix on Sym2 p in the adapted basis.  Contains the
/// curvature correction (Einstein-operator convention).
inline MatrixXd s_wall_einstein(const RestrictedRootSystem& rs, const WallDecomposition& w,
                                const WallAdaptedBasis& basis) {
  const LieAlgebraData& g = rs.g;
  const MatrixXd& pb = basis.p_basis;
  const int np = static_cast<int>(pb.cols());
  Sym2Basis s2(np);
  const int d2 = s2.dim();

  // K3[m](a,b) = <[k_m, e_a], e_b>, m running over un-root vectors
  std::vector<MatrixXd> k3;
  for (int m : w.un_members) {
    MatrixXd t(np, np);
    MatrixXd adk = g.ad(rs.roots[m].k);
    for (int a = 0; a < np; ++a) {
      VectorXd img = adk * pb.col(a);
      for (int b2 = 0; b2 < np; ++b2) t(a, b2) = img.dot(pb.col(b2));
    }
    k3.push_back(std::move(t));
  }
  std::vector<MatrixXd> gm;  // gm[m](a,b) = <[k_m,e_a],[k_m,e_b]>
  for (const auto& t : k3) gm.push_back(t * t.transpose());

  auto t4 = bracket4_table(g, pb);

  MatrixXd m2(d2, d2);  // 2 <S_W (e_k.e_l), e_i.e_j>, slot-symmetrized
  for (int jj = 0; jj < d2; ++jj) {
    auto [k, l] = s2.pairs[jj];
    for (int ii = 0; ii < d2; ++ii) {
      auto [i, j] = s2.pairs[ii];
      double s = 0.0;
      for (std::size_t m = 0; m < k3.size(); ++m) {
        const MatrixXd& G = gm[m];
        const MatrixXd& K3 = k3[m];
        s += G(k, i) * (l == j ? 1.0 : 0.0);
        s += G(k, j) * (l == i ? 1.0 : 0.0);
        s += (k == i ? 1.0 : 0.0) * G(l, j);
        s += (k == j ? 1.0 : 0.0) * G(l, i);
        s -= 2.0 * K3(k, i) * K3(l, j);
        s -= 2.0 * K3(k, j) * K3(l, i);
      }
      s += 2.0 * t4[i][k](l, j) + 2.0 * t4[j][k](l, i);
      // s accumulates 2 <S_W (e_k.e_l), e_i.e_j>
      m2(ii, jj) = 0.5 * s * s2.weight(ii) * s2.weight(jj);
    }
  }
  MatrixXd m = m2;
  const double res = symmetry_residual(m) / std::max(m.norm(), 1e-300);
  if (res > 1e-8) throw std::logic_error("s_wall_einstein: symmetry residual too large");
  return (m + m.transpose()) / 2.0;
}

/// Plain (connection-Laplacian) wall endomorphism on an arbitrary bundle:
/// -sum_{m in un roots} rho(k_m)^2.
inline MatrixXd s_wall_plain(const RestrictedRootSystem&, const WallDecomposition& w,
                             const BundleRep& rep) {
  MatrixXd m = MatrixXd::Zero(rep.fiber_dim, rep.fiber_dim);
  for (int i : w.un_members) m -= rep.rho_root[i] * rep.rho_root[i];
  return (m + m.transpose()) / 2.0;
}

enum class FiberBlock { OvpUnp = 0, Sym2Ovp = 1, Sym2UnA = 2, UnAUnAperp = 3, Sym2UnAperp = 4 };

inline const char* to_string(FiberBlock b) {
  switch (b) {
    case FiberBlock::OvpUnp: return "ovp_unp";
    case FiberBlock::Sym2Ovp: return "sym2_ovp";
    case FiberBlock::Sym2UnA: return "sym2_una";
    case FiberBlock::UnAUnAperp: return "una_unaperp";
    case FiberBlock::Sym2UnAperp: return "sym2_unaperp";
  }
  return "?";
}

struct BlockDecomposition {
  std::vector<std::vector<int>> idx{5};     // fiber indices per block
  std::vector<MatrixXd> block{5};
  double cross_leakage = 0.0;               // max |entry| between different blocks
  double una_identity_residual = 0.0;       // || Sym2UnA block - Id ||_max
};

inline FiberBlock classify_pair(const WallAdaptedBasis& b, int i, int j) {
  const bool oi = b.is_ov(i), oj = b.is_ov(j);
  if (oi && oj) return FiberBlock::Sym2Ovp;
  if (oi != oj) return FiberBlock::OvpUnp;
  auto ci = b.cls[i], cj = b.cls[j];
  const bool ai = ci == WallAdaptedBasis::UnA, aj = cj == WallAdaptedBasis::UnA;
  if (ai && aj) return FiberBlock::Sym2UnA;
  if (ai || aj) return FiberBlock::UnAUnAperp;
  return FiberBlock::Sym2UnAperp;
}

/// Verify the five-fold block structure of a wall operator and return the
/// diagonal sub-blocks.
inline BlockDecomposition block_check(const WallAdaptedBasis& basis, const MatrixXd& s) {
  Sym2Basis s2(static_cast<int>(basis.p_basis.cols()));
  const int d2 = s2.dim();
  if (s.rows() != d2) throw std::invalid_argument("block_check: dimension mismatch");
  BlockDecomposition bd;
  std::vector<int> block_of(d2);
  for (int t = 0; t < d2; ++t) {
    auto [i, j] = s2.pairs[t];
    const int b = static_cast<int>(classify_pair(basis, i, j));
    block_of[t] = b;
    bd.idx[b].push_back(t);
  }
  const double scale = std::max(s.cwiseAbs().maxCoeff(), 1e-300);
  for (int a = 0; a < d2; ++a)
    for (int b = 0; b < d2; ++b)
      if (block_of[a] != block_of[b])
        bd.cross_leakage = std::max(bd.cross_leakage, std::abs(s(a, b)) / scale);
  if (bd.cross_leakage > 1e-6) throw std::logic_error("block_check: cross-block leakage");
  for (int b = 0; b < 5; ++b) {
    const auto& id = bd.idx[b];
    MatrixXd sub(id.size(), id.size());
    for (std::size_t a = 0; a < id.size(); ++a)
      for (std::size_t c = 0; c < id.size(); ++c) sub(a, c) = s(id[a], id[c]);
    bd.block[b] = std::move(sub);
  }
  const auto& una = bd.block[static_cast<int>(FiberBlock::Sym2UnA)];
  if (una.size() > 0)
    bd.una_identity_residual =
        (una - MatrixXd::Identity(una.rows(), una.cols())).cwiseAbs().maxCoeff();
  return bd;
}

/// Bochner zero-order operator: for one_forms the -Ric action; for sym2 kinds
/// A(h) = -R(h) - (Ric h + h Ric)/2, requiring the Einstein condition.
struct BochnerData {
  MatrixXd a;
  double lambda_lower_raw = 0.0;
  MatrixXd kernel;  // fiber-coordinate kernel basis
};

inline BochnerData bochner_zero_order(const RestrictedRootSystem& rs, BundleKind kind) {
  auto cd = curvature_on_sym2(rs);
  const int np = rs.rank + rs.n_minus_r();
  BochnerData out;
  if (kind == BundleKind::one_forms) {
    out.a = -cd.ric;
  } else {
    const double lam = cd.ric.trace() / np;
    if ((cd.ric - lam * MatrixXd::Identity(np, np)).cwiseAbs().maxCoeff() > 1e-8)
      throw std::invalid_argument("bochner_zero_order: sym2 requires an Einstein space");
    Sym2Basis s2(np);
    MatrixXd half_ric = s2.leibniz(MatrixXd(cd.ric / 2.0));
    MatrixXd a = -cd.r_op - half_ric;
    if (kind == BundleKind::sym2) {
      out.a = a;
    } else {
      auto rep = bundle_rep(rs, BundleKind::sym2_traceless);
      out.a = rep.embed.transpose() * a * rep.embed;
    }
  }
  out.a = ((out.a + out.a.transpose()) / 2.0).eval();
  auto e = sym_eig(out.a);
  out.lambda_lower_raw = e.values[0];
  const double thresh = 1e-8 * std::max(std::abs(e.values[e.values.size() - 1]), 1e-300);
  int kdim = 0;
  while (kdim < e.values.size() && std::abs(e.values[kdim]) < thresh) ++kdim;
  out.kernel = e.vectors.leftCols(kdim);
  return out;
}

/// Cusp-deformation nullspace from nilpotent data alone: the kernel of the
/// linear conditions on Sym^2(a-perp).  An optional support mask restricts to
/// symmetric forms supported on a subset of x-indices (used per wall).
struct CuspNullspace {
  int dim = 0;
  MatrixXd coords;                 // sym-coordinates (sqrt2 convention), columns
  std::vector<MatrixXd> basis;     // symmetric matrices
};

inline CuspNullspace cusp_nullspace(const NilpotentData& nd,
                                    const std::vector<int>& support = {}) {
  const int m = nd.n_dim;
  Sym2Basis s2(m);
  const int d = s2.dim();
  std::vector<bool> allowed(m, support.empty());
  for (int i : support) allowed[i] = true;

  std::vector<Eigen::RowVectorXd> rows;
  auto add_row = [&](const Eigen::RowVectorXd& r) {
    if (r.cwiseAbs().maxCoeff() > 0.0) rows.push_back(r);
  };

  // clean roundoff junk in T relative to the natural root scale, so that
  // abelian n (all T exactly zero in theory) does not produce noise rows
  double alpha_scale = 0.0;
  for (const auto& al : nd.alphas) alpha_scale = std::max(alpha_scale, al.norm());
  const double t_floor = 1e-10 * std::max(alpha_scale, 1e-300);
  std::vector<MatrixXd> tt = nd.t;
  double tscale = 0.0;
  for (auto& tk : tt) {
    tk = tk.unaryExpr([&](double v) { return std::abs(v) <= t_floor ? 0.0 : v; }).eval();
    tscale = std::max(tscale, tk.cwiseAbs().maxCoeff());
  }
  if (tscale == 0.0) tscale = 1.0;

  // (1)  sum_i h_{ai} T^c_{ib} + sum_i h_{bi} T^c_{ai} = sum_i h_{ci} T^i_{ab}
  for (int a = 0; a < m; ++a)
    for (int b = a; b < m; ++b)
      for (int c = 0; c < m; ++c) {
        Eigen::RowVectorXd r = Eigen::RowVectorXd::Zero(d);
        for (int t = 0; t < d; ++t) {
          auto [i1, j1] = s2.pairs[t];
          const double w = 1.0 / s2.weight(t);  // h_{i1 j1} = coord * w for i1<j1, coord for diag
          auto h_pair = [&](int x, int y) {
            // contribution of coordinate t to entry h_{x,y}
            if ((i1 == x && j1 == y) || (i1 == y && j1 == x)) return i1 == j1 ? 1.0 : w;
            return 0.0;
          };
          double v = 0.0;
          for (int i = 0; i < m; ++i) {
            v += h_pair(a, i) * tt[c](i, b);
            v += h_pair(b, i) * tt[c](a, i);
            v -= h_pair(c, i) * tt[i](a, b);
          }
          r[t] = v / tscale;
        }
        add_row(r);
      }
  // (2)  sum_i h_{ii} alpha_i = 0   (vector equation in a*)
  const int rk = static_cast<int>(nd.alphas[0].size());
  for (int j = 0; j < rk; ++j) {
    Eigen::RowVectorXd r = Eigen::RowVectorXd::Zero(d);
    for (int t = 0; t < d; ++t) {
      auto [i1, j1] = s2.pairs[t];
      if (i1 == j1) r[t] = nd.alphas[i1][j];
    }
    add_row(r);
  }
  // (3)  h_{ab} = 0 if alpha_a != alpha_b; plus the support mask
  for (int t = 0; t < d; ++t) {
    auto [i1, j1] = s2.pairs[t];
    const bool off_root = (nd.alphas[i1] - nd.alphas[j1]).norm() > 1e-6;
    const bool masked = !allowed[i1] || !allowed[j1];
    if (off_root || masked) {
      Eigen::RowVectorXd r = Eigen::RowVectorXd::Zero(d);
      r[t] = 1.0;
      add_row(r);
    }
  }

  MatrixXd sys(rows.size(), d);
  for (std::size_t i = 0; i < rows.size(); ++i) sys.row(static_cast<int>(i)) = rows[i];
  CuspNullspace out;
  out.coords = kernel_basis(sys, 1e-8);
  out.dim = static_cast<int>(out.coords.cols());
  for (int c = 0; c < out.dim; ++c) out.basis.push_back(s2.matrix(out.coords.col(c)));
  return out;
}

/// Per-wall lower bounds: minimum eigenvalue of each diagonal block of the
/// Einstein wall operator, with the cross-section Bochner correction on
/// Sym2 ovp.
struct WallSpectrum {
  std::vector<int> wall_key;
  std::map<std::string, double> block_min;  // per nonempty block
  double wall_min = std::numeric_limits<double>::infinity();
  MatrixXd unaperp_kernel;                  // kernel inside the Sym2 unaperp block
  std::vector<int> un_members;              // root-vector ids of unaperp columns
};

inline WallSpectrum lambda_wall_lower(const RestrictedRootSystem& rs,
                                      const WallDecomposition& w) {
  WallSpectrum ws;
  ws.wall_key = w.wall_key;
  ws.un_members = w.un_members;
  auto basis = wall_adapted_basis(rs, w);
  MatrixXd s = s_wall_einstein(rs, w, basis);
  auto bd = block_check(basis, s);

  Sym2Basis s2(static_cast<int>(basis.p_basis.cols()));

  for (int b = 0; b < 5; ++b) {
    if (bd.idx[b].empty()) continue;
    MatrixXd op = bd.block[b];
    if (static_cast<FiberBlock>(b) == FiberBlock::Sym2Ovp) {
      // cross-section Bochner: B = ovR - (ovRic . + . ovRic)/2 + S_W
      std::vector<int> ov_cols;
      for (std::size_t c = 0; c < basis.cls.size(); ++c)
        if (basis.is_ov(static_cast<int>(c))) ov_cols.push_back(static_cast<int>(c));
      const int nov = static_cast<int>(ov_cols.size());
      MatrixXd ovp(rs.g.dim, nov);
      for (int c = 0; c < nov; ++c) ovp.col(c) = basis.p_basis.col(ov_cols[c]);
      auto t4 = bracket4_table(rs.g, ovp);
      Sym2Basis s2o(nov);
      MatrixXd rov(s2o.dim(), s2o.dim());
      for (int jj = 0; jj < s2o.dim(); ++jj) {
        auto [k, l] = s2o.pairs[jj];
        for (int ii = 0; ii < s2o.dim(); ++ii) {
          auto [i, j] = s2o.pairs[ii];
          double v = t4[i][k](l, j) + t4[j][k](l, i) + t4[i][l](k, j) + t4[j][l](k, i);
          rov(ii, jj) = -0.25 * v * s2o.weight(ii) * s2o.weight(jj);
        }
      }
      rov = ((rov + rov.transpose()) / 2.0).eval();
      MatrixXd ric_ov(nov, nov);
      for (int a = 0; a < nov; ++a)
        for (int b2 = 0; b2 < nov; ++b2) {
          double sum = 0.0;
          for (int l = 0; l < nov; ++l) sum -= t4[l][a](b2, l);
          ric_ov(a, b2) = sum;
        }
      ric_ov = ((ric_ov + ric_ov.transpose()) / 2.0).eval();
      // The Sym2Ovp sub-basis of the full Sym2 is exactly s2o under the
      // column map ov_cols; bd.block is indexed consistently because
      // classify_pair enumerates pairs in the same lexicographic order.
      op = rov - s2o.leibniz(MatrixXd(ric_ov / 2.0)) + bd.block[b];
      op = ((op + op.transpose()) / 2.0).eval();
    }
    auto e = sym_eig(op);
    const double mn = e.values[0];
    ws.block_min[to_string(static_cast<FiberBlock>(b))] = mn;
    ws.wall_min = std::min(ws.wall_min, mn);
    if (static_cast<FiberBlock>(b) == FiberBlock::Sym2UnAperp) {
      const double thresh = 1e-8 * std::max(std::abs(e.values[e.values.size() - 1]), 1e-300);
      int kdim = 0;
      while (kdim < e.values.size() && std::abs(e.values[kdim]) < thresh) ++kdim;
      ws.unaperp_kernel = e.vectors.leftCols(kdim);
    }
  }
  if (bd.idx[static_cast<int>(FiberBlock::Sym2UnA)].size() > 0 &&
      bd.una_identity_residual > 1e-8)
    throw std::logic_error("lambda_wall_lower: Sym2 un_a block is not the identity");
  return ws;
}

/// Check that the kernel of the Sym2 unaperp block coincides with the cusp
/// nullspace restricted to the wall (principal angles <= tol).
inline bool nullspace_cross_check(const RestrictedRootSystem& rs, const WallDecomposition& w,
                                  double tol = 1e-6) {
  auto ws = lambda_wall_lower(rs, w);
  auto nd = nilpotent_structure(rs);
  auto cusp = cusp_nullspace(nd, w.un_members);

  // embed the block kernel into full sym coordinates over the x-indices
  const int m = nd.n_dim;
  Sym2Basis s2_full(m);
  const auto& mem = w.un_members;
  const int q = static_cast<int>(mem.size());
  Sym2Basis s2_blk(q);
  MatrixXd emb = MatrixXd::Zero(s2_full.dim(), ws.unaperp_kernel.rows());
  for (int t = 0; t < s2_blk.dim(); ++t) {
    auto [a, b] = s2_blk.pairs[t];
    const int ga = std::min(mem[a], mem[b]), gb = std::max(mem[a], mem[b]);
    for (int tf = 0; tf < s2_full.dim(); ++tf)
      if (s2_full.pairs[tf] == std::make_pair(ga, gb)) emb(tf, t) = 1.0;
  }
  MatrixXd block_kernel_full = emb * ws.unaperp_kernel;
  if (block_kernel_full.cols() != cusp.coords.cols()) return false;
  if (block_kernel_full.cols() == 0) return true;
  return max_principal_angle(block_kernel_full, cusp.coords) <= tol;
}

/// Full spectral report for one space/bundle/variant.
struct SpectralReport {
  std::string space;
  BundleKind bundle = BundleKind::sym2;
  std::string variant;  // "plain" | "einstein"
  double scale = 1.0;   // unit-root normalization multiplier for eigenvalues
  double lambda_l_raw = 0.0;
  double lambda_b_lower_raw = 0.0;
  std::vector<WallSpectrum> walls;
  double lambda0_raw = 0.0;
  double lambda1_raw = 0.0;
  int nullspace_dim = 0;
  MatrixXd nullspace_coords;
  bool positive = false;

  double normalized(double raw) const { return raw * scale; }
  double lambda_l() const { return normalized(lambda_l_raw); }
  double lambda_b_lower() const { return normalized(lambda_b_lower_raw); }
  double lambda0() const { return normalized(lambda0_raw); }
  double lambda1() const { return normalized(lambda1_raw); }
};

inline double unit_root_scale(const RestrictedRootSystem& rs) {
  return 1.0 / rs.min_root_dual_norm2();
}

inline SpectralReport compute_spectral_report(const RestrictedRootSystem& rs, BundleKind kind,
                                              const std::string& variant,
                                              bool normalize = true) {
  if (variant != "plain" && variant != "einstein")
    throw std::invalid_argument("variant must be plain or einstein");
  if (variant == "einstein" && kind == BundleKind::one_forms)
    throw std::invalid_argument("einstein variant acts on symmetric 2-tensors");
  if (variant == "einstein") {
    // standing hypothesis: the space is Einstein (automatic per factor in the
    // Killing metric, but reducible inputs with rescaled factors are refused)
    auto cd = curvature_on_sym2(rs);
    const int np = rs.rank + rs.n_minus_r();
    const double lam = cd.ric.trace() / np;
    if ((cd.ric - lam * MatrixXd::Identity(np, np)).cwiseAbs().maxCoeff() > 1e-8)
      throw std::invalid_argument("einstein variant requires an Einstein space");
  }
  SpectralReport rep;
  rep.space = rs.g.label;
  rep.bundle = kind;
  rep.variant = variant;
  rep.scale = normalize ? unit_root_scale(rs) : 1.0;

  auto walls = enumerate_walls(rs);
  auto bundle = bundle_rep(rs, kind);

  if (variant == "plain") {
    rep.lambda_l_raw = min_eig(s_par_plain(bundle));
    rep.lambda_b_lower_raw = bochner_zero_order(rs, kind).lambda_lower_raw;
    rep.lambda0_raw = std::numeric_limits<double>::infinity();
    rep.lambda1_raw = std::numeric_limits<double>::infinity();
    for (const auto& w : walls) {
      WallSpectrum ws;
      ws.wall_key = w.wall_key;
      ws.wall_min = min_eig(s_wall_plain(rs, w, bundle));
      ws.block_min["whole"] = ws.wall_min;
      rep.lambda0_raw = std::min(rep.lambda0_raw, ws.wall_min);
      if (!w.wall_key.empty()) rep.lambda1_raw = std::min(rep.lambda1_raw, ws.wall_min);
      rep.walls.push_back(std::move(ws));
    }
    rep.positive = rep.lambda0_raw > 1e-8 / rep.scale;
    return rep;
  }

  // einstein variant
  if (kind == BundleKind::sym2) {
    rep.lambda0_raw = std::numeric_limits<double>::infinity();
    rep.lambda1_raw = std::numeric_limits<double>::infinity();
    for (const auto& w : walls) {
      auto ws = lambda_wall_lower(rs, w);
      rep.lambda0_raw = std::min(rep.lambda0_raw, ws.wall_min);
      if (!w.wall_key.empty()) rep.lambda1_raw = std::min(rep.lambda1_raw, ws.wall_min);
      if (w.wall_key.empty()) {  // W = C: the parabolic operator
        rep.lambda_l_raw = ws.wall_min;
        rep.nullspace_dim = static_cast<int>(ws.unaperp_kernel.cols());
        rep.nullspace_coords = ws.unaperp_kernel;
      }
      rep.walls.push_back(std::move(ws));
    }
    // lambda_B for the Einstein operator: zero-order of the Bochner formula
    // is exactly the W = {0} operator A
    rep.lambda_b_lower_raw = rep.walls.empty() ? 0.0 : rep.walls[0].wall_min;
    for (const auto& ws : rep.walls)
      if (ws.wall_key.size() == static_cast<std::size_t>(rs.rank))
        rep.lambda_b_lower_raw = ws.wall_min;
    rep.positive = rep.lambda0_raw > 1e-8 / rep.scale;
    return rep;
  }

  // einstein on sym2_traceless: restrict the chamber operator
  auto full_rs_basis = wall_adapted_basis(rs, walls[0]);
  MatrixXd sc = s_wall_einstein(rs, walls[0], full_rs_basis);
  auto rep_tl = bundle_rep(rs, BundleKind::sym2_traceless, full_rs_basis.p_basis);
  MatrixXd sc_tl = rep_tl.embed.transpose() * sc * rep_tl.embed;
  rep.lambda_l_raw = min_eig(sc_tl);
  rep.lambda_b_lower_raw = bochner_zero_order(rs, kind).lambda_lower_raw;
  rep.lambda0_raw = rep.lambda_l_raw;
  rep.lambda1_raw = rep.lambda_l_raw;
  rep.positive = rep.lambda0_raw > 1e-8 / rep.scale;
  return rep;
}

}  // namespace symspace
