#pragma once

#include "symspace/root_system.hpp"

namespace symspace {

enum class BundleKind { one_forms, sym2, sym2_traceless };

inline const char* to_string(BundleKind k) {
  switch (k) {
    case BundleKind::one_forms: return "one_forms";
    case BundleKind::sym2: return "sym2";
    case BundleKind::sym2_traceless: return "sym2_traceless";
  }
  return "?";
}

/// Coordinate bookkeeping for Sym^2 of an np-dimensional fiber: orthonormal
/// basis { e_i.e_i, sqrt(2) e_i.e_j (i<j) }, elements stored as symmetric
/// matrices with the Frobenius inner product.
struct Sym2Basis {
  int np = 0;
  std::vector<std::pair<int, int>> pairs;  // (i <= j), lexicographic

  explicit Sym2Basis(int np_ = 0) : np(np_) {
    for (int i = 0; i < np; ++i)
      for (int j = i; j < np; ++j) pairs.emplace_back(i, j);
  }
  int dim() const { return static_cast<int>(pairs.size()); }
  double weight(int idx) const { return pairs[idx].first == pairs[idx].second ? 1.0 : std::sqrt(2.0); }

  VectorXd coords(const MatrixXd& h) const {
    VectorXd c(dim());
    for (int t = 0; t < dim(); ++t) {
      auto [i, j] = pairs[t];
      c[t] = i == j ? h(i, i) : std::sqrt(2.0) * h(i, j);
    }
    return c;
  }
  MatrixXd matrix(const VectorXd& c) const {
    MatrixXd h = MatrixXd::Zero(np, np);
    for (int t = 0; t < dim(); ++t) {
      auto [i, j] = pairs[t];
      if (i == j)
        h(i, i) = c[t];
      else
        h(i, j) = h(j, i) = c[t] / std::sqrt(2.0);
    }
    return h;
  }
  /// Matrix (in these coordinates) of h -> a h + h a^T.
  MatrixXd leibniz(const MatrixXd& a) const {
    MatrixXd m(dim(), dim());
    for (int t = 0; t < dim(); ++t) {
      MatrixXd h = matrix(VectorXd::Unit(dim(), t));
      m.col(t) = coords(a * h + h * a.transpose());
    }
    return m;
  }
};

/// Homogeneous-bundle fiber data: k-action matrices in an orthonormal fiber
/// basis, the Weyl-reflection action (rank 1), and the embedding used by
/// sym2_traceless.
struct BundleRep {
  BundleKind kind = BundleKind::one_forms;
  int fiber_dim = 0;
  int np = 0;
  MatrixXd p_basis;                 // ambient columns, dim x np
  std::vector<MatrixXd> rho_root;   // per root-vector entry of the root system
  std::vector<MatrixXd> rho_k0;
  MatrixXd weyl_reflection;         // fiber_dim x fiber_dim; empty unless rank 1
  MatrixXd embed;                   // sym2-coords x fiber_dim (sym2_traceless only)
};

namespace detail {

inline MatrixXd one_form_action(const LieAlgebraData& g, const VectorXd& u,
                                const MatrixXd& p_basis) {
  const int np = static_cast<int>(p_basis.cols());
  MatrixXd a(np, np);
  MatrixXd adu = g.ad(u);
  for (int b = 0; b < np; ++b) {
    VectorXd img = adu * p_basis.col(b);
    for (int r = 0; r < np; ++r) a(r, b) = p_basis.col(r).dot(img);
  }
  return a;
}

}  // namespace detail

/// Build the fiber representation for the requested bundle over the standard
/// p-basis (or a caller-supplied adapted one).
inline BundleRep bundle_rep(const RestrictedRootSystem& rs, BundleKind kind,
                            const MatrixXd& p_basis_in = MatrixXd()) {
  BundleRep rep;
  rep.kind = kind;
  rep.p_basis = p_basis_in.size() > 0 ? p_basis_in : rs.p_basis();
  rep.np = static_cast<int>(rep.p_basis.cols());

  std::vector<MatrixXd> act_root, act_k0;
  for (const auto& rv : rs.roots)
    act_root.push_back(detail::one_form_action(rs.g, rv.k, rep.p_basis));
  for (int i = 0; i < rs.k0_basis.cols(); ++i)
    act_k0.push_back(detail::one_form_action(rs.g, rs.k0_basis.col(i), rep.p_basis));

  MatrixXd wp;  // reflection on p, rank-1 only
  if (rs.rank == 1 && !rs.roots.empty()) {
    const double a = rs.roots[0].alpha[0];
    MatrixXd w_amb = matrix_exp(MatrixXd((M_PI / a) * rs.g.ad(rs.roots[0].k)));
    wp.resize(rep.np, rep.np);
    for (int b = 0; b < rep.np; ++b) {
      VectorXd img = w_amb * rep.p_basis.col(b);
      for (int r = 0; r < rep.np; ++r) wp(r, b) = rep.p_basis.col(r).dot(img);
    }
  }

  if (kind == BundleKind::one_forms) {
    rep.fiber_dim = rep.np;
    rep.rho_root = act_root;
    rep.rho_k0 = act_k0;
    if (wp.size() > 0) rep.weyl_reflection = wp;
    return rep;
  }

  Sym2Basis s2(rep.np);
  std::vector<MatrixXd> rr, rk;
  for (const auto& a : act_root) rr.push_back(s2.leibniz(a));
  for (const auto& a : act_k0) rk.push_back(s2.leibniz(a));
  MatrixXd w2;
  if (wp.size() > 0) {
    w2.resize(s2.dim(), s2.dim());
    for (int t = 0; t < s2.dim(); ++t) {
      MatrixXd h = s2.matrix(VectorXd::Unit(s2.dim(), t));
      w2.col(t) = s2.coords(wp * h * wp.transpose());
    }
  }

  if (kind == BundleKind::sym2) {
    rep.fiber_dim = s2.dim();
    rep.rho_root = rr;
    rep.rho_k0 = rk;
    if (w2.size() > 0) rep.weyl_reflection = w2;
    return rep;
  }

  // sym2_traceless: orthogonal complement of the metric direction
  VectorXd gdir = s2.coords(MatrixXd::Identity(rep.np, rep.np));
  gdir /= gdir.norm();
  MatrixXd full(s2.dim(), s2.dim());
  full.col(0) = gdir;
  for (int j = 1; j < s2.dim(); ++j) full.col(j) = VectorXd::Unit(s2.dim(), (j - 1));
  MatrixXd q = orthonormalize(full);
  if (q.cols() != s2.dim()) throw std::logic_error("sym2_traceless: complement construction failed");
  MatrixXd e = q.rightCols(s2.dim() - 1);
  rep.embed = e;
  rep.fiber_dim = s2.dim() - 1;
  for (const auto& m : rr) rep.rho_root.push_back(e.transpose() * m * e);
  for (const auto& m : rk) rep.rho_k0.push_back(e.transpose() * m * e);
  if (w2.size() > 0) rep.weyl_reflection = e.transpose() * w2 * e;
  return rep;
}

/// Curvature data over a p-basis: the operator R on Sym2 p (fiber-metric
/// symmetrized) and the Ricci matrix.
struct CurvatureData {
  MatrixXd r_op;    // sym2-coords
  MatrixXd ric;     // np x np
  double symmetrization_residual = 0.0;
};

/// Quadruple bracket table <[[e_a,e_b],e_c], e_d>.
inline std::vector<std::vector<MatrixXd>> bracket4_table(const LieAlgebraData& g,
                                                         const MatrixXd& p_basis) {
  const int np = static_cast<int>(p_basis.cols());
  std::vector<std::vector<MatrixXd>> t4(np, std::vector<MatrixXd>(np));
  for (int a = 0; a < np; ++a)
    for (int b = 0; b < np; ++b) {
      VectorXd ab = g.bracket(p_basis.col(a), p_basis.col(b));
      MatrixXd m(np, np);
      MatrixXd ad_ab = g.ad(ab);
      for (int c = 0; c < np; ++c) {
        VectorXd abc = ad_ab * p_basis.col(c);
        for (int d = 0; d < np; ++d) m(c, d) = abc.dot(p_basis.col(d));
      }
      t4[a][b] = m;
    }
  return t4;
}

inline CurvatureData curvature_on_sym2(const RestrictedRootSystem& rs,
                                       const MatrixXd& p_basis_in = MatrixXd()) {
  MatrixXd pb = p_basis_in.size() > 0 ? p_basis_in : rs.p_basis();
  const int np = static_cast<int>(pb.cols());
  auto t4 = bracket4_table(rs.g, pb);
  Sym2Basis s2(np);
  const int d2 = s2.dim();

  MatrixXd raw(d2, d2);
  for (int jj = 0; jj < d2; ++jj) {
    auto [k, l] = s2.pairs[jj];
    for (int ii = 0; ii < d2; ++ii) {
      auto [i, j] = s2.pairs[ii];
      // R(e_k.e_l) = -sum_m e_m.[[e_m, e_k], e_l], slot-symmetrized
      double v = t4[i][k](l, j) + t4[j][k](l, i) + t4[i][l](k, j) + t4[j][l](k, i);
      raw(ii, jj) = -0.25 * v * s2.weight(ii) * s2.weight(jj);
    }
  }
  CurvatureData cd;
  cd.symmetrization_residual = symmetry_residual(raw) / std::max(raw.norm(), 1e-300);
  if (cd.symmetrization_residual > 1e-6)
    throw std::logic_error("curvature_on_sym2: symmetrization residual too large");
  cd.r_op = (raw + raw.transpose()) / 2.0;

  cd.ric.resize(np, np);
  for (int a = 0; a < np; ++a)
    for (int b = 0; b < np; ++b) {
      double s = 0.0;
      for (int l = 0; l < np; ++l) s -= t4[l][a](b, l);
      cd.ric(a, b) = s;
    }
  cd.ric = (cd.ric + cd.ric.transpose()).eval() / 2.0;
  return cd;
}

}  // namespace symspace
