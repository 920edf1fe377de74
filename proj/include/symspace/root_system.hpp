#pragma once

#include <map>

#include "symspace/lie_algebra.hpp"

namespace symspace {

/// One positive-root vector x_i with its companions y_i = sigma x_i,
/// p_i = (x_i - y_i)/sqrt(2), k_i = (x_i + y_i)/sqrt(2).
struct RootVector {
  VectorXd alpha;  // covector coordinates w.r.t. the orthonormal a-basis
  VectorXd x, y, p, k;
  int distinct_id = -1;
};

struct DistinctRoot {
  VectorXd alpha;
  std::vector<int> members;  // indices into RestrictedRootSystem::roots
  int multiplicity() const { return static_cast<int>(members.size()); }
};

struct RestrictedRootSystem {
  LieAlgebraData g;
  MatrixXd a_basis;  // dim x rank, Killing-orthonormal columns of a in p
  int rank = 0;
  std::vector<RootVector> roots;      // n - r entries, positive roots with multiplicity
  std::vector<DistinctRoot> positive;  // distinct positive roots
  MatrixXd k0_basis;                  // dim x dim(k0)
  std::vector<int> simple;            // indices into `positive`
  VectorXd v0;                        // positivity direction, a-coordinates
  MatrixXd simple_coeffs;             // positive.size() x rank, nonneg integers

  int n_minus_r() const { return static_cast<int>(roots.size()); }

  /// alpha^# in ambient coordinates.
  VectorXd root_dual(const VectorXd& alpha_coords) const { return a_basis * alpha_coords; }

  /// Standard orthonormal p-basis: a-basis columns first, then the p_i.
  MatrixXd p_basis() const {
    MatrixXd b(g.dim, rank + n_minus_r());
    for (int j = 0; j < rank; ++j) b.col(j) = a_basis.col(j);
    for (int i = 0; i < n_minus_r(); ++i) b.col(rank + i) = roots[i].p;
    return b;
  }

  double min_root_dual_norm2() const {
    double m = std::numeric_limits<double>::infinity();
    for (const auto& d : positive) m = std::min(m, d.alpha.squaredNorm());
    return m;
  }
};

/// Wall of the positive Weyl chamber, indexed by the subset of simple roots
/// vanishing on it, with the induced splittings of roots, a and p.
struct WallDecomposition {
  std::vector<int> wall_key;      // subset of simple-root positions (indices into rs.simple)
  std::vector<int> ov_distinct;   // distinct-root ids generated by the wall_key simple roots
  std::vector<int> un_distinct;
  std::vector<int> ov_members;    // root-vector ids (with multiplicity)
  std::vector<int> un_members;
  MatrixXd ov_a;  // rank x dim(ov_a), orthonormal in a-coordinates
  MatrixXd un_a;  // rank x dim(un_a)
};

inline MatrixXd maximal_abelian(const LieAlgebraData& g) {
  const int np = g.p_dim();
  MatrixXd pbasis(g.dim, np);
  for (int i = 0; i < np; ++i) pbasis.col(i) = VectorXd::Unit(g.dim, g.p_indices[i]);

  MatrixXd a(g.dim, 0);
  for (int iter = 0; iter <= np; ++iter) {
    // joint kernel in p of w -> ([v_1,w], ..., [v_m,w])
    MatrixXd kern;  // columns: p-coordinates
    if (a.cols() == 0) {
      kern = MatrixXd::Identity(np, np);
    } else {
      MatrixXd stack(g.dim * a.cols(), np);
      for (int i = 0; i < a.cols(); ++i) stack.middleRows(i * g.dim, g.dim) = g.ad(a.col(i)) * pbasis;
      kern = kernel_basis(stack, 1e-10);
    }
    if (kern.cols() == a.cols()) {
      // maximality certified: nothing in p outside a commutes with all of a
      MatrixXd kern_ambient = pbasis * kern;
      if (a.cols() > 0 && max_principal_angle(kern_ambient, a) > 1e-8)
        throw std::logic_error("maximal_abelian: kernel does not match accumulated subspace");
      return a;
    }
    // deterministic extension: first canonical p-direction with significant
    // component in kern minus span(a)
    bool extended = false;
    for (int j = 0; j < np && !extended; ++j) {
      VectorXd cand = kern * (kern.transpose() * VectorXd::Unit(np, j));  // project onto kernel
      VectorXd w = pbasis * cand;
      for (int i = 0; i < a.cols(); ++i) w -= a.col(i).dot(w) * a.col(i);
      if (w.norm() > 1e-6) {
        a.conservativeResize(Eigen::NoChange, a.cols() + 1);
        a.col(a.cols() - 1) = w / w.norm();
        extended = true;
      }
    }
    if (!extended) throw std::logic_error("maximal_abelian: failed to certify maximality");
  }
  throw std::logic_error("maximal_abelian: did not converge");
}

namespace detail {

inline VectorXd seed_direction(int rank, int attempt) {
  const double base = attempt == 0 ? M_PI : std::exp(1.0);
  VectorXd v(rank);
  double q = 1.0;
  for (int j = 0; j < rank; ++j) {
    v[j] = q;
    q /= base;
  }
  return v / v.norm();
}

// canonical eigenvector sign/order for reproducible fixtures
inline void canonicalize_columns(std::vector<VectorXd>& cols) {
  for (auto& u : cols) {
    for (int i = 0; i < u.size(); ++i) {
      if (std::abs(u[i]) > 1e-6) {
        if (u[i] < 0) u = -u;
        break;
      }
    }
  }
  std::sort(cols.begin(), cols.end(), [](const VectorXd& a, const VectorXd& b) {
    for (int i = 0; i < a.size(); ++i) {
      const double d = a[i] - b[i];
      if (std::abs(d) > 1e-8) return d > 0;
    }
    return false;
  });
}

}  // namespace detail

/// Simultaneous eigenspace decomposition of ad(a) acting on g; builds the
/// adapted x_i / y_i / p_i / k_i bases, distinct positive roots, simple roots.
inline RestrictedRootSystem restricted_roots(const LieAlgebraData& g, const MatrixXd& a_basis) {
  RestrictedRootSystem rs;
  rs.g = g;
  rs.a_basis = a_basis;
  rs.rank = static_cast<int>(a_basis.cols());
  const int r = rs.rank;
  const double scale = std::max(g.bracket_scale(), 1e-12);

  std::vector<MatrixXd> ad_a(r);
  for (int j = 0; j < r; ++j) ad_a[j] = g.ad(a_basis.col(j));

  const double cluster_tol = 1e-7;
  int attempt = 0;
  std::vector<std::pair<VectorXd, VectorXd>> eig;  // (alpha coords, vector in g)
  for (; attempt < 2; ++attempt) {
    eig.clear();
    rs.v0 = detail::seed_direction(r, attempt);
    MatrixXd m = MatrixXd::Zero(g.dim, g.dim);
    for (int j = 0; j < r; ++j) m += rs.v0[j] * ad_a[j];
    if (symmetry_residual(m) > 1e-9 * scale)
      throw std::logic_error("restricted_roots: ad(v0) not symmetric in B_theta basis");
    auto e = sym_eig(MatrixXd((m + m.transpose()) / 2.0));
    bool ok = true;
    for (int i = 0; i < g.dim && ok; ++i) {
      VectorXd u = e.vectors.col(i);
      VectorXd alpha(r);
      for (int j = 0; j < r; ++j) {
        alpha[j] = u.dot(ad_a[j] * u);
        if ((ad_a[j] * u - alpha[j] * u).norm() > cluster_tol * scale) ok = false;
      }
      eig.emplace_back(alpha, u);
    }
    if (ok) break;
  }
  if (attempt == 2)
    throw std::logic_error("restricted_roots: joint eigenvalue clustering ambiguous");

  // split zero-root space into a and k0
  std::vector<VectorXd> k0_cols;
  std::map<int, std::vector<VectorXd>> by_root;  // distinct positive root id -> x vectors
  std::vector<VectorXd> distinct_alphas;

  auto find_distinct = [&](const VectorXd& alpha) -> int {
    for (std::size_t i = 0; i < distinct_alphas.size(); ++i)
      if ((distinct_alphas[i] - alpha).norm() < 1e-6) return static_cast<int>(i);
    return -1;
  };

  std::vector<std::pair<VectorXd, VectorXd>> positive_vectors;
  for (auto& [alpha, u] : eig) {
    if (alpha.norm() < cluster_tol) {
      // g_0 = a + k_0; separate by involution eigenspace
      VectorXd up = (u - g.involution * u) / 2.0;  // p-part
      VectorXd uk = (u + g.involution * u) / 2.0;  // k-part
      if (uk.norm() > 1e-6) k0_cols.push_back(uk);
      continue;
    }
    if (alpha.dot(rs.v0) > 0) positive_vectors.emplace_back(alpha, u);
  }

  if (2 * positive_vectors.size() + k0_cols.size() + r != static_cast<std::size_t>(g.dim)) {
    // recount k0 via explicit kernel: vectors in k commuting with a
    MatrixXd stack(g.dim * r, g.dim);
    for (int j = 0; j < r; ++j) stack.middleRows(j * g.dim, g.dim) = ad_a[j];
    MatrixXd z = kernel_basis(stack, 1e-9);
    std::vector<VectorXd> cols;
    for (int i = 0; i < z.cols(); ++i) {
      VectorXd uk = (z.col(i) + g.involution * z.col(i)) / 2.0;
      if (uk.norm() > 1e-8) cols.push_back(uk);
    }
    k0_cols = cols;
  }

  // orthonormalize k0
  if (!k0_cols.empty()) {
    MatrixXd k0m(g.dim, k0_cols.size());
    for (std::size_t i = 0; i < k0_cols.size(); ++i) k0m.col(static_cast<int>(i)) = k0_cols[i];
    rs.k0_basis = orthonormalize(k0m);
  } else {
    rs.k0_basis = MatrixXd(g.dim, 0);
  }

  // group positive vectors into distinct roots
  for (auto& [alpha, u] : positive_vectors) {
    int id = find_distinct(alpha);
    if (id < 0) {
      id = static_cast<int>(distinct_alphas.size());
      distinct_alphas.push_back(alpha);
    }
    by_root[id].push_back(u);
  }

  // order distinct roots by (alpha(v0), lexicographic)
  std::vector<int> order(distinct_alphas.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int i, int j) {
    const double vi = distinct_alphas[i].dot(rs.v0), vj = distinct_alphas[j].dot(rs.v0);
    if (std::abs(vi - vj) > 1e-9) return vi < vj;
    for (int t = 0; t < r; ++t) {
      const double d = distinct_alphas[i][t] - distinct_alphas[j][t];
      if (std::abs(d) > 1e-9) return d < 0;
    }
    return false;
  });

  for (int oi : order) {
    DistinctRoot d;
    d.alpha = distinct_alphas[oi];
    const int new_id = static_cast<int>(rs.positive.size());

    // the eigenvectors span g_alpha + g_{-alpha} mixing? no: they are
    // eigenvectors of ad(v0) with eigenvalue alpha(v0) > 0, i.e. g_alpha itself
    auto vecs = by_root[oi];
    detail::canonicalize_columns(vecs);
    // deterministic Gram-Schmidt (B_theta = euclidean dot in these coordinates)
    std::vector<VectorXd> ortho;
    for (auto& v : vecs) {
      VectorXd w = v;
      for (int rep = 0; rep < 2; ++rep)
        for (auto& q : ortho) w -= q.dot(w) * q;
      if (w.norm() > 1e-8) ortho.push_back(w / w.norm());
    }
    for (auto& x : ortho) {
      RootVector rv;
      rv.alpha = d.alpha;
      rv.x = x;
      rv.y = g.involution * x;
      rv.p = (rv.x - rv.y) / std::sqrt(2.0);
      rv.k = (rv.x + rv.y) / std::sqrt(2.0);
      rv.distinct_id = new_id;
      d.members.push_back(static_cast<int>(rs.roots.size()));
      rs.roots.push_back(std::move(rv));
    }
    rs.positive.push_back(std::move(d));
  }

  // validate the decomposition
  for (const auto& rv : rs.roots) {
    for (int j = 0; j < r; ++j) {
      const double res = (ad_a[j] * rv.x - rv.alpha[j] * rv.x).norm();
      if (res > 1e-8 * scale) throw std::logic_error("restricted_roots: [v, x] != alpha(v) x");
    }
    VectorXd xy = g.bracket(rv.x, rv.y);
    VectorXd dual = rs.root_dual(rv.alpha);
    if ((xy + dual).norm() > 1e-8 * scale)
      throw std::logic_error("restricted_roots: [x_i, y_i] != -alpha^#");
  }

  // simple roots: alpha simple iff it is not a sum of two positive roots
  const std::size_t npos = rs.positive.size();
  for (std::size_t i = 0; i < npos; ++i) {
    bool is_sum = false;
    for (std::size_t b = 0; b < npos && !is_sum; ++b)
      for (std::size_t c = b; c < npos && !is_sum; ++c)
        if ((rs.positive[b].alpha + rs.positive[c].alpha - rs.positive[i].alpha).norm() < 1e-7)
          is_sum = true;
    if (!is_sum) rs.simple.push_back(static_cast<int>(i));
  }
  if (static_cast<int>(rs.simple.size()) != r)
    throw std::logic_error("restricted_roots: simple root count != rank");

  // nonnegative-integer coefficients of every positive root over the simple roots
  MatrixXd sb(r, r);
  for (int j = 0; j < r; ++j) sb.col(j) = rs.positive[rs.simple[j]].alpha;
  Eigen::ColPivHouseholderQR<MatrixXd> qr(sb);
  rs.simple_coeffs.resize(npos, r);
  for (std::size_t i = 0; i < npos; ++i) {
    VectorXd co = qr.solve(rs.positive[i].alpha);
    for (int j = 0; j < r; ++j) {
      const double rounded = std::round(co[j]);
      if (std::abs(co[j] - rounded) > 1e-6 || rounded < -1e-9)
        throw std::logic_error("restricted_roots: root is not a nonneg integer combination");
      rs.simple_coeffs(static_cast<int>(i), j) = rounded;
    }
  }
  return rs;
}

inline RestrictedRootSystem restricted_roots(const LieAlgebraData& g) {
  return restricted_roots(g, maximal_abelian(g));
}

/// All 2^rank walls, ordered by subset bitmask.
inline std::vector<WallDecomposition> enumerate_walls(const RestrictedRootSystem& rs) {
  const int r = rs.rank;
  std::vector<WallDecomposition> walls;
  for (unsigned mask = 0; mask < (1u << r); ++mask) {
    WallDecomposition w;
    for (int j = 0; j < r; ++j)
      if (mask & (1u << j)) w.wall_key.push_back(j);
    for (std::size_t i = 0; i < rs.positive.size(); ++i) {
      bool in_span = true;
      for (int j = 0; j < r; ++j)
        if (rs.simple_coeffs(static_cast<int>(i), j) > 0.5 && !(mask & (1u << j)))
          in_span = false;
      auto& dst = in_span ? w.ov_distinct : w.un_distinct;
      dst.push_back(static_cast<int>(i));
      auto& mem = in_span ? w.ov_members : w.un_members;
      for (int m : rs.positive[i].members) mem.push_back(m);
    }
    MatrixXd duals(r, w.wall_key.size());
    for (std::size_t j = 0; j < w.wall_key.size(); ++j)
      duals.col(static_cast<int>(j)) = rs.positive[rs.simple[w.wall_key[j]]].alpha;
    w.ov_a = orthonormalize(duals);
    // orthocomplement in a-coordinates
    MatrixXd proj = MatrixXd::Identity(r, r) - w.ov_a * w.ov_a.transpose();
    w.un_a = orthonormalize(proj, 1e-8);
    walls.push_back(std::move(w));
  }
  return walls;
}

/// Structure constants of the nilpotent algebra n in the graded orthonormal
/// x-basis, plus the root covectors (with their Gram data).
struct NilpotentData {
  int n_dim = 0;
  std::vector<MatrixXd> t;           // t[k](i,j) = T^k_{ij}
  std::vector<VectorXd> alphas;      // per x-index, coordinates with orthonormal Gram
  std::string label;

  double t_scale() const {
    double s = 0.0;
    for (const auto& m : t) s = std::max(s, m.cwiseAbs().maxCoeff());
    return s;
  }
  double gram(int a, int b) const { return alphas[a].dot(alphas[b]); }
};

inline double nilpotency_residual(const NilpotentData& nd) {
  const int m = nd.n_dim;
  double res = 0.0;
  for (int i = 0; i < m; ++i) {
    double tr = 0.0;
    for (int l = 0; l < m; ++l) tr += nd.t[l](i, l);
    res = std::max(res, std::abs(tr));
  }
  for (int i = 0; i < m; ++i)
    for (int ip = 0; ip < m; ++ip) {
      double s = 0.0;
      for (int j = 0; j < m; ++j)
        for (int k = 0; k < m; ++k) s += nd.t[k](i, j) * nd.t[j](ip, k);
      res = std::max(res, std::abs(s));
    }
  return res;
}

inline NilpotentData nilpotent_structure(const RestrictedRootSystem& rs) {
  NilpotentData nd;
  const int m = rs.n_minus_r();
  nd.n_dim = m;
  nd.label = rs.g.label;
  nd.t.assign(m, MatrixXd::Zero(m, m));
  const double scale = std::max(rs.g.bracket_scale(), 1e-12);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      VectorXd br = rs.g.bracket(rs.roots[i].x, rs.roots[j].x);
      VectorXd resid = br;
      for (int k = 0; k < m; ++k) {
        const double c = rs.roots[k].x.dot(br);  // (.,.) = B_theta = dot here
        nd.t[k](i, j) = c;
        resid -= c * rs.roots[k].x;
      }
      if (resid.norm() > 1e-8 * scale)
        throw std::logic_error("nilpotent_structure: [n,n] leaks outside n");
    }
  for (int i = 0; i < m; ++i) nd.alphas.push_back(rs.roots[i].alpha);
  if (nilpotency_residual(nd) > 1e-8 * std::max(nd.t_scale(), 1.0))
    throw std::logic_error("nilpotent_structure: nilpotency identities violated");
  return nd;
}

enum class DivisionKind { R, C, H, O };

/// Standalone nilpotent model n = K^{n-1} + im K with [v,w] = 2 im (v,w).
/// alpha_sq is |alpha^#|^2; the default reproduces the Killing half-identity
/// sum_l alpha_l(u)^2 = 1/2, matching the matrix models.
inline NilpotentData build_division_algebra_nilpotent(DivisionKind kind, int n,
                                                      double alpha_sq = -1.0) {
  if (n < 2) throw std::invalid_argument("division model: need n >= 2");
  if (kind == DivisionKind::O && n != 2)
    throw std::invalid_argument("octonionic model exists only for n = 2");
  const int dk = kind == DivisionKind::R ? 1 : kind == DivisionKind::C ? 2
                 : kind == DivisionKind::H                             ? 4
                                                                       : 8;
  const int m_alpha = dk * (n - 1);
  const int m_2alpha = dk - 1;
  if (alpha_sq <= 0.0) alpha_sq = 1.0 / (2.0 * (m_alpha + 4.0 * m_2alpha));
  const double a = std::sqrt(alpha_sq);

  // octonion multiplication table for the imaginary units e1..e7 (Cayley-Dickson
  // from quaternions); the R/C/H cases are the obvious subtables.
  static const int fano[7][3] = {{1, 2, 3}, {1, 4, 5}, {1, 7, 6}, {2, 4, 6},
                                 {2, 5, 7}, {3, 4, 7}, {3, 6, 5}};
  auto mult = [&](int i, int j) -> std::pair<double, int> {
    // returns (sign, index) with e_i e_j = sign * e_index; index 0 = real unit
    if (i == 0) return {1.0, j};
    if (j == 0) return {1.0, i};
    if (i == j) return {-1.0, 0};
    for (const auto& f : fano) {
      if (f[0] == i && f[1] == j) return {1.0, f[2]};
      if (f[1] == j && f[2] == i) return {1.0, f[0]};  // unused branch guard
    }
    // full antisymmetric lookup over the 7 oriented triples
    for (const auto& f : fano) {
      const int x = f[0], y = f[1], z = f[2];
      if (i == x && j == y) return {1.0, z};
      if (i == y && j == z) return {1.0, x};
      if (i == z && j == x) return {1.0, y};
      if (i == y && j == x) return {-1.0, z};
      if (i == z && j == y) return {-1.0, x};
      if (i == x && j == z) return {-1.0, y};
    }
    throw std::logic_error("octonion table lookup failed");
  };

  NilpotentData nd;
  nd.n_dim = m_alpha + m_2alpha;
  nd.label = std::string("division(") + "RCHO"[static_cast<int>(kind)] + "," +
             std::to_string(n) + ")";
  nd.t.assign(nd.n_dim, MatrixXd::Zero(nd.n_dim, nd.n_dim));

  // g_alpha basis: slot s = 0..n-2, unit d = 0..dk-1  -> index s*dk + d
  // g_2alpha basis: unit c = 1..dk-1 -> index m_alpha + (c-1)
  // bracket [e_s u_d, e_s u_e] = 2 im(conj(u_d) u_e); the T normalization
  // sqrt(2)*a matches the su/sp matrix models.
  const double tval = std::sqrt(2.0) * a;
  for (int s = 0; s < n - 1; ++s)
    for (int d = 0; d < dk; ++d)
      for (int e = 0; e < dk; ++e) {
        if (d == e) continue;
        // conj(u_d) u_e: conj flips sign of imaginary units
        const double cs = (d == 0) ? 1.0 : -1.0;
        auto [sgn, idx] = mult(d, e);
        const double coeff = cs * sgn;
        if (idx == 0) continue;  // real part does not contribute to im
        nd.t[m_alpha + idx - 1](s * dk + d, s * dk + e) = tval * coeff;
      }
  for (int i = 0; i < m_alpha; ++i) nd.alphas.push_back(VectorXd::Constant(1, a));
  for (int i = 0; i < m_2alpha; ++i) nd.alphas.push_back(VectorXd::Constant(1, 2.0 * a));
  if (nilpotency_residual(nd) > 1e-9 * std::max(nd.t_scale(), 1.0))
    throw std::logic_error("division model: nilpotency identities violated");
  return nd;
}

/// Sorted singular values of the bracket map  Lambda^2 g_alpha -> g_{2alpha};
/// isomorphism invariant used to cross-check the division-algebra models.
inline VectorXd grade_bracket_singular_values(const NilpotentData& nd) {
  std::vector<int> ga, g2a;
  double amin = std::numeric_limits<double>::infinity();
  for (const auto& al : nd.alphas) amin = std::min(amin, al.norm());
  for (int i = 0; i < nd.n_dim; ++i)
    (std::abs(nd.alphas[i].norm() - amin) < 1e-9 ? ga : g2a).push_back(i);
  const int na = static_cast<int>(ga.size());
  std::vector<std::pair<int, int>> pairs;
  for (int i = 0; i < na; ++i)
    for (int j = i + 1; j < na; ++j) pairs.emplace_back(ga[i], ga[j]);
  if (g2a.empty() || pairs.empty()) return VectorXd::Zero(0);
  MatrixXd m(g2a.size(), pairs.size());
  for (std::size_t c = 0; c < pairs.size(); ++c)
    for (std::size_t r = 0; r < g2a.size(); ++r)
      m(static_cast<int>(r), static_cast<int>(c)) = nd.t[g2a[r]](pairs[c].first, pairs[c].second);
  Eigen::JacobiSVD<MatrixXd> svd(m);
  VectorXd sv = svd.singularValues();
  std::sort(sv.data(), sv.data() + sv.size());
  return sv;
}

}  // namespace symspace
