#pragma once

#include <optional>
#include <string>
#include <utility>

#include "symspace/linalg.hpp"

namespace symspace {

/// Real semisimple Lie algebra of noncompact type in a basis adapted to
/// g = p (+) k, orthonormal for B_theta(x,y) = -<x, sigma y>.  The internal
/// metric is always the Killing form; unit-root rescaling happens only at
/// reporting time.
struct LieAlgebraData {
  int dim = 0;
  std::vector<MatrixXd> adj;  // adj[i](k,j) = C[i][j][k], [e_i,e_j] = sum_k C[i][j][k] e_k
  MatrixXd killing;           // <e_i, e_j>
  MatrixXd involution;        // sigma (diagonal +-1 in the adapted basis)
  std::vector<int> p_indices;
  std::vector<int> k_indices;
  std::string label;
  std::vector<MatrixXd> rep;  // defining matrix basis; empty after deserialization

  int p_dim() const { return static_cast<int>(p_indices.size()); }
  int k_dim() const { return static_cast<int>(k_indices.size()); }

  double c(int i, int j, int k) const { return adj[i](k, j); }

  MatrixXd ad(const VectorXd& v) const {
    MatrixXd m = MatrixXd::Zero(dim, dim);
    for (int i = 0; i < dim; ++i)
      if (v[i] != 0.0) m += v[i] * adj[i];
    return m;
  }

  VectorXd bracket(const VectorXd& x, const VectorXd& y) const {
    VectorXd out = VectorXd::Zero(dim);
    for (int i = 0; i < dim; ++i)
      if (x[i] != 0.0) out.noalias() += x[i] * (adj[i] * y);
    return out;
  }

  double bracket_scale() const {
    double s = 0.0;
    for (const auto& m : adj) s = std::max(s, m.cwiseAbs().maxCoeff());
    return s;
  }
};

struct AlgebraDiagnostics {
  double scale = 0.0;
  double antisymmetry = 0.0;
  double jacobi = 0.0;
  double involution_square = 0.0;
  double involution_automorphism = 0.0;
  double killing_ad_invariance = 0.0;
  double killing_pk_orthogonality = 0.0;
  double btheta_orthonormality = 0.0;
  double killing_p_min_eig = 0.0;  // want > 0
  double killing_k_max_eig = 0.0;  // want < 0
  bool pass = false;
};

/// Residuals of every structural invariant, pass flag at tolerance
/// tol * bracket_scale.
inline AlgebraDiagnostics check_algebra(const LieAlgebraData& g, double tol = 1e-9) {
  AlgebraDiagnostics d;
  const int n = g.dim;
  d.scale = std::max(g.bracket_scale(), 1.0);

  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        d.antisymmetry = std::max(d.antisymmetry, std::abs(g.c(i, j, k) + g.c(j, i, k)));

  // Jacobi: [[e_i,e_j],e_k] + [[e_j,e_k],e_i] + [[e_k,e_i],e_j] = 0
  std::vector<VectorXd> basis(n);
  for (int i = 0; i < n; ++i) basis[i] = VectorXd::Unit(n, i);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      VectorXd bij = g.adj[i] * basis[j];
      for (int k = j + 1; k < n; ++k) {
        VectorXd r = g.bracket(bij, basis[k]) + g.bracket(g.adj[j] * basis[k], basis[i]) +
                     g.bracket(g.adj[k] * basis[i], basis[j]);
        d.jacobi = std::max(d.jacobi, r.cwiseAbs().maxCoeff());
      }
    }

  const MatrixXd& s = g.involution;
  d.involution_square = (s * s - MatrixXd::Identity(n, n)).cwiseAbs().maxCoeff();
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      VectorXd r = s * g.bracket(basis[i], basis[j]) - g.bracket(s * basis[i], s * basis[j]);
      d.involution_automorphism = std::max(d.involution_automorphism, r.cwiseAbs().maxCoeff());
    }

  // <[x,y],z> + <y,[x,z]> = 0
  for (int i = 0; i < n; ++i) {
    MatrixXd m = g.adj[i].transpose() * g.killing + g.killing * g.adj[i];
    d.killing_ad_invariance = std::max(d.killing_ad_invariance, m.cwiseAbs().maxCoeff());
  }

  for (int ip : g.p_indices)
    for (int ik : g.k_indices)
      d.killing_pk_orthogonality =
          std::max(d.killing_pk_orthogonality, std::abs(g.killing(ip, ik)));

  MatrixXd btheta = -g.killing * s;
  d.btheta_orthonormality = (btheta - MatrixXd::Identity(n, n)).cwiseAbs().maxCoeff();

  const int np = g.p_dim(), nk = g.k_dim();
  if (np > 0) {
    MatrixXd kp(np, np);
    for (int a = 0; a < np; ++a)
      for (int b = 0; b < np; ++b) kp(a, b) = g.killing(g.p_indices[a], g.p_indices[b]);
    d.killing_p_min_eig = min_eig(kp);
  }
  if (nk > 0) {
    MatrixXd kk(nk, nk);
    for (int a = 0; a < nk; ++a)
      for (int b = 0; b < nk; ++b) kk(a, b) = g.killing(g.k_indices[a], g.k_indices[b]);
    d.killing_k_max_eig = max_eig(kk);
  }

  const double t = tol * d.scale;
  d.pass = d.antisymmetry <= t && d.jacobi <= t && d.involution_square <= t &&
           d.involution_automorphism <= t && d.killing_ad_invariance <= t &&
           d.killing_pk_orthogonality <= t && d.btheta_orthonormality <= t &&
           d.killing_p_min_eig > 0.0 && (nk == 0 || d.killing_k_max_eig < 0.0);
  return d;
}

namespace detail {

// Expand matrices in a given matrix basis by least squares; residual must
// vanish (closure of the bracket).
class RepExpander {
 public:
  explicit RepExpander(const std::vector<MatrixXd>& basis) {
    const int nn = static_cast<int>(basis[0].size());
    MatrixXd b(nn, basis.size());
    for (std::size_t i = 0; i < basis.size(); ++i)
      b.col(static_cast<int>(i)) = Eigen::Map<const VectorXd>(basis[i].data(), nn);
    qr_.compute(b);
    b_ = b;
  }

  VectorXd coords(const MatrixXd& m, double tol = 1e-9) const {
    VectorXd rhs = Eigen::Map<const VectorXd>(m.data(), m.size());
    VectorXd x = qr_.solve(rhs);
    double res = (b_ * x - rhs).norm();
    if (res > tol * (1.0 + rhs.norm()))
      throw std::logic_error("matrix basis is not closed under the bracket");
    return x;
  }

 private:
  MatrixXd b_;
  Eigen::ColPivHouseholderQR<MatrixXd> qr_;
};

// Build adapted LieAlgebraData from a defining matrix basis on which the
// Cartan involution is X -> -X^T (every basis element symmetric or
// antisymmetric). Orthonormalizes p first, then k, under B_theta.
inline LieAlgebraData build_from_rep(std::vector<MatrixXd> rep, const std::string& label) {
  const int dim = static_cast<int>(rep.size());
  std::vector<int> p_raw, k_raw;
  for (int i = 0; i < dim; ++i) {
    const double sym = (rep[i] - rep[i].transpose()).cwiseAbs().maxCoeff();
    const double asym = (rep[i] + rep[i].transpose()).cwiseAbs().maxCoeff();
    if (sym < 1e-12)
      p_raw.push_back(i);
    else if (asym < 1e-12)
      k_raw.push_back(i);
    else
      throw std::logic_error("rep basis element neither symmetric nor antisymmetric");
  }

  // canonical order: p first
  std::vector<MatrixXd> ordered;
  ordered.reserve(dim);
  for (int i : p_raw) ordered.push_back(rep[i]);
  for (int i : k_raw) ordered.push_back(rep[i]);
  const int np = static_cast<int>(p_raw.size());

  RepExpander expand(ordered);
  std::vector<MatrixXd> adj0(dim, MatrixXd::Zero(dim, dim));
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) {
      if (i == j) continue;
      MatrixXd br = ordered[i] * ordered[j] - ordered[j] * ordered[i];
      adj0[i].col(j) = expand.coords(br);
    }

  MatrixXd killing0(dim, dim);
  for (int i = 0; i < dim; ++i)
    for (int j = i; j < dim; ++j)
      killing0(i, j) = killing0(j, i) = (adj0[i] * adj0[j]).trace();

  // B_theta in the ordered basis: -K(x, sigma y), sigma = -1 on p, +1 on k
  MatrixXd btheta0 = killing0;
  for (int j = 0; j < dim; ++j)
    if (j >= np) btheta0.col(j) *= -1.0;

  // Gram-Schmidt under B_theta, p block then k block, canonical order.
  MatrixXd s = MatrixXd::Zero(dim, dim);
  int col = 0;
  auto gs_block = [&](int lo, int hi) {
    for (int j = lo; j < hi; ++j) {
      VectorXd w = VectorXd::Unit(dim, j);
      for (int rep2 = 0; rep2 < 2; ++rep2)
        for (int i0 = lo; i0 < col; ++i0) {
          double pr = s.col(i0).dot(btheta0 * w);
          w -= pr * s.col(i0);
        }
      double nw = std::sqrt(w.dot(btheta0 * w));
      if (!(nw > 1e-10)) throw std::logic_error("degenerate B_theta metric");
      s.col(col++) = w / nw;
    }
  };
  gs_block(0, np);
  gs_block(np, dim);

  MatrixXd sinv = s.inverse();
  LieAlgebraData g;
  g.dim = dim;
  g.label = label;
  g.adj.assign(dim, MatrixXd::Zero(dim, dim));
  for (int a = 0; a < dim; ++a) {
    MatrixXd ada = MatrixXd::Zero(dim, dim);
    for (int m = 0; m < dim; ++m)
      if (s(m, a) != 0.0) ada += s(m, a) * adj0[m];
    g.adj[a] = sinv * ada * s;
  }
  g.killing.resize(dim, dim);
  for (int a = 0; a < dim; ++a)
    for (int b = a; b < dim; ++b)
      g.killing(a, b) = g.killing(b, a) = (g.adj[a] * g.adj[b]).trace();
  g.involution = MatrixXd::Identity(dim, dim);
  for (int a = 0; a < np; ++a) g.involution(a, a) = -1.0;
  for (int a = 0; a < np; ++a) g.p_indices.push_back(a);
  for (int a = np; a < dim; ++a) g.k_indices.push_back(a);
  g.rep.resize(dim);
  for (int a = 0; a < dim; ++a) {
    MatrixXd m = MatrixXd::Zero(ordered[0].rows(), ordered[0].cols());
    for (int m0 = 0; m0 < dim; ++m0)
      if (s(m0, a) != 0.0) m += s(m0, a) * ordered[m0];
    g.rep[a] = m;
  }

  auto diag = check_algebra(g);
  if (!diag.pass) throw std::logic_error("constructed algebra failed invariant checks: " + label);
  return g;
}

inline MatrixXd realify_complex(const Eigen::MatrixXcd& m) {
  const int n = static_cast<int>(m.rows());
  MatrixXd r(2 * n, 2 * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const double a = m(i, j).real(), b = m(i, j).imag();
      r(2 * i, 2 * j) = a;
      r(2 * i, 2 * j + 1) = -b;
      r(2 * i + 1, 2 * j) = b;
      r(2 * i + 1, 2 * j + 1) = a;
    }
  return r;
}

// quaternion q = (a,b,c,d) = a + bi + cj + dk as real 4x4 left-multiplication
inline Eigen::Matrix4d quat_block(double a, double b, double c, double d) {
  Eigen::Matrix4d m;
  m << a, -b, -c, -d,
       b,  a, -d,  c,
       c,  d,  a, -b,
       d, -c,  b,  a;
  return m;
}

inline MatrixXd realify_quaternion(const std::vector<std::vector<Eigen::Vector4d>>& m) {
  const int n = static_cast<int>(m.size());
  MatrixXd r(4 * n, 4 * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      r.block<4, 4>(4 * i, 4 * j) = quat_block(m[i][j][0], m[i][j][1], m[i][j][2], m[i][j][3]);
  return r;
}

}  // namespace detail

/// so(n,1), the isometry algebra of real hyperbolic n-space.
inline LieAlgebraData build_so(int n) {
  if (n < 2) throw std::invalid_argument("build_so: need n >= 2");
  const int sz = n + 1;
  std::vector<MatrixXd> rep;
  for (int a = 0; a < n; ++a) {  // boosts: p
    MatrixXd m = MatrixXd::Zero(sz, sz);
    m(a, n) = m(n, a) = 1.0;
    rep.push_back(m);
  }
  for (int a = 0; a < n; ++a)  // rotations: k
    for (int b = a + 1; b < n; ++b) {
      MatrixXd m = MatrixXd::Zero(sz, sz);
      m(a, b) = 1.0;
      m(b, a) = -1.0;
      rep.push_back(m);
    }
  return detail::build_from_rep(std::move(rep), "so(" + std::to_string(n) + ",1)");
}

/// su(n,1) realified; model of complex hyperbolic space CH^{2n}.
inline LieAlgebraData build_su(int n) {
  if (n < 2) throw std::invalid_argument("build_su: need n >= 2");
  const int sz = n + 1;
  using CMat = Eigen::MatrixXcd;
  const std::complex<double> I(0.0, 1.0);
  std::vector<MatrixXd> rep;
  // p: hermitian
  for (int a = 0; a < n; ++a) {
    CMat m = CMat::Zero(sz, sz);
    m(a, n) = 1.0;
    m(n, a) = 1.0;
    rep.push_back(detail::realify_complex(m));
    CMat m2 = CMat::Zero(sz, sz);
    m2(a, n) = I;
    m2(n, a) = -I;
    rep.push_back(detail::realify_complex(m2));
  }
  // k: antihermitian
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b) {
      CMat m = CMat::Zero(sz, sz);
      m(a, b) = 1.0;
      m(b, a) = -1.0;
      rep.push_back(detail::realify_complex(m));
      CMat m2 = CMat::Zero(sz, sz);
      m2(a, b) = I;
      m2(b, a) = I;
      rep.push_back(detail::realify_complex(m2));
    }
  for (int a = 0; a < n; ++a) {
    CMat m = CMat::Zero(sz, sz);
    m(a, a) = I;
    m(n, n) = -I;
    rep.push_back(detail::realify_complex(m));
  }
  return detail::build_from_rep(std::move(rep), "su(" + std::to_string(n) + ",1)");
}

/// sp(n,1) realified via 4x4 quaternion blocks; model of HH^{4n}.
inline LieAlgebraData build_sp(int n) {
  if (n < 2) throw std::invalid_argument("build_sp: need n >= 2");
  const int sz = n + 1;
  using QMat = std::vector<std::vector<Eigen::Vector4d>>;
  auto zero = [&] {
    return QMat(sz, std::vector<Eigen::Vector4d>(sz, Eigen::Vector4d::Zero()));
  };
  auto unit = [](int c) {
    Eigen::Vector4d q = Eigen::Vector4d::Zero();
    q[c] = 1.0;
    return q;
  };
  auto conj = [](const Eigen::Vector4d& q) {
    return Eigen::Vector4d(q[0], -q[1], -q[2], -q[3]);
  };
  std::vector<MatrixXd> rep;
  // p: X_{a,n} = q, X_{n,a} = conj(q)
  for (int a = 0; a < n; ++a)
    for (int c = 0; c < 4; ++c) {
      QMat m = zero();
      m[a][n] = unit(c);
      m[n][a] = conj(unit(c));
      rep.push_back(detail::realify_quaternion(m));
    }
  // k: imaginary diagonal
  for (int a = 0; a < sz; ++a)
    for (int c = 1; c < 4; ++c) {
      QMat m = zero();
      m[a][a] = unit(c);
      rep.push_back(detail::realify_quaternion(m));
    }
  // k: compact off-diagonal pairs a<b<=n-1: X_{ab} = q, X_{ba} = -conj(q)
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b)
      for (int c = 0; c < 4; ++c) {
        QMat m = zero();
        m[a][b] = unit(c);
        m[b][a] = -conj(unit(c));
        rep.push_back(detail::realify_quaternion(m));
      }
  return detail::build_from_rep(std::move(rep), "sp(" + std::to_string(n) + ",1)");
}

/// sl(n,R), model of SL(n)/SO(n).
inline LieAlgebraData build_sl(int n) {
  if (n < 3) throw std::invalid_argument("build_sl: need n >= 3");
  std::vector<MatrixXd> rep;
  // p: traceless diagonal + symmetric off-diagonal
  for (int a = 0; a < n - 1; ++a) {
    MatrixXd m = MatrixXd::Zero(n, n);
    m(a, a) = 1.0;
    m(a + 1, a + 1) = -1.0;
    rep.push_back(m);
  }
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b) {
      MatrixXd m = MatrixXd::Zero(n, n);
      m(a, b) = m(b, a) = 1.0;
      rep.push_back(m);
    }
  // k: antisymmetric
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b) {
      MatrixXd m = MatrixXd::Zero(n, n);
      m(a, b) = 1.0;
      m(b, a) = -1.0;
      rep.push_back(m);
    }
  return detail::build_from_rep(std::move(rep), "sl(" + std::to_string(n) + ")");
}

/// Block-diagonal direct sum; de Rham construction in reverse.
inline LieAlgebraData direct_sum(const LieAlgebraData& a, const LieAlgebraData& b) {
  LieAlgebraData g;
  g.dim = a.dim + b.dim;
  g.label = a.label + "+" + b.label;
  g.adj.assign(g.dim, MatrixXd::Zero(g.dim, g.dim));
  for (int i = 0; i < a.dim; ++i) g.adj[i].topLeftCorner(a.dim, a.dim) = a.adj[i];
  for (int i = 0; i < b.dim; ++i)
    g.adj[a.dim + i].bottomRightCorner(b.dim, b.dim) = b.adj[i];
  g.killing = MatrixXd::Zero(g.dim, g.dim);
  g.killing.topLeftCorner(a.dim, a.dim) = a.killing;
  g.killing.bottomRightCorner(b.dim, b.dim) = b.killing;
  g.involution = MatrixXd::Zero(g.dim, g.dim);
  g.involution.topLeftCorner(a.dim, a.dim) = a.involution;
  g.involution.bottomRightCorner(b.dim, b.dim) = b.involution;
  g.p_indices = a.p_indices;
  for (int i : b.p_indices) g.p_indices.push_back(a.dim + i);
  g.k_indices = a.k_indices;
  for (int i : b.k_indices) g.k_indices.push_back(a.dim + i);
  if (!a.rep.empty() && !b.rep.empty()) {
    const int ra = static_cast<int>(a.rep[0].rows()), rb = static_cast<int>(b.rep[0].rows());
    for (int i = 0; i < a.dim; ++i) {
      MatrixXd m = MatrixXd::Zero(ra + rb, ra + rb);
      m.topLeftCorner(ra, ra) = a.rep[i];
      g.rep.push_back(m);
    }
    for (int i = 0; i < b.dim; ++i) {
      MatrixXd m = MatrixXd::Zero(ra + rb, ra + rb);
      m.bottomRightCorner(rb, rb) = b.rep[i];
      g.rep.push_back(m);
    }
  }
  return g;
}

/// Relative spread of killing(i,j) / tr(rep_i rep_j) over basis pairs where
/// the trace form is nonzero.  Near zero only for simple algebras, where the
/// Killing form is a single multiple of the defining trace form.
inline double killing_trace_form_deviation(const LieAlgebraData& g) {
  if (g.rep.empty()) throw std::invalid_argument("no defining representation stored");
  double lo = 0.0, hi = 0.0;
  bool first = true;
  for (int i = 0; i < g.dim; ++i)
    for (int j = i; j < g.dim; ++j) {
      const double t = (g.rep[i] * g.rep[j]).trace();
      const double kf = g.killing(i, j);
      if (std::abs(t) < 1e-8 && std::abs(kf) < 1e-8) continue;
      if (std::abs(t) < 1e-8) return 1.0;
      const double r = kf / t;
      if (first) {
        lo = hi = r;
        first = false;
      } else {
        lo = std::min(lo, r);
        hi = std::max(hi, r);
      }
    }
  if (first) return 1.0;
  return (hi - lo) / std::max(std::abs(hi), 1e-300);
}

}  // namespace symspace
