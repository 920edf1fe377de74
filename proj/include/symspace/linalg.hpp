#pragma once

#include <Eigen/Dense>
#include <unsupported/Eigen/MatrixFunctions>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace symspace {

using Eigen::MatrixXd;
using Eigen::VectorXd;

struct SymEig {
  VectorXd values;   // ascending
  MatrixXd vectors;  // columns, same order
};

inline double offdiag_norm(const MatrixXd& a) {
  double s = 0.0;
  for (int p = 0; p < a.rows(); ++p)
    for (int q = p + 1; q < a.cols(); ++q) s += 2.0 * a(p, q) * a(p, q);
  return std::sqrt(s);
}

/// Cyclic Jacobi diagonalization of a symmetric matrix. Deterministic:
/// fixed sweep order, off-diagonal threshold 1e-12 * ||M||_F.
inline SymEig sym_eig(MatrixXd a) {
  const int n = static_cast<int>(a.rows());
  if (a.cols() != n) throw std::invalid_argument("sym_eig: matrix not square");
  MatrixXd v = MatrixXd::Identity(n, n);
  const double scale = a.norm();
  if (scale > 0.0) {
    const double tol = 1e-12 * scale;
    for (int sweep = 0; sweep < 100 && offdiag_norm(a) > tol; ++sweep) {
      for (int p = 0; p < n - 1; ++p) {
        for (int q = p + 1; q < n; ++q) {
          const double apq = a(p, q);
          if (std::abs(apq) <= tol / (n * n)) continue;
          const double tau = (a(q, q) - a(p, p)) / (2.0 * apq);
          const double t = (tau >= 0.0 ? 1.0 : -1.0) /
                           (std::abs(tau) + std::sqrt(1.0 + tau * tau));
          const double c = 1.0 / std::sqrt(1.0 + t * t);
          const double s = t * c;
          for (int k = 0; k < n; ++k) {
            const double akp = a(k, p), akq = a(k, q);
            a(k, p) = c * akp - s * akq;
            a(k, q) = s * akp + c * akq;
          }
          for (int k = 0; k < n; ++k) {
            const double apk = a(p, k), aqk = a(q, k);
            a(p, k) = c * apk - s * aqk;
            a(q, k) = s * apk + c * aqk;
          }
          for (int k = 0; k < n; ++k) {
            const double vkp = v(k, p), vkq = v(k, q);
            v(k, p) = c * vkp - s * vkq;
            v(k, q) = s * vkp + c * vkq;
          }
        }
      }
    }
  }
  std::vector<int> idx(n);
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(),
                   [&](int i, int j) { return a(i, i) < a(j, j); });
  SymEig out;
  out.values.resize(n);
  out.vectors.resize(n, n);
  for (int i = 0; i < n; ++i) {
    out.values[i] = a(idx[i], idx[i]);
    out.vectors.col(i) = v.col(idx[i]);
  }
  return out;
}

inline double min_eig(const MatrixXd& a) { return sym_eig(a).values[0]; }
inline double max_eig(const MatrixXd& a) {
  auto e = sym_eig(a);
  return e.values[e.values.size() - 1];
}

/// Orthonormal basis of the (numerical) kernel via SVD; singular values
/// below rel_tol * sigma_max count as zero.
inline MatrixXd kernel_basis(const MatrixXd& m, double rel_tol = 1e-8) {
  if (m.rows() == 0)  // no constraints: kernel is everything
    return MatrixXd::Identity(m.cols(), m.cols());
  Eigen::JacobiSVD<MatrixXd> svd(m, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  const double smax = sv.size() > 0 ? sv[0] : 0.0;
  const int nsv = static_cast<int>(sv.size());
  int rank = 0;
  for (int i = 0; i < nsv; ++i)
    if (sv[i] > rel_tol * smax) ++rank;
  if (smax == 0.0) rank = 0;
  return svd.matrixV().rightCols(m.cols() - rank);
}

/// Orthonormalize the columns of a (thin QR), dropping near-dependent ones.
inline MatrixXd orthonormalize(const MatrixXd& a, double tol = 1e-10) {
  MatrixXd q(a.rows(), a.cols());
  int k = 0;
  for (int j = 0; j < a.cols(); ++j) {
    VectorXd w = a.col(j);
    for (int rep = 0; rep < 2; ++rep)
      for (int i = 0; i < k; ++i) w -= q.col(i).dot(w) * q.col(i);
    const double nw = w.norm();
    if (nw > tol * (a.col(j).norm() + 1.0)) q.col(k++) = w / nw;
  }
  return q.leftCols(k);
}

/// Largest principal angle (radians) between the column spans of a and b.
/// Sine-based formulation, accurate near zero.
inline double max_principal_angle(const MatrixXd& a, const MatrixXd& b) {
  MatrixXd qa = orthonormalize(a), qb = orthonormalize(b);
  if (qa.cols() != qb.cols()) return M_PI / 2.0;
  if (qa.cols() == 0) return 0.0;
  MatrixXd resid = qb - qa * (qa.transpose() * qb);
  Eigen::JacobiSVD<MatrixXd> svd(resid);
  const double smax = svd.singularValues().maxCoeff();
  return std::asin(std::clamp(smax, 0.0, 1.0));
}

inline MatrixXd matrix_exp(const MatrixXd& a) { return a.exp(); }

inline double symmetry_residual(const MatrixXd& a) {
  return (a - a.transpose()).cwiseAbs().maxCoeff();
}

}  // namespace symspace
