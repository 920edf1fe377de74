#pragma once

#include <quadmath.h>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <random>

#include "symspace/root_system.hpp"

namespace symspace {

/// Geodesic-ball volume V(r) = V0 * int_0^r prod sinh(alpha_i r') dr' for a
/// rank-1 space with the given root values (curvature scale included in the
/// alphas).  V0 defaults to the unit-sphere area of S^{n-1}, n = #alphas + 1.
inline double ball_volume(const std::vector<double>& alphas, double r, double v0 = -1.0) {
  if (r < 0.0) throw std::invalid_argument("ball_volume: negative radius");
  if (r == 0.0) return 0.0;
  const int n = static_cast<int>(alphas.size()) + 1;
  if (v0 <= 0.0) v0 = 2.0 * std::pow(M_PI, n / 2.0) / std::tgamma(n / 2.0);
  auto f = [&](double x) {
    double p = 1.0;
    for (double a : alphas) p *= std::sinh(a * x);
    return p;
  };
  double error = 0.0;
  const double val = boost::math::quadrature::gauss_kronrod<double, 31>::integrate(
      f, 0.0, r, 12, 1e-10, &error);
  if (error > 1e-8 * std::max(val, 1e-300))
    throw std::runtime_error("ball_volume: quadrature did not converge");
  return v0 * val;
}

struct SectorCheckReport {
  long violations = 0;
  long samples_checked = 0;
  double complement_volume = 0.0;  // vol B_a(x1) dominating B_r0(x0) minus the sector
  double bound = 0.0;              // e^{-(n-1) d} alpha^{-2(n-1)}
  double ratio = 0.0;
  double sinh_a = 0.0;
};

/// Containment + volume check behind the sector-complement estimate: points
/// sampled by the hyperbolic law of cosines; any near-violation is
/// re-verified in quad precision before being counted.
inline SectorCheckReport sector_volume_check(int n, double r0, double d, double alpha,
                                             int samples) {
  if (!(alpha > 0.0 && alpha < M_PI / 2.0))
    throw std::invalid_argument("sector check: need 0 < alpha < pi/2");
  if (r0 + d <= 0.0) throw std::invalid_argument("sector check: x1 must differ from x0");
  SectorCheckReport rep;
  rep.sinh_a = std::exp(-d) / (1.0 - std::cos(alpha));
  const double a_rad = std::asinh(rep.sinh_a);

  // Claim: a' > a and angle > alpha imply r0' > r0.  Sample (a', angle) just
  // beyond the boundary and across the range; the law of cosines gives r0'.
  const long grid = std::max(8L, static_cast<long>(std::lround(std::sqrt(double(samples)))));
  for (long ia = 0; ia <= grid; ++ia) {
    // a' from a * (1 + eps) up to a + 12
    const double ap = a_rad * (1.0 + 1e-9) + (12.0 * ia) / static_cast<double>(grid * grid) +
                      (ia == 0 ? 0.0 : (ia * (a_rad + 1.0)) / grid);
    for (long ig = 0; ig <= grid; ++ig) {
      const double ang = alpha * (1.0 + 1e-9) + (M_PI - alpha) * ig / (grid + 1.0);
      ++rep.samples_checked;
      const long double lhs = std::cosh((long double)(r0 + d)) * std::cosh((long double)ap) -
                              std::sinh((long double)(r0 + d)) * std::sinh((long double)ap) *
                                  std::cos((long double)ang);
      if (lhs < std::cosh((long double)r0)) {
        // re-verify in quad precision
        const __float128 q =
            coshq((__float128)(r0 + d)) * coshq((__float128)ap) -
            sinhq((__float128)(r0 + d)) * sinhq((__float128)ap) * cosq((__float128)ang);
        if (q < coshq((__float128)r0)) ++rep.violations;
      }
    }
  }

  std::vector<double> alphas(n - 1, 1.0);
  rep.complement_volume = ball_volume(alphas, a_rad);
  rep.bound = std::exp(-(n - 1.0) * d) * std::pow(alpha, -2.0 * (n - 1.0));
  rep.ratio = rep.complement_volume / rep.bound;
  return rep;
}

struct SectorSweepReport {
  long violations = 0;
  long samples = 0;
  double fitted_c = 0.0;  // max ratio across the sweep
  std::vector<SectorCheckReport> rows;
};

inline SectorSweepReport sector_volume_sweep(int n, int samples_per_point = 4096) {
  SectorSweepReport rep;
  for (double d : {-2.0, -1.0, 0.0, 1.0, 2.0, 3.0, 4.0, 5.0, 6.0, 7.0, 8.0})
    for (double alpha : {0.1, 0.2, 0.4, 0.6, 0.8, 1.0})
      for (double r0 : {1.0, 2.0, 4.0, 7.0, 10.0}) {
        if (r0 + d <= 0.1) continue;
        auto r = sector_volume_check(n, r0, d, alpha, samples_per_point);
        rep.violations += r.violations;
        rep.samples += r.samples_checked;
        rep.fitted_c = std::max(rep.fitted_c, r.ratio);
        rep.rows.push_back(std::move(r));
      }
  return rep;
}

/// Per-wall chamber-region constants a_W, b_W with the covering recursion.
struct RegionConstants {
  double c0 = 0.0, c1 = 0.0;
  std::vector<double> a;  // indexed by wall position in enumerate_walls order
  std::vector<double> b;
};

inline RegionConstants choose_region_constants(const RestrictedRootSystem& rs) {
  auto walls = enumerate_walls(rs);
  RegionConstants rc;
  // c0: max over walls W and un-roots of |proj_{ov a} alpha^#|
  for (const auto& w : walls) {
    for (int di : w.un_distinct) {
      const VectorXd& al = rs.positive[di].alpha;
      if (w.ov_a.cols() > 0)
        rc.c0 = std::max(rc.c0, (w.ov_a.transpose() * al).norm());
    }
  }
  // c1: max over simple roots of 1 / |beta^#|
  for (int si : rs.simple)
    rc.c1 = std::max(rc.c1, 1.0 / rs.positive[si].alpha.norm());
  rc.c0 = std::max(rc.c0, 1.0);
  rc.c1 = std::max(rc.c1, 1.0);

  // level recursion: a_{W'} >= 2 a_W + 4 c1 b_W for W' one level below W
  // (ov set one larger); b_W >= 1 + c0 a_W
  const int rk = rs.rank;
  std::vector<double> lvl_a(rk + 1), lvl_b(rk + 1);
  lvl_a[0] = 1.0;
  lvl_b[0] = 1.0 + rc.c0 * lvl_a[0];
  for (int l = 1; l <= rk; ++l) {
    lvl_a[l] = 2.0 * lvl_a[l - 1] + 4.0 * rc.c1 * lvl_b[l - 1];
    lvl_b[l] = 1.0 + rc.c0 * lvl_a[l];
  }
  for (const auto& w : walls) {
    rc.a.push_back(lvl_a[w.wall_key.size()]);
    rc.b.push_back(lvl_b[w.wall_key.size()]);
  }
  // construction sanity: the recursions hold as inequalities
  for (std::size_t wi = 0; wi < walls.size(); ++wi) {
    if (rc.b[wi] - rc.c0 * rc.a[wi] < 1.0 - 1e-12)
      throw std::logic_error("region constants: b - c0 a >= 1 failed");
    for (std::size_t wj = 0; wj < walls.size(); ++wj) {
      // wj in boundary of wi: ov set of wj = ov set of wi plus one element
      if (walls[wj].wall_key.size() != walls[wi].wall_key.size() + 1) continue;
      bool contains = std::includes(walls[wj].wall_key.begin(), walls[wj].wall_key.end(),
                                    walls[wi].wall_key.begin(), walls[wi].wall_key.end());
      if (contains && rc.a[wj] < 2.0 * rc.a[wi] + 4.0 * rc.c1 * rc.b[wi] - 1e-12)
        throw std::logic_error("region constants: boundary recursion failed");
    }
  }
  return rc;
}

struct RegionVerifyReport {
  long samples = 0;
  long violations_p1 = 0, violations_p2 = 0, violations_p3 = 0;
  double worst_margin_p1 = std::numeric_limits<double>::infinity();
};

namespace detail {

struct WallRegionGeometry {
  // simple-root covectors of the un set and the ov-projector, a-coordinates
  std::vector<VectorXd> un_simple;
  std::vector<VectorXd> un_all;  // all un-roots of the wall
  MatrixXd ov_proj;              // projector onto ov a
  double a = 0.0, b = 0.0;

  bool in_x(const VectorXd& v, double sigma) const {
    if ((ov_proj * v).norm() > a * (sigma - 1.0)) return false;
    for (const auto& al : un_simple) {
      VectorXd unv = v - ov_proj * v;
      if (al.dot(unv) < 0.0) return false;
    }
    return true;
  }
  bool in_s(const VectorXd& v, double sigma) const {
    if ((ov_proj * v).norm() > a * sigma) return false;
    VectorXd unv = v - ov_proj * v;
    for (const auto& al : un_simple)
      if (al.dot(unv) < b * sigma) return false;
    return true;
  }
  bool in_r(const VectorXd& v, double sigma) const {
    if ((ov_proj * v).norm() > a * (sigma - 1.0)) return false;
    VectorXd unv = v - ov_proj * v;
    for (const auto& al : un_simple)
      if (al.dot(unv) < b * (sigma + 1.0)) return false;
    return true;
  }
};

}  // namespace detail

/// Sampling verification of the three covering properties of the chamber
/// regions, at parameter sigma, with `samples` random points per wall.
inline RegionVerifyReport verify_regions(const RestrictedRootSystem& rs,
                                         const RegionConstants& rc, double sigma,
                                         long samples, std::uint64_t seed = 20240901) {
  if (!(sigma > 10.0)) throw std::invalid_argument("verify_regions: need sigma > 10");
  auto walls = enumerate_walls(rs);
  const int rk = rs.rank;

  std::vector<detail::WallRegionGeometry> geo(walls.size());
  for (std::size_t wi = 0; wi < walls.size(); ++wi) {
    auto& g = geo[wi];
    g.a = rc.a[wi];
    g.b = rc.b[wi];
    if (walls[wi].ov_a.cols() > 0)
      g.ov_proj = walls[wi].ov_a * walls[wi].ov_a.transpose();
    else
      g.ov_proj = MatrixXd::Zero(rk, rk);
    for (int j = 0; j < rk; ++j) {
      // un simple roots: simple roots not in the wall key
      if (std::find(walls[wi].wall_key.begin(), walls[wi].wall_key.end(), j) ==
          walls[wi].wall_key.end())
        g.un_simple.push_back(rs.positive[rs.simple[j]].alpha);
    }
    for (int di : walls[wi].un_distinct) g.un_all.push_back(rs.positive[di].alpha);
  }

  // boundary walls of wall wi: ov set one element larger
  std::vector<std::vector<int>> boundary(walls.size());
  for (std::size_t wi = 0; wi < walls.size(); ++wi)
    for (std::size_t wj = 0; wj < walls.size(); ++wj)
      if (walls[wj].wall_key.size() == walls[wi].wall_key.size() + 1 &&
          std::includes(walls[wj].wall_key.begin(), walls[wj].wall_key.end(),
                        walls[wi].wall_key.begin(), walls[wi].wall_key.end()))
        boundary[wi].push_back(static_cast<int>(wj));

  // per-wall dual bases of the un-simple covectors inside un_a, for targeted
  // sampling that actually hits the regions
  std::vector<MatrixXd> un_dual(walls.size());
  for (std::size_t wi = 0; wi < walls.size(); ++wi) {
    const auto& w = walls[wi];
    const int q = static_cast<int>(w.un_a.cols());
    if (q == 0) continue;
    MatrixXd rows(q, q);
    for (int i = 0; i < q; ++i)
      rows.row(i) = geo[wi].un_simple[i].transpose() * w.un_a;  // beta_i on un_a coords
    un_dual[wi] = w.un_a * rows.inverse();  // columns xi_g with beta_i(xi_g) = delta
  }

  RegionVerifyReport rep;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> uni(-1.0, 1.0);
  std::uniform_real_distribution<double> uni01(0.0, 1.0);
  const double box = 3.0 * sigma * (*std::max_element(rc.b.begin(), rc.b.end()));

  for (std::size_t wi = 0; wi < walls.size(); ++wi) {
    const auto& g = geo[wi];
    const auto& w = walls[wi];
    for (long s = 0; s < samples; ++s) {
      VectorXd v(rk);
      if (s % 2 == 0 || un_dual[wi].size() == 0) {
        for (int j = 0; j < rk; ++j) v[j] = box * uni(rng);
      } else {
        // targeted: ov-component within the S radius, un-component spanned by
        // the dual basis with coefficients around b sigma
        v = VectorXd::Zero(rk);
        for (int j = 0; j < w.ov_a.cols(); ++j)
          v += (1.2 * g.a * sigma) * uni(rng) * w.ov_a.col(j);
        for (int j = 0; j < un_dual[wi].cols(); ++j)
          v += (3.0 * g.b * sigma * uni01(rng)) * un_dual[wi].col(j);
      }
      ++rep.samples;
      // (1) v in S^W_sigma  =>  un_alpha(v) >= sigma for all un roots of W
      if (g.in_s(v, sigma)) {
        for (const auto& al : g.un_all) {
          const double m = al.dot(v) - sigma;
          rep.worst_margin_p1 = std::min(rep.worst_margin_p1, m);
          if (m < 0.0) {
            // long-double re-verification before reporting
            long double acc = 0.0;
            for (int j = 0; j < rk; ++j) acc += (long double)al[j] * (long double)v[j];
            if (acc < (long double)sigma) ++rep.violations_p1;
          }
        }
        // (2) near-boundary part of S is covered by the X of boundary walls
        bool near = false;
        VectorXd unv = v - g.ov_proj * v;
        for (const auto& al : g.un_simple)
          if (al.dot(unv) <= g.b * (sigma + 1.0)) near = true;
        if (near) {
          bool covered = false;
          for (int wj : boundary[wi])
            if (geo[wj].in_x(v, sigma)) covered = true;
          if (!covered && !boundary[wi].empty()) ++rep.violations_p2;
        }
      }
      // (3) X^W_sigma subset R^W_{f sigma} union (X^{W'}_{f sigma}), f >= 1
      for (double f : {1.0, 2.0}) {
        if (g.in_x(v, sigma)) {
          bool covered = g.in_r(v, f * sigma);
          for (int wj : boundary[wi])
            if (geo[wj].in_x(v, f * sigma)) covered = true;
          if (!covered && !boundary[wi].empty()) ++rep.violations_p3;
          if (!covered && boundary[wi].empty()) ++rep.violations_p3;
        }
      }
    }
  }
  return rep;
}

}  // namespace symspace
