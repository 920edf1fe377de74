#pragma once

#include <Eigen/StdVector>

#include "symspace/spectra.hpp"

namespace symspace {

/// Everything the radial matrix PDE needs, in the simulation scale (unit-root
/// normalized by default so reported rates match Example A/B conventions).
struct HeatModel {
  std::vector<double> alphas;        // positive root values along the unit a-direction
  std::vector<MatrixXd> rho;         // rho(k_i), same indexing as alphas
  std::vector<MatrixXd> rho_k0;
  MatrixXd zero_order;               // constant fiber endomorphism (2R for einstein runs)
  MatrixXd weyl;                     // reflection action on the fiber
  int fiber_dim = 1;
  int manifold_dim = 2;
  std::string label;

  double lambda_chamber() const {
    MatrixXd m = -zero_order;
    for (const auto& r : rho) m += -(r * r).eval();
    return min_eig(MatrixXd((m + m.transpose()) / 2.0));
  }
  std::vector<double> mu() const {
    std::vector<double> out;
    for (const auto& r : rho) out.push_back(max_eig(MatrixXd(-(r * r).eval())));
    return out;
  }
};

/// Rank-1 spherical model for a bundle over a catalog space.
inline HeatModel make_heat_model(const RestrictedRootSystem& rs, BundleKind kind,
                                 const std::string& variant, bool unit_root = true) {
  if (rs.rank != 1)
    throw std::invalid_argument("heat simulation is restricted to rank-1 spaces");
  if (variant != "plain" && variant != "einstein")
    throw std::invalid_argument("variant must be plain or einstein");
  HeatModel m;
  m.label = rs.g.label + ":" + to_string(kind) + ":" + variant;
  m.manifold_dim = rs.rank + rs.n_minus_r();
  const double shat = unit_root ? rs.min_root_dual_norm2() : 1.0;
  const double sigma = std::sqrt(shat);
  auto rep = bundle_rep(rs, kind);
  m.fiber_dim = rep.fiber_dim;
  for (int i = 0; i < rs.n_minus_r(); ++i) {
    m.alphas.push_back(rs.roots[i].alpha[0] / sigma);
    m.rho.push_back(rep.rho_root[i] / sigma);
  }
  for (const auto& r : rep.rho_k0) m.rho_k0.push_back(r / sigma);
  m.weyl = rep.weyl_reflection;
  m.zero_order = MatrixXd::Zero(m.fiber_dim, m.fiber_dim);
  if (variant == "einstein") {
    if (kind == BundleKind::one_forms)
      throw std::invalid_argument("einstein variant acts on symmetric 2-tensors");
    auto cd = curvature_on_sym2(rs);
    MatrixXd r2 = 2.0 * cd.r_op / shat;
    m.zero_order = kind == BundleKind::sym2 ? r2 : rep.embed.transpose() * r2 * rep.embed;
  }
  return m;
}

/// Trivial one-dimensional bundle (scalar heat kernel) with prescribed roots.
inline HeatModel make_trivial_model(std::vector<double> alphas, int manifold_dim) {
  HeatModel m;
  m.label = "scalar";
  m.alphas = std::move(alphas);
  m.manifold_dim = manifold_dim;
  m.fiber_dim = 1;
  for (std::size_t i = 0; i < m.alphas.size(); ++i) m.rho.push_back(MatrixXd::Zero(1, 1));
  m.zero_order = MatrixXd::Zero(1, 1);
  m.weyl = MatrixXd::Identity(1, 1);
  return m;
}

struct HeatParams {
  double dr = 0.02;
  double r_max = 30.0;
  double t0 = 0.01;
  double t_end = 20.0;
  double sample_every = 0.1;
  double dt = 0.0;  // 0: choose from the stability precheck
  bool with_comparison = true;
  std::vector<std::pair<double, double>> radial_weights;  // (a, w) pairs
};

struct HeatSample {
  double t = 0.0;
  double h1 = 0.0, h2 = 0.0;
  double envelope_sup = 0.0;       // max_j |K_j|_op vol B(r_j)
  double domination_max = 0.0;     // max_j K_j(max) / K_j^o
  double mineig_ratio = 0.0;       // min_j K_j(min) / sup-norm
  double equivariance = 0.0;       // max_j ||[rho(k0), K]|| / ||K||
  double boundary_ratio = 0.0;     // |K_{J-1}| / max_j |K_j|
  std::vector<double> radial_integrals;
};

struct HeatRunResult {
  double dt = 0.0;
  double lambda_chamber = 0.0;
  std::vector<HeatSample> samples;
  double domination_worst = 0.0;
  double mineig_worst = 0.0;
  double equivariance_worst = 0.0;
  double asym_rate_worst = 0.0;  // symmetry drift per unit time, pre-resymmetrization
  double boundary_worst = 0.0;

  std::vector<std::pair<double, double>> h1_series() const {
    std::vector<std::pair<double, double>> s;
    for (const auto& x : samples) s.emplace_back(x.t, x.h1);
    return s;
  }
};

namespace detail {

inline double coth_times_alpha(double alpha, double r) {
  const double x = alpha * r;
  if (x < 1e-3) return 1.0 / r + alpha * x / 3.0 - alpha * x * x * x / 45.0;
  return alpha / std::tanh(x);
}

inline double inv_sinh2(double alpha, double r) {
  const double x = alpha * r;
  if (x < 1e-3) return 1.0 / (x * x) - 1.0 / 3.0 + x * x / 15.0;
  const double s = std::sinh(x);
  return 1.0 / (s * s);
}

inline double sphere_area(int n) {
  return 2.0 * std::pow(M_PI, n / 2.0) / std::tgamma(n / 2.0);
}

/// Spectral bound of the frozen zero-order superoperator at radius r.
inline double zero_order_superop_bound(const HeatModel& model, double r) {
  const int d = model.fiber_dim;
  const int d2 = d * d;
  MatrixXd ptot = model.zero_order;
  for (const auto& rho : model.rho) ptot += (rho * rho).eval();
  MatrixXd super = MatrixXd::Zero(d2, d2);
  for (int a = 0; a < d; ++a)
    for (int b = 0; b < d; ++b) {
      MatrixXd e = MatrixXd::Zero(d, d);
      e(a, b) = 1.0;
      MatrixXd img = ptot * e;
      for (std::size_t i = 0; i < model.rho.size(); ++i) {
        const double c1 = inv_sinh2(model.alphas[i], r);
        const double w = 1.0 / (1.0 + std::cosh(model.alphas[i] * r));
        const MatrixXd& rho = model.rho[i];
        MatrixXd p2 = rho * rho;
        img += c1 * (e * p2 + p2 * e);
        img += -2.0 * (c1 + w) * (rho * e * rho);
      }
      super.col(a * d + b) = Eigen::Map<VectorXd>(img.data(), d2);
    }
  super = ((super + super.transpose()) / 2.0).eval();
  auto e = sym_eig(super);
  return std::max(std::abs(e.values[0]), std::abs(e.values[e.values.size() - 1]));
}

template <int D>
HeatRunResult run_heat_impl(const HeatModel& model, const HeatParams& prm) {
  using Mat = Eigen::Matrix<double, D, D>;
  using MatVec = std::vector<Mat, Eigen::aligned_allocator<Mat>>;
  const int d = model.fiber_dim;
  const int j_count = static_cast<int>(std::llround(prm.r_max / prm.dr));
  if (j_count < 8) throw std::invalid_argument("heat grid too coarse");
  if (prm.t0 < 4.0 * prm.dr * prm.dr * (1.0 - 1e-9))
    throw std::invalid_argument("heat init requires t0 >= 4 dr^2");
  const double dr = prm.dr;

  // group roots with equal alpha; precompute group operators
  struct Group {
    double alpha;
    Mat p_sum;
    std::vector<Mat, Eigen::aligned_allocator<Mat>> rhos;
  };
  std::vector<Group> groups;
  for (std::size_t i = 0; i < model.alphas.size(); ++i) {
    Group* g = nullptr;
    for (auto& gg : groups)
      if (std::abs(gg.alpha - model.alphas[i]) < 1e-12) g = &gg;
    if (!g) {
      groups.push_back({model.alphas[i], Mat(Mat::Zero(d, d)), {}});
      g = &groups.back();
    }
    Mat rho = model.rho[i];
    g->p_sum += rho * rho;
    g->rhos.push_back(rho);
  }
  Mat pz = model.zero_order;
  for (auto& g : groups) pz += g.p_sum;
  Mat weyl = model.weyl.size() > 0 ? Mat(model.weyl) : Mat(Mat::Identity(d, d));
  Mat weyl_t = weyl.transpose();

  // stability precheck -> dt
  const double r0 = dr / 2.0;
  double drift0 = 0.0;
  for (double a : model.alphas) drift0 += coth_times_alpha(a, r0);
  const double s0 = zero_order_superop_bound(model, r0);
  const double dt_stable = 2.5 / (4.0 / (dr * dr) + drift0 / dr + s0);
  double dt = std::min(0.2 * dr * dr, 0.95 * dt_stable);
  if (prm.dt > 0.0) {
    if (prm.dt > std::min(0.2 * dr * dr, dt_stable))
      throw std::invalid_argument("heat step: requested dt fails the stability precheck");
    dt = prm.dt;
  }
  // land exactly on sample times
  const int steps_per_sample = std::max(1, static_cast<int>(std::ceil(prm.sample_every / dt)));
  dt = prm.sample_every / steps_per_sample;

  // per-node coefficients
  std::vector<double> r(j_count), drift(j_count), weight(j_count), volb(j_count);
  std::vector<std::vector<double>> c1(groups.size(), std::vector<double>(j_count));
  std::vector<std::vector<double>> c3m2(groups.size(), std::vector<double>(j_count));
  double cum = 0.0;
  const double v0 = sphere_area(model.manifold_dim);
  for (int j = 0; j < j_count; ++j) {
    r[j] = (j + 0.5) * dr;
    double dsum = 0.0, w = 1.0;
    for (double a : model.alphas) {
      dsum += coth_times_alpha(a, r[j]);
      w *= std::abs(std::sinh(a * r[j]));
    }
    drift[j] = dsum;
    weight[j] = w;
    volb[j] = v0 * (cum + 0.5 * w * dr);
    cum += w * dr;
    for (std::size_t g = 0; g < groups.size(); ++g) {
      const double u = inv_sinh2(groups[g].alpha, r[j]);
      const double wq = 1.0 / (1.0 + std::cosh(groups[g].alpha * r[j]));
      c1[g][j] = u;
      c3m2[g][j] = -2.0 * (u + wq);
    }
  }

  // comparison-kernel potential
  const double lam_c = model.lambda_chamber();
  auto mus = model.mu();
  std::vector<double> pot(j_count, -lam_c);
  for (int j = 0; j < j_count; ++j)
    for (std::size_t i = 0; i < model.alphas.size(); ++i)
      pot[j] += 2.0 * mus[i] / (1.0 + std::cosh(model.alphas[i] * r[j]));

  // initial data
  MatVec k(j_count, Mat::Zero(d, d)), stage(j_count, Mat::Zero(d, d)),
      rhs(j_count, Mat::Zero(d, d)), acc(j_count, Mat::Zero(d, d));
  std::vector<double> kc(j_count), stage_c(j_count), rhs_c(j_count), acc_c(j_count);
  const double norm0 = std::pow(4.0 * M_PI * prm.t0, -model.manifold_dim / 2.0);
  for (int j = 0; j < j_count; ++j) {
    const double g = norm0 * std::exp(-r[j] * r[j] / (4.0 * prm.t0));
    k[j] = g * Mat::Identity(d, d);
    kc[j] = g;
  }

  const double inv_dr2 = 1.0 / (dr * dr);
  const double inv_2dr = 1.0 / (2.0 * dr);

  auto eval_rhs = [&](const MatVec& s, MatVec& out) {
    for (int j = 0; j < j_count; ++j) {
      Mat up = j + 1 < j_count ? s[j + 1] : Mat(2.0 * s[j_count - 1] - s[j_count - 2]);
      Mat dn = j > 0 ? s[j - 1] : Mat(weyl * s[0] * weyl_t);
      Mat f = inv_dr2 * (up - 2.0 * s[j] + dn) + (drift[j] * inv_2dr) * (up - dn);
      f.noalias() += pz * s[j];
      for (std::size_t g = 0; g < groups.size(); ++g) {
        const double u = c1[g][j];
        f.noalias() += u * (s[j] * groups[g].p_sum);
        f.noalias() += u * (groups[g].p_sum * s[j]);
        const double cc = c3m2[g][j];
        for (const auto& rho : groups[g].rhos) {
          Mat t = s[j] * rho;
          f.noalias() += cc * (rho * t);
        }
      }
      out[j] = f;
    }
  };
  auto eval_rhs_scalar = [&](const std::vector<double>& s, std::vector<double>& out) {
    for (int j = 0; j < j_count; ++j) {
      const double up = j + 1 < j_count ? s[j + 1] : 2.0 * s[j_count - 1] - s[j_count - 2];
      const double dn = j > 0 ? s[j - 1] : s[0];
      out[j] = inv_dr2 * (up - 2.0 * s[j] + dn) + drift[j] * inv_2dr * (up - dn) +
               pot[j] * s[j];
    }
  };

  HeatRunResult res;
  res.dt = dt;
  res.lambda_chamber = lam_c;
  res.mineig_worst = std::numeric_limits<double>::infinity();

  Eigen::SelfAdjointEigenSolver<Mat> es;
  auto take_sample = [&](double t) {
    HeatSample smp;
    smp.t = t;
    double h1 = 0.0, h2 = 0.0, env = 0.0, dommax = 0.0, sup = 0.0, minr = 0.0, eq = 0.0;
    std::vector<double> kmax(j_count), kmin(j_count), kop(j_count);
    for (int j = 0; j < j_count; ++j) {
      es.compute(k[j], Eigen::EigenvaluesOnly);
      kmin[j] = es.eigenvalues()(0);
      kmax[j] = es.eigenvalues()(d - 1);
      kop[j] = std::max(std::abs(kmin[j]), std::abs(kmax[j]));
      sup = std::max(sup, kop[j]);
    }
    for (int j = 0; j < j_count; ++j) {
      h1 += weight[j] * kmax[j] * dr;
      h2 += weight[j] * kmax[j] * kmax[j] * dr;
      env = std::max(env, kop[j] * volb[j]);
      if (prm.with_comparison && kc[j] > 1e-300)
        dommax = std::max(dommax, (kmax[j] - 1e-13 * sup) / kc[j]);
      minr = std::min(minr, kmin[j] / std::max(sup, 1e-300));
    }
    for (const auto& u : model.rho_k0) {
      for (int j = 0; j < j_count; j += 7) {
        MatrixXd kd = k[j];
        const double nk = kd.norm();
        if (nk > 1e-250) eq = std::max(eq, (u * kd - kd * u).norm() / nk);
      }
    }
    smp.h1 = h1;
    smp.h2 = std::sqrt(h2);
    smp.envelope_sup = env;
    smp.domination_max = dommax;
    smp.mineig_ratio = minr;
    smp.equivariance = eq;
    smp.boundary_ratio = kop[j_count - 1] / std::max(sup, 1e-300);
    for (auto [a, w] : prm.radial_weights) {
      double acc_i = 0.0;
      for (int j = 0; j < j_count; ++j)
        acc_i += weight[j] * kmax[j] / std::pow(r[j] + 1.0 + a, w) * dr;
      smp.radial_integrals.push_back(acc_i);
    }
    res.samples.push_back(std::move(smp));
    res.domination_worst = std::max(res.domination_worst, dommax);
    res.mineig_worst = std::min(res.mineig_worst, minr);
    res.equivariance_worst = std::max(res.equivariance_worst, eq);
    res.boundary_worst = std::max(res.boundary_worst, res.samples.back().boundary_ratio);
    if (!std::isfinite(h1))
      throw std::runtime_error("heat evolve aborted: non-finite norm at t=" + std::to_string(t));
    if (minr < -1e-5)
      throw std::runtime_error("heat evolve aborted: positivity lost at t=" + std::to_string(t));
  };

  double t = prm.t0;
  take_sample(t);
  const int total_samples = static_cast<int>(std::llround((prm.t_end - prm.t0) / prm.sample_every));
  int step_count = 0;
  for (int sidx = 0; sidx < total_samples; ++sidx) {
    for (int s = 0; s < steps_per_sample; ++s) {
      eval_rhs(k, rhs);
      for (int j = 0; j < j_count; ++j) {
        acc[j] = rhs[j];
        stage[j] = k[j] + (0.5 * dt) * rhs[j];
      }
      eval_rhs(stage, rhs);
      for (int j = 0; j < j_count; ++j) {
        acc[j] += 2.0 * rhs[j];
        stage[j] = k[j] + (0.5 * dt) * rhs[j];
      }
      eval_rhs(stage, rhs);
      for (int j = 0; j < j_count; ++j) {
        acc[j] += 2.0 * rhs[j];
        stage[j] = k[j] + dt * rhs[j];
      }
      eval_rhs(stage, rhs);
      for (int j = 0; j < j_count; ++j) {
        acc[j] += rhs[j];
        k[j] += (dt / 6.0) * acc[j];
      }
      if (prm.with_comparison) {
        eval_rhs_scalar(kc, rhs_c);
        for (int j = 0; j < j_count; ++j) {
          acc_c[j] = rhs_c[j];
          stage_c[j] = kc[j] + 0.5 * dt * rhs_c[j];
        }
        eval_rhs_scalar(stage_c, rhs_c);
        for (int j = 0; j < j_count; ++j) {
          acc_c[j] += 2.0 * rhs_c[j];
          stage_c[j] = kc[j] + 0.5 * dt * rhs_c[j];
        }
        eval_rhs_scalar(stage_c, rhs_c);
        for (int j = 0; j < j_count; ++j) {
          acc_c[j] += 2.0 * rhs_c[j];
          stage_c[j] = kc[j] + dt * rhs_c[j];
        }
        eval_rhs_scalar(stage_c, rhs_c);
        for (int j = 0; j < j_count; ++j) {
          acc_c[j] += rhs_c[j];
          kc[j] += dt / 6.0 * acc_c[j];
        }
      }
      // re-symmetrize, tracking the drift rate
      if (step_count % 16 == 0) {
        double worst = 0.0;
        for (int j = 0; j < j_count; ++j) {
          const double nk = k[j].norm();
          if (nk > 1e-250)
            worst = std::max(worst, (k[j] - k[j].transpose()).norm() / (nk * dt));
        }
        res.asym_rate_worst = std::max(res.asym_rate_worst, worst);
      }
      for (int j = 0; j < j_count; ++j) k[j] = 0.5 * (k[j] + k[j].transpose()).eval();
      ++step_count;
    }
    t = prm.t0 + (sidx + 1) * prm.sample_every;
    take_sample(t);
  }
  return res;
}

}  // namespace detail

inline HeatRunResult run_heat(const HeatModel& model, const HeatParams& prm) {
  switch (model.fiber_dim) {
    case 1: return detail::run_heat_impl<1>(model, prm);
    case 2: return detail::run_heat_impl<2>(model, prm);
    case 3: return detail::run_heat_impl<3>(model, prm);
    case 4: return detail::run_heat_impl<4>(model, prm);
    case 6: return detail::run_heat_impl<6>(model, prm);
    default: return detail::run_heat_impl<Eigen::Dynamic>(model, prm);
  }
}

struct DecayFit {
  double rate = 0.0;
  double log_prefactor = 0.0;
  double t_lo = 0.0, t_hi = 0.0;
  double max_residual = 0.0;
  bool window_short = false;  // fewer than 5 e-foldings of the fitted rate
};

/// Least squares on log H vs t inside [t_lo, t_hi]; rate is the sign-flipped
/// slope.
inline DecayFit fit_decay(const std::vector<std::pair<double, double>>& series, double t_lo,
                          double t_hi) {
  std::vector<std::pair<double, double>> pts;
  for (auto [t, h] : series)
    if (t >= t_lo - 1e-12 && t <= t_hi + 1e-12) {
      if (!(h > 0.0)) throw std::invalid_argument("fit_decay: nonpositive sample in window");
      pts.emplace_back(t, std::log(h));
    }
  if (pts.size() < 20) throw std::invalid_argument("fit_decay: need at least 20 samples");
  double st = 0, sy = 0, stt = 0, sty = 0;
  for (auto [t, y] : pts) {
    st += t;
    sy += y;
    stt += t * t;
    sty += t * y;
  }
  const double n = static_cast<double>(pts.size());
  const double denom = n * stt - st * st;
  DecayFit fit;
  fit.t_lo = t_lo;
  fit.t_hi = t_hi;
  const double slope = (n * sty - st * sy) / denom;
  fit.rate = -slope;
  fit.log_prefactor = (sy - slope * st) / n;
  for (auto [t, y] : pts)
    fit.max_residual = std::max(fit.max_residual, std::abs(y - (slope * t + fit.log_prefactor)));
  fit.window_short = (t_hi - t_lo) * std::abs(fit.rate) < 5.0;
  return fit;
}

struct GreenEstimate {
  double lambda = 0.0;
  double value = 0.0;
  double tail = 0.0;
  bool divergent = false;
};

/// L1 norm of the Green's kernel of -Laplace - lambda via time integration of
/// the simulated H^(1), with a fitted exponential tail.
inline GreenEstimate green_l1(const std::vector<std::pair<double, double>>& h1_series,
                              const DecayFit& fit, double lambda) {
  GreenEstimate g;
  g.lambda = lambda;
  if (lambda >= fit.rate - 1e-9) {
    g.divergent = true;
    return g;
  }
  double acc = 0.0;
  for (std::size_t i = 1; i < h1_series.size(); ++i) {
    auto [t0, h0] = h1_series[i - 1];
    auto [t1, h1] = h1_series[i];
    acc += 0.5 * (std::exp(lambda * t0) * h0 + std::exp(lambda * t1) * h1) * (t1 - t0);
  }
  auto [tend, hend] = h1_series.back();
  g.tail = hend * std::exp(lambda * tend) / (fit.rate - lambda);
  g.value = acc + g.tail;
  return g;
}

struct EnvelopeStats {
  double sup_ratio = 0.0;
  double late_growth = 0.0;  // multiplicative growth of the ratio over the last half
};

/// sup over samples of envelope * e^{lambda0 t}, plus the fitted growth of
/// that ratio over the last half of the run.
inline EnvelopeStats pointwise_envelope(const HeatRunResult& run, double lambda0) {
  EnvelopeStats st;
  std::vector<std::pair<double, double>> late;
  const double t_end = run.samples.back().t;
  const double t_half = run.samples.front().t + (t_end - run.samples.front().t) / 2.0;
  for (const auto& s : run.samples) {
    const double ratio = s.envelope_sup * std::exp(lambda0 * s.t);
    st.sup_ratio = std::max(st.sup_ratio, ratio);
    if (s.t >= t_half && ratio > 0.0) late.emplace_back(s.t, ratio);
  }
  if (late.size() >= 20) {
    auto fit = fit_decay(late, late.front().first, late.back().first);
    st.late_growth = std::exp(-fit.rate * (late.back().first - late.front().first));
  } else {
    st.late_growth = 1.0;
  }
  return st;
}

struct RadialBoundStats {
  double a = 0.0, w = 1.0;
  double worst_product = 0.0;   // max over samples of I(t) (1 + a + t)^w
  double late_over_early = 0.0; // trend of the product
};

inline RadialBoundStats radial_integral_bound(const HeatRunResult& run, std::size_t idx,
                                              double a, double w) {
  RadialBoundStats st;
  st.a = a;
  st.w = w;
  double early = 0.0;
  for (const auto& s : run.samples) {
    const double prod = s.radial_integrals.at(idx) * std::pow(1.0 + a + s.t, w);
    st.worst_product = std::max(st.worst_product, prod);
    if (early == 0.0) early = prod;
  }
  const double last =
      run.samples.back().radial_integrals.at(idx) * std::pow(1.0 + a + run.samples.back().t, w);
  st.late_over_early = last / std::max(early, 1e-300);
  return st;
}

}  // namespace symspace
