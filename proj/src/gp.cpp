// Copyright 2026 the krig authors
// SPDX-License-Identifier: Apache-2.0

#include "krig/gp.hpp"

#include <atomic>
#include <cmath>
#include <random>
#include <string>

#include "krig/errors.hpp"

namespace krig::gp {

namespace {

std::atomic<std::uint64_t> g_clamp_count{0};

double dist(const double* a, const double* b, int dim) {
  double s = 0.0;
  for (int k = 0; k < dim; ++k) {
    const double d = a[k] - b[k];
    s += d * d;
  }
  return std::sqrt(s);
}

// First non-positive pivot of a plain Cholesky, 1-based; 0 when it succeeds.
// Diagnostic only, run after Eigen's LLT has already failed.
int failing_minor(const Eigen::MatrixXd& m) {
  const int n = static_cast<int>(m.rows());
  Eigen::MatrixXd a = m;
  for (int j = 0; j < n; ++j) {
    double d = a(j, j);
    for (int k = 0; k < j; ++k) d -= a(j, k) * a(j, k);
    if (!(d > 0.0)) return j + 1;
    const double l = std::sqrt(d);
    a(j, j) = l;
    for (int i = j + 1; i < n; ++i) {
      double s = a(i, j);
      for (int k = 0; k < j; ++k) s -= a(i, k) * a(j, k);
      a(i, j) = s / l;
    }
  }
  return 0;
}

Eigen::VectorXd correlation_vector(const KernelSpec& kernel,
                                   const designs::Design& design,
                                   const double* x) {
  const int n = design.size();
  const int dim = design.domain.dim;
  Eigen::VectorXd r(n);
  for (int j = 0; j < n; ++j) {
    r(j) = kernels::corr(kernel, dist(x, design.point(j), dim), dim);
  }
  return r;
}

}  // namespace

Eigen::MatrixXd corr_matrix(const KernelSpec& kernel,
                            const std::vector<double>& pts, int dim) {
  kernels::validate(kernel, dim);
  const int n = static_cast<int>(pts.size()) / dim;
  Eigen::MatrixXd m(n, n);
  for (int j = 0; j < n; ++j) {
    m(j, j) = 1.0;
    for (int k = j + 1; k < n; ++k) {
      const double v = kernels::corr(
          kernel, dist(pts.data() + static_cast<std::size_t>(j) * dim,
                       pts.data() + static_cast<std::size_t>(k) * dim, dim),
          dim);
      m(j, k) = v;
      m(k, j) = v;
    }
  }
  return m;
}

CholResult cholesky_spd(const Eigen::MatrixXd& m, double max_jitter) {
  if (m.rows() != m.cols()) {
    throw ConfigError("cholesky_spd: matrix must be square");
  }
  const double ladder[] = {0.0, 1e-12, 1e-10, 1e-8};
  for (double jitter : ladder) {
    if (jitter > max_jitter) break;
    Eigen::MatrixXd a = m;
    if (jitter > 0.0) {
      a.diagonal().array() += jitter;
    }
    Eigen::LLT<Eigen::MatrixXd> llt(a);
    if (llt.info() == Eigen::Success) {
      return {llt.matrixL(), jitter};
    }
  }
  Eigen::MatrixXd a = m;
  a.diagonal().array() += std::min(1e-8, max_jitter);
  throw IllConditionedError(
      "cholesky_spd: factorization failed at max jitter; first non-positive "
      "leading minor at index " + std::to_string(failing_minor(a)),
      failing_minor(a));
}

GpSample sample_gp(const KernelSpec& kernel, const std::vector<double>& pts,
                   int dim, std::uint64_t seed) {
  const CholResult chol = cholesky_spd(corr_matrix(kernel, pts, dim));
  GpSample s = sample_gp_with_factor(chol.L, pts, dim,
                                     std::sqrt(kernel.sigma2), seed);
  s.kernel = kernel;
  return s;
}

GpSample sample_gp_with_factor(const Eigen::MatrixXd& L,
                               const std::vector<double>& pts, int dim,
                               double sigma, std::uint64_t seed) {
  const int n = static_cast<int>(L.rows());
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> norm(0.0, 1.0);
  Eigen::VectorXd z(n);
  for (int i = 0; i < n; ++i) z(i) = norm(rng);
  Eigen::VectorXd values = L.triangularView<Eigen::Lower>() * z;
  values *= sigma;
  GpSample s;
  s.pts = pts;
  s.dim = dim;
  s.seed = seed;
  s.values.assign(values.data(), values.data() + n);
  return s;
}

KrigingModel fit_kriging(const designs::Design& design,
                         const std::vector<double>& obs,
                         const KernelSpec& imposed) {
  const CholResult factor =
      cholesky_spd(corr_matrix(imposed, design.pts, design.domain.dim));
  return fit_kriging_with_factor(design, obs, imposed, factor);
}

KrigingModel fit_kriging_with_factor(const designs::Design& design,
                                     const std::vector<double>& obs,
                                     const KernelSpec& imposed,
                                     const CholResult& factor) {
  const int n = design.size();
  if (static_cast<int>(obs.size()) != n) {
    throw ConfigError("fit_kriging: observation count must match design size");
  }
  KrigingModel m;
  m.design = design;
  m.obs = obs;
  m.kernel = imposed;
  m.chol_L = factor.L;
  m.jitter_used = factor.jitter;
  const Eigen::Map<const Eigen::VectorXd> y(obs.data(), n);
  const auto solve = [&](const Eigen::VectorXd& rhs) {
    const Eigen::VectorXd tmp =
        m.chol_L.triangularView<Eigen::Lower>().solve(rhs);
    return Eigen::VectorXd(
        m.chol_L.triangularView<Eigen::Lower>().transpose().solve(tmp));
  };
  m.weights = solve(y);
  // Iterative refinement against the unjittered K tightens the interpolation
  // residual, which rounding error alone can push above 1e-6 for smooth
  // kernels on clustered designs. The residual is accumulated in extended
  // precision so refinement is not floored by its own evaluation error.
  const Eigen::MatrixXd k =
      corr_matrix(imposed, design.pts, design.domain.dim);
  Eigen::VectorXd resid(n);
  for (int step = 0; step < 3; ++step) {
    for (int i = 0; i < n; ++i) {
      long double acc = y(i);
      for (int j = 0; j < n; ++j) {
        acc -= static_cast<long double>(k(i, j)) *
               static_cast<long double>(m.weights(j));
      }
      resid(i) = static_cast<double>(acc);
    }
    m.weights += solve(resid);
  }
  return m;
}

KrigingModel fit_kriging_exact(const designs::Design& design,
                               const std::vector<double>& obs,
                               const KernelSpec& imposed) {
  const Eigen::LDLT<Eigen::MatrixXd> factor(
      corr_matrix(imposed, design.pts, design.domain.dim));
  return fit_kriging_exact_with_factor(design, obs, imposed, factor);
}

KrigingModel fit_kriging_exact_with_factor(
    const designs::Design& design, const std::vector<double>& obs,
    const KernelSpec& imposed, const Eigen::LDLT<Eigen::MatrixXd>& factor) {
  const int n = design.size();
  if (static_cast<int>(obs.size()) != n) {
    throw ConfigError("fit_kriging: observation count must match design size");
  }
  KrigingModel m;
  m.design = design;
  m.obs = obs;
  m.kernel = imposed;
  m.jitter_used = 0.0;
  const Eigen::Map<const Eigen::VectorXd> y(obs.data(), n);
  m.weights = factor.solve(y);
  if (!m.weights.allFinite()) {
    throw IllConditionedError(
        "fit_kriging_exact: LDLT solve produced non-finite weights");
  }
  return m;
}

double predict(const KrigingModel& model, const double* x) {
  return correlation_vector(model.kernel, model.design, x).dot(model.weights);
}

double power_function(const KernelSpec& true_kernel,
                      const designs::Design& design, const double* x) {
  const CholResult chol = cholesky_spd(
      corr_matrix(true_kernel, design.pts, design.domain.dim));
  const Eigen::VectorXd r = correlation_vector(true_kernel, design, x);
  const Eigen::VectorXd w = chol.L.triangularView<Eigen::Lower>().solve(r);
  double p2 = true_kernel.sigma2 * (1.0 - w.squaredNorm());
  if (p2 < 0.0) {
    g_clamp_count.fetch_add(1, std::memory_order_relaxed);
    p2 = 0.0;
  }
  return p2;
}

double quasi_power(const KernelSpec& true_kernel, const KernelSpec& imposed,
                   const designs::Design& design, const double* x) {
  const int dim = design.domain.dim;
  const CholResult chol_imp =
      cholesky_spd(corr_matrix(imposed, design.pts, dim));
  const Eigen::VectorXd r_imp = correlation_vector(imposed, design, x);
  const Eigen::VectorXd tmp =
      chol_imp.L.triangularView<Eigen::Lower>().solve(r_imp);
  const Eigen::VectorXd c =
      chol_imp.L.triangularView<Eigen::Lower>().transpose().solve(tmp);
  // With L_Psi L_Psi^T = K_Psi, w = L_Psi^{-1} r_Psi and v = L_Psi^T c,
  //   Q^2 = sigma^2 (1 - 2 r_Psi.c + c.K_Psi c)
  //       = sigma^2 (1 - |w|^2 + |w - v|^2),
  // which degrades gracefully to the power function as Phi -> Psi and keeps
  // Q^2 >= P^2 in floating point.
  const CholResult chol_true =
      cholesky_spd(corr_matrix(true_kernel, design.pts, dim));
  const Eigen::VectorXd r_true = correlation_vector(true_kernel, design, x);
  const Eigen::VectorXd w =
      chol_true.L.triangularView<Eigen::Lower>().solve(r_true);
  const Eigen::VectorXd v =
      chol_true.L.triangularView<Eigen::Lower>().transpose() * c;
  double q2 = true_kernel.sigma2 *
              (1.0 - w.squaredNorm() + (w - v).squaredNorm());
  if (q2 < 0.0) {
    g_clamp_count.fetch_add(1, std::memory_order_relaxed);
    q2 = 0.0;
  }
  return q2;
}

std::uint64_t negative_variance_clamps() {
  return g_clamp_count.load(std::memory_order_relaxed);
}

double empirical_error(const GpSample& sample, const KrigingModel& model,
                       const ErrorNormSpec& norm) {
  const designs::Design& eval = norm.eval_set;
  const int m = eval.size();
  const int dim = eval.domain.dim;
  if (m < 1) throw ConfigError("empirical_error: empty evaluation set");
  if (norm.kind == NormKind::Lp && !(norm.p >= 1.0)) {
    throw ConfigError("empirical_error: p must be >= 1");
  }
  const int total = static_cast<int>(sample.pts.size()) / sample.dim;
  const int n_design = model.design.size();
  double sup = 0.0;
  double acc = 0.0;
  for (int i = 0; i < m; ++i) {
    const double* x = eval.point(i);
    // Eval points are usually appended after the design block, in order.
    int idx = -1;
    const int hint = n_design + i;
    const auto matches = [&](int j) {
      const double* p = sample.pts.data() + static_cast<std::size_t>(j) * dim;
      for (int k = 0; k < dim; ++k) {
        if (p[k] != x[k]) return false;
      }
      return true;
    };
    if (hint < total && matches(hint)) {
      idx = hint;
    } else {
      for (int j = 0; j < total; ++j) {
        if (matches(j)) {
          idx = j;
          break;
        }
      }
    }
    if (idx < 0) {
      throw ContractError(
          "empirical_error: evaluation point not present in the sample");
    }
    const double err =
        std::abs(sample.values[static_cast<std::size_t>(idx)] -
                 predict(model, x));
    sup = std::max(sup, err);
    if (norm.kind == NormKind::Lp) acc += std::pow(err, norm.p);
  }
  if (norm.kind == NormKind::Sup) return sup;
  return std::pow(eval.domain.volume() / m * acc, 1.0 / norm.p);
}

}  // namespace krig::gp
