// Copyright 2026 the krig authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

#include "krig/designs.hpp"
#include "krig/kernels.hpp"

namespace krig::gp {

using kernels::KernelSpec;

/// Correlation matrix of a point set: entry (j,k) = corr(||x_j - x_k||).
Eigen::MatrixXd corr_matrix(const KernelSpec& kernel,
                            const std::vector<double>& pts, int dim);

struct CholResult {
  Eigen::MatrixXd L;  // lower triangular, L L^T = m + jitter I
  double jitter;
};

/// Cholesky with jitter escalation 0 -> 1e-12 -> 1e-10 -> 1e-8 (capped at
/// max_jitter). Throws IllConditionedError when every level fails.
CholResult cholesky_spd(const Eigen::MatrixXd& m, double max_jitter = 1e-8);

/// One joint draw of a zero-mean GP at a point set.
struct GpSample {
  std::vector<double> pts;
  int dim = 1;
  std::vector<double> values;
  KernelSpec kernel;
  std::uint64_t seed = 0;
};

GpSample sample_gp(const KernelSpec& kernel, const std::vector<double>& pts,
                   int dim, std::uint64_t seed);

/// Draw reusing a precomputed correlation factor (sigma scales the draw).
GpSample sample_gp_with_factor(const Eigen::MatrixXd& L,
                               const std::vector<double>& pts, int dim,
                               double sigma, std::uint64_t seed);

/// A fitted kriging interpolant r_Phi(x)^T K_Phi^{-1} Y with cached factor.
struct KrigingModel {
  designs::Design design;
  std::vector<double> obs;
  KernelSpec kernel;  // imposed correlation Phi
  Eigen::MatrixXd chol_L;
  Eigen::VectorXd weights;  // K_Phi^{-1} Y
  double jitter_used = 0.0;
};

KrigingModel fit_kriging(const designs::Design& design,
                         const std::vector<double>& obs,
                         const KernelSpec& imposed);

/// Fit against an externally cached factor of K_Phi (same design).
KrigingModel fit_kriging_with_factor(const designs::Design& design,
                                     const std::vector<double>& obs,
                                     const KernelSpec& imposed,
                                     const CholResult& factor);

/// Unregularized fit: symmetric-indefinite LDLT solve of K_Phi w = Y with no
/// jitter. Used by the rate studies, where regularization would suppress the
/// ill-conditioning effects under measurement; chol_L is left empty. Throws
/// IllConditionedError when the solve produces non-finite weights.
KrigingModel fit_kriging_exact(const designs::Design& design,
                               const std::vector<double>& obs,
                               const KernelSpec& imposed);

/// Unregularized fit against an externally cached LDLT factor (same design).
KrigingModel fit_kriging_exact_with_factor(
    const designs::Design& design, const std::vector<double>& obs,
    const KernelSpec& imposed, const Eigen::LDLT<Eigen::MatrixXd>& factor);

double predict(const KrigingModel& model, const double* x);

/// P^2(x) = sigma^2 (1 - r^T K^{-1} r), clamped at 0.
double power_function(const KernelSpec& true_kernel,
                      const designs::Design& design, const double* x);

/// Q^2(x) = sigma^2 (1 - 2 r_Psi^T c + c^T K_Psi c), c = K_Phi^{-1} r_Phi(x).
double quasi_power(const KernelSpec& true_kernel, const KernelSpec& imposed,
                   const designs::Design& design, const double* x);

/// Count of clamped negative-variance evaluations since process start.
std::uint64_t negative_variance_clamps();

enum class NormKind { Sup, Lp };

struct ErrorNormSpec {
  NormKind kind = NormKind::Sup;
  double p = 2.0;
  designs::Design eval_set;
};

/// Sup or equal-weight-quadrature L_p norm of Z - prediction over eval_set.
/// Every eval point must appear in the sample.
double empirical_error(const GpSample& sample, const KrigingModel& model,
                       const ErrorNormSpec& norm);

}  // namespace krig::gp
