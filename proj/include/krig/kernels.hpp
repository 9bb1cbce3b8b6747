// Copyright 2026 the krig authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

namespace krig::kernels {

enum class Family { Matern, GeneralizedWendland };

/// Parameters of an isotropic correlation function.
///
/// Matern uses (nu, phi, sigma2); the generalized Wendland family uses
/// (kappa, mu, phi, sigma2) and additionally requires mu >= (d+1)/2 + kappa
/// for the ambient dimension d, checked at evaluation time.
struct KernelSpec {
  Family family = Family::Matern;
  double nu = 0.5;      // Matern smoothness
  double phi = 1.0;     // inverse length-scale
  double kappa = 1.0;   // GW shape
  double mu = 2.0;      // GW tail exponent
  double sigma2 = 1.0;  // process variance

  static KernelSpec matern(double nu, double phi, double sigma2 = 1.0);
  static KernelSpec wendland(double kappa, double mu, double phi,
                             double sigma2 = 1.0);
};

/// Validates the parameter constraints for ambient dimension `dim`.
/// Throws ConfigError on violation.
void validate(const KernelSpec& spec, int dim);

/// Matern correlation at distance r >= 0. Exactly 1 at r = 0.
double matern_corr(const KernelSpec& spec, double r);

/// Matern spectral density at frequency norm ||omega|| in dimension `dim`.
double matern_spectral(const KernelSpec& spec, int dim, double omega_norm);

/// Generalized Wendland correlation at distance r >= 0.
/// Compactly supported: 0 for phi*r >= 1.
double wendland_corr(const KernelSpec& spec, double r, int dim);

/// Family dispatch on scalar distance.
double corr(const KernelSpec& spec, double r, int dim);

}  // namespace krig::kernels
