// Copyright 2026 the krig authors
// SPDX-License-Identifier: Apache-2.0

#include "krig/kernels.hpp"

#include <cmath>
#include <string>

#include "krig/errors.hpp"
#include "krig/special.hpp"

namespace krig::kernels {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;

// Adaptive Simpson with absolute tolerance, depth-limited.
template <typename F>
double simpson_step(const F& f, double a, double b, double fa, double fm,
                    double fb, double whole, double tol, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = f(lm);
  const double frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const double delta = left + right - whole;
  if (depth <= 0 || std::abs(delta) <= 15.0 * tol) {
    return left + right + delta / 15.0;
  }
  return simpson_step(f, a, m, fa, flm, fm, left, tol / 2.0, depth - 1) +
         simpson_step(f, m, b, fm, frm, fb, right, tol / 2.0, depth - 1);
}

template <typename F>
double adaptive_simpson(const F& f, double a, double b, double tol) {
  const double m = 0.5 * (a + b);
  const double fa = f(a), fm = f(m), fb = f(b);
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return simpson_step(f, a, b, fa, fm, fb, whole, tol, 48);
}

double log_beta(double a, double b) {
  return std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b);
}

}  // namespace

KernelSpec KernelSpec::matern(double nu, double phi, double sigma2) {
  KernelSpec s;
  s.family = Family::Matern;
  s.nu = nu;
  s.phi = phi;
  s.sigma2 = sigma2;
  return s;
}

KernelSpec KernelSpec::wendland(double kappa, double mu, double phi,
                                double sigma2) {
  KernelSpec s;
  s.family = Family::GeneralizedWendland;
  s.kappa = kappa;
  s.mu = mu;
  s.phi = phi;
  s.sigma2 = sigma2;
  return s;
}

void validate(const KernelSpec& spec, int dim) {
  if (dim < 1) throw ConfigError("kernel: ambient dimension must be >= 1");
  if (!(spec.phi > 0.0)) throw ConfigError("kernel: phi must be positive");
  if (!(spec.sigma2 > 0.0)) throw ConfigError("kernel: sigma2 must be positive");
  if (spec.family == Family::Matern) {
    if (!(spec.nu > 0.0)) throw ConfigError("kernel: nu must be positive");
  } else {
    if (!(spec.kappa > 0.0)) throw ConfigError("kernel: kappa must be positive");
    const double lower = (dim + 1) / 2.0 + spec.kappa;
    if (spec.mu < lower) {
      throw ConfigError("kernel: generalized Wendland requires mu >= (d+1)/2 + kappa = " +
                        std::to_string(lower) + ", got mu = " +
                        std::to_string(spec.mu));
    }
  }
}

double matern_corr(const KernelSpec& spec, double r) {
  if (spec.family != Family::Matern) {
    throw ConfigError("matern_corr: kernel is not a Matern kernel");
  }
  if (r < 0.0) throw DomainError("matern_corr: distance must be nonnegative");
  const double z = 2.0 * std::sqrt(spec.nu) * spec.phi * r;
  // The product z^nu K_nu(z) is indeterminate at z = 0; the analytic limit
  // is Gamma(nu) 2^{nu-1}, i.e. unit correlation.
  if (z < 1e-14) return 1.0;
  const double log_norm =
      std::lgamma(spec.nu) + (spec.nu - 1.0) * std::log(2.0);
  const double k = special::bessel_k(spec.nu, z);
  if (k == 0.0) return 0.0;
  return std::exp(spec.nu * std::log(z) + std::log(k) - log_norm);
}

double matern_spectral(const KernelSpec& spec, int dim, double omega_norm) {
  if (spec.family != Family::Matern) {
    throw ConfigError("matern_spectral: kernel is not a Matern kernel");
  }
  if (dim < 1) throw ConfigError("matern_spectral: dimension must be >= 1");
  if (omega_norm < 0.0) {
    throw DomainError("matern_spectral: frequency norm must be nonnegative");
  }
  const double a = 4.0 * spec.nu * spec.phi * spec.phi;
  const double log_f = -0.5 * dim * std::log(kPi) +
                       std::lgamma(spec.nu + 0.5 * dim) -
                       std::lgamma(spec.nu) + spec.nu * std::log(a) -
                       (spec.nu + 0.5 * dim) *
                           std::log(a + omega_norm * omega_norm);
  return std::exp(log_f);
}

double wendland_corr(const KernelSpec& spec, double r, int dim) {
  if (spec.family != Family::GeneralizedWendland) {
    throw ConfigError("wendland_corr: kernel is not a generalized Wendland kernel");
  }
  validate(spec, dim);
  if (r < 0.0) throw DomainError("wendland_corr: distance must be nonnegative");
  const double a = spec.phi * r;
  if (a >= 1.0) return 0.0;
  if (a == 0.0) return 1.0;
  const double kappa = spec.kappa;
  const double mu = spec.mu;
  const double a2 = a * a;
  // With w = u^2 - a^2 and then v = w^kappa the defining integral becomes
  //   1/(2 kappa) * Int_0^{(1-a^2)^kappa} (1 - sqrt(v^{1/kappa} + a^2))^mu dv,
  // which removes the algebraic endpoint singularity for kappa < 1.
  const auto integrand = [&](double v) {
    const double w = std::pow(v, 1.0 / kappa);
    const double u = std::sqrt(w + a2);
    const double one_minus_u = 1.0 - u;
    if (one_minus_u <= 0.0) return 0.0;
    return std::pow(one_minus_u, mu);
  };
  const double upper = std::pow(1.0 - a2, kappa);
  const double integral =
      adaptive_simpson(integrand, 0.0, upper, 1e-13) / (2.0 * kappa);
  return integral * std::exp(-log_beta(2.0 * kappa, mu + 1.0));
}

double corr(const KernelSpec& spec, double r, int dim) {
  if (spec.family == Family::Matern) return matern_corr(spec, r);
  return wendland_corr(spec, r, dim);
}

}  // namespace krig::kernels
