// Copyright 2026 the krig authors
// SPDX-License-Identifier: Apache-2.0

#include "krig/special.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "krig/errors.hpp"

namespace krig::special {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;
constexpr double kEuler = 0.57721566490153286060651209008240243;
constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr int kMaxIter = 20000;

// gam1 = (1/Gamma(1-mu) - 1/Gamma(1+mu)) / (2 mu), gam2 = the half-sum,
// gampl = 1/Gamma(1+mu), gammi = 1/Gamma(1-mu), for |mu| <= 1/2.
//
// Near mu = 0 the difference quotient cancels, so switch to the expansion
// 1/Gamma(1+mu) = exp(A(mu) + B(mu)) with odd part A = euler*mu +
// zeta(3) mu^3/3 + ... and even part B = -zeta(2) mu^2/2 - ...
void temme_gammas(double mu, double& gam1, double& gam2, double& gampl,
                  double& gammi) {
  if (std::abs(mu) < 1e-4) {
    constexpr double zeta2 = 1.6449340668482264365;
    constexpr double zeta3 = 1.2020569031595942854;
    const double a = mu * (kEuler + zeta3 * mu * mu / 3.0);
    const double b = -zeta2 * mu * mu / 2.0;
    const double eb = std::exp(b);
    gampl = std::exp(a + b);
    gammi = std::exp(b - a);
    gam2 = eb * std::cosh(a);
    gam1 = (mu == 0.0) ? -kEuler : -eb * std::sinh(a) / mu;
  } else {
    const long double gp = 1.0L / std::tgammal(1.0L + (long double)mu);
    const long double gm = 1.0L / std::tgammal(1.0L - (long double)mu);
    gampl = (double)gp;
    gammi = (double)gm;
    gam1 = (double)((gm - gp) / (2.0L * (long double)mu));
    gam2 = (double)((gm + gp) / 2.0L);
  }
}

// K_mu(x) and K_{mu+1}(x) for |mu| <= 1/2, x <= 2, via Temme's series.
void bessel_k_temme(double mu, double x, double& kmu, double& kmu1) {
  const double x2 = 0.5 * x;
  const double mu2 = mu * mu;
  const double pimu = kPi * mu;
  const double fact = (std::abs(pimu) < kEps) ? 1.0 : pimu / std::sin(pimu);
  double d = -std::log(x2);
  double e = mu * d;
  const double fact2 = (std::abs(e) < kEps) ? 1.0 : std::sinh(e) / e;
  double gam1, gam2, gampl, gammi;
  temme_gammas(mu, gam1, gam2, gampl, gammi);
  double ff = fact * (gam1 * std::cosh(e) + gam2 * fact2 * d);
  double sum = ff;
  e = std::exp(e);
  double p = 0.5 * e / gampl;
  double q = 0.5 / (e * gammi);
  double c = 1.0;
  d = x2 * x2;
  double sum1 = p;
  int i = 1;
  for (; i <= kMaxIter; ++i) {
    ff = (i * ff + p + q) / (i * i - mu2);
    c *= d / i;
    p /= (i - mu);
    q /= (i + mu);
    const double del = c * ff;
    sum += del;
    sum1 += c * (p - i * ff);
    if (std::abs(del) < std::abs(sum) * kEps) break;
  }
  kmu = sum;
  kmu1 = sum1 * 2.0 / x;
}

// K_mu(x) and K_{mu+1}(x) for |mu| <= 1/2, x >= 2, via Steed's CF2.
void bessel_k_cf2(double mu, double x, double& kmu, double& kmu1) {
  const double mu2 = mu * mu;
  double b = 2.0 * (1.0 + x);
  double d = 1.0 / b;
  double h = d;
  double delh = d;
  double q1 = 0.0, q2 = 1.0;
  const double a1 = 0.25 - mu2;
  double q = a1;
  double c = a1;
  double a = -a1;
  double s = 1.0 + q * delh;
  for (int i = 2; i <= kMaxIter; ++i) {
    a -= 2 * (i - 1);
    c = -a * c / i;
    const double qnew = (q1 - b * q2) / a;
    q1 = q2;
    q2 = qnew;
    q += c * qnew;
    b += 2.0;
    d = 1.0 / (b + a * d);
    delh = (b * d - 1.0) * delh;
    h += delh;
    const double dels = q * delh;
    s += dels;
    if (std::abs(dels / s) < kEps) break;
  }
  h = a1 * h;
  kmu = std::sqrt(kPi / (2.0 * x)) * std::exp(-x) / s;
  kmu1 = kmu * (mu + x + 0.5 - h) / x;
}

}  // namespace

double gamma_fn(double x) {
  if (!(x > 0.0)) {
    throw DomainError("gamma_fn: argument must be positive, got " +
                      std::to_string(x));
  }
  return std::tgamma(x);
}

double bessel_k(double nu, double z) {
  if (!(nu > 0.0)) {
    throw DomainError("bessel_k: order must be positive, got " +
                      std::to_string(nu));
  }
  if (!(z > 0.0)) {
    throw DomainError("bessel_k: argument must be positive, got " +
                      std::to_string(z));
  }
  // Underflow policy: the e^{-z} envelope vanishes in double precision.
  if (z > 740.0 && nu <= 50.0) return 0.0;

  const int nl = static_cast<int>(nu + 0.5);
  const double mu = nu - nl;  // |mu| <= 1/2
  double kmu, kmu1;
  if (z < 2.0) {
    bessel_k_temme(mu, z, kmu, kmu1);
  } else {
    bessel_k_cf2(mu, z, kmu, kmu1);
  }
  // Upward recurrence K_{m+1} = K_{m-1} + (2m/z) K_m.
  for (int i = 1; i <= nl; ++i) {
    const double knext = 2.0 * (mu + i) / z * kmu1 + kmu;
    kmu = kmu1;
    kmu1 = knext;
  }
  return kmu;
}

}  // namespace krig::special
