// Copyright 2026 the krig authors
// SPDX-License-Identifier: Apache-2.0

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>
#include <vector>

#include "krig/designs.hpp"
#include "krig/errors.hpp"
#include "krig/gp.hpp"
#include "oracles.hpp"

using namespace krig::gp;
using krig::designs::Design;
using krig::designs::Domain;
using krig::kernels::KernelSpec;

namespace {
// Joint points = design followed by one extra site.
std::vector<double> with_site(const Design& d, double x) {
  std::vector<double> pts = d.pts;
  pts.push_back(x);
  return pts;
}
}  // namespace

TEST_CASE("corr_matrix: symmetric with unit diagonal") {
  const Design d = krig::designs::gen_random(Domain::unit(1), 15, 3);
  const Eigen::MatrixXd m = corr_matrix(KernelSpec::matern(1.5, 1.0), d.pts, 1);
  CHECK(m.rows() == 15);
  CHECK(m.isApprox(m.transpose(), 1e-15));
  for (int i = 0; i < 15; ++i) CHECK(m(i, i) == 1.0);
}

TEST_CASE("cholesky_spd: clean factor, jitter ladder, hard failure") {
  Eigen::MatrixXd good = Eigen::MatrixXd::Identity(4, 4);
  good(0, 1) = good(1, 0) = 0.3;
  const CholResult ok = cholesky_spd(good);
  CHECK(ok.jitter == 0.0);
  CHECK((ok.L * ok.L.transpose()).isApprox(good, 1e-12));

  // Rank-deficient PSD matrix: needs jitter but must succeed.
  Eigen::MatrixXd rank1 = Eigen::VectorXd::Ones(5) *
                          Eigen::VectorXd::Ones(5).transpose();
  const CholResult fixed = cholesky_spd(rank1);
  CHECK(fixed.jitter > 0.0);
  CHECK(fixed.jitter <= 1e-8);

  Eigen::MatrixXd indef = Eigen::MatrixXd::Identity(3, 3);
  indef(2, 2) = -1.0;
  CHECK_THROWS_AS(cholesky_spd(indef), krig::IllConditionedError);
  try {
    cholesky_spd(indef);
  } catch (const krig::IllConditionedError& e) {
    CHECK(e.leading_minor == 3);
  }
}

TEST_CASE("sample_gp: deterministic per seed, empirical variance") {
  const Design d = krig::designs::gen_grid(Domain::unit(1), 5);
  const KernelSpec k = KernelSpec::matern(1.1, 1.0);
  const GpSample a = sample_gp(k, d.pts, 1, 42);
  const GpSample b = sample_gp(k, d.pts, 1, 42);
  CHECK(a.values == b.values);
  CHECK(a.values != sample_gp(k, d.pts, 1, 43).values);

  double sq = 0.0;
  const int reps = 4000;
  for (int r = 0; r < reps; ++r) {
    const GpSample s = sample_gp(k, d.pts, 1, 1000 + r);
    sq += s.values[2] * s.values[2];
  }
  CHECK(sq / reps == doctest::Approx(1.0).epsilon(0.07));
}

TEST_CASE("kriging: interpolates the observations") {
  const Design d = krig::designs::gen_halton(Domain::unit(1), 30);
  const GpSample z = sample_gp(KernelSpec::matern(1.1, 1.0), d.pts, 1, 5);
  // Deliberately misspecified smoothness: still an interpolant.
  const KrigingModel m = fit_kriging(d, z.values, KernelSpec::matern(2.8, 1.0));
  for (int i = 0; i < d.size(); ++i) {
    CHECK(std::abs(predict(m, d.point(i)) - z.values[i]) < 1e-7);
  }
}

TEST_CASE("kriging: unregularized fit agrees with the ladder fit when "
          "well conditioned") {
  const Design d = krig::designs::gen_grid(Domain::unit(1), 15);
  const KernelSpec k = KernelSpec::matern(1.1, 1.0);
  const GpSample z = sample_gp(k, d.pts, 1, 17);
  const KrigingModel a = fit_kriging(d, z.values, k);
  const KrigingModel b = fit_kriging_exact(d, z.values, k);
  CHECK(b.jitter_used == 0.0);
  for (double x : {0.03, 0.41, 0.77}) {
    CHECK(predict(a, &x) == doctest::Approx(predict(b, &x)).epsilon(1e-9));
  }
}

TEST_CASE("power function: vanishes on the design, bounded by sigma^2") {
  const Design d = krig::designs::gen_grid(Domain::unit(1), 9);
  const KernelSpec k = KernelSpec::matern(1.5, 1.0);
  for (int i = 0; i < d.size(); ++i) {
    CHECK(power_function(k, d, d.point(i)) < 1e-9);
  }
  for (double x : {0.0625, 0.31, 0.77}) {
    const double p2 = power_function(k, d, &x);
    CHECK(p2 > 0.0);
    CHECK(p2 <= k.sigma2);
  }
}

TEST_CASE("quasi power: collapses to power when correctly specified, "
          "dominates it otherwise") {
  const Design d = krig::designs::gen_halton(Domain::unit(1), 20);
  const KernelSpec truth = KernelSpec::matern(1.1, 1.0);
  const KernelSpec wrong = KernelSpec::matern(2.8, 1.0);
  for (double x : {0.07, 0.33, 0.81}) {
    const double p2 = power_function(truth, d, &x);
    CHECK(quasi_power(truth, truth, d, &x) ==
          doctest::Approx(p2).epsilon(1e-9));
    CHECK(quasi_power(truth, wrong, d, &x) >= p2 - 1e-12);
  }
}

TEST_CASE("quasi power: matches Monte Carlo mean squared error") {
  const Design d = krig::designs::gen_grid(Domain::unit(1), 11);
  const KernelSpec truth = KernelSpec::matern(1.1, 1.0);
  const KernelSpec wrong = KernelSpec::matern(1.9, 1.0);
  const double x = 0.512;  // off the grid and off the dyadic rationals
  const std::vector<double> joint = with_site(d, x);
  const CholResult factor =
      cholesky_spd(corr_matrix(truth, joint, 1));

  double mse_true = 0.0, mse_wrong = 0.0;
  const int reps = 3000;
  for (int r = 0; r < reps; ++r) {
    const GpSample s = sample_gp_with_factor(factor.L, joint, 1, 1.0, 70000 + r);
    std::vector<double> obs(s.values.begin(), s.values.end() - 1);
    const double zx = s.values.back();
    const double et = predict(fit_kriging(d, obs, truth), &x) - zx;
    const double ew = predict(fit_kriging(d, obs, wrong), &x) - zx;
    mse_true += et * et / reps;
    mse_wrong += ew * ew / reps;
  }
  CHECK(mse_true == doctest::Approx(power_function(truth, d, &x)).epsilon(0.1));
  CHECK(mse_wrong ==
        doctest::Approx(quasi_power(truth, wrong, d, &x)).epsilon(0.1));
  // The true-kernel predictor is the best linear predictor.
  CHECK(mse_true <= mse_wrong * 1.02);
}

TEST_CASE("empirical_error: sup and Lp norms on a constructed sample") {
  const Design d = krig::designs::gen_grid(Domain::unit(1), 5);
  Design eval;
  eval.domain = Domain::unit(1);
  eval.pts = {0.3, 0.6};
  std::vector<double> joint = d.pts;
  joint.insert(joint.end(), eval.pts.begin(), eval.pts.end());

  const KernelSpec k = KernelSpec::matern(0.5, 1.0);
  GpSample s = sample_gp(k, joint, 1, 9);
  std::vector<double> obs(s.values.begin(), s.values.begin() + d.size());
  const KrigingModel m = fit_kriging(d, obs, k);

  const double e0 = std::abs(s.values[5] - predict(m, &eval.pts[0]));
  const double e1 = std::abs(s.values[6] - predict(m, &eval.pts[1]));
  ErrorNormSpec sup{NormKind::Sup, 2.0, eval};
  CHECK(empirical_error(s, m, sup) ==
        doctest::Approx(std::max(e0, e1)).epsilon(1e-12));
  ErrorNormSpec l2{NormKind::Lp, 2.0, eval};
  CHECK(empirical_error(s, m, l2) ==
        doctest::Approx(std::sqrt((e0 * e0 + e1 * e1) / 2.0)).epsilon(1e-12));

  // Eval point absent from the sample is a contract violation.
  Design stray = eval;
  stray.pts = {0.1234};
  ErrorNormSpec bad{NormKind::Sup, 2.0, stray};
  CHECK_THROWS_AS(empirical_error(s, m, bad), krig::ContractError);
}
