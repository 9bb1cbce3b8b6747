// Copyright 2026 the krig authors
// SPDX-License-Identifier: Apache-2.0

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstring>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "krig.h"

using nlohmann::json;

TEST_CASE("version and clean error state") {
  CHECK(std::strlen(krig_version()) > 0);
  CHECK(std::string(krig_last_error()).empty());
}

TEST_CASE("kernel: create, evaluate, error paths") {
  krig_kernel* k = krig_kernel_matern(0.5, 1.0, 1.0);
  REQUIRE(k != nullptr);
  double v = 0.0;
  CHECK(krig_kernel_corr(k, 1.0, 1, &v) == KRIG_OK);
  CHECK(v == doctest::Approx(std::exp(-std::sqrt(2.0))).epsilon(1e-12));
  CHECK(krig_kernel_spectral(k, 1, 0.0, &v) == KRIG_OK);
  CHECK(v > 0.0);
  CHECK(krig_kernel_corr(k, -1.0, 1, &v) == KRIG_ERR_DOMAIN);
  CHECK(std::strlen(krig_last_error()) > 0);
  krig_kernel_free(k);

  CHECK(krig_kernel_matern(-1.0, 1.0, 1.0) == nullptr);
  CHECK(std::strlen(krig_last_error()) > 0);

  krig_kernel* w = krig_kernel_wendland(1.0, 2.5, 1.0, 1.0, 1);
  REQUIRE(w != nullptr);
  CHECK(krig_kernel_corr(w, 2.0, 1, &v) == KRIG_OK);
  CHECK(v == 0.0);
  /* Spectral density is only defined for the Matern family. */
  CHECK(krig_kernel_spectral(w, 1, 1.0, &v) == KRIG_ERR_CONFIG);
  krig_kernel_free(w);
}

TEST_CASE("design: constructors, accessors, metrics") {
  krig_design* g = krig_design_grid(1, 5);
  REQUIRE(g != nullptr);
  CHECK(krig_design_size(g) == 5);
  CHECK(krig_design_dim(g) == 1);
  std::vector<double> pts(5);
  CHECK(krig_design_points(g, pts.data()) == KRIG_OK);
  CHECK(pts[0] == 0.0);
  CHECK(pts[4] == 1.0);
  double fill = 0, sep = 0, rho = 0;
  int exact = 0;
  CHECK(krig_design_metrics(g, 128, &fill, &sep, &rho, &exact) == KRIG_OK);
  CHECK(fill == doctest::Approx(0.125));
  CHECK(sep == doctest::Approx(0.125));
  CHECK(rho == doctest::Approx(1.0));
  CHECK(exact == 1);
  krig_design_free(g);

  CHECK(krig_design_grid(2, 10) == nullptr);

  krig_design* r = krig_design_random(2, 30, 7);
  REQUIRE(r != nullptr);
  CHECK(krig_design_size(r) == 30);
  krig_design_free(r);

  const double raw[] = {0.1, 0.4, 0.9};
  krig_design* e = krig_design_from_points(1, 3, raw);
  REQUIRE(e != nullptr);
  krig_design_free(e);
  const double bad[] = {0.1, 1.4};
  CHECK(krig_design_from_points(1, 2, bad) == nullptr);
}

TEST_CASE("gp sample, fit, predict round trip") {
  krig_design* d = krig_design_halton(1, 25);
  krig_kernel* truth = krig_kernel_matern(1.1, 1.0, 1.0);
  krig_kernel* imposed = krig_kernel_matern(1.3, 1.0, 1.0);
  REQUIRE(d != nullptr);
  REQUIRE(truth != nullptr);

  std::vector<double> obs(25);
  REQUIRE(krig_gp_sample(truth, d, 11, obs.data()) == KRIG_OK);
  std::vector<double> again(25);
  REQUIRE(krig_gp_sample(truth, d, 11, again.data()) == KRIG_OK);
  CHECK(obs == again);

  krig_model* m = krig_fit(d, obs.data(), imposed);
  REQUIRE(m != nullptr);
  CHECK(krig_model_jitter(m) >= 0.0);
  std::vector<double> dpts(25);
  krig_design_points(d, dpts.data());
  for (int i = 0; i < 25; ++i) {
    double pred = 0.0;
    CHECK(krig_predict(m, &dpts[i], &pred) == KRIG_OK);
    CHECK(std::abs(pred - obs[i]) < 1e-7);
  }

  double x = 0.3111, p2 = 0.0, q2 = 0.0;
  CHECK(krig_power_function(truth, d, &x, &p2) == KRIG_OK);
  CHECK(krig_quasi_power(truth, imposed, d, &x, &q2) == KRIG_OK);
  CHECK(p2 > 0.0);
  CHECK(q2 >= p2 - 1e-12);

  krig_model_free(m);
  krig_kernel_free(imposed);
  krig_kernel_free(truth);
  krig_design_free(d);
}

TEST_CASE("rate study JSON: round trip and validation") {
  const json cfg = {{"nu0", 1.1},
                    {"nu", 1.3},
                    {"scheme", "grid"},
                    {"sample_sizes", {20, 40, 80}},
                    {"replications", 8},
                    {"eval_points", 50},
                    {"base_seed", 3}};
  char* out = krig_rate_study_json(cfg.dump().c_str());
  REQUIRE(out != nullptr);
  const json res = json::parse(out);
  krig_string_free(out);

  CHECK(res.at("config").at("scheme") == "grid");
  CHECK(res.at("fit").at("slope").get<double>() > 0.0);
  CHECK(res.at("fit").at("theoretical_slope").get<double>() ==
        doctest::Approx(1.1));
  CHECK(res.at("fit").at("convergent").get<bool>());
  CHECK(res.at("fit").at("per_n").size() == 3);
  CHECK(res.at("fit").at("per_n")[0].at("n") == 20);
  CHECK(res.at("fit").at("per_n")[0].at("mean_error").get<double>() > 0.0);

  CHECK(krig_rate_study_json("{not json") == nullptr);
  CHECK(std::strlen(krig_last_error()) > 0);
  CHECK(krig_rate_study_json(R"({"nu0": -2})") == nullptr);
}

TEST_CASE("table2 JSON: eight rows with overrides applied") {
  const json overrides = {{"replications", 2},
                          {"sample_sizes", {20, 40, 80}},
                          {"eval_points", 30},
                          {"base_seed", 12}};
  char* out = krig_table2_json(overrides.dump().c_str());
  REQUIRE(out != nullptr);
  const json res = json::parse(out);
  krig_string_free(out);

  REQUIRE(res.at("rows").size() == 8);
  for (const json& row : res.at("rows")) {
    CHECK(row.at("config").at("replications") == 2);
    CHECK(row.contains("fit"));
  }
}
