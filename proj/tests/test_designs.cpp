// Copyright 2026 the krig authors
// SPDX-License-Identifier: Apache-2.0

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <sstream>

#include "krig/designs.hpp"
#include "krig/errors.hpp"
#include "oracles.hpp"

using namespace krig::designs;

TEST_CASE("domain: unit cube volume and containment") {
  const Domain d2 = Domain::unit(2);
  CHECK(d2.dim == 2);
  CHECK(d2.volume() == 1.0);
  const double inside[] = {0.5, 0.0};
  const double outside[] = {0.5, 1.0 + 1e-9};
  CHECK(d2.contains(inside));
  CHECK(!d2.contains(outside));
}

TEST_CASE("grid: 1D endpoints and exact metrics") {
  const Design g = gen_grid(Domain::unit(1), 5);
  REQUIRE(g.size() == 5);
  CHECK(g.pts.front() == 0.0);
  CHECK(g.pts.back() == 1.0);
  const DesignMetrics m = metrics(g);
  CHECK(m.separation_radius == doctest::Approx(0.125).epsilon(1e-14));
  CHECK(m.fill_distance == doctest::Approx(0.125).epsilon(1e-14));
  CHECK(m.mesh_ratio == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(m.fill_is_exact);
}

TEST_CASE("grid: 2D requires perfect square") {
  const Design g = gen_grid(Domain::unit(2), 9);
  CHECK(g.size() == 9);
  CHECK_THROWS_AS(gen_grid(Domain::unit(2), 10), krig::ConfigError);
}

TEST_CASE("halton: van der Corput prefix in 1D") {
  const Design h = gen_halton(Domain::unit(1), 6);
  const double want[] = {0.5, 0.25, 0.75, 0.125, 0.625, 0.375};
  for (int i = 0; i < 6; ++i) {
    CHECK(h.pts[i] == doctest::Approx(want[i]).epsilon(1e-15));
  }
}

TEST_CASE("halton: 2D second axis is base 3") {
  const Design h = gen_halton(Domain::unit(2), 4);
  const double want_y[] = {1.0 / 3, 2.0 / 3, 1.0 / 9, 4.0 / 9};
  for (int i = 0; i < 4; ++i) {
    CHECK(h.pts[2 * i + 1] == doctest::Approx(want_y[i]).epsilon(1e-15));
  }
}

TEST_CASE("random: deterministic per seed, in domain") {
  const Domain dom = Domain::unit(2);
  const Design a = gen_random(dom, 40, 99);
  const Design b = gen_random(dom, 40, 99);
  const Design c = gen_random(dom, 40, 100);
  CHECK(a.pts == b.pts);
  CHECK(a.pts != c.pts);
  for (int i = 0; i < a.size(); ++i) CHECK(dom.contains(a.point(i)));
}

TEST_CASE("separation radius matches brute force") {
  for (std::uint64_t seed : {1ULL, 2ULL, 3ULL}) {
    for (int dim : {1, 2}) {
      const Design d = gen_random(Domain::unit(dim), 60, seed);
      CHECK(separation_radius(d) ==
            doctest::Approx(oracles::separation_brute_force(d.pts, dim))
                .epsilon(1e-13));
    }
  }
  Design dup = design_from_points(Domain::unit(1), {0.1, 0.5, 0.1});
  CHECK_THROWS_AS(separation_radius(dup), krig::ConfigError);
}

TEST_CASE("fill distance: 1D exact vs dense candidate sweep") {
  for (std::uint64_t seed : {4ULL, 5ULL, 6ULL}) {
    const Design d = gen_random(Domain::unit(1), 25, seed);
    const FillResult f = fill_distance(d);
    CHECK(f.exact);
    const double lower = oracles::fill_1d_brute_force(d.pts, 0.0, 1.0, 200001);
    CHECK(f.value >= lower - 1e-12);
    CHECK(f.value <= lower + 1e-4);  // candidate sweep is a lower bound
  }
}

TEST_CASE("fill distance: 2D lattice bound brackets grid truth") {
  // 2D grid with spacing 1/2: true fill = sqrt(2)/4 at cell centers.
  const Design g = gen_grid(Domain::unit(2), 9);
  const FillResult f = fill_distance(g, 256);
  CHECK(!f.exact);
  CHECK(f.value <= std::sqrt(2.0) / 4.0 + 1e-12);
  CHECK(f.value > std::sqrt(2.0) / 4.0 - 0.01);
}

TEST_CASE("mesh ratio: at least one, quasi-uniform sequences stay bounded") {
  for (int n : {20, 60, 150}) {
    CHECK(mesh_ratio(gen_grid(Domain::unit(1), n)) ==
          doctest::Approx(1.0).epsilon(1e-9));
    CHECK(mesh_ratio(gen_halton(Domain::unit(1), n)) < 6.0);
  }
  // Random designs are not quasi-uniform: the mesh ratio grows with n.
  double rho_small = 0.0, rho_big = 0.0;
  for (std::uint64_t s = 0; s < 20; ++s) {
    rho_small += mesh_ratio(gen_random(Domain::unit(1), 20, 1000 + s)) / 20.0;
    rho_big += mesh_ratio(gen_random(Domain::unit(1), 150, 2000 + s)) / 20.0;
  }
  CHECK(rho_big > 2.0 * rho_small);
  CHECK(rho_small > 1.0);
}

TEST_CASE("exponential spacing sample: sorted uniforms in (0,1)") {
  const std::vector<double> u = exponential_spacing_sample(100, 31);
  REQUIRE(u.size() == 100);
  for (std::size_t i = 0; i < u.size(); ++i) {
    CHECK(u[i] > 0.0);
    CHECK(u[i] < 1.0);
    if (i > 0) CHECK(u[i] > u[i - 1]);
  }
  CHECK(u == exponential_spacing_sample(100, 31));
  CHECK(u != exponential_spacing_sample(100, 32));
}

TEST_CASE("csv round trip preserves points exactly") {
  const Design d = gen_random(Domain::unit(2), 17, 8);
  std::stringstream ss;
  write_csv(ss, d);
  const Design back = read_csv(ss, &d.domain);
  CHECK(back.size() == d.size());
  CHECK(back.pts == d.pts);
}

TEST_CASE("design_from_points: containment enforced") {
  CHECK_THROWS_AS(design_from_points(Domain::unit(1), {0.2, 1.4}),
                  krig::ConfigError);
  const Design d = design_from_points(Domain::unit(1), {0.2, 0.9});
  CHECK(d.scheme == Scheme::External);
}

TEST_CASE("generator argument validation") {
  CHECK_THROWS_AS(gen_random(Domain::unit(1), 1, 0), krig::ConfigError);
  CHECK_THROWS_AS(gen_grid(Domain::unit(1), 1), krig::ConfigError);
  CHECK_THROWS_AS(gen_halton(Domain::unit(1), 0), krig::ConfigError);
}
