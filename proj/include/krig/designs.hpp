// Copyright 2026 the krig authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <vector>

namespace krig::designs {

/// Rectangular experimental region, one closed interval per coordinate.
struct Domain {
  int dim = 1;
  std::vector<std::array<double, 2>> bounds;  // {lo, hi} per axis

  static Domain unit(int d = 1);
  double volume() const;
  bool contains(const double* x) const;
};

enum class Scheme { Random, Grid, Halton, External };

/// A finite point set X in a Domain, with provenance.
/// Points are stored row-major, size() * domain.dim entries.
struct Design {
  Domain domain;
  std::vector<double> pts;
  Scheme scheme = Scheme::External;
  std::uint64_t seed = 0;

  int size() const { return domain.dim == 0 ? 0 : static_cast<int>(pts.size()) / domain.dim; }
  const double* point(int i) const { return pts.data() + static_cast<std::size_t>(i) * domain.dim; }
};

struct DesignMetrics {
  double fill_distance;
  double separation_radius;
  double mesh_ratio;
  bool fill_is_exact;
};

/// n i.i.d. uniform points, deterministic per seed. Requires n >= 2.
Design gen_random(const Domain& domain, int n, std::uint64_t seed);

/// Equispaced lattice including both endpoints per axis.
/// For dim > 1, n must be a perfect dim-th power.
Design gen_grid(const Domain& domain, int n);

/// First n Halton points (bases: first dim primes), scaled to the domain.
/// In 1D this is the van der Corput sequence base 2.
Design gen_halton(const Domain& domain, int n);

/// Wraps an externally supplied point list; checks containment.
Design design_from_points(const Domain& domain, std::vector<double> pts);

/// q_X = min pairwise distance / 2. Throws on duplicates.
double separation_radius(const Design& design);

struct FillResult {
  double value;
  bool exact;
};

/// h_{X,Omega}. Exact sorted-gap formula in 1D; for dim > 1 a maximin
/// lower bound over a lattice of `resolution` candidates per axis.
FillResult fill_distance(const Design& design, int resolution = 128);

/// rho = h / q >= 1.
double mesh_ratio(const Design& design, int resolution = 128);

DesignMetrics metrics(const Design& design, int resolution = 128);

/// (E_1/E_{n+1}, ..., E_n/E_{n+1}) for partial sums E_k of i.i.d. unit
/// exponentials; distributed as uniform order statistics.
std::vector<double> exponential_spacing_sample(int n, std::uint64_t seed);

/// CSV, one point per row, '.' decimal separator, LF line endings.
void write_csv(std::ostream& os, const Design& design, bool header = false);
Design read_csv(std::istream& is, const Domain* domain = nullptr);

}  // namespace krig::designs
