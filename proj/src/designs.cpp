// Copyright 2026 the krig authors
// SPDX-License-Identifier: Apache-2.0

#include "krig/designs.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <limits>
#include <ostream>
#include <random>
#include <sstream>
#include <string>

#include "krig/errors.hpp"

namespace krig::designs {

namespace {

const int kHaltonBases[] = {2,  3,  5,  7,  11, 13, 17, 19, 23, 29,
                            31, 37, 41, 43, 47, 53, 59, 61, 67, 71};

double radical_inverse(std::uint64_t index, int base) {
  double inv = 1.0 / base;
  double f = inv;
  double value = 0.0;
  while (index > 0) {
    value += f * static_cast<double>(index % base);
    index /= base;
    f *= inv;
  }
  return value;
}

double sq_dist(const double* a, const double* b, int dim) {
  double s = 0.0;
  for (int k = 0; k < dim; ++k) {
    const double d = a[k] - b[k];
    s += d * d;
  }
  return s;
}

void check_domain(const Domain& domain) {
  if (domain.dim < 1 || static_cast<int>(domain.bounds.size()) != domain.dim) {
    throw ConfigError("domain: bounds must supply one interval per coordinate");
  }
  for (const auto& b : domain.bounds) {
    if (!(b[1] > b[0])) {
      throw ConfigError("domain: every interval must have positive length");
    }
  }
}

}  // namespace

Domain Domain::unit(int d) {
  Domain dom;
  dom.dim = d;
  dom.bounds.assign(static_cast<std::size_t>(d), {0.0, 1.0});
  return dom;
}

double Domain::volume() const {
  double v = 1.0;
  for (const auto& b : bounds) v *= b[1] - b[0];
  return v;
}

bool Domain::contains(const double* x) const {
  for (int k = 0; k < dim; ++k) {
    if (x[k] < bounds[k][0] || x[k] > bounds[k][1]) return false;
  }
  return true;
}

Design gen_random(const Domain& domain, int n, std::uint64_t seed) {
  check_domain(domain);
  if (n < 2) throw ConfigError("gen_random: need at least 2 points");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  Design d;
  d.domain = domain;
  d.scheme = Scheme::Random;
  d.seed = seed;
  d.pts.resize(static_cast<std::size_t>(n) * domain.dim);
  for (int i = 0; i < n; ++i) {
    for (int k = 0; k < domain.dim; ++k) {
      const auto& b = domain.bounds[k];
      d.pts[static_cast<std::size_t>(i) * domain.dim + k] =
          b[0] + (b[1] - b[0]) * unif(rng);
    }
  }
  return d;
}

Design gen_grid(const Domain& domain, int n) {
  check_domain(domain);
  if (n < 2) throw ConfigError("gen_grid: need at least 2 points");
  const int dim = domain.dim;
  int m = n;
  if (dim > 1) {
    m = static_cast<int>(std::llround(std::pow(static_cast<double>(n), 1.0 / dim)));
    // llround can land one off for near-integer roots
    for (int cand = std::max(1, m - 1); cand <= m + 1; ++cand) {
      long long pw = 1;
      for (int k = 0; k < dim; ++k) pw *= cand;
      if (pw == n) {
        m = cand;
        break;
      }
      if (cand == m + 1) {
        throw ConfigError("gen_grid: n = " + std::to_string(n) +
                          " is not a perfect power for dimension " +
                          std::to_string(dim));
      }
    }
  }
  if (m < 2) throw ConfigError("gen_grid: need at least 2 points per axis");
  Design d;
  d.domain = domain;
  d.scheme = Scheme::Grid;
  d.pts.reserve(static_cast<std::size_t>(n) * dim);
  std::vector<int> idx(static_cast<std::size_t>(dim), 0);
  for (int i = 0; i < n; ++i) {
    for (int k = 0; k < dim; ++k) {
      const auto& b = domain.bounds[k];
      d.pts.push_back(b[0] + (b[1] - b[0]) * idx[k] / (m - 1));
    }
    for (int k = dim - 1; k >= 0; --k) {
      if (++idx[k] < m) break;
      idx[k] = 0;
    }
  }
  return d;
}

Design gen_halton(const Domain& domain, int n) {
  check_domain(domain);
  if (n < 1) throw ConfigError("gen_halton: need at least 1 point");
  const int dim = domain.dim;
  if (dim > static_cast<int>(sizeof(kHaltonBases) / sizeof(int))) {
    throw ConfigError("gen_halton: dimension exceeds the supplied prime bases");
  }
  Design d;
  d.domain = domain;
  d.scheme = Scheme::Halton;
  d.pts.resize(static_cast<std::size_t>(n) * dim);
  for (int i = 0; i < n; ++i) {
    for (int k = 0; k < dim; ++k) {
      const auto& b = domain.bounds[k];
      d.pts[static_cast<std::size_t>(i) * dim + k] =
          b[0] + (b[1] - b[0]) *
                     radical_inverse(static_cast<std::uint64_t>(i) + 1,
                                     kHaltonBases[k]);
    }
  }
  return d;
}

Design design_from_points(const Domain& domain, std::vector<double> pts) {
  check_domain(domain);
  if (pts.empty() || pts.size() % domain.dim != 0) {
    throw ConfigError("design_from_points: point list size must be a multiple of dim");
  }
  Design d;
  d.domain = domain;
  d.scheme = Scheme::External;
  d.pts = std::move(pts);
  const int n = d.size();
  for (int i = 0; i < n; ++i) {
    if (!domain.contains(d.point(i))) {
      throw ConfigError("design_from_points: point " + std::to_string(i) +
                        " lies outside the domain");
    }
  }
  return d;
}

double separation_radius(const Design& design) {
  const int n = design.size();
  const int dim = design.domain.dim;
  if (n < 2) throw ConfigError("separation_radius: need at least 2 points");
  double best = std::numeric_limits<double>::infinity();
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      best = std::min(best, sq_dist(design.point(i), design.point(j), dim));
    }
  }
  if (best == 0.0) {
    throw ConfigError("separation_radius: design contains duplicate points");
  }
  return 0.5 * std::sqrt(best);
}

FillResult fill_distance(const Design& design, int resolution) {
  const int n = design.size();
  const int dim = design.domain.dim;
  if (n < 1) throw ConfigError("fill_distance: empty design");
  if (dim == 1) {
    std::vector<double> xs(design.pts);
    std::sort(xs.begin(), xs.end());
    const double lo = design.domain.bounds[0][0];
    const double hi = design.domain.bounds[0][1];
    double h = std::max(xs.front() - lo, hi - xs.back());
    for (int i = 0; i + 1 < n; ++i) {
      h = std::max(h, 0.5 * (xs[i + 1] - xs[i]));
    }
    return {h, true};
  }
  if (resolution < 2) throw ConfigError("fill_distance: resolution must be >= 2");
  // Maximin over a candidate lattice; a lower bound on the true supremum.
  std::vector<int> idx(static_cast<std::size_t>(dim), 0);
  std::vector<double> x(static_cast<std::size_t>(dim));
  double h2 = 0.0;
  bool done = false;
  while (!done) {
    for (int k = 0; k < dim; ++k) {
      const auto& b = design.domain.bounds[k];
      x[k] = b[0] + (b[1] - b[0]) * idx[k] / (resolution - 1);
    }
    double nearest = std::numeric_limits<double>::infinity();
    for (int j = 0; j < n; ++j) {
      nearest = std::min(nearest, sq_dist(x.data(), design.point(j), dim));
    }
    h2 = std::max(h2, nearest);
    done = true;
    for (int k = dim - 1; k >= 0; --k) {
      if (++idx[k] < resolution) {
        done = false;
        break;
      }
      idx[k] = 0;
    }
  }
  return {std::sqrt(h2), false};
}

double mesh_ratio(const Design& design, int resolution) {
  return fill_distance(design, resolution).value / separation_radius(design);
}

DesignMetrics metrics(const Design& design, int resolution) {
  const FillResult f = fill_distance(design, resolution);
  const double q = separation_radius(design);
  return {f.value, q, f.value / q, f.exact};
}

std::vector<double> exponential_spacing_sample(int n, std::uint64_t seed) {
  if (n < 1) throw ConfigError("exponential_spacing_sample: need n >= 1");
  std::mt19937_64 rng(seed);
  std::exponential_distribution<double> expo(1.0);
  std::vector<double> partial(static_cast<std::size_t>(n));
  double sum = 0.0;
  for (int i = 0; i < n; ++i) {
    sum += expo(rng);
    partial[static_cast<std::size_t>(i)] = sum;
  }
  sum += expo(rng);  // E_{n+1}
  for (double& v : partial) v /= sum;
  return partial;
}

void write_csv(std::ostream& os, const Design& design, bool header) {
  const int n = design.size();
  const int dim = design.domain.dim;
  if (header) {
    for (int k = 0; k < dim; ++k) {
      os << (k ? "," : "") << "x" << k + 1;
    }
    os << "\n";
  }
  std::ostringstream fmt;
  fmt.precision(17);
  for (int i = 0; i < n; ++i) {
    fmt.str("");
    for (int k = 0; k < dim; ++k) {
      if (k) fmt << ",";
      fmt << design.point(i)[k];
    }
    os << fmt.str() << "\n";
  }
}

Design read_csv(std::istream& is, const Domain* domain) {
  std::vector<double> pts;
  int dim = -1;
  std::string line;
  bool first = true;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::stringstream ss(line);
    std::string cell;
    std::vector<double> row;
    bool numeric = true;
    while (std::getline(ss, cell, ',')) {
      try {
        std::size_t pos = 0;
        row.push_back(std::stod(cell, &pos));
        if (pos != cell.size() && cell.find_first_not_of(" \t\r", pos) != std::string::npos) {
          numeric = false;
        }
      } catch (const std::exception&) {
        numeric = false;
      }
    }
    if (!numeric) {
      if (first) {  // header row
        first = false;
        continue;
      }
      throw ConfigError("read_csv: non-numeric cell in row: " + line);
    }
    first = false;
    if (dim < 0) dim = static_cast<int>(row.size());
    if (static_cast<int>(row.size()) != dim) {
      throw ConfigError("read_csv: inconsistent column count");
    }
    pts.insert(pts.end(), row.begin(), row.end());
  }
  if (dim < 1) throw ConfigError("read_csv: no data rows");
  Domain dom = domain ? *domain : Domain::unit(dim);
  return design_from_points(dom, std::move(pts));
}

}  // namespace krig::designs
