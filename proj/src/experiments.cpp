// Copyright 2026 the krig authors
// SPDX-License-Identifier: Apache-2.0

#include "krig/experiments.hpp"

#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <string>
#include <thread>

#include "krig/errors.hpp"

namespace krig::experiments {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

void validate_config(const ExperimentConfig& cfg) {
  if (!(cfg.nu0 > 0.0) || !(cfg.nu > 0.0)) {
    throw ConfigError("experiment: smoothness parameters must be positive");
  }
  if (!(cfg.phi_true > 0.0) || !(cfg.phi_imposed > 0.0) ||
      !(cfg.sigma2 > 0.0)) {
    throw ConfigError("experiment: phi and sigma2 must be positive");
  }
  if (cfg.replications < 1) {
    throw ConfigError("experiment: need at least one replication");
  }
  if (cfg.eval_points < 1) {
    throw ConfigError("experiment: need at least one evaluation point");
  }
  if (cfg.sample_sizes.size() < 3) {
    throw ConfigError("experiment: need at least 3 sample sizes to regress");
  }
  int prev = 1;
  for (int n : cfg.sample_sizes) {
    if (n < 2 || n <= prev) {
      throw ConfigError(
          "experiment: sample sizes must be strictly increasing and >= 2");
    }
    prev = n;
  }
}

// Run `count` jobs on `threads` workers; job errors other than
// ill-conditioning propagate after join.
template <typename Job>
void parallel_for(int count, int threads, const Job& job) {
  if (threads <= 0) {
    threads = static_cast<int>(std::thread::hardware_concurrency());
    if (threads <= 0) threads = 1;
  }
  threads = std::min(threads, count);
  if (threads <= 1) {
    for (int i = 0; i < count; ++i) job(i);
    return;
  }
  std::atomic<int> next{0};
  std::exception_ptr first_error;
  std::mutex error_mutex;
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(threads));
  for (int t = 0; t < threads; ++t) {
    pool.emplace_back([&] {
      for (;;) {
        const int i = next.fetch_add(1);
        if (i >= count) return;
        try {
          job(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(error_mutex);
          if (!first_error) first_error = std::current_exception();
        }
      }
    });
  }
  for (auto& th : pool) th.join();
  if (first_error) std::rethrow_exception(first_error);
}

}  // namespace

std::vector<int> default_sample_sizes() {
  std::vector<int> sizes;
  for (int n = 20; n <= 150; n += 10) sizes.push_back(n);
  return sizes;
}

TheoreticalSlope theoretical_slope(double nu0, double nu,
                                   designs::Scheme scheme,
                                   gp::NormKind /*norm_kind*/) {
  if (scheme == designs::Scheme::Random) {
    if (nu > nu0) {
      const double slope = 2.0 * nu0 - nu;
      return {slope, slope > 0.0};
    }
    // Undersmoothed random sampling: h_n of order n^-1 log n; the exponent
    // is nu and the log factor is left as a caveat.
    return {nu, true};
  }
  return {std::min(nu, nu0), true};
}

OlsFit ols_fit(const std::vector<double>& xs, const std::vector<double>& ys) {
  const std::size_t n = xs.size();
  if (n < 3 || ys.size() != n) {
    throw ConfigError("ols_fit: need at least 3 paired points");
  }
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= static_cast<double>(n);
  my /= static_cast<double>(n);
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double dx = xs[i] - mx;
    const double dy = ys[i] - my;
    sxx += dx * dx;
    sxy += dx * dy;
    syy += dy * dy;
  }
  if (sxx == 0.0) throw ConfigError("ols_fit: degenerate predictor values");
  const double slope = sxy / sxx;
  const double intercept = my - slope * mx;
  double r2 = 0.0;  // zero-total-variance convention
  if (syy > 0.0) {
    double ss_res = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double resid = ys[i] - (intercept + slope * xs[i]);
      ss_res += resid * resid;
    }
    r2 = 1.0 - ss_res / syy;
  }
  return {slope, intercept, r2};
}

std::uint64_t derive_seed(std::uint64_t base, std::uint64_t n,
                          std::uint64_t rep, std::uint64_t stream) {
  std::uint64_t s = splitmix64(base);
  s = splitmix64(s ^ (n * 0xD1342543DE82EF95ULL + 1));
  s = splitmix64(s ^ (rep * 0xC6BC279692B5C323ULL + 2));
  s = splitmix64(s ^ (stream * 0x2545F4914F6CDD1DULL + 3));
  return s;
}

RateFit run_rate_study(const ExperimentConfig& config) {
  ExperimentConfig cfg = config;
  if (cfg.sample_sizes.empty()) cfg.sample_sizes = default_sample_sizes();
  validate_config(cfg);

  const int dim = cfg.domain.dim;
  const designs::Design eval = gen_halton(cfg.domain, cfg.eval_points);
  const kernels::KernelSpec true_kernel =
      kernels::KernelSpec::matern(cfg.nu0, cfg.phi_true, cfg.sigma2);
  const kernels::KernelSpec imposed =
      kernels::KernelSpec::matern(cfg.nu, cfg.phi_imposed, cfg.sigma2);
  const double sigma = std::sqrt(cfg.sigma2);
  gp::ErrorNormSpec norm{cfg.norm, cfg.p, eval};

  RateFit fit;
  fit.theoretical =
      theoretical_slope(cfg.nu0, cfg.nu, cfg.scheme, cfg.norm);
  fit.per_n.resize(cfg.sample_sizes.size());

  const bool fixed_design = cfg.scheme != designs::Scheme::Random;
  for (std::size_t si = 0; si < cfg.sample_sizes.size(); ++si) {
    const int n = cfg.sample_sizes[si];
    PerSampleSize& cell = fit.per_n[si];
    cell.n = n;

    // Fixed schemes share one design, one joint sampling factor and one
    // kriging factor across replications; only the draw varies.
    designs::Design shared_design;
    std::vector<double> shared_joint;
    Eigen::MatrixXd shared_sample_L;
    Eigen::LDLT<Eigen::MatrixXd> shared_fit_factor;
    if (fixed_design) {
      shared_design = cfg.scheme == designs::Scheme::Grid
                          ? gen_grid(cfg.domain, n)
                          : gen_halton(cfg.domain, n);
      shared_joint = shared_design.pts;
      shared_joint.insert(shared_joint.end(), eval.pts.begin(),
                          eval.pts.end());
      shared_sample_L =
          gp::cholesky_spd(gp::corr_matrix(true_kernel, shared_joint, dim)).L;
      shared_fit_factor.compute(
          gp::corr_matrix(imposed, shared_design.pts, dim));
    }

    std::vector<double> errors(static_cast<std::size_t>(cfg.replications),
                               -1.0);
    parallel_for(cfg.replications, cfg.threads, [&](int rep) {
      const std::uint64_t design_seed =
          derive_seed(cfg.base_seed, static_cast<std::uint64_t>(n),
                      static_cast<std::uint64_t>(rep), 0);
      const std::uint64_t sample_seed =
          derive_seed(cfg.base_seed, static_cast<std::uint64_t>(n),
                      static_cast<std::uint64_t>(rep), 1);
      try {
        if (fixed_design) {
          gp::GpSample sample = gp::sample_gp_with_factor(
              shared_sample_L, shared_joint, dim, sigma, sample_seed);
          sample.kernel = true_kernel;
          const std::vector<double> obs(
              sample.values.begin(),
              sample.values.begin() + shared_design.size());
          const gp::KrigingModel model = gp::fit_kriging_exact_with_factor(
              shared_design, obs, imposed, shared_fit_factor);
          errors[static_cast<std::size_t>(rep)] =
              gp::empirical_error(sample, model, norm);
        } else {
          const designs::Design design =
              gen_random(cfg.domain, n, design_seed);
          std::vector<double> joint = design.pts;
          joint.insert(joint.end(), eval.pts.begin(), eval.pts.end());
          gp::GpSample sample =
              gp::sample_gp(true_kernel, joint, dim, sample_seed);
          const std::vector<double> obs(sample.values.begin(),
                                        sample.values.begin() + n);
          const gp::KrigingModel model =
              gp::fit_kriging_exact(design, obs, imposed);
          errors[static_cast<std::size_t>(rep)] =
              gp::empirical_error(sample, model, norm);
        }
      } catch (const IllConditionedError&) {
        errors[static_cast<std::size_t>(rep)] = -1.0;  // dropped
      }
    });

    for (double e : errors) {
      if (e < 0.0) {
        ++cell.dropped;
      } else {
        cell.errors.push_back(e);
      }
    }
    fit.dropped_replications += cell.dropped;
    if (cell.dropped * 10 > cfg.replications) {
      throw ExperimentError(
          "run_rate_study: more than 10% of replications dropped at n = " +
          std::to_string(n));
    }
    double sum = 0.0;
    for (double e : cell.errors) sum += e;
    cell.mean_error = sum / static_cast<double>(cell.errors.size());
  }

  std::vector<double> xs, ys;
  xs.reserve(fit.per_n.size());
  ys.reserve(fit.per_n.size());
  for (const PerSampleSize& cell : fit.per_n) {
    xs.push_back(std::log(1.0 / cell.n));
    ys.push_back(std::log(cell.mean_error));
  }
  const OlsFit ols = ols_fit(xs, ys);
  fit.slope = ols.slope;
  fit.intercept = ols.intercept;
  fit.r_squared = ols.r_squared;
  return fit;
}

std::vector<ExperimentConfig> table2_configs(const ExperimentConfig& base) {
  const double pairs[][2] = {{1.1, 1.3}, {1.1, 2.8}, {2.1, 2.8}, {1.5, 3.5}};
  std::vector<ExperimentConfig> configs;
  for (const auto& pair : pairs) {
    for (designs::Scheme scheme :
         {designs::Scheme::Random, designs::Scheme::Grid}) {
      ExperimentConfig cfg = base;
      cfg.nu0 = pair[0];
      cfg.nu = pair[1];
      cfg.scheme = scheme;
      configs.push_back(cfg);
    }
  }
  return configs;
}

std::vector<Table2Row> reproduce_table2(
    const std::vector<ExperimentConfig>& configs) {
  std::vector<Table2Row> rows;
  rows.reserve(configs.size());
  for (const ExperimentConfig& cfg : configs) {
    Table2Row row;
    row.config = cfg;
    row.fit = run_rate_study(cfg);
    if (row.fit.theoretical.convergent && row.fit.theoretical.exponent > 0.0) {
      row.relative_difference =
          std::abs(row.fit.slope - row.fit.theoretical.exponent) /
          row.fit.theoretical.exponent;
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace krig::experiments
