// Copyright 2026 the krig authors
// SPDX-License-Identifier: Apache-2.0

#include "krig.h"

#include <cstdlib>
#include <cstring>
#include <string>

#include <json.hpp>

#include "krig/errors.hpp"
#include "krig/experiments.hpp"
#include "krig/gp.hpp"

using nlohmann::json;

namespace {

thread_local std::string t_last_error;

void set_error(const char* msg) { t_last_error = msg; }

krig_status classify(std::exception_ptr ep) {
  try {
    std::rethrow_exception(ep);
  } catch (const krig::DomainError& e) {
    set_error(e.what());
    return KRIG_ERR_DOMAIN;
  } catch (const krig::ConfigError& e) {
    set_error(e.what());
    return KRIG_ERR_CONFIG;
  } catch (const krig::IllConditionedError& e) {
    set_error(e.what());
    return KRIG_ERR_ILL_CONDITIONED;
  } catch (const krig::ContractError& e) {
    set_error(e.what());
    return KRIG_ERR_CONTRACT;
  } catch (const krig::ExperimentError& e) {
    set_error(e.what());
    return KRIG_ERR_EXPERIMENT;
  } catch (const json::exception& e) {
    set_error(e.what());
    return KRIG_ERR_PARSE;
  } catch (const std::exception& e) {
    set_error(e.what());
    return KRIG_ERR_INTERNAL;
  }
}

template <typename F>
krig_status guarded(F&& f) {
  try {
    f();
    return KRIG_OK;
  } catch (...) {
    return classify(std::current_exception());
  }
}

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out) std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

krig::designs::Scheme scheme_from_string(const std::string& s) {
  if (s == "random") return krig::designs::Scheme::Random;
  if (s == "grid") return krig::designs::Scheme::Grid;
  if (s == "halton") return krig::designs::Scheme::Halton;
  throw krig::ConfigError("unknown scheme: " + s);
}

std::string scheme_to_string(krig::designs::Scheme s) {
  switch (s) {
    case krig::designs::Scheme::Random: return "random";
    case krig::designs::Scheme::Grid: return "grid";
    case krig::designs::Scheme::Halton: return "halton";
    default: return "external";
  }
}

krig::experiments::ExperimentConfig config_from_json(const json& j) {
  krig::experiments::ExperimentConfig cfg;
  cfg.replications = 30;  // desk-scale default; full study via overrides
  cfg.sample_sizes = krig::experiments::default_sample_sizes();
  if (j.contains("nu0")) cfg.nu0 = j.at("nu0").get<double>();
  if (j.contains("nu")) cfg.nu = j.at("nu").get<double>();
  if (j.contains("phi_true")) cfg.phi_true = j.at("phi_true").get<double>();
  if (j.contains("phi_imposed")) cfg.phi_imposed = j.at("phi_imposed").get<double>();
  if (j.contains("phi")) {
    cfg.phi_true = cfg.phi_imposed = j.at("phi").get<double>();
  }
  if (j.contains("sigma2")) cfg.sigma2 = j.at("sigma2").get<double>();
  if (j.contains("scheme")) {
    cfg.scheme = scheme_from_string(j.at("scheme").get<std::string>());
  }
  if (j.contains("sample_sizes")) {
    cfg.sample_sizes = j.at("sample_sizes").get<std::vector<int>>();
  }
  if (j.contains("replications")) cfg.replications = j.at("replications").get<int>();
  if (j.contains("eval_points")) cfg.eval_points = j.at("eval_points").get<int>();
  if (j.contains("norm")) {
    const std::string norm = j.at("norm").get<std::string>();
    if (norm == "sup") {
      cfg.norm = krig::gp::NormKind::Sup;
    } else if (norm == "lp") {
      cfg.norm = krig::gp::NormKind::Lp;
    } else {
      throw krig::ConfigError("unknown norm: " + norm);
    }
  }
  if (j.contains("p")) cfg.p = j.at("p").get<double>();
  if (j.contains("base_seed")) cfg.base_seed = j.at("base_seed").get<std::uint64_t>();
  if (j.contains("threads")) cfg.threads = j.at("threads").get<int>();
  return cfg;
}

json config_to_json(const krig::experiments::ExperimentConfig& cfg) {
  return json{{"nu0", cfg.nu0},
              {"nu", cfg.nu},
              {"phi_true", cfg.phi_true},
              {"phi_imposed", cfg.phi_imposed},
              {"sigma2", cfg.sigma2},
              {"scheme", scheme_to_string(cfg.scheme)},
              {"sample_sizes", cfg.sample_sizes},
              {"replications", cfg.replications},
              {"eval_points", cfg.eval_points},
              {"norm", cfg.norm == krig::gp::NormKind::Sup ? "sup" : "lp"},
              {"p", cfg.p},
              {"base_seed", cfg.base_seed},
              {"threads", cfg.threads}};
}

json fit_to_json(const krig::experiments::RateFit& fit) {
  json per_n = json::array();
  for (const auto& cell : fit.per_n) {
    per_n.push_back(json{{"n", cell.n},
                         {"mean_error", cell.mean_error},
                         {"errors", cell.errors},
                         {"dropped", cell.dropped}});
  }
  json j{{"slope", fit.slope},
         {"intercept", fit.intercept},
         {"r_squared", fit.r_squared},
         {"convergent", fit.theoretical.convergent},
         {"theoretical_slope", fit.theoretical.exponent},
         {"dropped_replications", fit.dropped_replications},
         {"per_n", per_n}};
  return j;
}

struct KernelWrap {
  krig::kernels::KernelSpec spec;
  int dim_hint = 1;
};

}  // namespace

struct krig_kernel : KernelWrap {};
struct krig_design : krig::designs::Design {};
struct krig_model : krig::gp::KrigingModel {};

extern "C" {

const char* krig_version(void) { return "0.1.0"; }

const char* krig_last_error(void) { return t_last_error.c_str(); }

krig_kernel* krig_kernel_matern(double nu, double phi, double sigma2) {
  krig_kernel* k = nullptr;
  guarded([&] {
    auto spec = krig::kernels::KernelSpec::matern(nu, phi, sigma2);
    krig::kernels::validate(spec, 1);
    k = new krig_kernel;
    k->spec = spec;
  });
  return k;
}

krig_kernel* krig_kernel_wendland(double kappa, double mu, double phi,
                                  double sigma2, int dim) {
  krig_kernel* k = nullptr;
  guarded([&] {
    auto spec = krig::kernels::KernelSpec::wendland(kappa, mu, phi, sigma2);
    krig::kernels::validate(spec, dim);
    k = new krig_kernel;
    k->spec = spec;
    k->dim_hint = dim;
  });
  return k;
}

void krig_kernel_free(krig_kernel* k) { delete k; }

krig_status krig_kernel_corr(const krig_kernel* k, double r, int dim,
                             double* out) {
  if (!k || !out) {
    set_error("null argument");
    return KRIG_ERR_CONTRACT;
  }
  return guarded([&] { *out = krig::kernels::corr(k->spec, r, dim); });
}

krig_status krig_kernel_spectral(const krig_kernel* k, int dim, double omega,
                                 double* out) {
  if (!k || !out) {
    set_error("null argument");
    return KRIG_ERR_CONTRACT;
  }
  return guarded(
      [&] { *out = krig::kernels::matern_spectral(k->spec, dim, omega); });
}

krig_design* krig_design_random(int dim, int n, uint64_t seed) {
  krig_design* d = nullptr;
  guarded([&] {
    d = new krig_design;
    static_cast<krig::designs::Design&>(*d) =
        krig::designs::gen_random(krig::designs::Domain::unit(dim), n, seed);
  });
  return d;
}

krig_design* krig_design_grid(int dim, int n) {
  krig_design* d = nullptr;
  const krig_status st = guarded([&] {
    auto design = krig::designs::gen_grid(krig::designs::Domain::unit(dim), n);
    d = new krig_design;
    static_cast<krig::designs::Design&>(*d) = std::move(design);
  });
  (void)st;
  return d;
}

krig_design* krig_design_halton(int dim, int n) {
  krig_design* d = nullptr;
  guarded([&] {
    auto design =
        krig::designs::gen_halton(krig::designs::Domain::unit(dim), n);
    d = new krig_design;
    static_cast<krig::designs::Design&>(*d) = std::move(design);
  });
  return d;
}

krig_design* krig_design_from_points(int dim, int n, const double* pts) {
  krig_design* d = nullptr;
  guarded([&] {
    if (!pts || n < 1) throw krig::ConfigError("null or empty point list");
    std::vector<double> v(pts, pts + static_cast<std::size_t>(n) * dim);
    auto design = krig::designs::design_from_points(
        krig::designs::Domain::unit(dim), std::move(v));
    d = new krig_design;
    static_cast<krig::designs::Design&>(*d) = std::move(design);
  });
  return d;
}

void krig_design_free(krig_design* d) { delete d; }

int krig_design_size(const krig_design* d) { return d ? d->size() : 0; }

int krig_design_dim(const krig_design* d) { return d ? d->domain.dim : 0; }

krig_status krig_design_points(const krig_design* d, double* out) {
  if (!d || !out) {
    set_error("null argument");
    return KRIG_ERR_CONTRACT;
  }
  std::memcpy(out, d->pts.data(), d->pts.size() * sizeof(double));
  return KRIG_OK;
}

krig_status krig_design_metrics(const krig_design* d, int resolution,
                                double* fill, double* separation, double* rho,
                                int* exact) {
  if (!d) {
    set_error("null argument");
    return KRIG_ERR_CONTRACT;
  }
  return guarded([&] {
    const auto m =
        krig::designs::metrics(*d, resolution > 0 ? resolution : 128);
    if (fill) *fill = m.fill_distance;
    if (separation) *separation = m.separation_radius;
    if (rho) *rho = m.mesh_ratio;
    if (exact) *exact = m.fill_is_exact ? 1 : 0;
  });
}

krig_status krig_gp_sample(const krig_kernel* k, const krig_design* d,
                           uint64_t seed, double* values_out) {
  if (!k || !d || !values_out) {
    set_error("null argument");
    return KRIG_ERR_CONTRACT;
  }
  return guarded([&] {
    const auto sample =
        krig::gp::sample_gp(k->spec, d->pts, d->domain.dim, seed);
    std::memcpy(values_out, sample.values.data(),
                sample.values.size() * sizeof(double));
  });
}

krig_model* krig_fit(const krig_design* d, const double* obs,
                     const krig_kernel* imposed) {
  krig_model* m = nullptr;
  guarded([&] {
    if (!d || !obs || !imposed) throw krig::ContractError("null argument");
    std::vector<double> y(obs, obs + d->size());
    auto model = krig::gp::fit_kriging(*d, y, imposed->spec);
    m = new krig_model;
    static_cast<krig::gp::KrigingModel&>(*m) = std::move(model);
  });
  return m;
}

void krig_model_free(krig_model* m) { delete m; }

krig_status krig_predict(const krig_model* m, const double* x, double* out) {
  if (!m || !x || !out) {
    set_error("null argument");
    return KRIG_ERR_CONTRACT;
  }
  return guarded([&] { *out = krig::gp::predict(*m, x); });
}

double krig_model_jitter(const krig_model* m) {
  return m ? m->jitter_used : -1.0;
}

krig_status krig_power_function(const krig_kernel* true_kernel,
                                const krig_design* d, const double* x,
                                double* out) {
  if (!true_kernel || !d || !x || !out) {
    set_error("null argument");
    return KRIG_ERR_CONTRACT;
  }
  return guarded(
      [&] { *out = krig::gp::power_function(true_kernel->spec, *d, x); });
}

krig_status krig_quasi_power(const krig_kernel* true_kernel,
                             const krig_kernel* imposed, const krig_design* d,
                             const double* x, double* out) {
  if (!true_kernel || !imposed || !d || !x || !out) {
    set_error("null argument");
    return KRIG_ERR_CONTRACT;
  }
  return guarded([&] {
    *out = krig::gp::quasi_power(true_kernel->spec, imposed->spec, *d, x);
  });
}

char* krig_rate_study_json(const char* config_json) {
  char* out = nullptr;
  guarded([&] {
    const json j = config_json && *config_json ? json::parse(config_json)
                                               : json::object();
    const auto cfg = config_from_json(j);
    const auto fit = krig::experiments::run_rate_study(cfg);
    json result{{"config", config_to_json(cfg)}, {"fit", fit_to_json(fit)}};
    out = dup_string(result.dump());
  });
  return out;
}

char* krig_table2_json(const char* overrides_json) {
  char* out = nullptr;
  guarded([&] {
    const json j = overrides_json && *overrides_json
                       ? json::parse(overrides_json)
                       : json::object();
    const auto base = config_from_json(j);
    const auto configs = krig::experiments::table2_configs(base);
    const auto rows = krig::experiments::reproduce_table2(configs);
    json jrows = json::array();
    for (const auto& row : rows) {
      json jr{{"config", config_to_json(row.config)},
              {"fit", fit_to_json(row.fit)}};
      if (row.relative_difference >= 0.0) {
        jr["relative_difference"] = row.relative_difference;
      } else {
        jr["relative_difference"] = nullptr;
      }
      jrows.push_back(std::move(jr));
    }
    json result{{"rows", jrows}};
    out = dup_string(result.dump());
  });
  return out;
}

void krig_string_free(char* s) { std::free(s); }

}  // extern "C"
