/*
 * Copyright 2026 the krig authors
 * SPDX-License-Identifier: Apache-2.0
 *
 * C interface to the krig library: Matern-family kernels, space-filling
 * design metrics, Gaussian process simulation, kriging interpolation and
 * convergence-rate studies. All objects are opaque handles; every fallible
 * call returns a krig_status and leaves a thread-local message retrievable
 * via krig_last_error().
 */

#ifndef KRIG_H
#define KRIG_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum krig_status {
  KRIG_OK = 0,
  KRIG_ERR_DOMAIN = 1,          /* bad scalar argument */
  KRIG_ERR_CONFIG = 2,          /* invalid parameters / sizes */
  KRIG_ERR_ILL_CONDITIONED = 3, /* factorization failed at max jitter */
  KRIG_ERR_CONTRACT = 4,        /* API contract violation */
  KRIG_ERR_PARSE = 5,           /* malformed JSON / CSV input */
  KRIG_ERR_EXPERIMENT = 6,      /* too many dropped replications */
  KRIG_ERR_INTERNAL = 7
} krig_status;

typedef struct krig_kernel krig_kernel;
typedef struct krig_design krig_design;
typedef struct krig_model krig_model;

const char* krig_version(void);

/* Message for the most recent failure on this thread ("" if none). */
const char* krig_last_error(void);

/* ---- kernels ---------------------------------------------------------- */

krig_kernel* krig_kernel_matern(double nu, double phi, double sigma2);
krig_kernel* krig_kernel_wendland(double kappa, double mu, double phi,
                                  double sigma2, int dim);
void krig_kernel_free(krig_kernel* k);

krig_status krig_kernel_corr(const krig_kernel* k, double r, int dim,
                             double* out);
/* Matern spectral density at frequency norm omega in dimension dim. */
krig_status krig_kernel_spectral(const krig_kernel* k, int dim, double omega,
                                 double* out);

/* ---- designs ---------------------------------------------------------- */

/* All constructors use the unit cube [0,1]^dim and return NULL on error. */
krig_design* krig_design_random(int dim, int n, uint64_t seed);
krig_design* krig_design_grid(int dim, int n);
krig_design* krig_design_halton(int dim, int n);
krig_design* krig_design_from_points(int dim, int n, const double* pts);
void krig_design_free(krig_design* d);

int krig_design_size(const krig_design* d);
int krig_design_dim(const krig_design* d);
/* Copies size*dim doubles, row-major. */
krig_status krig_design_points(const krig_design* d, double* out);

/* Fill distance, separation radius, mesh ratio. `exact` reports whether the
 * fill distance is exact (1D) or a lattice lower bound. */
krig_status krig_design_metrics(const krig_design* d, int resolution,
                                double* fill, double* separation, double* rho,
                                int* exact);

/* ---- Gaussian process simulation and kriging -------------------------- */

/* One joint zero-mean draw at the design points; values_out has size n. */
krig_status krig_gp_sample(const krig_kernel* k, const krig_design* d,
                           uint64_t seed, double* values_out);

krig_model* krig_fit(const krig_design* d, const double* obs,
                     const krig_kernel* imposed);
void krig_model_free(krig_model* m);

krig_status krig_predict(const krig_model* m, const double* x, double* out);
double krig_model_jitter(const krig_model* m);

krig_status krig_power_function(const krig_kernel* true_kernel,
                                const krig_design* d, const double* x,
                                double* out);
krig_status krig_quasi_power(const krig_kernel* true_kernel,
                             const krig_kernel* imposed, const krig_design* d,
                             const double* x, double* out);

/* ---- rate studies ----------------------------------------------------- */

/* Runs one convergence-rate study described by a JSON config document and
 * returns a malloc'd JSON result (resolved config, per-n errors, OLS fit,
 * theoretical slope). NULL on error. Free with krig_string_free. */
char* krig_rate_study_json(const char* config_json);

/* Runs the eight-row (nu0, nu) x (random, grid) study. `overrides_json`
 * (may be NULL or "{}") adjusts replications, sample_sizes, base_seed, ... */
char* krig_table2_json(const char* overrides_json);

void krig_string_free(char* s);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* KRIG_H */
