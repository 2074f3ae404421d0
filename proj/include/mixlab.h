/*
 * Copyright 2026 The mixlab Authors
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

/*
 * C API of libmixlab: projected stochastic Langevin chains, Renyi divergence
 * calculators, contractive-iteration divergence bounds, mixing-time
 * calculators (upper and lower), exact quadratic-chain oracles, and the
 * seeded experiment runner.
 *
 * Conventions:
 *   - Every fallible call returns mixlab_status; MIXLAB_OK is 0.
 *   - On failure, mixlab_last_error() returns a thread-local message.
 *   - Objects created by *_new/*_create calls are released with the matching
 *     *_free call. Handles are opaque.
 *   - Points are double arrays of the stated dimension. Iterate buffers are
 *     row-major (step-major) double arrays.
 */

#ifndef MIXLAB_H
#define MIXLAB_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define MIXLAB_API __declspec(dllexport)
#else
#define MIXLAB_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum mixlab_status {
  MIXLAB_OK = 0,
  MIXLAB_ERR_INVALID_ARGUMENT = 1,
  MIXLAB_ERR_DIMENSION_MISMATCH = 2,
  MIXLAB_ERR_STEPSIZE_TOO_LARGE = 3,
  MIXLAB_ERR_ORDER_TOO_LARGE_FOR_VARIANCE_PAIR = 4,
  MIXLAB_ERR_DEGENERATE_REFERENCE = 5,
  MIXLAB_ERR_ORACLE_SCALE_EXCEEDED = 6,
  MIXLAB_ERR_UNBOUNDED_BODY = 7,
  MIXLAB_ERR_PARSE = 8,
  MIXLAB_ERR_IO = 9,
  MIXLAB_ERR_INTERNAL = 10
} mixlab_status;

typedef enum mixlab_metric {
  MIXLAB_METRIC_RENYI = 0,
  MIXLAB_METRIC_KL = 1,
  MIXLAB_METRIC_TV = 2,
  MIXLAB_METRIC_CHI2 = 3,
  MIXLAB_METRIC_HELLINGER = 4
} mixlab_metric;

typedef enum mixlab_pabi_mode {
  MIXLAB_PABI_PIECEWISE = 0,
  MIXLAB_PABI_CONTINUOUS = 1
} mixlab_pabi_mode;

/* Sentinel horizon selecting the stationary (T -> infinity) law. */
#define MIXLAB_HORIZON_STATIONARY UINT64_MAX

MIXLAB_API const char* mixlab_version(void);
MIXLAB_API const char* mixlab_status_name(mixlab_status status);
/* Thread-local message describing the most recent failure in this thread. */
MIXLAB_API const char* mixlab_last_error(void);

/* ------------------------------------------------------------------ */
/* Convex bodies                                                       */

typedef struct mixlab_body mixlab_body;

MIXLAB_API mixlab_status mixlab_body_whole_space(size_t dim, mixlab_body** out);
MIXLAB_API mixlab_status mixlab_body_interval(double lo, double hi, mixlab_body** out);
MIXLAB_API mixlab_status mixlab_body_box(const double* lo, const double* hi, size_t dim,
                                         mixlab_body** out);
MIXLAB_API mixlab_status mixlab_body_ball(const double* center, size_t dim, double radius,
                                          mixlab_body** out);
MIXLAB_API void mixlab_body_free(mixlab_body* body);

MIXLAB_API size_t mixlab_body_dim(const mixlab_body* body);
MIXLAB_API mixlab_status mixlab_body_project(const mixlab_body* body, const double* x,
                                             size_t dim, double* out);
/* *finite is 0 for the whole space (diameter undefined, *diameter untouched). */
MIXLAB_API mixlab_status mixlab_body_diameter(const mixlab_body* body, int* finite,
                                              double* diameter);
MIXLAB_API mixlab_status mixlab_body_contains(const mixlab_body* body, const double* x,
                                              size_t dim, double tol, int* inside);

/* ------------------------------------------------------------------ */
/* Potentials                                                          */

typedef struct mixlab_potential mixlab_potential;

MIXLAB_API mixlab_status mixlab_potential_new(mixlab_potential** out);
MIXLAB_API void mixlab_potential_free(mixlab_potential* pot);

MIXLAB_API mixlab_status mixlab_potential_add_zero(mixlab_potential* pot);
/* f_i(x) = (lambda/2) ||x - center||^2 */
MIXLAB_API mixlab_status mixlab_potential_add_quadratic(mixlab_potential* pot, double lambda,
                                                        const double* center, size_t dim);
MIXLAB_API mixlab_status mixlab_potential_add_diagonal_quadratic(mixlab_potential* pot,
                                                                 const double* curvatures,
                                                                 const double* center,
                                                                 size_t dim);

MIXLAB_API size_t mixlab_potential_component_count(const mixlab_potential* pot);
/* Aggregate strong convexity (min over components) and smoothness (max). */
MIXLAB_API mixlab_status mixlab_potential_regularity(const mixlab_potential* pot, double* m,
                                                     double* M);
/* Mean of component gradients over `batch` (0-based indices). */
MIXLAB_API mixlab_status mixlab_potential_minibatch_gradient(const mixlab_potential* pot,
                                                             const size_t* batch,
                                                             size_t batch_size,
                                                             const double* x, size_t dim,
                                                             double* out);
/* x - eta * minibatch gradient. */
MIXLAB_API mixlab_status mixlab_potential_gradient_step(const mixlab_potential* pot,
                                                        const size_t* batch,
                                                        size_t batch_size, double eta,
                                                        const double* x, size_t dim,
                                                        double* out);

/* c = max_{lambda in {m, M}} |1 - eta*lambda|; requires eta <= 2/M when M>0. */
MIXLAB_API mixlab_status mixlab_contraction_coefficient(double m, double M, double eta,
                                                        double* c);

/* ------------------------------------------------------------------ */
/* Langevin chains                                                     */

typedef struct mixlab_chain mixlab_chain;

/*
 * init may be NULL for the stationary-proxy initialization (bounded bodies
 * only): the chain is burned in for 4x the TV-1/4 mixing-time upper bound
 * before step 0.
 */
MIXLAB_API mixlab_status mixlab_chain_new(const mixlab_body* body,
                                          const mixlab_potential* pot, double eta,
                                          size_t batch_size, const double* init, size_t dim,
                                          uint64_t master_seed, mixlab_chain** out);
MIXLAB_API void mixlab_chain_free(mixlab_chain* chain);

/*
 * Runs `horizon` steps; writes (horizon+1) * dim doubles (X_0..X_T, step
 * major). Deterministic in (master_seed, chain_index).
 */
MIXLAB_API mixlab_status mixlab_chain_run(const mixlab_chain* chain, uint64_t horizon,
                                          uint64_t chain_index, double* states);
/* Two chains sharing one noise-and-batch tape. */
MIXLAB_API mixlab_status mixlab_chain_run_coupled(const mixlab_chain* chain,
                                                  const double* init_a, const double* init_b,
                                                  uint64_t horizon, uint64_t chain_index,
                                                  double* states_a, double* states_b);
/*
 * Lifted iteration Y_{t+1} = phi(Y_t) + Z_t with phi the projection followed
 * by the gradient step; states receives X_t = project(Y_t) and lifted
 * receives Y_t (each (horizon+1) * dim doubles). The X-marginal equals
 * mixlab_chain_run on the same tape bit for bit.
 */
MIXLAB_API mixlab_status mixlab_chain_run_auxiliary(const mixlab_chain* chain,
                                                    const double* init, uint64_t horizon,
                                                    uint64_t chain_index, double* states,
                                                    double* lifted);

/* ------------------------------------------------------------------ */
/* Divergences                                                         */

/* alpha >= 1; alpha = 1 is the analytic KL limit. */
MIXLAB_API mixlab_status mixlab_renyi_gaussian(double alpha, double mean0, double var0,
                                               double mean1, double var1, double* out);

typedef struct mixlab_discrete mixlab_discrete;

MIXLAB_API mixlab_status mixlab_discrete_new(const double* support, const double* weights,
                                             size_t n, mixlab_discrete** out);
MIXLAB_API void mixlab_discrete_free(mixlab_discrete* dist);

/* May return +infinity (when mu puts mass outside nu's support). */
MIXLAB_API mixlab_status mixlab_renyi_discrete(double alpha, const mixlab_discrete* mu,
                                               const mixlab_discrete* nu, double* out);
/* alpha in {1,2}, support sizes <= 16. */
MIXLAB_API mixlab_status mixlab_shifted_renyi_discrete(double alpha,
                                                       const mixlab_discrete* mu,
                                                       const mixlab_discrete* nu,
                                                       double shift, double* out);

MIXLAB_API mixlab_status mixlab_comparison_bounds(double kl, double d2, double* tv_bound,
                                                  double* hellinger_bound, double* chi2);
MIXLAB_API mixlab_status mixlab_hellinger_alpha_from_renyi(double alpha, double d,
                                                           double* out);
MIXLAB_API mixlab_status mixlab_renyi_from_hellinger_alpha(double alpha, double h,
                                                           double* out);
MIXLAB_API mixlab_status mixlab_empirical_tv(const double* a, size_t na, const double* b,
                                             size_t nb, size_t bins, double* out);

/* ------------------------------------------------------------------ */
/* Contractive-iteration divergence bounds and mixing times            */

MIXLAB_API mixlab_status mixlab_pabi_divergence_bound(double alpha, double diameter,
                                                      double sigma2, double c,
                                                      uint64_t horizon,
                                                      mixlab_pabi_mode mode, double* out);
/* Writes horizon doubles a_1..a_T; beta_out may be NULL. */
MIXLAB_API mixlab_status mixlab_optimal_shift_allocation(double c, double diameter,
                                                         uint64_t horizon, double* shifts,
                                                         double* beta_out);

MIXLAB_API mixlab_status mixlab_mixing_time_upper_convex(double diameter, double eta,
                                                         double eps, mixlab_metric metric,
                                                         double alpha, uint64_t* iterations);
/* c_used may be NULL. m = 0 falls back to the convex calculator. */
MIXLAB_API mixlab_status mixlab_mixing_time_upper_strongly_convex(
    double diameter, double eta, double m, double M, double eps, mixlab_metric metric,
    double alpha, uint64_t* iterations, double* c_used);
MIXLAB_API mixlab_status mixlab_mixing_time_lower_convex(double diameter, double eta,
                                                         uint64_t* iterations);
MIXLAB_API mixlab_status mixlab_mixing_time_lower_strongly_convex(double alpha, double c,
                                                                  double eps,
                                                                  uint64_t* iterations);
/*
 * Diameter substitution for unbounded bodies. Bounded bodies pass through
 * (identity patch: *effective_diameter = body diameter, *tv_target = eps).
 * Unbounded bodies require d_proxy (pass has_proxy = 0 to signal absence) and
 * report *tv_target = 3*eps.
 */
MIXLAB_API mixlab_status mixlab_unconstrained_diameter_adapter(const mixlab_body* body,
                                                               double d_proxy, int has_proxy,
                                                               double eps,
                                                               double* effective_diameter,
                                                               double* tv_target);

/* ------------------------------------------------------------------ */
/* Exact oracles for the lower-bound constructions                     */

/* Exact law of X_T for the unconstrained 1-D quadratic chain started at 0;
 * horizon may be MIXLAB_HORIZON_STATIONARY. */
MIXLAB_API mixlab_status mixlab_exact_iterate_law(double lambda, double eta, uint64_t horizon,
                                                  double* mean, double* variance);
/* D_alpha(X_T || stationary), i.e. D_alpha(N(0,1-c^{2T}) || N(0,1)). */
MIXLAB_API mixlab_status mixlab_exact_renyi_gap(double alpha, double c, uint64_t horizon,
                                                double* out);
/* alpha * c^{4T} / 4 */
MIXLAB_API mixlab_status mixlab_sc_lower_bound_value(double alpha, double c, uint64_t horizon,
                                                     double* out);
/* Monte Carlo escape probability of the projected zero-potential walk plus
 * the analytic ceiling exp(-D^2/(64 T eta)); any output pointer may be NULL.
 * *within_bound reports estimate <= ceiling + 3 standard errors. */
MIXLAB_API mixlab_status mixlab_random_walk_escape(double diameter, double eta,
                                                   uint64_t horizon, uint64_t trials,
                                                   uint64_t seed, double* estimate,
                                                   double* std_error, double* ceiling,
                                                   int* within_bound);

/* ------------------------------------------------------------------ */
/* Experiment runner                                                   */

/*
 * Runs a JSON-configured experiment (kinds: bound, simulate, lower, verify).
 * `seed` overrides the config's master_seed. Writes results.csv,
 * results.json and the kind-specific CSVs under out_dir. workers <= 0
 * selects the hardware default. *all_passed (may be NULL) reports whether
 * every asserted tolerance held.
 */
MIXLAB_API mixlab_status mixlab_run_experiment_json(const char* config_json, uint64_t seed,
                                                    const char* out_dir, int workers,
                                                    int* all_passed);
MIXLAB_API mixlab_status mixlab_run_experiment_file(const char* config_path, uint64_t seed,
                                                    const char* out_dir, int workers,
                                                    int* all_passed);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* MIXLAB_H */
