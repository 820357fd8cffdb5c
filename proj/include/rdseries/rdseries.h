// Copyright 2026 The rdseries Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


/*
 * rdseries C API.
 *
 * Random Dirichlet series sum_{k>=2} (log k)^alpha k^-(1/2+s) eta_k:
 * certified kernels, Monte Carlo and exact-law path ensembles, iterated
 * logarithm diagnostics and zero scans.
 *
 * Every function returns an rds_status. On failure, rds_last_error() holds
 * a message for the calling thread. Objects are opaque handles released by
 * their *_destroy function (NULL is accepted). Exponents that can underflow
 * a double (s = exp(-e^10)) are passed as log s.
 */

#ifndef RDSERIES_RDSERIES_H_
#define RDSERIES_RDSERIES_H_

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(RDS_BUILDING_LIBRARY)
#    define RDS_API __declspec(dllexport)
#  else
#    define RDS_API __declspec(dllimport)
#  endif
#else
#  define RDS_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum rds_status {
  RDS_OK = 0,
  RDS_ERR_DOMAIN = 1,
  RDS_ERR_FEASIBILITY = 2,
  RDS_ERR_CONDITIONING = 3,
  RDS_ERR_CONVERGENCE = 4,
  RDS_ERR_INSUFFICIENT_SAMPLE = 5,
  RDS_ERR_RESOURCE = 6,
  RDS_ERR_INVALID_ARGUMENT = 7,
  RDS_ERR_PRECISION = 8,
  RDS_ERR_EVALUATION = 9,
  RDS_ERR_INTERNAL = 10
} rds_status;

RDS_API const char* rds_version(void);
RDS_API const char* rds_status_name(rds_status status);
/* Message of the last failure on this thread ("" if none). */
RDS_API const char* rds_last_error(void);
/* Feasibility: minimal log N. Conditioning: smallest eigenvalue.
 * Convergence: best left end. NaN otherwise. */
RDS_API double rds_last_error_value(void);
/* Feasibility: largest usable s_big. Convergence: best right end. */
RDS_API double rds_last_error_aux(void);

/* Default worker count for every parallel operation; 0 = all cores.
 * Results do not depend on it. */
RDS_API void rds_set_threads(unsigned threads);

typedef struct rds_enclosure {
  double lo;
  double hi;
} rds_enclosure;

typedef struct rds_seed {
  uint64_t master_seed;
  uint64_t stream_id;
} rds_seed;

/* ---- innovations ---- */

typedef enum rds_family {
  RDS_RADEMACHER = 0,
  RDS_GAUSSIAN = 1,
  RDS_CENTERED_UNIFORM = 2,
  RDS_TWO_POINT = 3,
  RDS_CENTERED_EXPONENTIAL = 4
} rds_family;

typedef struct rds_innovation rds_innovation;

/* p is read only for RDS_TWO_POINT. */
RDS_API rds_status rds_innovation_create(rds_family family, double sigma, double p,
                                         rds_innovation** out);
RDS_API rds_status rds_innovation_from_name(const char* name, double sigma, double p,
                                            rds_innovation** out);
RDS_API void rds_innovation_destroy(rds_innovation* spec);
RDS_API rds_status rds_draw(const rds_innovation* spec, rds_seed seed, uint64_t k,
                            double* out);
RDS_API rds_status rds_truncated_second_moment(const rds_innovation* spec, double a,
                                               double* out);

/* ---- analytics ---- */

RDS_API rds_status rds_e1(double x, rds_enclosure* out);
RDS_API rds_status rds_g_enclosure(double log_s, uint64_t direct_terms, rds_enclosure* out);
RDS_API rds_status rds_cov_kernel(double alpha, double e1_exp, double e2_exp,
                                  uint64_t direct_terms, rds_enclosure* out);

typedef enum rds_normalizer_kind {
  RDS_NORM_F = 0,
  RDS_NORM_F_STAR = 1,
  RDS_NORM_N_ALPHA = 2,
  RDS_NORM_FLT_BOUNDARY = 3
} rds_normalizer_kind;

RDS_API rds_status rds_normalizer(rds_normalizer_kind kind, double log_s, double alpha,
                                  double sigma, double* out);

typedef enum rds_schedule_kind {
  RDS_SCHED_CHAINING_S = 0,   /* out: log s_n */
  RDS_SCHED_SPARSE_S = 1,  /* out: log of the sparse sequence */
  RDS_SCHED_V = 2           /* out: v_n */
} rds_schedule_kind;

RDS_API rds_status rds_schedule(rds_schedule_kind kind, double gamma, int n, double* out);
RDS_API rds_status rds_m_of_s(double log_s, double* out);

typedef struct rds_chaining_config {
  double gamma;
  int n;
  int j;
  uint64_t m;
  double s_big;
} rds_chaining_config;

typedef enum rds_chaining_mode { RDS_CHAIN_SEQUENCE = 0, RDS_CHAIN_BOUNDARY = 1 } rds_chaining_mode;

typedef struct rds_chaining_result {
  rds_enclosure a_value;
  double bound;
  int satisfied;
  uint64_t start;
} rds_chaining_result;

RDS_API rds_status rds_chaining_bound_check(const rds_chaining_config* cfg,
                                            rds_chaining_mode mode, uint64_t direct_terms,
                                            rds_chaining_result* out);
RDS_API rds_status rds_i_concave_gap(double a, double b, double quad_tol, double* out);
RDS_API rds_status rds_lindeberg_term(double s_big, double t, double eps,
                                      const rds_innovation* spec, double tol, double* out);
RDS_API rds_status rds_decreasing_kernel_check(double a, double b, const double* grid,
                                               size_t n, int* ok);
RDS_API rds_status rds_limit_cov_alpha(double alpha, double t1, double t2, double sigma,
                                       double* out);

/* ---- series engine ---- */

typedef struct rds_truncation_plan {
  uint64_t cutoff_n;
  double tail_variance_bound;
} rds_truncation_plan;

/* variance_scale <= 0 selects the kernel midpoint; n_max = 0 selects 2^33. */
RDS_API rds_status rds_plan_truncation(double alpha, double s, double rel_tol,
                                       double variance_scale, uint64_t n_max,
                                       rds_truncation_plan* out);
RDS_API rds_status rds_partial_sum(double alpha, double s, const rds_innovation* spec,
                                   rds_seed seed, uint64_t n, double* out);
/* values and cutoffs (nullable) receive n entries. */
RDS_API rds_status rds_evaluate_path(double alpha, const double* s_grid, size_t n,
                                     const rds_innovation* spec, rds_seed seed,
                                     double rel_tol, uint64_t n_max, double* values,
                                     uint64_t* cutoffs);
RDS_API rds_status rds_parts_identity_residual(double s, uint64_t m,
                                               const rds_innovation* spec, rds_seed seed,
                                               double quad_tol, double* out);

/* ---- ensembles ---- */

typedef struct rds_ensemble rds_ensemble;

RDS_API void rds_ensemble_destroy(rds_ensemble* ens);
RDS_API size_t rds_ensemble_replicates(const rds_ensemble* ens);
RDS_API size_t rds_ensemble_dim(const rds_ensemble* ens);
/* Row-major replicates x dim. */
RDS_API const double* rds_ensemble_values(const rds_ensemble* ens);
RDS_API const double* rds_ensemble_grid(const rds_ensemble* ens);
/* Per-point cutoffs of summation ensembles; *n = 0 otherwise. */
RDS_API const uint64_t* rds_ensemble_cutoffs(const rds_ensemble* ens, size_t* n);

RDS_API rds_status rds_simulate_flt_boundary(double s_big, const double* t_grid, size_t n_t,
                                             size_t n_rep, const rds_innovation* spec,
                                             rds_seed seed, double rel_tol, uint64_t n_max,
                                             rds_ensemble** out);
RDS_API rds_status rds_simulate_limit_alpha(double alpha, const double* t_grid, size_t n_t,
                                            size_t n_rep, double y_max, int n_steps,
                                            double sigma, rds_seed seed, rds_ensemble** out);
RDS_API rds_status rds_discretized_limit_cov(double alpha, double t1, double t2,
                                             double y_max, int n_steps, double sigma,
                                             double* out);

/* Covariance of the truncated sums a boundary ensemble draws at the given
 * per-point cutoffs; out receives n_t x n_t row-major entries. */
RDS_API rds_status rds_flt_truncated_covariance(double s_big, const double* t_grid,
                                                size_t n_t, const uint64_t* cutoffs,
                                                double sigma, double* out);

/* ---- exact gaussian law ---- */

typedef enum rds_grid_kind {
  RDS_GRID_LIL = 0,       /* points are log s */
  RDS_GRID_FLT = 1,       /* points are t; exponents exp(-t s_big) */
  RDS_GRID_ALPHA_FLT = 2  /* points are t; exponents s t */
} rds_grid_kind;

typedef struct rds_cov_grid {
  rds_grid_kind kind;
  const double* points;
  size_t n_points;
  double s_big;
  double alpha;
  double s;
} rds_cov_grid;

typedef struct rds_factorized_cov rds_factorized_cov;

RDS_API rds_status rds_build_cov(const rds_cov_grid* grid, double sigma,
                                 uint64_t direct_terms, rds_factorized_cov** out);
RDS_API void rds_factorized_cov_destroy(rds_factorized_cov* fc);
RDS_API size_t rds_factorized_cov_dim(const rds_factorized_cov* fc);
RDS_API double rds_factorized_cov_jitter(const rds_factorized_cov* fc);
/* Each nullable output receives dim x dim row-major entries. */
RDS_API rds_status rds_factorized_cov_copy(const rds_factorized_cov* fc, double* matrix,
                                           double* widths, double* factor);
RDS_API rds_status rds_sample_ensemble(const rds_factorized_cov* fc, size_t n_rep,
                                       rds_seed seed, rds_ensemble** out);

/* ---- statistics ---- */

typedef struct rds_stat_report rds_stat_report;

RDS_API rds_status rds_compare_fdd(const rds_ensemble* ens, const double* reference,
                                   rds_stat_report** out);
RDS_API void rds_stat_report_destroy(rds_stat_report* rep);
RDS_API size_t rds_stat_report_dim(const rds_stat_report* rep);
/* Nullable outputs: emp_cov and std_errors dim x dim; ks_stat, ks_p dim;
 * increment_corr dim - 1. */
RDS_API rds_status rds_stat_report_copy(const rds_stat_report* rep, double* emp_cov,
                                        double* std_errors, double* ks_stat, double* ks_p,
                                        double* increment_corr);
RDS_API size_t rds_stat_report_count_within(const rds_stat_report* rep, double k);

/* ---- iterated logarithm ---- */

typedef enum rds_route {
  RDS_ROUTE_AUTO = 0,
  RDS_ROUTE_SUMMATION = 1,
  RDS_ROUTE_GAUSSIAN_EXACT = 2
} rds_route;

typedef struct rds_trajectory_set rds_trajectory_set;

/* log_s strictly decreasing (s descending), every s < exp(-e). */
RDS_API rds_status rds_trajectory_ensemble(const double* log_s, size_t n_points,
                                           const rds_innovation* spec, rds_seed seed,
                                           size_t n_rep, rds_route route, double rel_tol,
                                           uint64_t n_max, rds_trajectory_set** out);
RDS_API void rds_trajectory_set_destroy(rds_trajectory_set* set);
RDS_API size_t rds_trajectory_set_replicates(const rds_trajectory_set* set);
RDS_API size_t rds_trajectory_set_points(const rds_trajectory_set* set);
RDS_API rds_route rds_trajectory_set_route(const rds_trajectory_set* set);
/* Nullable outputs, each replicates x points row-major. */
RDS_API rds_status rds_trajectory_set_copy(const rds_trajectory_set* set, double* raw,
                                           double* normalized, double* running_sup,
                                           double* running_inf);

typedef struct rds_coverage_summary {
  size_t total;
  double fraction_inside;
  size_t above_one;
  size_t below_minus_one;
  size_t out_of_range;
  double max_abs;
} rds_coverage_summary;

/* counts (nullable) receives `bins` entries over [-1.5, 1.5]. */
RDS_API rds_status rds_limit_set_coverage(const rds_trajectory_set* set, int bins,
                                          size_t* counts, rds_coverage_summary* out);
RDS_API rds_status rds_normalized_sd(double log_s, double* out);
RDS_API rds_status rds_event_threshold(double log_s, double rho, uint64_t k, double* out);

typedef struct rds_truncation_report {
  uint64_t m;
  uint64_t fired_count;
  double event_sum;
  double event_expect_sum;
  double expect_remainder_bound;
} rds_truncation_report;

RDS_API rds_status rds_truncation_diagnostics(double log_s, double rho,
                                              const rds_innovation* spec, rds_seed seed,
                                              uint64_t k_max,
                                              rds_truncation_report* out);

typedef enum rds_fragment_kind {
  RDS_FRAG_HEAD = 0,
  RDS_FRAG_SPARSE_HEAD = 1,
  RDS_FRAG_TAIL = 2
} rds_fragment_kind;

RDS_API rds_status rds_fragment_decay(rds_fragment_kind kind, const double* log_s, size_t n,
                                      const rds_innovation* spec, rds_seed seed,
                                      double* out);

/* ---- zeros ---- */

typedef struct rds_zero_bracket {
  double s_left;
  double s_right;
  double f_left;
  double f_right;
  int degenerate;
  int unresolved;
} rds_zero_bracket;

typedef double (*rds_path_fn)(double s, void* user);

/* Writes up to `cap` brackets; *n_found is the full count. Returns
 * RDS_ERR_RESOURCE when cap is too small. */
RDS_API rds_status rds_scan(rds_path_fn fn, void* user, double s_lo, double s_hi,
                            int n_grid, rds_zero_bracket* out, size_t cap,
                            size_t* n_found);
RDS_API rds_status rds_refine(rds_path_fn fn, void* user, const rds_zero_bracket* bracket,
                              double tol, int max_iter, double* root);

/* Scan of X_{-1/2} truncated at the cutoff planned for s_lo (frozen). */
RDS_API rds_status rds_series_scan(const rds_innovation* spec, rds_seed seed, double s_lo,
                                   double s_hi, int n_grid, double rel_tol, uint64_t n_max,
                                   rds_zero_bracket* out, size_t cap, size_t* n_found,
                                   uint64_t* cutoff);
RDS_API rds_status rds_series_refine(const rds_innovation* spec, rds_seed seed,
                                     uint64_t cutoff, const rds_zero_bracket* bracket,
                                     double tol, int max_iter, double* root);

typedef struct rds_window_stats {
  double s_lo;
  double s_hi;
  double mean;
  double sd;
  double unresolved_mean;
} rds_window_stats;

/* windows: n_windows (s_lo, s_hi) pairs. counts (nullable): n_windows x
 * n_seeds. Seed i runs on stream (seeds[i], 0). */
RDS_API rds_status rds_zero_count_experiment(const rds_innovation* spec,
                                             const uint64_t* seeds, size_t n_seeds,
                                             const double* windows, size_t n_windows,
                                             int n_grid, double rel_tol, uint64_t n_max,
                                             rds_window_stats* out, uint64_t* counts);

#ifdef __cplusplus
}  /* extern "C" */
#endif

#endif  /* RDSERIES_RDSERIES_H_ */
