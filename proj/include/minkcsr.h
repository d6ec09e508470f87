/* Copyright 2026 The minkcsr Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *      http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

/* C interface to the minkcsr library: tests of complete spatial randomness
 * for planar point patterns via Minkowski functionals of thresholded binary
 * images, plus point-process simulators, competitor tests and a power-study
 * runner.
 *
 * All functions return MINKCSR_OK on success; on failure they return an
 * error status and leave a message retrievable with minkcsr_last_error()
 * (thread-local). Objects returned through out-parameters are owned by the
 * caller and released with the matching *_free function.
 */

#ifndef MINKCSR_H
#define MINKCSR_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

#if defined(_WIN32)
#define MINKCSR_API __declspec(dllexport)
#else
#define MINKCSR_API __attribute__((visibility("default")))
#endif

typedef enum {
  MINKCSR_OK = 0,
  MINKCSR_ERR_INVALID_INPUT = 1, /* bad parameters or unparsable data */
  MINKCSR_ERR_DEGENERATE = 2,    /* statistically degenerate configuration */
  MINKCSR_ERR_INTERNAL = 3
} minkcsr_status;

/* Message for the most recent failing call on this thread. */
MINKCSR_API const char* minkcsr_last_error(void);

MINKCSR_API const char* minkcsr_version(void);

/* ---- point patterns ---------------------------------------------------- */

typedef struct minkcsr_pattern minkcsr_pattern;

MINKCSR_API minkcsr_status minkcsr_pattern_create(const double* x,
                                                  const double* y, size_t n,
                                                  minkcsr_pattern** out);
MINKCSR_API minkcsr_status minkcsr_pattern_read_csv(const char* path,
                                                    minkcsr_pattern** out);
MINKCSR_API minkcsr_status minkcsr_pattern_write_csv(const minkcsr_pattern* p,
                                                     const char* path);
MINKCSR_API size_t minkcsr_pattern_size(const minkcsr_pattern* p);
/* Copies the coordinates into caller-provided arrays of length
 * minkcsr_pattern_size(p). */
MINKCSR_API minkcsr_status minkcsr_pattern_points(const minkcsr_pattern* p,
                                                  double* x, double* y);
MINKCSR_API void minkcsr_pattern_free(minkcsr_pattern* p);

/* ---- simulators --------------------------------------------------------- */

typedef enum {
  MINKCSR_PROC_HPP = 0,    /* homogeneous Poisson */
  MINKCSR_PROC_IPP = 1,    /* inhomogeneous Poisson, density_id in 1..4 */
  MINKCSR_PROC_BSP = 2,    /* 0/1/10-point cell process */
  MINKCSR_PROC_MATERN = 3  /* Matern cluster process */
} minkcsr_process_kind;

typedef struct {
  minkcsr_process_kind kind;
  double lambda;
  int density_id; /* ipp only */
  double radius;  /* matern only; 0 selects the default 0.2 */
  double kappa;   /* matern offspring mean = floor(sqrt(lambda/kappa)) */
} minkcsr_process_spec;

MINKCSR_API minkcsr_status minkcsr_simulate(const minkcsr_process_spec* spec,
                                            uint64_t seed,
                                            minkcsr_pattern** out);

/* ---- geometry ----------------------------------------------------------- */

/* floor(sqrt(lambda/kappa)); fails when the result would be below 3. */
MINKCSR_API minkcsr_status minkcsr_choose_m(double lambda, double kappa,
                                            int* out_m);

typedef struct {
  double area;
  double perimeter;
  double euler;
} minkcsr_triple;

/* Bins the pattern on an m x m grid, thresholds at count >= c and measures
 * the scaled functional triple of the bordered binary image. black_cells
 * may be NULL. */
MINKCSR_API minkcsr_status minkcsr_morphology(const minkcsr_pattern* p, int m,
                                              int c, minkcsr_triple* out,
                                              int64_t* black_cells);

/* ---- null moments -------------------------------------------------------- */

typedef struct {
  double p;            /* P(bin count >= c) */
  double mean[3];      /* area, perimeter, Euler characteristic */
  double cov[9];       /* row-major covariance of the triple */
  double det;          /* closed-form determinant of cov */
  double asym_cov[9];  /* large-m covariance */
  double asym_inv[9];  /* its closed-form inverse */
} minkcsr_moments;

MINKCSR_API minkcsr_status minkcsr_null_moments(double lambda, int m, int c,
                                                minkcsr_moments* out);

/* ---- tests --------------------------------------------------------------- */

typedef enum {
  MINKCSR_STAT_T_A = 0,
  MINKCSR_STAT_T_P = 1,
  MINKCSR_STAT_T_CHI = 2,
  MINKCSR_STAT_T_C = 3,       /* combined, finite-m covariance */
  MINKCSR_STAT_T_C_TILDE = 4, /* combined, large-m covariance */
  MINKCSR_STAT_Q = 5,         /* quadrat-count chi-square */
  MINKCSR_STAT_H = 6          /* Hopkins-Skellam */
} minkcsr_stat;

typedef struct {
  double lambda;   /* > 0 when lambda_mode = 1 */
  int lambda_mode; /* 0 = estimate from the data, 1 = known value */
  double kappa;    /* used when m = 0; <= 0 selects 1.0 */
  int m;           /* 0 = derive from kappa */
  int c;
  const minkcsr_stat* stats;
  size_t n_stats;
  int mc_reps;     /* 0 = asymptotic p-values only */
  uint64_t seed;
  int workers;     /* 0 = hardware concurrency */
} minkcsr_test_config;

typedef struct minkcsr_report minkcsr_report;

MINKCSR_API minkcsr_status minkcsr_run_test(const minkcsr_pattern* p,
                                            const minkcsr_test_config* config,
                                            minkcsr_report** out);

typedef enum {
  MINKCSR_FORMAT_JSON = 0,
  MINKCSR_FORMAT_CSV = 1,
  MINKCSR_FORMAT_TEXT = 2
} minkcsr_format;

/* Renders a report; *out is a NUL-terminated string released with
 * minkcsr_string_free. */
MINKCSR_API minkcsr_status minkcsr_report_render(const minkcsr_report* report,
                                                 minkcsr_format format,
                                                 char** out);
MINKCSR_API void minkcsr_report_free(minkcsr_report* report);
MINKCSR_API void minkcsr_string_free(char* s);

/* Empirical null quantile of a functional statistic. */
MINKCSR_API minkcsr_status minkcsr_mc_critical_value(
    double lambda, double kappa, int c, minkcsr_stat stat, int reps,
    double level, uint64_t seed, int workers, double* out);

/* ---- limits under inhomogeneous alternatives ----------------------------- */

/* Limiting (area, perimeter, euler)/m for the built-in density density_id
 * at threshold c and mean-per-bin kappa; order 0 selects the default
 * quadrature order. */
MINKCSR_API minkcsr_status minkcsr_alternative_limits(int density_id, int c,
                                                      double kappa, int order,
                                                      minkcsr_triple* out);

/* ---- dataset analysis ----------------------------------------------------- */

typedef struct {
  double lambda;   /* <= 0 = use the observed point count */
  double kappa;    /* <= 0 selects 3.0 */
  int m;           /* 0 = derive from kappa */
  int c;           /* <= 0 selects 2 */
  int with_competitors;
  int mc_reps;
  uint64_t seed;
  int workers;
} minkcsr_analyze_config;

MINKCSR_API minkcsr_status minkcsr_analyze_dataset(
    const char* path, const minkcsr_analyze_config* config,
    minkcsr_report** out);

/* ---- power studies --------------------------------------------------------- */

typedef struct {
  const minkcsr_process_spec* alternatives; /* null row added automatically */
  size_t n_alternatives;
  const double* lambdas;
  size_t n_lambdas;
  double kappa;
  const int* thresholds;
  size_t n_thresholds;
  const minkcsr_stat* stats;
  size_t n_stats;
  int reps;
  double level;
  int monte_carlo_critical; /* 0 = asymptotic critical values */
  int calibration_reps;
  uint64_t seed;
  int workers;
} minkcsr_power_spec;

typedef struct minkcsr_power_table minkcsr_power_table;

MINKCSR_API minkcsr_status minkcsr_power_study(const minkcsr_power_spec* spec,
                                               minkcsr_power_table** out);
MINKCSR_API minkcsr_status minkcsr_power_table_render(
    const minkcsr_power_table* table, minkcsr_format format, char** out);
MINKCSR_API void minkcsr_power_table_free(minkcsr_power_table* table);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* MINKCSR_H */
