/*
 * Copyright 2026 The tclgen Authors
 *
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
 * tclgen C API.
 *
 * Conventions:
 *  - Every fallible call returns a tclgen_status; on failure the message is
 *    available from tclgen_last_error() on the calling thread.
 *  - Complex matrices cross the boundary as interleaved (re, im) doubles in
 *    row-major order: entry (r, c) of an n x n matrix sits at 2 * (r * n + c).
 *  - Super-operators act on column-stacked density matrices and are n = d^2.
 *  - Strings returned through char** are owned by the caller and released
 *    with tclgen_string_free().
 *  - Handles are immutable after creation and may be shared across threads.
 */

#ifndef TCLGEN_TCLGEN_H_
#define TCLGEN_TCLGEN_H_

#include <stddef.h>

#if defined(_WIN32)
#if defined(TCLGEN_BUILDING_LIBRARY)
#define TCLGEN_API __declspec(dllexport)
#else
#define TCLGEN_API __declspec(dllimport)
#endif
#else
#define TCLGEN_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

/* Values match the CLI exit codes. */
typedef enum tclgen_status {
  TCLGEN_OK = 0,
  TCLGEN_ERR_IO = 1,
  TCLGEN_ERR_EQUIVALENCE = 2,
  TCLGEN_ERR_NUMERIC = 3,
  TCLGEN_ERR_ARGUMENT = 4,
  TCLGEN_ERR_INTERNAL = 5
} tclgen_status;

typedef enum tclgen_quad_scheme {
  TCLGEN_QUAD_SIMPSON_UNIFORM = 0,
  TCLGEN_QUAD_GAUSS_LEGENDRE_NESTED = 1
} tclgen_quad_scheme;

typedef enum tclgen_route {
  TCLGEN_ROUTE_INFLUENCE = 0,
  TCLGEN_ROUTE_CUMULANT = 1
} tclgen_route;

typedef enum tclgen_stepper {
  TCLGEN_STEPPER_RK4_FIXED = 0,
  TCLGEN_STEPPER_RK45_ADAPTIVE = 1
} tclgen_stepper;

typedef struct tclgen_quad {
  tclgen_quad_scheme scheme;
  int nodes_per_unit_time;
  double tolerance;
} tclgen_quad;

typedef struct tclgen_bath tclgen_bath;
typedef struct tclgen_model tclgen_model;
typedef struct tclgen_generator tclgen_generator;
typedef struct tclgen_trajectory tclgen_trajectory;
typedef struct tclgen_config tclgen_config;

TCLGEN_API const char* tclgen_version(void);
/* Message of the last failed call on this thread; "" if none. */
TCLGEN_API const char* tclgen_last_error(void);
TCLGEN_API void tclgen_string_free(char* text);

TCLGEN_API void tclgen_quad_default(tclgen_quad* quad);

/* ---- bath ---------------------------------------------------------------- */

/* beta <= 0 or zero_temperature != 0 selects zero temperature. */
TCLGEN_API tclgen_status tclgen_bath_create(const double* kappa, const double* omega, const double* mass,
                                            size_t n_modes, double beta, int zero_temperature, tclgen_bath** out);
TCLGEN_API void tclgen_bath_destroy(tclgen_bath* bath);

TCLGEN_API tclgen_status tclgen_kernel_D(const tclgen_bath* bath, double tau, double* out);
TCLGEN_API tclgen_status tclgen_kernel_D1(const tclgen_bath* bath, double tau, double* out);
TCLGEN_API tclgen_status tclgen_bath_correlation(const tclgen_bath* bath, double tau, double* re, double* im);

/* ---- model --------------------------------------------------------------- */

/* h and x: dim x dim interleaved complex, row-major. */
TCLGEN_API tclgen_status tclgen_model_create(int dim, const double* h, const double* x, double alpha,
                                             tclgen_model** out);
TCLGEN_API void tclgen_model_destroy(tclgen_model* model);
TCLGEN_API int tclgen_model_dim(const tclgen_model* model);

/* ---- generators ----------------------------------------------------------- */

/* out: d^2 x d^2 interleaved complex (2 d^4 doubles). quad may be NULL. */
TCLGEN_API tclgen_status tclgen_K2(const tclgen_model* model, const tclgen_bath* bath, double t,
                                   const tclgen_quad* quad, tclgen_route route, double* out);
TCLGEN_API tclgen_status tclgen_K4(const tclgen_model* model, const tclgen_bath* bath, double t,
                                   const tclgen_quad* quad, tclgen_route route, double* out);

/* alpha^2 K2 (+ alpha^4 K4) cached on intervals + 1 nodes of [0, t_max]. */
TCLGEN_API tclgen_status tclgen_generator_build(const tclgen_model* model, const tclgen_bath* bath, int order,
                                                const tclgen_quad* quad, double t_max, int intervals,
                                                unsigned threads, tclgen_generator** out);
TCLGEN_API void tclgen_generator_destroy(tclgen_generator* gen);
TCLGEN_API tclgen_status tclgen_generator_eval(const tclgen_generator* gen, double t, double* out);

/* ---- propagation ---------------------------------------------------------- */

/* rho0: d x d interleaved complex. step is the largest rk4 step; abs_tol the
 * rk45 absolute tolerance. */
TCLGEN_API tclgen_status tclgen_propagate(const tclgen_generator* gen, const double* rho0, const double* t_grid,
                                          size_t n_times, tclgen_stepper stepper, double step, double abs_tol,
                                          tclgen_trajectory** out);
TCLGEN_API void tclgen_trajectory_destroy(tclgen_trajectory* traj);
TCLGEN_API size_t tclgen_trajectory_size(const tclgen_trajectory* traj);
TCLGEN_API int tclgen_trajectory_dim(const tclgen_trajectory* traj);
/* out: d x d interleaved complex. monitors: trace_deviation, herm_deviation,
 * min_eigenvalue. Either pointer may be NULL. */
TCLGEN_API tclgen_status tclgen_trajectory_state(const tclgen_trajectory* traj, size_t index, double* time,
                                                 double* out, double* monitors);

/* sigma_min and condition_number: n_times doubles each. */
TCLGEN_API tclgen_status tclgen_invertibility(const tclgen_model* model, const tclgen_bath* bath,
                                              const double* t_grid, size_t n_times, const tclgen_quad* quad,
                                              double* sigma_min, double* condition_number);

/* ---- symbolic ------------------------------------------------------------- */

/* One line per ordered-cumulant term; odd-substring terms dropped unless all. */
TCLGEN_API tclgen_status tclgen_cumulant_terms(int n, int all, char** text);
/* The fourth-order influence display, one summand per line. */
TCLGEN_API tclgen_status tclgen_k4_table(char** text);

/* ---- scenarios ------------------------------------------------------------ */

TCLGEN_API tclgen_status tclgen_config_load(const char* path, tclgen_config** out);
TCLGEN_API tclgen_status tclgen_config_parse(const char* text, tclgen_config** out);
TCLGEN_API void tclgen_config_destroy(tclgen_config* config);

/* Output toggles: -1 keeps the config value, 0 disables, 1 enables. */
typedef struct tclgen_run_options {
  const char* out_dir; /* NULL: environment, then config, then "." */
  int order;           /* 0: config value */
  int quad_nodes;      /* 0: config value */
  int verbose;
  int kernels;
  int generator;
  int trajectory;
  int diagnostic;
  int report;
} tclgen_run_options;

TCLGEN_API void tclgen_run_options_default(tclgen_run_options* options);

/* Returns the exit status of the run; report (may be NULL) receives the
 * report text even when the status is not TCLGEN_OK. */
TCLGEN_API tclgen_status tclgen_run_scenario(const tclgen_config* config, const tclgen_run_options* options,
                                             char** report);

typedef struct tclgen_scaling_options {
  const double* alphas; /* NULL: 0.025, 0.05, 0.1, 0.2 */
  size_t n_alphas;
  double t_max;
  int fock_levels;
  int output_intervals;
  int generator_intervals;
  int orders_mask; /* bit 0: order 2, bit 1: order 4 */
  int quad_nodes;
  unsigned threads;
  const char* out_dir; /* NULL: environment, then "."; "" writes nothing */
} tclgen_scaling_options;

TCLGEN_API void tclgen_scaling_options_default(tclgen_scaling_options* options);

/* slopes receives one value per selected order (order 2 first). */
TCLGEN_API tclgen_status tclgen_scaling_study(const tclgen_scaling_options* options, double* slopes,
                                              char** summary);

#ifdef __cplusplus
}
#endif

#endif /* TCLGEN_TCLGEN_H_ */
