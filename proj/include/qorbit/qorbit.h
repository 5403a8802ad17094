/* Copyright 2026 The qorbit Authors
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

/* C interface to the qorbit library: geometry of unitary orbits of density
 * operators (metrics, connection, horizontal lifts, geodesics, distance).
 *
 * Conventions:
 *  - Every fallible call returns a qorbit_status. On failure the message is
 *    available from qorbit_last_error() on the calling thread until the next
 *    failing call on that thread.
 *  - Handles are opaque; each *_create / producing call transfers ownership
 *    to the caller, who releases it with the matching *_destroy.
 *  - Complex matrices are passed as row-major interleaved (re, im) doubles.
 *  - Strings returned through char** are owned by the caller and released
 *    with qorbit_string_free.
 *  - A NULL context selects the defaults (hbar = 1).
 */

#ifndef QORBIT_QORBIT_H_
#define QORBIT_QORBIT_H_

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(QORBIT_BUILDING_LIBRARY)
#    define QORBIT_API __declspec(dllexport)
#  else
#    define QORBIT_API __declspec(dllimport)
#  endif
#else
#  define QORBIT_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum qorbit_status {
  QORBIT_OK = 0,
  QORBIT_ERR_INVALID_ARGUMENT = 1,
  QORBIT_ERR_VALIDATION = 2,
  QORBIT_ERR_DOMAIN = 3,
  QORBIT_ERR_NUMERICAL = 4,
  QORBIT_ERR_UNSUPPORTED = 5,
  QORBIT_ERR_INTEGRATION_DRIFT = 6,
  QORBIT_ERR_NOT_HORIZONTAL = 7,
  QORBIT_ERR_IO = 8,
  QORBIT_ERR_INTERNAL = 9
} qorbit_status;

typedef enum qorbit_frame_kind {
  QORBIT_FRAME_DENSITY = 0,
  QORBIT_FRAME_PURIFICATION = 1,
  QORBIT_FRAME_HAMILTONIAN = 2,
  QORBIT_FRAME_CONTROL = 3
} qorbit_frame_kind;

typedef enum qorbit_relation {
  QORBIT_REL_EQUAL = 0,
  QORBIT_REL_AT_LEAST = 1,
  QORBIT_REL_AT_MOST = 2
} qorbit_relation;

typedef enum qorbit_geodesic_part {
  QORBIT_GEODESIC_RHO = 0,
  QORBIT_GEODESIC_PSI = 1,
  QORBIT_GEODESIC_HAMILTONIAN = 2,
  QORBIT_GEODESIC_CONTROL = 3
} qorbit_geodesic_part;

typedef struct qorbit_context qorbit_context;
typedef struct qorbit_matrix qorbit_matrix;
typedef struct qorbit_trajectory qorbit_trajectory;
typedef struct qorbit_geodesic qorbit_geodesic;
typedef struct qorbit_report qorbit_report;

typedef struct qorbit_shooting_config {
  int restarts;
  double endpoint_tol;
  int max_iters;
  uint64_t seed;
  int steps;
} qorbit_shooting_config;

typedef struct qorbit_distance_result {
  double distance;
  int converged;
  double endpoint_mismatch;
  int restarts_converged;
  qorbit_matrix* xi0; /* owned by the caller */
} qorbit_distance_result;

/* ---- errors, version, strings ------------------------------------------- */

QORBIT_API const char* qorbit_version(void);
QORBIT_API const char* qorbit_last_error(void);
QORBIT_API const char* qorbit_status_string(qorbit_status status);
QORBIT_API void qorbit_string_free(char* s);

/* ---- context ------------------------------------------------------------ */

QORBIT_API qorbit_status qorbit_context_create(qorbit_context** out);
QORBIT_API void qorbit_context_destroy(qorbit_context* ctx);
QORBIT_API qorbit_status qorbit_context_set_hbar(qorbit_context* ctx, double hbar);
QORBIT_API qorbit_status qorbit_context_set_rank_tol(qorbit_context* ctx, double tol);
/* Hermiticity / trace / positivity tolerance used when validating inputs. */
QORBIT_API qorbit_status qorbit_context_set_validation_tol(qorbit_context* ctx, double tol);
/* Per-frame tolerance for integrated trajectories. */
QORBIT_API qorbit_status qorbit_context_set_trajectory_tol(qorbit_context* ctx, double tol);
QORBIT_API double qorbit_context_hbar(const qorbit_context* ctx);

/* ---- matrices ----------------------------------------------------------- */

QORBIT_API qorbit_status qorbit_matrix_create(size_t rows, size_t cols, const double* interleaved,
                                              qorbit_matrix** out);
QORBIT_API qorbit_status qorbit_matrix_zeros(size_t rows, size_t cols, qorbit_matrix** out);
QORBIT_API void qorbit_matrix_destroy(qorbit_matrix* m);
QORBIT_API size_t qorbit_matrix_rows(const qorbit_matrix* m);
QORBIT_API size_t qorbit_matrix_cols(const qorbit_matrix* m);
QORBIT_API qorbit_status qorbit_matrix_get(const qorbit_matrix* m, size_t row, size_t col, double* re, double* im);
/* Copies 2 * rows * cols doubles; `capacity` counts doubles. */
QORBIT_API qorbit_status qorbit_matrix_copy_data(const qorbit_matrix* m, double* out, size_t capacity);
/* Frobenius norm of a - b. */
QORBIT_API qorbit_status qorbit_matrix_distance(const qorbit_matrix* a, const qorbit_matrix* b, double* out);
QORBIT_API qorbit_status qorbit_matrix_read_json(const char* path, qorbit_matrix** out);
QORBIT_API qorbit_status qorbit_matrix_write_json(const char* path, const qorbit_matrix* m);
QORBIT_API qorbit_status qorbit_matrix_to_json(const qorbit_matrix* m, char** out);

/* ---- state space and connection ----------------------------------------- */

/* Writes the nonincreasing positive eigenvalues of rho (up to `capacity`)
 * and their count. */
QORBIT_API qorbit_status qorbit_spectrum(const qorbit_context* ctx, const qorbit_matrix* rho, double* values,
                                         size_t capacity, size_t* count);
QORBIT_API qorbit_status qorbit_standard_purification(const qorbit_context* ctx, const qorbit_matrix* rho,
                                                      qorbit_matrix** psi);
QORBIT_API qorbit_status qorbit_uncertainty(const qorbit_context* ctx, const qorbit_matrix* rho,
                                            const qorbit_matrix* observable, double* out);
QORBIT_API qorbit_status qorbit_is_parallel(const qorbit_context* ctx, const qorbit_matrix* observable,
                                            const qorbit_matrix* rho, double tol, int* out);
QORBIT_API qorbit_status qorbit_submersion_metric(const qorbit_context* ctx, const qorbit_matrix* rho,
                                                  const qorbit_matrix* rho_dot1, const qorbit_matrix* rho_dot2,
                                                  double* out);
/* zeta = coadjoint(xi) for the spectrum given as k positive values. */
QORBIT_API qorbit_status qorbit_coadjoint(const qorbit_matrix* xi, const double* sigma, size_t k,
                                          qorbit_matrix** out);

/* ---- trajectories ------------------------------------------------------- */

/* Copies `count` frames sampled at `times` (uniform grid expected). */
QORBIT_API qorbit_status qorbit_trajectory_create(qorbit_frame_kind kind, size_t count, const double* times,
                                                  const qorbit_matrix* const* frames, qorbit_trajectory** out);
QORBIT_API void qorbit_trajectory_destroy(qorbit_trajectory* t);
QORBIT_API size_t qorbit_trajectory_size(const qorbit_trajectory* t);
QORBIT_API qorbit_frame_kind qorbit_trajectory_kind(const qorbit_trajectory* t);
QORBIT_API double qorbit_trajectory_time(const qorbit_trajectory* t, size_t i);
QORBIT_API qorbit_status qorbit_trajectory_frame(const qorbit_trajectory* t, size_t i, qorbit_matrix** out);
/* Reads .json (trajectory JSON) or .csv (square frames); the kind stored in
 * JSON wins over `kind`. */
QORBIT_API qorbit_status qorbit_trajectory_read(const char* path, qorbit_frame_kind kind, qorbit_trajectory** out);
QORBIT_API qorbit_status qorbit_trajectory_write_csv(const char* path, const qorbit_trajectory* t);
QORBIT_API qorbit_status qorbit_trajectory_write_json(const char* path, const qorbit_trajectory* t);

/* ---- dynamics ----------------------------------------------------------- */

/* Constant Hamiltonian. */
QORBIT_API qorbit_status qorbit_evolve_von_neumann(const qorbit_context* ctx, const qorbit_matrix* hamiltonian,
                                                   const qorbit_matrix* rho0, double tau, int steps,
                                                   qorbit_trajectory** out);
/* Sampled Hamiltonian, interpolated between its frames; tau is its span. */
QORBIT_API qorbit_status qorbit_evolve_von_neumann_sampled(const qorbit_context* ctx,
                                                           const qorbit_trajectory* hamiltonian,
                                                           const qorbit_matrix* rho0, int steps,
                                                           qorbit_trajectory** out);
QORBIT_API qorbit_status qorbit_evolve_schrodinger(const qorbit_context* ctx, const qorbit_matrix* hamiltonian,
                                                   const qorbit_matrix* psi0, double tau, int steps,
                                                   qorbit_trajectory** out);
QORBIT_API qorbit_status qorbit_horizontal_lift(const qorbit_context* ctx, const qorbit_trajectory* rho,
                                                const qorbit_matrix* psi0, int steps_per_frame,
                                                qorbit_trajectory** out);
QORBIT_API qorbit_status qorbit_curve_length(const qorbit_context* ctx, const qorbit_trajectory* t, double* out);
/* Energy dispersion of a sampled Hamiltonian on a matching grid. */
QORBIT_API qorbit_status qorbit_energy_dispersion(const qorbit_context* ctx, const qorbit_trajectory* hamiltonian,
                                                  const qorbit_trajectory* rho, double* out);
/* Largest connection-form norm over the frames of a purification trajectory. */
QORBIT_API qorbit_status qorbit_max_vertical_velocity(const qorbit_context* ctx, const qorbit_trajectory* psi,
                                                      double* out);
/* Largest Frobenius distance between the projections of `psi` and `rho`. */
QORBIT_API qorbit_status qorbit_projection_error(const qorbit_trajectory* psi, const qorbit_trajectory* rho,
                                                 double* out);
/* Largest spread of the sorted eigenvalues relative to the first frame. */
QORBIT_API qorbit_status qorbit_spectrum_drift(const qorbit_trajectory* rho, double* out);

/* ---- control ------------------------------------------------------------ */

QORBIT_API qorbit_status qorbit_geodesic_from(const qorbit_context* ctx, const qorbit_matrix* rho0,
                                              const qorbit_matrix* xi0, double tau, int steps,
                                              qorbit_geodesic** out);
QORBIT_API qorbit_status qorbit_two_eigenvalue_geodesic(const qorbit_context* ctx, const qorbit_matrix* rho0,
                                                        const qorbit_matrix* xi0, double tau, int steps,
                                                        qorbit_geodesic** out);
QORBIT_API void qorbit_geodesic_destroy(qorbit_geodesic* g);
QORBIT_API double qorbit_geodesic_length(const qorbit_geodesic* g);
QORBIT_API double qorbit_geodesic_max_horizontal_residual(const qorbit_geodesic* g);
QORBIT_API double qorbit_geodesic_speed_drift(const qorbit_geodesic* g);
/* Energy dispersion of the synthesized Hamiltonian along the geodesic. */
QORBIT_API qorbit_status qorbit_geodesic_dispersion(const qorbit_context* ctx, const qorbit_geodesic* g,
                                                    double* out);
QORBIT_API qorbit_status qorbit_geodesic_trajectory(const qorbit_geodesic* g, qorbit_geodesic_part part,
                                                    qorbit_trajectory** out);

/* Synthesizes H from a control curve given as samples (control kind) and
 * the initial purification psi0 (square). */
QORBIT_API qorbit_status qorbit_synth_hamiltonian(const qorbit_context* ctx, const qorbit_matrix* psi0,
                                                  const qorbit_trajectory* xi, int steps, qorbit_trajectory** out);
QORBIT_API qorbit_status qorbit_distinguishable_geodesic(const qorbit_context* ctx, const qorbit_matrix* psi0,
                                                         const qorbit_matrix* psi1, int steps,
                                                         qorbit_trajectory** out);

QORBIT_API void qorbit_shooting_config_default(qorbit_shooting_config* cfg);
/* Keys absent from the file keep the values already in `cfg`. */
QORBIT_API qorbit_status qorbit_shooting_config_read_json(const char* path, qorbit_shooting_config* cfg);
/* A NULL cfg selects the defaults. */
QORBIT_API qorbit_status qorbit_distance(const qorbit_context* ctx, const qorbit_matrix* rho0,
                                         const qorbit_matrix* rho1, const qorbit_shooting_config* cfg,
                                         qorbit_distance_result* out);

/* ---- reports and verification suites ------------------------------------ */

QORBIT_API qorbit_status qorbit_report_create(const char* command, qorbit_report** out);
QORBIT_API void qorbit_report_destroy(qorbit_report* r);
QORBIT_API qorbit_status qorbit_report_add_input(qorbit_report* r, const char* name, const char* path);
QORBIT_API qorbit_status qorbit_report_set_number(qorbit_report* r, const char* name, double value);
QORBIT_API qorbit_status qorbit_report_set_string(qorbit_report* r, const char* name, const char* value);
QORBIT_API qorbit_status qorbit_report_set_matrix(qorbit_report* r, const char* name, const qorbit_matrix* m);
QORBIT_API qorbit_status qorbit_report_add_check(qorbit_report* r, const char* name, double lhs, double rhs,
                                                 double tolerance, qorbit_relation relation);
QORBIT_API qorbit_status qorbit_report_set_seed(qorbit_report* r, uint64_t seed);
QORBIT_API int qorbit_report_passed(const qorbit_report* r);
QORBIT_API qorbit_status qorbit_report_to_json(const qorbit_report* r, char** out);
QORBIT_API qorbit_status qorbit_report_check_table(const qorbit_report* r, char** out);

QORBIT_API qorbit_status qorbit_verify_decomposition(const qorbit_context* ctx, int samples, uint64_t seed,
                                                     qorbit_report** out);
/* Optional constant drive: pass NULL for both hamiltonian and rho0 to skip it. */
QORBIT_API qorbit_status qorbit_verify_dispersion(const qorbit_context* ctx, const qorbit_matrix* hamiltonian,
                                                  const qorbit_matrix* rho0, double tau, int steps, int samples,
                                                  uint64_t seed, qorbit_report** out);
/* NULL hamiltonian and rho0 select the hbar sigma_y fixture on diag(1, 0). */
QORBIT_API qorbit_status qorbit_verify_mt(const qorbit_context* ctx, const qorbit_matrix* hamiltonian,
                                          const qorbit_matrix* rho0, double tau, int steps, int expect_saturation,
                                          int samples, uint64_t seed, qorbit_report** out);

/* Writes text through a temporary file and an atomic rename. */
QORBIT_API qorbit_status qorbit_write_text_atomic(const char* path, const char* text);

#ifdef __cplusplus
}
#endif

#endif /* QORBIT_QORBIT_H_ */
