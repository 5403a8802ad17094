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

/* Exercises the shared library through its C header only. */

#include <math.h>
#include <stdio.h>
#include <stdlib.h>
#include <string.h>

#include "qorbit/qorbit.h"

static int failures = 0;

#define EXPECT(cond)                                                   \
  do {                                                                 \
    if (!(cond)) {                                                     \
      fprintf(stderr, "%s:%d: expectation failed: %s\n", __FILE__,     \
              __LINE__, #cond);                                        \
      ++failures;                                                      \
    }                                                                  \
  } while (0)

static qorbit_matrix* real2(double a, double b, double c, double d) {
  const double data[8] = {a, 0.0, b, 0.0, c, 0.0, d, 0.0};
  qorbit_matrix* m = NULL;
  if (qorbit_matrix_create(2, 2, data, &m) != QORBIT_OK) return NULL;
  return m;
}

int main(void) {
  qorbit_context* ctx = NULL;
  EXPECT(qorbit_context_create(&ctx) == QORBIT_OK);
  EXPECT(qorbit_context_hbar(ctx) == 1.0);
  EXPECT(strlen(qorbit_version()) > 0);

  /* Argument errors. */
  EXPECT(qorbit_context_create(NULL) == QORBIT_ERR_INVALID_ARGUMENT);
  EXPECT(strlen(qorbit_last_error()) > 0);
  EXPECT(qorbit_context_set_hbar(ctx, -1.0) == QORBIT_ERR_INVALID_ARGUMENT);
  EXPECT(strcmp(qorbit_status_string(QORBIT_OK), "ok") == 0);

  /* Qubit fixture: rho0 = diag(0.75, 0.25), xi = [[0, 0.5], [-0.5, 0]]. */
  qorbit_matrix* rho0 = real2(0.75, 0.0, 0.0, 0.25);
  qorbit_matrix* xi = real2(0.0, 0.5, -0.5, 0.0);
  EXPECT(rho0 && xi);

  double values[4];
  size_t count = 0;
  EXPECT(qorbit_spectrum(ctx, rho0, values, 4, &count) == QORBIT_OK);
  EXPECT(count == 2 && values[0] == 0.75 && values[1] == 0.25);

  qorbit_geodesic* geo = NULL;
  EXPECT(qorbit_geodesic_from(ctx, rho0, xi, 1.0, 1000, &geo) == QORBIT_OK);
  EXPECT(fabs(qorbit_geodesic_length(geo) - 0.5) < 1e-9);
  double dispersion = 0.0;
  EXPECT(qorbit_geodesic_dispersion(ctx, geo, &dispersion) == QORBIT_OK);
  EXPECT(fabs(dispersion - 0.5) < 1e-5);

  qorbit_trajectory* rho = NULL;
  EXPECT(qorbit_geodesic_trajectory(geo, QORBIT_GEODESIC_RHO, &rho) == QORBIT_OK);
  EXPECT(qorbit_trajectory_size(rho) == 1001);
  EXPECT(qorbit_trajectory_kind(rho) == QORBIT_FRAME_DENSITY);
  qorbit_matrix* rho1 = NULL;
  EXPECT(qorbit_trajectory_frame(rho, 1000, &rho1) == QORBIT_OK);
  double re = 0.0, im = 0.0;
  EXPECT(qorbit_matrix_get(rho1, 0, 1, &re, &im) == QORBIT_OK);
  EXPECT(fabs(re + 0.25 * sin(1.0)) < 1e-9 && fabs(im) < 1e-12);
  EXPECT(qorbit_trajectory_frame(rho, 5000, &rho1) == QORBIT_ERR_INVALID_ARGUMENT);

  qorbit_distance_result res;
  memset(&res, 0, sizeof res);
  EXPECT(qorbit_distance(ctx, rho0, rho1, NULL, &res) == QORBIT_OK);
  EXPECT(res.converged && fabs(res.distance - 0.5) < 1e-5);
  EXPECT(res.xi0 != NULL);
  qorbit_matrix_destroy(res.xi0);

  /* Domain error names both spectra. */
  qorbit_matrix* a = real2(0.7, 0.0, 0.0, 0.3);
  qorbit_matrix* b = real2(0.6, 0.0, 0.0, 0.4);
  EXPECT(qorbit_distance(ctx, a, b, NULL, &res) == QORBIT_ERR_DOMAIN);
  EXPECT(strstr(qorbit_last_error(), "0.7") && strstr(qorbit_last_error(), "0.6"));

  /* Validation error for a non-density matrix. */
  qorbit_matrix* bad = real2(0.7, 0.0, 0.0, 0.7);
  qorbit_trajectory* out = NULL;
  EXPECT(qorbit_evolve_von_neumann(ctx, xi, bad, 1.0, 10, &out) != QORBIT_OK);
  EXPECT(out == NULL);

  /* Not horizontal. */
  qorbit_matrix* diag = NULL;
  {
    const double d[8] = {0.0, 0.3, 0.0, 0.0, 0.0, 0.0, 0.0, -0.1};
    EXPECT(qorbit_matrix_create(2, 2, d, &diag) == QORBIT_OK);
  }
  qorbit_geodesic* g2 = NULL;
  EXPECT(qorbit_geodesic_from(ctx, rho0, diag, 1.0, 10, &g2) == QORBIT_ERR_NOT_HORIZONTAL);
  EXPECT(strstr(qorbit_last_error(), "parallel part norm") != NULL);

  /* Coadjoint vanishes for two distinct eigenvalues. */
  const double sigma[2] = {0.75, 0.25};
  qorbit_matrix* zeta = NULL;
  EXPECT(qorbit_coadjoint(xi, sigma, 2, &zeta) == QORBIT_OK);
  double z[8];
  EXPECT(qorbit_matrix_copy_data(zeta, z, 8) == QORBIT_OK);
  for (int i = 0; i < 8; ++i) EXPECT(fabs(z[i]) < 1e-14);

  /* Reports. */
  qorbit_report* rep = NULL;
  EXPECT(qorbit_verify_decomposition(ctx, 20, 7, &rep) == QORBIT_OK);
  EXPECT(qorbit_report_passed(rep) == 1);
  char* json = NULL;
  EXPECT(qorbit_report_to_json(rep, &json) == QORBIT_OK);
  EXPECT(strstr(json, "\"command\"") != NULL);
  qorbit_string_free(json);
  qorbit_report_destroy(rep);

  qorbit_matrix_destroy(zeta);
  qorbit_geodesic_destroy(g2);
  qorbit_matrix_destroy(diag);
  qorbit_matrix_destroy(bad);
  qorbit_matrix_destroy(a);
  qorbit_matrix_destroy(b);
  qorbit_matrix_destroy(rho1);
  qorbit_trajectory_destroy(rho);
  qorbit_geodesic_destroy(geo);
  qorbit_matrix_destroy(xi);
  qorbit_matrix_destroy(rho0);
  qorbit_context_destroy(ctx);

  if (failures) fprintf(stderr, "%d expectation(s) failed\n", failures);
  return failures ? EXIT_FAILURE : EXIT_SUCCESS;
}
