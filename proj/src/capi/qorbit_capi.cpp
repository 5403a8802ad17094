// Copyright 2026 The qorbit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qorbit/qorbit.h"

#include <algorithm>
#include <cstdlib>
#include <cstring>
#include <new>
#include <string>

#include "connection.hpp"
#include "control.hpp"
#include "dynamics.hpp"
#include "io.hpp"
#include "report.hpp"
#include "state_space.hpp"
#include "verify.hpp"

struct qorbit_context {
  qorbit::Context ctx;
};

struct qorbit_matrix {
  qorbit::Matrix m;
};

struct qorbit_trajectory {
  qorbit::Trajectory t;
};

struct qorbit_geodesic {
  qorbit::GeodesicSolution g;
};

struct qorbit_report {
  qorbit::RunReport r;
};

namespace {

using qorbit::Error;
using qorbit::ErrorCode;

thread_local std::string last_error;

qorbit_status status_of(ErrorCode code) {
  switch (code) {
    case ErrorCode::invalid_argument: return QORBIT_ERR_INVALID_ARGUMENT;
    case ErrorCode::validation: return QORBIT_ERR_VALIDATION;
    case ErrorCode::domain: return QORBIT_ERR_DOMAIN;
    case ErrorCode::numerical: return QORBIT_ERR_NUMERICAL;
    case ErrorCode::unsupported: return QORBIT_ERR_UNSUPPORTED;
    case ErrorCode::integration_drift: return QORBIT_ERR_INTEGRATION_DRIFT;
    case ErrorCode::not_horizontal: return QORBIT_ERR_NOT_HORIZONTAL;
    case ErrorCode::io: return QORBIT_ERR_IO;
  }
  return QORBIT_ERR_INTERNAL;
}

qorbit_status fail(qorbit_status s, std::string message) {
  last_error = std::move(message);
  return s;
}

// Runs `body`, translating exceptions into status codes.
template <class F>
qorbit_status guarded(F&& body) {
  try {
    body();
    return QORBIT_OK;
  } catch (const Error& e) {
    return fail(status_of(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return fail(QORBIT_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(QORBIT_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(QORBIT_ERR_INTERNAL, "unknown error");
  }
}

void require(bool ok, const char* what) {
  if (!ok) throw Error(ErrorCode::invalid_argument, what);
}

const qorbit::Context& context_of(const qorbit_context* c) {
  static const qorbit::Context defaults{};
  return c ? c->ctx : defaults;
}

const qorbit::Matrix& matrix_of(const qorbit_matrix* m, const char* name) {
  if (!m) throw Error(ErrorCode::invalid_argument, std::string(name) + " is NULL");
  return m->m;
}

const qorbit::Trajectory& trajectory_of(const qorbit_trajectory* t, const char* name) {
  if (!t) throw Error(ErrorCode::invalid_argument, std::string(name) + " is NULL");
  return t->t;
}

qorbit_matrix* new_matrix(qorbit::Matrix m) { return new qorbit_matrix{std::move(m)}; }
qorbit_trajectory* new_trajectory(qorbit::Trajectory t) { return new qorbit_trajectory{std::move(t)}; }

char* copy_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

qorbit::Purification purification_of(const qorbit::Matrix& m, const qorbit::Context& ctx) {
  return qorbit::Purification(m, ctx);
}

qorbit::DriveInput drive_of(const qorbit_matrix* h, const qorbit_matrix* rho0, double tau, int steps) {
  qorbit::DriveInput d;
  if (h) d.hamiltonian = h->m;
  if (rho0) d.rho0 = rho0->m;
  d.tau = tau;
  d.steps = steps;
  return d;
}

}  // namespace

extern "C" {

// ---- errors, version, strings -------------------------------------------

const char* qorbit_version(void) { return "0.1.0"; }

const char* qorbit_last_error(void) { return last_error.c_str(); }

const char* qorbit_status_string(qorbit_status status) {
  switch (status) {
    case QORBIT_OK: return "ok";
    case QORBIT_ERR_INVALID_ARGUMENT: return "invalid argument";
    case QORBIT_ERR_VALIDATION: return "validation error";
    case QORBIT_ERR_DOMAIN: return "domain error";
    case QORBIT_ERR_NUMERICAL: return "numerical error";
    case QORBIT_ERR_UNSUPPORTED: return "unsupported";
    case QORBIT_ERR_INTEGRATION_DRIFT: return "integration drift";
    case QORBIT_ERR_NOT_HORIZONTAL: return "not horizontal";
    case QORBIT_ERR_IO: return "I/O error";
    case QORBIT_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

void qorbit_string_free(char* s) { std::free(s); }

// ---- context --------------------------------------------------------------

qorbit_status qorbit_context_create(qorbit_context** out) {
  return guarded([&] {
    require(out, "out is NULL");
    *out = new qorbit_context{};
  });
}

void qorbit_context_destroy(qorbit_context* ctx) { delete ctx; }

qorbit_status qorbit_context_set_hbar(qorbit_context* ctx, double hbar) {
  return guarded([&] {
    require(ctx, "context is NULL");
    require(hbar > 0.0, "hbar must be positive");
    ctx->ctx.hbar = hbar;
  });
}

qorbit_status qorbit_context_set_rank_tol(qorbit_context* ctx, double tol) {
  return guarded([&] {
    require(ctx, "context is NULL");
    require(tol > 0.0, "rank tolerance must be positive");
    ctx->ctx.rank_tol = tol;
  });
}

qorbit_status qorbit_context_set_validation_tol(qorbit_context* ctx, double tol) {
  return guarded([&] {
    require(ctx, "context is NULL");
    require(tol > 0.0, "validation tolerance must be positive");
    ctx->ctx.hermitian_tol = tol;
  });
}

qorbit_status qorbit_context_set_trajectory_tol(qorbit_context* ctx, double tol) {
  return guarded([&] {
    require(ctx, "context is NULL");
    require(tol > 0.0, "trajectory tolerance must be positive");
    ctx->ctx.trajectory_tol = tol;
  });
}

double qorbit_context_hbar(const qorbit_context* ctx) { return context_of(ctx).hbar; }

// ---- matrices -------------------------------------------------------------

qorbit_status qorbit_matrix_create(size_t rows, size_t cols, const double* interleaved, qorbit_matrix** out) {
  return guarded([&] {
    require(out, "out is NULL");
    require(rows > 0 && cols > 0, "matrix dimensions must be positive");
    require(interleaved, "data is NULL");
    qorbit::Matrix m(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
    for (size_t r = 0; r < rows; ++r)
      for (size_t c = 0; c < cols; ++c) {
        const size_t i = 2 * (r * cols + c);
        m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
            qorbit::Complex(interleaved[i], interleaved[i + 1]);
      }
    *out = new_matrix(std::move(m));
  });
}

qorbit_status qorbit_matrix_zeros(size_t rows, size_t cols, qorbit_matrix** out) {
  return guarded([&] {
    require(out, "out is NULL");
    require(rows > 0 && cols > 0, "matrix dimensions must be positive");
    *out = new_matrix(qorbit::Matrix::Zero(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols)));
  });
}

void qorbit_matrix_destroy(qorbit_matrix* m) { delete m; }

size_t qorbit_matrix_rows(const qorbit_matrix* m) { return m ? static_cast<size_t>(m->m.rows()) : 0; }

size_t qorbit_matrix_cols(const qorbit_matrix* m) { return m ? static_cast<size_t>(m->m.cols()) : 0; }

qorbit_status qorbit_matrix_get(const qorbit_matrix* m, size_t row, size_t col, double* re, double* im) {
  return guarded([&] {
    const qorbit::Matrix& a = matrix_of(m, "matrix");
    require(row < static_cast<size_t>(a.rows()) && col < static_cast<size_t>(a.cols()), "index out of range");
    const qorbit::Complex z = a(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(col));
    if (re) *re = z.real();
    if (im) *im = z.imag();
  });
}

qorbit_status qorbit_matrix_copy_data(const qorbit_matrix* m, double* out, size_t capacity) {
  return guarded([&] {
    const qorbit::Matrix& a = matrix_of(m, "matrix");
    require(out, "out is NULL");
    require(capacity >= static_cast<size_t>(2 * a.size()), "buffer too small");
    size_t i = 0;
    for (Eigen::Index r = 0; r < a.rows(); ++r)
      for (Eigen::Index c = 0; c < a.cols(); ++c) {
        out[i++] = a(r, c).real();
        out[i++] = a(r, c).imag();
      }
  });
}

qorbit_status qorbit_matrix_distance(const qorbit_matrix* a, const qorbit_matrix* b, double* out) {
  return guarded([&] {
    const qorbit::Matrix& x = matrix_of(a, "a");
    const qorbit::Matrix& y = matrix_of(b, "b");
    require(out, "out is NULL");
    require(x.rows() == y.rows() && x.cols() == y.cols(), "matrix shapes differ");
    *out = (x - y).norm();
  });
}

qorbit_status qorbit_matrix_read_json(const char* path, qorbit_matrix** out) {
  return guarded([&] {
    require(path && out, "path or out is NULL");
    *out = new_matrix(qorbit::matrix_from_json(qorbit::read_json_file(path)));
  });
}

qorbit_status qorbit_matrix_write_json(const char* path, const qorbit_matrix* m) {
  return guarded([&] {
    require(path, "path is NULL");
    qorbit::write_text_atomic(path, qorbit::matrix_to_json(matrix_of(m, "matrix")).dump(2) + "\n");
  });
}

qorbit_status qorbit_matrix_to_json(const qorbit_matrix* m, char** out) {
  return guarded([&] {
    require(out, "out is NULL");
    *out = copy_string(qorbit::matrix_to_json(matrix_of(m, "matrix")).dump());
  });
}

// ---- state space and connection ------------------------------------------

qorbit_status qorbit_spectrum(const qorbit_context* ctx, const qorbit_matrix* rho, double* values, size_t capacity,
                              size_t* count) {
  return guarded([&] {
    const qorbit::Context& c = context_of(ctx);
    const qorbit::Spectrum s = qorbit::spectrum_of(qorbit::DensityOperator(matrix_of(rho, "rho"), c), c.rank_tol);
    if (count) *count = s.size();
    if (values)
      for (size_t i = 0; i < std::min(capacity, s.size()); ++i) values[i] = s.values()[i];
  });
}

qorbit_status qorbit_standard_purification(const qorbit_context* ctx, const qorbit_matrix* rho, qorbit_matrix** psi) {
  return guarded([&] {
    require(psi, "out is NULL");
    const qorbit::Context& c = context_of(ctx);
    *psi = new_matrix(qorbit::standard_purification(qorbit::DensityOperator(matrix_of(rho, "rho"), c), c).matrix());
  });
}

qorbit_status qorbit_uncertainty(const qorbit_context* ctx, const qorbit_matrix* rho, const qorbit_matrix* observable,
                                 double* out) {
  return guarded([&] {
    require(out, "out is NULL");
    const qorbit::Context& c = context_of(ctx);
    *out = qorbit::uncertainty(qorbit::DensityOperator(matrix_of(rho, "rho"), c),
                               qorbit::Observable(matrix_of(observable, "observable"), c));
  });
}

qorbit_status qorbit_is_parallel(const qorbit_context* ctx, const qorbit_matrix* observable, const qorbit_matrix* rho,
                                 double tol, int* out) {
  return guarded([&] {
    require(out, "out is NULL");
    const qorbit::Context& c = context_of(ctx);
    *out = qorbit::is_parallel_at(qorbit::Observable(matrix_of(observable, "observable"), c),
                                  qorbit::DensityOperator(matrix_of(rho, "rho"), c), tol, c)
               ? 1
               : 0;
  });
}

qorbit_status qorbit_submersion_metric(const qorbit_context* ctx, const qorbit_matrix* rho,
                                       const qorbit_matrix* rho_dot1, const qorbit_matrix* rho_dot2, double* out) {
  return guarded([&] {
    require(out, "out is NULL");
    const qorbit::Context& c = context_of(ctx);
    *out = qorbit::submersion_metric(qorbit::DensityOperator(matrix_of(rho, "rho"), c),
                                     matrix_of(rho_dot1, "rho_dot1"), matrix_of(rho_dot2, "rho_dot2"), c);
  });
}

qorbit_status qorbit_coadjoint(const qorbit_matrix* xi, const double* sigma, size_t k, qorbit_matrix** out) {
  return guarded([&] {
    require(out && sigma && k > 0, "invalid spectrum or out");
    const qorbit::Spectrum s = qorbit::Spectrum::from_values(std::vector<double>(sigma, sigma + k));
    *out = new_matrix(qorbit::coadjoint(qorbit::GaugeElement(matrix_of(xi, "xi")), s).matrix());
  });
}

// ---- trajectories ----------------------------------------------------------

qorbit_status qorbit_trajectory_create(qorbit_frame_kind kind, size_t count, const double* times,
                                       const qorbit_matrix* const* frames, qorbit_trajectory** out) {
  return guarded([&] {
    require(out && times && frames && count > 0, "NULL argument or empty trajectory");
    require(kind >= QORBIT_FRAME_DENSITY && kind <= QORBIT_FRAME_CONTROL, "unknown frame kind");
    qorbit::Trajectory t{static_cast<qorbit::FrameKind>(kind), {}, {}};
    for (size_t i = 0; i < count; ++i) {
      t.times.push_back(times[i]);
      t.frames.push_back(matrix_of(frames[i], "frame"));
      require(t.frames.back().rows() == t.frames.front().rows() && t.frames.back().cols() == t.frames.front().cols(),
              "frame shapes differ");
      require(i == 0 || times[i] > times[i - 1], "times must increase");
    }
    *out = new_trajectory(std::move(t));
  });
}

void qorbit_trajectory_destroy(qorbit_trajectory* t) { delete t; }

size_t qorbit_trajectory_size(const qorbit_trajectory* t) { return t ? t->t.size() : 0; }

qorbit_frame_kind qorbit_trajectory_kind(const qorbit_trajectory* t) {
  return t ? static_cast<qorbit_frame_kind>(t->t.kind) : QORBIT_FRAME_DENSITY;
}

double qorbit_trajectory_time(const qorbit_trajectory* t, size_t i) {
  return t && i < t->t.times.size() ? t->t.times[i] : 0.0;
}

qorbit_status qorbit_trajectory_frame(const qorbit_trajectory* t, size_t i, qorbit_matrix** out) {
  return guarded([&] {
    const qorbit::Trajectory& traj = trajectory_of(t, "trajectory");
    require(out, "out is NULL");
    require(i < traj.size(), "frame index out of range");
    *out = new_matrix(traj.frames[i]);
  });
}

qorbit_status qorbit_trajectory_read(const char* path, qorbit_frame_kind kind, qorbit_trajectory** out) {
  return guarded([&] {
    require(path && out, "path or out is NULL");
    *out = new_trajectory(qorbit::read_trajectory_file(path, static_cast<qorbit::FrameKind>(kind)));
  });
}

qorbit_status qorbit_trajectory_write_csv(const char* path, const qorbit_trajectory* t) {
  return guarded([&] {
    require(path, "path is NULL");
    qorbit::write_text_atomic(path, qorbit::trajectory_to_csv(trajectory_of(t, "trajectory")));
  });
}

qorbit_status qorbit_trajectory_write_json(const char* path, const qorbit_trajectory* t) {
  return guarded([&] {
    require(path, "path is NULL");
    qorbit::write_text_atomic(path, qorbit::trajectory_to_json(trajectory_of(t, "trajectory")).dump() + "\n");
  });
}

// ---- dynamics ----------------------------------------------------------------

qorbit_status qorbit_evolve_von_neumann(const qorbit_context* ctx, const qorbit_matrix* hamiltonian,
                                        const qorbit_matrix* rho0, double tau, int steps, qorbit_trajectory** out) {
  return guarded([&] {
    require(out, "out is NULL");
    const qorbit::Context& c = context_of(ctx);
    *out = new_trajectory(qorbit::evolve_von_neumann(qorbit::constant_function(matrix_of(hamiltonian, "hamiltonian")),
                                                     qorbit::DensityOperator(matrix_of(rho0, "rho0"), c), tau, steps,
                                                     c));
  });
}

qorbit_status qorbit_evolve_von_neumann_sampled(const qorbit_context* ctx, const qorbit_trajectory* hamiltonian,
                                                const qorbit_matrix* rho0, int steps, qorbit_trajectory** out) {
  return guarded([&] {
    require(out, "out is NULL");
    const qorbit::Context& c = context_of(ctx);
    const qorbit::Trajectory& h = trajectory_of(hamiltonian, "hamiltonian");
    require(h.size() >= 2, "sampled Hamiltonian needs at least two frames");
    qorbit::validate_trajectory(qorbit::Trajectory{qorbit::FrameKind::hamiltonian, h.times, h.frames},
                                c.trajectory_tol);
    *out = new_trajectory(qorbit::evolve_von_neumann(qorbit::interpolate(h),
                                                     qorbit::DensityOperator(matrix_of(rho0, "rho0"), c), h.tau(),
                                                     steps, c));
  });
}

qorbit_status qorbit_evolve_schrodinger(const qorbit_context* ctx, const qorbit_matrix* hamiltonian,
                                        const qorbit_matrix* psi0, double tau, int steps, qorbit_trajectory** out) {
  return guarded([&] {
    require(out, "out is NULL");
    const qorbit::Context& c = context_of(ctx);
    *out = new_trajectory(qorbit::evolve_schrodinger(qorbit::constant_function(matrix_of(hamiltonian, "hamiltonian")),
                                                     purification_of(matrix_of(psi0, "psi0"), c), tau, steps, c));
  });
}

qorbit_status qorbit_horizontal_lift(const qorbit_context* ctx, const qorbit_trajectory* rho, const qorbit_matrix* psi0,
                                     int steps_per_frame, qorbit_trajectory** out) {
  return guarded([&] {
    require(out, "out is NULL");
    const qorbit::Context& c = context_of(ctx);
    *out = new_trajectory(qorbit::horizontal_lift(trajectory_of(rho, "rho"),
                                                  purification_of(matrix_of(psi0, "psi0"), c), steps_per_frame, c));
  });
}

qorbit_status qorbit_curve_length(const qorbit_context* ctx, const qorbit_trajectory* t, double* out) {
  return guarded([&] {
    require(out, "out is NULL");
    *out = qorbit::curve_length(trajectory_of(t, "trajectory"), context_of(ctx));
  });
}

qorbit_status qorbit_energy_dispersion(const qorbit_context* ctx, const qorbit_trajectory* hamiltonian,
                                       const qorbit_trajectory* rho, double* out) {
  return guarded([&] {
    require(out, "out is NULL");
    *out = qorbit::energy_dispersion(trajectory_of(hamiltonian, "hamiltonian"), trajectory_of(rho, "rho"),
                                     context_of(ctx));
  });
}

qorbit_status qorbit_max_vertical_velocity(const qorbit_context* ctx, const qorbit_trajectory* psi, double* out) {
  return guarded([&] {
    require(out, "out is NULL");
    const qorbit::Context& c = context_of(ctx);
    const qorbit::Trajectory& traj = trajectory_of(psi, "psi");
    require(traj.kind == qorbit::FrameKind::purification, "expected a purification trajectory");
    qorbit::Context loose = c;
    loose.fiber_tol = std::max(c.fiber_tol, c.trajectory_tol);
    double worst = 0.0;
    for (std::size_t i = 0; i < traj.size(); ++i) {
      const qorbit::Purification p(traj.frames[i], loose);
      const qorbit::ConnectionEvaluation e = qorbit::connection_form(p, qorbit::frame_derivative(traj, i), loose);
      worst = std::max(worst, qorbit::gauge_norm(e.xi.matrix(), p.spectrum()));
    }
    *out = worst;
  });
}

qorbit_status qorbit_projection_error(const qorbit_trajectory* psi, const qorbit_trajectory* rho, double* out) {
  return guarded([&] {
    require(out, "out is NULL");
    const qorbit::Trajectory& a = trajectory_of(psi, "psi");
    const qorbit::Trajectory& b = trajectory_of(rho, "rho");
    require(a.size() == b.size(), "trajectories have different lengths");
    double worst = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
      require(a.frames[i].rows() == b.frames[i].rows(), "frame shapes differ");
      worst = std::max(worst, (a.frames[i] * a.frames[i].adjoint() - b.frames[i]).norm());
    }
    *out = worst;
  });
}

qorbit_status qorbit_spectrum_drift(const qorbit_trajectory* rho, double* out) {
  return guarded([&] {
    require(out, "out is NULL");
    const qorbit::Trajectory& traj = trajectory_of(rho, "rho");
    require(traj.size() > 0, "empty trajectory");
    const qorbit::RealVector first = qorbit::eigh_descending(traj.frames[0]).values;
    double worst = 0.0;
    for (const qorbit::Matrix& m : traj.frames)
      worst = std::max(worst, (qorbit::eigh_descending(m).values - first).cwiseAbs().maxCoeff());
    *out = worst;
  });
}

// ---- control ------------------------------------------------------------------

qorbit_status qorbit_geodesic_from(const qorbit_context* ctx, const qorbit_matrix* rho0, const qorbit_matrix* xi0,
                                   double tau, int steps, qorbit_geodesic** out) {
  return guarded([&] {
    require(out, "out is NULL");
    const qorbit::Context& c = context_of(ctx);
    *out = new qorbit_geodesic{qorbit::geodesic_from(qorbit::DensityOperator(matrix_of(rho0, "rho0"), c),
                                                     qorbit::GaugeElement(matrix_of(xi0, "xi0"), c), tau, steps, c)};
  });
}

qorbit_status qorbit_two_eigenvalue_geodesic(const qorbit_context* ctx, const qorbit_matrix* rho0,
                                             const qorbit_matrix* xi0, double tau, int steps, qorbit_geodesic** out) {
  return guarded([&] {
    require(out, "out is NULL");
    const qorbit::Context& c = context_of(ctx);
    *out = new qorbit_geodesic{qorbit::two_eigenvalue_geodesic(
        qorbit::DensityOperator(matrix_of(rho0, "rho0"), c), qorbit::GaugeElement(matrix_of(xi0, "xi0"), c), tau,
        steps, c)};
  });
}

void qorbit_geodesic_destroy(qorbit_geodesic* g) { delete g; }

double qorbit_geodesic_length(const qorbit_geodesic* g) { return g ? g->g.length : 0.0; }

double qorbit_geodesic_max_horizontal_residual(const qorbit_geodesic* g) {
  return g ? g->g.max_horizontal_residual : 0.0;
}

double qorbit_geodesic_speed_drift(const qorbit_geodesic* g) { return g ? g->g.speed_drift : 0.0; }

qorbit_status qorbit_geodesic_dispersion(const qorbit_context* ctx, const qorbit_geodesic* g, double* out) {
  return guarded([&] {
    require(g && out, "geodesic or out is NULL");
    *out = qorbit::energy_dispersion(g->g.hamiltonian_function, g->g.rho_curve, context_of(ctx));
  });
}

qorbit_status qorbit_geodesic_trajectory(const qorbit_geodesic* g, qorbit_geodesic_part part, qorbit_trajectory** out) {
  return guarded([&] {
    require(g && out, "geodesic or out is NULL");
    switch (part) {
      case QORBIT_GEODESIC_RHO: *out = new_trajectory(g->g.rho_curve); return;
      case QORBIT_GEODESIC_PSI: *out = new_trajectory(g->g.psi_curve); return;
      case QORBIT_GEODESIC_HAMILTONIAN: *out = new_trajectory(g->g.hamiltonian); return;
      case QORBIT_GEODESIC_CONTROL: *out = new_trajectory(g->g.xi_curve.samples()); return;
    }
    throw Error(ErrorCode::invalid_argument, "unknown geodesic part");
  });
}

qorbit_status qorbit_synth_hamiltonian(const qorbit_context* ctx, const qorbit_matrix* psi0,
                                       const qorbit_trajectory* xi, int steps, qorbit_trajectory** out) {
  return guarded([&] {
    require(out, "out is NULL");
    const qorbit::Context& c = context_of(ctx);
    qorbit::Trajectory samples = trajectory_of(xi, "xi");
    samples.kind = qorbit::FrameKind::control;
    const qorbit::ControlCurve curve(std::move(samples));
    *out = new_trajectory(
        qorbit::synth_hamiltonian(purification_of(matrix_of(psi0, "psi0"), c), curve, steps, c).hamiltonian);
  });
}

qorbit_status qorbit_distinguishable_geodesic(const qorbit_context* ctx, const qorbit_matrix* psi0,
                                              const qorbit_matrix* psi1, int steps, qorbit_trajectory** out) {
  return guarded([&] {
    require(out, "out is NULL");
    const qorbit::Context& c = context_of(ctx);
    *out = new_trajectory(qorbit::distinguishable_geodesic(purification_of(matrix_of(psi0, "psi0"), c),
                                                           purification_of(matrix_of(psi1, "psi1"), c), steps, c));
  });
}

void qorbit_shooting_config_default(qorbit_shooting_config* cfg) {
  if (!cfg) return;
  const qorbit::ShootingConfig d;
  *cfg = qorbit_shooting_config{d.restarts, d.endpoint_tol, d.max_iters, d.seed, d.steps};
}

qorbit_status qorbit_shooting_config_read_json(const char* path, qorbit_shooting_config* cfg) {
  return guarded([&] {
    require(path && cfg, "path or cfg is NULL");
    qorbit::Json j = qorbit::read_json_file(path);
    if (!j.contains("restarts")) j["restarts"] = cfg->restarts;
    if (!j.contains("endpoint_tol")) j["endpoint_tol"] = cfg->endpoint_tol;
    if (!j.contains("max_iters")) j["max_iters"] = cfg->max_iters;
    if (!j.contains("seed")) j["seed"] = cfg->seed;
    if (!j.contains("steps")) j["steps"] = cfg->steps;
    const qorbit::ShootingConfig s = qorbit::shooting_config_from_json(j);
    *cfg = qorbit_shooting_config{s.restarts, s.endpoint_tol, s.max_iters, s.seed, s.steps};
  });
}

qorbit_status qorbit_distance(const qorbit_context* ctx, const qorbit_matrix* rho0, const qorbit_matrix* rho1,
                              const qorbit_shooting_config* cfg, qorbit_distance_result* out) {
  return guarded([&] {
    require(out, "out is NULL");
    const qorbit::Context& c = context_of(ctx);
    qorbit::ShootingConfig s;
    if (cfg) s = qorbit::ShootingConfig{cfg->restarts, cfg->endpoint_tol, cfg->max_iters, cfg->seed, cfg->steps};
    const qorbit::DistanceResult r = qorbit::distance(qorbit::DensityOperator(matrix_of(rho0, "rho0"), c),
                                                      qorbit::DensityOperator(matrix_of(rho1, "rho1"), c), s, c);
    *out = qorbit_distance_result{r.distance, r.converged ? 1 : 0, r.endpoint_mismatch, r.restarts_converged,
                                  new_matrix(r.xi0.matrix())};
  });
}

// ---- reports and verification suites --------------------------------------------

qorbit_status qorbit_report_create(const char* command, qorbit_report** out) {
  return guarded([&] {
    require(command && out, "command or out is NULL");
    *out = new qorbit_report{qorbit::RunReport(command)};
  });
}

void qorbit_report_destroy(qorbit_report* r) { delete r; }

qorbit_status qorbit_report_add_input(qorbit_report* r, const char* name, const char* path) {
  return guarded([&] {
    require(r && name && path, "NULL argument");
    r->r.add_input(name, path);
  });
}

qorbit_status qorbit_report_set_number(qorbit_report* r, const char* name, double value) {
  return guarded([&] {
    require(r && name, "NULL argument");
    r->r.set_output(name, value);
  });
}

qorbit_status qorbit_report_set_string(qorbit_report* r, const char* name, const char* value) {
  return guarded([&] {
    require(r && name && value, "NULL argument");
    r->r.set_output(name, value);
  });
}

qorbit_status qorbit_report_set_matrix(qorbit_report* r, const char* name, const qorbit_matrix* m) {
  return guarded([&] {
    require(r && name, "NULL argument");
    r->r.set_output(name, qorbit::matrix_to_json(matrix_of(m, "matrix")));
  });
}

qorbit_status qorbit_report_add_check(qorbit_report* r, const char* name, double lhs, double rhs, double tolerance,
                                      qorbit_relation relation) {
  return guarded([&] {
    require(r && name, "NULL argument");
    require(relation >= QORBIT_REL_EQUAL && relation <= QORBIT_REL_AT_MOST, "unknown relation");
    r->r.add_check(qorbit::make_check(name, lhs, rhs, tolerance, static_cast<qorbit::Relation>(relation)));
  });
}

qorbit_status qorbit_report_set_seed(qorbit_report* r, uint64_t seed) {
  return guarded([&] {
    require(r, "report is NULL");
    r->r.set_seed(seed);
  });
}

int qorbit_report_passed(const qorbit_report* r) { return r && r->r.passed() ? 1 : 0; }

qorbit_status qorbit_report_to_json(const qorbit_report* r, char** out) {
  return guarded([&] {
    require(r && out, "NULL argument");
    *out = copy_string(r->r.to_json().dump(2));
  });
}

qorbit_status qorbit_report_check_table(const qorbit_report* r, char** out) {
  return guarded([&] {
    require(r && out, "NULL argument");
    *out = copy_string(r->r.check_table());
  });
}

qorbit_status qorbit_verify_decomposition(const qorbit_context* ctx, int samples, uint64_t seed, qorbit_report** out) {
  return guarded([&] {
    require(out, "out is NULL");
    *out = new qorbit_report{qorbit::verify_decomposition(samples, seed, context_of(ctx))};
  });
}

qorbit_status qorbit_verify_dispersion(const qorbit_context* ctx, const qorbit_matrix* hamiltonian,
                                       const qorbit_matrix* rho0, double tau, int steps, int samples, uint64_t seed,
                                       qorbit_report** out) {
  return guarded([&] {
    require(out, "out is NULL");
    *out = new qorbit_report{
        qorbit::verify_dispersion(drive_of(hamiltonian, rho0, tau, steps), samples, seed, context_of(ctx))};
  });
}

qorbit_status qorbit_verify_mt(const qorbit_context* ctx, const qorbit_matrix* hamiltonian, const qorbit_matrix* rho0,
                               double tau, int steps, int expect_saturation, int samples, uint64_t seed,
                               qorbit_report** out) {
  return guarded([&] {
    require(out, "out is NULL");
    *out = new qorbit_report{qorbit::verify_mt(drive_of(hamiltonian, rho0, tau, steps), expect_saturation != 0,
                                               samples, seed, context_of(ctx))};
  });
}

qorbit_status qorbit_write_text_atomic(const char* path, const char* text) {
  return guarded([&] {
    require(path && text, "path or text is NULL");
    qorbit::write_text_atomic(path, text);
  });
}

}  // extern "C"
