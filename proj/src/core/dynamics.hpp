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

#pragma once

#include <cmath>
#include <functional>
#include <vector>

#include "types.hpp"

namespace qorbit {

/// Time-dependent matrix: a Hamiltonian H(t) or a control curve xi(t).
using MatrixFunction = std::function<Matrix(double)>;

MatrixFunction constant_function(Matrix m);

enum class FrameKind { density, purification, hamiltonian, control };

const char* to_string(FrameKind kind);

/// Frames on a uniform grid t_i = tau * i / N, i = 0..N.
struct Trajectory {
  FrameKind kind = FrameKind::density;
  std::vector<double> times;
  std::vector<Matrix> frames;

  std::size_t size() const noexcept { return frames.size(); }
  double tau() const { return times.back() - times.front(); }
  double step() const { return times.size() > 1 ? times[1] - times[0] : 0.0; }
};

std::vector<double> uniform_grid(double tau, int steps);

/// Per-kind frame validation at `tol`; throws ErrorCode::validation.
void validate_trajectory(const Trajectory& traj, double tol);

/// d/dt of frame i by fourth-order finite differences (lower order when the
/// trajectory has fewer than five frames).
Matrix frame_derivative(const Trajectory& traj, std::size_t i);

/// Piecewise cubic Hermite curve through samples with given node slopes.
/// Between nodes the value is exact at the nodes and fourth-order accurate
/// when the slopes are exact.
class HermiteCurve {
 public:
  HermiteCurve(std::vector<double> times, std::vector<Matrix> values, std::vector<Matrix> slopes);
  // Slopes from frame_derivative.
  explicit HermiteCurve(const Trajectory& traj);

  Matrix value(double t) const;
  Matrix derivative(double t) const;

 private:
  std::size_t interval(double t) const;
  std::vector<double> times_;
  std::vector<Matrix> values_;
  std::vector<Matrix> slopes_;
};

MatrixFunction interpolate(const Trajectory& traj);

/// Nearest unitary in Frobenius norm (polar factor).
Matrix polar_unitary(const Matrix& m);

/// Classical RK4 step for dy/dt = f(t, y) from t0 to t1. The last stage is
/// evaluated at the left limit of t1 so that controls switching exactly on a
/// grid point are integrated without an O(h) error.
template <class F>
Matrix rk4_step(const F& f, double t0, double t1, const Matrix& y) {
  const double h = t1 - t0;
  const double tm = t0 + 0.5 * h;
  const double te = std::nextafter(t1, t0);
  const Matrix k1 = f(t0, y);
  const Matrix k2 = f(tm, y + 0.5 * h * k1);
  const Matrix k3 = f(tm, y + 0.5 * h * k2);
  const Matrix k4 = f(te, y + h * k3);
  return y + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

/// rho' = [H, rho] / (i hbar), RK4 with per-step re-Hermitization.
Trajectory evolve_von_neumann(const MatrixFunction& hamiltonian, const DensityOperator& rho0, double tau,
                              int steps, const Context& ctx = {});

/// psi' = H psi / (i hbar). The propagator U is integrated with RK4 and
/// polar-corrected each step; frames are U(t_i) psi0.
Trajectory evolve_schrodinger(const MatrixFunction& hamiltonian, const Purification& psi0, double tau, int steps,
                              const Context& ctx = {});

/// V' = V xi(t), V(0) = 1 on [0, t]; later factors compose on the right.
/// Returns all grid samples V(t_0) .. V(t_N).
std::vector<Matrix> ordered_exponential_samples(const MatrixFunction& xi, double t, int steps,
                                                const Context& ctx = {});

Matrix neg_time_ordered_exp(const MatrixFunction& xi, double t, int steps, const Context& ctx = {});

/// Length of the curve traced in the orbit. Density frames must be full rank
/// (speed from the submersion metric); purification frames may have any rank
/// and contribute the norm of the horizontal part of their velocity.
double curve_length(const Trajectory& traj, const Context& ctx = {});

/// (1/hbar) * integral of Delta H along the density trajectory (trapezoid on
/// the trajectory grid).
double energy_dispersion(const MatrixFunction& hamiltonian, const Trajectory& rho_traj, const Context& ctx = {});
double energy_dispersion(const Trajectory& hamiltonian, const Trajectory& rho_traj, const Context& ctx = {});

/// Horizontal lift of a full-rank density trajectory, starting at psi0.
/// Integrates psi' = hor(B psi) with [B, rho(t)] = rho'(t), where rho(t) is the
/// cubic Hermite interpolant of the frames; `steps_per_frame` RK4 substeps
/// between consecutive frames.
Trajectory horizontal_lift(const Trajectory& rho_traj, const Purification& psi0, int steps_per_frame,
                           const Context& ctx = {});

bool is_distinguishable(const DensityOperator& rho0, const DensityOperator& rho1, double tol = 1e-9);

struct SpeedLimitReport {
  bool distinguishable = false;
  double mean_uncertainty_times_tau = 0.0;  // <Delta H> tau
  double bound = 0.0;                       // pi hbar / 2
  bool satisfied = true;                    // vacuous when not distinguishable
  double gap = 0.0;                         // <Delta H> tau - pi hbar / 2
  Trajectory rho;
};

SpeedLimitReport mt_bound_report(const MatrixFunction& hamiltonian, const DensityOperator& rho0, double tau,
                                 int steps, const Context& ctx = {});

}  // namespace qorbit
