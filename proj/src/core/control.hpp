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

#include <cstdint>
#include <string>
#include <vector>

#include "dynamics.hpp"
#include "state_space.hpp"
#include "types.hpp"

namespace qorbit {

/// zeta with beta(zeta, eta) = beta(xi, [xi, eta]) for every eta in u(k).
/// Entrywise zeta_ij = C_ij / (p_i + p_j), C = [{P, xi}, xi].
Matrix coadjoint(const Matrix& xi, const Spectrum& sigma);
GaugeElement coadjoint(const GaugeElement& xi, const Spectrum& sigma);

/// Time-sampled curve of anti-Hermitian matrices with a dense evaluator.
class ControlCurve {
 public:
  ControlCurve() = default;
  // Cubic Hermite through the samples, slopes by finite differences.
  explicit ControlCurve(Trajectory samples);
  // Cubic Hermite with exact node slopes.
  ControlCurve(Trajectory samples, std::vector<Matrix> slopes);
  // Grid samples of `f`; evaluation between nodes calls `f` itself.
  static ControlCurve from_function(MatrixFunction f, double tau, int steps);

  const Trajectory& samples() const noexcept { return samples_; }
  double tau() const { return samples_.tau(); }
  int steps() const { return static_cast<int>(samples_.size()) - 1; }
  Matrix operator()(double t) const { return eval_(t); }
  const MatrixFunction& function() const noexcept { return eval_; }

 private:
  ControlCurve(Trajectory samples, MatrixFunction eval);
  Trajectory samples_;
  MatrixFunction eval_;
};

/// xi' = coadjoint(xi) by RK4 on [0, tau], re-projected to anti-Hermitian
/// after each step. Throws integration_drift when beta(xi, xi) moves by more
/// than 1e-6 relative.
ControlCurve arnold_euler_flow(const GaugeElement& xi0, const Spectrum& sigma, double tau, int steps,
                               const Context& ctx = {});

struct SynthesizedHamiltonian {
  Trajectory hamiltonian;           // H on the grid
  std::vector<Matrix> propagator;   // V(t_i), V' = V xi
  MatrixFunction function;          // H(t) between grid points
};

/// H(t) = i hbar Q V(t) xi(t) V(t)^dagger Q^dagger with Q = psi0 P^(-1/2).
/// The Schrodinger flow of H from psi0 is Q V(t) P^(1/2).
SynthesizedHamiltonian synth_hamiltonian(const Purification& psi0, const ControlCurve& xi, int steps,
                                         const Context& ctx = {});

struct GeodesicSolution {
  GaugeElement xi0{Matrix()};
  ControlCurve xi_curve;
  Trajectory hamiltonian;
  MatrixFunction hamiltonian_function;
  Trajectory psi_curve;
  Trajectory rho_curve;
  double length = 0.0;
  double max_horizontal_residual = 0.0;  // max_t ||proj_u(sigma) xi(t)||_beta
  double speed_drift = 0.0;              // max_t |beta(xi,xi) / beta(xi0,xi0) - 1|
};

/// Geodesic through a full-rank rho0 with initial control xi0 in the
/// complement of u(sigma), in the frame of the standard purification.
GeodesicSolution geodesic_from(const DensityOperator& rho0, const GaugeElement& xi0, double tau, int steps,
                               const Context& ctx = {});

/// Closed form for spectra with two distinct values: constant control,
/// H = i hbar Q xi0 Q^dagger, psi(t) = Q exp(t xi0) P^(1/2).
GeodesicSolution two_eigenvalue_geodesic(const DensityOperator& rho0, const GaugeElement& xi0, double tau,
                                         int steps = 1000, const Context& ctx = {});

/// exp(t xi) for anti-Hermitian xi via the eigendecomposition of i xi.
Matrix expm_anti_hermitian(const Matrix& xi, double t = 1.0);

/// psi(t) = cos(t) psi0 + sin(t) psi1 on [0, pi/2] for purifications with
/// orthogonal supports.
Trajectory distinguishable_geodesic(const Purification& psi0, const Purification& psi1, int steps = 1000,
                                    const Context& ctx = {});

struct ShootingConfig {
  int restarts = 8;
  double endpoint_tol = 1e-6;
  int max_iters = 4000;
  std::uint64_t seed = 42;
  int steps = 200;
};

struct DistanceResult {
  double distance = 0.0;
  // Initial control in the frame of the standard purification of rho0. For
  // the pure and distinguishable closed forms it is instead the n x n
  // generator B with psi(t) = exp(t B) psi0, t in [0, 1].
  GaugeElement xi0{Matrix()};
  bool converged = false;
  double endpoint_mismatch = 0.0;
  std::string method;       // "identical", "pure", "distinguishable", "shooting"
  int restarts_converged = 0;
};

/// Endpoint of the unit-time geodesic from rho0 with control xi0, computed
/// by joint RK4 on (xi, V).
Matrix shooting_endpoint(const DensityOperator& rho0, const Matrix& xi0, int steps, const Context& ctx = {});

/// Riemannian distance between isospectral density operators. Pure and
/// distinguishable pairs use closed forms; full-rank pairs use multi-start
/// Nelder-Mead shooting over the complement of u(sigma).
DistanceResult distance(const DensityOperator& rho0, const DensityOperator& rho1, const ShootingConfig& cfg = {},
                        const Context& ctx = {});

}  // namespace qorbit
