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

#include <vector>

#include "state_space.hpp"
#include "types.hpp"

namespace qorbit {

/// Value of the mechanical connection at a tangent vector X, together with
/// the vertical/horizontal split X = psi xi^dagger + horizontal.
struct ConnectionEvaluation {
  GaugeElement xi;
  Matrix vertical;
  Matrix horizontal;
};

/// Coordinates J_psi(X) . xi_i = G(X, psi xi_i^dagger).
RealVector moment_map(const Purification& psi, const Matrix& x, const std::vector<GaugeElement>& basis);

/// Gram matrix I_ij = G(psi xi_i^dagger, psi xi_j^dagger).
RealMatrix locked_inertia(const Purification& psi, const std::vector<GaugeElement>& basis);

/// Solves I_psi xi = J_psi(X) in the gauge_algebra_basis coordinates.
/// Throws ErrorCode::numerical if the inertia condition number exceeds
/// ctx.conditioning_limit.
ConnectionEvaluation connection_form(const Purification& psi, const Matrix& x, const Context& ctx = {});

/// X_A(psi) = A psi / (i hbar).
Matrix observable_field(const Observable& a, const Purification& psi, const Context& ctx = {});

struct ObservableGauge {
  GaugeElement xi;       // connection applied to X_A at the standard purification
  GaugeElement xi_perp;  // xi minus its beta-projection onto i 1_k
};

ObservableGauge xi_A(const DensityOperator& rho, const Observable& a, const Context& ctx = {});

/// sqrt(Tr(A^2 rho) - Tr(A rho)^2); variances in (-1e-9, 0) clamp to zero.
double uncertainty(const DensityOperator& rho, const Observable& a);

bool is_parallel_at(const Observable& a, const DensityOperator& rho, double tol, const Context& ctx = {});

/// Anti-Hermitian B with [B, rho] = rho_dot, built in the eigenbasis of rho:
/// B_ij = rho_dot_ij / (p_j - p_i) across different eigenvalue groups, zero
/// inside a group. `off_tangent`, when given, receives the Frobenius norm of
/// the same-group blocks of rho_dot that were dropped (zero for a true
/// tangent of the orbit).
Matrix commutator_preimage(const Eigensystem& rho_eigen, const Spectrum& groups, const Matrix& rho_dot,
                           double* off_tangent = nullptr);

/// Horizontal lift of a tangent rho_dot to the fiber point psi (full rank).
Matrix horizontal_lift_vector(const Purification& psi, const Matrix& rho_dot, const Context& ctx = {},
                              double* off_tangent = nullptr);

/// The metric g on the orbit through a full-rank rho. Both tangents are
/// lifted to the standard purification and compared with G after horizontal
/// projection. Rank-deficient rho is rejected with ErrorCode::unsupported.
double submersion_metric(const DensityOperator& rho, const Matrix& rho_dot1, const Matrix& rho_dot2,
                         const Context& ctx = {});

}  // namespace qorbit
