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

#include "types.hpp"

namespace qorbit {

/// Eigenvalues in nonincreasing order with eigenvectors as columns. Each
/// eigenvector is rephased so that its largest-magnitude entry (first one on
/// ties) is real and positive; this makes diagonal inputs map to unit vectors.
struct Eigensystem {
  RealVector values;
  Matrix vectors;
};

Eigensystem eigh_descending(const Matrix& hermitian);

Spectrum spectrum_of(const DensityOperator& rho, double rank_tol = 1e-9);

/// psi = E sqrt(P(sigma)), E the orthonormal eigenvectors ordered by sigma.
Purification standard_purification(const DensityOperator& rho, const Context& ctx = {});

/// Real part of the Hilbert-Schmidt product, G(X, Y) = Re Tr(X^dagger Y).
double hs_metric(const Matrix& x, const Matrix& y);

/// xi . eta = 1/2 Tr((xi^dagger eta + eta^dagger xi) P(sigma)).
double gauge_metric(const Matrix& xi, const Matrix& eta, const Spectrum& sigma);
double gauge_metric(const GaugeElement& xi, const GaugeElement& eta, const Spectrum& sigma);
double gauge_norm(const Matrix& xi, const Spectrum& sigma);

/// Basis of u(sigma), block by block: for a group of size m, the m diagonal
/// imaginary units followed by the m(m-1) off-diagonal generators.
std::vector<GaugeElement> gauge_algebra_basis(const Spectrum& sigma);

/// beta-orthonormal basis of the complement of u(sigma) in u(k). Pairs of
/// indices from different groups contribute (E_ij - E_ji) and i(E_ij + E_ji),
/// each scaled by 1/sqrt(p_i + p_j).
std::vector<Matrix> complement_basis(const Spectrum& sigma);

/// Full basis of u(k): the k diagonal imaginary units then, for each i < j,
/// E_ij - E_ji and i(E_ij + E_ji).
std::vector<Matrix> unitary_algebra_basis(Eigen::Index k);

struct GaugeSplit {
  GaugeElement parallel;       // in u(sigma)
  GaugeElement perpendicular;  // beta-orthogonal to u(sigma)
};

// u(sigma) is the block-diagonal part for the multiplicity blocks; the
// off-block entries are beta-orthogonal to it because beta weights entries
// independently.
Matrix block_diagonal_part(const Matrix& xi, const Spectrum& sigma);

GaugeSplit split_gauge(const GaugeElement& xi, const Spectrum& sigma);

}  // namespace qorbit
