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

#include "sampling.hpp"

#include <cmath>
#include <numbers>

#include "control.hpp"
#include "state_space.hpp"

namespace qorbit {

Sampler::Sampler(std::uint64_t seed) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)};
  rng_.seed(seq);
}

Matrix Sampler::ginibre(Eigen::Index rows, Eigen::Index cols) {
  Matrix m(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r)
    for (Eigen::Index c = 0; c < cols; ++c) m(r, c) = Complex(normal(), normal()) / std::sqrt(2.0);
  return m;
}

Matrix Sampler::hermitian(Eigen::Index n, double scale) {
  const Matrix g = ginibre(n, n);
  return 0.5 * scale * (g + g.adjoint());
}

Matrix Sampler::anti_hermitian(Eigen::Index n, double scale) {
  const Matrix g = ginibre(n, n);
  return 0.5 * scale * (g - g.adjoint());
}

Matrix Sampler::unitary(Eigen::Index n) {
  Eigen::HouseholderQR<Matrix> qr(ginibre(n, n));
  Matrix q = qr.householderQ();
  const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Eigen::Index j = 0; j < n; ++j) {
    const Complex d = r(j, j);
    if (std::abs(d) > 0.0) q.col(j) *= d / std::abs(d);
  }
  return q;
}

Matrix Sampler::density(Eigen::Index n, Eigen::Index rank, double floor) {
  const Matrix g = ginibre(n, rank);
  const Matrix u = unitary(n);
  Matrix w = g.adjoint() * g;
  w /= w.trace().real();
  w = (1.0 - floor) * w + (floor / static_cast<double>(rank)) * Matrix::Identity(rank, rank);
  const Matrix support = u.leftCols(rank);
  const Matrix rho = support * w * support.adjoint();
  return 0.5 * (rho + rho.adjoint()) / rho.trace().real();
}

Matrix Sampler::horizontal_control(const Spectrum& sigma, double norm) {
  const std::vector<Matrix> basis = complement_basis(sigma);
  const Eigen::Index k = static_cast<Eigen::Index>(sigma.size());
  if (basis.empty()) return Matrix::Zero(k, k);
  RealVector x(static_cast<Eigen::Index>(basis.size()));
  for (Eigen::Index i = 0; i < x.size(); ++i) x(i) = normal();
  x *= norm / x.norm();
  Matrix xi = Matrix::Zero(k, k);
  for (Eigen::Index i = 0; i < x.size(); ++i) xi += x(i) * basis[static_cast<std::size_t>(i)];
  return xi;
}

DistinguishableDrive random_distinguishable_drive(Sampler& s, double tau, double hbar) {
  auto block_diagonal = [&](double scale) {
    Matrix m = Matrix::Zero(4, 4);
    m.topLeftCorner(2, 2) = s.anti_hermitian(2, scale);
    m.bottomRightCorner(2, 2) = s.anti_hermitian(2, scale);
    return m;
  };
  const Matrix q0 = block_diagonal(s.uniform(0.0, 1.5));
  const Matrix r0 = block_diagonal(s.uniform(0.0, 1.5));
  Matrix b = Matrix::Zero(4, 4);
  const Matrix w = s.unitary(2);
  b.bottomLeftCorner(2, 2) = w;
  b.topRightCorner(2, 2) = -w.adjoint();
  const double c = std::numbers::pi / (2.0 * tau);
  const Matrix frame = s.unitary(4);

  Matrix rho_block = s.density(2, s.integer(1, 2), 0.1);
  Matrix rho0 = Matrix::Zero(4, 4);
  rho0.topLeftCorner(2, 2) = rho_block;

  DistinguishableDrive d;
  d.tau = tau;
  d.rho0 = frame * rho0 * frame.adjoint();
  d.hamiltonian = [=](double t) {
    const Matrix q = expm_anti_hermitian(q0, t);
    const Matrix e = expm_anti_hermitian(c * b, t);
    const Matrix qe = q * e;
    const Matrix gen = q0 + c * q * b * q.adjoint() + qe * r0 * qe.adjoint();
    const Matrix h = Complex(0.0, hbar) * frame * gen * frame.adjoint();
    return Matrix(0.5 * (h + h.adjoint()));
  };
  return d;
}

}  // namespace qorbit
