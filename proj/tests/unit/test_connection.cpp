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

#include <doctest.h>

#include "connection.hpp"
#include "helpers.hpp"
#include "state_space.hpp"

using qorbit::DensityOperator;
using qorbit::GaugeElement;
using qorbit::Matrix;
using qorbit::Observable;
using qorbit::Purification;
using qorbit::Spectrum;
using oracle::I;

TEST_CASE("connection form splits a tangent into vertical and horizontal parts") {
  oracle::Rng rng(21);
  for (const std::vector<double>& p : {std::vector<double>{0.5, 0.3, 0.2}, std::vector<double>{0.4, 0.4, 0.2}}) {
    const Matrix rho = testing::random_density(rng, 3, p);
    const Purification psi = qorbit::standard_purification(DensityOperator(rho));
    const Spectrum& s = psi.spectrum();
    // A tangent to the fiber bundle: psi eta + (a psi) with eta in u(3), a anti-Hermitian.
    const Matrix x = psi.matrix() * rng.anti_hermitian(3) + rng.anti_hermitian(3) * psi.matrix();
    const auto ev = qorbit::connection_form(psi, x);
    CHECK((ev.vertical + ev.horizontal - x).norm() < 1e-12);
    CHECK((ev.vertical - psi.matrix() * ev.xi.matrix().adjoint()).norm() < 1e-12);
    CHECK((oracle::same_weight_part(ev.xi.matrix(), s.values()) - ev.xi.matrix()).norm() < 1e-12);
    for (const auto& g : qorbit::gauge_algebra_basis(s))
      CHECK(std::abs((ev.horizontal.adjoint() * psi.matrix() * g.matrix()).trace().real()) < 1e-12);
  }
}

TEST_CASE("locked inertia is the Gram matrix of fiber directions") {
  oracle::Rng rng(22);
  const Matrix rho = testing::random_density(rng, 3, {0.5, 0.3, 0.2});
  const Purification psi = qorbit::standard_purification(DensityOperator(rho));
  const auto basis = qorbit::gauge_algebra_basis(psi.spectrum());
  const auto inertia = qorbit::locked_inertia(psi, basis);
  for (std::size_t a = 0; a < basis.size(); ++a)
    for (std::size_t b = 0; b < basis.size(); ++b) {
      const Matrix va = psi.matrix() * basis[a].matrix(), vb = psi.matrix() * basis[b].matrix();
      CHECK(std::abs(inertia(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) -
                     (va.adjoint() * vb).trace().real()) < 1e-13);
    }
}

TEST_CASE("observable field is the derivative of the Schroedinger orbit") {
  oracle::Rng rng(23);
  const Matrix rho = testing::random_density(rng, 3, {0.5, 0.3, 0.2});
  const Purification psi = qorbit::standard_purification(DensityOperator(rho));
  const Matrix a = rng.hermitian(3);
  const double h = 1e-5;
  const Matrix fd = (oracle::expm(-I * a * h) * psi.matrix() - oracle::expm(I * a * h) * psi.matrix()) / (2 * h);
  CHECK((qorbit::observable_field(Observable(a), psi) - fd).norm() < 1e-8);
}

TEST_CASE("uncertainty matches the variance formula") {
  oracle::Rng rng(24);
  for (int i = 0; i < 10; ++i) {
    const Matrix rho = testing::random_density(rng, 3, rng.weights(3));
    const Matrix a = rng.hermitian(3);
    CHECK(std::abs(qorbit::uncertainty(DensityOperator(rho), Observable(a)) -
                   std::sqrt(oracle::variance(rho, a))) < 1e-12);
  }
  CHECK(qorbit::uncertainty(DensityOperator(oracle::diag({0.6, 0.4})), Observable(3.0 * Matrix::Identity(2, 2))) ==
        doctest::Approx(0.0));
}

TEST_CASE("commutator preimage inverts the bracket with rho") {
  oracle::Rng rng(25);
  const Matrix rho = testing::random_density(rng, 3, {0.5, 0.3, 0.2});
  const Matrix omega = rng.anti_hermitian(3);
  const Matrix rho_dot = omega * rho - rho * omega;
  const auto eig = qorbit::eigh_descending(rho);
  double off = -1.0;
  const Matrix b = qorbit::commutator_preimage(eig, Spectrum::from_values({0.5, 0.3, 0.2}), rho_dot, &off);
  CHECK((b * rho - rho * b - rho_dot).norm() < 1e-12);
  CHECK(off < 1e-12);
}

TEST_CASE("horizontal lift vector and submersion metric agree with the least-norm lift") {
  oracle::Rng rng(26);
  for (int i = 0; i < 10; ++i) {
    const Eigen::Index n = 2 + i % 3;
    const Matrix rho = testing::random_density(rng, n, rng.weights(n));
    const DensityOperator dr(rho);
    const Purification psi = qorbit::standard_purification(dr);
    const Matrix omega = rng.anti_hermitian(n);
    const Matrix rho_dot = omega * rho - rho * omega;
    const Matrix x = qorbit::horizontal_lift_vector(psi, rho_dot);
    CHECK((x * psi.matrix().adjoint() + psi.matrix() * x.adjoint() - rho_dot).norm() < 1e-11);
    CHECK(std::abs(x.squaredNorm() - oracle::base_speed2(rho, rho_dot)) < 1e-10);
    CHECK(std::abs(qorbit::submersion_metric(dr, rho_dot, rho_dot) - oracle::base_speed2(rho, rho_dot)) < 1e-10);
  }
}

TEST_CASE("submersion metric is symmetric and bilinear") {
  oracle::Rng rng(27);
  const Matrix rho = testing::random_density(rng, 3, {0.5, 0.3, 0.2});
  const DensityOperator dr(rho);
  const Matrix a = rng.anti_hermitian(3), b = rng.anti_hermitian(3);
  const Matrix ra = a * rho - rho * a, rb = b * rho - rho * b;
  const double gab = qorbit::submersion_metric(dr, ra, rb);
  CHECK(std::abs(gab - qorbit::submersion_metric(dr, rb, ra)) < 1e-12);
  const double polar = 0.25 * (qorbit::submersion_metric(dr, ra + rb, ra + rb) -
                               qorbit::submersion_metric(dr, ra - rb, ra - rb));
  CHECK(std::abs(gab - polar) < 1e-12);
}

TEST_CASE("parallel observables are detected") {
  oracle::Rng rng(28);
  const std::vector<double> p{0.5, 0.3, 0.2};
  const Matrix rho = testing::random_density(rng, 3, p);
  const DensityOperator dr(rho);
  const Purification psi = qorbit::standard_purification(dr);
  const Matrix q = psi.matrix() * oracle::diag(psi.spectrum().values()).cwiseSqrt().inverse();
  const Matrix xi = testing::horizontal_part(rng.anti_hermitian(3), p);
  const Matrix a = I * q * xi * q.adjoint();
  CHECK(qorbit::is_parallel_at(Observable(a), dr, 1e-9));
  CHECK_FALSE(qorbit::is_parallel_at(Observable(rng.hermitian(3)), dr, 1e-9));
}
