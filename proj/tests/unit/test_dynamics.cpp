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

#include <numbers>

#include "dynamics.hpp"
#include "helpers.hpp"
#include "state_space.hpp"

using qorbit::DensityOperator;
using qorbit::ErrorCode;
using qorbit::FrameKind;
using qorbit::Matrix;
using qorbit::Purification;
using qorbit::Trajectory;
using oracle::I;
using testing::throws_code;

TEST_CASE("uniform grid and trajectory validation") {
  const auto g = qorbit::uniform_grid(2.0, 4);
  REQUIRE(g.size() == 5);
  CHECK(g.front() == 0.0);
  CHECK(g.back() == 2.0);
  Trajectory t{FrameKind::density, {0.0, 0.5, 1.5}, {Matrix::Identity(2, 2) / 2.0, Matrix::Identity(2, 2) / 2.0,
                                                    Matrix::Identity(2, 2) / 2.0}};
  CHECK(throws_code([&] { qorbit::validate_trajectory(t, 1e-8); }, ErrorCode::validation));
  t.times.pop_back();
  CHECK(throws_code([&] { qorbit::validate_trajectory(t, 1e-8); }, ErrorCode::validation));
}

TEST_CASE("von Neumann evolution matches the exponential for constant H") {
  oracle::Rng rng(31);
  const Matrix rho0 = testing::random_density(rng, 3, {0.5, 0.3, 0.2});
  const Matrix h = rng.hermitian(3);
  const auto traj = qorbit::evolve_von_neumann(qorbit::constant_function(h), DensityOperator(rho0), 1.3, 1000);
  REQUIRE(traj.size() == 1001);
  for (std::size_t i : {std::size_t{0}, std::size_t{500}, std::size_t{1000}}) {
    const Matrix u = oracle::expm(-I * h * traj.times[i]);
    CHECK((traj.frames[i] - u * rho0 * u.adjoint()).norm() < 1e-10);
  }
}

TEST_CASE("von Neumann evolution with a switched Hamiltonian composes exponentials") {
  oracle::Rng rng(32);
  const Matrix rho0 = testing::random_density(rng, 3, {0.6, 0.3, 0.1});
  const Matrix h1 = rng.hermitian(3), h2 = rng.hermitian(3);
  const auto h = [&](double t) -> Matrix { return t < 0.5 ? h1 : h2; };
  const auto traj = qorbit::evolve_von_neumann(h, DensityOperator(rho0), 1.0, 1024);
  const Matrix u = oracle::expm(-I * h2 * 0.5) * oracle::expm(-I * h1 * 0.5);
  CHECK((traj.frames.back() - u * rho0 * u.adjoint()).norm() < 1e-10);
}

TEST_CASE("zero Hamiltonian leaves the state fixed") {
  const Matrix rho0 = oracle::diag({0.75, 0.25});
  const auto traj = qorbit::evolve_von_neumann(qorbit::constant_function(Matrix::Zero(2, 2)), DensityOperator(rho0),
                                               1.0, 50);
  for (const Matrix& f : traj.frames) CHECK((f - rho0).norm() == 0.0);
}

TEST_CASE("hbar rescales time") {
  qorbit::Context ctx;
  ctx.hbar = 2.0;
  const Matrix rho0 = oracle::diag({0.75, 0.25});
  const Matrix h = I * testing::qubit_xi();
  const auto slow = qorbit::evolve_von_neumann(qorbit::constant_function(h), DensityOperator(rho0), 2.0, 400, ctx);
  const auto fast = qorbit::evolve_von_neumann(qorbit::constant_function(h), DensityOperator(rho0), 1.0, 400);
  CHECK((slow.frames.back() - fast.frames.back()).norm() < 1e-12);
}

TEST_CASE("Schroedinger evolution of the qubit fixture") {
  const Matrix h = I * testing::qubit_xi();
  const Purification psi0 = qorbit::standard_purification(DensityOperator(oracle::diag({0.75, 0.25})));
  const auto traj = qorbit::evolve_schrodinger(qorbit::constant_function(h), psi0, 1.0, 1000);
  CHECK((traj.frames.back() - oracle::expm(testing::qubit_xi()) * psi0.matrix()).norm() < 1e-12);
  CHECK(traj.kind == FrameKind::purification);
}

TEST_CASE("negative time-ordered exponential composes later factors on the right") {
  oracle::Rng rng(33);
  const Matrix x1 = rng.anti_hermitian(3), x2 = rng.anti_hermitian(3);
  const auto xi = [&](double t) -> Matrix { return t < 0.5 ? x1 : x2; };
  const Matrix v = qorbit::neg_time_ordered_exp(xi, 1.0, 1024);
  const Matrix expected = oracle::expm(0.5 * x1) * oracle::expm(0.5 * x2);
  const Matrix reversed = oracle::expm(0.5 * x2) * oracle::expm(0.5 * x1);
  CHECK((v - expected).norm() < 1e-10);
  CHECK((v - reversed).norm() > 1e-3);
  const auto samples = qorbit::ordered_exponential_samples(xi, 1.0, 1024);
  REQUIRE(samples.size() == 1025);
  CHECK((samples[512] - oracle::expm(0.5 * x1)).norm() < 1e-10);
  CHECK((samples.back() * samples.back().adjoint() - Matrix::Identity(3, 3)).norm() < 1e-13);
}

TEST_CASE("curve length") {
  SUBCASE("qubit fixture") {
    const auto traj = qorbit::evolve_von_neumann(qorbit::constant_function(I * testing::qubit_xi()),
                                                 DensityOperator(oracle::diag({0.75, 0.25})), 1.0, 1000);
    CHECK(std::abs(qorbit::curve_length(traj) - 0.5) < 1e-4);
  }
  SUBCASE("pure great circle") {
    Matrix p0 = Matrix::Zero(2, 1), p1 = Matrix::Zero(2, 1);
    p0(0, 0) = 1.0;
    p1(1, 0) = 1.0;
    Trajectory t{FrameKind::purification, qorbit::uniform_grid(std::numbers::pi / 2, 500), {}};
    for (double s : t.times) t.frames.push_back(std::cos(s) * p0 + std::sin(s) * p1);
    CHECK(std::abs(qorbit::curve_length(t) - std::numbers::pi / 2) < 1e-4);
  }
  SUBCASE("constant curve") {
    Trajectory t{FrameKind::density, qorbit::uniform_grid(1.0, 4), {}};
    for (int i = 0; i < 5; ++i) t.frames.push_back(oracle::diag({0.6, 0.4}));
    CHECK(qorbit::curve_length(t) == 0.0);
  }
  SUBCASE("rank-deficient density frames are unsupported") {
    Trajectory t{FrameKind::density, qorbit::uniform_grid(1.0, 4), {}};
    for (int i = 0; i < 5; ++i) t.frames.push_back(oracle::diag({1.0, 0.0}));
    CHECK(throws_code([&] { qorbit::curve_length(t); }, ErrorCode::unsupported));
  }
}

TEST_CASE("energy dispersion of a multiple of the identity vanishes") {
  const auto h = qorbit::constant_function(2.5 * Matrix::Identity(2, 2));
  const auto traj = qorbit::evolve_von_neumann(h, DensityOperator(oracle::diag({0.75, 0.25})), 1.0, 20);
  CHECK(qorbit::energy_dispersion(h, traj) == doctest::Approx(0.0));
  CHECK(qorbit::curve_length(traj) == doctest::Approx(0.0));
}

TEST_CASE("Hermite curve reproduces cubics exactly") {
  oracle::Rng rng(34);
  const Matrix a = rng.ginibre(2, 2), b = rng.ginibre(2, 2), c = rng.ginibre(2, 2), d = rng.ginibre(2, 2);
  const auto f = [&](double t) -> Matrix { return a + t * b + t * t * c + t * t * t * d; };
  const auto df = [&](double t) -> Matrix { return b + 2 * t * c + 3 * t * t * d; };
  std::vector<double> times = qorbit::uniform_grid(1.0, 3);
  std::vector<Matrix> values, slopes;
  for (double t : times) {
    values.push_back(f(t));
    slopes.push_back(df(t));
  }
  const qorbit::HermiteCurve curve(times, values, slopes);
  for (double t : {0.0, 0.1, 0.37, 0.5, 0.99, 1.0}) {
    CHECK((curve.value(t) - f(t)).norm() < 1e-12);
    CHECK((curve.derivative(t) - df(t)).norm() < 1e-11);
  }
}

TEST_CASE("polar unitary") {
  oracle::Rng rng(35);
  const Matrix u = rng.unitary(3);
  const Matrix noisy = u + 1e-6 * rng.ginibre(3, 3);
  const Matrix p = qorbit::polar_unitary(noisy);
  CHECK((p * p.adjoint() - Matrix::Identity(3, 3)).norm() < 1e-13);
  CHECK((p - u).norm() < 1e-5);
}

TEST_CASE("horizontal lift") {
  const Purification psi0 = qorbit::standard_purification(DensityOperator(oracle::diag({0.75, 0.25})));
  SUBCASE("constant trajectory gives a constant lift") {
    Trajectory t{FrameKind::density, qorbit::uniform_grid(1.0, 10), {}};
    for (int i = 0; i < 11; ++i) t.frames.push_back(oracle::diag({0.75, 0.25}));
    const auto lift = qorbit::horizontal_lift(t, psi0, 4);
    for (const Matrix& f : lift.frames) CHECK((f - psi0.matrix()).norm() < 1e-15);
  }
  SUBCASE("fiber mismatch at the start") {
    Trajectory t{FrameKind::density, qorbit::uniform_grid(1.0, 2), {}};
    for (int i = 0; i < 3; ++i) t.frames.push_back(oracle::diag({0.6, 0.4}));
    CHECK(testing::caught([&] { qorbit::horizontal_lift(t, psi0, 4); }).has_value());
  }
  SUBCASE("rank deficiency") {
    Trajectory t{FrameKind::density, qorbit::uniform_grid(1.0, 2), {}};
    for (int i = 0; i < 3; ++i) t.frames.push_back(oracle::diag({1.0, 0.0}));
    const Purification pure = qorbit::standard_purification(DensityOperator(oracle::diag({1.0, 0.0})));
    CHECK(throws_code([&] { qorbit::horizontal_lift(t, pure, 4); }, ErrorCode::unsupported));
  }
}

TEST_CASE("distinguishability and the speed limit report") {
  const DensityOperator a(oracle::diag({1.0, 0.0, 0.0}));
  const DensityOperator b(oracle::diag({0.0, 0.5, 0.5}));
  CHECK(qorbit::is_distinguishable(a, b));
  CHECK_FALSE(qorbit::is_distinguishable(a, DensityOperator(oracle::diag({0.5, 0.5, 0.0}))));

  const auto rep = qorbit::mt_bound_report(qorbit::constant_function(Matrix::Zero(2, 2)),
                                           DensityOperator(oracle::diag({1.0, 0.0})), 1.0, 10);
  CHECK_FALSE(rep.distinguishable);
  CHECK(rep.satisfied);
}
