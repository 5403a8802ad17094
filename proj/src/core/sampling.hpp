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
#include <random>

#include "dynamics.hpp"
#include "types.hpp"

namespace qorbit {

/// Seeded generator of random test objects.
class Sampler {
 public:
  explicit Sampler(std::uint64_t seed);

  double normal() { return normal_(rng_); }
  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }

  // Entries i.i.d. complex normal with unit variance.
  Matrix ginibre(Eigen::Index rows, Eigen::Index cols);
  Matrix hermitian(Eigen::Index n, double scale = 1.0);
  Matrix anti_hermitian(Eigen::Index n, double scale = 1.0);
  // Haar unitary (QR of a Ginibre matrix with the phase correction).
  Matrix unitary(Eigen::Index n);
  // Density operator of the given rank; `floor` mixes in floor * identity /
  // rank on the support to keep the smallest eigenvalue away from zero.
  Matrix density(Eigen::Index n, Eigen::Index rank, double floor = 0.1);
  // Element of the beta-complement of u(sigma) with beta-norm `norm`.
  Matrix horizontal_control(const Spectrum& sigma, double norm);

 private:
  std::mt19937_64 rng_;
  std::normal_distribution<double> normal_;
};

/// Random drive in C^4 whose endpoints are distinguishable: U(t) =
/// Q(t) exp(t c B) R(t) with Q, R block-diagonal one-parameter groups,
/// B swapping the two 2-dimensional blocks and c = pi / (2 tau).
struct DistinguishableDrive {
  MatrixFunction hamiltonian;
  Matrix rho0;
  double tau = 1.0;
};

DistinguishableDrive random_distinguishable_drive(Sampler& s, double tau, double hbar);

}  // namespace qorbit
