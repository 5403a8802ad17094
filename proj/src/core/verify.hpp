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
#include <optional>

#include "report.hpp"
#include "types.hpp"

namespace qorbit {

/// Variance decomposition, uncertainty bound and its equality case on
/// `samples` random full-rank (rho, A) pairs plus as many parallel
/// observables, dimensions cycling through 2, 3, 4.
RunReport verify_decomposition(int samples, std::uint64_t seed, const Context& ctx = {});

struct DriveInput {
  std::optional<Matrix> hamiltonian;  // constant Hamiltonian
  std::optional<Matrix> rho0;
  double tau = 1.0;
  int steps = 400;
};

/// Energy dispersion against curve length. With a given drive the single
/// inequality is checked; `samples` random time-dependent drives and
/// geodesic equality witnesses are checked in addition when samples > 0.
RunReport verify_dispersion(const DriveInput& drive, int samples, std::uint64_t seed, const Context& ctx = {});

/// Mandelstam-Tamm bound on the given drive (default: hbar sigma_y on
/// diag(1, 0) over pi/2, where the bound is saturated) and on `samples`
/// random C^4 drives with distinguishable endpoints.
RunReport verify_mt(const DriveInput& drive, bool expect_saturation, int samples, std::uint64_t seed,
                    const Context& ctx = {});

}  // namespace qorbit
