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

#include <functional>
#include <optional>
#include <string>

#include "oracles.hpp"
#include "types.hpp"

namespace testing {

struct Caught {
  qorbit::ErrorCode code;
  std::string message;
};

// The qorbit::Error thrown by `f`, if any.
inline std::optional<Caught> caught(const std::function<void()>& f) {
  try {
    f();
  } catch (const qorbit::Error& e) {
    return Caught{e.code(), e.what()};
  }
  return std::nullopt;
}

inline bool throws_code(const std::function<void()>& f, qorbit::ErrorCode code) {
  const auto c = caught(f);
  return c && c->code == code;
}

inline qorbit::Matrix qubit_xi(double eps = 0.5, double theta = 0.0) {
  qorbit::Matrix m(2, 2);
  m << 0.0, eps * std::polar(1.0, theta), -eps * std::polar(1.0, -theta), 0.0;
  return m;
}

inline qorbit::Matrix random_density(oracle::Rng& rng, Eigen::Index n, const std::vector<double>& p) {
  const qorbit::Matrix u = rng.unitary(n);
  qorbit::Matrix d = qorbit::Matrix::Zero(n, n);
  for (std::size_t i = 0; i < p.size(); ++i) d(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)) = p[i];
  return u * d * u.adjoint();
}

inline qorbit::Matrix horizontal_part(const qorbit::Matrix& xi, const std::vector<double>& p) {
  return xi - oracle::same_weight_part(xi, p);
}

}  // namespace testing
