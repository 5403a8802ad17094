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

#include <Eigen/Dense>

namespace qorbit {

struct NelderMeadOptions {
  double initial_step = 0.1;  // edge length of the starting simplex
  int max_iters = 4000;       // total across polishing restarts
  double f_target = 0.0;      // stop once the best value is at or below this
  double x_tol = 1e-13;       // simplex diameter below which a run is declared stalled
  int polish_restarts = 6;    // fresh simplices around the incumbent after a stall
};

struct NelderMeadResult {
  Eigen::VectorXd x;
  double f = 0.0;
  int iters = 0;
  bool reached_target = false;
};

/// Nelder-Mead simplex descent (reflection 1, expansion 2, contraction 1/2,
/// shrink 1/2). A stalled simplex is rebuilt around the incumbent with a
/// smaller edge, up to `polish_restarts` times.
NelderMeadResult nelder_mead(const std::function<double(const Eigen::VectorXd&)>& f, const Eigen::VectorXd& x0,
                             const NelderMeadOptions& opts = {});

}  // namespace qorbit
