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

#include "nelder_mead.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

namespace qorbit {

NelderMeadResult nelder_mead(const std::function<double(const Eigen::VectorXd&)>& f, const Eigen::VectorXd& x0,
                             const NelderMeadOptions& opts) {
  const Eigen::Index n = x0.size();
  NelderMeadResult best{x0, f(x0), 0, false};
  if (n == 0 || best.f <= opts.f_target) {
    best.reached_target = best.f <= opts.f_target;
    return best;
  }

  double step = opts.initial_step;
  for (int round = 0; round <= opts.polish_restarts && best.iters < opts.max_iters; ++round) {
    std::vector<Eigen::VectorXd> x(static_cast<std::size_t>(n) + 1, best.x);
    std::vector<double> fx(x.size());
    fx[0] = best.f;
    for (Eigen::Index i = 0; i < n; ++i) {
      x[static_cast<std::size_t>(i) + 1](i) += step;
      fx[static_cast<std::size_t>(i) + 1] = f(x[static_cast<std::size_t>(i) + 1]);
    }
    std::vector<std::size_t> order(x.size());

    for (; best.iters < opts.max_iters; ++best.iters) {
      std::iota(order.begin(), order.end(), 0);
      std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return fx[a] < fx[b]; });
      const std::size_t lo = order.front(), hi = order.back(), second = order[order.size() - 2];
      if (fx[lo] < best.f) {
        best.f = fx[lo];
        best.x = x[lo];
      }
      if (best.f <= opts.f_target) break;

      double diameter = 0.0;
      for (std::size_t j = 0; j < x.size(); ++j) diameter = std::max(diameter, (x[j] - x[lo]).norm());
      if (diameter < opts.x_tol) break;

      Eigen::VectorXd centroid = Eigen::VectorXd::Zero(n);
      for (std::size_t j = 0; j < x.size(); ++j)
        if (j != hi) centroid += x[j];
      centroid /= static_cast<double>(n);

      const Eigen::VectorXd xr = centroid + (centroid - x[hi]);
      const double fr = f(xr);
      if (fr < fx[lo]) {
        const Eigen::VectorXd xe = centroid + 2.0 * (centroid - x[hi]);
        const double fe = f(xe);
        if (fe < fr) {
          x[hi] = xe;
          fx[hi] = fe;
        } else {
          x[hi] = xr;
          fx[hi] = fr;
        }
        continue;
      }
      if (fr < fx[second]) {
        x[hi] = xr;
        fx[hi] = fr;
        continue;
      }
      const bool outside = fr < fx[hi];
      const Eigen::VectorXd xc = outside ? Eigen::VectorXd(centroid + 0.5 * (xr - centroid))
                                         : Eigen::VectorXd(centroid + 0.5 * (x[hi] - centroid));
      const double fc = f(xc);
      if (fc < (outside ? fr : fx[hi])) {
        x[hi] = xc;
        fx[hi] = fc;
        continue;
      }
      for (std::size_t j = 0; j < x.size(); ++j) {
        if (j == lo) continue;
        x[j] = x[lo] + 0.5 * (x[j] - x[lo]);
        fx[j] = f(x[j]);
      }
    }
    for (std::size_t j = 0; j < x.size(); ++j) {
      if (fx[j] < best.f) {
        best.f = fx[j];
        best.x = x[j];
      }
    }
    if (best.f <= opts.f_target) break;
    step = std::max(opts.x_tol * 10.0, std::min(step, std::sqrt(best.f)) * 0.5);
  }
  best.reached_target = best.f <= opts.f_target;
  return best;
}

}  // namespace qorbit
