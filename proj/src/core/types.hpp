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

#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace qorbit {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;

enum class ErrorCode {
  invalid_argument,
  validation,
  domain,
  numerical,
  unsupported,
  integration_drift,
  not_horizontal,
  io,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

/// Numerical configuration shared by every operation.
///
/// Tolerances are absolute except where noted; matrix checks scale them by
/// max(1, ||M||_F) so that large observables are not rejected for rounding.
struct Context {
  double hbar = 1.0;
  double rank_tol = 1e-9;        // eigenvalues at or below are treated as zero
  double hermitian_tol = 1e-12;  // Hermiticity / anti-Hermiticity, trace, positivity
  double fiber_tol = 1e-10;      // ||psi^dagger psi - P(sigma)||_F
  double trajectory_tol = 1e-8;  // per-frame checks on integrated curves
  double conditioning_limit = 1e12;
};

// Frobenius norm of M - M^dagger relative to max(1, ||M||_F).
double hermitian_defect(const Matrix& m);
double anti_hermitian_defect(const Matrix& m);

/// Spectrum of a density operator: the positive eigenvalues, nonincreasing,
/// grouped into blocks of (numerically) equal values.
///
/// Values inside one group are stored exactly equal (the group mean), so
/// block-diagonal matrices commute with P(sigma) without rounding residue.
class Spectrum {
 public:
  /// Groups `values` (any order) by transitive closeness within `group_tol`.
  /// Throws validation errors for nonpositive entries or a sum away from 1.
  static Spectrum from_values(std::vector<double> values, double group_tol = 1e-9,
                              double sum_tol = 1e-12);

  std::size_t size() const noexcept { return values_.size(); }
  const std::vector<double>& values() const noexcept { return values_; }
  const std::vector<int>& multiplicities() const noexcept { return multiplicities_; }
  std::size_t distinct_count() const noexcept { return multiplicities_.size(); }

  // Index of the multiplicity group containing eigenvalue j.
  int group_of(std::size_t j) const { return group_index_.at(j); }
  bool same_group(std::size_t i, std::size_t j) const { return group_of(i) == group_of(j); }
  // First index of group g.
  std::size_t group_start(std::size_t g) const { return group_start_.at(g); }

  RealVector diagonal() const;
  Matrix projector_weights() const;  // P(sigma) as a complex diagonal matrix

 private:
  std::vector<double> values_;
  std::vector<int> multiplicities_;
  std::vector<int> group_index_;
  std::vector<std::size_t> group_start_;
};

/// n x n Hermitian, positive semidefinite, unit trace.
class DensityOperator {
 public:
  DensityOperator(Matrix m, const Context& ctx = {});
  // Checks with an explicit tolerance (used for integrated frames).
  DensityOperator(Matrix m, double tol);

  const Matrix& matrix() const noexcept { return m_; }
  Eigen::Index dim() const noexcept { return m_.rows(); }

 private:
  void validate(double tol) const;
  Matrix m_;
};

/// n x k matrix psi with psi^dagger psi = P(sigma).
class Purification {
 public:
  Purification(Matrix m, Spectrum sigma, const Context& ctx = {});
  // Reads sigma off the diagonal of psi^dagger psi.
  explicit Purification(Matrix m, const Context& ctx = {});

  // Skips the fiber check; for intermediate integrator stages that sit
  // O(h^2) off S(sigma) by construction.
  static Purification unchecked(Matrix m, Spectrum sigma);

  const Matrix& matrix() const noexcept { return m_; }
  const Spectrum& spectrum() const noexcept { return sigma_; }
  Matrix project() const { return m_ * m_.adjoint(); }

 private:
  Purification(Matrix m, Spectrum sigma, std::nullptr_t) : m_(std::move(m)), sigma_(std::move(sigma)) {}
  Matrix m_;
  Spectrum sigma_;
};

enum class Membership { gauge_subalgebra, full_algebra };

/// k x k anti-Hermitian matrix, optionally certified to lie in u(sigma).
class GaugeElement {
 public:
  GaugeElement(Matrix m, const Context& ctx = {});
  // Certifies membership in u(sigma): must commute with P(sigma).
  GaugeElement(Matrix m, const Spectrum& sigma, const Context& ctx = {});

  const Matrix& matrix() const noexcept { return m_; }
  Membership membership() const noexcept { return membership_; }

 private:
  Matrix m_;
  Membership membership_ = Membership::full_algebra;
};

class Observable {
 public:
  Observable(Matrix m, const Context& ctx = {});
  const Matrix& matrix() const noexcept { return m_; }

 private:
  Matrix m_;
};

}  // namespace qorbit
