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

#include "types.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <sstream>

namespace qorbit {

namespace {

double scale_of(const Matrix& m) { return std::max(1.0, m.norm()); }

}  // namespace

double hermitian_defect(const Matrix& m) {
  if (m.rows() != m.cols()) return INFINITY;
  return (m - m.adjoint()).norm() / scale_of(m);
}

double anti_hermitian_defect(const Matrix& m) {
  if (m.rows() != m.cols()) return INFINITY;
  return (m + m.adjoint()).norm() / scale_of(m);
}

// ---------------------------------------------------------------------------
// Spectrum

Spectrum Spectrum::from_values(std::vector<double> values, double group_tol, double sum_tol) {
  if (values.empty()) throw Error(ErrorCode::validation, "spectrum: empty value list");
  for (double v : values) {
    if (!(v > 0.0)) {
      std::ostringstream os;
      os << "spectrum: value " << v << " is not strictly positive";
      throw Error(ErrorCode::validation, os.str());
    }
  }
  std::sort(values.begin(), values.end(), std::greater<>());
  const double total = std::accumulate(values.begin(), values.end(), 0.0);
  if (std::abs(total - 1.0) > sum_tol) {
    std::ostringstream os;
    os.precision(17);
    os << "spectrum: values sum to " << total << ", expected 1";
    throw Error(ErrorCode::validation, os.str());
  }

  Spectrum s;
  std::size_t start = 0;
  for (std::size_t j = 1; j <= values.size(); ++j) {
    if (j == values.size() || values[j - 1] - values[j] > group_tol) {
      double mean = 0.0;
      for (std::size_t i = start; i < j; ++i) mean += values[i];
      mean /= static_cast<double>(j - start);
      for (std::size_t i = start; i < j; ++i) {
        s.values_.push_back(mean);
        s.group_index_.push_back(static_cast<int>(s.multiplicities_.size()));
      }
      s.group_start_.push_back(start);
      s.multiplicities_.push_back(static_cast<int>(j - start));
      start = j;
    }
  }
  return s;
}

RealVector Spectrum::diagonal() const {
  return Eigen::Map<const RealVector>(values_.data(), static_cast<Eigen::Index>(values_.size()));
}

Matrix Spectrum::projector_weights() const { return diagonal().cast<Complex>().asDiagonal(); }

// ---------------------------------------------------------------------------
// DensityOperator

DensityOperator::DensityOperator(Matrix m, const Context& ctx) : m_(std::move(m)) {
  validate(ctx.hermitian_tol);
}

DensityOperator::DensityOperator(Matrix m, double tol) : m_(std::move(m)) { validate(tol); }

void DensityOperator::validate(double tol) const {
  if (m_.rows() == 0 || m_.rows() != m_.cols())
    throw Error(ErrorCode::validation, "density operator: matrix must be square and nonempty");
  const double herm = hermitian_defect(m_);
  if (herm > tol) {
    std::ostringstream os;
    os << "density operator: not Hermitian (defect " << herm << ")";
    throw Error(ErrorCode::validation, os.str());
  }
  const Complex tr = m_.trace();
  if (std::abs(tr - Complex(1.0, 0.0)) > tol) {
    std::ostringstream os;
    os.precision(17);
    os << "density operator: trace " << tr.real() << " differs from 1";
    throw Error(ErrorCode::validation, os.str());
  }
  const Matrix h = 0.5 * (m_ + m_.adjoint());
  Eigen::SelfAdjointEigenSolver<Matrix> es(h, Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() < -tol) {
    std::ostringstream os;
    os << "density operator: negative eigenvalue " << es.eigenvalues().minCoeff();
    throw Error(ErrorCode::validation, os.str());
  }
}

// ---------------------------------------------------------------------------
// Purification

namespace {

void check_fiber(const Matrix& m, const Spectrum& sigma, double tol) {
  if (m.cols() != static_cast<Eigen::Index>(sigma.size()))
    throw Error(ErrorCode::validation, "purification: column count does not match spectrum size");
  const double defect = (m.adjoint() * m - sigma.projector_weights()).norm();
  if (defect > tol) {
    std::ostringstream os;
    os << "purification: psi^dagger psi differs from P(sigma) by " << defect;
    throw Error(ErrorCode::validation, os.str());
  }
}

Spectrum spectrum_from_gram(const Matrix& m, const Context& ctx) {
  if (m.cols() == 0 || m.rows() < m.cols())
    throw Error(ErrorCode::validation, "purification: expected an n x k matrix with k <= n");
  const Matrix gram = m.adjoint() * m;
  std::vector<double> diag(static_cast<std::size_t>(gram.rows()));
  for (Eigen::Index j = 0; j < gram.rows(); ++j) {
    diag[static_cast<std::size_t>(j)] = gram(j, j).real();
    if (j > 0 && diag[static_cast<std::size_t>(j)] > diag[static_cast<std::size_t>(j - 1)] + ctx.rank_tol)
      throw Error(ErrorCode::validation, "purification: diagonal of psi^dagger psi is not nonincreasing");
  }
  return Spectrum::from_values(std::move(diag), ctx.rank_tol, std::max(1e-12, ctx.fiber_tol));
}

}  // namespace

Purification::Purification(Matrix m, Spectrum sigma, const Context& ctx)
    : m_(std::move(m)), sigma_(std::move(sigma)) {
  check_fiber(m_, sigma_, ctx.fiber_tol);
}

Purification::Purification(Matrix m, const Context& ctx)
    : m_(std::move(m)), sigma_(spectrum_from_gram(m_, ctx)) {
  check_fiber(m_, sigma_, ctx.fiber_tol);
}

Purification Purification::unchecked(Matrix m, Spectrum sigma) {
  return Purification(std::move(m), std::move(sigma), nullptr);
}

// ---------------------------------------------------------------------------
// GaugeElement, Observable

GaugeElement::GaugeElement(Matrix m, const Context& ctx) : m_(std::move(m)) {
  const double defect = anti_hermitian_defect(m_);
  if (defect > ctx.hermitian_tol) {
    std::ostringstream os;
    os << "gauge element: not anti-Hermitian (defect " << defect << ")";
    throw Error(ErrorCode::validation, os.str());
  }
}

GaugeElement::GaugeElement(Matrix m, const Spectrum& sigma, const Context& ctx)
    : GaugeElement(std::move(m), ctx) {
  if (m_.rows() != static_cast<Eigen::Index>(sigma.size()))
    throw Error(ErrorCode::validation, "gauge element: size does not match spectrum");
  const Matrix p = sigma.projector_weights();
  const double comm = (p * m_ - m_ * p).norm();
  if (comm > ctx.hermitian_tol)
    throw Error(ErrorCode::validation, "gauge element: does not commute with P(sigma)");
  membership_ = Membership::gauge_subalgebra;
}

Observable::Observable(Matrix m, const Context& ctx) : m_(std::move(m)) {
  const double defect = hermitian_defect(m_);
  if (defect > ctx.hermitian_tol) {
    std::ostringstream os;
    os << "observable: not Hermitian (defect " << defect << ")";
    throw Error(ErrorCode::validation, os.str());
  }
}

}  // namespace qorbit
