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

#include "state_space.hpp"

#include <cmath>
#include <sstream>

namespace qorbit {

namespace {

const Complex kI(0.0, 1.0);

void require_same_shape(const Matrix& x, const Matrix& y, const char* what) {
  if (x.rows() != y.rows() || x.cols() != y.cols()) {
    std::ostringstream os;
    os << what << ": shape mismatch (" << x.rows() << "x" << x.cols() << " vs " << y.rows() << "x"
       << y.cols() << ")";
    throw Error(ErrorCode::invalid_argument, os.str());
  }
}

}  // namespace

Eigensystem eigh_descending(const Matrix& hermitian) {
  const Matrix h = 0.5 * (hermitian + hermitian.adjoint());
  Eigen::SelfAdjointEigenSolver<Matrix> es(h);
  if (es.info() != Eigen::Success) throw Error(ErrorCode::numerical, "eigensolver did not converge");
  const Eigen::Index n = h.rows();
  Eigensystem out{RealVector(n), Matrix(n, n)};
  for (Eigen::Index j = 0; j < n; ++j) {
    out.values(j) = es.eigenvalues()(n - 1 - j);
    Eigen::VectorXcd v = es.eigenvectors().col(n - 1 - j);
    const double peak = v.cwiseAbs().maxCoeff();
    Eigen::Index pivot = 0;
    while (std::abs(v(pivot)) < peak - 1e-12) ++pivot;
    v *= std::conj(v(pivot)) / std::abs(v(pivot));
    out.vectors.col(j) = v;
  }
  return out;
}

Spectrum spectrum_of(const DensityOperator& rho, double rank_tol) {
  const Eigensystem es = eigh_descending(rho.matrix());
  std::vector<double> kept;
  for (Eigen::Index j = 0; j < es.values.size(); ++j)
    if (es.values(j) > rank_tol) kept.push_back(es.values(j));
  const double sum_tol = 1e-12 + static_cast<double>(rho.dim()) * rank_tol;
  return Spectrum::from_values(std::move(kept), rank_tol, sum_tol);
}

Purification standard_purification(const DensityOperator& rho, const Context& ctx) {
  const Eigensystem es = eigh_descending(rho.matrix());
  std::vector<double> kept;
  for (Eigen::Index j = 0; j < es.values.size(); ++j)
    if (es.values(j) > ctx.rank_tol) kept.push_back(es.values(j));
  const double sum_tol = 1e-12 + static_cast<double>(rho.dim()) * ctx.rank_tol;
  Spectrum sigma = Spectrum::from_values(std::move(kept), ctx.rank_tol, sum_tol);
  const auto k = static_cast<Eigen::Index>(sigma.size());
  Matrix psi = es.vectors.leftCols(k) * sigma.diagonal().cwiseSqrt().cast<Complex>().asDiagonal();
  return Purification(std::move(psi), std::move(sigma), ctx);
}

double hs_metric(const Matrix& x, const Matrix& y) {
  require_same_shape(x, y, "hs_metric");
  return (x.conjugate().cwiseProduct(y)).sum().real();
}

double gauge_metric(const Matrix& xi, const Matrix& eta, const Spectrum& sigma) {
  require_same_shape(xi, eta, "gauge_metric");
  const auto k = static_cast<Eigen::Index>(sigma.size());
  if (xi.rows() != k || xi.cols() != k)
    throw Error(ErrorCode::invalid_argument, "gauge_metric: element size does not match spectrum");
  // Re Tr(xi^dagger eta P) = sum_ij Re(conj(xi_ij) eta_ij) p_j
  const RealVector p = sigma.diagonal();
  double acc = 0.0;
  for (Eigen::Index j = 0; j < k; ++j)
    acc += p(j) * xi.col(j).conjugate().cwiseProduct(eta.col(j)).sum().real();
  return acc;
}

double gauge_metric(const GaugeElement& xi, const GaugeElement& eta, const Spectrum& sigma) {
  return gauge_metric(xi.matrix(), eta.matrix(), sigma);
}

double gauge_norm(const Matrix& xi, const Spectrum& sigma) {
  return std::sqrt(std::max(0.0, gauge_metric(xi, xi, sigma)));
}

std::vector<GaugeElement> gauge_algebra_basis(const Spectrum& sigma) {
  const auto k = static_cast<Eigen::Index>(sigma.size());
  std::vector<GaugeElement> basis;
  for (std::size_t g = 0; g < sigma.distinct_count(); ++g) {
    const auto start = static_cast<Eigen::Index>(sigma.group_start(g));
    const Eigen::Index m = sigma.multiplicities()[g];
    for (Eigen::Index j = start; j < start + m; ++j) {
      Matrix e = Matrix::Zero(k, k);
      e(j, j) = kI;
      basis.emplace_back(std::move(e), sigma);
    }
    for (Eigen::Index i = start; i < start + m; ++i) {
      for (Eigen::Index j = i + 1; j < start + m; ++j) {
        Matrix re = Matrix::Zero(k, k);
        re(i, j) = 1.0;
        re(j, i) = -1.0;
        basis.emplace_back(std::move(re), sigma);
        Matrix im = Matrix::Zero(k, k);
        im(i, j) = kI;
        im(j, i) = kI;
        basis.emplace_back(std::move(im), sigma);
      }
    }
  }
  return basis;
}

std::vector<Matrix> complement_basis(const Spectrum& sigma) {
  const auto k = static_cast<Eigen::Index>(sigma.size());
  const RealVector p = sigma.diagonal();
  std::vector<Matrix> basis;
  for (Eigen::Index i = 0; i < k; ++i) {
    for (Eigen::Index j = i + 1; j < k; ++j) {
      if (sigma.same_group(static_cast<std::size_t>(i), static_cast<std::size_t>(j))) continue;
      const double scale = 1.0 / std::sqrt(p(i) + p(j));
      Matrix re = Matrix::Zero(k, k);
      re(i, j) = scale;
      re(j, i) = -scale;
      basis.push_back(std::move(re));
      Matrix im = Matrix::Zero(k, k);
      im(i, j) = kI * scale;
      im(j, i) = kI * scale;
      basis.push_back(std::move(im));
    }
  }
  return basis;
}

std::vector<Matrix> unitary_algebra_basis(Eigen::Index k) {
  std::vector<Matrix> basis;
  for (Eigen::Index j = 0; j < k; ++j) {
    Matrix e = Matrix::Zero(k, k);
    e(j, j) = kI;
    basis.push_back(std::move(e));
  }
  for (Eigen::Index i = 0; i < k; ++i) {
    for (Eigen::Index j = i + 1; j < k; ++j) {
      Matrix re = Matrix::Zero(k, k);
      re(i, j) = 1.0;
      re(j, i) = -1.0;
      basis.push_back(std::move(re));
      Matrix im = Matrix::Zero(k, k);
      im(i, j) = kI;
      im(j, i) = kI;
      basis.push_back(std::move(im));
    }
  }
  return basis;
}

Matrix block_diagonal_part(const Matrix& xi, const Spectrum& sigma) {
  const auto k = static_cast<Eigen::Index>(sigma.size());
  if (xi.rows() != k || xi.cols() != k)
    throw Error(ErrorCode::invalid_argument, "split_gauge: element size does not match spectrum");
  Matrix out = Matrix::Zero(k, k);
  for (std::size_t g = 0; g < sigma.distinct_count(); ++g) {
    const auto start = static_cast<Eigen::Index>(sigma.group_start(g));
    const Eigen::Index m = sigma.multiplicities()[g];
    out.block(start, start, m, m) = xi.block(start, start, m, m);
  }
  return out;
}

GaugeSplit split_gauge(const GaugeElement& xi, const Spectrum& sigma) {
  Matrix par = block_diagonal_part(xi.matrix(), sigma);
  Matrix perp = xi.matrix() - par;
  // Construction is exact; relax the checks to the input's own defect.
  Context loose;
  loose.hermitian_tol = std::max(1e-12, 2.0 * anti_hermitian_defect(xi.matrix()));
  return GaugeSplit{GaugeElement(std::move(par), sigma, loose), GaugeElement(std::move(perp), loose)};
}

}  // namespace qorbit
