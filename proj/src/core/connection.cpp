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

#include "connection.hpp"

#include <cmath>
#include <sstream>

namespace qorbit {

namespace {

const Complex kI(0.0, 1.0);

// Relative size of rho_dot's same-group blocks tolerated by submersion_metric.
constexpr double kTangentTol = 1e-6;

}  // namespace

RealVector moment_map(const Purification& psi, const Matrix& x, const std::vector<GaugeElement>& basis) {
  const Matrix& m = psi.matrix();
  if (x.rows() != m.rows() || x.cols() != m.cols())
    throw Error(ErrorCode::invalid_argument, "moment_map: tangent shape does not match purification");
  RealVector out(static_cast<Eigen::Index>(basis.size()));
  for (std::size_t i = 0; i < basis.size(); ++i) {
    if (basis[i].matrix().rows() != m.cols())
      throw Error(ErrorCode::invalid_argument, "moment_map: basis element size does not match purification");
    out(static_cast<Eigen::Index>(i)) = hs_metric(x, m * basis[i].matrix().adjoint());
  }
  return out;
}

RealMatrix locked_inertia(const Purification& psi, const std::vector<GaugeElement>& basis) {
  const auto d = static_cast<Eigen::Index>(basis.size());
  std::vector<Matrix> fiber;
  fiber.reserve(basis.size());
  for (const auto& b : basis) fiber.push_back(psi.matrix() * b.matrix().adjoint());
  RealMatrix gram(d, d);
  for (Eigen::Index i = 0; i < d; ++i)
    for (Eigen::Index j = i; j < d; ++j)
      gram(i, j) = gram(j, i) = hs_metric(fiber[static_cast<std::size_t>(i)], fiber[static_cast<std::size_t>(j)]);
  return gram;
}

ConnectionEvaluation connection_form(const Purification& psi, const Matrix& x, const Context& ctx) {
  const Spectrum& sigma = psi.spectrum();
  const auto basis = gauge_algebra_basis(sigma);
  const RealMatrix inertia = locked_inertia(psi, basis);
  const RealVector rhs = moment_map(psi, x, basis);

  Eigen::SelfAdjointEigenSolver<RealMatrix> es(inertia, Eigen::EigenvaluesOnly);
  const double lo = es.eigenvalues().minCoeff();
  const double hi = es.eigenvalues().maxCoeff();
  if (!(lo > 0.0) || hi / lo > ctx.conditioning_limit) {
    std::ostringstream os;
    os << "connection_form: locked inertia is ill-conditioned (eigenvalues " << lo << " .. " << hi << ")";
    throw Error(ErrorCode::numerical, os.str());
  }
  const RealVector coeff = inertia.ldlt().solve(rhs);

  const auto k = static_cast<Eigen::Index>(sigma.size());
  Matrix xi = Matrix::Zero(k, k);
  for (std::size_t i = 0; i < basis.size(); ++i) xi += coeff(static_cast<Eigen::Index>(i)) * basis[i].matrix();
  Matrix vertical = psi.matrix() * xi.adjoint();
  Matrix horizontal = x - vertical;
  return ConnectionEvaluation{GaugeElement(std::move(xi), sigma), std::move(vertical), std::move(horizontal)};
}

Matrix observable_field(const Observable& a, const Purification& psi, const Context& ctx) {
  if (a.matrix().cols() != psi.matrix().rows())
    throw Error(ErrorCode::invalid_argument, "observable_field: observable does not act on the purification space");
  return a.matrix() * psi.matrix() / (kI * ctx.hbar);
}

ObservableGauge xi_A(const DensityOperator& rho, const Observable& a, const Context& ctx) {
  const Purification psi = standard_purification(rho, ctx);
  const Spectrum& sigma = psi.spectrum();
  const ConnectionEvaluation ev = connection_form(psi, observable_field(a, psi, ctx), ctx);

  const auto k = static_cast<Eigen::Index>(sigma.size());
  const Matrix unit = kI * Matrix::Identity(k, k);
  const double c = gauge_metric(ev.xi.matrix(), unit, sigma) / gauge_metric(unit, unit, sigma);
  Matrix perp = ev.xi.matrix() - c * unit;
  return ObservableGauge{ev.xi, GaugeElement(std::move(perp), sigma)};
}

double uncertainty(const DensityOperator& rho, const Observable& a) {
  const Matrix& r = rho.matrix();
  const Matrix& op = a.matrix();
  if (op.rows() != r.rows())
    throw Error(ErrorCode::invalid_argument, "uncertainty: observable and density operator sizes differ");
  const double mean = (op * r).trace().real();
  const double second = (op * op * r).trace().real();
  const double variance = second - mean * mean;
  if (variance < -1e-9) {
    std::ostringstream os;
    os << "uncertainty: negative variance " << variance;
    throw Error(ErrorCode::numerical, os.str());
  }
  return std::sqrt(std::max(0.0, variance));
}

bool is_parallel_at(const Observable& a, const DensityOperator& rho, double tol, const Context& ctx) {
  const Purification psi = standard_purification(rho, ctx);
  return gauge_norm(xi_A(rho, a, ctx).xi.matrix(), psi.spectrum()) < tol;
}

Matrix commutator_preimage(const Eigensystem& rho_eigen, const Spectrum& groups, const Matrix& rho_dot,
                           double* off_tangent) {
  const Eigen::Index n = rho_eigen.vectors.rows();
  const Matrix& e = rho_eigen.vectors;
  const Matrix t = e.adjoint() * rho_dot * e;
  Matrix b = Matrix::Zero(n, n);
  double dropped = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      if (groups.same_group(static_cast<std::size_t>(i), static_cast<std::size_t>(j))) {
        dropped += std::norm(t(i, j));
        continue;
      }
      const double pi = groups.values()[static_cast<std::size_t>(i)];
      const double pj = groups.values()[static_cast<std::size_t>(j)];
      b(i, j) = t(i, j) / (pj - pi);
    }
  }
  if (off_tangent) *off_tangent = std::sqrt(dropped);
  return e * b * e.adjoint();
}

Matrix horizontal_lift_vector(const Purification& psi, const Matrix& rho_dot, const Context& ctx,
                              double* off_tangent) {
  const Matrix& m = psi.matrix();
  if (m.cols() != m.rows())
    throw Error(ErrorCode::unsupported, "horizontal lift of a tangent requires a full-rank density operator");
  if (rho_dot.rows() != m.rows() || rho_dot.cols() != m.rows())
    throw Error(ErrorCode::invalid_argument, "horizontal lift: tangent shape does not match");
  const Eigensystem es = eigh_descending(psi.project());
  const Matrix b = commutator_preimage(es, psi.spectrum(), rho_dot, off_tangent);
  return connection_form(psi, b * m, ctx).horizontal;
}

double submersion_metric(const DensityOperator& rho, const Matrix& rho_dot1, const Matrix& rho_dot2,
                         const Context& ctx) {
  const Purification psi = standard_purification(rho, ctx);
  if (psi.matrix().cols() != rho.dim()) {
    std::ostringstream os;
    os << "submersion_metric: density operator has rank " << psi.matrix().cols() << " < " << rho.dim()
       << "; only full-rank orbits are supported";
    throw Error(ErrorCode::unsupported, os.str());
  }
  auto lift = [&](const Matrix& d) {
    if (d.rows() != rho.dim() || d.cols() != rho.dim())
      throw Error(ErrorCode::invalid_argument, "submersion_metric: tangent shape does not match");
    if (hermitian_defect(d) > std::max(ctx.hermitian_tol, 1e-10))
      throw Error(ErrorCode::validation, "submersion_metric: tangent is not Hermitian");
    double off = 0.0;
    Matrix x = horizontal_lift_vector(psi, d, ctx, &off);
    if (off > kTangentTol * std::max(1.0, d.norm())) {
      std::ostringstream os;
      os << "submersion_metric: tangent leaves the orbit (eigenvalue-block component " << off << ")";
      throw Error(ErrorCode::domain, os.str());
    }
    return x;
  };
  return hs_metric(lift(rho_dot1), lift(rho_dot2));
}

}  // namespace qorbit
