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

#include "control.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <memory>
#include <numbers>
#include <random>
#include <sstream>

#include "connection.hpp"
#include "nelder_mead.hpp"

namespace qorbit {

namespace {

const Complex kI(0.0, 1.0);

RealVector inverse_sqrt_weights(const Spectrum& sigma) { return sigma.diagonal().cwiseSqrt().cwiseInverse(); }

Matrix scale_columns(const Matrix& m, const RealVector& w) { return m * w.cast<Complex>().asDiagonal(); }

Matrix anti_hermitian_part(const Matrix& m) { return 0.5 * (m - m.adjoint()); }

Matrix hermitian_part(const Matrix& m) { return 0.5 * (m + m.adjoint()); }

void require_positive_grid(double tau, int steps, const char* what) {
  if (!(tau > 0.0) || steps < 1) {
    std::ostringstream os;
    os << what << ": need tau > 0 and steps >= 1 (got tau=" << tau << ", steps=" << steps << ")";
    throw Error(ErrorCode::invalid_argument, os.str());
  }
}

Purification full_rank_purification(const DensityOperator& rho, const Context& ctx, const char* what) {
  Purification psi = standard_purification(rho, ctx);
  if (psi.matrix().cols() != rho.dim()) {
    std::ostringstream os;
    os << what << ": density operator has rank " << psi.matrix().cols() << " < " << rho.dim()
       << "; a full-rank operator is required";
    throw Error(ErrorCode::unsupported, os.str());
  }
  return psi;
}

double parallel_norm(const Matrix& xi, const Spectrum& sigma) { return gauge_norm(block_diagonal_part(xi, sigma), sigma); }

void require_horizontal(const GaugeElement& xi0, const Spectrum& sigma, const char* what) {
  if (xi0.matrix().rows() != static_cast<Eigen::Index>(sigma.size()))
    throw Error(ErrorCode::invalid_argument, std::string(what) + ": xi0 size does not match the spectrum");
  const double par = parallel_norm(xi0.matrix(), sigma);
  if (par > 1e-10) {
    std::ostringstream os;
    os << what << ": xi0 is not horizontal, parallel part norm " << par;
    throw Error(ErrorCode::not_horizontal, os.str());
  }
}

Trajectory project_frames(const Trajectory& psi) {
  Trajectory rho{FrameKind::density, psi.times, {}};
  rho.frames.reserve(psi.size());
  for (const Matrix& m : psi.frames) rho.frames.push_back(hermitian_part(m * m.adjoint()));
  return rho;
}

std::string format_values(const RealVector& v) {
  std::ostringstream os;
  os << "[";
  for (Eigen::Index i = 0; i < v.size(); ++i) os << (i ? ", " : "") << (std::abs(v(i)) < 1e-15 ? 0.0 : v(i));
  os << "]";
  return os.str();
}

}  // namespace

// ---------------------------------------------------------------------------
// Coadjoint and control curves

Matrix coadjoint(const Matrix& xi, const Spectrum& sigma) {
  const Eigen::Index k = static_cast<Eigen::Index>(sigma.size());
  if (xi.rows() != k || xi.cols() != k)
    throw Error(ErrorCode::invalid_argument, "coadjoint: xi size does not match the spectrum");
  const Matrix p = sigma.projector_weights();
  const Matrix anti = p * xi + xi * p;
  const Matrix c = anti * xi - xi * anti;
  const RealVector& d = sigma.diagonal();
  Matrix zeta(k, k);
  for (Eigen::Index i = 0; i < k; ++i)
    for (Eigen::Index j = 0; j < k; ++j) zeta(i, j) = c(i, j) / (d(i) + d(j));
  return anti_hermitian_part(zeta);
}

GaugeElement coadjoint(const GaugeElement& xi, const Spectrum& sigma) {
  return GaugeElement(coadjoint(xi.matrix(), sigma));
}

ControlCurve::ControlCurve(Trajectory samples, MatrixFunction eval)
    : samples_(std::move(samples)), eval_(std::move(eval)) {
  samples_.kind = FrameKind::control;
  validate_trajectory(samples_, 1e-8);
}

ControlCurve::ControlCurve(Trajectory samples) : ControlCurve(samples, interpolate(samples)) {}

ControlCurve::ControlCurve(Trajectory samples, std::vector<Matrix> slopes)
    : ControlCurve(samples, [curve = std::make_shared<HermiteCurve>(samples.times, samples.frames, std::move(slopes))](
                                double t) { return curve->value(t); }) {}

ControlCurve ControlCurve::from_function(MatrixFunction f, double tau, int steps) {
  Trajectory samples{FrameKind::control, uniform_grid(tau, steps), {}};
  samples.frames.reserve(samples.times.size());
  for (double t : samples.times) samples.frames.push_back(f(t));
  return ControlCurve(std::move(samples), std::move(f));
}

ControlCurve arnold_euler_flow(const GaugeElement& xi0, const Spectrum& sigma, double tau, int steps,
                               const Context& /*ctx*/) {
  require_positive_grid(tau, steps, "arnold_euler_flow");
  const Matrix& x0 = xi0.matrix();
  if (x0.rows() != static_cast<Eigen::Index>(sigma.size()))
    throw Error(ErrorCode::invalid_argument, "arnold_euler_flow: xi0 size does not match the spectrum");

  Trajectory samples{FrameKind::control, uniform_grid(tau, steps), {}};
  std::vector<Matrix> slopes;
  samples.frames.reserve(samples.times.size());
  slopes.reserve(samples.times.size());
  samples.frames.push_back(x0);
  slopes.push_back(coadjoint(x0, sigma));

  const double e0 = gauge_metric(x0, x0, sigma);
  auto rhs = [&](double, const Matrix& y) { return coadjoint(y, sigma); };
  for (int i = 0; i < steps; ++i) {
    const std::size_t s = static_cast<std::size_t>(i);
    const Matrix next = anti_hermitian_part(rk4_step(rhs, samples.times[s], samples.times[s + 1], samples.frames[s]));
    const double e = gauge_metric(next, next, sigma);
    if (e0 > 0.0 && std::abs(e - e0) > 1e-6 * e0) {
      std::ostringstream os;
      os << "arnold_euler_flow: beta(xi, xi) drifted by " << std::abs(e - e0) / e0 << " relative at t="
         << samples.times[s + 1] << "; increase steps";
      throw Error(ErrorCode::integration_drift, os.str());
    }
    samples.frames.push_back(next);
    slopes.push_back(coadjoint(next, sigma));
  }
  return ControlCurve(std::move(samples), std::move(slopes));
}

// ---------------------------------------------------------------------------
// Hamiltonian synthesis

SynthesizedHamiltonian synth_hamiltonian(const Purification& psi0, const ControlCurve& xi, int steps,
                                         const Context& ctx) {
  const Matrix& m = psi0.matrix();
  if (m.rows() != m.cols())
    throw Error(ErrorCode::unsupported, "synth_hamiltonian: psi0 must be square (k = n) and invertible");
  if (xi.samples().size() == 0 || xi.samples().frames[0].rows() != m.cols())
    throw Error(ErrorCode::invalid_argument, "synth_hamiltonian: control size does not match psi0");
  const double tau = xi.tau();
  require_positive_grid(tau, steps, "synth_hamiltonian");

  struct Shared {
    Matrix q;
    std::vector<double> times;
    std::vector<Matrix> v, start_slope, end_slope;
    MatrixFunction xi;
    double hbar;
  };
  auto sh = std::make_shared<Shared>();
  sh->q = scale_columns(m, inverse_sqrt_weights(psi0.spectrum()));
  sh->times = uniform_grid(tau, steps);
  sh->v = ordered_exponential_samples(xi.function(), tau, steps, ctx);
  sh->xi = xi.function();
  sh->hbar = ctx.hbar;
  for (int i = 0; i < steps; ++i) {
    const std::size_t s = static_cast<std::size_t>(i);
    sh->start_slope.push_back(sh->v[s] * sh->xi(sh->times[s]));
    sh->end_slope.push_back(sh->v[s + 1] * sh->xi(std::nextafter(sh->times[s + 1], sh->times[s])));
  }

  auto build = [](const Shared& d, const Matrix& v, const Matrix& x) {
    const Matrix qv = d.q * v;
    return Matrix(kI * d.hbar * qv * x * qv.adjoint());
  };

  SynthesizedHamiltonian out;
  out.propagator = sh->v;
  out.hamiltonian = Trajectory{FrameKind::hamiltonian, sh->times, {}};
  for (std::size_t i = 0; i < sh->times.size(); ++i) {
    const Matrix h = build(*sh, sh->v[i], sh->xi(sh->times[i]));
    if (hermitian_defect(h) > 1e-9)
      throw Error(ErrorCode::numerical, "synth_hamiltonian: synthesized frame is not Hermitian");
    out.hamiltonian.frames.push_back(hermitian_part(h));
  }

  out.function = [sh, build](double t) {
    const double h = sh->times[1] - sh->times[0];
    const std::size_t last = sh->times.size() - 2;
    std::size_t i = t <= 0.0 ? 0 : static_cast<std::size_t>(std::floor(t / h));
    i = std::min(i, last);
    if (i < last && t >= sh->times[i + 1]) ++i;
    const double s = (t - sh->times[i]) / h;
    const double s2 = s * s, s3 = s2 * s;
    const Matrix v = (2 * s3 - 3 * s2 + 1) * sh->v[i] + ((s3 - 2 * s2 + s) * h) * sh->start_slope[i] +
                     (-2 * s3 + 3 * s2) * sh->v[i + 1] + ((s3 - s2) * h) * sh->end_slope[i];
    return hermitian_part(build(*sh, v, sh->xi(t)));
  };
  return out;
}

// ---------------------------------------------------------------------------
// Geodesics

GeodesicSolution geodesic_from(const DensityOperator& rho0, const GaugeElement& xi0, double tau, int steps,
                               const Context& ctx) {
  require_positive_grid(tau, steps, "geodesic_from");
  const Purification psi0 = full_rank_purification(rho0, ctx, "geodesic_from");
  const Spectrum& sigma = psi0.spectrum();
  require_horizontal(xi0, sigma, "geodesic_from");

  GeodesicSolution sol;
  sol.xi0 = xi0;
  sol.xi_curve = arnold_euler_flow(xi0, sigma, tau, steps, ctx);
  SynthesizedHamiltonian synth = synth_hamiltonian(psi0, sol.xi_curve, steps, ctx);
  sol.hamiltonian = std::move(synth.hamiltonian);
  sol.hamiltonian_function = std::move(synth.function);
  sol.psi_curve = evolve_schrodinger(sol.hamiltonian_function, psi0, tau, steps, ctx);
  sol.rho_curve = project_frames(sol.psi_curve);

  const double e0 = gauge_metric(xi0.matrix(), xi0.matrix(), sigma);
  std::vector<double> speed;
  for (const Matrix& x : sol.xi_curve.samples().frames) {
    const double e = gauge_metric(x, x, sigma);
    speed.push_back(std::sqrt(std::max(0.0, e)));
    sol.max_horizontal_residual = std::max(sol.max_horizontal_residual, parallel_norm(x, sigma));
    if (e0 > 0.0) sol.speed_drift = std::max(sol.speed_drift, std::abs(e / e0 - 1.0));
  }
  const std::vector<double>& t = sol.xi_curve.samples().times;
  for (std::size_t i = 1; i < t.size(); ++i) sol.length += 0.5 * (t[i] - t[i - 1]) * (speed[i] + speed[i - 1]);

  if (sol.max_horizontal_residual > 1e-6) {
    std::ostringstream os;
    os << "geodesic_from: horizontal residual reached " << sol.max_horizontal_residual << "; increase steps";
    throw Error(ErrorCode::integration_drift, os.str());
  }
  return sol;
}

Matrix expm_anti_hermitian(const Matrix& xi, double t) {
  if (xi.rows() != xi.cols()) throw Error(ErrorCode::invalid_argument, "expm_anti_hermitian: matrix must be square");
  Eigen::SelfAdjointEigenSolver<Matrix> es(hermitian_part(kI * xi));
  const Eigen::VectorXcd phases =
      es.eigenvalues().unaryExpr([t](double lambda) { return std::exp(Complex(0.0, -t * lambda)); });
  return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}

GeodesicSolution two_eigenvalue_geodesic(const DensityOperator& rho0, const GaugeElement& xi0, double tau, int steps,
                                         const Context& ctx) {
  require_positive_grid(tau, steps, "two_eigenvalue_geodesic");
  const Purification psi0 = full_rank_purification(rho0, ctx, "two_eigenvalue_geodesic");
  const Spectrum& sigma = psi0.spectrum();
  if (sigma.distinct_count() != 2) {
    std::ostringstream os;
    os << "two_eigenvalue_geodesic: spectrum has " << sigma.distinct_count() << " distinct values, expected 2";
    throw Error(ErrorCode::domain, os.str());
  }
  require_horizontal(xi0, sigma, "two_eigenvalue_geodesic");

  const Matrix q = scale_columns(psi0.matrix(), inverse_sqrt_weights(sigma));
  const RealVector sqrt_p = sigma.diagonal().cwiseSqrt();
  const Matrix& x = xi0.matrix();
  const Matrix h = hermitian_part(kI * ctx.hbar * q * x * q.adjoint());

  GeodesicSolution sol;
  sol.xi0 = xi0;
  sol.xi_curve = ControlCurve::from_function(constant_function(x), tau, steps);
  sol.hamiltonian_function = constant_function(h);
  sol.hamiltonian = Trajectory{FrameKind::hamiltonian, uniform_grid(tau, steps), {}};
  sol.psi_curve = Trajectory{FrameKind::purification, sol.hamiltonian.times, {}};
  for (double t : sol.hamiltonian.times) {
    sol.hamiltonian.frames.push_back(h);
    sol.psi_curve.frames.push_back(scale_columns(q * expm_anti_hermitian(x, t), sqrt_p));
  }
  sol.rho_curve = project_frames(sol.psi_curve);
  sol.length = gauge_norm(x, sigma) * tau;
  sol.max_horizontal_residual = parallel_norm(x, sigma);
  return sol;
}

Trajectory distinguishable_geodesic(const Purification& psi0, const Purification& psi1, int steps,
                                    const Context& ctx) {
  require_positive_grid(1.0, steps, "distinguishable_geodesic");
  const Matrix& a = psi0.matrix();
  const Matrix& b = psi1.matrix();
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw Error(ErrorCode::invalid_argument, "distinguishable_geodesic: purification shapes differ");
  const RealVector pa = psi0.spectrum().diagonal();
  if ((pa - psi1.spectrum().diagonal()).cwiseAbs().maxCoeff() > 1e-10)
    throw Error(ErrorCode::domain, "distinguishable_geodesic: purifications lie over different spectra");
  const double overlap = std::max((a.adjoint() * b).norm(), (b.adjoint() * a).norm());
  if (overlap > 1e-10) {
    std::ostringstream os;
    os << "distinguishable_geodesic: supports are not orthogonal (||psi0^dagger psi1|| = " << overlap << ")";
    throw Error(ErrorCode::domain, os.str());
  }

  const double half_pi = std::numbers::pi / 2.0;
  const Matrix p = psi0.spectrum().projector_weights();
  Trajectory traj{FrameKind::purification, uniform_grid(half_pi, steps), {}};
  for (double t : traj.times) {
    const Matrix psi = std::cos(t) * a + std::sin(t) * b;
    const Matrix dpsi = -std::sin(t) * a + std::cos(t) * b;
    const double fiber = (psi.adjoint() * psi - p).norm();
    const double vertical = (psi.adjoint() * dpsi).norm();
    if (fiber > std::max(ctx.fiber_tol, 1e-10) || vertical > 1e-10) {
      std::ostringstream os;
      os << "distinguishable_geodesic: curve check failed at t=" << t << " (fiber " << fiber << ", psi^dagger psi' "
         << vertical << ")";
      throw Error(ErrorCode::numerical, os.str());
    }
    traj.frames.push_back(psi);
  }
  return traj;
}

// ---------------------------------------------------------------------------
// Distance by shooting

namespace {

// Unit-time geodesic endpoint for controls in the frame of a fixed full-rank
// purification psi0 = Q P^(1/2).
class Shooter {
 public:
  Shooter(const Purification& psi0, int steps)
      : sigma_(psi0.spectrum()),
        q_(scale_columns(psi0.matrix(), inverse_sqrt_weights(psi0.spectrum()))),
        p_(psi0.spectrum().projector_weights()),
        steps_(steps) {}

  Matrix endpoint(const Matrix& xi0) const {
    const Eigen::Index n = xi0.rows();
    const double h = 1.0 / steps_;
    Matrix x = xi0;
    Matrix v = Matrix::Identity(n, n);
    for (int i = 0; i < steps_; ++i) {
      const Matrix kx1 = coadjoint(x, sigma_), kv1 = v * x;
      const Matrix x2 = x + 0.5 * h * kx1, v2 = v + 0.5 * h * kv1;
      const Matrix kx2 = coadjoint(x2, sigma_), kv2 = v2 * x2;
      const Matrix x3 = x + 0.5 * h * kx2, v3 = v + 0.5 * h * kv2;
      const Matrix kx3 = coadjoint(x3, sigma_), kv3 = v3 * x3;
      const Matrix x4 = x + h * kx3, v4 = v + h * kv3;
      const Matrix kx4 = coadjoint(x4, sigma_), kv4 = v4 * x4;
      x = anti_hermitian_part(x + (h / 6.0) * (kx1 + 2.0 * kx2 + 2.0 * kx3 + kx4));
      v = v + (h / 6.0) * (kv1 + 2.0 * kv2 + 2.0 * kv3 + kv4);
    }
    v = polar_unitary(v);
    const Matrix qv = q_ * v;
    return hermitian_part(qv * p_ * qv.adjoint());
  }

  const Spectrum& sigma() const { return sigma_; }
  const Matrix& q() const { return q_; }

 private:
  Spectrum sigma_;
  Matrix q_;
  Matrix p_;
  int steps_;
};

struct RestartOutcome {
  RealVector x;
  double mismatch = 0.0;
};

}  // namespace

Matrix shooting_endpoint(const DensityOperator& rho0, const Matrix& xi0, int steps, const Context& ctx) {
  require_positive_grid(1.0, steps, "shooting_endpoint");
  const Purification psi0 = full_rank_purification(rho0, ctx, "shooting_endpoint");
  if (xi0.rows() != rho0.dim() || xi0.cols() != rho0.dim())
    throw Error(ErrorCode::invalid_argument, "shooting_endpoint: xi0 size does not match rho0");
  return Shooter(psi0, steps).endpoint(xi0);
}

DistanceResult distance(const DensityOperator& rho0, const DensityOperator& rho1, const ShootingConfig& cfg,
                        const Context& ctx) {
  if (rho0.dim() != rho1.dim())
    throw Error(ErrorCode::invalid_argument, "distance: density operators have different dimensions");
  if (cfg.restarts < 1 || cfg.steps < 1 || cfg.max_iters < 1 || !(cfg.endpoint_tol > 0.0))
    throw Error(ErrorCode::invalid_argument, "distance: invalid shooting configuration");

  const RealVector ev0 = eigh_descending(rho0.matrix()).values;
  const RealVector ev1 = eigh_descending(rho1.matrix()).values;
  if ((ev0 - ev1).cwiseAbs().maxCoeff() > 1e-8) {
    std::ostringstream os;
    os << "distance: density operators are not isospectral: spectrum " << format_values(ev0) << " vs "
       << format_values(ev1);
    throw Error(ErrorCode::domain, os.str());
  }

  const Purification psi0 = standard_purification(rho0, ctx);
  const Spectrum& sigma = psi0.spectrum();
  const Eigen::Index n = rho0.dim();
  const Eigen::Index k = psi0.matrix().cols();

  DistanceResult out;
  if ((rho0.matrix() - rho1.matrix()).norm() <= 1e-13) {
    out.xi0 = GaugeElement(Matrix::Zero(k, k));
    out.converged = true;
    out.method = "identical";
    return out;
  }

  if (k == 1) {
    const Matrix a = psi0.matrix();
    const Matrix b = standard_purification(rho1, ctx).matrix();
    const Complex c = (a.adjoint() * b)(0, 0);
    const double theta = std::acos(std::min(1.0, std::abs(c)));
    const Matrix aligned = std::abs(c) > 0.0 ? Matrix(b * (std::conj(c) / std::abs(c))) : b;
    Matrix gen = Matrix::Zero(n, n);
    if (theta > 0.0) {
      const Matrix u = (aligned - std::cos(theta) * a) / std::sin(theta);
      gen = theta * (u * a.adjoint() - a * u.adjoint());
    }
    out.distance = theta;
    out.xi0 = GaugeElement(gen);
    out.converged = true;
    out.method = "pure";
    return out;
  }

  if (is_distinguishable(rho0, rho1)) {
    const Matrix a = psi0.matrix();
    const Matrix b = standard_purification(rho1, ctx).matrix();
    const Matrix pinv = sigma.diagonal().cwiseInverse().cast<Complex>().asDiagonal();
    out.distance = std::numbers::pi / 2.0;
    out.xi0 = GaugeElement(Matrix(out.distance * (b * pinv * a.adjoint() - a * pinv * b.adjoint())));
    out.converged = true;
    out.method = "distinguishable";
    return out;
  }

  if (k != n) {
    std::ostringstream os;
    os << "distance: rank " << k << " < " << n
       << " with overlapping supports is outside the supported cases (pure, distinguishable, full rank)";
    throw Error(ErrorCode::unsupported, os.str());
  }

  const Shooter shooter(psi0, cfg.steps);
  const std::vector<Matrix> basis = complement_basis(sigma);
  const Eigen::Index d = static_cast<Eigen::Index>(basis.size());
  const Matrix& target = rho1.matrix();
  auto control_of = [&](const RealVector& x) {
    Matrix xi = Matrix::Zero(n, n);
    for (Eigen::Index i = 0; i < d; ++i) xi += x(i) * basis[static_cast<std::size_t>(i)];
    return xi;
  };
  auto objective = [&](const RealVector& x) { return (shooter.endpoint(control_of(x)) - target).squaredNorm(); };

  // Restart 0 starts from the first-order guess: the commutator preimage of
  // rho1 - rho0 at rho0, carried to the purification frame.
  RealVector linear_guess(d);
  {
    const Matrix b = commutator_preimage(eigh_descending(rho0.matrix()), sigma,
                                         hermitian_part(rho1.matrix() - rho0.matrix()));
    const Matrix xi = shooter.q().adjoint() * b * shooter.q();
    for (Eigen::Index i = 0; i < d; ++i) linear_guess(i) = gauge_metric(basis[static_cast<std::size_t>(i)], xi, sigma);
  }

  const double f_target = std::pow(1e-3 * cfg.endpoint_tol, 2);
  auto run = [&](int r) {
    std::seed_seq seq{static_cast<std::uint32_t>(cfg.seed), static_cast<std::uint32_t>(cfg.seed >> 32),
                      static_cast<std::uint32_t>(r)};
    std::mt19937_64 rng(seq);
    RealVector x0 = linear_guess;
    if (r > 0 || x0.norm() == 0.0) {
      std::normal_distribution<double> normal;
      std::uniform_real_distribution<double> radius(0.1, std::numbers::pi);
      for (Eigen::Index i = 0; i < d; ++i) x0(i) = normal(rng);
      if (x0.norm() == 0.0) x0(0) = 1.0;
      x0 *= radius(rng) / x0.norm();
    }
    NelderMeadOptions opts;
    opts.initial_step = std::max(0.05, 0.2 * x0.norm());
    opts.max_iters = cfg.max_iters;
    opts.f_target = f_target;
    const NelderMeadResult res = nelder_mead(objective, x0, opts);
    return RestartOutcome{res.x, std::sqrt(res.f)};
  };

  std::vector<std::future<RestartOutcome>> jobs;
  for (int r = 0; r < cfg.restarts; ++r) jobs.push_back(std::async(std::launch::async, run, r));
  std::vector<RestartOutcome> outcomes;
  for (auto& job : jobs) outcomes.push_back(job.get());

  const RestartOutcome* best = nullptr;
  for (const RestartOutcome& o : outcomes) {
    const bool ok = o.mismatch < cfg.endpoint_tol;
    if (ok) ++out.restarts_converged;
    if (!best) {
      best = &o;
      continue;
    }
    const bool best_ok = best->mismatch < cfg.endpoint_tol;
    if (ok && (!best_ok || o.x.norm() < best->x.norm())) best = &o;
    else if (!ok && !best_ok && o.mismatch < best->mismatch) best = &o;
  }

  out.distance = best->x.norm();
  out.xi0 = GaugeElement(anti_hermitian_part(control_of(best->x)));
  out.endpoint_mismatch = best->mismatch;
  out.converged = best->mismatch < cfg.endpoint_tol;
  out.method = "shooting";
  return out;
}

}  // namespace qorbit
