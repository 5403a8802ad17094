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

#include "dynamics.hpp"

#include <algorithm>
#include <memory>
#include <numbers>
#include <sstream>

#include "connection.hpp"
#include "state_space.hpp"

namespace qorbit {

namespace {

const Complex kI(0.0, 1.0);

void require_grid(double tau, int steps, const char* what) {
  if (steps < 1) {
    std::ostringstream os;
    os << what << ": steps must be >= 1 (got " << steps << ")";
    throw Error(ErrorCode::invalid_argument, os.str());
  }
  if (!(tau > 0.0) || !std::isfinite(tau)) {
    std::ostringstream os;
    os << what << ": duration must be positive and finite (got " << tau << ")";
    throw Error(ErrorCode::invalid_argument, os.str());
  }
}

[[noreturn]] void drift(const char* what, double t, const Error& cause, int steps) {
  std::ostringstream os;
  os << what << ": frame at t=" << t << " failed validation (" << cause.what() << "); increase steps (currently "
     << steps << ")";
  throw Error(ErrorCode::integration_drift, os.str());
}

Matrix checked_hamiltonian(const MatrixFunction& h, double t, Eigen::Index n, const Context& ctx) {
  Matrix m = h(t);
  if (m.rows() != n || m.cols() != n) {
    std::ostringstream os;
    os << "Hamiltonian at t=" << t << " is " << m.rows() << "x" << m.cols() << ", expected " << n << "x" << n;
    throw Error(ErrorCode::invalid_argument, os.str());
  }
  if (hermitian_defect(m) > std::max(ctx.hermitian_tol, 1e-9)) {
    std::ostringstream os;
    os << "Hamiltonian at t=" << t << " is not Hermitian";
    throw Error(ErrorCode::validation, os.str());
  }
  return m;
}

double trapezoid(const std::vector<double>& times, const std::vector<double>& values) {
  double acc = 0.0;
  for (std::size_t i = 1; i < times.size(); ++i)
    acc += 0.5 * (times[i] - times[i - 1]) * (values[i] + values[i - 1]);
  return acc;
}

Context with_fiber_tol(const Context& ctx, double tol) {
  Context c = ctx;
  c.fiber_tol = tol;
  return c;
}

}  // namespace

MatrixFunction constant_function(Matrix m) {
  return [m = std::move(m)](double) { return m; };
}

const char* to_string(FrameKind kind) {
  switch (kind) {
    case FrameKind::density: return "density";
    case FrameKind::purification: return "purification";
    case FrameKind::hamiltonian: return "hamiltonian";
    case FrameKind::control: return "control";
  }
  return "unknown";
}

std::vector<double> uniform_grid(double tau, int steps) {
  require_grid(tau, steps, "uniform_grid");
  std::vector<double> t(static_cast<std::size_t>(steps) + 1);
  for (int i = 0; i <= steps; ++i) t[static_cast<std::size_t>(i)] = tau * i / steps;
  return t;
}

void validate_trajectory(const Trajectory& traj, double tol) {
  if (traj.frames.empty() || traj.frames.size() != traj.times.size())
    throw Error(ErrorCode::validation, "trajectory: frame and time counts differ or are zero");
  const double h = traj.step();
  for (std::size_t i = 1; i < traj.times.size(); ++i) {
    const double d = traj.times[i] - traj.times[i - 1];
    if (!(d > 0.0) || std::abs(d - h) > 1e-9 * std::max(1.0, traj.tau()))
      throw Error(ErrorCode::validation, "trajectory: time grid is not uniform and increasing");
  }
  const Context ctx = with_fiber_tol(Context{}, tol);
  for (std::size_t i = 0; i < traj.frames.size(); ++i) {
    const Matrix& f = traj.frames[i];
    if (f.rows() != traj.frames[0].rows() || f.cols() != traj.frames[0].cols())
      throw Error(ErrorCode::validation, "trajectory: frames change shape");
    switch (traj.kind) {
      case FrameKind::density: DensityOperator(f, tol); break;
      case FrameKind::purification: Purification(f, ctx); break;
      case FrameKind::hamiltonian:
        if (hermitian_defect(f) > tol) throw Error(ErrorCode::validation, "trajectory: Hamiltonian frame not Hermitian");
        break;
      case FrameKind::control:
        if (anti_hermitian_defect(f) > tol)
          throw Error(ErrorCode::validation, "trajectory: control frame not anti-Hermitian");
        break;
    }
  }
}

Matrix frame_derivative(const Trajectory& traj, std::size_t i) {
  const auto& f = traj.frames;
  const std::size_t m = f.size();
  if (m < 2) return Matrix::Zero(f.at(0).rows(), f.at(0).cols());
  const double h = traj.step();
  if (m == 2) return (f[1] - f[0]) / h;
  if (m < 5) {
    if (i == 0) return (-3.0 * f[0] + 4.0 * f[1] - f[2]) / (2.0 * h);
    if (i == m - 1) return (3.0 * f[m - 1] - 4.0 * f[m - 2] + f[m - 3]) / (2.0 * h);
    return (f[i + 1] - f[i - 1]) / (2.0 * h);
  }
  if (i == 0) return (-25.0 * f[0] + 48.0 * f[1] - 36.0 * f[2] + 16.0 * f[3] - 3.0 * f[4]) / (12.0 * h);
  if (i == 1) return (-3.0 * f[0] - 10.0 * f[1] + 18.0 * f[2] - 6.0 * f[3] + f[4]) / (12.0 * h);
  if (i == m - 1)
    return (25.0 * f[m - 1] - 48.0 * f[m - 2] + 36.0 * f[m - 3] - 16.0 * f[m - 4] + 3.0 * f[m - 5]) / (12.0 * h);
  if (i == m - 2)
    return (3.0 * f[m - 1] + 10.0 * f[m - 2] - 18.0 * f[m - 3] + 6.0 * f[m - 4] - f[m - 5]) / (12.0 * h);
  return (f[i - 2] - 8.0 * f[i - 1] + 8.0 * f[i + 1] - f[i + 2]) / (12.0 * h);
}

// ---------------------------------------------------------------------------
// HermiteCurve

HermiteCurve::HermiteCurve(std::vector<double> times, std::vector<Matrix> values, std::vector<Matrix> slopes)
    : times_(std::move(times)), values_(std::move(values)), slopes_(std::move(slopes)) {
  if (times_.empty() || times_.size() != values_.size() || times_.size() != slopes_.size())
    throw Error(ErrorCode::invalid_argument, "HermiteCurve: inconsistent sample counts");
}

HermiteCurve::HermiteCurve(const Trajectory& traj) : times_(traj.times), values_(traj.frames) {
  if (times_.empty() || times_.size() != values_.size())
    throw Error(ErrorCode::invalid_argument, "HermiteCurve: inconsistent sample counts");
  slopes_.reserve(values_.size());
  for (std::size_t i = 0; i < values_.size(); ++i) slopes_.push_back(frame_derivative(traj, i));
}

std::size_t HermiteCurve::interval(double t) const {
  if (times_.size() < 2) return 0;
  const auto it = std::upper_bound(times_.begin(), times_.end(), t);
  std::size_t idx = it == times_.begin() ? 0 : static_cast<std::size_t>(it - times_.begin()) - 1;
  return std::min(idx, times_.size() - 2);
}

Matrix HermiteCurve::value(double t) const {
  if (times_.size() < 2) return values_[0];
  const std::size_t i = interval(t);
  const double h = times_[i + 1] - times_[i];
  const double s = std::clamp((t - times_[i]) / h, 0.0, 1.0);
  const double s2 = s * s, s3 = s2 * s;
  return (2 * s3 - 3 * s2 + 1) * values_[i] + (s3 - 2 * s2 + s) * h * slopes_[i] + (-2 * s3 + 3 * s2) * values_[i + 1] +
         (s3 - s2) * h * slopes_[i + 1];
}

Matrix HermiteCurve::derivative(double t) const {
  if (times_.size() < 2) return slopes_[0];
  const std::size_t i = interval(t);
  const double h = times_[i + 1] - times_[i];
  const double s = std::clamp((t - times_[i]) / h, 0.0, 1.0);
  const double s2 = s * s;
  return ((6 * s2 - 6 * s) / h) * values_[i] + (3 * s2 - 4 * s + 1) * slopes_[i] +
         ((-6 * s2 + 6 * s) / h) * values_[i + 1] + (3 * s2 - 2 * s) * slopes_[i + 1];
}

MatrixFunction interpolate(const Trajectory& traj) {
  auto curve = std::make_shared<HermiteCurve>(traj);
  return [curve](double t) { return curve->value(t); };
}

Matrix polar_unitary(const Matrix& m) {
  Eigen::JacobiSVD<Matrix> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
  return svd.matrixU() * svd.matrixV().adjoint();
}

// ---------------------------------------------------------------------------
// Integrators

Trajectory evolve_von_neumann(const MatrixFunction& hamiltonian, const DensityOperator& rho0, double tau, int steps,
                              const Context& ctx) {
  require_grid(tau, steps, "evolve_von_neumann");
  const Eigen::Index n = rho0.dim();
  const Complex scale = 1.0 / (kI * ctx.hbar);
  auto rhs = [&](double t, const Matrix& rho) {
    const Matrix h = hamiltonian(t);
    return Matrix(scale * (h * rho - rho * h));
  };

  Trajectory out;
  out.kind = FrameKind::density;
  out.times = uniform_grid(tau, steps);
  out.frames.reserve(out.times.size());
  out.frames.push_back(rho0.matrix());
  checked_hamiltonian(hamiltonian, out.times[0], n, ctx);
  Matrix rho = rho0.matrix();
  for (int i = 0; i < steps; ++i) {
    const double t0 = out.times[static_cast<std::size_t>(i)];
    const double t1 = out.times[static_cast<std::size_t>(i) + 1];
    checked_hamiltonian(hamiltonian, t1, n, ctx);
    rho = rk4_step(rhs, t0, t1, rho);
    rho = 0.5 * (rho + rho.adjoint());
    try {
      DensityOperator(rho, ctx.trajectory_tol);
    } catch (const Error& e) {
      drift("evolve_von_neumann", t1, e, steps);
    }
    out.frames.push_back(rho);
  }
  return out;
}

Trajectory evolve_schrodinger(const MatrixFunction& hamiltonian, const Purification& psi0, double tau, int steps,
                              const Context& ctx) {
  require_grid(tau, steps, "evolve_schrodinger");
  const Eigen::Index n = psi0.matrix().rows();
  const Complex scale = 1.0 / (kI * ctx.hbar);
  auto rhs = [&](double t, const Matrix& u) { return Matrix(scale * (hamiltonian(t) * u)); };

  Trajectory out;
  out.kind = FrameKind::purification;
  out.times = uniform_grid(tau, steps);
  out.frames.reserve(out.times.size());
  out.frames.push_back(psi0.matrix());
  checked_hamiltonian(hamiltonian, out.times[0], n, ctx);
  const Context frame_ctx = with_fiber_tol(ctx, ctx.trajectory_tol);
  Matrix u = Matrix::Identity(n, n);
  for (int i = 0; i < steps; ++i) {
    const double t0 = out.times[static_cast<std::size_t>(i)];
    const double t1 = out.times[static_cast<std::size_t>(i) + 1];
    checked_hamiltonian(hamiltonian, t1, n, ctx);
    u = polar_unitary(rk4_step(rhs, t0, t1, u));
    Matrix psi = u * psi0.matrix();
    try {
      Purification(psi, psi0.spectrum(), frame_ctx);
    } catch (const Error& e) {
      drift("evolve_schrodinger", t1, e, steps);
    }
    out.frames.push_back(std::move(psi));
  }
  return out;
}

std::vector<Matrix> ordered_exponential_samples(const MatrixFunction& xi, double t, int steps, const Context& ctx) {
  require_grid(t, steps, "neg_time_ordered_exp");
  const std::vector<double> grid = uniform_grid(t, steps);
  auto check = [&](double s) {
    const Matrix x = xi(s);
    if (x.rows() != x.cols() || anti_hermitian_defect(x) > std::max(ctx.hermitian_tol, 1e-9)) {
      std::ostringstream os;
      os << "neg_time_ordered_exp: control at t=" << s << " is not anti-Hermitian";
      throw Error(ErrorCode::validation, os.str());
    }
    return x.rows();
  };
  const Eigen::Index k = check(grid[0]);
  auto rhs = [&](double s, const Matrix& v) { return Matrix(v * xi(s)); };
  std::vector<Matrix> out;
  out.reserve(grid.size());
  out.push_back(Matrix::Identity(k, k));
  for (int i = 0; i < steps; ++i) {
    check(grid[static_cast<std::size_t>(i) + 1]);
    out.push_back(polar_unitary(rk4_step(rhs, grid[static_cast<std::size_t>(i)],
                                         grid[static_cast<std::size_t>(i) + 1], out.back())));
  }
  return out;
}

Matrix neg_time_ordered_exp(const MatrixFunction& xi, double t, int steps, const Context& ctx) {
  if (t == 0.0) return Matrix::Identity(xi(0.0).rows(), xi(0.0).cols());
  return ordered_exponential_samples(xi, t, steps, ctx).back();
}

// ---------------------------------------------------------------------------
// Functionals

double curve_length(const Trajectory& traj, const Context& ctx) {
  if (traj.frames.empty()) throw Error(ErrorCode::invalid_argument, "curve_length: empty trajectory");
  const Context frame_ctx = with_fiber_tol(ctx, ctx.trajectory_tol);
  std::vector<double> speed(traj.size());
  for (std::size_t i = 0; i < traj.size(); ++i) {
    const Matrix d = frame_derivative(traj, i);
    if (traj.kind == FrameKind::density) {
      const DensityOperator rho(traj.frames[i], ctx.trajectory_tol);
      const Purification psi = standard_purification(rho, ctx);
      if (psi.matrix().cols() != rho.dim()) {
        std::ostringstream os;
        os << "curve_length: frame " << i << " has rank " << psi.matrix().cols() << " < " << rho.dim()
           << "; supply a horizontal purification trajectory instead";
        throw Error(ErrorCode::unsupported, os.str());
      }
      const Matrix x = horizontal_lift_vector(psi, 0.5 * (d + d.adjoint()), ctx);
      speed[i] = std::sqrt(std::max(0.0, hs_metric(x, x)));
    } else if (traj.kind == FrameKind::purification) {
      const Purification psi(traj.frames[i], frame_ctx);
      const Matrix x = connection_form(psi, d, ctx).horizontal;
      speed[i] = std::sqrt(std::max(0.0, hs_metric(x, x)));
    } else {
      throw Error(ErrorCode::invalid_argument, "curve_length: expects a density or purification trajectory");
    }
  }
  return trapezoid(traj.times, speed);
}

double energy_dispersion(const MatrixFunction& hamiltonian, const Trajectory& rho_traj, const Context& ctx) {
  if (rho_traj.kind != FrameKind::density)
    throw Error(ErrorCode::invalid_argument, "energy_dispersion: expects a density trajectory");
  Context loose = ctx;
  loose.hermitian_tol = std::max(ctx.hermitian_tol, 1e-9);
  std::vector<double> du(rho_traj.size());
  for (std::size_t i = 0; i < rho_traj.size(); ++i) {
    const DensityOperator rho(rho_traj.frames[i], ctx.trajectory_tol);
    du[i] = uncertainty(rho, Observable(hamiltonian(rho_traj.times[i]), loose)) / ctx.hbar;
  }
  return trapezoid(rho_traj.times, du);
}

double energy_dispersion(const Trajectory& hamiltonian, const Trajectory& rho_traj, const Context& ctx) {
  if (hamiltonian.size() != rho_traj.size())
    throw Error(ErrorCode::invalid_argument, "energy_dispersion: Hamiltonian and density grids differ in length");
  for (std::size_t i = 0; i < rho_traj.size(); ++i)
    if (std::abs(hamiltonian.times[i] - rho_traj.times[i]) > 1e-12 * std::max(1.0, rho_traj.tau()))
      throw Error(ErrorCode::invalid_argument, "energy_dispersion: Hamiltonian and density grids differ");
  const auto& frames = hamiltonian.frames;
  const auto& times = hamiltonian.times;
  return energy_dispersion(
      [&](double t) {
        const auto it = std::lower_bound(times.begin(), times.end(), t);
        return frames[static_cast<std::size_t>(it - times.begin())];
      },
      rho_traj, ctx);
}

Trajectory horizontal_lift(const Trajectory& rho_traj, const Purification& psi0, int steps_per_frame,
                           const Context& ctx) {
  if (rho_traj.kind != FrameKind::density || rho_traj.frames.empty())
    throw Error(ErrorCode::invalid_argument, "horizontal_lift: expects a nonempty density trajectory");
  if (steps_per_frame < 1) throw Error(ErrorCode::invalid_argument, "horizontal_lift: steps_per_frame must be >= 1");
  const Matrix& p0 = psi0.matrix();
  if (p0.rows() != p0.cols())
    throw Error(ErrorCode::unsupported, "horizontal_lift: requires full-rank density operators");
  if (p0.rows() != rho_traj.frames[0].rows())
    throw Error(ErrorCode::invalid_argument, "horizontal_lift: purification and trajectory dimensions differ");
  const double mismatch = (psi0.project() - rho_traj.frames[0]).norm();
  if (mismatch > std::max(ctx.fiber_tol, ctx.trajectory_tol)) {
    std::ostringstream os;
    os << "horizontal_lift: psi0 does not lie over the first frame (mismatch " << mismatch << ")";
    throw Error(ErrorCode::domain, os.str());
  }

  const HermiteCurve rho(rho_traj);
  const Spectrum& sigma = psi0.spectrum();
  const Matrix sqrt_p = sigma.diagonal().cwiseSqrt().cast<Complex>().asDiagonal();
  const Matrix inv_sqrt_p = sigma.diagonal().cwiseSqrt().cwiseInverse().cast<Complex>().asDiagonal();
  auto rhs = [&](double t, const Matrix& psi) {
    const Purification stage = Purification::unchecked(psi, sigma);
    const Eigensystem es = eigh_descending(stage.project());
    const Matrix d = rho.derivative(t);
    const Matrix b = commutator_preimage(es, sigma, 0.5 * (d + d.adjoint()));
    return connection_form(stage, b * psi, ctx).horizontal;
  };

  Trajectory out;
  out.kind = FrameKind::purification;
  out.times = rho_traj.times;
  out.frames.reserve(rho_traj.size());
  out.frames.push_back(p0);
  Matrix psi = p0;
  for (std::size_t i = 0; i + 1 < rho_traj.size(); ++i) {
    const double t0 = rho_traj.times[i];
    const double h = (rho_traj.times[i + 1] - t0) / steps_per_frame;
    for (int s = 0; s < steps_per_frame; ++s) {
      const double a = t0 + s * h;
      const double b = s + 1 == steps_per_frame ? rho_traj.times[i + 1] : t0 + (s + 1) * h;
      psi = rk4_step(rhs, a, b, psi);
      // back onto S(sigma): psi = W P^{1/2} with W the polar factor of psi P^{-1/2}
      psi = polar_unitary(psi * inv_sqrt_p) * sqrt_p;
    }
    out.frames.push_back(psi);
  }
  return out;
}

bool is_distinguishable(const DensityOperator& rho0, const DensityOperator& rho1, double tol) {
  if (rho0.dim() != rho1.dim())
    throw Error(ErrorCode::invalid_argument, "is_distinguishable: dimensions differ");
  return (rho0.matrix() * rho1.matrix()).trace().real() < tol;
}

SpeedLimitReport mt_bound_report(const MatrixFunction& hamiltonian, const DensityOperator& rho0, double tau,
                                 int steps, const Context& ctx) {
  SpeedLimitReport r;
  r.rho = evolve_von_neumann(hamiltonian, rho0, tau, steps, ctx);
  r.distinguishable = is_distinguishable(rho0, DensityOperator(r.rho.frames.back(), ctx.trajectory_tol));
  r.mean_uncertainty_times_tau = ctx.hbar * energy_dispersion(hamiltonian, r.rho, ctx);
  r.bound = std::numbers::pi * ctx.hbar / 2.0;
  r.gap = r.mean_uncertainty_times_tau - r.bound;
  r.satisfied = !r.distinguishable || r.gap >= -1e-8;
  return r;
}

}  // namespace qorbit
