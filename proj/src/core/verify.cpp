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

#include "verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "connection.hpp"
#include "control.hpp"
#include "dynamics.hpp"
#include "sampling.hpp"
#include "state_space.hpp"

namespace qorbit {

namespace {

const Complex kI(0.0, 1.0);

std::string sample_label(int i, Eigen::Index n, const char* what = "sample") {
  std::ostringstream os;
  os << what << ' ' << i << ", n=" << n;
  return os.str();
}

// Worst case of a family of scalar checks.
struct Extreme {
  double value;
  std::string detail;
  bool seen = false;

  void max(double v, const std::string& d) {
    if (!seen || v > value) value = v, detail = d, seen = true;
  }
  void min(double v, const std::string& d) {
    if (!seen || v < value) value = v, detail = d, seen = true;
  }
};

struct DecompositionSample {
  double variance;
  double split;  // hbar^2 (g + beta_perp)
  double delta;
  double bound;  // hbar sqrt(g)
  bool parallel;
};

DecompositionSample decompose(const DensityOperator& rho, const Observable& a, const Context& ctx) {
  const Spectrum sigma = spectrum_of(rho, ctx.rank_tol);
  const double delta = uncertainty(rho, a);
  const Matrix rho_dot = (a.matrix() * rho.matrix() - rho.matrix() * a.matrix()) / (kI * ctx.hbar);
  const double g = submersion_metric(rho, rho_dot, rho_dot, ctx);
  const ObservableGauge xa = xi_A(rho, a, ctx);
  const double b = gauge_metric(xa.xi_perp.matrix(), xa.xi_perp.matrix(), sigma);
  const double h2 = ctx.hbar * ctx.hbar;
  return {delta * delta, h2 * (g + b), delta, ctx.hbar * std::sqrt(std::max(0.0, g)),
          is_parallel_at(a, rho, 1e-10, ctx)};
}

Matrix time_dependent_sample(const Matrix& a, const Matrix& b, const Matrix& c, double w, double t) {
  return a + std::cos(w * t) * b + t * c;
}

}  // namespace

RunReport verify_decomposition(int samples, std::uint64_t seed, const Context& ctx) {
  if (samples < 1) throw Error(ErrorCode::invalid_argument, "verify decomposition: samples must be positive");
  RunReport report("verify decomposition");
  report.set_seed(seed);
  Sampler s(seed);

  Extreme identity, bound, equality;
  int parallel_found = 0, parallel_expected = 0;
  for (int i = 0; i < samples; ++i) {
    const Eigen::Index n = 2 + i % 3;
    const DensityOperator rho(s.density(n, n, 0.2), ctx);
    const Purification psi = standard_purification(rho, ctx);
    const Spectrum& sigma = psi.spectrum();
    const Matrix q = psi.matrix() * sigma.diagonal().cwiseSqrt().cwiseInverse().cast<Complex>().asDiagonal();

    const Observable generic(s.hermitian(n, s.uniform(0.2, 3.0)), ctx);
    Matrix par = kI * ctx.hbar * q * s.horizontal_control(sigma, s.uniform(0.1, 2.0)) * q.adjoint();
    const Observable parallel(Matrix(0.5 * (par + par.adjoint())), ctx);

    for (int variant = 0; variant < 2; ++variant) {
      const Observable& a = variant == 0 ? generic : parallel;
      const std::string label = sample_label(i, n, variant == 0 ? "sample" : "parallel sample");
      const DecompositionSample d = decompose(rho, a, ctx);
      identity.max(std::abs(d.variance - d.split) / std::max(d.variance, std::numeric_limits<double>::min()), label);
      bound.min(d.delta - d.bound, label);
      if (variant == 1) ++parallel_expected;
      if (d.parallel) {
        if (variant == 1) ++parallel_found;
        equality.max(std::abs(d.delta - d.bound), label);
      }
    }
  }

  report.set_output("samples", samples);
  report.set_output("parallel_samples", parallel_found);
  report.add_check(make_check("decomposition_identity_relative_error", identity.value, 0.0, 1e-9, Relation::at_most,
                              identity.detail));
  report.add_check(
      make_check("uncertainty_bound_slack", bound.value, 0.0, 1e-10, Relation::at_least, bound.detail));
  report.add_check(make_check("parallel_observables_detected", parallel_found, parallel_expected, 0.0,
                              Relation::equal));
  if (equality.seen)
    report.add_check(make_check("parallel_equality_gap", equality.value, 0.0, 1e-8, Relation::at_most,
                                equality.detail));
  return report;
}

RunReport verify_dispersion(const DriveInput& drive, int samples, std::uint64_t seed, const Context& ctx) {
  RunReport report("verify dispersion");
  report.set_seed(seed);

  if (drive.hamiltonian || drive.rho0) {
    if (!drive.hamiltonian || !drive.rho0)
      throw Error(ErrorCode::invalid_argument, "verify dispersion: a Hamiltonian and rho0 must be given together");
    const DensityOperator rho0(*drive.rho0, ctx);
    const MatrixFunction h = constant_function(*drive.hamiltonian);
    const Trajectory rho = evolve_von_neumann(h, rho0, drive.tau, drive.steps, ctx);
    const Trajectory psi = evolve_schrodinger(h, standard_purification(rho0, ctx), drive.tau, drive.steps, ctx);
    const double dispersion = energy_dispersion(h, rho, ctx);
    const double length = curve_length(psi, ctx);
    report.set_output("dispersion", dispersion);
    report.set_output("length", length);
    report.add_check(make_check("dispersion_at_least_length", dispersion, length, 1e-6, Relation::at_least));
  }

  if (samples > 0) {
    Sampler s(seed);
    Extreme slack, witness, witness_curve;
    for (int i = 0; i < samples; ++i) {
      const Eigen::Index n = 2 + i % 3;
      const DensityOperator rho0(s.density(n, n, 0.2), ctx);
      const Matrix a = s.hermitian(n), b = s.hermitian(n), c = s.hermitian(n);
      const double w = s.uniform(0.5, 4.0);
      const MatrixFunction h = [=](double t) { return time_dependent_sample(a, b, c, w, t); };
      const Trajectory rho = evolve_von_neumann(h, rho0, 1.0, 400, ctx);
      slack.min(energy_dispersion(h, rho, ctx) - curve_length(rho, ctx), sample_label(i, n));
    }
    const int witnesses = std::min(samples, 12);
    for (int i = 0; i < witnesses; ++i) {
      const Eigen::Index n = 2 + i % 3;
      const DensityOperator rho0(s.density(n, n, 0.2), ctx);
      const Spectrum sigma = spectrum_of(rho0, ctx.rank_tol);
      const GaugeElement xi0(s.horizontal_control(sigma, s.uniform(0.2, 1.0)), ctx);
      const GeodesicSolution g = geodesic_from(rho0, xi0, 1.0, 200, ctx);
      const double dispersion = energy_dispersion(g.hamiltonian_function, g.rho_curve, ctx);
      witness.max(std::abs(dispersion - g.length), sample_label(i, n, "geodesic"));
      witness_curve.max(std::abs(dispersion - curve_length(g.rho_curve, ctx)), sample_label(i, n, "geodesic"));
    }
    report.set_output("samples", samples);
    report.set_output("geodesic_witnesses", witnesses);
    report.add_check(make_check("random_drives_dispersion_minus_length", slack.value, 0.0, 1e-6, Relation::at_least,
                                slack.detail));
    report.add_check(make_check("geodesic_dispersion_equals_length", witness.value, 0.0, 1e-5, Relation::at_most,
                                witness.detail));
    report.add_check(make_check("geodesic_dispersion_equals_curve_length", witness_curve.value, 0.0, 1e-5,
                                Relation::at_most, witness_curve.detail));
  }
  if (report.checks().empty())
    throw Error(ErrorCode::invalid_argument, "verify dispersion: nothing to check (give a drive or samples > 0)");
  return report;
}

RunReport verify_mt(const DriveInput& drive, bool expect_saturation, int samples, std::uint64_t seed,
                    const Context& ctx) {
  RunReport report("verify mt");
  report.set_seed(seed);

  Matrix h0, r0;
  double tau = drive.tau;
  if (drive.hamiltonian || drive.rho0) {
    if (!drive.hamiltonian || !drive.rho0)
      throw Error(ErrorCode::invalid_argument, "verify mt: a Hamiltonian and rho0 must be given together");
    h0 = *drive.hamiltonian;
    r0 = *drive.rho0;
  } else {
    h0 = Matrix::Zero(2, 2);
    h0(0, 1) = Complex(0.0, -ctx.hbar);
    h0(1, 0) = Complex(0.0, ctx.hbar);
    r0 = Matrix::Zero(2, 2);
    r0(0, 0) = 1.0;
    tau = std::numbers::pi / 2.0;
    expect_saturation = true;
  }
  const DensityOperator rho0(r0, ctx);
  const SpeedLimitReport mt = mt_bound_report(constant_function(h0), rho0, tau, drive.steps, ctx);
  const double overlap = (rho0.matrix() * mt.rho.frames.back()).trace().real();
  report.set_output("tau", tau);
  report.set_output("mean_uncertainty_times_tau", mt.mean_uncertainty_times_tau);
  report.set_output("bound", mt.bound);
  report.set_output("gap", mt.gap);
  report.add_check(make_check("endpoints_distinguishable", overlap, 0.0, 1e-9, Relation::at_most));
  report.add_check(make_check("mt_bound", mt.mean_uncertainty_times_tau, mt.bound, 1e-8, Relation::at_least));
  if (expect_saturation)
    report.add_check(make_check("mt_saturation", mt.mean_uncertainty_times_tau, mt.bound, 1e-6, Relation::equal));

  if (samples > 0) {
    Sampler s(seed);
    Extreme worst_overlap, worst_gap;
    for (int i = 0; i < samples; ++i) {
      const DistinguishableDrive d = random_distinguishable_drive(s, 1.0, ctx.hbar);
      const DensityOperator rho(d.rho0, ctx);
      const SpeedLimitReport r = mt_bound_report(d.hamiltonian, rho, d.tau, 1000, ctx);
      worst_overlap.max((rho.matrix() * r.rho.frames.back()).trace().real(), sample_label(i, 4, "drive"));
      worst_gap.min(r.gap, sample_label(i, 4, "drive"));
    }
    report.set_output("samples", samples);
    report.add_check(make_check("random_drives_distinguishable", worst_overlap.value, 0.0, 1e-9, Relation::at_most,
                                worst_overlap.detail));
    report.add_check(make_check("random_drives_mt_gap", worst_gap.value, 0.0, 1e-8, Relation::at_least,
                                worst_gap.detail));
  }
  return report;
}

}  // namespace qorbit
