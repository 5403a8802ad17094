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

// qorbit command-line tool. Every operation goes through the C API.

#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "qorbit/qorbit.h"

namespace {

using Json = nlohmann::ordered_json;

constexpr int kExitOk = 0;
constexpr int kExitInput = 1;
constexpr int kExitNotConverged = 2;
constexpr int kExitVerifyFailed = 3;

// Thrown when a C API call fails; carries the message for stderr.
struct CallFailed {
  qorbit_status status;
  std::string message;
};

void check(qorbit_status s) {
  if (s != QORBIT_OK) throw CallFailed{s, qorbit_last_error()};
}

template <class T, void (*Destroy)(T*)>
struct Deleter {
  void operator()(T* p) const { Destroy(p); }
};

using ContextPtr = std::unique_ptr<qorbit_context, Deleter<qorbit_context, qorbit_context_destroy>>;
using MatrixPtr = std::unique_ptr<qorbit_matrix, Deleter<qorbit_matrix, qorbit_matrix_destroy>>;
using TrajectoryPtr = std::unique_ptr<qorbit_trajectory, Deleter<qorbit_trajectory, qorbit_trajectory_destroy>>;
using GeodesicPtr = std::unique_ptr<qorbit_geodesic, Deleter<qorbit_geodesic, qorbit_geodesic_destroy>>;
using ReportPtr = std::unique_ptr<qorbit_report, Deleter<qorbit_report, qorbit_report_destroy>>;

std::string take_string(char* s) {
  std::string out(s ? s : "");
  qorbit_string_free(s);
  return out;
}

MatrixPtr read_matrix(const std::string& path) {
  qorbit_matrix* m = nullptr;
  check(qorbit_matrix_read_json(path.c_str(), &m));
  return MatrixPtr(m);
}

TrajectoryPtr read_trajectory(const std::string& path, qorbit_frame_kind kind) {
  qorbit_trajectory* t = nullptr;
  check(qorbit_trajectory_read(path.c_str(), kind, &t));
  return TrajectoryPtr(t);
}

// True when the JSON file holds a trajectory (has a "times" array).
bool is_trajectory_file(const std::string& path) {
  if (path.size() >= 4 && path.substr(path.size() - 4) == ".csv") return true;
  std::ifstream in(path);
  if (!in) return false;
  const Json j = Json::parse(in, nullptr, false);
  return j.is_object() && j.contains("times");
}

ReportPtr new_report(const std::string& command) {
  qorbit_report* r = nullptr;
  check(qorbit_report_create(command.c_str(), &r));
  return ReportPtr(r);
}

Json report_json(const qorbit_report* r) {
  char* s = nullptr;
  check(qorbit_report_to_json(r, &s));
  return Json::parse(take_string(s));
}

Json matrix_json(const qorbit_matrix* m) {
  char* s = nullptr;
  check(qorbit_matrix_to_json(m, &s));
  return Json::parse(take_string(s));
}

MatrixPtr last_frame(const qorbit_trajectory* t) {
  qorbit_matrix* m = nullptr;
  check(qorbit_trajectory_frame(t, qorbit_trajectory_size(t) - 1, &m));
  return MatrixPtr(m);
}

void write_text(const std::string& path, const std::string& text) {
  check(qorbit_write_text_atomic(path.c_str(), text.c_str()));
}

struct Globals {
  double hbar = 1.0;
  std::optional<int> steps;
  std::optional<std::uint64_t> seed;
  std::optional<double> tol;
  std::string report_path;
};

ContextPtr make_context(const Globals& g) {
  qorbit_context* c = nullptr;
  check(qorbit_context_create(&c));
  ContextPtr ctx(c);
  check(qorbit_context_set_hbar(c, g.hbar));
  if (g.tol) check(qorbit_context_set_validation_tol(c, *g.tol));
  return ctx;
}

void emit_report(const Globals& g, const qorbit_report* r) {
  const Json j = report_json(r);
  if (!g.report_path.empty()) write_text(g.report_path, j.dump(2) + "\n");
  std::cout << j.dump(2) << '\n';
}

std::string output_path(const std::string& dir, const std::string& name) {
  return (std::filesystem::path(dir) / name).string();
}

// ---- subcommands -------------------------------------------------------------

int cmd_distance(const Globals& g, const std::string& rho0_path, const std::string& rho1_path,
                 const std::string& config_path) {
  const ContextPtr ctx = make_context(g);
  const MatrixPtr rho0 = read_matrix(rho0_path);
  const MatrixPtr rho1 = read_matrix(rho1_path);
  qorbit_shooting_config cfg;
  qorbit_shooting_config_default(&cfg);
  if (!config_path.empty()) check(qorbit_shooting_config_read_json(config_path.c_str(), &cfg));
  if (g.seed) cfg.seed = *g.seed;
  if (g.steps) cfg.steps = *g.steps;

  qorbit_distance_result res{};
  check(qorbit_distance(ctx.get(), rho0.get(), rho1.get(), &cfg, &res));
  const MatrixPtr xi0(res.xi0);

  const ReportPtr report = new_report("distance");
  check(qorbit_report_add_input(report.get(), "rho0", rho0_path.c_str()));
  check(qorbit_report_add_input(report.get(), "rho1", rho1_path.c_str()));
  if (!config_path.empty()) check(qorbit_report_add_input(report.get(), "config", config_path.c_str()));
  check(qorbit_report_set_number(report.get(), "distance", res.distance));
  check(qorbit_report_set_number(report.get(), "endpoint_mismatch", res.endpoint_mismatch));
  check(qorbit_report_set_number(report.get(), "restarts_converged", res.restarts_converged));
  check(qorbit_report_add_check(report.get(), "endpoint_mismatch", res.endpoint_mismatch, 0.0, cfg.endpoint_tol,
                                QORBIT_REL_AT_MOST));
  check(qorbit_report_set_seed(report.get(), cfg.seed));

  Json out;
  out["distance"] = res.distance;
  out["converged"] = res.converged != 0;
  out["xi0"] = matrix_json(xi0.get());
  out["report"] = report_json(report.get());
  if (!g.report_path.empty()) write_text(g.report_path, out["report"].dump(2) + "\n");
  std::cout << out.dump(2) << '\n';
  return res.converged ? kExitOk : kExitNotConverged;
}

int cmd_geodesic(const Globals& g, const std::string& rho0_path, const std::string& xi0_path, double tau,
                 const std::string& out_dir, bool closed_form) {
  const ContextPtr ctx = make_context(g);
  const MatrixPtr rho0 = read_matrix(rho0_path);
  const MatrixPtr xi0 = read_matrix(xi0_path);
  const int steps = g.steps.value_or(1000);

  qorbit_geodesic* raw = nullptr;
  if (closed_form) check(qorbit_two_eigenvalue_geodesic(ctx.get(), rho0.get(), xi0.get(), tau, steps, &raw));
  else check(qorbit_geodesic_from(ctx.get(), rho0.get(), xi0.get(), tau, steps, &raw));
  const GeodesicPtr geo(raw);

  double dispersion = 0.0;
  check(qorbit_geodesic_dispersion(ctx.get(), geo.get(), &dispersion));
  const double length = qorbit_geodesic_length(geo.get());

  std::filesystem::create_directories(out_dir);
  const std::pair<qorbit_geodesic_part, const char*> parts[] = {
      {QORBIT_GEODESIC_RHO, "rho.csv"}, {QORBIT_GEODESIC_PSI, "psi.csv"}, {QORBIT_GEODESIC_HAMILTONIAN, "hamiltonian.csv"}};
  std::vector<std::string> written;
  TrajectoryPtr rho;
  for (const auto& [part, name] : parts) {
    qorbit_trajectory* t = nullptr;
    check(qorbit_geodesic_trajectory(geo.get(), part, &t));
    TrajectoryPtr traj(t);
    written.push_back(output_path(out_dir, name));
    check(qorbit_trajectory_write_csv(written.back().c_str(), traj.get()));
    if (part == QORBIT_GEODESIC_RHO) rho = std::move(traj);
  }

  const ReportPtr report = new_report("geodesic");
  check(qorbit_report_add_input(report.get(), "rho0", rho0_path.c_str()));
  check(qorbit_report_add_input(report.get(), "xi0", xi0_path.c_str()));
  check(qorbit_report_set_string(report.get(), "rho_csv", written[0].c_str()));
  check(qorbit_report_set_string(report.get(), "psi_csv", written[1].c_str()));
  check(qorbit_report_set_string(report.get(), "hamiltonian_csv", written[2].c_str()));
  check(qorbit_report_set_number(report.get(), "tau", tau));
  check(qorbit_report_set_number(report.get(), "steps", steps));
  check(qorbit_report_set_number(report.get(), "length", length));
  check(qorbit_report_set_number(report.get(), "dispersion", dispersion));
  check(qorbit_report_set_number(report.get(), "dispersion_minus_length", dispersion - length));
  check(qorbit_report_set_number(report.get(), "max_horizontal_residual",
                                 qorbit_geodesic_max_horizontal_residual(geo.get())));
  check(qorbit_report_set_number(report.get(), "speed_drift", qorbit_geodesic_speed_drift(geo.get())));
  check(qorbit_report_set_matrix(report.get(), "rho_end", last_frame(rho.get()).get()));
  check(qorbit_report_add_check(report.get(), "dispersion_equals_length", dispersion, length, 1e-5,
                                QORBIT_REL_EQUAL));
  check(qorbit_report_add_check(report.get(), "max_horizontal_residual",
                                qorbit_geodesic_max_horizontal_residual(geo.get()), 0.0, 1e-6, QORBIT_REL_AT_MOST));
  emit_report(g, report.get());
  return kExitOk;
}

int cmd_evolve(const Globals& g, const std::string& h_path, const std::string& rho0_path, double tau,
               const std::string& out_path) {
  const ContextPtr ctx = make_context(g);
  const MatrixPtr rho0 = read_matrix(rho0_path);
  const int steps = g.steps.value_or(1000);
  qorbit_trajectory* raw = nullptr;
  if (is_trajectory_file(h_path)) {
    const TrajectoryPtr h = read_trajectory(h_path, QORBIT_FRAME_HAMILTONIAN);
    check(qorbit_evolve_von_neumann_sampled(ctx.get(), h.get(), rho0.get(), steps, &raw));
  } else {
    const MatrixPtr h = read_matrix(h_path);
    check(qorbit_evolve_von_neumann(ctx.get(), h.get(), rho0.get(), tau, steps, &raw));
  }
  const TrajectoryPtr rho(raw);
  check(qorbit_trajectory_write_csv(out_path.c_str(), rho.get()));

  double drift = 0.0;
  check(qorbit_spectrum_drift(rho.get(), &drift));
  const ReportPtr report = new_report("evolve");
  check(qorbit_report_add_input(report.get(), "hamiltonian", h_path.c_str()));
  check(qorbit_report_add_input(report.get(), "rho0", rho0_path.c_str()));
  check(qorbit_report_set_string(report.get(), "rho_csv", out_path.c_str()));
  check(qorbit_report_set_number(report.get(), "tau", qorbit_trajectory_time(rho.get(), qorbit_trajectory_size(rho.get()) - 1)));
  check(qorbit_report_set_number(report.get(), "steps", steps));
  check(qorbit_report_set_number(report.get(), "spectrum_drift", drift));
  check(qorbit_report_set_matrix(report.get(), "rho_end", last_frame(rho.get()).get()));
  check(qorbit_report_add_check(report.get(), "spectrum_drift", drift, 0.0, 1e-7, QORBIT_REL_AT_MOST));
  emit_report(g, report.get());
  return kExitOk;
}

int cmd_lift(const Globals& g, const std::string& rho_path, const std::string& psi0_path, int steps_per_frame,
             const std::string& out_path) {
  const ContextPtr ctx = make_context(g);
  const TrajectoryPtr rho = read_trajectory(rho_path, QORBIT_FRAME_DENSITY);
  const MatrixPtr psi0 = read_matrix(psi0_path);
  qorbit_trajectory* raw = nullptr;
  check(qorbit_horizontal_lift(ctx.get(), rho.get(), psi0.get(), steps_per_frame, &raw));
  const TrajectoryPtr psi(raw);
  check(qorbit_trajectory_write_csv(out_path.c_str(), psi.get()));

  double vertical = 0.0, projection = 0.0, base_length = 0.0, lift_length = 0.0;
  check(qorbit_max_vertical_velocity(ctx.get(), psi.get(), &vertical));
  check(qorbit_projection_error(psi.get(), rho.get(), &projection));
  check(qorbit_curve_length(ctx.get(), rho.get(), &base_length));
  check(qorbit_curve_length(ctx.get(), psi.get(), &lift_length));

  const ReportPtr report = new_report("lift");
  check(qorbit_report_add_input(report.get(), "rho", rho_path.c_str()));
  check(qorbit_report_add_input(report.get(), "psi0", psi0_path.c_str()));
  check(qorbit_report_set_string(report.get(), "psi_csv", out_path.c_str()));
  check(qorbit_report_set_number(report.get(), "max_vertical_velocity", vertical));
  check(qorbit_report_set_number(report.get(), "projection_error", projection));
  check(qorbit_report_set_number(report.get(), "base_length", base_length));
  check(qorbit_report_set_number(report.get(), "lift_length", lift_length));
  check(qorbit_report_set_number(report.get(), "length_mismatch", lift_length - base_length));
  check(qorbit_report_add_check(report.get(), "max_vertical_velocity", vertical, 0.0, 1e-6, QORBIT_REL_AT_MOST));
  check(qorbit_report_add_check(report.get(), "projection_error", projection, 0.0, 1e-6, QORBIT_REL_AT_MOST));
  check(qorbit_report_add_check(report.get(), "lift_length_equals_base_length", lift_length, base_length, 1e-5,
                                QORBIT_REL_EQUAL));
  emit_report(g, report.get());
  return kExitOk;
}

int cmd_synth(const Globals& g, const std::string& state_path, const std::string& xi_path, double tau,
              bool state_is_purification, const std::string& out_path) {
  const ContextPtr ctx = make_context(g);
  MatrixPtr state = read_matrix(state_path);
  MatrixPtr psi0;
  if (state_is_purification) {
    psi0 = MatrixPtr(state.release());
  } else {
    qorbit_matrix* p = nullptr;
    check(qorbit_standard_purification(ctx.get(), state.get(), &p));
    psi0 = MatrixPtr(p);
  }

  TrajectoryPtr xi;
  if (is_trajectory_file(xi_path)) {
    xi = read_trajectory(xi_path, QORBIT_FRAME_CONTROL);
  } else {
    const MatrixPtr constant = read_matrix(xi_path);
    const double times[2] = {0.0, tau};
    const qorbit_matrix* frames[2] = {constant.get(), constant.get()};
    qorbit_trajectory* t = nullptr;
    check(qorbit_trajectory_create(QORBIT_FRAME_CONTROL, 2, times, frames, &t));
    xi = TrajectoryPtr(t);
  }
  const int steps = g.steps.value_or(1000);
  qorbit_trajectory* raw = nullptr;
  check(qorbit_synth_hamiltonian(ctx.get(), psi0.get(), xi.get(), steps, &raw));
  const TrajectoryPtr h(raw);
  check(qorbit_trajectory_write_csv(out_path.c_str(), h.get()));

  const ReportPtr report = new_report("synth");
  check(qorbit_report_add_input(report.get(), state_is_purification ? "psi0" : "rho0", state_path.c_str()));
  check(qorbit_report_add_input(report.get(), "xi", xi_path.c_str()));
  check(qorbit_report_set_string(report.get(), "hamiltonian_csv", out_path.c_str()));
  check(qorbit_report_set_number(report.get(), "steps", steps));
  check(qorbit_report_set_matrix(report.get(), "hamiltonian_start", [&] {
    qorbit_matrix* m = nullptr;
    check(qorbit_trajectory_frame(h.get(), 0, &m));
    return MatrixPtr(m);
  }().get()));
  check(qorbit_report_set_matrix(report.get(), "hamiltonian_end", last_frame(h.get()).get()));
  emit_report(g, report.get());
  return kExitOk;
}

struct VerifyArgs {
  int samples = -1;
  std::string hamiltonian;
  std::string rho0;
  double tau = 1.0;
  bool expect_saturation = false;
  bool json = false;
};

int finish_verify(const Globals& g, const VerifyArgs& v, const qorbit_report* r) {
  const Json j = report_json(r);
  if (!g.report_path.empty()) write_text(g.report_path, j.dump(2) + "\n");
  if (v.json) {
    std::cout << j.dump(2) << '\n';
  } else {
    char* table = nullptr;
    check(qorbit_report_check_table(r, &table));
    std::cout << take_string(table);
  }
  if (qorbit_report_passed(r)) return kExitOk;
  for (const Json& c : j["checks"]) {
    if (c["passed"].get<bool>()) continue;
    std::cerr << "FAIL " << c["name"].get<std::string>() << ": " << c["lhs"].dump() << ' '
              << c["relation"].get<std::string>() << ' ' << c["rhs"].dump() << " (tolerance "
              << c["tolerance"].dump() << ")";
    if (c.contains("detail")) std::cerr << " [" << c["detail"].get<std::string>() << ']';
    std::cerr << '\n';
  }
  return kExitVerifyFailed;
}

int cmd_verify(const Globals& g, const std::string& suite, const VerifyArgs& v) {
  const ContextPtr ctx = make_context(g);
  const std::uint64_t seed = g.seed.value_or(7);
  qorbit_report* raw = nullptr;
  MatrixPtr h, rho0;
  if (!v.hamiltonian.empty()) h = read_matrix(v.hamiltonian);
  if (!v.rho0.empty()) rho0 = read_matrix(v.rho0);
  if (suite == "decomposition") {
    check(qorbit_verify_decomposition(ctx.get(), v.samples < 0 ? 200 : v.samples, seed, &raw));
  } else if (suite == "dispersion") {
    const int samples = v.samples >= 0 ? v.samples : (h ? 0 : 50);
    check(qorbit_verify_dispersion(ctx.get(), h.get(), rho0.get(), v.tau, g.steps.value_or(400), samples, seed, &raw));
  } else {
    const int samples = v.samples >= 0 ? v.samples : 50;
    check(qorbit_verify_mt(ctx.get(), h.get(), rho0.get(), v.tau, g.steps.value_or(1000), v.expect_saturation ? 1 : 0,
                           samples, seed, &raw));
  }
  const ReportPtr report(raw);
  if (!v.hamiltonian.empty()) check(qorbit_report_add_input(report.get(), "hamiltonian", v.hamiltonian.c_str()));
  if (!v.rho0.empty()) check(qorbit_report_add_input(report.get(), "rho0", v.rho0.c_str()));
  return finish_verify(g, v, report.get());
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"qorbit: geometry of unitary orbits of density operators"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_version_flag("--version", std::string(qorbit_version()));

  Globals g;
  app.add_option("--hbar", g.hbar, "Reduced Planck constant")->check(CLI::PositiveNumber);
  app.add_option("--steps", g.steps, "Integration steps (grid intervals)")->check(CLI::PositiveNumber);
  app.add_option("--seed", g.seed, "Seed for sampled checks and shooting restarts");
  app.add_option("--tol", g.tol, "Validation tolerance for input matrices")->check(CLI::PositiveNumber);
  app.add_option("--report", g.report_path, "Also write the JSON report to this file");

  std::string a, b, c, out;
  double tau = 1.0;
  bool flag = false;
  int steps_per_frame = 4;

  CLI::App* distance = app.add_subcommand("distance", "Riemannian distance between isospectral density operators");
  distance->add_option("rho0", a, "Matrix JSON")->required();
  distance->add_option("rho1", b, "Matrix JSON")->required();
  distance->add_option("config", c, "Shooting configuration JSON");

  CLI::App* geodesic = app.add_subcommand("geodesic", "Geodesic from rho0 with initial control xi0");
  geodesic->add_option("rho0", a, "Matrix JSON")->required();
  geodesic->add_option("xi0", b, "Matrix JSON")->required();
  geodesic->add_option("--tau", tau, "Duration");
  geodesic->add_option("--out", out, "Output directory for rho.csv, psi.csv, hamiltonian.csv")->required();
  geodesic->add_flag("--closed-form", flag, "Use the constant-control form (two distinct eigenvalues)");

  CLI::App* evolve = app.add_subcommand("evolve", "Von Neumann evolution");
  evolve->add_option("hamiltonian", a, "Matrix JSON, or trajectory JSON/CSV of Hamiltonian samples")->required();
  evolve->add_option("rho0", b, "Matrix JSON")->required();
  evolve->add_option("--tau", tau, "Duration (constant Hamiltonian)");
  evolve->add_option("--out", out, "Output CSV")->required();

  CLI::App* lift = app.add_subcommand("lift", "Horizontal lift of a density trajectory");
  lift->add_option("rho", a, "Density trajectory (JSON or CSV)")->required();
  lift->add_option("psi0", b, "Initial purification, matrix JSON")->required();
  lift->add_option("--steps-per-frame", steps_per_frame, "RK4 substeps between frames")->check(CLI::PositiveNumber);
  lift->add_option("--out", out, "Output CSV")->required();

  CLI::App* synth = app.add_subcommand("synth", "Hamiltonian synthesized from a control curve");
  synth->add_option("state", a, "rho0 (or psi0 with --purification), matrix JSON")->required();
  synth->add_option("xi", b, "Constant control (matrix JSON) or control trajectory")->required();
  synth->add_option("--tau", tau, "Duration for a constant control");
  synth->add_flag("--purification", flag, "Treat the state as a purification psi0");
  synth->add_option("--out", out, "Output CSV")->required();

  CLI::App* verify = app.add_subcommand("verify", "Run an invariant suite");
  verify->require_subcommand(1);
  VerifyArgs v;
  std::string suite;
  const std::pair<const char*, const char*> suites[] = {
      {"decomposition", "Uncertainty decomposition and bound on random (rho, A) pairs"},
      {"dispersion", "Energy dispersion against curve length"},
      {"mt", "Mandelstam-Tamm bound for distinguishable endpoints"}};
  for (const auto& [name, description] : suites) {
    CLI::App* s = verify->add_subcommand(name, description);
    s->add_option("--samples", v.samples, "Number of sampled cases");
    s->add_flag("--json", v.json, "Print the JSON report instead of the check table");
    if (std::string(name) != "decomposition") {
      s->add_option("--hamiltonian", v.hamiltonian, "Constant Hamiltonian, matrix JSON");
      s->add_option("--rho0", v.rho0, "Initial state, matrix JSON");
      s->add_option("--tau", v.tau, "Duration");
    }
    if (std::string(name) == "mt") s->add_flag("--expect-saturation", v.expect_saturation, "Also check equality");
    s->callback([&suite, name] { suite = name; });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInput;
  }

  try {
    if (*distance) return cmd_distance(g, a, b, c);
    if (*geodesic) return cmd_geodesic(g, a, b, tau, out, flag);
    if (*evolve) return cmd_evolve(g, a, b, tau, out);
    if (*lift) return cmd_lift(g, a, b, steps_per_frame, out);
    if (*synth) return cmd_synth(g, a, b, tau, flag, out);
    if (*verify) return cmd_verify(g, suite, v);
  } catch (const CallFailed& e) {
    std::cerr << "error: " << qorbit_status_string(e.status) << ": " << e.message << '\n';
    return kExitInput;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInput;
  }
  return kExitInput;
}
