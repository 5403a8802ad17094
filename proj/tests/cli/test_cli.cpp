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

// Runs the qorbit executable and checks outputs, files and exit codes.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>
#include <unistd.h>

#include <array>
#include <cmath>
#include <complex>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

namespace fs = std::filesystem;
using Json = nlohmann::json;

namespace {

struct Run {
  int exit_code = -1;
  std::string out;  // stdout followed by stderr
};

std::string data(const std::string& name) { return std::string(QORBIT_TEST_DATA) + "/" + name; }

Run run(const std::string& args) {
  const std::string cmd = std::string(QORBIT_CLI) + " " + args + " 2>&1";
  Run r;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::array<char, 4096> buf{};
  while (std::fgets(buf.data(), buf.size(), pipe)) r.out += buf.data();
  const int status = pclose(pipe);
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

// Stdout only, parsed as JSON.
Json run_json(const std::string& args, int expected_exit = 0) {
  const std::string cmd = std::string(QORBIT_CLI) + " " + args + " 2>/dev/null";
  std::string out;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::array<char, 4096> buf{};
  while (std::fgets(buf.data(), buf.size(), pipe)) out += buf.data();
  const int status = pclose(pipe);
  CHECK(WEXITSTATUS(status) == expected_exit);
  return Json::parse(out);
}

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("qorbit_cli_test_" + std::to_string(::getpid())) / name;
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

struct Csv {
  std::vector<double> times;
  std::vector<std::vector<std::complex<double>>> frames;
};

Csv read_csv(const fs::path& path) {
  std::ifstream in(path);
  REQUIRE(in.good());
  std::string line;
  std::getline(in, line);
  Csv c;
  while (std::getline(in, line)) {
    std::stringstream row(line);
    std::string cell;
    std::vector<double> v;
    while (std::getline(row, cell, ',')) v.push_back(std::stod(cell));
    c.times.push_back(v[0]);
    std::vector<std::complex<double>> f;
    for (std::size_t i = 1; i + 1 < v.size(); i += 2) f.emplace_back(v[i], v[i + 1]);
    c.frames.push_back(f);
  }
  return c;
}

double frame_distance(const std::vector<std::complex<double>>& a, const std::vector<std::complex<double>>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += std::norm(a[i] - b[i]);
  return std::sqrt(s);
}

// rho(1) for the qubit fixture: R diag(0.75, 0.25) R^T with R the rotation by 0.5.
std::vector<std::complex<double>> qubit_endpoint() {
  const double c = std::cos(0.5), s = std::sin(0.5);
  return {0.75 * c * c + 0.25 * s * s, -0.5 * c * s, -0.5 * c * s, 0.75 * s * s + 0.25 * c * c};
}

}  // namespace

TEST_CASE("distance on the qubit fixture") {
  const Json j = run_json("distance " + data("qubit_rho0.json") + " " + data("qubit_rho1.json"));
  CHECK(std::abs(j["distance"].get<double>() - 0.5) <= 1e-5);
  CHECK(j["converged"] == true);
  CHECK(j["xi0"]["rows"] == 2);
  CHECK(j["report"]["command"] == "distance");
}

TEST_CASE("distance between identical files is zero") {
  const Json j = run_json("distance " + data("qubit_rho0.json") + " " + data("qubit_rho0.json"));
  CHECK(j["distance"] == 0.0);
}

TEST_CASE("distance with a configuration file") {
  const Json j = run_json("distance " + data("qubit_rho0.json") + " " + data("qubit_rho1.json") + " " +
                          data("shooting.json"));
  CHECK(j["report"]["seed"] == 42);
  CHECK(j["report"]["inputs"]["config"].get<std::string>().find("shooting.json") != std::string::npos);
}

TEST_CASE("distance between non-isospectral states exits 1 naming both spectra") {
  const Run r = run("distance " + data("rho_70_30.json") + " " + data("rho_60_40.json"));
  CHECK(r.exit_code == 1);
  CHECK(r.out.find("0.7, 0.3") != std::string::npos);
  CHECK(r.out.find("0.6, 0.4") != std::string::npos);
}

TEST_CASE("missing or malformed inputs exit 1") {
  CHECK(run("distance /nonexistent.json " + data("qubit_rho0.json")).exit_code == 1);
  CHECK(run("distance " + data("shooting.json") + " " + data("qubit_rho0.json")).exit_code == 1);
  CHECK(run("bogus").exit_code == 1);
  CHECK(run("").exit_code == 1);
}

TEST_CASE("geodesic on the qubit fixture") {
  const fs::path dir = scratch("geo");
  const Json rep = run_json("geodesic " + data("qubit_rho0.json") + " " + data("qubit_xi0.json") +
                            " --tau 1 --steps 1000 --out " + dir.string());
  for (const char* f : {"rho.csv", "psi.csv", "hamiltonian.csv"}) CHECK(fs::exists(dir / f));
  const Csv rho = read_csv(dir / "rho.csv");
  REQUIRE(rho.frames.size() == 1001);
  CHECK(frame_distance(rho.frames.back(), qubit_endpoint()) < 1e-6);
  CHECK(std::abs(rep["outputs"]["dispersion"].get<double>() - rep["outputs"]["length"].get<double>()) < 1e-5);
  CHECK(rep["outputs"].contains("dispersion_minus_length"));
  CHECK(rep["passed"] == true);

  const fs::path closed = scratch("geo_closed");
  const Json rep2 = run_json("geodesic " + data("qubit_rho0.json") + " " + data("qubit_xi0.json") +
                             " --closed-form --out " + closed.string());
  CHECK(frame_distance(read_csv(closed / "rho.csv").frames.back(), qubit_endpoint()) < 1e-9);
}

TEST_CASE("geodesic with zero control is constant") {
  const fs::path dir = scratch("geo0");
  run_json("geodesic " + data("qubit_rho0.json") + " " + data("zero2.json") + " --steps 20 --out " + dir.string());
  const Csv rho = read_csv(dir / "rho.csv");
  for (const auto& f : rho.frames) CHECK(frame_distance(f, rho.frames.front()) == 0.0);
}

TEST_CASE("three-level geodesic reports the horizontal residual") {
  const fs::path dir = scratch("geo3");
  const Json rep = run_json("geodesic " + data("three_rho0.json") + " " + data("three_xi0.json") + " --out " +
                            dir.string());
  CHECK(rep["outputs"]["max_horizontal_residual"].get<double>() < 1e-6);
}

TEST_CASE("non-horizontal control exits 1 and writes nothing") {
  const fs::path dir = scratch("geo_bad");
  const Run r = run("geodesic " + data("three_rho0.json") + " " + data("three_xi_vertical.json") + " --out " +
                    (dir / "sub").string());
  CHECK(r.exit_code == 1);
  CHECK(r.out.find("parallel part norm") != std::string::npos);
  CHECK_FALSE(fs::exists(dir / "sub" / "rho.csv"));
}

TEST_CASE("verify mt on the default fixture saturates") {
  const Run r = run("verify mt");
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("mt_saturation") != std::string::npos);
  CHECK(r.out.find("FAIL") == std::string::npos);
}

TEST_CASE("verify decomposition with 200 samples and seed 7") {
  const Run r = run("--seed 7 verify decomposition --samples 200");
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("decomposition_identity_relative_error") != std::string::npos);
  const Json j = run_json("verify decomposition --samples 200 --seed 7 --json");
  CHECK(j["seed"] == 7);
  CHECK(j["passed"] == true);
}

TEST_CASE("verify dispersion with a multiple of the identity") {
  const Json j = run_json("verify dispersion --hamiltonian " + data("identity2.json") + " --rho0 " +
                          data("qubit_rho0.json") + " --samples 0 --json");
  CHECK(j["passed"] == true);
  CHECK(std::abs(j["checks"][0]["lhs"].get<double>()) < 1e-12);
  CHECK(std::abs(j["checks"][0]["rhs"].get<double>()) < 1e-9);
}

TEST_CASE("failing verification exits 3 with the failing tuple") {
  const Run r = run("verify mt --hamiltonian " + data("zero2.json") + " --rho0 " + data("pure_rho0.json") +
                    " --samples 0");
  CHECK(r.exit_code == 3);
  CHECK(r.out.find("FAIL endpoints_distinguishable") != std::string::npos);
}

TEST_CASE("evolve") {
  const fs::path dir = scratch("evolve");
  SUBCASE("zero Hamiltonian gives a constant CSV") {
    run_json("evolve " + data("zero2.json") + " " + data("qubit_rho0.json") + " --steps 10 --out " +
             (dir / "z.csv").string());
    const Csv c = read_csv(dir / "z.csv");
    REQUIRE(c.frames.size() == 11);
    for (const auto& f : c.frames) CHECK(frame_distance(f, c.frames.front()) == 0.0);
  }
  SUBCASE("qubit fixture endpoint") {
    const Json rep = run_json("evolve " + data("qubit_hamiltonian.json") + " " + data("qubit_rho0.json") +
                              " --tau 1 --steps 1000 --out " + (dir / "q.csv").string());
    CHECK(frame_distance(read_csv(dir / "q.csv").frames.back(), qubit_endpoint()) < 1e-6);
    CHECK(rep["outputs"].contains("spectrum_drift"));
  }
  SUBCASE("random 4x4 spectrum drift") {
    const Json rep = run_json("evolve " + data("random4_hamiltonian.json") + " " + data("random4_rho0.json") +
                              " --steps 1000 --out " + (dir / "r.csv").string());
    CHECK(rep["outputs"]["spectrum_drift"].get<double>() < 1e-7);
  }
  SUBCASE("sampled Hamiltonian trajectory") {
    const fs::path geo = scratch("evolve_geo");
    run_json("geodesic " + data("qubit_rho0.json") + " " + data("qubit_xi0.json") + " --steps 200 --out " +
             geo.string());
    run_json("evolve " + (geo / "hamiltonian.csv").string() + " " + data("qubit_rho0.json") + " --steps 200 --out " +
             (dir / "s.csv").string());
    CHECK(frame_distance(read_csv(dir / "s.csv").frames.back(), qubit_endpoint()) < 1e-6);
  }
}

TEST_CASE("lift") {
  const fs::path dir = scratch("lift");
  SUBCASE("qubit fixture trajectory matches the Schroedinger flow") {
    run_json("evolve " + data("qubit_hamiltonian.json") + " " + data("qubit_rho0.json") +
             " --steps 400 --out " + (dir / "rho.csv").string());
    const Json rep = run_json("lift " + (dir / "rho.csv").string() + " " + data("qubit_psi0.json") + " --out " +
                              (dir / "psi.csv").string());
    const Csv psi = read_csv(dir / "psi.csv");
    const double c = std::cos(0.5), s = std::sin(0.5), a = std::sqrt(0.75), b = std::sqrt(0.25);
    const std::vector<std::complex<double>> exact{a * c, b * s, -a * s, b * c};
    CHECK(frame_distance(psi.frames.back(), exact) < 1e-5);
    CHECK(rep["outputs"]["projection_error"].get<double>() < 1e-6);
    CHECK(std::abs(rep["outputs"]["length_mismatch"].get<double>()) < 1e-5);
    CHECK(rep["outputs"]["max_vertical_velocity"].get<double>() < 1e-6);
  }
  SUBCASE("constant trajectory gives a constant lift") {
    run_json("evolve " + data("zero2.json") + " " + data("qubit_rho0.json") + " --steps 10 --out " +
             (dir / "c.csv").string());
    run_json("lift " + (dir / "c.csv").string() + " " + data("qubit_psi0.json") + " --out " +
             (dir / "cl.csv").string());
    const Csv psi = read_csv(dir / "cl.csv");
    for (const auto& f : psi.frames) CHECK(frame_distance(f, psi.frames.front()) == 0.0);
  }
}

TEST_CASE("synth from a constant control") {
  const fs::path dir = scratch("synth");
  run_json("synth " + data("qubit_rho0.json") + " " + data("qubit_xi0.json") + " --steps 10 --out " +
           (dir / "h.csv").string());
  const Csv h = read_csv(dir / "h.csv");
  REQUIRE(h.frames.size() == 11);
  // i hbar xi = [[0, 0.5 i], [-0.5 i, 0]].
  const std::vector<std::complex<double>> expected{0.0, {0.0, 0.5}, {0.0, -0.5}, 0.0};
  for (const auto& f : h.frames) CHECK(frame_distance(f, expected) < 1e-12);
}

TEST_CASE("hbar scales the synthesized Hamiltonian") {
  const fs::path dir = scratch("synth_hbar");
  run_json("--hbar 2 synth " + data("qubit_rho0.json") + " " + data("qubit_xi0.json") + " --steps 4 --out " +
           (dir / "h.csv").string());
  const Csv h = read_csv(dir / "h.csv");
  CHECK(std::abs(h.frames.front()[1] - std::complex<double>(0.0, 1.0)) < 1e-12);
}

TEST_CASE("reports are byte-identical across runs and written atomically") {
  const fs::path dir = scratch("det");
  const std::string args = "--seed 11 --report " + (dir / "a.json").string() + " verify dispersion --samples 5";
  CHECK(run(args).exit_code == 0);
  CHECK(run("--seed 11 --report " + (dir / "b.json").string() + " verify dispersion --samples 5").exit_code == 0);
  std::ifstream a(dir / "a.json"), b(dir / "b.json");
  std::stringstream sa, sb;
  sa << a.rdbuf();
  sb << b.rdbuf();
  CHECK(!sa.str().empty());
  CHECK(sa.str() == sb.str());
  std::size_t entries = 0;
  for ([[maybe_unused]] const auto& e : fs::directory_iterator(dir)) ++entries;
  CHECK(entries == 2);
}
