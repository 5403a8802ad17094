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

#include <doctest.h>

#include <filesystem>

#include "helpers.hpp"
#include "io.hpp"
#include "report.hpp"
#include "sampling.hpp"
#include "verify.hpp"

using qorbit::ErrorCode;
using qorbit::FrameKind;
using qorbit::Json;
using qorbit::Matrix;
using qorbit::Trajectory;
using testing::throws_code;

namespace fs = std::filesystem;

TEST_CASE("matrix JSON round trip is exact") {
  oracle::Rng rng(51);
  const Matrix m = rng.ginibre(3, 2);
  const Json j = qorbit::matrix_to_json(m);
  CHECK(j["rows"] == 3);
  CHECK(j["cols"] == 2);
  const Matrix back = qorbit::matrix_from_json(Json::parse(j.dump()));
  CHECK((back - m).norm() == 0.0);
}

TEST_CASE("malformed matrix JSON") {
  CHECK(throws_code([] { qorbit::matrix_from_json(Json::parse(R"({"rows": 2, "cols": 2, "data": []})")); },
                    ErrorCode::io));
  CHECK(throws_code([] { qorbit::matrix_from_json(Json::parse(R"({"rows": 1, "cols": 1, "data": [[1]]})")); },
                    ErrorCode::io));
  CHECK(throws_code([] { qorbit::matrix_from_json(Json::parse(R"([1, 2])")); }, ErrorCode::io));
  CHECK(throws_code([] { qorbit::matrix_from_json(Json::parse(R"({"rows": 0, "cols": 1, "data": []})")); },
                    ErrorCode::io));
}

TEST_CASE("spectrum JSON") {
  const auto s = qorbit::spectrum_from_json(Json::parse(R"({"values": [0.25, 0.75]})"));
  CHECK(s.values() == std::vector<double>{0.75, 0.25});
  CHECK(qorbit::spectrum_to_json(s, 1e-9)["values"][0] == 0.75);
}

TEST_CASE("trajectory CSV and JSON round trips are exact") {
  oracle::Rng rng(52);
  Trajectory t{FrameKind::hamiltonian, qorbit::uniform_grid(0.3, 3), {}};
  for (int i = 0; i < 4; ++i) t.frames.push_back(rng.hermitian(2));
  const std::string csv = qorbit::trajectory_to_csv(t);
  CHECK(csv.rfind("t,re_0_0,im_0_0,re_0_1,im_0_1,", 0) == 0);
  const Trajectory back = qorbit::trajectory_from_csv(csv, FrameKind::hamiltonian);
  REQUIRE(back.size() == 4);
  for (std::size_t i = 0; i < 4; ++i) {
    CHECK(back.times[i] == t.times[i]);
    CHECK((back.frames[i] - t.frames[i]).norm() == 0.0);
  }
  const Trajectory from_json =
      qorbit::trajectory_from_json(Json::parse(qorbit::trajectory_to_json(t).dump()), FrameKind::density);
  CHECK(from_json.kind == FrameKind::hamiltonian);
  CHECK((from_json.frames[3] - t.frames[3]).norm() == 0.0);
}

TEST_CASE("malformed trajectory CSV") {
  CHECK(throws_code([] { qorbit::trajectory_from_csv("x,1\n", FrameKind::density); }, ErrorCode::io));
  CHECK(throws_code([] { qorbit::trajectory_from_csv("t,re_0_0,im_0_0\n0,1\n", FrameKind::density); },
                    ErrorCode::io));
  CHECK(throws_code([] { qorbit::trajectory_from_csv("t,re_0_0,im_0_0\n0,abc,0\n", FrameKind::density); },
                    ErrorCode::io));
  CHECK(throws_code([] { qorbit::trajectory_from_csv("t,re_0_0,im_0_0\n", FrameKind::density); }, ErrorCode::io));
}

TEST_CASE("shooting config JSON keeps defaults for absent keys") {
  const auto cfg = qorbit::shooting_config_from_json(Json::parse(R"({"restarts": 3, "seed": 9})"));
  CHECK(cfg.restarts == 3);
  CHECK(cfg.seed == 9);
  CHECK(cfg.endpoint_tol == qorbit::ShootingConfig{}.endpoint_tol);
  CHECK(throws_code([] { qorbit::shooting_config_from_json(Json::parse(R"({"restarts": "x"})")); }, ErrorCode::io));
}

TEST_CASE("atomic writes leave no temporary files") {
  const fs::path dir = fs::temp_directory_path() / "qorbit_io_test";
  fs::remove_all(dir);
  fs::create_directories(dir);
  const std::string target = (dir / "out.txt").string();
  qorbit::write_text_atomic(target, "first");
  qorbit::write_text_atomic(target, "second");
  CHECK(qorbit::read_text_file(target) == "second");
  CHECK(std::distance(fs::directory_iterator(dir), fs::directory_iterator{}) == 1);
  CHECK(throws_code([&] { qorbit::write_text_atomic((dir / "missing" / "x.txt").string(), "x"); }, ErrorCode::io));
  fs::remove_all(dir);
}

TEST_CASE("checks and reports") {
  CHECK(qorbit::make_check("a", 1.0, 1.0 + 1e-9, 1e-8, qorbit::Relation::equal).passed);
  CHECK_FALSE(qorbit::make_check("a", 1.0, 1.1, 1e-8, qorbit::Relation::equal).passed);
  CHECK(qorbit::make_check("b", 0.9999, 1.0, 1e-3, qorbit::Relation::at_least).passed);
  CHECK_FALSE(qorbit::make_check("b", 0.9, 1.0, 1e-3, qorbit::Relation::at_least).passed);
  CHECK(qorbit::make_check("c", 1.0005, 1.0, 1e-3, qorbit::Relation::at_most).passed);
  CHECK_FALSE(qorbit::make_check("nan", std::nan(""), 0.0, 1.0, qorbit::Relation::at_most).passed);

  qorbit::RunReport r("distance");
  r.add_input("rho0", "a.json");
  r.set_output("distance", 0.5);
  r.add_check(qorbit::make_check("x", 0.0, 0.0, 1e-6, qorbit::Relation::at_most));
  r.set_seed(7);
  const Json j = r.to_json();
  CHECK(j["command"] == "distance");
  CHECK(j["inputs"]["rho0"] == "a.json");
  CHECK(j["outputs"]["distance"] == 0.5);
  CHECK(j["checks"][0]["name"] == "x");
  CHECK(j["checks"][0]["relation"] == "<=");
  CHECK(j["seed"] == 7);
  CHECK(j["passed"] == true);
  CHECK(r.check_table().find("pass") != std::string::npos);
  r.add_check(qorbit::make_check("y", 1.0, 0.0, 1e-6, qorbit::Relation::at_most, "sample 3"));
  CHECK_FALSE(r.passed());
  CHECK(r.check_table().find("FAIL") != std::string::npos);
}

TEST_CASE("seeded verification reports are deterministic") {
  const auto a = qorbit::verify_decomposition(20, 7).to_json().dump();
  const auto b = qorbit::verify_decomposition(20, 7).to_json().dump();
  CHECK(a == b);
  CHECK(a != qorbit::verify_decomposition(20, 8).to_json().dump());
}

TEST_CASE("sampler draws are valid and reproducible") {
  qorbit::Sampler s1(5), s2(5);
  const Matrix r1 = s1.density(4, 2), r2 = s2.density(4, 2);
  CHECK((r1 - r2).norm() == 0.0);
  CHECK_NOTHROW(qorbit::DensityOperator{r1});
  Eigen::SelfAdjointEigenSolver<Matrix> es(r1);
  CHECK(es.eigenvalues()(1) < 1e-12);
  const Matrix u = s1.unitary(3);
  CHECK((u * u.adjoint() - Matrix::Identity(3, 3)).norm() < 1e-13);
}

TEST_CASE("verify suites pass on their defaults") {
  CHECK(qorbit::verify_decomposition(50, 7).passed());
  CHECK(qorbit::verify_mt({}, true, 5, 7).passed());
  CHECK(qorbit::verify_dispersion({}, 5, 7).passed());
  qorbit::DriveInput zero;
  zero.hamiltonian = Matrix::Zero(2, 2);
  zero.rho0 = oracle::diag({1.0, 0.0});
  CHECK_FALSE(qorbit::verify_mt(zero, false, 0, 7).passed());
}
