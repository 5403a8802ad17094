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

#include "io.hpp"

#include <unistd.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace qorbit {

namespace {

Json frame_data(const Matrix& m) {
  Json data = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r)
    for (Eigen::Index c = 0; c < m.cols(); ++c) data.push_back(Json::array({m(r, c).real(), m(r, c).imag()}));
  return data;
}

Matrix frame_from_data(const Json& data, Eigen::Index rows, Eigen::Index cols, const char* what) {
  if (!data.is_array() || data.size() != static_cast<std::size_t>(rows * cols)) {
    std::ostringstream os;
    os << what << ": expected " << rows * cols << " [re, im] entries";
    throw Error(ErrorCode::io, os.str());
  }
  Matrix m(rows, cols);
  std::size_t idx = 0;
  for (Eigen::Index r = 0; r < rows; ++r) {
    for (Eigen::Index c = 0; c < cols; ++c, ++idx) {
      const Json& e = data[idx];
      if (!e.is_array() || e.size() != 2 || !e[0].is_number() || !e[1].is_number())
        throw Error(ErrorCode::io, std::string(what) + ": entries must be [re, im] number pairs");
      m(r, c) = Complex(e[0].get<double>(), e[1].get<double>());
    }
  }
  return m;
}

Eigen::Index dimension_field(const Json& j, const char* key, const char* what) {
  if (!j.contains(key) || !j[key].is_number_integer() || j[key].get<long long>() < 1)
    throw Error(ErrorCode::io, std::string(what) + ": missing or invalid \"" + key + "\"");
  return static_cast<Eigen::Index>(j[key].get<long long>());
}

std::string format_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

Json matrix_to_json(const Matrix& m) {
  Json j;
  j["rows"] = m.rows();
  j["cols"] = m.cols();
  j["data"] = frame_data(m);
  return j;
}

Matrix matrix_from_json(const Json& j) {
  if (!j.is_object()) throw Error(ErrorCode::io, "matrix JSON: expected an object");
  const Eigen::Index rows = dimension_field(j, "rows", "matrix JSON");
  const Eigen::Index cols = dimension_field(j, "cols", "matrix JSON");
  if (!j.contains("data")) throw Error(ErrorCode::io, "matrix JSON: missing \"data\"");
  return frame_from_data(j["data"], rows, cols, "matrix JSON");
}

Json spectrum_to_json(const Spectrum& s, double rank_tol) {
  Json j;
  j["values"] = s.values();
  j["rank_tol"] = rank_tol;
  return j;
}

Spectrum spectrum_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("values") || !j["values"].is_array())
    throw Error(ErrorCode::io, "spectrum JSON: missing \"values\" array");
  const double tol = j.value("rank_tol", 1e-9);
  return Spectrum::from_values(j["values"].get<std::vector<double>>(), tol);
}

FrameKind frame_kind_from_string(const std::string& s) {
  if (s == "density") return FrameKind::density;
  if (s == "purification") return FrameKind::purification;
  if (s == "hamiltonian") return FrameKind::hamiltonian;
  if (s == "control") return FrameKind::control;
  throw Error(ErrorCode::io, "trajectory: unknown kind \"" + s + "\"");
}

Json trajectory_to_json(const Trajectory& traj) {
  Json j;
  j["kind"] = to_string(traj.kind);
  j["rows"] = traj.frames.empty() ? 0 : traj.frames[0].rows();
  j["cols"] = traj.frames.empty() ? 0 : traj.frames[0].cols();
  j["times"] = traj.times;
  Json data = Json::array();
  for (const Matrix& m : traj.frames) data.push_back(frame_data(m));
  j["data"] = std::move(data);
  return j;
}

Trajectory trajectory_from_json(const Json& j, FrameKind fallback_kind) {
  if (!j.is_object()) throw Error(ErrorCode::io, "trajectory JSON: expected an object");
  const Eigen::Index rows = dimension_field(j, "rows", "trajectory JSON");
  const Eigen::Index cols = dimension_field(j, "cols", "trajectory JSON");
  if (!j.contains("times") || !j["times"].is_array() || !j.contains("data") || !j["data"].is_array())
    throw Error(ErrorCode::io, "trajectory JSON: missing \"times\" or \"data\" array");
  Trajectory traj;
  traj.kind = j.contains("kind") ? frame_kind_from_string(j["kind"].get<std::string>()) : fallback_kind;
  traj.times = j["times"].get<std::vector<double>>();
  if (traj.times.size() != j["data"].size())
    throw Error(ErrorCode::io, "trajectory JSON: \"times\" and \"data\" lengths differ");
  for (const Json& f : j["data"]) traj.frames.push_back(frame_from_data(f, rows, cols, "trajectory JSON"));
  return traj;
}

std::string trajectory_to_csv(const Trajectory& traj) {
  std::ostringstream os;
  os << "t";
  if (!traj.frames.empty()) {
    for (Eigen::Index r = 0; r < traj.frames[0].rows(); ++r)
      for (Eigen::Index c = 0; c < traj.frames[0].cols(); ++c) os << ",re_" << r << '_' << c << ",im_" << r << '_' << c;
  }
  os << '\n';
  for (std::size_t i = 0; i < traj.size(); ++i) {
    os << format_number(traj.times[i]);
    const Matrix& m = traj.frames[i];
    for (Eigen::Index r = 0; r < m.rows(); ++r)
      for (Eigen::Index c = 0; c < m.cols(); ++c)
        os << ',' << format_number(m(r, c).real()) << ',' << format_number(m(r, c).imag());
    os << '\n';
  }
  return os.str();
}

Trajectory trajectory_from_csv(const std::string& text, FrameKind kind, Eigen::Index rows, Eigen::Index cols) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) || line.rfind("t,", 0) != 0)
    throw Error(ErrorCode::io, "trajectory CSV: missing \"t,...\" header");
  const std::size_t columns = static_cast<std::size_t>(std::count(line.begin(), line.end(), ','));
  if (columns % 2 != 0) throw Error(ErrorCode::io, "trajectory CSV: odd number of value columns");
  const std::size_t entries = columns / 2;
  if (rows == 0 || cols == 0) {
    const auto side = static_cast<Eigen::Index>(std::llround(std::sqrt(static_cast<double>(entries))));
    if (static_cast<std::size_t>(side * side) != entries)
      throw Error(ErrorCode::io, "trajectory CSV: frames are not square; shape must be given");
    rows = cols = side;
  }
  if (static_cast<std::size_t>(rows * cols) != entries)
    throw Error(ErrorCode::io, "trajectory CSV: column count does not match the frame shape");

  Trajectory traj{kind, {}, {}};
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<double> values;
    std::istringstream row(line);
    std::string cell;
    while (std::getline(row, cell, ',')) {
      try {
        std::size_t used = 0;
        values.push_back(std::stod(cell, &used));
        if (used != cell.size()) throw std::invalid_argument(cell);
      } catch (const std::exception&) {
        throw Error(ErrorCode::io, "trajectory CSV: cannot parse \"" + cell + "\"");
      }
    }
    if (values.size() != columns + 1) throw Error(ErrorCode::io, "trajectory CSV: ragged row");
    Matrix m(rows, cols);
    std::size_t idx = 1;
    for (Eigen::Index r = 0; r < rows; ++r)
      for (Eigen::Index c = 0; c < cols; ++c, idx += 2) m(r, c) = Complex(values[idx], values[idx + 1]);
    traj.times.push_back(values[0]);
    traj.frames.push_back(std::move(m));
  }
  if (traj.frames.empty()) throw Error(ErrorCode::io, "trajectory CSV: no data rows");
  return traj;
}

ShootingConfig shooting_config_from_json(const Json& j) {
  if (!j.is_object()) throw Error(ErrorCode::io, "shooting config: expected an object");
  ShootingConfig cfg;
  try {
    cfg.restarts = j.value("restarts", cfg.restarts);
    cfg.endpoint_tol = j.value("endpoint_tol", cfg.endpoint_tol);
    cfg.max_iters = j.value("max_iters", cfg.max_iters);
    cfg.seed = j.value("seed", cfg.seed);
    cfg.steps = j.value("steps", cfg.steps);
  } catch (const Json::exception& e) {
    throw Error(ErrorCode::io, std::string("shooting config: ") + e.what());
  }
  return cfg;
}

Json shooting_config_to_json(const ShootingConfig& cfg) {
  Json j;
  j["restarts"] = cfg.restarts;
  j["endpoint_tol"] = cfg.endpoint_tol;
  j["max_iters"] = cfg.max_iters;
  j["seed"] = cfg.seed;
  j["steps"] = cfg.steps;
  return j;
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::io, "cannot open " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

Json read_json_file(const std::string& path) {
  const std::string text = read_text_file(path);
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw Error(ErrorCode::io, path + ": " + e.what());
  }
}

void write_text_atomic(const std::string& path, const std::string& text) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  fs::path tmp = target;
  tmp += ".tmp." + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::io, "cannot write " + tmp.string());
    out << text;
    out.flush();
    if (!out) {
      std::error_code ec;
      fs::remove(tmp, ec);
      throw Error(ErrorCode::io, "write failed for " + tmp.string());
    }
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) {
    fs::remove(tmp, ec);
    throw Error(ErrorCode::io, "cannot rename into " + path);
  }
}

Trajectory read_trajectory_file(const std::string& path, FrameKind kind) {
  const std::string text = read_text_file(path);
  const bool csv = path.size() >= 4 && path.substr(path.size() - 4) == ".csv";
  if (csv || text.rfind("t,", 0) == 0) return trajectory_from_csv(text, kind);
  try {
    return trajectory_from_json(Json::parse(text), kind);
  } catch (const Json::parse_error& e) {
    throw Error(ErrorCode::io, path + ": " + e.what());
  }
}

}  // namespace qorbit
