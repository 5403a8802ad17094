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

#pragma once

#include <string>

#include <json.hpp>

#include "control.hpp"
#include "dynamics.hpp"
#include "types.hpp"

namespace qorbit {

using Json = nlohmann::ordered_json;

// Matrix JSON: {"rows": r, "cols": c, "data": [[re, im], ...]} row-major.
Json matrix_to_json(const Matrix& m);
Matrix matrix_from_json(const Json& j);

// Spectrum JSON: {"values": [...], "rank_tol": r}.
Json spectrum_to_json(const Spectrum& s, double rank_tol);
Spectrum spectrum_from_json(const Json& j);

// Trajectory JSON: {"kind", "rows", "cols", "times": [...], "data": [frame, ...]}
// where each frame is a row-major list of [re, im] pairs.
Json trajectory_to_json(const Trajectory& traj);
Trajectory trajectory_from_json(const Json& j, FrameKind fallback_kind);
FrameKind frame_kind_from_string(const std::string& s);

// Trajectory CSV: header "t,re_0_0,im_0_0,..." and one row per grid point,
// numbers in %.17g.
std::string trajectory_to_csv(const Trajectory& traj);
// Columns are read as rows x cols frames; rows = cols = 0 means square.
Trajectory trajectory_from_csv(const std::string& text, FrameKind kind, Eigen::Index rows = 0,
                               Eigen::Index cols = 0);

// Shooting configuration JSON: {"restarts", "endpoint_tol", "max_iters",
// "seed", "steps"}; absent keys keep their defaults.
ShootingConfig shooting_config_from_json(const Json& j);
Json shooting_config_to_json(const ShootingConfig& cfg);

std::string read_text_file(const std::string& path);
Json read_json_file(const std::string& path);

/// Writes through a temporary file in the same directory and renames it over
/// `path`, so readers never observe a partial file.
void write_text_atomic(const std::string& path, const std::string& text);

// Loads a trajectory from a .json or .csv file (chosen by extension, then
// by content).
Trajectory read_trajectory_file(const std::string& path, FrameKind kind);

}  // namespace qorbit
