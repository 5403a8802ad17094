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

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "io.hpp"

namespace qorbit {

enum class Relation { equal, at_least, at_most };

const char* to_string(Relation r);

/// One verified property. `equal` passes when |lhs - rhs| <= tolerance,
/// `at_least` when lhs >= rhs - tolerance, `at_most` when lhs <= rhs + tolerance.
struct Check {
  std::string name;
  double lhs = 0.0;
  double rhs = 0.0;
  double tolerance = 0.0;
  Relation relation = Relation::equal;
  bool passed = false;
  std::string detail;  // e.g. the sample that produced the worst case
};

Check make_check(std::string name, double lhs, double rhs, double tolerance, Relation relation,
                 std::string detail = {});

class RunReport {
 public:
  explicit RunReport(std::string command) : command_(std::move(command)) {}

  void add_input(const std::string& name, const std::string& path) { inputs_.emplace_back(name, path); }
  void set_output(const std::string& name, Json value) { outputs_[name] = std::move(value); }
  void add_check(Check c) { checks_.push_back(std::move(c)); }
  void set_seed(std::uint64_t seed) { seed_ = seed; }

  const std::string& command() const noexcept { return command_; }
  const std::vector<Check>& checks() const noexcept { return checks_; }
  const Json& outputs() const noexcept { return outputs_; }
  bool passed() const;

  Json to_json() const;
  /// Fixed-width table, one check per line, failing rows marked FAIL.
  std::string check_table() const;

 private:
  std::string command_;
  std::vector<std::pair<std::string, std::string>> inputs_;
  Json outputs_ = Json::object();
  std::vector<Check> checks_;
  std::optional<std::uint64_t> seed_;
};

}  // namespace qorbit
