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

#include "report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace qorbit {

const char* to_string(Relation r) {
  switch (r) {
    case Relation::equal: return "==";
    case Relation::at_least: return ">=";
    case Relation::at_most: return "<=";
  }
  return "?";
}

Check make_check(std::string name, double lhs, double rhs, double tolerance, Relation relation, std::string detail) {
  Check c{std::move(name), lhs, rhs, tolerance, relation, false, std::move(detail)};
  switch (relation) {
    case Relation::equal: c.passed = std::abs(lhs - rhs) <= tolerance; break;
    case Relation::at_least: c.passed = lhs >= rhs - tolerance; break;
    case Relation::at_most: c.passed = lhs <= rhs + tolerance; break;
  }
  return c;
}

bool RunReport::passed() const {
  return std::all_of(checks_.begin(), checks_.end(), [](const Check& c) { return c.passed; });
}

Json RunReport::to_json() const {
  Json j;
  j["command"] = command_;
  Json inputs = Json::object();
  for (const auto& [name, path] : inputs_) inputs[name] = path;
  j["inputs"] = std::move(inputs);
  j["outputs"] = outputs_;
  Json checks = Json::array();
  for (const Check& c : checks_) {
    Json e;
    e["name"] = c.name;
    e["lhs"] = c.lhs;
    e["relation"] = to_string(c.relation);
    e["rhs"] = c.rhs;
    e["tolerance"] = c.tolerance;
    e["passed"] = c.passed;
    if (!c.detail.empty()) e["detail"] = c.detail;
    checks.push_back(std::move(e));
  }
  j["checks"] = std::move(checks);
  if (seed_) j["seed"] = *seed_;
  else j["seed"] = nullptr;
  j["passed"] = passed();
  return j;
}

std::string RunReport::check_table() const {
  std::size_t width = 5;
  for (const Check& c : checks_) width = std::max(width, c.name.size());
  std::string out;
  char line[512];
  std::snprintf(line, sizeof line, "%-*s  %-24s %-2s %-24s %-10s %s\n", static_cast<int>(width), "check", "lhs", "",
                "rhs", "tol", "result");
  out += line;
  for (const Check& c : checks_) {
    std::snprintf(line, sizeof line, "%-*s  %-24.17g %-2s %-24.17g %-10.3g %s", static_cast<int>(width),
                  c.name.c_str(), c.lhs, to_string(c.relation), c.rhs, c.tolerance, c.passed ? "pass" : "FAIL");
    out += line;
    if (!c.passed && !c.detail.empty()) out += "  (" + c.detail + ")";
    out += '\n';
  }
  return out;
}

}  // namespace qorbit
