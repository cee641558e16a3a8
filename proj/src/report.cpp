// Copyright 2026 the qleak authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qleak/report.hpp"

#include <json.hpp>

#include <iomanip>
#include <ostream>
#include <sstream>

#include "qleak/common.hpp"

namespace qleak {

const char* bound_direction_name(BoundDirection b) {
  switch (b) {
    case BoundDirection::Exact: return "exact";
    case BoundDirection::Lower: return "lower";
    case BoundDirection::Upper: return "upper";
  }
  return "?";
}

void AnalysisReport::add_input(const std::string& path, const std::string& content) {
  std::ostringstream digest;
  digest << std::hex << std::setw(16) << std::setfill('0') << fnv1a(content);
  inputs.emplace_back(path, digest.str());
}

void AnalysisReport::print_table(std::ostream& os) const {
  os << "# " << command << "\n";
  for (const auto& [path, digest] : inputs)
    os << "input " << path << " (fnv1a " << digest << ")\n";
  for (const auto& q : quantities) {
    os << std::left << std::setw(36) << q.name << " " << std::setprecision(12)
       << q.value << "  [" << bound_direction_name(q.bound);
    if (q.tolerance > 0) os << " +-" << std::setprecision(3) << q.tolerance;
    os << "]\n";
  }
  for (const auto& w : warnings) os << "warning: " << w << "\n";
}

std::string AnalysisReport::to_json_string() const {
  nlohmann::json j;
  j["command"] = command;
  j["inputs"] = nlohmann::json::array();
  for (const auto& [path, digest] : inputs)
    j["inputs"].push_back({{"path", path}, {"fnv1a", digest}});
  j["quantities"] = nlohmann::json::array();
  for (const auto& q : quantities)
    j["quantities"].push_back({{"name", q.name},
                               {"value", q.value},
                               {"bound", bound_direction_name(q.bound)},
                               {"tolerance", q.tolerance}});
  j["warnings"] = warnings;
  return j.dump(2);
}

}  // namespace qleak
