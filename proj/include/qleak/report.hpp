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

#ifndef QLEAK_REPORT_HPP
#define QLEAK_REPORT_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace qleak {

enum class BoundDirection { Exact, Lower, Upper };

struct Quantity {
  std::string name;
  double value = 0.0;
  BoundDirection bound = BoundDirection::Exact;
  double tolerance = 0.0;
};

/// Machine- and human-readable analysis result. Every number carries a bound
/// direction.
struct AnalysisReport {
  std::string command;
  std::vector<std::pair<std::string, std::string>> inputs;  // (path, digest)
  std::vector<Quantity> quantities;
  std::vector<std::string> warnings;

  void add_input(const std::string& path, const std::string& content);
  void print_table(std::ostream& os) const;
  std::string to_json_string() const;
};

const char* bound_direction_name(BoundDirection b);

}  // namespace qleak

#endif  // QLEAK_REPORT_HPP
