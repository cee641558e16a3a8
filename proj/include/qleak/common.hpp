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

#ifndef QLEAK_COMMON_HPP
#define QLEAK_COMMON_HPP

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace qleak {

/// Error taxonomy mirrored by the CLI exit codes: Input -> 2, Budget and
/// Solver -> 3.
enum class ErrorKind { Input, Budget, Solver };

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void throw_input(const std::string& what) {
  throw Error(ErrorKind::Input, what);
}
[[noreturn]] inline void throw_budget(const std::string& what) {
  throw Error(ErrorKind::Budget, what);
}
[[noreturn]] inline void throw_solver(const std::string& what) {
  throw Error(ErrorKind::Solver, what);
}

/// Enumeration limits for the strategy and guessing-function loops.
/// QLEAK_BUDGET overrides the per-side strategy cap.
struct Budget {
  double strategies_per_side = double(1 << 20);
  double guess_functions = 1e6;

  static Budget from_env();
};

constexpr double kDistTol = 1e-9;

inline double log2_safe(double x) { return std::log2(x); }

/// Parses "0.25" or "1/4". Used by every input file that carries
/// probabilities.
double parse_probability(const std::string& text);

/// FNV-1a over raw bytes; digests input files for reports.
std::uint64_t fnv1a(const std::string& bytes);

}  // namespace qleak

#endif  // QLEAK_COMMON_HPP
