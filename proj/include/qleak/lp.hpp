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

#ifndef QLEAK_LP_HPP
#define QLEAK_LP_HPP

#include <limits>
#include <utility>
#include <vector>

#include "qleak/common.hpp"

namespace qleak {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct LinearProgram {
  int num_vars = 0;
  std::vector<double> lower, upper;  // bounds, +-inf allowed
  std::vector<double> objective;
  bool maximize = true;

  struct Row {
    std::vector<std::pair<int, double>> coeffs;
    char rel;  // '=', '<', '>'
    double rhs;
  };
  std::vector<Row> rows;

  int add_var(double lo, double hi, double obj = 0.0);
  void add_row(std::vector<std::pair<int, double>> coeffs, char rel, double rhs);
};

struct LpResult {
  enum class Status { Optimal, Infeasible, Unbounded, Stalled } status;
  double value = 0.0;
  std::vector<double> x;
  double primal_residual = 0.0;
  double dual_residual = 0.0;
  int iterations = 0;
};

/// Dense bounded-variable revised simplex, two phases, Dantzig pricing with
/// a Bland fallback on degeneracy. Deterministic for fixed input.
LpResult solve_lp(const LinearProgram& p, double tol = 1e-7, int max_iterations = 100000);

}  // namespace qleak

#endif  // QLEAK_LP_HPP
