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

#ifndef QLEAK_SDP_HPP
#define QLEAK_SDP_HPP

#include <Eigen/Dense>
#include <iosfwd>
#include <vector>

#include "qleak/common.hpp"

namespace qleak {

/// Equality-form SDP over a block-diagonal cone: dense PSD blocks plus a
/// nonnegative scalar block. Terms with block >= 0 address entry (i, j)
/// (i <= j) of that PSD block and mean A[i][j] = A[j][i] = c; block == -1
/// addresses scalar i.
struct SemidefiniteProgram {
  std::vector<int> blocks;
  int num_scalars = 0;

  struct Term {
    int block, i, j;
    double c;
  };
  std::vector<Term> objective;  // maximized
  struct Constraint {
    std::vector<Term> terms;
    double rhs;
  };
  std::vector<Constraint> constraints;

  void check_valid() const;
};

enum class SdpMethod { Auto, InteriorPoint, Splitting };

struct SdpResult {
  enum class Status { Optimal, Stalled, Infeasible } status = Status::Stalled;
  double primal_value = 0.0;
  double dual_value = 0.0;   // meaningful when dual_certified
  bool dual_certified = false;  // false -> primal-only result
  double primal_residual = 0.0;
  double dual_residual = 0.0;
  double gap = 0.0;
  double min_eigenvalue = 0.0;  // over returned blocks and scalars
  int iterations = 0;
  std::vector<Eigen::MatrixXd> block_values;
  std::vector<double> scalar_values;
  std::vector<double> dual_y;
};

/// Maximizes the objective over the problem's cone. InteriorPoint is an NT
/// predictor-corrector method (high accuracy, small problems); Splitting is
/// an ADMM scheme that presolves structural equalities (entry tying, pins)
/// and scales to the larger moment matrices at moderate accuracy. Auto picks
/// by block size. Deterministic for fixed inputs.
SdpResult solve_sdp(const SemidefiniteProgram& p, double tol = 1e-7,
                    SdpMethod method = SdpMethod::Auto, int max_iterations = 50000);

/// Sparse text format shared with the CLI export; one line per nonzero.
void write_sdp_sparse(std::ostream& os, const SemidefiniteProgram& p);
SemidefiniteProgram read_sdp_sparse(std::istream& is);

}  // namespace qleak

#endif  // QLEAK_SDP_HPP
