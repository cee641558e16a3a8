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

#ifndef QLEAK_QUANTUM_HPP
#define QLEAK_QUANTUM_HPP

#include <Eigen/Dense>
#include <map>
#include <utility>
#include <vector>

#include "qleak/vulnerability.hpp"

namespace qleak {

using Projector = Eigen::MatrixXcd;
using ProjectorFamily = std::vector<Projector>;  // indexed by own message

constexpr double kProjectorTol = 1e-9;

/// Checks Hermiticity, idempotence, pairwise orthogonality and completeness
/// of one measurement family, in max norm. `where` tags the report entries.
void check_family(const ProjectorFamily& family, int dim, const std::string& where,
                  std::vector<Violation>& out);

/// Shared pure state plus history-indexed projective measurements for one
/// non-local game (one family per question per side).
struct GameQuantumStrategy {
  int dimA = 1, dimB = 1;
  Eigen::VectorXcd state;                  // dimA*dimB, index i*dimB+j
  std::vector<ProjectorFamily> alice;      // per Alice question, indexed by answer
  std::vector<ProjectorFamily> bob;        // per Bob question

  std::vector<Violation> validate(int nqa, int nqb, int naa, int nab) const;
};

/// History-indexed strategy on an interactive channel: Alice families per
/// (secret, Alice view), Bob families per Bob view. Views are nodes of the
/// channel's projection trees.
struct QuantumJointStrategy {
  int dimA = 1, dimB = 1;
  Eigen::VectorXcd state;
  std::map<std::pair<int, int>, ProjectorFamily> alice;  // (k, alice view) -> family
  std::map<int, ProjectorFamily> bob;                    // bob view -> family
};

/// Per-family measurement axioms plus coverage of every reachable view of
/// depth < n (for each secret on Alice's side). Report-style.
std::vector<Violation> validate_quantum_strategy(const QuantumJointStrategy& s,
                                                 const InteractiveChannel& c,
                                                 int num_secrets);

/// Trace law of the strategy for secret k: weight of t is
/// <psi| A^k_t (x) B_t |psi> prod f_i, operators multiplied right-to-left in
/// round order (round 1 rightmost).
std::vector<TraceMass> entangled_trace_distribution(const InteractiveChannel& c,
                                                    const QuantumJointStrategy& s,
                                                    int k);

/// Expected posterior-minus-prior vulnerability of the Bob view under the
/// entangled trace laws.
double entangled_leakage(const VulnerabilityMeasure& v, const std::vector<double>& prior,
                         const InteractiveChannel& c, const QuantumJointStrategy& s);

/// The two-qubit strategy from the quantum-advantage construction for the
/// compiled CHSH channel: trivial round-1 families placing Alice's mass on
/// (first answer, u=k) and Bob's on his first symbol, CHSH bases in round 2
/// with Alice appending u=k. Secrets are {0,1}.
QuantumJointStrategy chsh_channel_strategy(const InteractiveChannel& c_chsh);

}  // namespace qleak

#endif  // QLEAK_QUANTUM_HPP
