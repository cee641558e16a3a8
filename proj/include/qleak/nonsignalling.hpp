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

#ifndef QLEAK_NONSIGNALLING_HPP
#define QLEAK_NONSIGNALLING_HPP

#include <map>

#include "qleak/lp.hpp"
#include "qleak/moment.hpp"

namespace qleak {

/// Per-secret, per-history conditional joint message distributions. Tables
/// live on the channel's reachable history prefixes; rows are |A| x |B|
/// row-major.
struct GeneralisedStrategy {
  int num_secrets = 0;
  std::map<std::pair<int, int>, std::vector<double>> tables;  // (k, hist node)

  const std::vector<double>& table(int k, int hist) const;
};

/// Checks both non-signalling equality families over all stored prefix pairs
/// with matching projections (tolerance 1e-9); also flags unnormalized rows.
std::vector<Violation> check_non_signalling(const GeneralisedStrategy& s,
                                            const InteractiveChannel& c);

/// Weight of a trace: prod_i g_i(k, t_{i-1})(a_i, b_i) f_i(...)(x_i, y_i).
std::vector<TraceMass> generalized_trace_distribution(const InteractiveChannel& c,
                                                      const GeneralisedStrategy& s,
                                                      int k);

/// Linear relaxation of the non-signalling strategies over cumulative
/// message masses r_i(k, formal history, a, b) on the full formal history
/// tree: normalization, per-branch consistency, and the two aggregate
/// non-signalling families (Alice-summed masses tied across secrets and
/// x-sequences at fixed Bob view; mirrored for Bob at fixed secret).
class NsLp {
 public:
  NsLp(const InteractiveChannel& c, int num_secrets, const Budget& budget = {});

  const LinearProgram& lp() const { return lp_; }
  int num_secrets() const { return num_secrets_; }

  /// Objective sum_t p_{t|g(t)}; returns the configured LP.
  LinearProgram with_guess_objective(const GuessFunction& g) const;
  /// Objective p(tau|k) - p(tau|k0) for one Bob-view trace position.
  LinearProgram with_difference_objective(int leaf_pos, int k, int k0) const;

  /// r-variable index for round i (1-based), formal history of depth i-1.
  int var(int round_i, int k, long long formal_hist, int a, int b) const;
  /// Formal id of the depth-d prefix of an interned reachable history.
  long long formal_id(int hist_node, int depth) const;

  /// Conditional tables from an LP point (ratios of cumulative masses;
  /// uniform on zero-mass prefixes).
  GeneralisedStrategy reinterpret(const std::vector<double>& x) const;

 private:
  const InteractiveChannel* c_;
  int num_secrets_;
  int step_radix_;
  std::vector<long long> depth_offset_;  // vars: per round block start
  std::vector<std::pair<int, double>> objective_terms(int leaf_pos, int k) const;
  LinearProgram lp_;
};

struct NsReport {
  double value_log2 = 0.0;
  bool exhaustive = false;  // value is the capacity iff true, else a lower bound
  std::vector<double> guess_values;
};

/// log2 of the max over guessing functions of the LP optimum.
NsReport ns_minentropy_capacity(const InteractiveChannel& c, int num_secrets,
                                const std::vector<GuessFunction>& guesses,
                                bool exhaustive, const Budget& budget = {});

/// Certified upper bound on the non-signalling min-entropy value for the
/// given secret count: log2(1 + sum_tau sum_{k>0} max(0, max_r p(tau|k) -
/// p(tau|0))), each inner max an LP. Zero-capacity channels certify 0.
double ns_capacity_certificate(const InteractiveChannel& c, int num_secrets,
                               const Budget& budget = {});

}  // namespace qleak

#endif  // QLEAK_NONSIGNALLING_HPP
