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

#ifndef QLEAK_VULNERABILITY_HPP
#define QLEAK_VULNERABILITY_HPP

#include <string>
#include <vector>

#include "qleak/strategy.hpp"

namespace qleak {

enum class GainMode { Additive, Multiplicative };

/// Vulnerability measure on priors. Shannon is the negated entropy, min-
/// entropy the log of the top mass, g-vulnerability the best expected gain
/// (log-scaled in multiplicative mode). All logs base 2.
struct VulnerabilityMeasure {
  enum class Kind { Shannon, MinEntropy, GVulnerability } kind;
  // g-vulnerability only:
  std::vector<std::string> guesses;
  std::vector<std::vector<double>> gain;  // gain[w][k] in [0,1]
  GainMode mode = GainMode::Multiplicative;

  static VulnerabilityMeasure shannon() { return {Kind::Shannon, {}, {}, GainMode::Multiplicative}; }
  static VulnerabilityMeasure min_entropy() { return {Kind::MinEntropy, {}, {}, GainMode::Multiplicative}; }
  static VulnerabilityMeasure g_vulnerability(std::vector<std::string> guesses,
                                              std::vector<std::vector<double>> gain,
                                              GainMode mode);
};

/// V applied to a single distribution (the prior side of leakage).
double vulnerability(const VulnerabilityMeasure& v, const std::vector<double>& dist);

/// Expected posterior vulnerability of a finite joint law p(k, t), laid out
/// as joint[t][k]. Shannon and additive g average the per-posterior value;
/// min-entropy and multiplicative g average the raw gain inside the log
/// (which is what makes min-entropy leakage equal log of the gain ratio).
double posterior_vulnerability(const VulnerabilityMeasure& v,
                               const std::vector<std::vector<double>>& joint);

/// Secret set with prior and Alice behaviour per secret.
struct SecretModel {
  std::vector<std::string> secrets;
  std::vector<double> prior;
  std::vector<DeterministicStrategy> alice;  // one per secret
};

/// Expected posterior-minus-prior vulnerability of the Bob view, enumerating
/// Bob-view traces of positive probability exactly.
double leakage(const VulnerabilityMeasure& v, const SecretModel& secret,
               const InteractiveChannel& c, const DeterministicStrategy& bob);

/// Joint law p(bob view leaf, k) for the secret model; rows indexed by the
/// touched bob-view leaves (returned separately, in leaf order).
void bob_view_joint(const SecretModel& secret, const InteractiveChannel& c,
                    const DeterministicStrategy& bob,
                    std::vector<int>& leaves,
                    std::vector<std::vector<double>>& joint);

}  // namespace qleak

#endif  // QLEAK_VULNERABILITY_HPP
