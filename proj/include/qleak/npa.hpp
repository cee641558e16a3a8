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

#ifndef QLEAK_NPA_HPP
#define QLEAK_NPA_HPP

#include "qleak/moment.hpp"

namespace qleak {

struct NpaChannelReport {
  double value_log2 = 0.0;  // log2 of the max over guesses of the SDP optimum
  bool exhaustive = false;  // only then is this an upper bound on opt_i
  double sdp_tolerance = 0.0;
  int level = 0;
  std::vector<double> guess_optima;
  double worst_residual = 0.0;
};

/// All guessing functions (maps Bob-view traces -> secrets); throws a budget
/// error beyond the cap.
std::vector<GuessFunction> exhaustive_guesses(const InteractiveChannel& c,
                                              int num_secrets, double cap = 1e6);

/// Level-`level` moment bound for the channel: log2 of the max over the
/// supplied guessing functions of the SDP optimum. An upper bound on the
/// commuting-operator (hence entangled) min-entropy capacity when the guess
/// list is exhaustive; otherwise a lower bound on opt_level, flagged by the
/// caller via `exhaustive`.
NpaChannelReport npa_channel_bound(const InteractiveChannel& c, int num_secrets,
                                   const std::vector<GuessFunction>& guesses,
                                   bool exhaustive, int level,
                                   double sdp_tolerance = 1e-7,
                                   SdpMethod method = SdpMethod::Auto);

struct NpaGameReport {
  double value = 0.0;  // upper bound on the commuting-operator game value
  int level = 0;
  double sdp_tolerance = 0.0;
  double residual = 0.0;
};

NpaGameReport npa_game_bound(const NonLocalGame& g, int level,
                             double sdp_tolerance = 1e-7,
                             SdpMethod method = SdpMethod::Auto);

}  // namespace qleak

#endif  // QLEAK_NPA_HPP
