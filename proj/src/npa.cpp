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

#include "qleak/npa.hpp"

#include <cmath>

namespace qleak {

std::vector<GuessFunction> exhaustive_guesses(const InteractiveChannel& c,
                                              int num_secrets, double cap) {
  const std::size_t nleaves = bob_view_trace_leaves(c).size();
  double total = std::pow(double(num_secrets), double(nleaves));
  if (total > cap)
    throw_budget("guessing-function exhaustion budget exceeded: " +
                 std::to_string(total) + " candidates (cap " + std::to_string(cap) +
                 ")");
  std::vector<GuessFunction> out;
  const std::uint64_t n = std::uint64_t(total + 0.5);
  for (std::uint64_t rank = 0; rank < n; ++rank) {
    GuessFunction g(nleaves);
    std::uint64_t r = rank;
    for (std::size_t i = 0; i < nleaves; ++i) {
      g[i] = int(r % std::uint64_t(num_secrets));
      r /= std::uint64_t(num_secrets);
    }
    out.push_back(std::move(g));
  }
  return out;
}

NpaChannelReport npa_channel_bound(const InteractiveChannel& c, int num_secrets,
                                   const std::vector<GuessFunction>& guesses,
                                   bool exhaustive, int level, double sdp_tolerance,
                                   SdpMethod method) {
  if (guesses.empty()) throw_input("npa_channel_bound: no guessing functions supplied");
  MomentProblem mp = build_moment_problem(c, num_secrets, level);
  NpaChannelReport rep;
  rep.level = level;
  rep.exhaustive = exhaustive;
  rep.sdp_tolerance = sdp_tolerance;
  double best = 0.0;
  for (const GuessFunction& g : guesses) {
    mp.set_guess_objective(g);
    SdpResult r = solve_sdp(mp.sdp, sdp_tolerance, method);
    if (r.status != SdpResult::Status::Optimal)
      throw_solver("sdp did not converge on a channel bound (primal residual " +
                   std::to_string(r.primal_residual) + ", dual residual " +
                   std::to_string(r.dual_residual) + ", gap " + std::to_string(r.gap) +
                   ")");
    rep.guess_optima.push_back(r.primal_value);
    rep.worst_residual = std::max(
        {rep.worst_residual, r.primal_residual, r.dual_residual});
    best = std::max(best, r.primal_value);
  }
  rep.value_log2 = std::log2(std::max(best, 1e-300));
  return rep;
}

NpaGameReport npa_game_bound(const NonLocalGame& g, int level, double sdp_tolerance,
                             SdpMethod method) {
  MomentProblem mp = build_game_moment_problem(g, level);
  SdpResult r = solve_sdp(mp.sdp, sdp_tolerance, method);
  if (r.status != SdpResult::Status::Optimal)
    throw_solver("sdp did not converge on a game bound (primal residual " +
                 std::to_string(r.primal_residual) + ", dual residual " +
                 std::to_string(r.dual_residual) + ", gap " + std::to_string(r.gap) +
                 ")");
  NpaGameReport rep;
  rep.value = r.primal_value;
  rep.level = level;
  rep.sdp_tolerance = sdp_tolerance;
  rep.residual = std::max(r.primal_residual, r.dual_residual);
  return rep;
}

}  // namespace qleak
