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

#ifndef QLEAK_MOMENT_HPP
#define QLEAK_MOMENT_HPP

#include <unordered_map>

#include "qleak/channel.hpp"
#include "qleak/game.hpp"
#include "qleak/sdp.hpp"
#include "qleak/word.hpp"

namespace qleak {

/// Map from Bob-view full traces to secrets, indexed against the leaf list
/// returned by bob_view_trace_leaves.
using GuessFunction = std::vector<int>;

/// Reachable Bob-view nodes of depth n, in view-tree interning order.
std::vector<int> bob_view_trace_leaves(const InteractiveChannel& c);

/// Guess by the final received symbol: index of the last y modulo the secret
/// count. On compiled game channels with two secrets this is exactly the
/// relayed payload bit.
GuessFunction final_bit_guess(const InteractiveChannel& c, int num_secrets);

/// Finite level of the moment-matrix relaxation. Rows/columns are canonical
/// words; entries sharing a canonical S^dag T form share one scalar.
struct MomentProblem {
  std::vector<Word> index;  // word 0 is the unit
  std::unordered_map<Word, int, WordHash> moment_of;  // canonical form -> id
  int num_moments = 0;

  // Scalar p_{t|k} variables: (k, bob leaf) in k-major order over
  // bob_view_trace_leaves; empty for game problems.
  int num_secrets = 0;
  std::vector<int> bob_leaves;

  SemidefiniteProgram sdp;  // assembled constraints; objective set separately

  int p_var(int k, int leaf_pos) const {
    return 2 * (k * int(bob_leaves.size()) + leaf_pos);  // slack follows each p
  }

  /// Installs the min-entropy objective sum_t p_{t|g(t)} for one guess.
  void set_guess_objective(const GuessFunction& g);
};

/// Channel relaxation at the given level (level >= rounds enforced).
/// Index words are history-consistent window chains per side (reachable
/// views only), mixed Alice x Bob products entering as the level exceeds n.
/// Constraints: PSD, unit anchor, entry tying from the word relations,
/// zero pins, marginalization and non-signalling aggregate families (valid
/// for every commuting-operator strategy), the p linking rows, and p bounds.
MomentProblem build_moment_problem(const InteractiveChannel& c, int num_secrets,
                                   int level);

/// Standard game relaxation at the given level: all canonical words of
/// length <= level; objective sum mu(x,y) D(x,y,a,b) <A^x_a B^y_b>.
MomentProblem build_game_moment_problem(const NonLocalGame& g, int level);

}  // namespace qleak

#endif  // QLEAK_MOMENT_HPP
