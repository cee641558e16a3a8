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

#ifndef QLEAK_GAME_HPP
#define QLEAK_GAME_HPP

#include "qleak/quantum.hpp"

namespace qleak {

/// Two-player one-round non-local game in the compiler orientation:
/// questions (x, y) in, answers (a, b) back, referee accepts per `win`.
struct NonLocalGame {
  Alphabet questionsA, questionsB, answersA, answersB;
  std::vector<double> mu;     // mu[x * |questionsB| + y]
  std::vector<bool> win;      // win[((x*|Qb|+y)*|Aa|+a)*|Ab|+b]

  double mu_at(int x, int y) const { return mu[std::size_t(x * questionsB.size() + y)]; }
  bool wins(int x, int y, int a, int b) const {
    return win[std::size_t(((x * questionsB.size() + y) * answersA.size() + a) *
                               answersB.size() +
                           b)];
  }
  void check_valid() const;
};

/// Exact classical value by enumerating deterministic answer functions on
/// both sides.
double classical_game_value(const NonLocalGame& g, const Budget& budget = {});

/// Win probability of an explicit quantum strategy; rejects invalid
/// strategies naming the violated invariant.
double quantum_game_value(const NonLocalGame& g, const GameQuantumStrategy& s);

/// The two-round channel that plays the game and relays Alice's round-1
/// payload bit to Bob exactly when the game is won. Alphabets:
/// A = answersA x {0,1}, B = answersB, X = questionsA, Y = questionsB x {0,1}
/// (payload component fastest, so a Y index mod 2 is the bit).
InteractiveChannel compile_game_to_channel(const NonLocalGame& g);

struct BuiltinGame {
  NonLocalGame game;
  GameQuantumStrategy strategy;
};

/// Known name: "chsh". Uniform questions, win iff XOR of answers equals AND
/// of questions, rank-1 projector strategy at the standard angles on the
/// maximally entangled two-qubit state.
BuiltinGame builtin_game(const std::string& name);

}  // namespace qleak

#endif  // QLEAK_GAME_HPP
