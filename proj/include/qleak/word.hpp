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

#ifndef QLEAK_WORD_HPP
#define QLEAK_WORD_HPP

#include <compare>
#include <cstdint>
#include <string>
#include <vector>

namespace qleak {

/// Formal operator symbol of the moment hierarchy. Channel symbols carry a
/// secret (Alice only) and a view-tree node as history; game symbols carry a
/// question. Symbols of one family (same side, secret, history/question) are
/// orthogonal projectors across messages.
struct OperatorSymbol {
  enum class Family : std::uint8_t {
    One,
    Zero,
    AliceChannel,
    BobChannel,
    AliceGame,
    BobGame
  };
  Family family = Family::One;
  int k = -1;        // secret index (AliceChannel only)
  int history = -1;  // view node (channel) or question (game)
  int msg = -1;      // own message / answer

  auto operator<=>(const OperatorSymbol&) const = default;

  bool alice_side() const {
    return family == Family::AliceChannel || family == Family::AliceGame;
  }
  bool bob_side() const {
    return family == Family::BobChannel || family == Family::BobGame;
  }
  bool same_family(const OperatorSymbol& o) const {
    return family == o.family && k == o.k && history == o.history;
  }
};

/// Product of symbols, leftmost applied last (the round-n operator sits at
/// position 0 in the displayed products). The empty word is the unit.
using Word = std::vector<OperatorSymbol>;

Word one_word();
Word zero_word();
bool is_zero(const Word& w);
bool is_one(const Word& w);

/// Rewrites to the canonical form: absorb units, collapse to zero on any
/// zero or orthogonal adjacent pair, collapse idempotent repeats, and
/// stable-sort Alice symbols left of Bob symbols. Idempotent.
Word canonicalize_word(Word w);

/// Adjoint of a word: reversal (symbols are self-adjoint).
Word word_adjoint(Word w);

/// Canonical key of the moment <S^dag T>: real moment matrices identify a
/// word with its adjoint, so this is the lexicographic min of the canonical
/// word and its reversed canonical form.
Word moment_word(const Word& sdag_t);

std::string word_to_string(const Word& w);

struct WordHash {
  std::size_t operator()(const Word& w) const;
};

}  // namespace qleak

#endif  // QLEAK_WORD_HPP
