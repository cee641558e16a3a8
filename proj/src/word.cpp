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

#include "qleak/word.hpp"

#include <algorithm>

namespace qleak {

Word one_word() { return {}; }

Word zero_word() { return {OperatorSymbol{OperatorSymbol::Family::Zero, -1, -1, -1}}; }

bool is_zero(const Word& w) {
  return w.size() == 1 && w[0].family == OperatorSymbol::Family::Zero;
}

bool is_one(const Word& w) { return w.empty(); }

Word canonicalize_word(Word w) {
  // Zero absorbs everything; units vanish.
  for (const auto& s : w)
    if (s.family == OperatorSymbol::Family::Zero) return zero_word();
  std::erase_if(w, [](const OperatorSymbol& s) {
    return s.family == OperatorSymbol::Family::One;
  });

  // Alice symbols commute past Bob symbols: stable partition.
  std::stable_partition(w.begin(), w.end(),
                        [](const OperatorSymbol& s) { return s.alice_side(); });

  // Idempotence / orthogonality within each side, to a fixed point.
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i + 1 < w.size(); ++i) {
      if (!w[i].same_family(w[i + 1])) continue;
      if (w[i].msg == w[i + 1].msg) {
        w.erase(w.begin() + long(i));
        changed = true;
        break;
      }
      return zero_word();
    }
  }
  return w;
}

Word word_adjoint(Word w) {
  std::reverse(w.begin(), w.end());
  return w;
}

Word moment_word(const Word& sdag_t) {
  Word a = canonicalize_word(sdag_t);
  if (is_zero(a)) return a;
  Word b = canonicalize_word(word_adjoint(sdag_t));
  return std::min(a, b);
}

std::string word_to_string(const Word& w) {
  if (is_one(w)) return "1";
  if (is_zero(w)) return "0";
  std::string out;
  for (const auto& s : w) {
    if (!out.empty()) out += '.';
    switch (s.family) {
      case OperatorSymbol::Family::AliceChannel:
        out += "A[k" + std::to_string(s.k) + ",v" + std::to_string(s.history) + "," +
               std::to_string(s.msg) + "]";
        break;
      case OperatorSymbol::Family::BobChannel:
        out += "B[v" + std::to_string(s.history) + "," + std::to_string(s.msg) + "]";
        break;
      case OperatorSymbol::Family::AliceGame:
        out += "A[x" + std::to_string(s.history) + "," + std::to_string(s.msg) + "]";
        break;
      case OperatorSymbol::Family::BobGame:
        out += "B[y" + std::to_string(s.history) + "," + std::to_string(s.msg) + "]";
        break;
      default:
        out += "?";
    }
  }
  return out;
}

std::size_t WordHash::operator()(const Word& w) const {
  std::size_t h = 1469598103934665603ull;
  auto mix = [&h](std::size_t v) {
    h ^= v;
    h *= 1099511628211ull;
  };
  for (const auto& s : w) {
    mix(std::size_t(s.family));
    mix(std::size_t(std::uint32_t(s.k)));
    mix(std::size_t(std::uint32_t(s.history)));
    mix(std::size_t(std::uint32_t(s.msg)));
  }
  return h;
}

}  // namespace qleak
