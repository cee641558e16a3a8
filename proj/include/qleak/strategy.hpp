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

#ifndef QLEAK_STRATEGY_HPP
#define QLEAK_STRATEGY_HPP

#include <functional>
#include <vector>

#include "qleak/channel.hpp"

namespace qleak {

/// Deterministic next-message choice per own-view node. The table is indexed
/// by view-tree node id and is total on the enumeration domain (reachable
/// views of depth < n); other entries are -1.
struct DeterministicStrategy {
  Side side = Side::Alice;
  std::vector<int> table;

  int message_at(int view_node) const;
};

/// Enumeration domain: reachable own-view nodes of depth < n, in interning
/// order. Strategies are functions domain -> own message alphabet.
std::vector<int> strategy_domain(const InteractiveChannel& c, Side side);

/// |alphabet|^|domain| as a double (may overflow to inf).
double strategy_count(const InteractiveChannel& c, Side side);

/// Mixed-radix enumeration without materializing all strategies.
class StrategyEnumerator {
 public:
  StrategyEnumerator(const InteractiveChannel& c, Side side);
  std::uint64_t count() const { return count_; }
  /// Fills `s` with the strategy of the given rank (row-major over the
  /// domain, lowest domain index = fastest digit).
  void assign(std::uint64_t rank, DeterministicStrategy& s) const;
  DeterministicStrategy make(std::uint64_t rank) const;

 private:
  const InteractiveChannel* channel_;
  Side side_;
  std::vector<int> domain_;
  int radix_;
  std::uint64_t count_;
  int table_size_;
};

/// Weighted full trace: leaf history node plus its probability.
struct TraceMass {
  int leaf;
  double p;
};

/// Product-formula distribution over full-length traces for a deterministic
/// strategy pair. Weights follow prod g_i h_i f_i with 0/1 strategy factors.
std::vector<TraceMass> trace_distribution(const InteractiveChannel& c,
                                          const DeterministicStrategy& alice,
                                          const DeterministicStrategy& bob);

/// Calls `fn(bob_view_leaf, p)` for every positive-probability trace of the
/// pair, without materializing the trace list. Hot path of the capacity
/// enumerations.
void for_each_trace(const InteractiveChannel& c,
                    const DeterministicStrategy& alice,
                    const DeterministicStrategy& bob,
                    const std::function<void(int, int, double)>& fn);

}  // namespace qleak

#endif  // QLEAK_STRATEGY_HPP
