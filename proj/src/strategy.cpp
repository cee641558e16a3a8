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

#include "qleak/strategy.hpp"

#include <cmath>

namespace qleak {

int DeterministicStrategy::message_at(int view_node) const {
  if (view_node < 0 || view_node >= int(table.size()) || table[std::size_t(view_node)] < 0)
    throw_input("strategy references undefined history (view node " +
                std::to_string(view_node) + ")");
  return table[std::size_t(view_node)];
}

std::vector<int> strategy_domain(const InteractiveChannel& c, Side side) {
  const ViewTree& tree = side == Side::Alice ? c.alice_views() : c.bob_views();
  std::vector<int> domain;
  for (int v = 0; v < tree.size(); ++v)
    if (tree.depth(v) < c.rounds) domain.push_back(v);
  return domain;
}

double strategy_count(const InteractiveChannel& c, Side side) {
  int radix = side == Side::Alice ? c.A.size() : c.B.size();
  return std::pow(double(radix), double(strategy_domain(c, side).size()));
}

StrategyEnumerator::StrategyEnumerator(const InteractiveChannel& c, Side side)
    : channel_(&c), side_(side), domain_(strategy_domain(c, side)) {
  radix_ = side == Side::Alice ? c.A.size() : c.B.size();
  double count = std::pow(double(radix_), double(domain_.size()));
  if (count > 9e18) throw_budget("strategy space too large to enumerate");
  count_ = std::uint64_t(count + 0.5);
  const ViewTree& tree = side == Side::Alice ? c.alice_views() : c.bob_views();
  table_size_ = tree.size();
}

void StrategyEnumerator::assign(std::uint64_t rank, DeterministicStrategy& s) const {
  s.side = side_;
  if (int(s.table.size()) != table_size_) s.table.assign(std::size_t(table_size_), -1);
  for (int v : domain_) {
    s.table[std::size_t(v)] = int(rank % std::uint64_t(radix_));
    rank /= std::uint64_t(radix_);
  }
}

DeterministicStrategy StrategyEnumerator::make(std::uint64_t rank) const {
  DeterministicStrategy s;
  assign(rank, s);
  return s;
}

namespace {

template <typename Fn>
void walk(const InteractiveChannel& c, const DeterministicStrategy& alice,
          const DeterministicStrategy& bob, int node, int av, int bv, double p,
          Fn&& fn) {
  if (c.history_depth(node) == c.rounds) {
    fn(node, bv, p);
    return;
  }
  int a = alice.message_at(av);
  int b = bob.message_at(bv);
  const TransitionDist& dist = c.transition(node, a, b);
  for (const TransitionEntry& e : dist) {
    if (e.p <= 0.0) continue;
    int child = c.find_history_child(node, {a, b, e.x, e.y});
    if (child < 0)
      throw_input("trace walk reached an uninterned history; validate the channel");
    walk(c, alice, bob, child, c.alice_view_of(child), c.bob_view_of(child), p * e.p,
         std::forward<Fn>(fn));
  }
}

}  // namespace

std::vector<TraceMass> trace_distribution(const InteractiveChannel& c,
                                          const DeterministicStrategy& alice,
                                          const DeterministicStrategy& bob) {
  if (alice.side != Side::Alice || bob.side != Side::Bob)
    throw_input("trace_distribution: strategy sides are swapped");
  std::vector<TraceMass> out;
  walk(c, alice, bob, 0, 0, 0, 1.0,
       [&](int leaf, int, double p) { out.push_back({leaf, p}); });
  return out;
}

void for_each_trace(const InteractiveChannel& c, const DeterministicStrategy& alice,
                    const DeterministicStrategy& bob,
                    const std::function<void(int, int, double)>& fn) {
  walk(c, alice, bob, 0, 0, 0, 1.0,
       [&](int leaf, int bv, double p) { fn(leaf, bv, p); });
}

}  // namespace qleak
