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

#include "qleak/channel.hpp"

#include <algorithm>
#include <set>

namespace qleak {

int Alphabet::index_of(const std::string& label) const {
  for (int i = 0; i < size(); ++i)
    if (symbols[std::size_t(i)] == label) return i;
  return -1;
}

void Alphabet::check_valid() const {
  if (symbols.empty()) throw_input("alphabet " + name + " is empty");
  std::set<std::string> seen(symbols.begin(), symbols.end());
  if (seen.size() != symbols.size())
    throw_input("alphabet " + name + " has duplicate symbols");
}

namespace {
std::uint64_t pack4(int a, int b, int c, int d) {
  return (std::uint64_t(std::uint16_t(a)) << 48) |
         (std::uint64_t(std::uint16_t(b)) << 32) |
         (std::uint64_t(std::uint16_t(c)) << 16) | std::uint64_t(std::uint16_t(d));
}
std::uint64_t pack_node(int node, std::uint64_t rest) {
  return (std::uint64_t(std::uint32_t(node)) << 32) ^ (rest * 0x9e3779b97f4a7c15ull);
}
}  // namespace

int ViewTree::child(int node, int m, int o) {
  std::uint64_t key = pack_node(node, pack4(0, 0, m, o));
  auto it = lookup_.find(key);
  if (it != lookup_.end()) return it->second;
  int id = int(nodes_.size());
  nodes_.push_back({node, m, o, nodes_[std::size_t(node)].depth + 1});
  lookup_.emplace(key, id);
  return id;
}

int ViewTree::find_child(int node, int m, int o) const {
  auto it = lookup_.find(pack_node(node, pack4(0, 0, m, o)));
  return it == lookup_.end() ? -1 : it->second;
}

std::vector<std::pair<int, int>> ViewTree::path(int node) const {
  std::vector<std::pair<int, int>> out;
  for (int cur = node; cur != 0; cur = nodes_[std::size_t(cur)].parent)
    out.emplace_back(nodes_[std::size_t(cur)].msg, nodes_[std::size_t(cur)].out);
  std::reverse(out.begin(), out.end());
  return out;
}

std::uint64_t InteractiveChannel::trans_key(int node, int a, int b) const {
  return pack_node(node, pack4(1, 0, a, b));
}

int InteractiveChannel::history_child(int node, Step s) {
  std::uint64_t key = pack_node(node, pack4(s.a, s.b, s.x, s.y));
  auto it = hist_lookup_.find(key);
  if (it != hist_lookup_.end()) return it->second;
  int id = int(hist_nodes_.size());
  hist_nodes_.push_back({node, s, hist_nodes_[std::size_t(node)].depth + 1});
  hist_lookup_.emplace(key, id);
  projections_built_ = false;
  return id;
}

int InteractiveChannel::find_history_child(int node, Step s) const {
  auto it = hist_lookup_.find(pack_node(node, pack4(s.a, s.b, s.x, s.y)));
  return it == hist_lookup_.end() ? -1 : it->second;
}

Trace InteractiveChannel::history_trace(int node) const {
  Trace t;
  for (int cur = node; cur != 0; cur = hist_nodes_[std::size_t(cur)].parent)
    t.push_back(hist_nodes_[std::size_t(cur)].step);
  std::reverse(t.begin(), t.end());
  return t;
}

void InteractiveChannel::set_transition(int node, int a, int b, TransitionDist dist) {
  transitions_[trans_key(node, a, b)] = std::move(dist);
  projections_built_ = false;
}

bool InteractiveChannel::has_transition(int node, int a, int b) const {
  return transitions_.count(trans_key(node, a, b)) != 0;
}

const TransitionDist& InteractiveChannel::transition(int node, int a, int b) const {
  auto it = transitions_.find(trans_key(node, a, b));
  if (it == transitions_.end())
    throw_input("missing transition at round " +
                std::to_string(hist_nodes_[std::size_t(node)].depth + 1) + " for (a=" +
                A.symbols[std::size_t(a)] + ", b=" + B.symbols[std::size_t(b)] + ")");
  return it->second;
}

void InteractiveChannel::ensure_projections() const {
  if (projections_built_) return;
  alice_views_ = ViewTree();
  bob_views_ = ViewTree();
  alice_view_of_.assign(hist_nodes_.size(), -1);
  bob_view_of_.assign(hist_nodes_.size(), -1);
  reachable_.clear();

  // BFS over histories reachable through stored transition supports; every
  // message pair is playable, outputs follow the support.
  std::vector<int> queue{0};
  alice_view_of_[0] = 0;
  bob_view_of_[0] = 0;
  for (std::size_t qi = 0; qi < queue.size(); ++qi) {
    int node = queue[qi];
    reachable_.push_back(node);
    if (hist_nodes_[std::size_t(node)].depth >= rounds) continue;
    for (int a = 0; a < A.size(); ++a) {
      for (int b = 0; b < B.size(); ++b) {
        auto it = transitions_.find(trans_key(node, a, b));
        if (it == transitions_.end()) continue;
        for (const TransitionEntry& e : it->second) {
          if (e.p <= 0.0) continue;
          int child = find_history_child(node, {a, b, e.x, e.y});
          if (child < 0) {
            // Interning is cheap and keeps walkers allocation-free later.
            child = const_cast<InteractiveChannel*>(this)->history_child(node, {a, b, e.x, e.y});
            alice_view_of_.resize(hist_nodes_.size(), -1);
            bob_view_of_.resize(hist_nodes_.size(), -1);
          }
          if (alice_view_of_[std::size_t(child)] < 0) {
            alice_view_of_[std::size_t(child)] =
                alice_views_.child(alice_view_of_[std::size_t(node)], a, e.x);
            bob_view_of_[std::size_t(child)] =
                bob_views_.child(bob_view_of_[std::size_t(node)], b, e.y);
            queue.push_back(child);
          }
        }
      }
    }
  }
  projections_built_ = true;
}

std::vector<int> InteractiveChannel::reachable_histories() const {
  ensure_projections();
  return reachable_;
}

const ViewTree& InteractiveChannel::alice_views() const {
  ensure_projections();
  return alice_views_;
}
const ViewTree& InteractiveChannel::bob_views() const {
  ensure_projections();
  return bob_views_;
}
int InteractiveChannel::alice_view_of(int node) const {
  ensure_projections();
  return alice_view_of_[std::size_t(node)];
}
int InteractiveChannel::bob_view_of(int node) const {
  ensure_projections();
  return bob_view_of_[std::size_t(node)];
}

std::vector<Violation> validate_channel(const InteractiveChannel& c) {
  std::vector<Violation> out;
  if (c.rounds < 1) out.push_back({"bad-symbol", "rounds must be >= 1"});
  for (const Alphabet* al : {&c.A, &c.B, &c.X, &c.Y}) {
    if (al->symbols.empty()) out.push_back({"bad-symbol", "alphabet " + al->name + " empty"});
  }
  // Walk reachable histories; each (history, a, b) must have a stored,
  // normalized, in-range row.
  std::vector<int> stack{0};
  while (!stack.empty()) {
    int node = stack.back();
    stack.pop_back();
    if (c.history_depth(node) >= c.rounds) continue;
    for (int a = 0; a < c.A.size(); ++a) {
      for (int b = 0; b < c.B.size(); ++b) {
        if (!c.has_transition(node, a, b)) {
          out.push_back({"missing-transition",
                         "round " + std::to_string(c.history_depth(node) + 1) + " history#" +
                             std::to_string(node) + " a=" + c.A.symbols[std::size_t(a)] +
                             " b=" + c.B.symbols[std::size_t(b)]});
          continue;
        }
        const TransitionDist& d = c.transition(node, a, b);
        double total = 0.0;
        bool bad_symbol = false;
        for (const TransitionEntry& e : d) {
          total += e.p;
          if (e.x < 0 || e.x >= c.X.size() || e.y < 0 || e.y >= c.Y.size()) bad_symbol = true;
          if (e.p < -kDistTol) bad_symbol = true;
        }
        if (bad_symbol)
          out.push_back({"bad-symbol", "row at history#" + std::to_string(node) + " a=" +
                                           std::to_string(a) + " b=" + std::to_string(b)});
        if (std::abs(total - 1.0) > kDistTol)
          out.push_back({"unnormalized", "row at history#" + std::to_string(node) + " a=" +
                                             c.A.symbols[std::size_t(a)] + " b=" +
                                             c.B.symbols[std::size_t(b)] + " sums to " +
                                             std::to_string(total)});
        for (const TransitionEntry& e : d) {
          if (e.p <= 0.0) continue;
          int child = c.find_history_child(node, {a, b, e.x, e.y});
          if (child >= 0) stack.push_back(child);
        }
      }
    }
  }
  return out;
}

InteractiveChannel scheduler_channel(int n) {
  if (n < 1) throw_input("scheduler_channel: n must be >= 1");
  InteractiveChannel c;
  c.rounds = n;
  c.A = {"A", {"0", "1"}};
  c.B = {"B", {"0", "1"}};
  c.X = {"X", {"0", "1"}};
  c.Y = {"Y", {"0", "1"}};

  // Depth-first construction over reachable histories, tracking the grant
  // counts (#X, #Y) along the path.
  struct Frame {
    int node, depth, cx, cy;
  };
  std::vector<Frame> stack{{0, 0, 0, 0}};
  while (!stack.empty()) {
    Frame f = stack.back();
    stack.pop_back();
    if (f.depth >= n) continue;
    for (int a = 0; a < 2; ++a) {
      for (int b = 0; b < 2; ++b) {
        TransitionDist dist;
        if (a == 1 && b == 0) {
          dist = {{1, 0, 1.0}};
        } else if (a == 0 && b == 1) {
          dist = {{0, 1, 1.0}};
        } else if (a == 0 && b == 0) {
          dist = {{0, 0, 1.0}};
        } else if (f.cx < f.cy) {
          dist = {{1, 0, 1.0}};
        } else if (f.cx > f.cy) {
          dist = {{0, 1, 1.0}};
        } else {
          dist = {{1, 0, 0.5}, {0, 1, 0.5}};
        }
        c.set_transition(f.node, a, b, dist);
        for (const TransitionEntry& e : dist) {
          int child = c.history_child(f.node, {a, b, e.x, e.y});
          stack.push_back({child, f.depth + 1, f.cx + (e.x == 1), f.cy + (e.y == 1)});
        }
      }
    }
  }
  return c;
}

std::vector<std::pair<int, int>> project_trace(const Trace& t, Side side) {
  std::vector<std::pair<int, int>> out;
  out.reserve(t.size());
  for (const Step& s : t)
    out.emplace_back(side == Side::Alice ? s.a : s.b, side == Side::Alice ? s.x : s.y);
  return out;
}

}  // namespace qleak
