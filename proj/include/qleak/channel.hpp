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

#ifndef QLEAK_CHANNEL_HPP
#define QLEAK_CHANNEL_HPP

#include <string>
#include <unordered_map>
#include <vector>

#include "qleak/common.hpp"

namespace qleak {

struct Alphabet {
  std::string name;
  std::vector<std::string> symbols;

  int size() const { return int(symbols.size()); }
  int index_of(const std::string& label) const;  // -1 when absent
  void check_valid() const;
};

/// One round of a full trace, all components as alphabet indices.
struct Step {
  int a, b, x, y;
  bool operator==(const Step&) const = default;
};
using Trace = std::vector<Step>;

struct TransitionEntry {
  int x, y;
  double p;
};
using TransitionDist = std::vector<TransitionEntry>;

struct Violation {
  std::string kind;  // "unnormalized" | "missing-transition" | "bad-symbol"
  std::string detail;
};

/// Interned tree of one party's views ((own message, own output) pairs).
/// Node 0 is the empty view.
class ViewTree {
 public:
  ViewTree() { nodes_.push_back({-1, 0, 0, 0}); }
  int root() const { return 0; }
  int child(int node, int msg, int out);              // interns
  int find_child(int node, int msg, int out) const;   // -1 when absent
  int parent(int node) const { return nodes_[node].parent; }
  int msg(int node) const { return nodes_[node].msg; }
  int out(int node) const { return nodes_[node].out; }
  int depth(int node) const { return nodes_[node].depth; }
  int size() const { return int(nodes_.size()); }
  /// View as a (msg, out) sequence from the root.
  std::vector<std::pair<int, int>> path(int node) const;

 private:
  struct Node {
    int parent;
    int msg, out;
    int depth;
  };
  std::vector<Node> nodes_;
  std::unordered_map<std::uint64_t, int> lookup_;
};

/// Finite n-round interactive channel. Full histories are interned as a tree
/// whose edges carry one Step; transitions are stored sparsely per
/// (history node, a, b) and absent keys are an error on access.
class InteractiveChannel {
 public:
  int rounds = 0;
  Alphabet A, B, X, Y;

  InteractiveChannel() { hist_nodes_.push_back({-1, {0, 0, 0, 0}, 0}); }

  int history_root() const { return 0; }
  int history_child(int node, Step s);             // interns
  int find_history_child(int node, Step s) const;  // -1 when absent
  int history_depth(int node) const { return hist_nodes_[node].depth; }
  int history_parent(int node) const { return hist_nodes_[node].parent; }
  Step history_step(int node) const { return hist_nodes_[node].step; }
  Trace history_trace(int node) const;
  int num_history_nodes() const { return int(hist_nodes_.size()); }

  void set_transition(int node, int a, int b, TransitionDist dist);
  bool has_transition(int node, int a, int b) const;
  const TransitionDist& transition(int node, int a, int b) const;

  /// Histories reachable with positive probability under some strategy
  /// pair, in interning order; includes the root. Length-n leaves included.
  std::vector<int> reachable_histories() const;

  /// Projection trees of the reachable part. Built lazily on first use.
  const ViewTree& alice_views() const;
  const ViewTree& bob_views() const;
  /// Per reachable history node, its projections (-1 for unvisited nodes).
  int alice_view_of(int node) const;
  int bob_view_of(int node) const;

 private:
  struct HistNode {
    int parent;
    Step step;
    int depth;
  };
  std::vector<HistNode> hist_nodes_;
  std::unordered_map<std::uint64_t, int> hist_lookup_;
  std::unordered_map<std::uint64_t, TransitionDist> transitions_;

  void ensure_projections() const;
  mutable bool projections_built_ = false;
  mutable ViewTree alice_views_, bob_views_;
  mutable std::vector<int> alice_view_of_, bob_view_of_;
  mutable std::vector<int> reachable_;

  std::uint64_t trans_key(int node, int a, int b) const;
};

/// Report-style well-formedness check: normalization of every stored row,
/// presence of transitions for every reachable (history, a, b), and symbol
/// range checks. Empty report iff well-formed.
std::vector<Violation> validate_channel(const InteractiveChannel& c);

/// The fair resource scheduler on bits: grants to whoever has received the
/// resource fewer times, breaking ties uniformly.
InteractiveChannel scheduler_channel(int n);

/// Projection of a trace onto one party's view.
enum class Side { Alice, Bob };
std::vector<std::pair<int, int>> project_trace(const Trace& t, Side side);

}  // namespace qleak

#endif  // QLEAK_CHANNEL_HPP
