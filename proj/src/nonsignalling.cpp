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

#include "qleak/nonsignalling.hpp"

#include <algorithm>
#include <cmath>

namespace qleak {

const std::vector<double>& GeneralisedStrategy::table(int k, int hist) const {
  auto it = tables.find({k, hist});
  if (it == tables.end())
    throw_input("generalised strategy has no table for k=" + std::to_string(k) +
                " history#" + std::to_string(hist));
  return it->second;
}

std::vector<Violation> check_non_signalling(const GeneralisedStrategy& s,
                                            const InteractiveChannel& c) {
  std::vector<Violation> out;
  const int na = c.A.size(), nb = c.B.size();

  for (const auto& [key, row] : s.tables) {
    if (int(row.size()) != na * nb) {
      out.push_back({"shape", "table k=" + std::to_string(key.first) + " history#" +
                                  std::to_string(key.second)});
      continue;
    }
    double total = 0.0;
    for (double v : row) total += v;
    if (std::abs(total - 1.0) > kDistTol)
      out.push_back({"unnormalized", "table k=" + std::to_string(key.first) +
                                         " history#" + std::to_string(key.second)});
  }

  // Condition (i): Bob's next-message marginal agrees across secrets and
  // across histories with equal Bob projections.
  std::map<int, std::vector<std::pair<int, int>>> by_bob_view;  // view -> (k, hist)
  for (const auto& [key, row] : s.tables)
    by_bob_view[c.bob_view_of(key.second)].push_back(key);
  for (const auto& [view, entries] : by_bob_view) {
    for (std::size_t i = 0; i < entries.size(); ++i) {
      for (std::size_t j = i + 1; j < entries.size(); ++j) {
        const auto& ri = s.table(entries[i].first, entries[i].second);
        const auto& rj = s.table(entries[j].first, entries[j].second);
        for (int bm = 0; bm < nb; ++bm) {
          double mi = 0.0, mj = 0.0;
          for (int a = 0; a < na; ++a) {
            mi += ri[std::size_t(a * nb + bm)];
            mj += rj[std::size_t(a * nb + bm)];
          }
          if (std::abs(mi - mj) > kDistTol)
            out.push_back(
                {"non-signalling-i",
                 "k=" + std::to_string(entries[i].first) + " t#" +
                     std::to_string(entries[i].second) + " vs k'=" +
                     std::to_string(entries[j].first) + " t'#" +
                     std::to_string(entries[j].second) + " b=" + c.B.symbols[std::size_t(bm)]});
        }
      }
    }
  }

  // Condition (ii): Alice's marginal agrees across histories with equal
  // Alice projections, within each secret.
  std::map<std::pair<int, int>, std::vector<int>> by_alice_view;  // (k, view) -> hists
  for (const auto& [key, row] : s.tables)
    by_alice_view[{key.first, c.alice_view_of(key.second)}].push_back(key.second);
  for (const auto& [kv, hists] : by_alice_view) {
    for (std::size_t i = 0; i < hists.size(); ++i) {
      for (std::size_t j = i + 1; j < hists.size(); ++j) {
        const auto& ri = s.table(kv.first, hists[i]);
        const auto& rj = s.table(kv.first, hists[j]);
        for (int a = 0; a < na; ++a) {
          double mi = 0.0, mj = 0.0;
          for (int bm = 0; bm < nb; ++bm) {
            mi += ri[std::size_t(a * nb + bm)];
            mj += rj[std::size_t(a * nb + bm)];
          }
          if (std::abs(mi - mj) > kDistTol)
            out.push_back({"non-signalling-ii",
                           "k=" + std::to_string(kv.first) + " t#" +
                               std::to_string(hists[i]) + " t'#" +
                               std::to_string(hists[j]) + " a=" +
                               c.A.symbols[std::size_t(a)]});
        }
      }
    }
  }
  return out;
}

std::vector<TraceMass> generalized_trace_distribution(const InteractiveChannel& c,
                                                      const GeneralisedStrategy& s,
                                                      int k) {
  std::vector<TraceMass> out;
  struct Frame {
    int node;
    double w;
  };
  std::vector<Frame> stack{{0, 1.0}};
  while (!stack.empty()) {
    Frame f = stack.back();
    stack.pop_back();
    if (c.history_depth(f.node) == c.rounds) {
      out.push_back({f.node, f.w});
      continue;
    }
    const auto& row = s.table(k, f.node);
    const int nb = c.B.size();
    for (int a = 0; a < c.A.size(); ++a) {
      for (int bm = 0; bm < nb; ++bm) {
        double g = row[std::size_t(a * nb + bm)];
        if (g <= 0.0) continue;
        for (const TransitionEntry& e : c.transition(f.node, a, bm)) {
          if (e.p <= 0.0) continue;
          int child = c.find_history_child(f.node, {a, bm, e.x, e.y});
          if (child < 0) throw_input("generalized walk hit an uninterned history");
          stack.push_back({child, f.w * g * e.p});
        }
      }
    }
  }
  std::sort(out.begin(), out.end(), [](const TraceMass& a, const TraceMass& b) {
    return a.leaf < b.leaf;
  });
  return out;
}

// ---------------------------------------------------------------------------

NsLp::NsLp(const InteractiveChannel& c, int num_secrets, const Budget& budget)
    : c_(&c), num_secrets_(num_secrets) {
  const int na = c.A.size(), nb = c.B.size(), nx = c.X.size(), ny = c.Y.size();
  step_radix_ = na * nb * nx * ny;
  const int ab = na * nb;

  // Variable layout: rounds 1..n, blocks of num_secrets * S^(i-1) * ab.
  depth_offset_.assign(std::size_t(c.rounds) + 1, 0);
  double total = 0.0;
  long long histories = 1;
  for (int i = 1; i <= c.rounds; ++i) {
    depth_offset_[std::size_t(i)] = long long(total);
    total += double(num_secrets) * double(histories) * double(ab);
    if (total > 5e5)
      throw_budget("non-signalling LP too large: " + std::to_string(total) +
                   " variables (limit 5e5, strategy budget " +
                   std::to_string(budget.strategies_per_side) + ")");
    histories *= step_radix_;
  }
  lp_.num_vars = int(total);
  lp_.lower.assign(std::size_t(lp_.num_vars), 0.0);
  lp_.upper.assign(std::size_t(lp_.num_vars), 1.0);
  lp_.objective.assign(std::size_t(lp_.num_vars), 0.0);
  lp_.maximize = true;

  // Normalization at round 1.
  for (int k = 0; k < num_secrets; ++k) {
    std::vector<std::pair<int, double>> row;
    for (int a = 0; a < na; ++a)
      for (int bm = 0; bm < nb; ++bm) row.push_back({var(1, k, 0, a, bm), 1.0});
    lp_.add_row(std::move(row), '=', 1.0);
  }

  // Consistency: each formal branch conserves its parent mass.
  long long level_count = 1;
  for (int i = 1; i < c.rounds; ++i) {
    for (int k = 0; k < num_secrets; ++k) {
      for (long long h = 0; h < level_count; ++h) {
        for (int a = 0; a < na; ++a) {
          for (int bm = 0; bm < nb; ++bm) {
            for (int x = 0; x < nx; ++x) {
              for (int y = 0; y < ny; ++y) {
                long long child =
                    h * step_radix_ + ((long long(a) * nb + bm) * nx + x) * ny + y;
                std::vector<std::pair<int, double>> row;
                for (int a2 = 0; a2 < na; ++a2)
                  for (int b2 = 0; b2 < nb; ++b2)
                    row.push_back({var(i + 1, k, child, a2, b2), 1.0});
                row.push_back({var(i, k, h, a, bm), -1.0});
                lp_.add_row(std::move(row), '=', 0.0);
              }
            }
          }
        }
      }
    }
    level_count *= step_radix_;
  }

  // Aggregate non-signalling families. Formal histories of depth d are
  // digit strings; decompose digits into (a, b, x, y).
  auto digits_of = [&](long long h, int d) {
    std::vector<Step> steps(std::size_t(d));
    for (int i = d - 1; i >= 0; --i) {
      long long digit = h % step_radix_;
      h /= step_radix_;
      Step s{};
      s.y = int(digit % ny);
      digit /= ny;
      s.x = int(digit % nx);
      digit /= nx;
      s.b = int(digit % nb);
      digit /= nb;
      s.a = int(digit);
      steps[std::size_t(i)] = s;
    }
    return steps;
  };

  level_count = 1;
  for (int i = 1; i <= c.rounds; ++i) {
    const int d = i - 1;
    // (i): key (bob b/y part, current b); expressions per (k, x-seq).
    std::map<std::pair<std::vector<int>, int>,
             std::map<std::pair<int, std::vector<int>>, std::vector<int>>>
        cond_i;
    // (ii): key (k, alice a/x part, current a); expressions per y-seq.
    std::map<std::tuple<int, std::vector<int>, int>,
             std::map<std::vector<int>, std::vector<int>>>
        cond_ii;
    for (long long h = 0; h < level_count; ++h) {
      auto steps = digits_of(h, d);
      std::vector<int> bob_part, alice_part, xs, ys;
      for (const Step& s : steps) {
        bob_part.push_back(s.b);
        bob_part.push_back(s.y);
        alice_part.push_back(s.a);
        alice_part.push_back(s.x);
        xs.push_back(s.x);
        ys.push_back(s.y);
      }
      for (int k = 0; k < num_secrets; ++k) {
        for (int bm = 0; bm < nb; ++bm) {
          auto& expr = cond_i[{bob_part, bm}][{k, xs}];
          for (int a = 0; a < na; ++a) expr.push_back(var(i, k, h, a, bm));
        }
        for (int a = 0; a < na; ++a) {
          auto& expr = cond_ii[{k, alice_part, a}][ys];
          for (int bm = 0; bm < nb; ++bm) expr.push_back(var(i, k, h, a, bm));
        }
      }
    }
    auto emit_ties = [&](auto& groups) {
      for (auto& [key, exprs] : groups) {
        auto first = exprs.begin();
        for (auto it = std::next(first); it != exprs.end(); ++it) {
          std::vector<std::pair<int, double>> row;
          for (int v : first->second) row.push_back({v, 1.0});
          for (int v : it->second) row.push_back({v, -1.0});
          lp_.add_row(std::move(row), '=', 0.0);
        }
      }
    };
    emit_ties(cond_i);
    emit_ties(cond_ii);
    level_count *= step_radix_;
  }
}

int NsLp::var(int round_i, int k, long long formal_hist, int a, int b) const {
  const int ab = c_->A.size() * c_->B.size();
  long long histories = 1;
  for (int i = 1; i < round_i; ++i) histories *= step_radix_;
  return int(depth_offset_[std::size_t(round_i)] +
             (long long(k) * histories + formal_hist) * ab + long long(a) * c_->B.size() +
             b);
}

long long NsLp::formal_id(int hist_node, int depth) const {
  // Collect the first `depth` steps of the node's path.
  std::vector<Step> steps;
  for (int cur = hist_node; cur != 0; cur = c_->history_parent(cur))
    steps.push_back(c_->history_step(cur));
  std::reverse(steps.begin(), steps.end());
  long long id = 0;
  for (int i = 0; i < depth; ++i) {
    const Step& s = steps[std::size_t(i)];
    id = id * step_radix_ +
         ((long long(s.a) * c_->B.size() + s.b) * c_->X.size() + s.x) * c_->Y.size() +
         s.y;
  }
  return id;
}

std::vector<std::pair<int, double>> NsLp::objective_terms(int leaf_pos, int k) const {
  std::vector<int> leaves = bob_view_trace_leaves(*c_);
  int target = leaves[std::size_t(leaf_pos)];
  std::vector<std::pair<int, double>> terms;
  for (int node : c_->reachable_histories()) {
    if (c_->history_depth(node) != c_->rounds) continue;
    if (c_->bob_view_of(node) != target) continue;
    double f = 1.0;
    int cur = node;
    while (cur != 0) {
      int par = c_->history_parent(cur);
      Step s = c_->history_step(cur);
      for (const TransitionEntry& e : c_->transition(par, s.a, s.b))
        if (e.x == s.x && e.y == s.y) {
          f *= e.p;
          break;
        }
      cur = par;
    }
    if (f <= 0.0) continue;
    Step last = c_->history_step(node);
    terms.push_back({var(c_->rounds, k, formal_id(node, c_->rounds - 1), last.a, last.b),
                     f});
  }
  return terms;
}

LinearProgram NsLp::with_guess_objective(const GuessFunction& g) const {
  LinearProgram out = lp_;
  std::vector<int> leaves = bob_view_trace_leaves(*c_);
  if (g.size() != leaves.size())
    throw_input("guess function is not total on the Bob-view traces");
  for (std::size_t pos = 0; pos < g.size(); ++pos) {
    if (g[pos] < 0 || g[pos] >= num_secrets_)
      throw_input("guess function value outside the secret set");
    for (const auto& [v, f] : objective_terms(int(pos), g[pos]))
      out.objective[std::size_t(v)] += f;
  }
  return out;
}

LinearProgram NsLp::with_difference_objective(int leaf_pos, int k, int k0) const {
  LinearProgram out = lp_;
  for (const auto& [v, f] : objective_terms(leaf_pos, k))
    out.objective[std::size_t(v)] += f;
  for (const auto& [v, f] : objective_terms(leaf_pos, k0))
    out.objective[std::size_t(v)] -= f;
  return out;
}

GeneralisedStrategy NsLp::reinterpret(const std::vector<double>& x) const {
  GeneralisedStrategy s;
  s.num_secrets = num_secrets_;
  const int na = c_->A.size(), nb = c_->B.size();
  for (int node : c_->reachable_histories()) {
    int d = c_->history_depth(node);
    if (d >= c_->rounds) continue;
    long long fid = formal_id(node, d);
    for (int k = 0; k < num_secrets_; ++k) {
      double parent_mass = 1.0;
      if (d > 0) {
        Step last = c_->history_step(node);
        parent_mass =
            x[std::size_t(var(d, k, formal_id(node, d - 1), last.a, last.b))];
      }
      std::vector<double> row(std::size_t(na * nb), 0.0);
      if (parent_mass > 1e-12) {
        for (int a = 0; a < na; ++a)
          for (int bm = 0; bm < nb; ++bm)
            row[std::size_t(a * nb + bm)] =
                x[std::size_t(var(d + 1, k, fid, a, bm))] / parent_mass;
      } else {
        std::fill(row.begin(), row.end(), 1.0 / double(na * nb));
      }
      s.tables[{k, node}] = std::move(row);
    }
  }
  return s;
}

NsReport ns_minentropy_capacity(const InteractiveChannel& c, int num_secrets,
                                const std::vector<GuessFunction>& guesses,
                                bool exhaustive, const Budget& budget) {
  if (guesses.empty()) throw_input("ns capacity: no guessing functions supplied");
  if (double(guesses.size()) > budget.guess_functions)
    throw_budget("ns capacity: guess list exceeds the budget");
  NsLp builder(c, num_secrets, budget);
  NsReport rep;
  rep.exhaustive = exhaustive;
  double best = 0.0;
  for (const GuessFunction& g : guesses) {
    LpResult r = solve_lp(builder.with_guess_objective(g), 1e-9);
    if (r.status != LpResult::Status::Optimal)
      throw_solver("ns capacity LP did not reach optimality");
    rep.guess_values.push_back(r.value);
    best = std::max(best, r.value);
  }
  rep.value_log2 = std::log2(std::max(best, 1e-300));
  return rep;
}

double ns_capacity_certificate(const InteractiveChannel& c, int num_secrets,
                               const Budget& budget) {
  NsLp builder(c, num_secrets, budget);
  const std::size_t nleaves = bob_view_trace_leaves(c).size();
  double excess = 0.0;
  for (std::size_t pos = 0; pos < nleaves; ++pos) {
    for (int k = 1; k < num_secrets; ++k) {
      LpResult r = solve_lp(builder.with_difference_objective(int(pos), k, 0), 1e-9);
      if (r.status != LpResult::Status::Optimal)
        throw_solver("ns certificate LP did not reach optimality");
      excess += std::max(0.0, r.value);
    }
  }
  return std::log2(1.0 + excess);
}

}  // namespace qleak
