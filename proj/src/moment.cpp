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

#include "qleak/moment.hpp"

#include <algorithm>
#include <map>

namespace qleak {

std::vector<int> bob_view_trace_leaves(const InteractiveChannel& c) {
  const ViewTree& bv = c.bob_views();
  std::vector<int> out;
  for (int v = 0; v < bv.size(); ++v)
    if (bv.depth(v) == c.rounds) out.push_back(v);
  return out;
}

GuessFunction final_bit_guess(const InteractiveChannel& c, int num_secrets) {
  const ViewTree& bv = c.bob_views();
  GuessFunction g;
  for (int leaf : bob_view_trace_leaves(c)) g.push_back(bv.out(leaf) % num_secrets);
  return g;
}

void MomentProblem::set_guess_objective(const GuessFunction& g) {
  if (g.size() != bob_leaves.size())
    throw_input("guess function is not total on the Bob-view traces");
  sdp.objective.clear();
  for (std::size_t pos = 0; pos < g.size(); ++pos) {
    if (g[pos] < 0 || g[pos] >= num_secrets)
      throw_input("guess function value outside the secret set");
    sdp.objective.push_back({-1, p_var(g[pos], int(pos)), 0, 1.0});
  }
}

namespace {

struct Builder {
  MomentProblem mp;
  std::unordered_map<Word, int, WordHash> index_pos;
  // moment id -> representative cell (row, col)
  std::vector<std::pair<int, int>> rep_cell;

  int add_index_word(const Word& w) {
    auto it = index_pos.find(w);
    if (it != index_pos.end()) return it->second;
    int id = int(mp.index.size());
    mp.index.push_back(w);
    index_pos.emplace(w, id);
    return id;
  }

  static void add_cell_term(SemidefiniteProgram::Constraint& con, int i, int j,
                            double coef) {
    if (i > j) std::swap(i, j);
    con.terms.push_back({0, i, j, i == j ? coef : coef / 2.0});
  }

  /// Assigns moments for all cells; emits the unit anchor, zero pins and
  /// tying equalities.
  void assign_moments() {
    const int n = int(mp.index.size());
    for (int i = 0; i < n; ++i) {
      Word rowadj = word_adjoint(mp.index[std::size_t(i)]);
      for (int j = i; j < n; ++j) {
        Word prod = rowadj;
        prod.insert(prod.end(), mp.index[std::size_t(j)].begin(),
                    mp.index[std::size_t(j)].end());
        Word key = moment_word(prod);
        if (is_zero(key)) {
          SemidefiniteProgram::Constraint con;
          add_cell_term(con, i, j, 1.0);
          con.rhs = 0.0;
          mp.sdp.constraints.push_back(std::move(con));
          continue;
        }
        if (is_one(key)) {
          SemidefiniteProgram::Constraint con;
          add_cell_term(con, i, j, 1.0);
          con.rhs = 1.0;
          mp.sdp.constraints.push_back(std::move(con));
          continue;
        }
        auto it = mp.moment_of.find(key);
        if (it == mp.moment_of.end()) {
          mp.moment_of.emplace(key, mp.num_moments);
          rep_cell.emplace_back(i, j);
          ++mp.num_moments;
        } else {
          SemidefiniteProgram::Constraint con;
          add_cell_term(con, i, j, 1.0);
          const auto& [ri, rj] = rep_cell[std::size_t(it->second)];
          add_cell_term(con, ri, rj, -1.0);
          con.rhs = 0.0;
          mp.sdp.constraints.push_back(std::move(con));
        }
      }
    }
  }

  /// Representative cell of a word product <S^dag T>; the words must be in
  /// the index.
  std::pair<int, int> cell_of(const Word& s, const Word& t) const {
    auto is_ = index_pos.find(s);
    auto it_ = index_pos.find(t);
    if (is_ == index_pos.end() || it_ == index_pos.end())
      throw_input("moment builder: word missing from the index");
    int i = is_->second, j = it_->second;
    if (i > j) std::swap(i, j);
    return {i, j};
  }

  void add_word_term(SemidefiniteProgram::Constraint& con, const Word& s, const Word& t,
                     double coef) const {
    auto [i, j] = cell_of(s, t);
    add_cell_term(con, i, j, coef);
  }
};

struct ChainSet {
  // Window chains in display order (latest symbol first), grouped by length.
  // anchored[v] = display word of the root->v path.
  std::vector<Word> words;
  std::vector<int> start_depth;      // depth of the earliest symbol's history
  std::vector<Word> anchored;        // per view node
};

ChainSet build_chains(const ViewTree& tree, int msg_count, int max_len, int rounds,
                      OperatorSymbol::Family fam, int k) {
  ChainSet out;
  out.anchored.assign(std::size_t(tree.size()), Word{});
  // children[v] grouped by message.
  std::vector<std::vector<std::pair<int, int>>> children(std::size_t(tree.size()));
  for (int v = 1; v < tree.size(); ++v)
    children[std::size_t(tree.parent(v))].push_back({tree.msg(v), v});

  // Anchored words along the tree.
  for (int v = 1; v < tree.size(); ++v) {
    Word w;
    w.push_back({fam, k, tree.parent(v), tree.msg(v)});
    const Word& par = out.anchored[std::size_t(tree.parent(v))];
    w.insert(w.end(), par.begin(), par.end());
    out.anchored[std::size_t(v)] = std::move(w);
  }

  // Window chains: grow ascending sequences (u0, m1) -> child -> ...
  struct Partial {
    Word asc;       // earliest first
    int last_view;  // history of a hypothetical next symbol... equals view after last (msg, out)
    int last_msg;
  };
  std::vector<Partial> frontier;
  for (int v = 0; v < tree.size(); ++v) {
    if (tree.depth(v) >= rounds) continue;
    for (int m = 0; m < msg_count; ++m) {
      Word asc{{fam, k, v, m}};
      frontier.push_back({asc, v, m});
      Word disp(asc.rbegin(), asc.rend());
      out.words.push_back(disp);
      out.start_depth.push_back(tree.depth(v));
    }
  }
  for (int len = 2; len <= max_len; ++len) {
    std::vector<Partial> next;
    for (const Partial& p : frontier) {
      for (const auto& [m, child] : children[std::size_t(p.last_view)]) {
        if (m != p.last_msg) continue;
        if (tree.depth(child) >= rounds) continue;
        for (int m2 = 0; m2 < msg_count; ++m2) {
          Word asc = p.asc;
          asc.push_back({fam, k, child, m2});
          Word disp(asc.rbegin(), asc.rend());
          out.words.push_back(disp);
          out.start_depth.push_back(tree.depth(asc[0].history));
          next.push_back({std::move(asc), child, m2});
        }
      }
    }
    frontier = std::move(next);
  }
  return out;
}

double trace_weight(const InteractiveChannel& c, int leaf) {
  double f = 1.0;
  int node = leaf;
  while (node != 0) {
    int par = c.history_parent(node);
    Step s = c.history_step(node);
    for (const TransitionEntry& e : c.transition(par, s.a, s.b))
      if (e.x == s.x && e.y == s.y) {
        f *= e.p;
        break;
      }
    node = par;
  }
  return f;
}

}  // namespace

MomentProblem build_moment_problem(const InteractiveChannel& c, int num_secrets,
                                   int level) {
  if (level < c.rounds)
    throw_input("moment level " + std::to_string(level) +
                " below the minimum level " + std::to_string(c.rounds) +
                " (words of n symbols per side are needed)");
  if (num_secrets < 1) throw_input("moment problem needs at least one secret");

  Builder b;
  b.mp.num_secrets = num_secrets;
  b.mp.bob_leaves = bob_view_trace_leaves(c);
  b.add_index_word(one_word());

  const int chain_cap = std::min(level, c.rounds);
  const ViewTree& av = c.alice_views();
  const ViewTree& bv = c.bob_views();
  std::vector<ChainSet> alice_chains;
  for (int k = 0; k < num_secrets; ++k)
    alice_chains.push_back(build_chains(av, c.A.size(), chain_cap, c.rounds,
                                        OperatorSymbol::Family::AliceChannel, k));
  ChainSet bob_chains =
      build_chains(bv, c.B.size(), chain_cap, c.rounds,
                   OperatorSymbol::Family::BobChannel, -1);

  for (const auto& cs : alice_chains)
    for (const Word& w : cs.words) b.add_index_word(w);
  for (const Word& w : bob_chains.words) b.add_index_word(w);

  // Mixed Alice x Bob products enter above level n.
  const int mixed_cap = level - c.rounds + 1;
  if (mixed_cap >= 2) {
    for (const auto& cs : alice_chains) {
      for (const Word& aw : cs.words) {
        if (int(aw.size()) >= mixed_cap) continue;
        for (const Word& bw : bob_chains.words) {
          if (int(aw.size() + bw.size()) > mixed_cap) continue;
          Word mixed = aw;
          mixed.insert(mixed.end(), bw.begin(), bw.end());
          b.add_index_word(mixed);
        }
      }
    }
  }

  if (b.mp.index.size() > 4000)
    throw_budget("moment index too large: " + std::to_string(b.mp.index.size()) +
                 " words at level " + std::to_string(level));

  b.mp.sdp.blocks = {int(b.mp.index.size())};
  const int nleaves = int(b.mp.bob_leaves.size());
  b.mp.sdp.num_scalars = 2 * num_secrets * nleaves;
  b.assign_moments();

  // p in [0,1]: nonnegative scalar plus unit slack.
  for (int k = 0; k < num_secrets; ++k) {
    for (int pos = 0; pos < nleaves; ++pos) {
      SemidefiniteProgram::Constraint con;
      int pv = b.mp.p_var(k, pos);
      con.terms.push_back({-1, pv, 0, 1.0});
      con.terms.push_back({-1, pv + 1, 0, 1.0});
      con.rhs = 1.0;
      b.mp.sdp.constraints.push_back(std::move(con));
    }
  }

  // Linking rows: p_{t|k} = sum over full traces s with pi_B(s) = t of
  // Gamma_{A^k_s, B_s} prod f.
  {
    std::map<int, std::vector<std::pair<int, double>>> by_leaf;  // bob leaf -> (hist leaf, F)
    for (int node : c.reachable_histories()) {
      if (c.history_depth(node) != c.rounds) continue;
      by_leaf[c.bob_view_of(node)].push_back({node, trace_weight(c, node)});
    }
    for (int k = 0; k < num_secrets; ++k) {
      for (int pos = 0; pos < nleaves; ++pos) {
        SemidefiniteProgram::Constraint con;
        con.terms.push_back({-1, b.mp.p_var(k, pos), 0, 1.0});
        auto it = by_leaf.find(b.mp.bob_leaves[std::size_t(pos)]);
        if (it != by_leaf.end()) {
          for (const auto& [hist, f] : it->second) {
            const Word& aw =
                alice_chains[std::size_t(k)].anchored[std::size_t(c.alice_view_of(hist))];
            const Word& bw = bob_chains.anchored[std::size_t(c.bob_view_of(hist))];
            b.add_word_term(con, aw, bw, -f);
          }
        }
        con.rhs = 0.0;
        b.mp.sdp.constraints.push_back(std::move(con));
      }
    }
  }

  // Views grouped by depth, plus output-sequence signatures for the
  // aggregate families.
  auto views_by_depth = [&](const ViewTree& tree) {
    std::vector<std::vector<int>> out(std::size_t(c.rounds));
    for (int v = 0; v < tree.size(); ++v)
      if (tree.depth(v) < c.rounds) out[std::size_t(tree.depth(v))].push_back(v);
    return out;
  };
  auto out_signature = [](const ViewTree& tree, int v) {
    std::vector<int> sig;
    for (int cur = v; cur != 0; cur = tree.parent(cur)) sig.push_back(tree.out(cur));
    std::reverse(sig.begin(), sig.end());
    return sig;
  };
  std::vector<std::vector<int>> adepth = views_by_depth(av), bdepth = views_by_depth(bv);

  auto ext_word = [](const ChainSet& cs, OperatorSymbol::Family fam, int k, int v,
                     int msg) {
    Word w;
    w.push_back({fam, k, v, msg});
    const Word& chain = cs.anchored[std::size_t(v)];
    w.insert(w.end(), chain.begin(), chain.end());
    return w;
  };

  // (N2) joint marginalization over one round.
  for (int d = 0; d < c.rounds; ++d) {
    for (int k = 0; k < num_secrets; ++k) {
      for (int va : adepth[std::size_t(d)]) {
        for (int wb : bdepth[std::size_t(d)]) {
          SemidefiniteProgram::Constraint con;
          for (int a = 0; a < c.A.size(); ++a) {
            Word aw = ext_word(alice_chains[std::size_t(k)],
                               OperatorSymbol::Family::AliceChannel, k, va, a);
            for (int bm = 0; bm < c.B.size(); ++bm) {
              Word bw = ext_word(bob_chains, OperatorSymbol::Family::BobChannel, -1, wb,
                                 bm);
              b.add_word_term(con, aw, bw, 1.0);
            }
          }
          if (d == 0) {
            con.rhs = 1.0;
          } else {
            b.add_word_term(con,
                            alice_chains[std::size_t(k)].anchored[std::size_t(va)],
                            bob_chains.anchored[std::size_t(wb)], -1.0);
            con.rhs = 0.0;
          }
          b.mp.sdp.constraints.push_back(std::move(con));
        }
      }
    }
  }

  // (N3) Alice-summed ties: complete x-signature groups only.
  for (int d = 0; d < c.rounds; ++d) {
    std::map<std::vector<int>, std::vector<int>> groups;
    for (int va : adepth[std::size_t(d)]) groups[out_signature(av, va)].push_back(va);
    double complete = std::pow(double(c.A.size()), double(d));
    for (const auto& [sig, vs] : groups) {
      if (double(vs.size()) != complete) continue;
      for (int k = 0; k < num_secrets; ++k) {
        for (int wb : bdepth[std::size_t(d)]) {
          for (int bm = 0; bm < c.B.size(); ++bm) {
            Word bw =
                ext_word(bob_chains, OperatorSymbol::Family::BobChannel, -1, wb, bm);
            SemidefiniteProgram::Constraint con;
            for (int va : vs)
              for (int a = 0; a < c.A.size(); ++a)
                b.add_word_term(con,
                                ext_word(alice_chains[std::size_t(k)],
                                         OperatorSymbol::Family::AliceChannel, k, va, a),
                                bw, 1.0);
            b.add_word_term(con, one_word(), bw, -1.0);
            con.rhs = 0.0;
            b.mp.sdp.constraints.push_back(std::move(con));
          }
        }
      }
    }
  }

  // (N4) Bob-summed ties: complete y-signature groups, current message
  // summed as well.
  for (int d = 0; d < c.rounds; ++d) {
    std::map<std::vector<int>, std::vector<int>> groups;
    for (int wb : bdepth[std::size_t(d)]) groups[out_signature(bv, wb)].push_back(wb);
    double complete = std::pow(double(c.B.size()), double(d));
    for (const auto& [sig, ws] : groups) {
      if (double(ws.size()) != complete) continue;
      for (int k = 0; k < num_secrets; ++k) {
        for (int va : adepth[std::size_t(d)]) {
          for (int a = 0; a < c.A.size(); ++a) {
            Word aw = ext_word(alice_chains[std::size_t(k)],
                               OperatorSymbol::Family::AliceChannel, k, va, a);
            SemidefiniteProgram::Constraint con;
            for (int wb : ws)
              for (int bm = 0; bm < c.B.size(); ++bm)
                b.add_word_term(
                    con, aw,
                    ext_word(bob_chains, OperatorSymbol::Family::BobChannel, -1, wb, bm),
                    1.0);
            b.add_word_term(con, aw, one_word(), -1.0);
            con.rhs = 0.0;
            b.mp.sdp.constraints.push_back(std::move(con));
          }
        }
      }
    }
  }

  return b.mp;
}

MomentProblem build_game_moment_problem(const NonLocalGame& g, int level) {
  g.check_valid();
  if (level < 1) throw_input("game moment level must be >= 1");

  std::vector<OperatorSymbol> symbols;
  for (int x = 0; x < g.questionsA.size(); ++x)
    for (int a = 0; a < g.answersA.size(); ++a)
      symbols.push_back({OperatorSymbol::Family::AliceGame, -1, x, a});
  for (int y = 0; y < g.questionsB.size(); ++y)
    for (int bb = 0; bb < g.answersB.size(); ++bb)
      symbols.push_back({OperatorSymbol::Family::BobGame, -1, y, bb});

  Builder b;
  b.add_index_word(one_word());
  std::vector<Word> frontier{one_word()};
  for (int len = 1; len <= level; ++len) {
    std::vector<Word> next;
    for (const Word& w : frontier) {
      for (const auto& s : symbols) {
        Word extended = w;
        extended.push_back(s);
        Word canon = canonicalize_word(extended);
        if (is_zero(canon) || int(canon.size()) != len) continue;
        if (b.index_pos.count(canon)) continue;
        b.add_index_word(canon);
        next.push_back(canon);
      }
    }
    frontier = std::move(next);
  }
  if (b.mp.index.size() > 4000)
    throw_budget("game moment index too large: " + std::to_string(b.mp.index.size()));

  b.mp.sdp.blocks = {int(b.mp.index.size())};
  b.mp.sdp.num_scalars = 0;
  b.assign_moments();

  // Objective: sum mu(x,y) D(x,y,a,b) <A^x_a B^y_b>.
  SemidefiniteProgram::Constraint obj;  // reuse the term plumbing
  for (int x = 0; x < g.questionsA.size(); ++x)
    for (int y = 0; y < g.questionsB.size(); ++y) {
      double m = g.mu_at(x, y);
      if (m <= 0.0) continue;
      for (int a = 0; a < g.answersA.size(); ++a)
        for (int bb = 0; bb < g.answersB.size(); ++bb)
          if (g.wins(x, y, a, bb))
            b.add_word_term(obj, Word{{OperatorSymbol::Family::AliceGame, -1, x, a}},
                            Word{{OperatorSymbol::Family::BobGame, -1, y, bb}}, m);
    }
  b.mp.sdp.objective = std::move(obj.terms);
  return b.mp;
}

}  // namespace qleak
