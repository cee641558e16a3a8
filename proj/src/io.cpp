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

#include "qleak/io.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

namespace qleak {

namespace {

double prob_from_json(const Json& j) {
  if (j.is_string()) return parse_probability(j.get<std::string>());
  if (j.is_number()) return j.get<double>();
  throw_input("probability must be a number or a rational string");
}

Alphabet alphabet_from_json(const Json& j, const std::string& name) {
  Alphabet a;
  a.name = name;
  if (!j.is_array() || j.empty()) throw_input("alphabet " + name + " must be a nonempty array");
  for (const auto& s : j) a.symbols.push_back(s.is_string() ? s.get<std::string>() : s.dump());
  a.check_valid();
  return a;
}

int symbol_index(const Alphabet& a, const Json& j) {
  std::string label = j.is_string() ? j.get<std::string>() : j.dump();
  int idx = a.index_of(label);
  if (idx < 0) throw_input("symbol '" + label + "' not in alphabet " + a.name);
  return idx;
}

int history_node_from_json(InteractiveChannel& c, const Json& hist) {
  if (!hist.is_array()) throw_input("history must be an array of [a,b,x,y] quadruples");
  int node = 0;
  for (const auto& stepj : hist) {
    if (!stepj.is_array() || stepj.size() != 4)
      throw_input("history step must be [a,b,x,y]");
    Step s{symbol_index(c.A, stepj[0]), symbol_index(c.B, stepj[1]),
           symbol_index(c.X, stepj[2]), symbol_index(c.Y, stepj[3])};
    node = c.history_child(node, s);
  }
  return node;
}

Json history_to_json(const InteractiveChannel& c, int node) {
  Json out = Json::array();
  for (const Step& s : c.history_trace(node))
    out.push_back({c.A.symbols[std::size_t(s.a)], c.B.symbols[std::size_t(s.b)],
                   c.X.symbols[std::size_t(s.x)], c.Y.symbols[std::size_t(s.y)]});
  return out;
}

Eigen::MatrixXcd matrix_from_json(const Json& j, int dim, const std::string& where) {
  if (!j.is_array() || int(j.size()) != dim)
    throw_input("matrix " + where + " must have " + std::to_string(dim) + " rows");
  Eigen::MatrixXcd m(dim, dim);
  for (int r = 0; r < dim; ++r) {
    const auto& row = j[std::size_t(r)];
    if (!row.is_array() || int(row.size()) != dim)
      throw_input("matrix " + where + " row " + std::to_string(r) + " malformed");
    for (int cidx = 0; cidx < dim; ++cidx) {
      const auto& e = row[std::size_t(cidx)];
      if (e.is_array() && e.size() == 2)
        m(r, cidx) = std::complex<double>(e[0].get<double>(), e[1].get<double>());
      else if (e.is_number())
        m(r, cidx) = e.get<double>();
      else
        throw_input("matrix entry must be a number or [re,im]");
    }
  }
  return m;
}

Json matrix_to_json(const Eigen::MatrixXcd& m) {
  Json rows = Json::array();
  for (int r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (int c = 0; c < m.cols(); ++c)
      row.push_back({m(r, c).real(), m(r, c).imag()});
    rows.push_back(std::move(row));
  }
  return rows;
}

Eigen::VectorXcd state_from_json(const Json& j, int dim) {
  if (!j.is_array() || int(j.size()) != dim)
    throw_input("state must have dimension " + std::to_string(dim));
  Eigen::VectorXcd v(dim);
  for (int i = 0; i < dim; ++i) {
    const auto& e = j[std::size_t(i)];
    if (e.is_array() && e.size() == 2)
      v(i) = std::complex<double>(e[0].get<double>(), e[1].get<double>());
    else if (e.is_number())
      v(i) = e.get<double>();
    else
      throw_input("state entry must be a number or [re,im]");
  }
  return v;
}

Json state_to_json(const Eigen::VectorXcd& v) {
  Json out = Json::array();
  for (int i = 0; i < v.size(); ++i) out.push_back({v(i).real(), v(i).imag()});
  return out;
}

}  // namespace

Json channel_to_json(const InteractiveChannel& c) {
  Json j;
  j["rounds"] = c.rounds;
  j["alphabets"] = {{"A", c.A.symbols}, {"B", c.B.symbols}, {"X", c.X.symbols},
                    {"Y", c.Y.symbols}};
  Json trans = Json::array();
  for (int node : c.reachable_histories()) {
    if (c.history_depth(node) >= c.rounds) continue;
    for (int a = 0; a < c.A.size(); ++a) {
      for (int b = 0; b < c.B.size(); ++b) {
        if (!c.has_transition(node, a, b)) continue;
        Json row;
        row["round"] = c.history_depth(node) + 1;
        row["history"] = history_to_json(c, node);
        row["a"] = c.A.symbols[std::size_t(a)];
        row["b"] = c.B.symbols[std::size_t(b)];
        Json out = Json::array();
        for (const TransitionEntry& e : c.transition(node, a, b))
          out.push_back({{"x", c.X.symbols[std::size_t(e.x)]},
                         {"y", c.Y.symbols[std::size_t(e.y)]},
                         {"p", e.p}});
        row["out"] = std::move(out);
        trans.push_back(std::move(row));
      }
    }
  }
  j["transitions"] = std::move(trans);
  return j;
}

InteractiveChannel channel_from_json(const Json& j) {
  InteractiveChannel c;
  if (!j.contains("rounds") || !j["rounds"].is_number_integer())
    throw_input("channel: missing integer 'rounds'");
  c.rounds = j["rounds"].get<int>();
  if (c.rounds < 1) throw_input("channel: rounds must be >= 1");
  if (!j.contains("alphabets")) throw_input("channel: missing 'alphabets'");
  const auto& al = j["alphabets"];
  c.A = alphabet_from_json(al.value("A", Json::array()), "A");
  c.B = alphabet_from_json(al.value("B", Json::array()), "B");
  c.X = alphabet_from_json(al.value("X", Json::array()), "X");
  c.Y = alphabet_from_json(al.value("Y", Json::array()), "Y");
  if (!j.contains("transitions") || !j["transitions"].is_array())
    throw_input("channel: missing 'transitions' array");
  for (const auto& row : j["transitions"]) {
    int node = history_node_from_json(c, row.value("history", Json::array()));
    int a = symbol_index(c.A, row.at("a"));
    int b = symbol_index(c.B, row.at("b"));
    TransitionDist dist;
    for (const auto& o : row.value("out", Json::array()))
      dist.push_back({symbol_index(c.X, o.at("x")), symbol_index(c.Y, o.at("y")),
                      prob_from_json(o.at("p"))});
    // Intern the support so walkers can find the children.
    for (const TransitionEntry& e : dist)
      if (e.p > 0.0) c.history_child(node, {a, b, e.x, e.y});
    c.set_transition(node, a, b, std::move(dist));
  }
  return c;
}

Json game_to_json(const NonLocalGame& g) {
  Json j;
  j["questionsA"] = g.questionsA.symbols;
  j["questionsB"] = g.questionsB.symbols;
  j["answersA"] = g.answersA.symbols;
  j["answersB"] = g.answersB.symbols;
  Json mu = Json::array();
  for (int x = 0; x < g.questionsA.size(); ++x)
    for (int y = 0; y < g.questionsB.size(); ++y)
      if (g.mu_at(x, y) != 0.0)
        mu.push_back({{"x", g.questionsA.symbols[std::size_t(x)]},
                      {"y", g.questionsB.symbols[std::size_t(y)]},
                      {"p", g.mu_at(x, y)}});
  j["mu"] = std::move(mu);
  Json win = Json::array();
  for (int x = 0; x < g.questionsA.size(); ++x)
    for (int y = 0; y < g.questionsB.size(); ++y)
      for (int a = 0; a < g.answersA.size(); ++a)
        for (int b = 0; b < g.answersB.size(); ++b)
          if (g.wins(x, y, a, b))
            win.push_back({g.questionsA.symbols[std::size_t(x)],
                           g.questionsB.symbols[std::size_t(y)],
                           g.answersA.symbols[std::size_t(a)],
                           g.answersB.symbols[std::size_t(b)]});
  j["win"] = std::move(win);
  return j;
}

NonLocalGame game_from_json(const Json& j) {
  NonLocalGame g;
  g.questionsA = alphabet_from_json(j.value("questionsA", Json::array()), "questionsA");
  g.questionsB = alphabet_from_json(j.value("questionsB", Json::array()), "questionsB");
  g.answersA = alphabet_from_json(j.value("answersA", Json::array()), "answersA");
  g.answersB = alphabet_from_json(j.value("answersB", Json::array()), "answersB");
  g.mu.assign(std::size_t(g.questionsA.size() * g.questionsB.size()), 0.0);
  for (const auto& e : j.value("mu", Json::array())) {
    int x = symbol_index(g.questionsA, e.at("x"));
    int y = symbol_index(g.questionsB, e.at("y"));
    g.mu[std::size_t(x * g.questionsB.size() + y)] = prob_from_json(e.at("p"));
  }
  g.win.assign(std::size_t(g.questionsA.size() * g.questionsB.size() *
                           g.answersA.size() * g.answersB.size()),
               false);
  for (const auto& q : j.value("win", Json::array())) {
    if (!q.is_array() || q.size() != 4) throw_input("game: win entries are [x,y,a,b]");
    int x = symbol_index(g.questionsA, q[0]);
    int y = symbol_index(g.questionsB, q[1]);
    int a = symbol_index(g.answersA, q[2]);
    int b = symbol_index(g.answersB, q[3]);
    g.win[std::size_t(((x * g.questionsB.size() + y) * g.answersA.size() + a) *
                          g.answersB.size() +
                      b)] = true;
  }
  g.check_valid();
  return g;
}

Json game_strategy_to_json(const GameQuantumStrategy& s, const NonLocalGame& g) {
  Json j;
  j["dimA"] = s.dimA;
  j["dimB"] = s.dimB;
  j["state"] = state_to_json(s.state);
  Json am, bm;
  for (int x = 0; x < g.questionsA.size(); ++x) {
    Json per;
    for (int a = 0; a < g.answersA.size(); ++a)
      per[g.answersA.symbols[std::size_t(a)]] =
          matrix_to_json(s.alice[std::size_t(x)][std::size_t(a)]);
    am[g.questionsA.symbols[std::size_t(x)]] = std::move(per);
  }
  for (int y = 0; y < g.questionsB.size(); ++y) {
    Json per;
    for (int b = 0; b < g.answersB.size(); ++b)
      per[g.answersB.symbols[std::size_t(b)]] =
          matrix_to_json(s.bob[std::size_t(y)][std::size_t(b)]);
    bm[g.questionsB.symbols[std::size_t(y)]] = std::move(per);
  }
  j["aliceMeas"] = std::move(am);
  j["bobMeas"] = std::move(bm);
  return j;
}

GameQuantumStrategy game_strategy_from_json(const Json& j, const NonLocalGame& g) {
  GameQuantumStrategy s;
  s.dimA = j.at("dimA").get<int>();
  s.dimB = j.at("dimB").get<int>();
  s.state = state_from_json(j.at("state"), s.dimA * s.dimB);
  s.alice.assign(std::size_t(g.questionsA.size()), {});
  s.bob.assign(std::size_t(g.questionsB.size()), {});
  const auto& am = j.at("aliceMeas");
  for (int x = 0; x < g.questionsA.size(); ++x) {
    const auto& per = am.at(g.questionsA.symbols[std::size_t(x)]);
    for (int a = 0; a < g.answersA.size(); ++a)
      s.alice[std::size_t(x)].push_back(matrix_from_json(
          per.at(g.answersA.symbols[std::size_t(a)]), s.dimA,
          "aliceMeas[" + g.questionsA.symbols[std::size_t(x)] + "]"));
  }
  const auto& bm = j.at("bobMeas");
  for (int y = 0; y < g.questionsB.size(); ++y) {
    const auto& per = bm.at(g.questionsB.symbols[std::size_t(y)]);
    for (int b = 0; b < g.answersB.size(); ++b)
      s.bob[std::size_t(y)].push_back(matrix_from_json(
          per.at(g.answersB.symbols[std::size_t(b)]), s.dimB,
          "bobMeas[" + g.questionsB.symbols[std::size_t(y)] + "]"));
  }
  return s;
}

namespace {

Json view_to_json(const InteractiveChannel& c, Side side, int node) {
  const ViewTree& tree = side == Side::Alice ? c.alice_views() : c.bob_views();
  const Alphabet& msgs = side == Side::Alice ? c.A : c.B;
  const Alphabet& outs = side == Side::Alice ? c.X : c.Y;
  Json out = Json::array();
  for (const auto& [m, o] : tree.path(node))
    out.push_back({msgs.symbols[std::size_t(m)], outs.symbols[std::size_t(o)]});
  return out;
}

int view_from_json(const InteractiveChannel& c, Side side, const Json& hist) {
  const ViewTree& tree = side == Side::Alice ? c.alice_views() : c.bob_views();
  const Alphabet& msgs = side == Side::Alice ? c.A : c.B;
  const Alphabet& outs = side == Side::Alice ? c.X : c.Y;
  int node = 0;
  for (const auto& stepj : hist) {
    if (!stepj.is_array() || stepj.size() != 2)
      throw_input("view history steps are [message, output]");
    int m = symbol_index(msgs, stepj[0]);
    int o = symbol_index(outs, stepj[1]);
    int child = tree.find_child(node, m, o);
    if (child < 0) throw_input("strategy references an unreachable view history");
    node = child;
  }
  return node;
}

}  // namespace

Json joint_strategy_to_json(const QuantumJointStrategy& s, const InteractiveChannel& c,
                            int num_secrets) {
  Json j;
  j["dimA"] = s.dimA;
  j["dimB"] = s.dimB;
  j["secrets"] = num_secrets;
  j["state"] = state_to_json(s.state);
  Json alice = Json::array();
  for (const auto& [key, fam] : s.alice) {
    Json entry;
    entry["k"] = key.first;
    entry["history"] = view_to_json(c, Side::Alice, key.second);
    Json meas;
    for (int a = 0; a < c.A.size(); ++a)
      meas[c.A.symbols[std::size_t(a)]] = matrix_to_json(fam[std::size_t(a)]);
    entry["meas"] = std::move(meas);
    alice.push_back(std::move(entry));
  }
  j["alice"] = std::move(alice);
  Json bob = Json::array();
  for (const auto& [view, fam] : s.bob) {
    Json entry;
    entry["history"] = view_to_json(c, Side::Bob, view);
    Json meas;
    for (int b = 0; b < c.B.size(); ++b)
      meas[c.B.symbols[std::size_t(b)]] = matrix_to_json(fam[std::size_t(b)]);
    entry["meas"] = std::move(meas);
    bob.push_back(std::move(entry));
  }
  j["bob"] = std::move(bob);
  return j;
}

QuantumJointStrategy joint_strategy_from_json(const Json& j,
                                              const InteractiveChannel& c) {
  QuantumJointStrategy s;
  s.dimA = j.at("dimA").get<int>();
  s.dimB = j.at("dimB").get<int>();
  s.state = state_from_json(j.at("state"), s.dimA * s.dimB);
  for (const auto& entry : j.value("alice", Json::array())) {
    int k = entry.at("k").get<int>();
    int view = view_from_json(c, Side::Alice, entry.at("history"));
    ProjectorFamily fam;
    for (int a = 0; a < c.A.size(); ++a)
      fam.push_back(matrix_from_json(entry.at("meas").at(c.A.symbols[std::size_t(a)]),
                                     s.dimA, "alice meas"));
    s.alice[{k, view}] = std::move(fam);
  }
  for (const auto& entry : j.value("bob", Json::array())) {
    int view = view_from_json(c, Side::Bob, entry.at("history"));
    ProjectorFamily fam;
    for (int b = 0; b < c.B.size(); ++b)
      fam.push_back(matrix_from_json(entry.at("meas").at(c.B.symbols[std::size_t(b)]),
                                     s.dimB, "bob meas"));
    s.bob[view] = std::move(fam);
  }
  return s;
}

Json generalised_strategy_to_json(const GeneralisedStrategy& s,
                                  const InteractiveChannel& c) {
  Json j;
  j["secrets"] = s.num_secrets;
  Json tables = Json::array();
  for (const auto& [key, row] : s.tables) {
    Json entry;
    entry["k"] = key.first;
    entry["history"] = history_to_json(c, key.second);
    Json dist = Json::array();
    for (int a = 0; a < c.A.size(); ++a)
      for (int b = 0; b < c.B.size(); ++b)
        if (row[std::size_t(a * c.B.size() + b)] != 0.0)
          dist.push_back({{"a", c.A.symbols[std::size_t(a)]},
                          {"b", c.B.symbols[std::size_t(b)]},
                          {"p", row[std::size_t(a * c.B.size() + b)]}});
    entry["dist"] = std::move(dist);
    tables.push_back(std::move(entry));
  }
  j["tables"] = std::move(tables);
  return j;
}

GeneralisedStrategy generalised_strategy_from_json(const Json& j,
                                                   const InteractiveChannel& c) {
  GeneralisedStrategy s;
  s.num_secrets = j.at("secrets").get<int>();
  for (const auto& entry : j.value("tables", Json::array())) {
    int k = entry.at("k").get<int>();
    // Histories must already be interned (reachable); rebuild via steps.
    int node = 0;
    for (const auto& stepj : entry.at("history")) {
      Step st{symbol_index(c.A, stepj[0]), symbol_index(c.B, stepj[1]),
              symbol_index(c.X, stepj[2]), symbol_index(c.Y, stepj[3])};
      int child = c.find_history_child(node, st);
      if (child < 0) throw_input("generalised strategy references an unknown history");
      node = child;
    }
    std::vector<double> row(std::size_t(c.A.size() * c.B.size()), 0.0);
    for (const auto& d : entry.value("dist", Json::array()))
      row[std::size_t(symbol_index(c.A, d.at("a")) * c.B.size() +
                      symbol_index(c.B, d.at("b")))] = prob_from_json(d.at("p"));
    s.tables[{k, node}] = std::move(row);
  }
  return s;
}

Json strategy_to_json(const DeterministicStrategy& s, const InteractiveChannel& c) {
  Json j;
  j["side"] = s.side == Side::Alice ? "alice" : "bob";
  const ViewTree& tree = s.side == Side::Alice ? c.alice_views() : c.bob_views();
  const Alphabet& msgs = s.side == Side::Alice ? c.A : c.B;
  Json table = Json::array();
  for (int v = 0; v < tree.size() && v < int(s.table.size()); ++v) {
    if (s.table[std::size_t(v)] < 0) continue;
    table.push_back({{"history", view_to_json(c, s.side, v)},
                     {"msg", msgs.symbols[std::size_t(s.table[std::size_t(v)])]}});
  }
  j["table"] = std::move(table);
  return j;
}

DeterministicStrategy strategy_from_json(const Json& j, const InteractiveChannel& c) {
  DeterministicStrategy s;
  std::string side = j.value("side", "");
  if (side == "alice")
    s.side = Side::Alice;
  else if (side == "bob")
    s.side = Side::Bob;
  else
    throw_input("strategy side must be 'alice' or 'bob'");
  const ViewTree& tree = s.side == Side::Alice ? c.alice_views() : c.bob_views();
  const Alphabet& msgs = s.side == Side::Alice ? c.A : c.B;
  s.table.assign(std::size_t(tree.size()), -1);
  for (const auto& entry : j.value("table", Json::array())) {
    int v = view_from_json(c, s.side, entry.at("history"));
    s.table[std::size_t(v)] = symbol_index(msgs, entry.at("msg"));
  }
  return s;
}

std::string slurp(const std::string& path) {
  if (path == "-") {
    std::ostringstream ss;
    ss << std::cin.rdbuf();
    return ss.str();
  }
  std::ifstream f(path, std::ios::binary);
  if (!f) throw_input("cannot open file: " + path);
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

Json parse_json_text(const std::string& text, const std::string& where) {
  Json j = Json::parse(text, nullptr, false);
  if (j.is_discarded()) throw_input("malformed JSON in " + where);
  return j;
}

}  // namespace qleak
