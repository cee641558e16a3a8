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

#include "qleak/game.hpp"

#include <omp.h>

#include <cmath>

namespace qleak {

void NonLocalGame::check_valid() const {
  questionsA.check_valid();
  questionsB.check_valid();
  answersA.check_valid();
  answersB.check_valid();
  if (int(mu.size()) != questionsA.size() * questionsB.size())
    throw_input("game: mu is not total on question pairs");
  double total = 0.0;
  for (double p : mu) {
    if (p < -kDistTol) throw_input("game: negative question mass");
    total += p;
  }
  if (std::abs(total - 1.0) > kDistTol) throw_input("game: mu is not normalized");
  if (int(win.size()) !=
      questionsA.size() * questionsB.size() * answersA.size() * answersB.size())
    throw_input("game: decision table is not total");
}

double classical_game_value(const NonLocalGame& g, const Budget& budget) {
  g.check_valid();
  const int nqa = g.questionsA.size(), nqb = g.questionsB.size();
  const int naa = g.answersA.size(), nab = g.answersB.size();
  double fa = std::pow(double(naa), double(nqa)), fb = std::pow(double(nab), double(nqb));
  if (fa > budget.strategies_per_side || fb > budget.strategies_per_side)
    throw_budget("game answer-function budget exceeded: " + std::to_string(fa) + " x " +
                 std::to_string(fb));
  const std::uint64_t na = std::uint64_t(fa + 0.5), nb = std::uint64_t(fb + 0.5);

  double best = 0.0;
#pragma omp parallel for schedule(static) reduction(max : best)
  for (long long fi = 0; fi < (long long)na; ++fi) {
    std::vector<int> f(static_cast<std::size_t>(nqa));
    std::uint64_t r = std::uint64_t(fi);
    for (int x = 0; x < nqa; ++x) {
      f[std::size_t(x)] = int(r % std::uint64_t(naa));
      r /= std::uint64_t(naa);
    }
    std::vector<int> h(static_cast<std::size_t>(nqb));
    for (std::uint64_t gi = 0; gi < nb; ++gi) {
      std::uint64_t s = gi;
      for (int y = 0; y < nqb; ++y) {
        h[std::size_t(y)] = int(s % std::uint64_t(nab));
        s /= std::uint64_t(nab);
      }
      double v = 0.0;
      for (int x = 0; x < nqa; ++x)
        for (int y = 0; y < nqb; ++y)
          if (g.wins(x, y, f[std::size_t(x)], h[std::size_t(y)])) v += g.mu_at(x, y);
      best = std::max(best, v);
    }
  }
  return best;
}

double quantum_game_value(const NonLocalGame& g, const GameQuantumStrategy& s) {
  g.check_valid();
  auto report = s.validate(g.questionsA.size(), g.questionsB.size(), g.answersA.size(),
                           g.answersB.size());
  if (!report.empty())
    throw_input("invalid quantum strategy: " + report.front().kind + " (" +
                report.front().detail + ")");
  // <psi|A(x)B|psi> as sum conj(M) .* (A M B^T) with M the state reshaped to
  // dimA x dimB.
  Eigen::MatrixXcd m(s.dimA, s.dimB);
  for (int i = 0; i < s.dimA; ++i)
    for (int j = 0; j < s.dimB; ++j) m(i, j) = s.state(i * s.dimB + j);
  double value = 0.0;
  for (int x = 0; x < g.questionsA.size(); ++x) {
    for (int y = 0; y < g.questionsB.size(); ++y) {
      double muxy = g.mu_at(x, y);
      if (muxy <= 0.0) continue;
      for (int a = 0; a < g.answersA.size(); ++a) {
        for (int b = 0; b < g.answersB.size(); ++b) {
          if (!g.wins(x, y, a, b)) continue;
          Eigen::MatrixXcd t = s.alice[std::size_t(x)][std::size_t(a)] * m *
                               s.bob[std::size_t(y)][std::size_t(b)].transpose();
          value += muxy * (m.conjugate().cwiseProduct(t)).sum().real();
        }
      }
    }
  }
  return value;
}

InteractiveChannel compile_game_to_channel(const NonLocalGame& g) {
  g.check_valid();
  InteractiveChannel c;
  c.rounds = 2;
  c.A.name = "A";
  for (const auto& a : g.answersA.symbols)
    for (int u = 0; u < 2; ++u) c.A.symbols.push_back(a + "|" + std::to_string(u));
  c.B = g.answersB;
  c.B.name = "B";
  c.X = g.questionsA;
  c.X.name = "X";
  c.Y.name = "Y";
  for (const auto& y : g.questionsB.symbols)
    for (int v = 0; v < 2; ++v) c.Y.symbols.push_back(y + "|" + std::to_string(v));

  const int nqb = g.questionsB.size();
  // Round 1: distribute questions by mu, payload flag fixed to 0.
  TransitionDist round1;
  for (int x = 0; x < g.questionsA.size(); ++x)
    for (int y = 0; y < nqb; ++y)
      if (g.mu_at(x, y) > 0.0) round1.push_back({x, 2 * y + 0, g.mu_at(x, y)});
  for (int a = 0; a < c.A.size(); ++a)
    for (int b = 0; b < c.B.size(); ++b) c.set_transition(0, a, b, round1);

  // Round 2: relays u1 on a win, else a fair coin. x0, y0 are the first
  // declared symbols.
  const int x0 = 0, y0q = 0;
  for (const TransitionEntry& e : round1) {
    int x1 = e.x, y1q = e.y / 2;
    for (int a1 = 0; a1 < c.A.size(); ++a1) {
      int u1 = a1 % 2;
      for (int b1 = 0; b1 < c.B.size(); ++b1) {
        int h1 = c.history_child(0, {a1, b1, e.x, e.y});
        for (int a2 = 0; a2 < c.A.size(); ++a2) {
          int ans2 = a2 / 2;
          for (int b2 = 0; b2 < c.B.size(); ++b2) {
            TransitionDist d;
            if (g.wins(x1, y1q, ans2, b2)) {
              d = {{x0, 2 * y0q + u1, 1.0}};
            } else {
              d = {{x0, 2 * y0q + 0, 0.5}, {x0, 2 * y0q + 1, 0.5}};
            }
            c.set_transition(h1, a2, b2, std::move(d));
          }
        }
      }
    }
  }
  return c;
}

namespace {

Projector angle_projector(double theta) {
  Eigen::Vector2cd v(std::cos(theta), std::sin(theta));
  return v * v.adjoint();
}

}  // namespace

BuiltinGame builtin_game(const std::string& name) {
  if (name != "chsh") throw_input("unknown builtin game: " + name);
  BuiltinGame out;
  NonLocalGame& g = out.game;
  g.questionsA = {"Xq", {"0", "1"}};
  g.questionsB = {"Yq", {"0", "1"}};
  g.answersA = {"Aans", {"0", "1"}};
  g.answersB = {"Bans", {"0", "1"}};
  g.mu.assign(4, 0.25);
  g.win.assign(16, false);
  for (int x = 0; x < 2; ++x)
    for (int y = 0; y < 2; ++y)
      for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b)
          g.win[std::size_t(((x * 2 + y) * 2 + a) * 2 + b)] = ((a ^ b) == (x & y));

  GameQuantumStrategy& s = out.strategy;
  s.dimA = s.dimB = 2;
  s.state = Eigen::VectorXcd::Zero(4);
  s.state(0) = s.state(3) = 1.0 / std::sqrt(2.0);
  const double pi = std::acos(-1.0);
  s.alice = {{angle_projector(0.0), angle_projector(pi / 2)},
             {angle_projector(pi / 4), angle_projector(3 * pi / 4)}};
  s.bob = {{angle_projector(pi / 8), angle_projector(5 * pi / 8)},
           {angle_projector(-pi / 8), angle_projector(3 * pi / 8)}};
  return out;
}

}  // namespace qleak
