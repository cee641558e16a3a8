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

#include "qleak/quantum.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace qleak {

namespace {
double max_abs(const Eigen::MatrixXcd& m) { return m.cwiseAbs().maxCoeff(); }
}  // namespace

void check_family(const ProjectorFamily& family, int dim, const std::string& where,
                  std::vector<Violation>& out) {
  Eigen::MatrixXcd sum = Eigen::MatrixXcd::Zero(dim, dim);
  for (std::size_t i = 0; i < family.size(); ++i) {
    const Projector& p = family[i];
    if (p.rows() != dim || p.cols() != dim) {
      out.push_back({"dimension", where + " projector " + std::to_string(i)});
      return;
    }
    if (max_abs(p - p.adjoint()) > kProjectorTol)
      out.push_back({"hermiticity", where + " projector " + std::to_string(i)});
    if (max_abs(p * p - p) > kProjectorTol)
      out.push_back({"idempotence", where + " projector " + std::to_string(i)});
    for (std::size_t j = i + 1; j < family.size(); ++j)
      if (max_abs(p * family[j]) > kProjectorTol)
        out.push_back({"orthogonality",
                       where + " projectors " + std::to_string(i) + "," + std::to_string(j)});
    sum += p;
  }
  if (max_abs(sum - Eigen::MatrixXcd::Identity(dim, dim)) > kProjectorTol)
    out.push_back({"completeness", where});
}

std::vector<Violation> GameQuantumStrategy::validate(int nqa, int nqb, int naa,
                                                     int nab) const {
  std::vector<Violation> out;
  if (state.size() != dimA * dimB) out.push_back({"dimension", "state vector"});
  else if (std::abs(state.norm() - 1.0) > kProjectorTol)
    out.push_back({"normalization", "state norm " + std::to_string(state.norm())});
  if (int(alice.size()) != nqa) out.push_back({"coverage", "alice question families"});
  if (int(bob.size()) != nqb) out.push_back({"coverage", "bob question families"});
  for (std::size_t x = 0; x < alice.size(); ++x) {
    if (int(alice[x].size()) != naa) {
      out.push_back({"coverage", "alice family for question " + std::to_string(x)});
      continue;
    }
    check_family(alice[x], dimA, "alice question " + std::to_string(x), out);
  }
  for (std::size_t y = 0; y < bob.size(); ++y) {
    if (int(bob[y].size()) != nab) {
      out.push_back({"coverage", "bob family for question " + std::to_string(y)});
      continue;
    }
    check_family(bob[y], dimB, "bob question " + std::to_string(y), out);
  }
  return out;
}

std::vector<Violation> validate_quantum_strategy(const QuantumJointStrategy& s,
                                                 const InteractiveChannel& c,
                                                 int num_secrets) {
  std::vector<Violation> out;
  if (s.state.size() != s.dimA * s.dimB) out.push_back({"dimension", "state vector"});
  else if (std::abs(s.state.norm() - 1.0) > kProjectorTol)
    out.push_back({"normalization", "state norm " + std::to_string(s.state.norm())});

  const ViewTree& av = c.alice_views();
  for (int k = 0; k < num_secrets; ++k) {
    for (int v = 0; v < av.size(); ++v) {
      if (av.depth(v) >= c.rounds) continue;
      auto it = s.alice.find({k, v});
      if (it == s.alice.end()) {
        out.push_back({"coverage", "alice family missing for k=" + std::to_string(k) +
                                       " view#" + std::to_string(v)});
        continue;
      }
      if (int(it->second.size()) != c.A.size()) {
        out.push_back({"coverage", "alice family not indexed by A at view#" +
                                       std::to_string(v)});
        continue;
      }
      check_family(it->second, s.dimA,
                   "alice k=" + std::to_string(k) + " view#" + std::to_string(v), out);
    }
  }
  const ViewTree& bv = c.bob_views();
  for (int v = 0; v < bv.size(); ++v) {
    if (bv.depth(v) >= c.rounds) continue;
    auto it = s.bob.find(v);
    if (it == s.bob.end()) {
      out.push_back({"coverage", "bob family missing for view#" + std::to_string(v)});
      continue;
    }
    if (int(it->second.size()) != c.B.size()) {
      out.push_back({"coverage", "bob family not indexed by B at view#" + std::to_string(v)});
      continue;
    }
    check_family(it->second, s.dimB, "bob view#" + std::to_string(v), out);
  }
  return out;
}

namespace {

struct EntangledWalker {
  const InteractiveChannel& c;
  const QuantumJointStrategy& s;
  int k;
  Eigen::MatrixXcd m0;  // reshaped state
  std::vector<TraceMass>* out;

  // m carries (A_t (x) B_t) |psi> reshaped: left-multiplications in round
  // order put the round-1 operator rightmost, as displayed.
  void go(int node, double f, const Eigen::MatrixXcd& m) {
    if (c.history_depth(node) == c.rounds) {
      double w = f * (m0.conjugate().cwiseProduct(m)).sum().real();
      if (w > 1e-15) out->push_back({node, w});
      return;
    }
    int avn = c.alice_view_of(node), bvn = c.bob_view_of(node);
    auto ita = s.alice.find({k, avn});
    if (ita == s.alice.end())
      throw_input("strategy missing alice family (k=" + std::to_string(k) + ", view#" +
                  std::to_string(avn) + ")");
    auto itb = s.bob.find(bvn);
    if (itb == s.bob.end())
      throw_input("strategy missing bob family (view#" + std::to_string(bvn) + ")");
    for (int a = 0; a < c.A.size(); ++a) {
      if (ita->second[std::size_t(a)].isZero(0)) continue;
      for (int b = 0; b < c.B.size(); ++b) {
        if (itb->second[std::size_t(b)].isZero(0)) continue;
        Eigen::MatrixXcd next =
            ita->second[std::size_t(a)] * m * itb->second[std::size_t(b)].transpose();
        if (next.cwiseAbs().maxCoeff() < 1e-14) continue;
        const TransitionDist& dist = c.transition(node, a, b);
        for (const TransitionEntry& e : dist) {
          if (e.p <= 0.0) continue;
          int child = c.find_history_child(node, {a, b, e.x, e.y});
          if (child < 0) throw_input("entangled walk hit an uninterned history");
          go(child, f * e.p, next);
        }
      }
    }
  }
};

}  // namespace

std::vector<TraceMass> entangled_trace_distribution(const InteractiveChannel& c,
                                                    const QuantumJointStrategy& s,
                                                    int k) {
  Eigen::MatrixXcd m0(s.dimA, s.dimB);
  for (int i = 0; i < s.dimA; ++i)
    for (int j = 0; j < s.dimB; ++j) m0(i, j) = s.state(i * s.dimB + j);
  std::vector<TraceMass> out;
  EntangledWalker w{c, s, k, m0, &out};
  w.go(0, 1.0, m0);
  return out;
}

double entangled_leakage(const VulnerabilityMeasure& v, const std::vector<double>& prior,
                         const InteractiveChannel& c, const QuantumJointStrategy& s) {
  auto report = validate_quantum_strategy(s, c, int(prior.size()));
  if (!report.empty())
    throw_input("invalid quantum joint strategy: " + report.front().kind + " (" +
                report.front().detail + ")");
  std::map<int, std::vector<double>> rows;
  for (std::size_t k = 0; k < prior.size(); ++k) {
    for (const TraceMass& tm : entangled_trace_distribution(c, s, int(k))) {
      auto& row = rows[c.bob_view_of(tm.leaf)];
      if (row.empty()) row.assign(prior.size(), 0.0);
      row[k] += prior[k] * tm.p;
    }
  }
  std::vector<std::vector<double>> joint;
  joint.reserve(rows.size());
  for (auto& [leaf, row] : rows) joint.push_back(std::move(row));
  return posterior_vulnerability(v, joint) - vulnerability(v, prior);
}

QuantumJointStrategy chsh_channel_strategy(const InteractiveChannel& c_chsh) {
  const int na = c_chsh.A.size(), nb = c_chsh.B.size();
  if (c_chsh.rounds != 2 || na != 4 || nb != 2 || c_chsh.X.size() != 2 ||
      c_chsh.Y.size() != 4)
    throw_input("chsh_channel_strategy expects the compiled CHSH channel");

  const double pi = std::acos(-1.0);
  auto proj = [](double theta) {
    Eigen::Vector2cd v(std::cos(theta), std::sin(theta));
    return Projector(v * v.adjoint());
  };
  const ProjectorFamily alice_basis[2] = {{proj(0.0), proj(pi / 2)},
                                          {proj(pi / 4), proj(3 * pi / 4)}};
  const ProjectorFamily bob_basis[2] = {{proj(pi / 8), proj(5 * pi / 8)},
                                        {proj(-pi / 8), proj(3 * pi / 8)}};
  const Projector id = Projector::Identity(2, 2);
  const Projector zero = Projector::Zero(2, 2);

  QuantumJointStrategy s;
  s.dimA = s.dimB = 2;
  s.state = Eigen::VectorXcd::Zero(4);
  s.state(0) = s.state(3) = 1.0 / std::sqrt(2.0);

  const ViewTree& av = c_chsh.alice_views();
  for (int k = 0; k < 2; ++k) {
    for (int v = 0; v < av.size(); ++v) {
      if (av.depth(v) >= 2) continue;
      ProjectorFamily fam(std::size_t(na), zero);
      if (av.depth(v) == 0) {
        // All round-1 mass on (first answer, u = k); A symbols are ordered
        // answer-major with the payload bit fastest.
        fam[std::size_t(k)] = id;
      } else {
        int x = av.out(v);  // Alice's question
        for (int a = 0; a < na; ++a) {
          int ans = a / 2, u = a % 2;
          fam[std::size_t(a)] = (u == k) ? alice_basis[x][std::size_t(ans)] : zero;
        }
      }
      s.alice[{k, v}] = fam;
    }
  }
  const ViewTree& bv = c_chsh.bob_views();
  for (int v = 0; v < bv.size(); ++v) {
    if (bv.depth(v) >= 2) continue;
    ProjectorFamily fam(std::size_t(nb), zero);
    if (bv.depth(v) == 0) {
      fam[0] = id;
    } else {
      int yq = bv.out(v) / 2;  // Bob's question (payload bit fastest in Y)
      for (int b = 0; b < nb; ++b) fam[std::size_t(b)] = bob_basis[yq][std::size_t(b)];
    }
    s.bob[v] = fam;
  }
  return s;
}

}  // namespace qleak
