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

#include "qleak/vulnerability.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace qleak {

VulnerabilityMeasure VulnerabilityMeasure::g_vulnerability(
    std::vector<std::string> guesses, std::vector<std::vector<double>> gain,
    GainMode mode) {
  if (guesses.size() != gain.size()) throw_input("g-vulnerability: guess/gain size mismatch");
  for (const auto& row : gain)
    for (double g : row)
      if (g < 0.0 || g > 1.0) throw_input("g-vulnerability: gain outside [0,1]");
  return {Kind::GVulnerability, std::move(guesses), std::move(gain), mode};
}

namespace {

double best_gain(const VulnerabilityMeasure& v, const std::vector<double>& mass) {
  double best = -1.0;
  for (const auto& row : v.gain) {
    double s = 0.0;
    for (std::size_t k = 0; k < mass.size(); ++k) s += mass[k] * row[k];
    best = std::max(best, s);
  }
  return best;
}

double neg_shannon(const std::vector<double>& d) {
  double h = 0.0;
  for (double p : d)
    if (p > 0.0) h += p * std::log2(p);
  return h;  // sum p log p = -H
}

}  // namespace

double vulnerability(const VulnerabilityMeasure& v, const std::vector<double>& dist) {
  switch (v.kind) {
    case VulnerabilityMeasure::Kind::Shannon:
      return neg_shannon(dist);
    case VulnerabilityMeasure::Kind::MinEntropy:
      return std::log2(*std::max_element(dist.begin(), dist.end()));
    case VulnerabilityMeasure::Kind::GVulnerability: {
      double g = best_gain(v, dist);
      return v.mode == GainMode::Multiplicative ? std::log2(g) : g;
    }
  }
  throw_input("unknown vulnerability kind");
}

double posterior_vulnerability(const VulnerabilityMeasure& v,
                               const std::vector<std::vector<double>>& joint) {
  switch (v.kind) {
    case VulnerabilityMeasure::Kind::Shannon: {
      double acc = 0.0;
      for (const auto& row : joint) {
        double pt = 0.0;
        for (double m : row) pt += m;
        if (pt <= 0.0) continue;
        std::vector<double> post(row);
        for (double& m : post) m /= pt;
        acc += pt * neg_shannon(post);
      }
      return acc;
    }
    case VulnerabilityMeasure::Kind::MinEntropy: {
      double acc = 0.0;
      for (const auto& row : joint) acc += *std::max_element(row.begin(), row.end());
      return std::log2(acc);
    }
    case VulnerabilityMeasure::Kind::GVulnerability: {
      double acc = 0.0;
      for (const auto& row : joint) acc += best_gain(v, row);
      return v.mode == GainMode::Multiplicative ? std::log2(acc) : acc;
    }
  }
  throw_input("unknown vulnerability kind");
}

void bob_view_joint(const SecretModel& secret, const InteractiveChannel& c,
                    const DeterministicStrategy& bob, std::vector<int>& leaves,
                    std::vector<std::vector<double>>& joint) {
  const std::size_t nk = secret.secrets.size();
  if (secret.prior.size() != nk || secret.alice.size() != nk)
    throw_input("secret model is not total on its secret set");
  std::map<int, std::vector<double>> rows;  // bob view leaf -> p(k, leaf)
  for (std::size_t k = 0; k < nk; ++k) {
    if (secret.prior[k] <= 0.0 && secret.prior[k] != 0.0)
      throw_input("negative prior mass");
    for_each_trace(c, secret.alice[k], bob, [&](int, int bv, double p) {
      auto& row = rows[bv];
      if (row.empty()) row.assign(nk, 0.0);
      row[k] += secret.prior[k] * p;
    });
  }
  leaves.clear();
  joint.clear();
  for (auto& [leaf, row] : rows) {
    leaves.push_back(leaf);
    joint.push_back(std::move(row));
  }
}

double leakage(const VulnerabilityMeasure& v, const SecretModel& secret,
               const InteractiveChannel& c, const DeterministicStrategy& bob) {
  std::vector<int> leaves;
  std::vector<std::vector<double>> joint;
  bob_view_joint(secret, c, bob, leaves, joint);
  return posterior_vulnerability(v, joint) - vulnerability(v, secret.prior);
}

}  // namespace qleak
