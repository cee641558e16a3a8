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

#include "qleak/distribution.hpp"

#include <algorithm>
#include <numeric>

namespace qleak {

double parse_probability(const std::string& text) {
  auto slash = text.find('/');
  try {
    if (slash == std::string::npos) {
      std::size_t used = 0;
      double v = std::stod(text, &used);
      if (used != text.size()) throw_input("malformed probability: " + text);
      return v;
    }
    std::size_t used_n = 0, used_d = 0;
    const std::string num = text.substr(0, slash), den = text.substr(slash + 1);
    double n = std::stod(num, &used_n);
    double d = std::stod(den, &used_d);
    if (used_n != num.size() || used_d != den.size() || d == 0.0)
      throw_input("malformed rational probability: " + text);
    return n / d;
  } catch (const std::invalid_argument&) {
    throw_input("malformed probability: " + text);
  } catch (const std::out_of_range&) {
    throw_input("probability out of range: " + text);
  }
}

std::uint64_t fnv1a(const std::string& bytes) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

Budget Budget::from_env() {
  Budget b;
  if (const char* env = std::getenv("QLEAK_BUDGET")) {
    try {
      b.strategies_per_side = std::stod(env);
    } catch (...) {
      throw_input("QLEAK_BUDGET is not a number");
    }
  }
  return b;
}

Distribution::Distribution(std::vector<int> s, std::vector<double> w)
    : support(std::move(s)), weight(std::move(w)) {
  if (support.size() != weight.size())
    throw_input("distribution support/weight size mismatch");
  for (std::size_t i = 1; i < support.size(); ++i)
    if (support[i - 1] >= support[i])
      throw_input("distribution support not strictly increasing");
}

double Distribution::total() const {
  return std::accumulate(weight.begin(), weight.end(), 0.0);
}

bool Distribution::normalized(double tol) const {
  for (double w : weight)
    if (w < -tol) return false;
  return std::abs(total() - 1.0) <= tol;
}

double Distribution::at(int outcome) const {
  auto it = std::lower_bound(support.begin(), support.end(), outcome);
  if (it == support.end() || *it != outcome) return 0.0;
  return weight[std::size_t(it - support.begin())];
}

Distribution Distribution::point(int outcome) { return Distribution({outcome}, {1.0}); }

Distribution Distribution::uniform(const std::vector<int>& outcomes) {
  std::vector<int> s = outcomes;
  std::sort(s.begin(), s.end());
  return Distribution(s, std::vector<double>(s.size(), 1.0 / double(s.size())));
}

std::vector<double> bayes_posterior(const std::vector<double>& prior,
                                    const std::vector<double>& likelihood) {
  if (prior.size() != likelihood.size())
    throw_input("bayes: prior/likelihood size mismatch");
  std::vector<double> post(prior.size());
  double marginal = 0.0;
  for (std::size_t k = 0; k < prior.size(); ++k) {
    post[k] = prior[k] * likelihood[k];
    marginal += post[k];
  }
  if (marginal <= 0.0)
    throw_input("bayes: observation has zero marginal probability");
  for (double& p : post) p /= marginal;
  return post;
}

}  // namespace qleak
