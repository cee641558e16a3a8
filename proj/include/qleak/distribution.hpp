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

#ifndef QLEAK_DISTRIBUTION_HPP
#define QLEAK_DISTRIBUTION_HPP

#include <vector>

#include "qleak/common.hpp"

namespace qleak {

/// Finitely supported distribution over integer outcome ids. Support ids are
/// distinct and kept in increasing order so that serialization and argmax
/// tie-breaking are stable.
struct Distribution {
  std::vector<int> support;
  std::vector<double> weight;

  Distribution() = default;
  Distribution(std::vector<int> s, std::vector<double> w);

  std::size_t size() const { return support.size(); }
  double total() const;
  bool normalized(double tol = kDistTol) const;
  double at(int outcome) const;  // 0 when outside the support

  static Distribution point(int outcome);
  static Distribution uniform(const std::vector<int>& outcomes);
};

/// Bayes update of `prior` (over k = 0..K-1) given one observation with
/// likelihoods `likelihood[k]`. Rejects observations of zero marginal mass.
std::vector<double> bayes_posterior(const std::vector<double>& prior,
                                    const std::vector<double>& likelihood);

}  // namespace qleak

#endif  // QLEAK_DISTRIBUTION_HPP
