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

#include <doctest.h>

using namespace qleak;

TEST_CASE("probability parsing accepts decimals and rationals") {
  CHECK(parse_probability("0.25") == doctest::Approx(0.25));
  CHECK(parse_probability("1/4") == doctest::Approx(0.25));
  CHECK(parse_probability("7/8") == doctest::Approx(0.875));
  CHECK_THROWS_AS(parse_probability("x"), Error);
  CHECK_THROWS_AS(parse_probability("1/0"), Error);
  CHECK_THROWS_AS(parse_probability("0.5oops"), Error);
}

TEST_CASE("distribution invariants") {
  Distribution d({0, 2}, {0.5, 0.5});
  CHECK(d.normalized());
  CHECK(d.at(0) == 0.5);
  CHECK(d.at(1) == 0.0);
  CHECK_THROWS_AS(Distribution({1, 1}, {0.5, 0.5}), Error);
  CHECK(Distribution::point(3).normalized());
  CHECK(Distribution::uniform({0, 1, 2, 3}).at(2) == doctest::Approx(0.25));
}

TEST_CASE("bayes posterior from the worked example") {
  // prior 1/2,1/2; p(y=1|k0)=1, p(y=1|k1)=1/2: observing 1 gives (2/3, 1/3).
  auto post = bayes_posterior({0.5, 0.5}, {1.0, 0.5});
  CHECK(post[0] == doctest::Approx(2.0 / 3.0));
  CHECK(post[1] == doctest::Approx(1.0 / 3.0));

  // Observing 0 identifies k1 with certainty.
  auto post0 = bayes_posterior({0.5, 0.5}, {0.0, 0.5});
  CHECK(post0[0] == doctest::Approx(0.0));
  CHECK(post0[1] == doctest::Approx(1.0));

  // Constant likelihood keeps the prior.
  auto same = bayes_posterior({0.3, 0.7}, {0.5, 0.5});
  CHECK(same[0] == doctest::Approx(0.3));
  CHECK(same[1] == doctest::Approx(0.7));

  CHECK_THROWS_AS(bayes_posterior({1.0, 0.0}, {0.0, 1.0}), Error);
}
