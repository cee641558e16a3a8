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

#include "qleak/channel.hpp"

#include <doctest.h>

using namespace qleak;

namespace {
const TransitionDist& row(const InteractiveChannel& c, int node, int a, int b) {
  return c.transition(node, a, b);
}
}  // namespace

TEST_CASE("scheduler round 1 splits ties uniformly") {
  InteractiveChannel c = scheduler_channel(1);
  const TransitionDist& tie = row(c, 0, 1, 1);
  REQUIRE(tie.size() == 2);
  CHECK(tie[0].p == doctest::Approx(0.5));
  CHECK(tie[1].p == doctest::Approx(0.5));

  const TransitionDist& only_bob = row(c, 0, 0, 1);
  REQUIRE(only_bob.size() == 1);
  CHECK(only_bob[0].x == 0);
  CHECK(only_bob[0].y == 1);
}

TEST_CASE("scheduler favors the starved side after round 1") {
  InteractiveChannel c = scheduler_channel(2);
  // History with #X=1, #Y=0: both asked, Alice got it.
  int h = c.find_history_child(0, {1, 1, 1, 0});
  REQUIRE(h >= 0);
  const TransitionDist& d = row(c, h, 1, 1);
  REQUIRE(d.size() == 1);
  CHECK(d[0].x == 0);
  CHECK(d[0].y == 1);
}

TEST_CASE("builtin scheduler validates cleanly") {
  for (int n = 1; n <= 3; ++n) CHECK(validate_channel(scheduler_channel(n)).empty());
}

TEST_CASE("validation flags unnormalized rows and missing transitions") {
  InteractiveChannel c = scheduler_channel(1);
  c.set_transition(0, 0, 0, {{0, 0, 0.9}});
  auto report = validate_channel(c);
  REQUIRE(report.size() == 1);
  CHECK(report[0].kind == "unnormalized");

  InteractiveChannel c2 = scheduler_channel(2);
  // Knock out a reachable round-2 row.
  int h = c2.find_history_child(0, {0, 1, 0, 1});
  REQUIRE(h >= 0);
  InteractiveChannel c3;
  c3.rounds = 2;
  c3.A = c2.A;
  c3.B = c2.B;
  c3.X = c2.X;
  c3.Y = c2.Y;
  // Rebuild c2 without one row.
  for (int node : c2.reachable_histories()) {
    if (c2.history_depth(node) >= 2) continue;
    for (int a = 0; a < 2; ++a)
      for (int b = 0; b < 2; ++b) {
        if (node == h && a == 0 && b == 0) continue;
        Trace t = c2.history_trace(node);
        int n3 = 0;
        for (const Step& s : t) n3 = c3.history_child(n3, s);
        c3.set_transition(n3, a, b, c2.transition(node, a, b));
        for (const TransitionEntry& e : c2.transition(node, a, b))
          if (e.p > 0) c3.history_child(n3, {a, b, e.x, e.y});
      }
  }
  auto rep2 = validate_channel(c3);
  REQUIRE(rep2.size() == 1);
  CHECK(rep2[0].kind == "missing-transition");
}

TEST_CASE("trace projections select the right coordinates") {
  Trace t{{1, 1, 1, 0}, {0, 1, 0, 1}};
  auto bob = project_trace(t, Side::Bob);
  REQUIRE(bob.size() == 2);
  CHECK(bob[0] == std::pair<int, int>{1, 0});
  CHECK(bob[1] == std::pair<int, int>{1, 1});
  auto alice = project_trace(t, Side::Alice);
  CHECK(alice[0] == std::pair<int, int>{1, 1});
  CHECK(alice[1] == std::pair<int, int>{0, 0});
  CHECK(project_trace({}, Side::Alice).empty());
}
