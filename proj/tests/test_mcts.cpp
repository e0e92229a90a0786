// Copyright 2026 The pauliforge authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "pauliforge/mcts.hpp"

#include <catch2/catch_amalgamated.hpp>
#include <cmath>

using namespace pauliforge;

TEST_CASE("uct score") {
  CHECK(std::isinf(uct(0.3, 85.0, 10, 0)));
  CHECK(uct(0.4, 85.0, 1, 1) == Catch::Approx(0.4));  // ln 1 = 0
  // V = 0, c = 85, n = e^2, n_j = 2 -> 85 sqrt(2/2)
  CHECK(uct(0.0, 85.0, std::exp(2.0), 2) == Catch::Approx(85.0));
  CHECK_THROWS_AS(uct(0.0, 85.0, 0, 1), std::invalid_argument);
}

TEST_CASE("playout reward endpoints") {
  CHECK(playout_reward(10, 10) == 0.0);
  CHECK(playout_reward(0, 10) == 1.0);
  CHECK(playout_reward(5, 10) == 0.5);
  CHECK(playout_reward(25, 10) == 0.0);  // clamped
  CHECK_THROWS_AS(playout_reward(1, 0), std::invalid_argument);
}

TEST_CASE("already-resolved target set") {
  GscInstance inst = make_instance(2, 1, 0);
  inst.targets = {PauliString::parse("ZI")};
  MctsConfig cfg;
  const auto res = mcts_run(inst, cfg);
  CHECK(res.solutions_found == 1);
  REQUIRE(res.best_solution.has_value());
  CHECK(res.best_solution->gates.empty());
  CHECK(res.evaluations == 0);
}

TEST_CASE("hand-computed budget tally on a toy tree") {
  // single target YY on two qubits: naive lengths of the six children are
  // H0:5 H1:5 S0:4 S1:4 CNOT:2 SWAP:5, so expanding the root costs
  // 6 * (depth 1) + 25 playout gates = 31 evaluations
  GscInstance inst = make_instance(2, 1, 0);
  inst.targets = {PauliString::parse("YY")};
  MctsConfig cfg;
  cfg.eval_budget = 31;
  cfg.seed = 5;
  const auto res = mcts_run(inst, cfg);
  CHECK(res.evaluations == 31);
  CHECK(res.episodes == 6);
  CHECK(res.solutions_found == 0);
}

TEST_CASE("visit counts are conserved") {
  const auto inst = make_instance(3, 4, 3);
  MctsConfig cfg;
  cfg.exploration = 5.0;
  cfg.max_depth = 60;
  cfg.eval_budget = 30000;
  cfg.seed = 9;
  const auto res = mcts_run(inst, cfg);
  REQUIRE_FALSE(res.nodes.empty());
  uint64_t episodes = 0;
  for (size_t i = 0; i < res.nodes.size(); ++i) {
    const auto& node = res.nodes[i];
    uint64_t child_sum = 0;
    for (int c : node.children)
      if (c >= 0) child_sum += res.nodes[static_cast<size_t>(c)].visits;
    CHECK(node.visits == child_sum + node.leaf_visits);
    episodes += node.leaf_visits;
  }
  CHECK(episodes == res.episodes);
  CHECK(res.nodes[0].visits == res.episodes);
}

TEST_CASE("solutions verify and beat the naive count on most seeds") {
  int wins = 0;
  for (uint64_t seed = 0; seed < 5; ++seed) {
    const auto inst = make_instance(4, 8, seed);
    MctsConfig cfg;
    cfg.exploration = 20.0;
    cfg.max_depth = 100;
    cfg.eval_budget = 400000;
    cfg.seed = seed;
    const auto res = mcts_run(inst, cfg);
    if (!res.best_solution) continue;
    const auto v = verify_gscd(inst, res.best_solution->gates,
                               static_cast<int>(res.best_solution->gates.size()));
    REQUIRE(v.yes);
    if (res.best_metrics->full_cancelled_count < res.naive_individual_count) ++wins;
  }
  CHECK(wins >= 4);
}

TEST_CASE("deterministic under the seed") {
  const auto inst = make_instance(4, 8, 2);
  MctsConfig cfg;
  cfg.exploration = 20.0;
  cfg.max_depth = 100;
  cfg.eval_budget = 50000;
  cfg.seed = 77;
  const auto a = mcts_run(inst, cfg);
  const auto b = mcts_run(inst, cfg);
  CHECK(a.evaluations == b.evaluations);
  CHECK(a.episodes == b.episodes);
  CHECK(a.solutions_found == b.solutions_found);
  CHECK(a.best_body_length == b.best_body_length);
}

TEST_CASE("stops after the configured number of solutions") {
  GscInstance inst = make_instance(2, 1, 1);
  inst.targets = {PauliString::parse("XI")};  // one H away from native
  MctsConfig cfg;
  cfg.exploration = 1.0;
  cfg.stop_solutions = 7;
  cfg.eval_budget = 1000000;
  cfg.seed = 2;
  const auto res = mcts_run(inst, cfg);
  CHECK(res.solutions_found == 7);
  REQUIRE(res.best_solution.has_value());
  CHECK(res.best_solution->gates.size() == 1);
}
