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

#include "pauliforge/solution.hpp"

#include <catch2/catch_amalgamated.hpp>
#include <cstdio>

#include "pauliforge/naive.hpp"

using namespace pauliforge;

namespace {

// picks the gate that removes the most elements, then the largest
// similarity gain, then the lowest action index
Policy greedy_policy() {
  return [](const std::vector<std::pair<int, PauliString>>& live, Rng&) {
    const uint32_t q = live.front().second.qubits();
    const auto inst_natives = default_natives(q);
    const auto gates = action_space(q);
    std::vector<PauliString> cur;
    for (const auto& [i, p] : live) cur.push_back(p);
    const int sigma0 = similarity(cur, inst_natives);
    int best = 0, best_removed = -1, best_gain = -1000000;
    for (size_t gi = 0; gi < gates.size(); ++gi) {
      std::vector<PauliString> next;
      int removed = 0;
      GscInstance probe;
      probe.q = q;
      for (const auto& p : cur) {
        auto r = conjugate(p, gates[gi]);
        if (probe.native_index(r) >= 0) ++removed;
        else next.push_back(r);
      }
      const int gain = similarity(next, inst_natives) - sigma0;
      if (removed > best_removed || (removed == best_removed && gain > best_gain)) {
        best = static_cast<int>(gi);
        best_removed = removed;
        best_gain = gain;
      }
    }
    return gates[static_cast<size_t>(best)];
  };
}

}  // namespace

TEST_CASE("verifier basics") {
  const auto inst = make_instance(4, 8, 0);
  CHECK_FALSE(verify_gscd(inst, {}, 0).yes);

  const auto sol = naive_simultaneous(inst);
  const int k = static_cast<int>(sol.gates.size());
  CHECK(verify_gscd(inst, sol.gates, k).yes);

  // a YES word truncated one gate before the last removal says NO
  const int last_mark = sol.removal_marks.back();
  CHECK_FALSE(verify_gscd(inst, sol.gates, last_mark - 1).yes);
  CHECK(verify_gscd(inst, sol.gates, last_mark).yes);

  CHECK_THROWS_AS(verify_gscd(inst, sol.gates, k + 1), std::invalid_argument);
}

TEST_CASE("verifier accepts with any larger k") {
  const auto inst = make_instance(3, 4, 5);
  auto sol = naive_simultaneous(inst);
  auto word = sol.gates;
  // padding with junk after resolution cannot turn YES into NO
  word.push_back(gate_h(0));
  word.push_back(gate_s(2));
  for (int k = static_cast<int>(sol.gates.size()); k <= static_cast<int>(word.size()); ++k)
    CHECK(verify_gscd(inst, word, k).yes);
}

TEST_CASE("targets already native resolve with the empty word") {
  GscInstance inst = make_instance(4, 1, 0);
  inst.targets = {PauliString::parse("ZIII"), PauliString::parse("IZZI")};
  const auto v = verify_gscd(inst, {}, 0);
  CHECK(v.yes);
  CHECK(v.removal_marks == std::vector<int>{0, 0});

  const auto run = run_gsc(inst, uniform_random_policy(), 10, 1);
  CHECK(run.resolved);
  CHECK(run.steps == 0);
  CHECK(run.solution.gates.empty());
}

TEST_CASE("greedy policy solves the embedded single-qubit case in one step") {
  GscInstance inst = make_instance(2, 1, 0);
  inst.targets = {PauliString::parse("XI")};

  // depth-1 exhaustive check: H(0) is the only resolving action
  int resolving = 0;
  for (const auto& g : action_space(2))
    if (inst.is_native(conjugate(inst.targets[0], g))) ++resolving;
  CHECK(resolving == 1);
  CHECK(inst.is_native(conjugate(inst.targets[0], gate_h(0))));

  const auto run = run_gsc(inst, greedy_policy(), 10, 0);
  REQUIRE(run.resolved);
  CHECK(run.steps == 1);
  CHECK(run.solution.gates == GateWord{gate_h(0)});
}

TEST_CASE("random policy runs are replayable") {
  const auto inst = make_instance(4, 8, 3);
  const auto a = run_gsc(inst, uniform_random_policy(), 200, 42);
  const auto b = run_gsc(inst, uniform_random_policy(), 200, 42);
  CHECK(a.resolved == b.resolved);
  CHECK(a.steps == b.steps);
  if (a.resolved) CHECK(a.solution.gates == b.solution.gates);
}

TEST_CASE("replaying a verified word reproduces the removal order") {
  const auto inst = make_instance(4, 6, 9);
  const auto sol = naive_simultaneous(inst);
  const auto run = run_gsc(inst, replay_policy(sol.gates),
                           static_cast<int>(sol.gates.size()), 0);
  REQUIRE(run.resolved);
  CHECK(run.solution.removal_order == sol.removal_order);
  CHECK(run.solution.removal_marks == sol.removal_marks);
}

TEST_CASE("timeout is distinct from success") {
  const auto inst = make_instance(4, 8, 0);
  auto stuck = [](const std::vector<std::pair<int, PauliString>>&, Rng&) { return gate_s(0); };
  const auto run = run_gsc(inst, stuck, 25, 0);
  CHECK_FALSE(run.resolved);
  CHECK(run.steps == 25);
}

TEST_CASE("solution file round trip") {
  const auto inst = make_instance(4, 5, 11);
  const auto sol = naive_simultaneous(inst);
  const std::string path = "test_solution_roundtrip.txt";
  write_solution(sol, path);
  const auto back = read_solution(path);
  CHECK(back.gates == sol.gates);
  CHECK(back.removal_marks == sol.removal_marks);
  CHECK(back.removal_order == sol.removal_order);
  std::remove(path.c_str());
}
