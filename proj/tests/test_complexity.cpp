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

#include "pauliforge/reduction.hpp"

#include <catch2/catch_amalgamated.hpp>
#include <cstdio>
#include <set>

#include "pauliforge/rng.hpp"

using namespace pauliforge;

namespace {

Graph path_graph(int n) {
  Graph g;
  g.n = n;
  for (int i = 0; i + 1 < n; ++i) g.add_edge(i, i + 1);
  g.normalize();
  return g;
}

std::vector<Graph> all_graphs(int n) {
  std::vector<std::pair<int, int>> slots;
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v) slots.emplace_back(u, v);
  std::vector<Graph> out;
  for (uint64_t bits = 0; bits < (1ull << slots.size()); ++bits) {
    Graph g;
    g.n = n;
    for (size_t i = 0; i < slots.size(); ++i)
      if ((bits >> i) & 1) g.add_edge(slots[i].first, slots[i].second);
    g.normalize();
    out.push_back(std::move(g));
  }
  return out;
}

}  // namespace

TEST_CASE("hp2hps counts") {
  const auto p3 = path_graph(3);
  const auto h = hp2hps(p3);
  CHECK(h.n == 4);
  CHECK(h.edges.size() == 5);
  CHECK(h.start == 3);

  Graph single;
  single.n = 1;
  const auto hs = hp2hps(single);
  CHECK(hs.n == 2);
  CHECK(hs.edges.size() == 1);
}

TEST_CASE("hp2hps preserves the original graph as a subgraph") {
  Rng rng(3);
  for (int trial = 0; trial < 30; ++trial) {
    const int n = 2 + static_cast<int>(rng.uniform_below(4));
    Graph g;
    g.n = n;
    for (int u = 0; u < n; ++u)
      for (int v = u + 1; v < n; ++v)
        if (rng.uniform_below(2)) g.add_edge(u, v);
    g.normalize();
    const auto h = hp2hps(g);
    Graph back;
    back.n = h.n - 1;
    for (auto [u, v] : h.edges)
      if (v != h.n - 1) back.add_edge(u, v);
    back.normalize();
    CHECK(back.edges == g.edges);
  }
}

TEST_CASE("brute hamiltonian path") {
  Graph triangle;
  triangle.n = 3;
  triangle.add_edge(0, 1);
  triangle.add_edge(1, 2);
  triangle.add_edge(0, 2);
  triangle.normalize();
  CHECK(brute_hamiltonian_path(triangle).has_value());

  Graph star;  // K_{1,3}: three leaves cannot all be endpoints
  star.n = 4;
  star.add_edge(0, 1);
  star.add_edge(0, 2);
  star.add_edge(0, 3);
  star.normalize();
  CHECK_FALSE(brute_hamiltonian_path(star).has_value());

  const auto p3 = path_graph(3);
  CHECK(brute_hamiltonian_path(p3, 0).has_value());
  CHECK_FALSE(brute_hamiltonian_path(p3, 1).has_value());

  const auto witness = brute_hamiltonian_path(p3);
  REQUIRE(witness.has_value());
  CHECK(witness->size() == 3);

  Graph big;
  big.n = 10;
  CHECK_THROWS_AS(brute_hamiltonian_path(big), std::invalid_argument);
}

TEST_CASE("graph file round trip") {
  auto g = path_graph(4);
  g.start = 2;
  const std::string path = "test_graph_roundtrip.txt";
  write_graph(g, path);
  const auto back = read_graph(path);
  CHECK(back.n == g.n);
  CHECK(back.edges == g.edges);
  CHECK(back.start == g.start);
  std::remove(path.c_str());
}

TEST_CASE("labels satisfy the XOR edge invariant") {
  Rng rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 1 + static_cast<int>(rng.uniform_below(5));
    Graph g;
    g.n = n;
    for (int u = 0; u < n; ++u)
      for (int v = u + 1; v < n; ++v)
        if (rng.uniform_below(2)) g.add_edge(u, v);
    g.normalize();
    const auto h = hp2hps(g);
    const auto red = hps2gscd(h);

    CHECK(red.vertex_labels[static_cast<size_t>(*h.start)] == 0);
    for (const auto& [edge, y] : red.edge_labels)
      CHECK((red.vertex_labels[static_cast<size_t>(edge.first)] ^
             red.vertex_labels[static_cast<size_t>(edge.second)]) == y);

    // labels and targets are unique
    std::set<uint64_t> labels(red.instance.targets_label.begin(),
                              red.instance.targets_label.end());
    CHECK(labels.size() == red.instance.targets_label.size());

    // removal bound: at the j-th assignment at most C(j-1, 2) + 1 labels
    // leave the pool, counting the start assignment as j = 1
    for (size_t j = 0; j < red.removals_per_step.size(); ++j) {
      const long prev = static_cast<long>(j) + 1;  // previously assigned incl. start
      CHECK(red.removals_per_step[j] <= prev * (prev - 1) / 2 + 1);
    }

    // every mapping gate is an involution pattern over {I,H}
    for (uint64_t p : red.instance.pattern_gates) CHECK(p < (1ull << red.instance.q));
  }
}

TEST_CASE("single edge reduction, traced by hand") {
  Graph g;
  g.n = 1;
  const auto h = hp2hps(g);  // s = 1, edge (0, 1)
  const auto red = hps2gscd(h);
  REQUIRE(red.instance.targets.size() == 1);
  CHECK(red.instance.q == 1);
  CHECK(red.instance.targets[0] == PauliString::parse("X"));
  REQUIRE(red.instance.pattern_gates.size() == 1);
  CHECK(red.instance.pattern_gates[0] == 1);
  CHECK(red.instance.budget == 0);

  // resolvable with one H, not with zero gates
  const auto at0 = brute_gscd(red.instance, 0);
  CHECK_FALSE(at0.word.has_value());
  const auto at1 = brute_gscd(red.instance, 1);
  REQUIRE(at1.word.has_value());
  CHECK(at1.word->size() == 1);
}

TEST_CASE("brute gscd basics") {
  GscdInstance inst;
  inst.q = 2;

  // T already subset of N resolves with the empty word
  inst.targets_label = {0};
  inst.targets = {PauliString::parse("ZZ")};
  inst.pattern_gates = {2};
  auto r = brute_gscd(inst, 3);
  REQUIRE(r.word.has_value());
  CHECK(r.word->empty());

  // H on qubit 0 alone cannot fix an X on qubit 1
  inst.targets_label = {3};  // XX
  inst.targets = {PauliString::parse("XX")};
  inst.pattern_gates = {2};  // HI
  r = brute_gscd(inst, 6);
  CHECK_FALSE(r.word.has_value());

  // budget accounting kicks in
  inst.targets_label = {1, 2, 3};
  inst.targets = {PauliString::parse("ZX"), PauliString::parse("XZ"), PauliString::parse("XX")};
  inst.pattern_gates = {1, 2, 3};
  const auto limited = brute_gscd(inst, 3, 5);
  CHECK(limited.budget_exceeded);
}

TEST_CASE("theorem-1 round trip on small graphs") {
  int checked = 0;
  for (int n = 1; n <= 4; ++n) {
    for (const auto& g : all_graphs(n)) {
      if (!g.connected()) continue;
      const auto rt = reduction_round_trip(g);
      CHECK(rt.hp == rt.hps);
      CHECK(rt.hps == rt.gscd_at_t);
      // |T|-1 gates can never resolve |T| unique targets
      CHECK_FALSE(rt.gscd_at_t_minus_1);
      if (rt.gscd_at_t) CHECK(rt.shortest == static_cast<int>(g.n));
      ++checked;
    }
  }
  CHECK(checked > 40);
}
