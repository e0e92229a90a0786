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

#pragma once

#include <optional>
#include <queue>
#include <stdexcept>
#include <unordered_map>
#include <vector>

#include "pauliforge/graph.hpp"
#include "pauliforge/instance.hpp"

namespace pauliforge {

/// GSCD instance produced by the HPS reduction. Targets live in {X,Z}^Q
/// (one per non-start vertex), the native set is {Z^Q}, and the mapping
/// gates are H-patterns in {I,H}^Q, encoded as bitmasks with bit (Q-1-i)
/// covering qubit i so that a label reads like its binary number.
struct GscdInstance {
  uint32_t q = 0;
  std::vector<PauliString> targets;
  std::vector<uint64_t> targets_label;
  std::vector<uint64_t> pattern_gates;
  int budget = 0;  // k = |T| - 1 per the decision-problem definition
};

inline PauliString label_to_string(uint64_t label, uint32_t q) {
  uint64_t x = 0, z = 0;
  for (uint32_t i = 0; i < q; ++i) {
    if ((label >> (q - 1 - i)) & 1) x |= 1ull << i;
    else z |= 1ull << i;
  }
  return PauliString::from_masks(q, x, z);
}

inline std::string pattern_to_string(uint64_t pattern, uint32_t q) {
  std::string s(q, 'I');
  for (uint32_t i = 0; i < q; ++i)
    if ((pattern >> (q - 1 - i)) & 1) s[i] = 'H';
  return s;
}

struct Reduction {
  GscdInstance instance;
  std::vector<uint64_t> vertex_labels;                           // indexed by vertex
  std::vector<std::pair<std::pair<int, int>, uint64_t>> edge_labels;
  std::vector<int> removals_per_step;  // pool removals when the j-th vertex got its label
};

/// HPS -> GSCD: the start vertex takes the all-zero label (Z^Q); every other
/// vertex greedily takes the lowest remaining label; each edge contributes
/// the XOR of its endpoint labels as an H-pattern gate. After an assignment,
/// any pool label whose XOR with an assigned label reproduces the XOR of two
/// assigned labels is dropped, which keeps all pairwise label XORs distinct
/// (the `no spurious weight-1 edge' condition). Q grows until the labeling
/// completes.
inline Reduction hps2gscd(const Graph& g) {
  if (!g.start) throw std::invalid_argument("hps2gscd: graph has no start vertex");
  const int s = *g.start;
  const auto adj = g.adjacency();

  for (uint32_t q = 1; q <= 24; ++q) {
    const uint64_t pool_size = 1ull << q;
    std::vector<char> removed(pool_size, 0);
    removed[0] = 1;  // the start label
    Reduction red;
    red.instance.q = q;
    red.vertex_labels.assign(static_cast<size_t>(g.n), 0);
    std::vector<int> assigned = {s};
    bool exhausted = false;

    for (int v = 0; v < g.n && !exhausted; ++v) {
      if (v == s) continue;
      uint64_t label = 0;
      while (label < pool_size && removed[label]) ++label;
      if (label == pool_size) {
        exhausted = true;
        break;
      }
      int step_removals = 1;
      removed[label] = 1;
      red.vertex_labels[static_cast<size_t>(v)] = label;
      red.instance.targets.push_back(label_to_string(label, q));
      red.instance.targets_label.push_back(label);

      for (int u : adj[static_cast<size_t>(v)]) {
        const bool u_assigned =
            u == s || std::find(assigned.begin(), assigned.end(), u) != assigned.end();
        if (!u_assigned) continue;
        const uint64_t y = label ^ red.vertex_labels[static_cast<size_t>(u)];
        red.edge_labels.push_back({{std::min(u, v), std::max(u, v)}, y});
        red.instance.pattern_gates.push_back(y);
      }

      // spurious-gate removals over pairs of previously assigned labels
      for (size_t i = 0; i < assigned.size(); ++i)
        for (size_t j = i + 1; j < assigned.size(); ++j) {
          const uint64_t za = red.vertex_labels[static_cast<size_t>(assigned[i])];
          const uint64_t zb = red.vertex_labels[static_cast<size_t>(assigned[j])];
          const uint64_t spurious = label ^ za ^ zb;
          if (spurious < pool_size && !removed[spurious]) {
            removed[spurious] = 1;
            ++step_removals;
          }
        }
      assigned.push_back(v);
      red.removals_per_step.push_back(step_removals);
    }

    if (!exhausted) {
      red.instance.budget = static_cast<int>(red.instance.targets.size()) - 1;
      return red;
    }
  }
  throw std::runtime_error("hps2gscd: label pool exhausted up to Q = 24");
}

/// Writes the reduced instance as a standard instance file plus a sidecar
/// carrying the Z^Q native, the H-pattern gates and the budget.
inline void write_gscd_instance(const GscdInstance& inst, const std::string& path) {
  {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("write_gscd_instance: cannot open " + path);
    out << inst.q << "\n" << inst.targets.size() << "\n";
    for (const auto& t : inst.targets) out << t.str() << "\n";
  }
  nlohmann::json side;
  side["natives"].push_back(std::string(inst.q, 'Z'));
  for (uint64_t p : inst.pattern_gates)
    side["pattern_gates"].push_back(pattern_to_string(p, inst.q));
  side["budget"] = inst.budget;
  std::ofstream js(path + ".json");
  js << side.dump(2) << "\n";
}

struct BruteGscdResult {
  std::optional<std::vector<uint64_t>> word;  // H-pattern sequence, shortest first
  uint64_t evaluations = 0;
  bool budget_exceeded = false;
};

/// Breadth-first search over gate sequences of length 0..k with state
/// deduplication. Conjugating a {X,Z} string by an H-pattern XORs the
/// pattern into its label, and resolved elements freeze, so a search state
/// is (surviving subset, cumulative XOR). The witness is rebuilt from
/// parent pointers; every pattern in the instance is an involution, so
/// immediate repeats prune themselves through the visited set.
inline BruteGscdResult brute_gscd(const GscdInstance& inst, int k,
                                  uint64_t eval_limit = 10000000) {
  const size_t t = inst.targets_label.size();
  if (t > 20) throw std::invalid_argument("brute_gscd: too many targets");
  BruteGscdResult res;

  auto alive_after = [&](uint64_t mask, uint64_t c) {
    uint64_t out = mask;
    for (size_t i = 0; i < t; ++i)
      if ((mask >> i) & 1 && inst.targets_label[i] == c) out &= ~(1ull << i);
    return out;
  };

  uint64_t mask0 = (t == 0) ? 0 : (1ull << t) - 1;
  mask0 = alive_after(mask0, 0);  // initial sweep: targets already native
  const uint32_t qbits = inst.q;
  auto key_of = [qbits](uint64_t mask, uint64_t c) { return (mask << qbits) | c; };

  struct Node {
    uint64_t mask, c;
    int depth;
  };
  std::unordered_map<uint64_t, std::pair<uint64_t, int>> parent;  // key -> (prev key, gate idx)
  std::queue<Node> frontier;
  parent[key_of(mask0, 0)] = {key_of(mask0, 0), -1};
  frontier.push({mask0, 0, 0});

  uint64_t goal_key = 0;
  bool found = mask0 == 0;
  if (found) goal_key = key_of(0, 0);

  while (!frontier.empty() && !found) {
    const Node node = frontier.front();
    frontier.pop();
    if (node.depth >= k) continue;
    for (size_t gi = 0; gi < inst.pattern_gates.size(); ++gi) {
      res.evaluations += t;
      if (res.evaluations > eval_limit) {
        res.budget_exceeded = true;
        return res;
      }
      const uint64_t c = node.c ^ inst.pattern_gates[gi];
      const uint64_t mask = alive_after(node.mask, c);
      const uint64_t key = key_of(mask, c);
      if (parent.count(key)) continue;
      parent[key] = {key_of(node.mask, node.c), static_cast<int>(gi)};
      if (mask == 0) {
        found = true;
        goal_key = key;
        break;
      }
      frontier.push({mask, c, node.depth + 1});
    }
  }

  if (found) {
    std::vector<uint64_t> word;
    uint64_t key = goal_key;
    while (true) {
      const auto [prev, gate] = parent[key];
      if (gate < 0) break;
      word.push_back(inst.pattern_gates[static_cast<size_t>(gate)]);
      key = prev;
    }
    std::reverse(word.begin(), word.end());
    res.word = std::move(word);
  }
  return res;
}

struct RoundTripResult {
  bool hp = false;            // HP instance has a Hamiltonian path
  bool hps = false;           // hp2hps output has one from s
  bool gscd_at_t_minus_1 = false;
  bool gscd_at_t = false;
  int shortest = -1;          // shortest resolving length within |T|, or -1
};

/// Theorem-1 round trip on one HP instance: both budget conventions are
/// reported; the equivalence is expected to hold at k = |T| because every
/// step of a reduced instance removes at most one element, so |T|-1 gates
/// can never resolve |T| targets.
inline RoundTripResult reduction_round_trip(const Graph& g) {
  RoundTripResult r;
  r.hp = brute_hamiltonian_path(g).has_value();
  const Graph g2 = hp2hps(g);
  r.hps = brute_hamiltonian_path(g2, g2.start).has_value();
  const Reduction red = hps2gscd(g2);
  const int t = static_cast<int>(red.instance.targets.size());
  const auto search = brute_gscd(red.instance, t);
  if (search.budget_exceeded) throw std::runtime_error("reduction_round_trip: search budget hit");
  if (search.word) {
    r.shortest = static_cast<int>(search.word->size());
    r.gscd_at_t = true;
    r.gscd_at_t_minus_1 = r.shortest <= t - 1;
  }
  return r;
}

}  // namespace pauliforge
