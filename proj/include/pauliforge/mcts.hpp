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

#include <cmath>
#include <deque>
#include <limits>
#include <optional>
#include <vector>

#include "pauliforge/cancel.hpp"
#include "pauliforge/env.hpp"
#include "pauliforge/naive.hpp"
#include "pauliforge/solution.hpp"

namespace pauliforge {

/// UCT selection score V_j + c sqrt(ln n / n_j); unvisited children force
/// expansion with +infinity.
inline double uct(double value, double exploration, double n_parent, double n_child) {
  if (n_parent < 1) throw std::invalid_argument("uct: parent must have visits");
  if (n_child == 0) return std::numeric_limits<double>::infinity();
  return value + exploration * std::sqrt(std::log(n_parent) / n_child);
}

/// Playout score from the naive simultaneous length at the node against the
/// root: max(0, 1 - N_j/N_0), clamped into [0, 1].
inline double playout_reward(int n_j, int n_0) {
  if (n_0 <= 0) throw std::invalid_argument("playout_reward: root length must be positive");
  return std::max(0.0, 1.0 - static_cast<double>(n_j) / static_cast<double>(n_0));
}

struct MctsConfig {
  double exploration = 85.0;  // c
  int max_depth = 1000;       // node depth cap, same role as the RL action cap
  int stop_solutions = 100;   // terminate once this many solutions were found
  uint64_t eval_budget = 400000;
  bool cumulative_value = true;  // V_j as sum of rewards; false = running mean
  uint64_t seed = 0;
};

struct MctsNode {
  std::vector<std::pair<int, PauliString>> survivors;
  uint64_t visits = 0;
  double value = 0.0;          // cumulative or mean reward, per config
  uint64_t leaf_visits = 0;    // episodes that ended at this node
  bool terminal = false;       // resolved set
  int depth = 0;
  int parent = -1;
  int action_from_parent = -1;
  std::vector<int> children;   // child node index per action, -1 unexpanded
};

struct MctsResult {
  std::optional<SimultaneousSolution> best_solution;
  std::optional<SolutionMetrics> best_metrics;
  int best_body_length = -1;
  uint64_t evaluations = 0;  // N_MCTS = sum of (max depth + playout length)
  uint64_t episodes = 0;
  int solutions_found = 0;
  int naive_individual_count = 0;
  std::vector<MctsNode> nodes;  // final tree, for invariant checks
};

namespace detail {

inline int naive_count_at(const GscInstance& inst,
                          const std::vector<std::pair<int, PauliString>>& survivors) {
  if (survivors.empty()) return 0;
  GscInstance sub = inst;
  sub.targets.clear();
  for (const auto& [slot, p] : survivors) sub.targets.push_back(p.with_phase(0));
  return static_cast<int>(naive_simultaneous(sub).gates.size());
}

}  // namespace detail

/// Single-player tree search: select by UCT with seeded random tie-breaks,
/// expand one child, evaluate the leaf by the naive simultaneous length,
/// and backpropagate the playout reward along the path. Terminal nodes are
/// resolved sets or depth-capped ones. Runs until the configured number of
/// solutions or the evaluation budget, whichever first.
inline MctsResult mcts_run(const GscInstance& inst, const MctsConfig& cfg) {
  MctsResult res;
  const auto naive = naive_individual(inst);
  res.naive_individual_count = naive.gate_count;
  const int n_actions = static_cast<int>(inst.mapping_gates.size());
  Rng rng(hash_combine(cfg.seed, 0xa5c157ull));

  std::vector<MctsNode>& nodes = res.nodes;
  nodes.push_back({});
  {
    EnvState s0 = reset_env(inst);
    nodes[0].survivors = s0.survivors;
    nodes[0].terminal = s0.survivors.empty();
    nodes[0].children.assign(static_cast<size_t>(n_actions), -1);
  }
  const int root_naive = detail::naive_count_at(inst, nodes[0].survivors);

  auto record_solution = [&](int leaf) {
    ++res.solutions_found;
    GateWord word;
    for (int at = leaf; nodes[static_cast<size_t>(at)].parent >= 0;
         at = nodes[static_cast<size_t>(at)].parent)
      word.push_back(inst.mapping_gates[static_cast<size_t>(
          nodes[static_cast<size_t>(at)].action_from_parent)]);
    std::reverse(word.begin(), word.end());
    if (res.best_body_length < 0 || static_cast<int>(word.size()) < res.best_body_length) {
      const auto v = verify_gscd(inst, word, static_cast<int>(word.size()));
      if (!v.yes) throw std::logic_error("mcts_run: terminal path failed verification");
      res.best_body_length = static_cast<int>(word.size());
      res.best_solution = to_solution(word, v);
      res.best_metrics = naive.gate_count > 0 ? metrics(*res.best_solution, naive.gate_count)
                                              : SolutionMetrics{};
    }
  };

  if (nodes[0].terminal) {
    // T was already inside N: one empty solution
    nodes[0].visits = 1;
    nodes[0].leaf_visits = 1;
    record_solution(0);
    return res;
  }

  while (res.solutions_found < cfg.stop_solutions && res.evaluations < cfg.eval_budget) {
    ++res.episodes;
    int at = 0;
    // selection: descend while fully expanded and not terminal
    for (;;) {
      MctsNode& node = nodes[static_cast<size_t>(at)];
      if (node.terminal || node.depth >= cfg.max_depth) break;
      int pick = -1;
      double best_score = -std::numeric_limits<double>::infinity();
      int ties = 0;
      for (int a = 0; a < n_actions; ++a) {
        const int child = node.children[static_cast<size_t>(a)];
        const double score =
            uct(child < 0 ? 0.0 : nodes[static_cast<size_t>(child)].value, cfg.exploration,
                node.visits == 0 ? 1 : node.visits,
                child < 0 ? 0 : nodes[static_cast<size_t>(child)].visits);
        if (score > best_score) {
          best_score = score;
          pick = a;
          ties = 1;
        } else if (score == best_score && rng.uniform_below(static_cast<uint64_t>(++ties)) == 0) {
          pick = a;
        }
      }
      const int child = node.children[static_cast<size_t>(pick)];
      if (child < 0) {
        // expansion
        MctsNode next;
        next.depth = node.depth + 1;
        next.parent = at;
        next.action_from_parent = pick;
        next.children.assign(static_cast<size_t>(n_actions), -1);
        const MappingGate g = inst.mapping_gates[static_cast<size_t>(pick)];
        for (const auto& [slot, p] : node.survivors) {
          const auto moved = conjugate(p, g);
          if (!inst.is_native(moved)) next.survivors.push_back({slot, moved});
        }
        next.terminal = next.survivors.empty();
        nodes.push_back(std::move(next));
        nodes[static_cast<size_t>(at)].children[static_cast<size_t>(pick)] =
            static_cast<int>(nodes.size()) - 1;
        at = static_cast<int>(nodes.size()) - 1;
        break;
      }
      at = child;
    }

    // simulation: naive playout length at the reached node
    const int leaf = at;
    const int playout_len = detail::naive_count_at(inst, nodes[static_cast<size_t>(leaf)].survivors);
    const double reward = playout_reward(playout_len, root_naive);
    res.evaluations +=
        static_cast<uint64_t>(nodes[static_cast<size_t>(leaf)].depth + playout_len);

    // backpropagation
    nodes[static_cast<size_t>(leaf)].leaf_visits += 1;
    for (int up = leaf; up >= 0; up = nodes[static_cast<size_t>(up)].parent) {
      MctsNode& node = nodes[static_cast<size_t>(up)];
      node.visits += 1;
      if (cfg.cumulative_value) node.value += reward;
      else node.value += (reward - node.value) / static_cast<double>(node.visits);
    }

    if (nodes[static_cast<size_t>(leaf)].terminal) record_solution(leaf);
  }
  return res;
}

}  // namespace pauliforge
