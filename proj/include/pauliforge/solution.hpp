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

#include <fstream>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "pauliforge/instance.hpp"

namespace pauliforge {

/// A simultaneous solution: one shared mapping-gate stream (the body of K
/// gates; the conjugate tail is implicit) plus removal bookkeeping.
/// removal_marks[j] is the 1-based gate index after which the j-th removal
/// happened (0 = removed before any gate); removal_order[j] is the original
/// target index removed j-th; native_assignment[t] is the native each target
/// landed on.
struct SimultaneousSolution {
  GateWord gates;
  std::vector<int> removal_marks;
  std::vector<int> removal_order;
  std::vector<int> native_assignment;
};

struct VerifyResult {
  bool yes = false;
  std::vector<int> removal_marks;
  std::vector<int> removal_order;
  std::vector<int> native_assignment;
  std::vector<std::pair<int, PauliString>> survivors;  // on NO
};

/// The GSCD decision check: applies the first k gates of the word to the
/// surviving target set, removing elements that land in N (modulo phase).
/// YES iff nothing survives. O(k |T|) conjugations. Elements of T that are
/// already native are removed before the first gate with mark 0, matching
/// the execution loop.
inline VerifyResult verify_gscd(const GscInstance& inst, const GateWord& word, int k) {
  if (k < 0 || static_cast<size_t>(k) > word.size())
    throw std::invalid_argument("verify_gscd: k out of range");
  VerifyResult res;
  res.native_assignment.assign(inst.targets.size(), -1);
  std::vector<std::pair<int, PauliString>> live;
  for (size_t i = 0; i < inst.targets.size(); ++i)
    live.emplace_back(static_cast<int>(i), inst.targets[i]);

  auto sweep = [&](int step) {
    for (size_t i = 0; i < live.size();) {
      const int ni = inst.native_index(live[i].second);
      if (ni >= 0) {
        res.removal_marks.push_back(step);
        res.removal_order.push_back(live[i].first);
        res.native_assignment[static_cast<size_t>(live[i].first)] = ni;
        live.erase(live.begin() + static_cast<long>(i));
      } else {
        ++i;
      }
    }
  };

  sweep(0);
  for (int step = 1; step <= k && !live.empty(); ++step) {
    const auto& g = word[static_cast<size_t>(step - 1)];
    for (auto& [idx, p] : live) p = conjugate(p, g);
    sweep(step);
  }
  res.yes = live.empty();
  res.survivors = std::move(live);
  return res;
}

inline SimultaneousSolution to_solution(GateWord word, const VerifyResult& v) {
  return {std::move(word), v.removal_marks, v.removal_order, v.native_assignment};
}

struct RunResult {
  bool resolved = false;
  SimultaneousSolution solution;  // valid when resolved
  int steps = 0;
};

using Policy =
    std::function<MappingGate(const std::vector<std::pair<int, PauliString>>&, Rng&)>;

/// The GSC execution loop: choose a gate, conjugate every surviving element,
/// remove the ones that became native, until the set is empty or max_steps
/// is hit. Resolved elements receive no further gates.
inline RunResult run_gsc(const GscInstance& inst, const Policy& policy, int max_steps,
                         uint64_t rng_seed) {
  if (max_steps < 1) throw std::invalid_argument("run_gsc: max_steps must be >= 1");
  Rng rng(rng_seed);
  RunResult out;
  SimultaneousSolution sol;
  sol.native_assignment.assign(inst.targets.size(), -1);
  std::vector<std::pair<int, PauliString>> live;
  for (size_t i = 0; i < inst.targets.size(); ++i)
    live.emplace_back(static_cast<int>(i), inst.targets[i]);

  auto sweep = [&](int step) {
    for (size_t i = 0; i < live.size();) {
      const int ni = inst.native_index(live[i].second);
      if (ni >= 0) {
        sol.removal_marks.push_back(step);
        sol.removal_order.push_back(live[i].first);
        sol.native_assignment[static_cast<size_t>(live[i].first)] = ni;
        live.erase(live.begin() + static_cast<long>(i));
      } else {
        ++i;
      }
    }
  };

  sweep(0);
  int step = 0;
  while (!live.empty() && step < max_steps) {
    const MappingGate g = policy(live, rng);
    sol.gates.push_back(g);
    ++step;
    for (auto& [idx, p] : live) p = conjugate(p, g);
    sweep(step);
  }
  out.steps = step;
  out.resolved = live.empty();
  if (out.resolved) out.solution = std::move(sol);
  return out;
}

inline Policy uniform_random_policy() {
  return [](const std::vector<std::pair<int, PauliString>>& live, Rng& rng) {
    const uint32_t q = live.front().second.qubits();
    const auto gates = action_space(q);
    return gates[rng.uniform_below(gates.size())];
  };
}

/// Replays a fixed word, ignoring the state.
inline Policy replay_policy(GateWord word) {
  auto pos = std::make_shared<size_t>(0);
  return [word = std::move(word), pos](const auto&, Rng&) {
    if (*pos >= word.size()) throw std::runtime_error("replay_policy: word exhausted");
    return word[(*pos)++];
  };
}

/// Solution file: one gate per line (`H 0`, `CNOT 1 2`, ...) with `#MARK l`
/// comment lines naming the removed target after the preceding gate.
inline void write_solution(const SimultaneousSolution& sol, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("write_solution: cannot open " + path);
  size_t next_removal = 0;
  auto emit_marks = [&](int step) {
    while (next_removal < sol.removal_marks.size() &&
           sol.removal_marks[next_removal] == step) {
      out << "#MARK " << sol.removal_order[next_removal] << "\n";
      ++next_removal;
    }
  };
  emit_marks(0);
  for (size_t i = 0; i < sol.gates.size(); ++i) {
    out << format_gate(sol.gates[i]) << "\n";
    emit_marks(static_cast<int>(i) + 1);
  }
}

inline SimultaneousSolution read_solution(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("read_solution: cannot open " + path);
  SimultaneousSolution sol;
  std::string line;
  int step = 0;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (line.rfind("#MARK", 0) == 0) {
      sol.removal_marks.push_back(step);
      sol.removal_order.push_back(std::stoi(line.substr(5)));
      continue;
    }
    if (line[0] == '#') continue;
    sol.gates.push_back(parse_gate(line));
    ++step;
  }
  return sol;
}

}  // namespace pauliforge
