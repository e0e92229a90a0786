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

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "pauliforge/instance.hpp"
#include "pauliforge/rng.hpp"

namespace pauliforge {

/// Environment state of the GSC Markov decision process: the surviving
/// target elements with their original slots. Survivors only ever shrink.
struct EnvState {
  std::vector<std::pair<int, PauliString>> survivors;
  int step_count = 0;

  bool terminal() const { return survivors.empty(); }
};

inline EnvState reset_env(const GscInstance& inst) {
  EnvState s;
  for (size_t i = 0; i < inst.targets.size(); ++i)
    if (!inst.is_native(inst.targets[i]))
      s.survivors.emplace_back(static_cast<int>(i), inst.targets[i]);
  return s;
}

/// Reward shaping parameters. The per-step constant is added as-is (a
/// penalty when negative); the similarity term rewards moving towards the
/// native set when sign is +1, or the literal paper formula d = sigma(s) -
/// sigma(s') when -1.
struct RewardConfig {
  double step_penalty = -0.00001;   // C
  double similarity_scale = 0.1;    // D
  int similarity_sign = +1;         // d_sign
};

/// phi encoding: each qubit letter becomes four entries of +-1; blocks of
/// removed targets are all zero, so the input width stays 4 Q Tmax.
inline std::vector<int8_t> encode(const EnvState& state, uint32_t q, uint32_t t_max) {
  std::vector<int8_t> v(4 * q * t_max, 0);
  for (const auto& [slot, p] : state.survivors) {
    int8_t* block = v.data() + static_cast<size_t>(slot) * 4 * q;
    for (uint32_t i = 0; i < q; ++i) {
      int8_t* cell = block + 4 * i;
      cell[0] = cell[1] = cell[2] = cell[3] = -1;
      switch (p.letter(i)) {
        case 'I': cell[0] = 1; break;
        case 'X': cell[1] = 1; break;
        case 'Y': cell[2] = 1; break;
        case 'Z': cell[3] = 1; break;
      }
    }
  }
  return v;
}

namespace detail {

inline int max_overlap(const GscInstance& inst, const PauliString& p) {
  int best = 0;
  for (const auto& n : inst.natives) best = std::max(best, overlap(p, n));
  return best;
}

}  // namespace detail

struct StepResult {
  double reward = 0.0;
  bool terminal = false;
  int removed = 0;
};

/// Applies one action to every survivor, removes the ones that landed in N
/// (modulo phase), and scores the transition:
///   removal:     r = d*D + (|s| - |s'|)
///   no removal:  r = d*D + C
/// with d the similarity change of the elements that survive the step.
inline StepResult env_step(EnvState& state, int action, const GscInstance& inst,
                           const RewardConfig& cfg) {
  const auto& gates = inst.mapping_gates;
  if (action < 0 || static_cast<size_t>(action) >= gates.size())
    throw std::out_of_range("env_step: action index out of range");
  const MappingGate g = gates[static_cast<size_t>(action)];

  StepResult out;
  int d = 0;
  std::vector<std::pair<int, PauliString>> next;
  next.reserve(state.survivors.size());
  for (const auto& [slot, p] : state.survivors) {
    const PauliString moved = conjugate(p, g);
    if (inst.is_native(moved)) {
      ++out.removed;
    } else {
      d += detail::max_overlap(inst, moved) - detail::max_overlap(inst, p);
      next.push_back({slot, moved});
    }
  }
  const double shaped = cfg.similarity_sign * static_cast<double>(d) * cfg.similarity_scale;
  out.reward = out.removed > 0 ? shaped + out.removed : shaped + cfg.step_penalty;
  state.survivors = std::move(next);
  state.step_count += 1;
  out.terminal = state.survivors.empty();
  return out;
}

/// With probability 1-eps the argmax (lowest index on ties), otherwise
/// uniform over all actions.
template <typename Scalar>
int epsilon_greedy(std::span<const Scalar> qvals, double eps, Rng& rng) {
  if (qvals.empty()) throw std::invalid_argument("epsilon_greedy: empty q-values");
  if (rng.uniform_real() < eps) return static_cast<int>(rng.uniform_below(qvals.size()));
  int best = 0;
  for (int i = 1; i < static_cast<int>(qvals.size()); ++i)
    if (qvals[static_cast<size_t>(i)] > qvals[static_cast<size_t>(best)]) best = i;
  return best;
}

}  // namespace pauliforge
