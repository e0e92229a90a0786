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
#include <optional>
#include <stdexcept>
#include <vector>

#include "pauliforge/cancel.hpp"
#include "pauliforge/naive.hpp"
#include "pauliforge/solution.hpp"

namespace pauliforge {

/// Mapping-gate sequence as a list of fixed-width binary slots. Slot code 0
/// is a no-op, codes 1..4Q-2 map to the action-space order, codes above the
/// range decode to no-ops so that arbitrary bit flips stay valid.
class BitEncoding {
 public:
  BitEncoding(int slots, int n_actions)
      : slots_(slots), bits_per_slot_(bits_for(n_actions)), n_actions_(n_actions),
        payload_((static_cast<size_t>(slots) * bits_per_slot_ + 63) / 64, 0) {
    if (slots < 1) throw std::invalid_argument("BitEncoding: need at least one slot");
  }

  static int bits_for(int n_actions) {
    int bits = 1;
    while ((1 << bits) < n_actions + 1) ++bits;
    return bits;
  }

  int slots() const { return slots_; }
  int bits_per_slot() const { return bits_per_slot_; }

  int code(int slot) const {
    int v = 0;
    const size_t base = static_cast<size_t>(slot) * bits_per_slot_;
    for (int b = 0; b < bits_per_slot_; ++b)
      v |= static_cast<int>((payload_[(base + b) / 64] >> ((base + b) % 64)) & 1) << b;
    return v;
  }

  void set_code(int slot, int code) {
    const size_t base = static_cast<size_t>(slot) * bits_per_slot_;
    for (int b = 0; b < bits_per_slot_; ++b) {
      const size_t word = (base + b) / 64, bit = (base + b) % 64;
      payload_[word] &= ~(1ull << bit);
      if ((code >> b) & 1) payload_[word] |= 1ull << bit;
    }
  }

  void flip(int slot, int bit) {
    const size_t pos = static_cast<size_t>(slot) * bits_per_slot_ + static_cast<size_t>(bit);
    payload_[pos / 64] ^= 1ull << (pos % 64);
  }

  /// Decoded word; no-op and out-of-range codes are skipped.
  GateWord decode(const std::vector<MappingGate>& actions) const {
    GateWord w;
    for (int s = 0; s < slots_; ++s) {
      const int c = code(s);
      if (c >= 1 && c <= static_cast<int>(actions.size()))
        w.push_back(actions[static_cast<size_t>(c - 1)]);
    }
    return w;
  }

  bool operator==(const BitEncoding&) const = default;

 private:
  int slots_;
  int bits_per_slot_;
  int n_actions_;
  std::vector<uint64_t> payload_;
};

/// Encodes a word into the first |word| slots; the rest stay no-ops.
inline BitEncoding encode_bits(const GateWord& word, int slots,
                               const std::vector<MappingGate>& actions) {
  if (static_cast<int>(word.size()) > slots)
    throw std::invalid_argument("encode_bits: word longer than the slot count");
  BitEncoding enc(slots, static_cast<int>(actions.size()));
  for (size_t i = 0; i < word.size(); ++i) {
    int code = -1;
    for (size_t a = 0; a < actions.size(); ++a)
      if (actions[a] == word[i]) {
        code = static_cast<int>(a) + 1;
        break;
      }
    if (code < 0) throw std::invalid_argument("encode_bits: gate not in the action set");
    enc.set_code(static_cast<int>(i), code);
  }
  return enc;
}

/// c(T) = number of targets not yet mapped into N after applying the
/// decoded word with the usual freeze semantics.
inline int sa_cost(const GscInstance& inst, const BitEncoding& enc) {
  const GateWord word = enc.decode(inst.mapping_gates);
  std::vector<PauliString> live;
  for (const auto& t : inst.targets)
    if (!inst.is_native(t)) live.push_back(t);
  for (const auto& g : word) {
    if (live.empty()) break;
    for (size_t i = 0; i < live.size();) {
      live[i] = conjugate(live[i], g);
      if (inst.is_native(live[i])) live.erase(live.begin() + static_cast<long>(i));
      else ++i;
    }
  }
  return static_cast<int>(live.size());
}

/// 1 for non-worsening moves, exp(-(c_new - c_old)/tau) otherwise.
inline double accept_prob(int c_old, int c_new, double tau) {
  if (tau <= 0) throw std::invalid_argument("accept_prob: tau must be positive");
  if (c_new <= c_old) return 1.0;
  return std::exp(-static_cast<double>(c_new - c_old) / tau);
}

struct SaConfig {
  double tau0 = 0.25;
  double tau_min_fraction = 0.01;  // tau_min = 0.01 tau0
  int anneal_steps = 10000;        // flips per repetition, tau linear over these
  enum class Start { Empty, Naive } start = Start::Naive;
  uint64_t eval_budget = 500000;   // total cost queries across repetitions
  int slots = 0;                   // 0 = twice the naive simultaneous body
  uint64_t seed = 0;
};

struct SaResult {
  std::optional<SimultaneousSolution> best_solution;
  std::optional<SolutionMetrics> best_metrics;
  int best_cost = -1;
  int best_body_length = -1;
  uint64_t evaluations = 0;  // N_SA
  int repetitions = 0;
  int naive_individual_count = 0;
};

/// Repeated annealing over bit encodings: each repetition restarts from the
/// configured start, flips one random bit per step, and accepts by
/// accept_prob under a linearly falling temperature. Every cost query is
/// tallied; repetitions stop once the budget is reached. The best resolving
/// encoding (fewest decoded gates at cost zero) is verified before being
/// reported.
inline SaResult sa_run(const GscInstance& inst, const SaConfig& cfg) {
  SaResult res;
  const auto naive = naive_individual(inst);
  res.naive_individual_count = naive.gate_count;
  const auto naive_sol = individual_to_simultaneous(inst, naive);
  const int slots = cfg.slots > 0 ? cfg.slots
                                  : std::max(2 * static_cast<int>(naive_sol.gates.size()), 8);
  const int n_actions = static_cast<int>(inst.mapping_gates.size());
  Rng rng(hash_combine(cfg.seed, 0x5afb00b5u));

  BitEncoding start(slots, n_actions);
  if (cfg.start == SaConfig::Start::Naive)
    start = encode_bits(naive_sol.gates, slots, inst.mapping_gates);

  std::optional<BitEncoding> best_enc;
  auto consider = [&](const BitEncoding& enc, int cost) {
    const int len = static_cast<int>(enc.decode(inst.mapping_gates).size());
    if (res.best_cost < 0 || cost < res.best_cost ||
        (cost == res.best_cost && len < res.best_body_length)) {
      res.best_cost = cost;
      res.best_body_length = len;
      best_enc = enc;
    }
  };

  const double tau_min = cfg.tau_min_fraction * cfg.tau0;
  const int start_cost = sa_cost(inst, start);
  ++res.evaluations;
  consider(start, start_cost);
  while (res.evaluations < cfg.eval_budget) {
    ++res.repetitions;
    BitEncoding cur = start;
    int cur_cost = start_cost;
    for (int step = 0; step < cfg.anneal_steps && res.evaluations < cfg.eval_budget; ++step) {
      const double frac = cfg.anneal_steps > 1
                              ? static_cast<double>(step) / (cfg.anneal_steps - 1)
                              : 1.0;
      const double tau = cfg.tau0 + (tau_min - cfg.tau0) * frac;
      BitEncoding cand = cur;
      const int slot = static_cast<int>(rng.uniform_below(static_cast<uint64_t>(slots)));
      const int bit = static_cast<int>(rng.uniform_below(static_cast<uint64_t>(cur.bits_per_slot())));
      cand.flip(slot, bit);
      const int cand_cost = sa_cost(inst, cand);
      ++res.evaluations;
      consider(cand, cand_cost);
      if (rng.uniform_real() < accept_prob(cur_cost, cand_cost, tau)) {
        cur = std::move(cand);
        cur_cost = cand_cost;
      }
    }
  }

  if (best_enc && res.best_cost == 0) {
    const GateWord word = best_enc->decode(inst.mapping_gates);
    const auto v = verify_gscd(inst, word, static_cast<int>(word.size()));
    if (!v.yes) throw std::logic_error("sa_run: zero-cost encoding failed verification");
    res.best_solution = to_solution(word, v);
    res.best_metrics = metrics(*res.best_solution, naive.gate_count);
  }
  return res;
}

}  // namespace pauliforge
