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

#include <algorithm>
#include <stdexcept>
#include <vector>

#include "pauliforge/gates.hpp"
#include "pauliforge/solution.hpp"

namespace pauliforge {

/// Peephole rewriting to a fixed point: adjacent identical involutions
/// (H, CNOT, SWAP on identical indices) cancel, and adjacent quarter-turn
/// runs on one qubit combine modulo four (so SSSS and S S^dag vanish).
/// Purely adjacency-based; gates are never commuted past each other, so the
/// circuit unitary is preserved exactly.
inline Circuit peephole(const Circuit& input) {
  struct Entry {
    GateKind kind;
    uint32_t a, b;
    int spow;  // quarter turns for S entries, 0 otherwise
  };
  std::vector<Entry> stack;
  for (const auto& g : input) {
    if (g.kind == GateKind::S) {
      const int inc = g.dag ? 3 : 1;
      if (!stack.empty() && stack.back().kind == GateKind::S && stack.back().a == g.a) {
        stack.back().spow = (stack.back().spow + inc) & 3;
        if (stack.back().spow == 0) stack.pop_back();
      } else {
        stack.push_back({GateKind::S, g.a, 0, inc});
      }
    } else {
      if (!stack.empty() && stack.back().kind == g.kind && stack.back().a == g.a &&
          stack.back().b == g.b) {
        stack.pop_back();
      } else {
        stack.push_back({g.kind, g.a, g.b, 0});
      }
    }
  }
  Circuit out;
  for (const auto& e : stack) {
    if (e.kind != GateKind::S) {
      out.push_back({e.kind, e.a, e.b, false});
    } else if (e.spow == 3) {
      out.push_back({GateKind::S, e.a, 0, true});
    } else {
      for (int i = 0; i < e.spow; ++i) out.push_back({GateKind::S, e.a, 0, false});
    }
  }
  return out;
}

enum class CancelMode { Tail, Full };

/// The simplified circuit split into its body part (gates up to the last
/// removal mark) and its tail part (gates after the last mark plus the
/// conjugate tail).
struct CancelledCircuit {
  Circuit body;
  Circuit tail;
  int count() const { return static_cast<int>(body.size() + tail.size()); }
};

/// Cancels the full circuit body || body^dag. Native rotations sit at the
/// removal marks, so marks act as rewrite barriers inside the body; the
/// conjugate tail carries no marks and is rewritten as one region together
/// with any body gates past the last mark. Tail mode leaves the body
/// regions untouched; full mode rewrites every region.
inline CancelledCircuit cancel(const GateWord& body, const std::vector<int>& marks,
                               CancelMode mode) {
  const int k = static_cast<int>(body.size());
  for (int m : marks)
    if (m < 0 || m > k) throw std::invalid_argument("cancel: mark outside the body");
  std::vector<int> edges = marks;
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());

  const Circuit lifted = lift(body);
  CancelledCircuit out;
  int prev = 0;
  for (int edge : edges) {
    Circuit region(lifted.begin() + prev, lifted.begin() + edge);
    if (mode == CancelMode::Full) region = peephole(region);
    out.body.insert(out.body.end(), region.begin(), region.end());
    prev = edge;
  }
  Circuit tail_region(lifted.begin() + prev, lifted.end());
  const Circuit tail = inverse_circuit(lifted);
  tail_region.insert(tail_region.end(), tail.begin(), tail.end());
  out.tail = peephole(tail_region);
  return out;
}

inline CancelledCircuit cancel(const SimultaneousSolution& sol, CancelMode mode) {
  return cancel(sol.gates, sol.removal_marks, mode);
}

/// Gate counts of a solution: raw = body plus the uncancelled conjugate
/// tail (2K), then the tail-cancelled and fully cancelled totals, and both
/// as percentages of the naive individual cost.
struct SolutionMetrics {
  int raw_count = 0;
  int tail_cancelled_count = 0;
  int full_cancelled_count = 0;
  double percent_tail_of_naive = 0.0;
  double percent_full_of_naive = 0.0;
};

inline SolutionMetrics metrics(const SimultaneousSolution& sol, int naive_individual_count) {
  if (naive_individual_count <= 0)
    throw std::invalid_argument("metrics: naive individual count must be positive");
  SolutionMetrics m;
  m.raw_count = 2 * static_cast<int>(sol.gates.size());
  m.tail_cancelled_count = cancel(sol, CancelMode::Tail).count();
  m.full_cancelled_count = cancel(sol, CancelMode::Full).count();
  m.percent_tail_of_naive = 100.0 * m.tail_cancelled_count / naive_individual_count;
  m.percent_full_of_naive = 100.0 * m.full_cancelled_count / naive_individual_count;
  return m;
}

}  // namespace pauliforge
