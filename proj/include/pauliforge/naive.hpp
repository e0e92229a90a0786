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

#include <stdexcept>
#include <vector>

#include "pauliforge/cancel.hpp"
#include "pauliforge/instance.hpp"
#include "pauliforge/solution.hpp"

namespace pauliforge {

/// Each target compiled independently: basis word V_l with
/// conjugate_word(t_l, V_l) native modulo sign. The circuit for target l is
/// V_l, the native rotation, then V_l^dag, so the individual cost is
/// sum over l of 2|V_l| (inverse gates counted singly).
struct IndividualSolution {
  std::vector<GateWord> basis_words;
  std::vector<int> native_index;
  int gate_count = 0;
};

/// The ladder strategy for one target: per-qubit basis rotations (X: H,
/// Y: S then H) turning every support letter into Z, SWAP chains compacting
/// the support into a contiguous block anchored at the leftmost support
/// qubit, then a CNOT ladder reducing the block to a single Z on its last
/// qubit.
inline GateWord naive_basis_word(const PauliString& target) {
  if (target.weight() == 0)
    throw std::invalid_argument("naive_basis_word: target is the identity");
  GateWord v;
  std::vector<uint32_t> support;
  for (uint32_t i = 0; i < target.qubits(); ++i) {
    switch (target.letter(i)) {
      case 'X': v.push_back(gate_h(i)); support.push_back(i); break;
      case 'Y': v.push_back(gate_s(i)); v.push_back(gate_h(i)); support.push_back(i); break;
      case 'Z': support.push_back(i); break;
      default: break;
    }
  }
  const uint32_t anchor = support.front();
  for (size_t i = 1; i < support.size(); ++i) {
    const uint32_t desired = anchor + static_cast<uint32_t>(i);
    for (uint32_t pos = support[i]; pos > desired; --pos) v.push_back(gate_swap(pos - 1, pos));
  }
  for (size_t i = 0; i + 1 < support.size(); ++i) {
    const uint32_t c = anchor + static_cast<uint32_t>(i);
    v.push_back(gate_cnot(c, c + 1));
  }
  return v;
}

inline IndividualSolution naive_individual(const GscInstance& inst) {
  if (!inst.default_sets)
    throw std::invalid_argument("naive_individual: needs the default native/mapping sets");
  IndividualSolution sol;
  for (const auto& t : inst.targets) {
    GateWord v = naive_basis_word(t);
    const auto mapped = conjugate_word(t, v);
    const int ni = inst.native_index(mapped);
    if (ni < 0) throw std::logic_error("naive_individual: ladder did not reach a native");
    sol.gate_count += 2 * static_cast<int>(v.size());
    sol.basis_words.push_back(std::move(v));
    sol.native_index.push_back(ni);
  }
  return sol;
}

namespace detail {

// V^dag realized over M: reversed order, H/CNOT/SWAP self-inverse, S^dag as
// three S.
inline GateWord invert_over_m(const GateWord& v) {
  GateWord r;
  for (auto it = v.rbegin(); it != v.rend(); ++it) {
    if (it->kind == GateKind::S) {
      r.push_back(*it);
      r.push_back(*it);
      r.push_back(*it);
    } else {
      r.push_back(*it);
    }
  }
  return r;
}

inline GateWord circuit_to_word(const Circuit& c) {
  GateWord w;
  for (const auto& g : c) {
    if (g.kind == GateKind::S && g.dag) {
      // stay inside M
      w.push_back(gate_s(g.a));
      w.push_back(gate_s(g.a));
      w.push_back(gate_s(g.a));
    } else {
      w.push_back(MappingGate{g.kind, g.a, g.b});
    }
  }
  return w;
}

}  // namespace detail

/// Fig. 2 conversion: body = V_1 || V_1^dag V_2 || ... || V_{T-1}^dag V_T,
/// each junction peephole-reduced so identical neighbouring basis words
/// telescope away. Removal marks land at segment ends; they are recorded
/// from an actual verifier run.
inline SimultaneousSolution individual_to_simultaneous(const GscInstance& inst,
                                                       const IndividualSolution& ind) {
  GateWord body;
  for (size_t l = 0; l < ind.basis_words.size(); ++l) {
    GateWord segment;
    if (l == 0) {
      segment = ind.basis_words[0];
    } else {
      segment = detail::invert_over_m(ind.basis_words[l - 1]);
      segment.insert(segment.end(), ind.basis_words[l].begin(), ind.basis_words[l].end());
    }
    const GateWord reduced = detail::circuit_to_word(peephole(lift(segment)));
    body.insert(body.end(), reduced.begin(), reduced.end());
  }
  const auto v = verify_gscd(inst, body, static_cast<int>(body.size()));
  if (!v.yes) throw std::logic_error("individual_to_simultaneous: conversion failed to verify");
  return to_solution(std::move(body), v);
}

inline SimultaneousSolution naive_simultaneous(const GscInstance& inst) {
  return individual_to_simultaneous(inst, naive_individual(inst));
}

}  // namespace pauliforge
