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
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "pauliforge/pauli.hpp"

namespace pauliforge {

enum class GateKind : uint8_t { H, S, Cnot, Swap };

/// One element of the mapping gate set M = {H, S, CNOT, SWAP}. Two-qubit
/// gates act on nearest-neighbour pairs (a, a+1) only; the CNOT control is
/// the lower index. For Q qubits this gives exactly 4Q-2 distinct gates.
struct MappingGate {
  GateKind kind;
  uint32_t a = 0;  // qubit for H/S, lower qubit of the pair otherwise
  uint32_t b = 0;  // a+1 for CNOT/SWAP, unused for H/S

  bool operator==(const MappingGate&) const = default;
};

inline MappingGate gate_h(uint32_t q) { return {GateKind::H, q, 0}; }
inline MappingGate gate_s(uint32_t q) { return {GateKind::S, q, 0}; }
inline MappingGate gate_cnot(uint32_t c, uint32_t t) {
  if (t != c + 1) throw std::invalid_argument("gate_cnot: target must be control+1");
  return {GateKind::Cnot, c, t};
}
inline MappingGate gate_swap(uint32_t a, uint32_t b) {
  if (b != a + 1) throw std::invalid_argument("gate_swap: qubits must be adjacent");
  return {GateKind::Swap, a, b};
}

using GateWord = std::vector<MappingGate>;

/// The 4Q-2 gates in the canonical order H(0..Q-1), S(0..Q-1),
/// CNOT(0,1)..CNOT(Q-2,Q-1), SWAP(0,1)..SWAP(Q-2,Q-1). This order defines
/// the RL action indices and the simulated-annealing slot codes.
inline std::vector<MappingGate> action_space(uint32_t q) {
  if (q < 2) throw std::invalid_argument("action_space: need at least 2 qubits");
  std::vector<MappingGate> gates;
  gates.reserve(4 * q - 2);
  for (uint32_t i = 0; i < q; ++i) gates.push_back(gate_h(i));
  for (uint32_t i = 0; i < q; ++i) gates.push_back(gate_s(i));
  for (uint32_t i = 0; i + 1 < q; ++i) gates.push_back(gate_cnot(i, i + 1));
  for (uint32_t i = 0; i + 1 < q; ++i) gates.push_back(gate_swap(i, i + 1));
  return gates;
}

inline std::string format_gate(const MappingGate& g) {
  switch (g.kind) {
    case GateKind::H: return "H " + std::to_string(g.a);
    case GateKind::S: return "S " + std::to_string(g.a);
    case GateKind::Cnot: return "CNOT " + std::to_string(g.a) + " " + std::to_string(g.b);
    case GateKind::Swap: return "SWAP " + std::to_string(g.a) + " " + std::to_string(g.b);
  }
  throw std::logic_error("format_gate: bad kind");
}

inline MappingGate parse_gate(const std::string& line) {
  std::istringstream in(line);
  std::string name;
  in >> name;
  uint32_t a = 0, b = 0;
  if (name == "H" || name == "S") {
    if (!(in >> a)) throw std::invalid_argument("parse_gate: missing qubit in '" + line + "'");
    return name == "H" ? gate_h(a) : gate_s(a);
  }
  if (name == "CNOT" || name == "SWAP") {
    if (!(in >> a >> b)) throw std::invalid_argument("parse_gate: missing qubits in '" + line + "'");
    return name == "CNOT" ? gate_cnot(a, b) : gate_swap(a, b);
  }
  throw std::invalid_argument("parse_gate: unknown gate '" + line + "'");
}

namespace detail {

// g^dag P g for the single-qubit rules, in place on the masks.
// H: X <-> Z, Y -> -Y.  S: X -> -Y, Y -> X, Z fixed.
inline void conj_h(uint64_t& x, uint64_t& z, uint32_t& phase, uint32_t q) {
  const uint64_t bit = 1ull << q;
  const uint64_t xb = x & bit, zb = z & bit;
  if (xb && zb) phase += 2;
  x = (x & ~bit) | (zb ? bit : 0);
  z = (z & ~bit) | (xb ? bit : 0);
}

inline void conj_s(uint64_t& x, uint64_t& z, uint32_t& phase, uint32_t q, bool dag) {
  const uint64_t bit = 1ull << q;
  if (!(x & bit)) return;
  if (!dag) {
    if (!(z & bit)) phase += 2;  // X -> -Y
  } else {
    if (z & bit) phase += 2;  // Y -> -X under S^dag
  }
  z ^= bit;
}

// CNOT with control c and target t = c+1: X_c -> X_c X_t, Z_t -> Z_c Z_t,
// sign flip iff x_c z_t (x_t xor z_c xor 1).
inline void conj_cnot(uint64_t& x, uint64_t& z, uint32_t& phase, uint32_t c, uint32_t t) {
  const uint64_t xc = (x >> c) & 1, zc = (z >> c) & 1;
  const uint64_t xt = (x >> t) & 1, zt = (z >> t) & 1;
  if (xc && zt && ((xt ^ zc ^ 1) & 1)) phase += 2;
  x ^= xc << t;
  z ^= zt << c;
}

inline void conj_swap(uint64_t& x, uint64_t& z, uint32_t a, uint32_t b) {
  const uint64_t xa = (x >> a) & 1, xb = (x >> b) & 1;
  const uint64_t za = (z >> a) & 1, zb = (z >> b) & 1;
  x ^= (xa ^ xb) << a | (xa ^ xb) << b;
  z ^= (za ^ zb) << a | (za ^ zb) << b;
}

}  // namespace detail

/// Exact Clifford conjugation g^dag p g with the sign tracked. `dag` selects
/// the inverse gate; it only changes the action of S.
inline PauliString conjugate(const PauliString& p, const MappingGate& g, bool dag = false) {
  const uint32_t hi = (g.kind == GateKind::Cnot || g.kind == GateKind::Swap) ? g.b : g.a;
  if (hi >= p.qubits()) throw std::out_of_range("conjugate: gate qubit out of range");
  uint64_t x = p.x_mask(), z = p.z_mask();
  uint32_t phase = p.phase_exp();
  switch (g.kind) {
    case GateKind::H: detail::conj_h(x, z, phase, g.a); break;
    case GateKind::S: detail::conj_s(x, z, phase, g.a, dag); break;
    case GateKind::Cnot: detail::conj_cnot(x, z, phase, g.a, g.b); break;
    case GateKind::Swap: detail::conj_swap(x, z, g.a, g.b); break;
  }
  return PauliString::from_masks(p.qubits(), x, z, static_cast<uint8_t>(phase & 3));
}

/// Left fold of conjugate over the word in application order (first gate
/// innermost): result = (m_1...m_k)^dag p (m_1...m_k).
inline PauliString conjugate_word(const PauliString& p, const GateWord& w) {
  PauliString r = p;
  for (const auto& g : w) r = conjugate(r, g);
  return r;
}

/// A gate in a simplified circuit. Cancellation runs over the alphabet
/// {H, S, S^dag, CNOT, SWAP}: inverting a body that contains S yields S^dag,
/// which M itself does not provide. `dag` is only meaningful for S.
struct CircuitGate {
  GateKind kind;
  uint32_t a = 0;
  uint32_t b = 0;
  bool dag = false;

  bool operator==(const CircuitGate&) const = default;
};

using Circuit = std::vector<CircuitGate>;

inline CircuitGate lift(const MappingGate& g) { return {g.kind, g.a, g.b, false}; }

inline Circuit lift(const GateWord& w) {
  Circuit c;
  c.reserve(w.size());
  for (const auto& g : w) c.push_back(lift(g));
  return c;
}

inline CircuitGate inverse(const CircuitGate& g) {
  CircuitGate r = g;
  if (g.kind == GateKind::S) r.dag = !g.dag;
  return r;
}

/// Reversed word with each gate inverted; S maps to S^dag and counts as a
/// single gate, matching how solution lengths are reported.
inline Circuit inverse_circuit(const Circuit& c) {
  Circuit r;
  r.reserve(c.size());
  for (auto it = c.rbegin(); it != c.rend(); ++it) r.push_back(inverse(*it));
  return r;
}

inline PauliString conjugate(const PauliString& p, const CircuitGate& g) {
  return conjugate(p, MappingGate{g.kind, g.a, g.b}, g.dag);
}

inline PauliString conjugate_circuit(const PauliString& p, const Circuit& c) {
  PauliString r = p;
  for (const auto& g : c) r = conjugate(r, g);
  return r;
}

inline std::string format_gate(const CircuitGate& g) {
  if (g.kind == GateKind::S && g.dag) return "SDG " + std::to_string(g.a);
  return format_gate(MappingGate{g.kind, g.a, g.b});
}

}  // namespace pauliforge
