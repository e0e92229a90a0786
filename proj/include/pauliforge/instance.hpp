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

#include <bit>
#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "pauliforge/gates.hpp"
#include "pauliforge/pauli.hpp"
#include "pauliforge/rng.hpp"

namespace pauliforge {

/// Weight-1 Z strings plus adjacent weight-2 ZZ strings: 2Q-1 natives.
inline std::vector<PauliString> default_natives(uint32_t q) {
  std::vector<PauliString> n;
  for (uint32_t i = 0; i < q; ++i) n.push_back(PauliString::from_masks(q, 0, 1ull << i));
  for (uint32_t i = 0; i + 1 < q; ++i) n.push_back(PauliString::from_masks(q, 0, 3ull << i));
  return n;
}

/// A gate-set-conversion problem: target set T, native set N, mapping set M.
/// Membership tests against N compare modulo phase: a target conjugated to
/// the negative of a native element counts as resolved, since the sign folds
/// into the rotation angle of the native gate.
struct GscInstance {
  uint32_t q = 0;
  std::vector<PauliString> targets;
  std::vector<PauliString> natives;
  std::vector<MappingGate> mapping_gates;
  uint64_t seed = 0;
  bool default_sets = true;  // natives/mapping gates are the standard ones

  /// Index into natives of a string equal modulo phase, or -1.
  int native_index(const PauliString& p) const {
    if (default_sets) {
      if (p.x_mask() != 0) return -1;
      const uint64_t z = p.z_mask();
      const int w = std::popcount(z);
      if (w == 1) return std::countr_zero(z);
      if (w == 2 && (z & (z >> 1))) return static_cast<int>(q) + std::countr_zero(z);
      return -1;
    }
    for (size_t i = 0; i < natives.size(); ++i)
      if (natives[i].equals_up_to_phase(p)) return static_cast<int>(i);
    return -1;
  }

  bool is_native(const PauliString& p) const { return native_index(p) >= 0; }

  GscInstance with_target_order(const std::vector<int>& order) const {
    GscInstance r = *this;
    r.targets.clear();
    for (int i : order) r.targets.push_back(targets[static_cast<size_t>(i)]);
    return r;
  }
};

/// Deterministic random instance: t_size distinct non-identity strings that
/// avoid the native set, drawn uniformly; default natives and all 4Q-2
/// mapping gates attached.
inline GscInstance make_instance(uint32_t q, uint32_t t_size, uint64_t seed) {
  if (q < 2) throw std::invalid_argument("make_instance: q must be >= 2");
  if (q > 32) throw std::invalid_argument("make_instance: sampler packs 2q bits, q <= 32");
  GscInstance inst;
  inst.q = q;
  inst.seed = seed;
  inst.natives = default_natives(q);
  inst.mapping_gates = action_space(q);

  const double log2_total = 2.0 * q;
  const uint64_t native_count = 2ull * q - 1;
  if (log2_total <= 40) {
    const uint64_t total = 1ull << (2 * q);
    if (t_size > total - 1 - native_count)
      throw std::invalid_argument("make_instance: t_size too large for qubit count");
  }

  Rng rng(hash_combine(seed, hash_combine(q, t_size)));
  auto string_of = [q](uint64_t code) {
    const uint64_t mask = (1ull << q) - 1;
    return PauliString::from_masks(q, code & mask, code >> q);
  };

  if (log2_total <= 20) {
    // small spaces: partial Fisher-Yates over the explicit pool
    std::vector<uint64_t> pool;
    GscInstance probe = inst;
    for (uint64_t code = 1; code < (1ull << (2 * q)); ++code)
      if (!probe.is_native(string_of(code))) pool.push_back(code);
    for (uint32_t i = 0; i < t_size; ++i) {
      const uint64_t j = i + rng.uniform_below(pool.size() - i);
      std::swap(pool[i], pool[j]);
      inst.targets.push_back(string_of(pool[i]));
    }
  } else {
    const uint64_t code_mask = q >= 32 ? ~0ull : (1ull << (2 * q)) - 1;
    std::vector<uint64_t> seen;
    while (inst.targets.size() < t_size) {
      const uint64_t code = rng.next_u64() & code_mask;
      if (code == 0) continue;
      const auto p = string_of(code);
      if (inst.is_native(p)) continue;
      bool dup = false;
      for (uint64_t s : seen) dup |= (s == code);
      if (dup) continue;
      seen.push_back(code);
      inst.targets.push_back(p);
    }
  }
  return inst;
}

/// Instance file: line 1 = Q, line 2 = |T|, then |T| Pauli strings, one per
/// line. Natives and mapping gates are the defaults unless the JSON sidecar
/// at <path>.json overrides them ("natives", "mapping_gates").
inline void write_instance(const GscInstance& inst, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("write_instance: cannot open " + path);
  out << inst.q << "\n" << inst.targets.size() << "\n";
  for (const auto& t : inst.targets) out << t.str() << "\n";
  if (!inst.default_sets) {
    nlohmann::json side;
    for (const auto& n : inst.natives) side["natives"].push_back(n.str());
    for (const auto& g : inst.mapping_gates) side["mapping_gates"].push_back(format_gate(g));
    std::ofstream js(path + ".json");
    js << side.dump(2) << "\n";
  }
}

inline GscInstance read_instance(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("read_instance: cannot open " + path);
  GscInstance inst;
  size_t t_count = 0;
  if (!(in >> inst.q >> t_count)) throw std::runtime_error("read_instance: bad header in " + path);
  std::string line;
  while (inst.targets.size() < t_count && in >> line) {
    auto p = PauliString::parse(line);
    if (p.qubits() != inst.q) throw std::runtime_error("read_instance: string length != Q");
    inst.targets.push_back(p);
  }
  if (inst.targets.size() != t_count) throw std::runtime_error("read_instance: truncated file");
  inst.natives = default_natives(inst.q);
  inst.mapping_gates = action_space(inst.q);

  std::ifstream js(path + ".json");
  if (js) {
    nlohmann::json side = nlohmann::json::parse(js);
    if (side.contains("natives")) {
      inst.natives.clear();
      for (const auto& s : side["natives"]) inst.natives.push_back(PauliString::parse(s));
      inst.default_sets = false;
    }
    if (side.contains("mapping_gates")) {
      inst.mapping_gates.clear();
      for (const auto& s : side["mapping_gates"]) inst.mapping_gates.push_back(parse_gate(s));
      inst.default_sets = false;
    }
  }
  return inst;
}

}  // namespace pauliforge
