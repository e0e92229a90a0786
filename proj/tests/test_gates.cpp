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

#include "pauliforge/gates.hpp"

#include <algorithm>
#include <catch2/catch_amalgamated.hpp>

#include "pauliforge/dense.hpp"
#include "pauliforge/rng.hpp"

using namespace pauliforge;

namespace {

std::vector<PauliString> all_strings(uint32_t q) {
  std::vector<PauliString> out;
  for (uint64_t code = 0; code < (1ull << (2 * q)); ++code) {
    const uint64_t x = code & ((1ull << q) - 1);
    const uint64_t z = code >> q;
    out.push_back(PauliString::from_masks(q, x, z));
  }
  return out;
}

std::vector<MappingGate> gates_for(uint32_t q) {
  if (q >= 2) return action_space(q);
  return {gate_h(0), gate_s(0)};
}

}  // namespace

TEST_CASE("action space layout") {
  auto a4 = action_space(4);
  REQUIRE(a4.size() == 14);
  CHECK(a4[0] == gate_h(0));
  CHECK(a4[3] == gate_h(3));
  CHECK(a4[4] == gate_s(0));
  CHECK(a4[8] == gate_cnot(0, 1));
  CHECK(a4[10] == gate_cnot(2, 3));
  CHECK(a4[11] == gate_swap(0, 1));
  CHECK(a4[13] == gate_swap(2, 3));

  CHECK(action_space(2).size() == 6);
  CHECK_THROWS_AS(action_space(1), std::invalid_argument);
}

TEST_CASE("gate text form round trip") {
  for (uint32_t q = 2; q <= 5; ++q)
    for (const auto& g : action_space(q)) CHECK(parse_gate(format_gate(g)) == g);
  CHECK_THROWS_AS(parse_gate("T 0"), std::invalid_argument);
  CHECK_THROWS_AS(parse_gate("CNOT 1"), std::invalid_argument);
}

TEST_CASE("single gate conjugation rules") {
  auto x = PauliString::parse("X");
  auto y = PauliString::parse("Y");
  auto z = PauliString::parse("Z");

  CHECK(conjugate(x, gate_h(0)) == z);
  CHECK(conjugate(z, gate_h(0)) == x);
  CHECK(conjugate(y, gate_h(0)) == y.with_phase(2));

  CHECK(conjugate(y, gate_s(0)) == x);
  CHECK(conjugate(x, gate_s(0)) == y.with_phase(2));
  CHECK(conjugate(z, gate_s(0)) == z);

  CHECK(conjugate(PauliString::parse("ZZ"), gate_cnot(0, 1)) == PauliString::parse("IZ"));
  CHECK(conjugate(PauliString::parse("XI"), gate_cnot(0, 1)) == PauliString::parse("XX"));
  CHECK(conjugate(PauliString::parse("XY"), gate_swap(0, 1)) == PauliString::parse("YX"));

  CHECK_THROWS_AS(conjugate(x, gate_s(1)), std::out_of_range);
}

TEST_CASE("conjugation matches the dense-matrix oracle exactly") {
  for (uint32_t q = 1; q <= 3; ++q) {
    const auto strings = all_strings(q);
    for (const auto& g : gates_for(q)) {
      const DenseMatrix mg = dense_matrix(g, q);
      const DenseMatrix mg_dag = mg.adjoint();
      for (const auto& p : strings) {
        for (uint8_t ph = 0; ph < 4; ++ph) {
          const auto in = p.with_phase(ph);
          const DenseMatrix expected = mg_dag * dense_matrix(in) * mg;
          CHECK(expected == dense_matrix(conjugate(in, g)));
        }
      }
    }
  }
}

TEST_CASE("sdg conjugation matches its dense matrix") {
  const CircuitGate sdg{GateKind::S, 0, 0, true};
  for (const auto& p : all_strings(1)) {
    const DenseMatrix m = dense_matrix(sdg, 1);
    CHECK(m.adjoint() * dense_matrix(p) * m == dense_matrix(conjugate(p, sdg)));
  }
}

TEST_CASE("involution and order-four properties") {
  Rng rng(23);
  for (int i = 0; i < 200; ++i) {
    const uint32_t q = 2 + static_cast<uint32_t>(rng.uniform_below(5));
    std::string s;
    for (uint32_t j = 0; j < q; ++j) s.push_back("IXYZ"[rng.uniform_below(4)]);
    const auto p = PauliString::parse(s);
    const auto gates = action_space(q);
    const auto& g = gates[rng.uniform_below(gates.size())];

    const auto twice = conjugate(conjugate(p, g), g);
    if (g.kind == GateKind::S) {
      CHECK(twice.equals_up_to_phase(p));
      const auto four = conjugate(conjugate(twice, g), g);
      CHECK(four == p);
    } else {
      CHECK(twice == p);
    }

    if (g.kind == GateKind::Swap) {
      // swapping preserves the multiset of letters, hence the weight
      auto letters = p.str();
      auto swapped = conjugate(p, g).str();
      std::sort(letters.begin(), letters.end());
      std::sort(swapped.begin(), swapped.end());
      CHECK(letters == swapped);
    }
  }
}

TEST_CASE("conjugate_word composes in application order") {
  const auto y = PauliString::parse("Y");

  CHECK(conjugate_word(y, {}) == y);
  CHECK(conjugate_word(y, {gate_h(0), gate_h(0)}) == y);

  // S then H maps Y -> X -> Z
  const auto r = conjugate_word(y, {gate_s(0), gate_h(0)});
  CHECK(r.equals_up_to_phase(PauliString::parse("Z")));

  // against the oracle: word of several gates on 2 qubits
  const GateWord w = {gate_s(0), gate_h(0), gate_cnot(0, 1), gate_h(1), gate_swap(0, 1)};
  const auto p = PauliString::parse("YX");
  const DenseMatrix mw = dense_matrix(w, 2);
  CHECK(mw.adjoint() * dense_matrix(p) * mw == dense_matrix(conjugate_word(p, w)));
}

TEST_CASE("inverse circuit undoes a word") {
  Rng rng(31);
  for (int i = 0; i < 100; ++i) {
    const uint32_t q = 2 + static_cast<uint32_t>(rng.uniform_below(2));
    const auto gates = action_space(q);
    Circuit w;
    for (int j = 0; j < 8; ++j) w.push_back(lift(gates[rng.uniform_below(gates.size())]));
    const auto inv = inverse_circuit(w);
    std::string s;
    for (uint32_t j = 0; j < q; ++j) s.push_back("IXYZ"[rng.uniform_below(4)]);
    const auto p = PauliString::parse(s);
    Circuit both = w;
    both.insert(both.end(), inv.begin(), inv.end());
    CHECK(conjugate_circuit(p, both) == p);
  }
}
