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

#include "pauliforge/dense.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace pauliforge;

TEST_CASE("cyclotomic ring basics") {
  const auto one = Cyclotomic::one();
  const auto i = Cyclotomic::imag_unit();
  CHECK(i * i == Cyclotomic::integer(-1));
  CHECK(i * i * i * i == one);

  const auto r = Cyclotomic::inv_sqrt2();
  CHECK(r * r + r * r == one);

  // w = (1+i)/sqrt(2)
  const Cyclotomic w{{0, 1, 0, 0}, 0};
  CHECK(w * w == i);
  CHECK(w * w.conj() == one);

  const auto c = w + i;
  CHECK(c.to_complex().real() == Catch::Approx(0.7071067811865475));
  CHECK(c.to_complex().imag() == Catch::Approx(1.7071067811865475));
}

TEST_CASE("dense matrices of the basic objects") {
  const auto z = dense_matrix(PauliString::parse("Z"));
  CHECK(z.at(0, 0) == Cyclotomic::one());
  CHECK(z.at(1, 1) == Cyclotomic::integer(-1));
  CHECK(z.at(0, 1).is_zero());

  const auto h = dense_matrix(gate_h(0), 1);
  CHECK(h.at(0, 0) == Cyclotomic::inv_sqrt2());
  CHECK(h.at(1, 0) == Cyclotomic::inv_sqrt2());
  CHECK(h * h == DenseMatrix::identity(2));

  // CNOT(0,1) permutes |10> and |11>
  const auto cx = dense_matrix(gate_cnot(0, 1), 2);
  CHECK(cx.at(0, 0) == Cyclotomic::one());
  CHECK(cx.at(1, 1) == Cyclotomic::one());
  CHECK(cx.at(2, 3) == Cyclotomic::one());
  CHECK(cx.at(3, 2) == Cyclotomic::one());
  CHECK(cx.at(2, 2).is_zero());

  const auto s = dense_matrix(gate_s(0), 1);
  CHECK(s * s * s * s == DenseMatrix::identity(2));
}

TEST_CASE("phase shows up in the matrix") {
  const auto p = PauliString::parse("X").with_phase(3);  // -iX
  const auto m = dense_matrix(p);
  CHECK(m.at(0, 1) == Cyclotomic{{0, 0, -1, 0}, 0});
}

TEST_CASE("qubit 0 is the most significant factor") {
  // ZI = Z (x) I = diag(1, 1, -1, -1)
  const auto m = dense_matrix(PauliString::parse("ZI"));
  CHECK(m.at(0, 0) == Cyclotomic::one());
  CHECK(m.at(1, 1) == Cyclotomic::one());
  CHECK(m.at(2, 2) == Cyclotomic::integer(-1));
  CHECK(m.at(3, 3) == Cyclotomic::integer(-1));
}

TEST_CASE("dense limit is enforced") {
  CHECK_THROWS_AS(dense_matrix(PauliString(7)), std::invalid_argument);
  CHECK_NOTHROW(dense_matrix(PauliString(7), 8));
}
