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

#include <array>
#include <complex>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "pauliforge/gates.hpp"
#include "pauliforge/pauli.hpp"

namespace pauliforge {

/// Exact amplitude (c0 + c1 w + c2 w^2 + c3 w^3) / sqrt(2)^k with
/// w = exp(i pi/4). Every matrix entry produced by {H, S, S^dag, CNOT, SWAP}
/// and Pauli strings lives in this ring, so unitary comparisons are exact.
/// Intended for short verification circuits: coefficients grow with the
/// number of irreducible H factors and overflow int64 past a few dozen.
struct Cyclotomic {
  std::array<int64_t, 4> c{0, 0, 0, 0};
  int k = 0;

  static Cyclotomic zero() { return {}; }
  static Cyclotomic one() { return {{1, 0, 0, 0}, 0}; }
  static Cyclotomic integer(int64_t n) { return {{n, 0, 0, 0}, 0}; }
  static Cyclotomic imag_unit() { return {{0, 0, 1, 0}, 0}; }
  static Cyclotomic inv_sqrt2() { return {{1, 0, 0, 0}, 1}; }

  /// i^e for e in {0,1,2,3}.
  static Cyclotomic i_power(unsigned e) {
    Cyclotomic r;
    switch (e & 3) {
      case 0: r.c[0] = 1; break;
      case 1: r.c[2] = 1; break;
      case 2: r.c[0] = -1; break;
      case 3: r.c[2] = -1; break;
    }
    return r;
  }

  bool is_zero() const { return c[0] == 0 && c[1] == 0 && c[2] == 0 && c[3] == 0; }

  // Multiplies the numerator by sqrt(2) = w - w^3 (raises k by one).
  static std::array<int64_t, 4> times_sqrt2(const std::array<int64_t, 4>& a) {
    return {a[1] - a[3], a[0] + a[2], a[1] + a[3], a[2] - a[0]};
  }

  // Shared sqrt(2) factors are divided out to keep coefficients small.
  void normalize() {
    if (is_zero()) { k = 0; return; }
    while (k > 0) {
      const auto t = times_sqrt2(c);
      if ((t[0] | t[1] | t[2] | t[3]) & 1) break;
      for (int i = 0; i < 4; ++i) c[i] = t[i] / 2;
      --k;
    }
  }

  friend Cyclotomic operator+(Cyclotomic a, Cyclotomic b) {
    while (a.k < b.k) { a.c = times_sqrt2(a.c); ++a.k; }
    while (b.k < a.k) { b.c = times_sqrt2(b.c); ++b.k; }
    Cyclotomic r;
    r.k = a.k;
    for (int i = 0; i < 4; ++i) r.c[i] = a.c[i] + b.c[i];
    r.normalize();
    return r;
  }

  friend Cyclotomic operator*(const Cyclotomic& a, const Cyclotomic& b) {
    Cyclotomic r;
    r.k = a.k + b.k;
    for (int i = 0; i < 4; ++i) {
      if (a.c[i] == 0) continue;
      for (int j = 0; j < 4; ++j) {
        if (b.c[j] == 0) continue;
        const int idx = i + j;
        // w^4 = -1
        if (idx < 4) r.c[idx] += a.c[i] * b.c[j];
        else r.c[idx - 4] -= a.c[i] * b.c[j];
      }
    }
    r.normalize();
    return r;
  }

  Cyclotomic conj() const {
    // conj(w) = -w^3
    Cyclotomic r;
    r.k = k;
    r.c = {c[0], -c[3], -c[2], -c[1]};
    return r;
  }

  bool operator==(const Cyclotomic& o) const {
    auto a = c, b = o.c;
    int ka = k, kb = o.k;
    while (ka < kb) { a = times_sqrt2(a); ++ka; }
    while (kb < ka) { b = times_sqrt2(b); ++kb; }
    return a == b;
  }

  std::complex<double> to_complex() const {
    constexpr double r = 0.7071067811865475244;  // 1/sqrt(2)
    const double re = c[0] + (c[1] - c[3]) * r;
    const double im = c[2] + (c[1] + c[3]) * r;
    double scale = 1.0;
    for (int i = 0; i < k; ++i) scale *= r;
    return {re * scale, im * scale};
  }
};

/// Small dense complex matrix over the exact ring; dimension 2^q.
class DenseMatrix {
 public:
  DenseMatrix() = default;
  explicit DenseMatrix(int dim) : dim_(dim), a_(static_cast<size_t>(dim) * dim) {}

  static DenseMatrix identity(int dim) {
    DenseMatrix m(dim);
    for (int i = 0; i < dim; ++i) m.at(i, i) = Cyclotomic::one();
    return m;
  }

  int dim() const { return dim_; }
  Cyclotomic& at(int r, int c) { return a_[static_cast<size_t>(r) * dim_ + c]; }
  const Cyclotomic& at(int r, int c) const { return a_[static_cast<size_t>(r) * dim_ + c]; }

  friend DenseMatrix operator*(const DenseMatrix& a, const DenseMatrix& b) {
    if (a.dim_ != b.dim_) throw std::invalid_argument("DenseMatrix: dimension mismatch");
    DenseMatrix r(a.dim_);
    for (int i = 0; i < a.dim_; ++i)
      for (int k = 0; k < a.dim_; ++k) {
        const Cyclotomic& aik = a.at(i, k);
        if (aik.is_zero()) continue;
        for (int j = 0; j < a.dim_; ++j) {
          if (b.at(k, j).is_zero()) continue;
          r.at(i, j) = r.at(i, j) + aik * b.at(k, j);
        }
      }
    return r;
  }

  DenseMatrix adjoint() const {
    DenseMatrix r(dim_);
    for (int i = 0; i < dim_; ++i)
      for (int j = 0; j < dim_; ++j) r.at(i, j) = at(j, i).conj();
    return r;
  }

  friend DenseMatrix kron(const DenseMatrix& a, const DenseMatrix& b) {
    DenseMatrix r(a.dim_ * b.dim_);
    for (int i = 0; i < a.dim_; ++i)
      for (int j = 0; j < a.dim_; ++j) {
        if (a.at(i, j).is_zero()) continue;
        for (int k = 0; k < b.dim_; ++k)
          for (int l = 0; l < b.dim_; ++l)
            r.at(i * b.dim_ + k, j * b.dim_ + l) = a.at(i, j) * b.at(k, l);
      }
    return r;
  }

  bool operator==(const DenseMatrix& o) const {
    if (dim_ != o.dim_) return false;
    for (size_t i = 0; i < a_.size(); ++i)
      if (!(a_[i] == o.a_[i])) return false;
    return true;
  }

 private:
  int dim_ = 0;
  std::vector<Cyclotomic> a_;
};

namespace detail {

inline DenseMatrix pauli_letter_matrix(char l) {
  DenseMatrix m(2);
  switch (l) {
    case 'I': m.at(0, 0) = m.at(1, 1) = Cyclotomic::one(); break;
    case 'X': m.at(0, 1) = m.at(1, 0) = Cyclotomic::one(); break;
    case 'Y':
      m.at(0, 1) = Cyclotomic{{0, 0, -1, 0}, 0};
      m.at(1, 0) = Cyclotomic::imag_unit();
      break;
    case 'Z':
      m.at(0, 0) = Cyclotomic::one();
      m.at(1, 1) = Cyclotomic::integer(-1);
      break;
    default: throw std::logic_error("pauli_letter_matrix: bad letter");
  }
  return m;
}

inline DenseMatrix gate_matrix_local(const CircuitGate& g) {
  switch (g.kind) {
    case GateKind::H: {
      DenseMatrix m(2);
      m.at(0, 0) = m.at(0, 1) = m.at(1, 0) = Cyclotomic::inv_sqrt2();
      m.at(1, 1) = Cyclotomic{{-1, 0, 0, 0}, 1};
      return m;
    }
    case GateKind::S: {
      DenseMatrix m(2);
      m.at(0, 0) = Cyclotomic::one();
      m.at(1, 1) = g.dag ? Cyclotomic{{0, 0, -1, 0}, 0} : Cyclotomic::imag_unit();
      return m;
    }
    case GateKind::Cnot: {
      // basis |c t> with the control the more significant bit
      DenseMatrix m(4);
      m.at(0, 0) = m.at(1, 1) = Cyclotomic::one();
      m.at(2, 3) = m.at(3, 2) = Cyclotomic::one();
      return m;
    }
    case GateKind::Swap: {
      DenseMatrix m(4);
      m.at(0, 0) = m.at(3, 3) = Cyclotomic::one();
      m.at(1, 2) = m.at(2, 1) = Cyclotomic::one();
      return m;
    }
  }
  throw std::logic_error("gate_matrix_local: bad kind");
}

inline void check_dense_limit(uint32_t q, uint32_t limit) {
  if (q > limit)
    throw std::invalid_argument("dense_matrix: qubit count " + std::to_string(q) +
                                " above limit " + std::to_string(limit));
}

}  // namespace detail

inline constexpr uint32_t kDenseQubitLimit = 6;

/// Exact 2^q x 2^q matrix of a Pauli string, qubit 0 as the most
/// significant tensor factor, global phase included.
inline DenseMatrix dense_matrix(const PauliString& p, uint32_t limit = kDenseQubitLimit) {
  detail::check_dense_limit(p.qubits(), limit);
  DenseMatrix m = detail::pauli_letter_matrix(p.letter(0));
  for (uint32_t i = 1; i < p.qubits(); ++i) m = kron(m, detail::pauli_letter_matrix(p.letter(i)));
  const Cyclotomic ph = Cyclotomic::i_power(p.phase_exp());
  for (int r = 0; r < m.dim(); ++r)
    for (int c = 0; c < m.dim(); ++c) m.at(r, c) = m.at(r, c) * ph;
  return m;
}

inline DenseMatrix dense_matrix(const CircuitGate& g, uint32_t q,
                                uint32_t limit = kDenseQubitLimit) {
  detail::check_dense_limit(q, limit);
  const uint32_t span = (g.kind == GateKind::Cnot || g.kind == GateKind::Swap) ? 2 : 1;
  if (g.a + span > q) throw std::out_of_range("dense_matrix: gate qubit out of range");
  DenseMatrix m = DenseMatrix::identity(1 << g.a);
  m = kron(m, detail::gate_matrix_local(g));
  const uint32_t rest = q - g.a - span;
  if (rest > 0) m = kron(m, DenseMatrix::identity(1 << rest));
  return m;
}

inline DenseMatrix dense_matrix(const MappingGate& g, uint32_t q,
                                uint32_t limit = kDenseQubitLimit) {
  return dense_matrix(lift(g), q, limit);
}

/// Product of the gate matrices in word order. conjugate_word(p, w) equals
/// dense_matrix(w)^dag dense_matrix(p) dense_matrix(w): the first gate of
/// the word is the innermost factor of the conjugation.
inline DenseMatrix dense_matrix(const Circuit& w, uint32_t q,
                                uint32_t limit = kDenseQubitLimit) {
  detail::check_dense_limit(q, limit);
  DenseMatrix m = DenseMatrix::identity(1 << q);
  for (const auto& g : w) m = m * dense_matrix(g, q, limit);
  return m;
}

inline DenseMatrix dense_matrix(const GateWord& w, uint32_t q,
                                uint32_t limit = kDenseQubitLimit) {
  return dense_matrix(lift(w), q, limit);
}

}  // namespace pauliforge
