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
#include <complex>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace pauliforge {

/// A Q-qubit Pauli operator in binary symplectic form plus a global phase
/// i^k. Qubit 0 is the leftmost character of the text form and the most
/// significant tensor factor of the dense matrix.
///
/// Letter encoding per qubit: I = (x=0,z=0), X = (1,0), Y = (1,1), Z = (0,1).
class PauliString {
 public:
  static constexpr uint32_t kMaxQubits = 64;

  explicit PauliString(uint32_t qubits) : q_(qubits) {
    if (qubits < 1 || qubits > kMaxQubits)
      throw std::invalid_argument("PauliString: qubit count must be in [1, 64]");
  }

  static PauliString from_masks(uint32_t qubits, uint64_t x, uint64_t z, uint8_t phase_exp = 0) {
    PauliString p(qubits);
    const uint64_t valid = qubits == 64 ? ~0ull : (1ull << qubits) - 1;
    if ((x & ~valid) || (z & ~valid))
      throw std::invalid_argument("PauliString: mask bits outside qubit range");
    p.x_ = x;
    p.z_ = z;
    p.phase_ = phase_exp & 3;
    return p;
  }

  /// Parses a string over {I,X,Y,Z}; the result carries phase +1.
  static PauliString parse(const std::string& text) {
    if (text.empty()) throw std::invalid_argument("PauliString: empty text");
    PauliString p(static_cast<uint32_t>(text.size()));
    for (size_t i = 0; i < text.size(); ++i) {
      switch (text[i]) {
        case 'I': break;
        case 'X': p.x_ |= 1ull << i; break;
        case 'Y': p.x_ |= 1ull << i; p.z_ |= 1ull << i; break;
        case 'Z': p.z_ |= 1ull << i; break;
        default:
          throw std::invalid_argument("PauliString: invalid character '" +
                                      std::string(1, text[i]) + "' at position " +
                                      std::to_string(i));
      }
    }
    return p;
  }

  /// Letters only; the phase is not part of the text form.
  std::string str() const {
    std::string s(q_, 'I');
    for (uint32_t i = 0; i < q_; ++i) s[i] = letter(i);
    return s;
  }

  char letter(uint32_t qubit) const {
    const bool x = (x_ >> qubit) & 1, z = (z_ >> qubit) & 1;
    return x ? (z ? 'Y' : 'X') : (z ? 'Z' : 'I');
  }

  uint32_t qubits() const { return q_; }
  uint64_t x_mask() const { return x_; }
  uint64_t z_mask() const { return z_; }
  /// Exponent k of the global phase i^k, in {0,1,2,3}.
  uint8_t phase_exp() const { return phase_; }

  std::complex<double> phase() const {
    static constexpr std::complex<double> table[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    return table[phase_];
  }

  bool is_identity() const { return x_ == 0 && z_ == 0 && phase_ == 0; }

  int weight() const { return std::popcount(x_ | z_); }

  bool equals_up_to_phase(const PauliString& o) const {
    return q_ == o.q_ && x_ == o.x_ && z_ == o.z_;
  }

  bool operator==(const PauliString& o) const {
    return q_ == o.q_ && x_ == o.x_ && z_ == o.z_ && phase_ == o.phase_;
  }

  PauliString with_phase(uint8_t phase_exp) const {
    return from_masks(q_, x_, z_, phase_exp);
  }

  void mul_phase(uint8_t phase_exp) { phase_ = (phase_ + phase_exp) & 3; }

  uint64_t hash_up_to_phase() const {
    uint64_t h = x_ * 0x9e3779b97f4a7c15ull;
    h ^= z_ + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    return h ^ q_;
  }

  friend PauliString multiply(const PauliString& a, const PauliString& b);

 private:
  uint32_t q_;
  uint64_t x_ = 0, z_ = 0;
  uint8_t phase_ = 0;
};

/// Exact product a*b with the phase tracked per qubit:
/// X*Y = iZ, Y*Z = iX, Z*X = iY and the reversed orders pick up -i.
inline PauliString multiply(const PauliString& a, const PauliString& b) {
  if (a.q_ != b.q_) throw std::invalid_argument("multiply: qubit count mismatch");
  PauliString r(a.q_);
  r.x_ = a.x_ ^ b.x_;
  r.z_ = a.z_ ^ b.z_;
  uint32_t phase = a.phase_ + b.phase_;
  uint64_t both = (a.x_ | a.z_) & (b.x_ | b.z_);
  while (both) {
    const uint32_t i = static_cast<uint32_t>(std::countr_zero(both));
    both &= both - 1;
    const int la = ((a.x_ >> i) & 1) | (((a.z_ >> i) & 1) << 1);  // 1=X, 2=Z, 3=Y
    const int lb = ((b.x_ >> i) & 1) | (((b.z_ >> i) & 1) << 1);
    if (la == lb) continue;
    // cyclic order X -> Y -> Z -> X gains +i, the reverse gains -i
    static constexpr int exp_table[4][4] = {
        {0, 0, 0, 0},
        {0, 0, 3, 1},   // X*Z = -iY, X*Y = iZ
        {0, 1, 0, 3},   // Z*X = iY,  Z*Y = -iX
        {0, 3, 1, 0}};  // Y*X = -iZ, Y*Z = iX
    phase += exp_table[la][lb];
  }
  r.phase_ = phase & 3;
  return r;
}

inline int weight(const PauliString& p) { return p.weight(); }

/// o(a, b) = Q - w(a*b). Symmetric, phase-invariant, equals Q iff a = b up
/// to phase.
inline int overlap(const PauliString& a, const PauliString& b) {
  if (a.qubits() != b.qubits()) throw std::invalid_argument("overlap: qubit count mismatch");
  const uint64_t x = a.x_mask() ^ b.x_mask();
  const uint64_t z = a.z_mask() ^ b.z_mask();
  return static_cast<int>(a.qubits()) - std::popcount(x | z);
}

/// Sum over state elements of the largest overlap with any native element.
/// The empty state contributes 0.
inline int similarity(std::span<const PauliString> state, std::span<const PauliString> natives) {
  int total = 0;
  for (const auto& p : state) {
    int best = 0;
    for (const auto& n : natives) best = std::max(best, overlap(p, n));
    total += best;
  }
  return total;
}

inline int similarity(const std::vector<PauliString>& state,
                      const std::vector<PauliString>& natives) {
  return similarity(std::span<const PauliString>(state), std::span<const PauliString>(natives));
}

}  // namespace pauliforge
