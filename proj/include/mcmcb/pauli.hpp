// Copyright 2026 The mcmcb Authors
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

#ifndef MCMCB_PAULI_HPP
#define MCMCB_PAULI_HPP

#include <compare>
#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>

#include "mcmcb/bits.hpp"

namespace mcmcb {

inline constexpr std::size_t kMaxQubits = 16;

/// Phase-free Pauli operator in symplectic form. Bit q of the x and z words
/// belongs to qubit q. System qubits come first, ancillas after them.
class PauliOp {
 public:
  PauliOp() = default;
  explicit PauliOp(std::size_t n_qubits);
  PauliOp(std::size_t n_qubits, uint32_t x, uint32_t z);

  /// Parses "IXYZ"; character q is qubit q.
  static PauliOp from_string(std::string_view s);
  /// Inverse of index(): index = x | (z << n).
  static PauliOp from_index(std::size_t n_qubits, uint64_t index);

  std::size_t n_qubits() const { return n_; }
  uint32_t x() const { return x_; }
  uint32_t z() const { return z_; }
  uint64_t index() const { return uint64_t{x_} | (uint64_t{z_} << n_); }
  bool is_identity() const { return (x_ | z_) == 0; }
  /// Number of qubits with a non-identity factor.
  std::size_t weight() const;
  char at(std::size_t q) const;
  /// Single-qubit factor on qubit q.
  PauliOp factor(std::size_t q) const;
  std::string to_string() const;

  /// Phase-free product.
  PauliOp operator*(const PauliOp& other) const;

  friend bool operator==(const PauliOp&, const PauliOp&) = default;
  friend auto operator<=>(const PauliOp& a, const PauliOp& b) {
    if (auto c = a.n_ <=> b.n_; c != 0) return c;
    return a.index() <=> b.index();
  }

 private:
  std::size_t n_ = 0;
  uint32_t x_ = 0;
  uint32_t z_ = 0;
};

/// Hermitian Pauli with a sign of +1 or -1.
struct SignedPauli {
  PauliOp op;
  int sign = 1;

  static SignedPauli parse(std::string_view s);  // "+XZ", "-Y", "ZZ"
  std::string to_string() const;
  friend bool operator==(const SignedPauli&, const SignedPauli&) = default;
};

/// <p,q> = x_p.z_q + z_p.x_q mod 2. Throws std::invalid_argument on size mismatch.
int symplectic_inner(const PauliOp& p, const PauliOp& q);

/// Weight pattern: bit q set iff the qubit-q factor is not the identity.
class WeightPattern {
 public:
  WeightPattern() = default;
  WeightPattern(std::size_t n_qubits, uint32_t bits);
  static WeightPattern from_string(std::string_view s);

  std::size_t n_qubits() const { return n_; }
  uint32_t bits() const { return bits_; }
  std::string to_string() const;

  friend bool operator==(const WeightPattern&, const WeightPattern&) = default;
  friend auto operator<=>(const WeightPattern&, const WeightPattern&) = default;

 private:
  std::size_t n_ = 0;
  uint32_t bits_ = 0;
};

WeightPattern pattern(const PauliOp& p);

/// System Pauli on qubits [0,m) followed by ancilla Pauli on [m,m+n).
PauliOp tensor(const PauliOp& system, const PauliOp& ancilla);
/// Z^bits on n qubits.
PauliOp z_string(std::size_t n, uint32_t bits);
/// Q (x) Z^bits, the operators that label graph edges.
PauliOp with_ancilla_z(const PauliOp& q, std::size_t n, uint32_t bits);

}  // namespace mcmcb

#endif  // MCMCB_PAULI_HPP
