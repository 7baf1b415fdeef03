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

#include "mcmcb/pauli.hpp"

#include <bit>
#include <stdexcept>

namespace mcmcb {

std::string bits_to_string(uint32_t bits, std::size_t n) {
  std::string s(n, '0');
  for (std::size_t j = 0; j < n; ++j) {
    if ((bits >> j) & 1u) s[j] = '1';
  }
  return s;
}

uint32_t bits_from_string(std::string_view s) {
  if (s.size() > 32) throw std::invalid_argument("bit string too long");
  uint32_t bits = 0;
  for (std::size_t j = 0; j < s.size(); ++j) {
    if (s[j] == '1') {
      bits |= 1u << j;
    } else if (s[j] != '0') {
      throw std::invalid_argument("bad bit string: " + std::string(s));
    }
  }
  return bits;
}

namespace {

uint32_t low_mask(std::size_t n) { return n >= 32 ? ~0u : ((1u << n) - 1u); }

void check_size(std::size_t n) {
  if (n > kMaxQubits) throw std::invalid_argument("too many qubits");
}

}  // namespace

PauliOp::PauliOp(std::size_t n_qubits) : n_(n_qubits) { check_size(n_qubits); }

PauliOp::PauliOp(std::size_t n_qubits, uint32_t x, uint32_t z) : n_(n_qubits), x_(x), z_(z) {
  check_size(n_qubits);
  if ((x | z) & ~low_mask(n_qubits)) throw std::invalid_argument("Pauli bits out of range");
}

PauliOp PauliOp::from_string(std::string_view s) {
  PauliOp p(s.size());
  for (std::size_t q = 0; q < s.size(); ++q) {
    switch (s[q]) {
      case 'I': break;
      case 'X': p.x_ |= 1u << q; break;
      case 'Z': p.z_ |= 1u << q; break;
      case 'Y': p.x_ |= 1u << q; p.z_ |= 1u << q; break;
      default: throw std::invalid_argument("bad Pauli string: " + std::string(s));
    }
  }
  return p;
}

PauliOp PauliOp::from_index(std::size_t n_qubits, uint64_t index) {
  check_size(n_qubits);
  if (n_qubits < 32 && (index >> (2 * n_qubits)) != 0) {
    throw std::invalid_argument("Pauli index out of range");
  }
  return PauliOp(n_qubits, static_cast<uint32_t>(index & low_mask(n_qubits)),
                 static_cast<uint32_t>((index >> n_qubits) & low_mask(n_qubits)));
}

std::size_t PauliOp::weight() const { return static_cast<std::size_t>(std::popcount(x_ | z_)); }

char PauliOp::at(std::size_t q) const {
  if (q >= n_) throw std::out_of_range("qubit index");
  const bool xb = (x_ >> q) & 1u;
  const bool zb = (z_ >> q) & 1u;
  if (xb && zb) return 'Y';
  if (xb) return 'X';
  if (zb) return 'Z';
  return 'I';
}

PauliOp PauliOp::factor(std::size_t q) const {
  if (q >= n_) throw std::out_of_range("qubit index");
  return PauliOp(1, (x_ >> q) & 1u, (z_ >> q) & 1u);
}

std::string PauliOp::to_string() const {
  std::string s(n_, 'I');
  for (std::size_t q = 0; q < n_; ++q) s[q] = at(q);
  return s;
}

PauliOp PauliOp::operator*(const PauliOp& other) const {
  if (n_ != other.n_) throw std::invalid_argument("Pauli size mismatch");
  return PauliOp(n_, x_ ^ other.x_, z_ ^ other.z_);
}

SignedPauli SignedPauli::parse(std::string_view s) {
  int sign = 1;
  if (!s.empty() && (s[0] == '+' || s[0] == '-')) {
    sign = s[0] == '-' ? -1 : 1;
    s.remove_prefix(1);
  }
  return {PauliOp::from_string(s), sign};
}

std::string SignedPauli::to_string() const { return (sign < 0 ? "-" : "+") + op.to_string(); }

int symplectic_inner(const PauliOp& p, const PauliOp& q) {
  if (p.n_qubits() != q.n_qubits()) throw std::invalid_argument("Pauli size mismatch");
  return dot2(p.x(), q.z()) ^ dot2(p.z(), q.x());
}

WeightPattern::WeightPattern(std::size_t n_qubits, uint32_t bits) : n_(n_qubits), bits_(bits) {
  check_size(n_qubits);
  if (bits & ~low_mask(n_qubits)) throw std::invalid_argument("pattern bits out of range");
}

WeightPattern WeightPattern::from_string(std::string_view s) {
  return WeightPattern(s.size(), bits_from_string(s));
}

std::string WeightPattern::to_string() const { return bits_to_string(bits_, n_); }

WeightPattern pattern(const PauliOp& p) { return WeightPattern(p.n_qubits(), p.x() | p.z()); }

PauliOp tensor(const PauliOp& system, const PauliOp& ancilla) {
  const std::size_t m = system.n_qubits();
  return PauliOp(m + ancilla.n_qubits(), system.x() | (ancilla.x() << m),
                 system.z() | (ancilla.z() << m));
}

PauliOp z_string(std::size_t n, uint32_t bits) { return PauliOp(n, 0, bits); }

PauliOp with_ancilla_z(const PauliOp& q, std::size_t n, uint32_t bits) {
  return tensor(q, z_string(n, bits));
}

}  // namespace mcmcb
