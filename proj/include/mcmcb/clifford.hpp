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

#ifndef MCMCB_CLIFFORD_HPP
#define MCMCB_CLIFFORD_HPP

#include <array>
#include <cstddef>
#include <vector>

#include <Eigen/Dense>

#include "mcmcb/bits.hpp"
#include "mcmcb/pauli.hpp"

namespace mcmcb {

using Matrix = Eigen::MatrixXcd;

/// Basis index convention: qubit q is bit (N-1-q) of the index, so qubit 0
/// is the leftmost Kronecker factor.
uint32_t basis_mask(uint32_t qubit_bits, std::size_t n_qubits);

/// Kronecker product, `a` on the leading qubits.
Matrix kron(const Matrix& a, const Matrix& b);

/// Dense matrix of a Hermitian Pauli.
Matrix pauli_matrix(const PauliOp& p);

/// Clifford unitary stored through the signed images of X_q and Z_q.
class CliffordTableau {
 public:
  CliffordTableau() = default;
  explicit CliffordTableau(std::size_t n_qubits);  // identity

  /// Throws std::invalid_argument unless the images preserve commutation.
  static CliffordTableau from_images(std::vector<SignedPauli> x_images,
                                     std::vector<SignedPauli> z_images);

  static CliffordTableau hadamard(std::size_t n, std::size_t q);
  static CliffordTableau phase(std::size_t n, std::size_t q);  // S gate
  static CliffordTableau cnot(std::size_t n, std::size_t control, std::size_t target);
  static CliffordTableau cz(std::size_t n, std::size_t a, std::size_t b);
  /// |0><0| (x) I + |1><1| (x) P. P must act as identity on the control.
  static CliffordTableau controlled_pauli(std::size_t control, const PauliOp& p);
  /// Tensor product, first factor on the lowest qubits.
  static CliffordTableau tensor(const std::vector<CliffordTableau>& factors);

  std::size_t n_qubits() const { return x_.size(); }
  const SignedPauli& x_image(std::size_t q) const { return x_.at(q); }
  const SignedPauli& z_image(std::size_t q) const { return z_.at(q); }

  /// U p U^dagger as a signed Hermitian Pauli.
  SignedPauli conjugate(const PauliOp& p) const;
  SignedPauli conjugate(const SignedPauli& p) const;

  CliffordTableau inverse() const;
  /// The Clifford obtained by applying *this first and then `next`.
  CliffordTableau then(const CliffordTableau& next) const;
  bool is_identity() const;

  /// A unitary with this tableau, fixed up to a global phase.
  Matrix unitary() const;

  friend bool operator==(const CliffordTableau&, const CliffordTableau&) = default;

 private:
  std::vector<SignedPauli> x_;
  std::vector<SignedPauli> z_;
};

/// The 24 single-qubit Cliffords; element 0 is the identity.
const std::array<CliffordTableau, 24>& single_qubit_cliffords();

/// Lowest-index single-qubit Clifford H with H src H^dagger = +dst.
/// Throws std::invalid_argument if exactly one of src, dst is the identity.
CliffordTableau solve_single_qubit_clifford(const PauliOp& src, const PauliOp& dst);

/// Random Clifford from a gate sequence of H, S and CNOT.
CliffordTableau random_clifford(std::size_t n, Rng& rng);

/// Uniformly random tensor product of single-qubit Cliffords.
CliffordTableau random_local_clifford(std::size_t n, Rng& rng);

}  // namespace mcmcb

#endif  // MCMCB_CLIFFORD_HPP
