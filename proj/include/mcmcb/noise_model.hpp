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

#ifndef MCMCB_NOISE_MODEL_HPP
#define MCMCB_NOISE_MODEL_HPP

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "mcmcb/channels.hpp"
#include "mcmcb/ptgraph.hpp"

namespace mcmcb {

/// State preparation and terminating-measurement noise on N = n + m qubits.
///
/// Preparing the eigenstate of a signed Pauli E gives
///   rho = (I + sign * lambda_S^{pt(E)} E) / 2^N
/// unless an explicit `prep_state` overrides it. The terminating measurement
/// of E has expectation lambda_M^{pt(E)} Tr(E rho) after twirling, where
/// lambda_M^v is the mean of `term_pauli_fidelities` over Paulis of pattern v.
struct SpamModel {
  std::size_t n_qubits = 0;
  std::vector<double> prep_fidelities;        // by pattern, entry 0 is 1
  std::vector<double> term_pauli_fidelities;  // by Pauli index, entry 0 is 1
  std::optional<Matrix> prep_state;

  static SpamModel ideal(std::size_t n_qubits);
  /// Both tables constant on patterns.
  static SpamModel from_patterns(std::vector<double> prep, std::vector<double> term);
  /// lambda = 1 - eps * weight * u with u uniform in [0.5, 1.5]; the raw
  /// terminating table varies within each pattern class.
  static SpamModel random(std::size_t n_qubits, double eps, uint64_t seed);

  void validate() const;
  double term_fidelity(uint32_t pattern_bits) const;
  std::vector<double> term_fidelities() const;  // by pattern
};

/// Everything needed to simulate the measurement and its surroundings.
struct NoiseModel {
  NoisyMeasurement mcm;
  SpamModel spam;

  NoiseModel() = default;
  NoiseModel(UniformStochasticInstrument instrument, CliffordTableau gate, SpamModel spam);

  std::size_t n() const { return mcm.n(); }
  std::size_t m() const { return mcm.m(); }
  std::size_t n_qubits() const { return mcm.n() + mcm.m(); }
  const FidelityTable& fidelities() const { return mcm.fidelities; }
};

/// Diagonal gauge D(P) = eta^{nu(pt(P))} P applied to the whole model:
/// lambda_{x,y}^Q picks up eta^{nu(dst) - nu(src)}, rho -> D(rho) and
/// Lambda_M -> Lambda_M D^{-1}. Throws std::invalid_argument if nu touches
/// the zero pattern and NonPhysicalError if the new rates are negative.
NoiseModel gauge_transform(const NoiseModel& model, const ZeroChain& nu, double eta);

}  // namespace mcmcb

#endif  // MCMCB_NOISE_MODEL_HPP
