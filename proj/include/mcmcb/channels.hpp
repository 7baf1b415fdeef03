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

#ifndef MCMCB_CHANNELS_HPP
#define MCMCB_CHANNELS_HPP

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "mcmcb/clifford.hpp"
#include "mcmcb/pauli.hpp"

namespace mcmcb {

/// Raised when a rate table has entries below -1e-9 or does not sum to one.
class NonPhysicalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr double kRateTolerance = 1e-9;

/// Shape of an instrument with m system qubits and n ancillas. Tables indexed
/// by (a, b, P) or (x, y, Q) share one flat layout:
///   ((a << n) | b) * 4^m + P.index().
struct InstrumentShape {
  std::size_t n = 0;
  std::size_t m = 0;

  std::size_t n_qubits() const { return n + m; }
  std::size_t table_size() const { return std::size_t{1} << (2 * (n + m)); }
  std::size_t flat(uint32_t a, uint32_t b, uint64_t pauli_index) const {
    return ((((std::size_t{a} << n) | b)) << (2 * m)) | pauli_index;
  }
  uint32_t first_bits(std::size_t flat_index) const {
    return static_cast<uint32_t>(flat_index >> (2 * m + n));
  }
  uint32_t second_bits(std::size_t flat_index) const {
    return static_cast<uint32_t>((flat_index >> (2 * m)) & ((std::size_t{1} << n) - 1));
  }
  PauliOp pauli(std::size_t flat_index) const {
    return PauliOp::from_index(m, flat_index & ((std::size_t{1} << (2 * m)) - 1));
  }
  void validate() const;
};

/// Rates p_{a,b}^P of a uniform stochastic instrument.
class UniformStochasticInstrument {
 public:
  UniformStochasticInstrument() = default;
  /// Throws NonPhysicalError if a rate is below -1e-9 or the sum differs from 1.
  UniformStochasticInstrument(std::size_t n, std::size_t m, std::vector<double> rates);

  static UniformStochasticInstrument ideal(std::size_t n, std::size_t m);

  const InstrumentShape& shape() const { return shape_; }
  std::size_t n() const { return shape_.n; }
  std::size_t m() const { return shape_.m; }
  double rate(uint32_t a, uint32_t b, const PauliOp& p) const;
  const std::vector<double>& rates() const { return rates_; }

 private:
  InstrumentShape shape_;
  std::vector<double> rates_;
};

/// Fidelities lambda_{x,y}^Q, same flat layout as the rates.
class FidelityTable {
 public:
  FidelityTable() = default;
  FidelityTable(std::size_t n, std::size_t m, std::vector<double> values);

  const InstrumentShape& shape() const { return shape_; }
  std::size_t n() const { return shape_.n; }
  std::size_t m() const { return shape_.m; }
  double at(uint32_t x, uint32_t y, const PauliOp& q) const;
  double at_flat(std::size_t i) const { return values_.at(i); }
  const std::vector<double>& values() const { return values_; }

 private:
  InstrumentShape shape_;
  std::vector<double> values_;
};

/// In-place Walsh-Hadamard transform (unnormalized) of a power-of-two vector.
void walsh_hadamard(std::vector<double>& v);

FidelityTable fidelities_from_rates(const UniformStochasticInstrument& instrument);
/// Inverse transform with the 4^{-(n+m)} prefactor, unchecked.
std::vector<double> rates_from_fidelities_raw(const FidelityTable& fidelities);
/// Inverse transform; throws NonPhysicalError on negative rates.
UniformStochasticInstrument rates_from_fidelities(const FidelityTable& fidelities);

/// Measure-and-prepare instrument: readout table q_a^P and reset table r_b^P,
/// each indexed a * 4^m + P.index() and summing to one.
struct MeasureAndPrepareInstrument {
  std::size_t n = 0;
  std::size_t m = 0;
  std::vector<double> measure_rates;
  std::vector<double> prepare_rates;

  void validate() const;
  /// p_{a,b}^P = sum over P1 P2 = P of q_a^{P1} r_b^{P2}.
  UniformStochasticInstrument induced() const;
  /// zeta_x^Q and xi_y^Q, indexed x * 4^m + Q.index().
  std::vector<double> measure_fidelities() const;
  std::vector<double> prepare_fidelities() const;
};

/// The Clifford G of the measurement together with its noise, T_k = U_k G.
struct NoisyMeasurement {
  UniformStochasticInstrument instrument;
  CliffordTableau gate;
  CliffordTableau gate_inverse;
  Matrix gate_unitary;
  FidelityTable fidelities;
  std::vector<Matrix> system_paulis;  // indexed by P.index()

  NoisyMeasurement() = default;
  NoisyMeasurement(UniformStochasticInstrument instrument, CliffordTableau gate);

  std::size_t n() const { return instrument.n(); }
  std::size_t m() const { return instrument.m(); }
};

/// Ancilla basis-index bits for an n-bit string (bit j is ancilla j).
inline uint32_t ancilla_index(uint32_t bits, std::size_t n) { return basis_mask(bits, n); }

/// T_k rho through the Kraus form of the instrument.
Matrix apply_instrument_physical(const NoisyMeasurement& mcm, const Matrix& rho, uint32_t k);

/// Coefficients c_P = 2^{-N} Tr(P rho) indexed by P.index().
using PauliVector = std::vector<double>;
PauliVector to_pauli_vector(const Matrix& rho);
Matrix from_pauli_vector(const PauliVector& c, std::size_t n_qubits);

/// T_k applied through the fidelity (dual) form.
PauliVector apply_instrument_dual(const FidelityTable& fidelities, const CliffordTableau& gate,
                                  const PauliVector& rho, uint32_t k);

/// Arbitrary instrument given by Kraus operators per outcome.
struct GeneralInstrument {
  std::size_t n = 0;
  std::size_t m = 0;
  std::vector<std::vector<Matrix>> kraus;  // kraus[k][j]

  /// Throws std::invalid_argument unless sum_k sum_j K^dagger K = I.
  void validate(double tol = 1e-9) const;
  Matrix apply(uint32_t k, const Matrix& rho) const;

  static GeneralInstrument ideal_measurement(std::size_t n, std::size_t m);
  static GeneralInstrument from_noisy_measurement(const NoisyMeasurement& mcm);
  /// Perturbation of the ideal measurement following `gate`.
  static GeneralInstrument random(std::size_t n, std::size_t m, const CliffordTableau& gate,
                                  double strength, Rng& rng);
};

/// Rates of the uniform stochastic instrument obtained by averaging over all
/// randomized-compiling frames. `gate` is the Clifford the instrument is
/// meant to implement.
UniformStochasticInstrument twirl_average(const GeneralInstrument& instrument,
                                          const CliffordTableau& gate);

struct PlantedRate {
  uint32_t a = 0;
  uint32_t b = 0;
  PauliOp p;
  double mass = 0.0;
};

/// p_{0,0}^I = 1 - eps - sum(planted), the remaining eps spread by a flat
/// Dirichlet draw, then the planted masses added.
UniformStochasticInstrument random_instrument(std::size_t n, std::size_t m, double eps, uint64_t seed,
                                              const std::vector<PlantedRate>& planted = {});

MeasureAndPrepareInstrument random_measure_and_prepare(std::size_t n, std::size_t m, double eps,
                                                       uint64_t seed);

/// Rate key "<a-bits>|<b-bits>|<Pauli>" and its parser.
std::string rate_key(const InstrumentShape& shape, std::size_t flat_index);
std::size_t parse_rate_key(const InstrumentShape& shape, const std::string& key);

}  // namespace mcmcb

#endif  // MCMCB_CHANNELS_HPP
