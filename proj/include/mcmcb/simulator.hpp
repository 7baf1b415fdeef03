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

#ifndef MCMCB_SIMULATOR_HPP
#define MCMCB_SIMULATOR_HPP

#include <cstddef>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "mcmcb/channels.hpp"
#include "mcmcb/noise_model.hpp"

namespace mcmcb {

using DensityMatrix = Matrix;

/// One circuit: prepare, then `depth()` noisy measurements with an
/// interleaving local Clifford between consecutive ones, then an optional
/// terminating Pauli measurement.
struct CircuitSpec {
  std::size_t n = 0;
  std::size_t m = 0;
  SignedPauli initial;                        // eigen-observable of the prepared state
  std::vector<uint32_t> fourier_masks;        // one per measurement layer
  std::vector<CliffordTableau> interleavers;  // depth() - 1 entries
  std::optional<SignedPauli> terminating;

  std::size_t depth() const { return fourier_masks.size(); }
  /// Throws std::invalid_argument on inconsistent sizes.
  void validate() const;
};

struct ShotRecord {
  std::vector<uint32_t> outcomes;
  int r = 1;
};

struct RunOptions {
  /// Draw a random local Clifford frame per batch for the terminating
  /// measurement instead of using the pattern-averaged fidelity directly.
  bool explicit_twirl = false;
};

/// Tr(P rho).
double pauli_expectation(const PauliOp& p, const DensityMatrix& rho);

DensityMatrix prepare_state(const SignedPauli& observable, const SpamModel& spam);

/// Samples T_k: draws (a, b, P), applies G, measures the ancillas (outcome
/// k'), reports k = k' + a and resets the ancillas to k' + a + b.
class McmSampler {
 public:
  explicit McmSampler(const NoisyMeasurement& mcm);
  std::pair<uint32_t, DensityMatrix> sample(const DensityMatrix& rho, Rng& rng) const;

 private:
  const NoisyMeasurement* mcm_;
  std::vector<double> cumulative_;
  std::vector<std::size_t> support_;
};

std::pair<uint32_t, DensityMatrix> sample_mcm(const NoisyMeasurement& mcm, const DensityMatrix& rho, Rng& rng);

/// +1/-1 outcome of the noisy terminating measurement of a signed Pauli.
/// With a frame H the raw per-Pauli fidelity of H E H^dagger is used.
int measure_pauli_twirled(const SignedPauli& e, const DensityMatrix& rho, const SpamModel& spam, Rng& rng,
                          const CliffordTableau* frame = nullptr);

/// A batch of shots of one compiled circuit, reproducible from `seed`.
std::vector<ShotRecord> run_circuit(const CircuitSpec& spec, const NoiseModel& model, std::size_t shots,
                                    uint64_t seed, const RunOptions& options = {});

struct OutcomeBranch {
  std::vector<uint32_t> outcomes;
  double probability = 0.0;  // Pr[m]
  double r_moment = 0.0;     // E[r 1{m}]
};

/// Exact joint distribution of (m_1..m_l, r) by branching on every outcome.
std::vector<OutcomeBranch> enumerate_outcomes(const CircuitSpec& spec, const NoiseModel& model);

/// E[(-1)^{sum_i m_i . mask_i} r], exactly.
double enumerate_expectation(const CircuitSpec& spec, const NoiseModel& model);

}  // namespace mcmcb

#endif  // MCMCB_SIMULATOR_HPP
