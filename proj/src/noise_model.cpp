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

#include "mcmcb/noise_model.hpp"

#include <bit>
#include <cmath>
#include <random>
#include <stdexcept>

namespace mcmcb {

SpamModel SpamModel::ideal(std::size_t n_qubits) {
  return from_patterns(std::vector<double>(std::size_t{1} << n_qubits, 1.0),
                       std::vector<double>(std::size_t{1} << n_qubits, 1.0));
}

SpamModel SpamModel::from_patterns(std::vector<double> prep, std::vector<double> term) {
  std::size_t n = 0;
  while ((std::size_t{1} << n) < prep.size()) ++n;
  if (prep.size() != (std::size_t{1} << n) || term.size() != prep.size()) {
    throw std::invalid_argument("pattern tables must have 2^N entries");
  }
  SpamModel s;
  s.n_qubits = n;
  s.prep_fidelities = std::move(prep);
  s.term_pauli_fidelities.resize(std::size_t{1} << (2 * n));
  for (std::size_t i = 0; i < s.term_pauli_fidelities.size(); ++i) {
    s.term_pauli_fidelities[i] = term[pattern(PauliOp::from_index(n, i)).bits()];
  }
  s.validate();
  return s;
}

SpamModel SpamModel::random(std::size_t n_qubits, double eps, uint64_t seed) {
  if (!(eps >= 0.0 && eps < 0.5)) throw std::invalid_argument("SPAM eps must lie in [0, 0.5)");
  Rng rng(seed);
  std::uniform_real_distribution<double> u(0.5, 1.5);
  SpamModel s;
  s.n_qubits = n_qubits;
  s.prep_fidelities.resize(std::size_t{1} << n_qubits);
  for (std::size_t v = 0; v < s.prep_fidelities.size(); ++v) {
    s.prep_fidelities[v] = v == 0 ? 1.0 : 1.0 - eps * std::popcount(v) * u(rng);
  }
  s.term_pauli_fidelities.resize(std::size_t{1} << (2 * n_qubits));
  for (std::size_t i = 0; i < s.term_pauli_fidelities.size(); ++i) {
    const auto w = PauliOp::from_index(n_qubits, i).weight();
    s.term_pauli_fidelities[i] = i == 0 ? 1.0 : 1.0 - eps * static_cast<double>(w) * u(rng);
  }
  s.validate();
  return s;
}

void SpamModel::validate() const {
  if (prep_fidelities.size() != (std::size_t{1} << n_qubits) ||
      term_pauli_fidelities.size() != (std::size_t{1} << (2 * n_qubits))) {
    throw std::invalid_argument("SPAM tables have wrong size");
  }
  if (prep_fidelities[0] != 1.0 || term_pauli_fidelities[0] != 1.0) {
    throw std::invalid_argument("SPAM fidelity of the identity must be 1");
  }
  if (prep_state) {
    const auto dim = static_cast<Eigen::Index>(std::size_t{1} << n_qubits);
    if (prep_state->rows() != dim || prep_state->cols() != dim) throw std::invalid_argument("prep_state has wrong size");
    if (std::abs(prep_state->trace().real() - 1.0) > 1e-9) throw std::invalid_argument("prep_state must have unit trace");
  }
}

double SpamModel::term_fidelity(uint32_t pattern_bits) const { return term_fidelities().at(pattern_bits); }

std::vector<double> SpamModel::term_fidelities() const {
  std::vector<double> sum(std::size_t{1} << n_qubits, 0.0);
  std::vector<double> count(sum.size(), 0.0);
  for (std::size_t i = 0; i < term_pauli_fidelities.size(); ++i) {
    const auto v = pattern(PauliOp::from_index(n_qubits, i)).bits();
    sum[v] += term_pauli_fidelities[i];
    count[v] += 1.0;
  }
  for (std::size_t v = 0; v < sum.size(); ++v) sum[v] /= count[v];
  return sum;
}

NoiseModel::NoiseModel(UniformStochasticInstrument instrument, CliffordTableau gate, SpamModel s)
    : mcm(std::move(instrument), std::move(gate)), spam(std::move(s)) {
  spam.validate();
  if (spam.n_qubits != mcm.n() + mcm.m()) throw std::invalid_argument("SPAM model acts on the wrong qubits");
}

NoiseModel gauge_transform(const NoiseModel& model, const ZeroChain& nu, double eta) {
  if (!(eta > 0.0)) throw std::invalid_argument("eta must be positive");
  const std::size_t nq = model.n_qubits();
  const std::size_t nv = std::size_t{1} << nq;
  std::vector<double> eps(nv, 0.0);
  for (const auto& [v, c] : nu) {
    if (v >= nv) throw std::invalid_argument("gauge vector has a vertex out of range");
    if (v == 0 && c != 0.0) throw std::invalid_argument("gauge vector must vanish on the zero pattern");
    eps[v] = c;
  }
  auto factor = [&](uint32_t v) { return std::pow(eta, eps[v]); };

  const PatternTransferGraph g(model.mcm.gate, model.n(), model.m());
  std::vector<double> lam = model.fidelities().values();
  for (const Edge& e : g.edges()) {
    const std::size_t id = g.edge_id(e.x, e.y, e.q);
    lam[id] *= factor(e.dst) / factor(e.src);
  }
  UniformStochasticInstrument instr = rates_from_fidelities(FidelityTable(model.n(), model.m(), lam));

  SpamModel spam = model.spam;
  for (uint32_t v = 0; v < nv; ++v) spam.prep_fidelities[v] *= factor(v);
  for (std::size_t i = 0; i < spam.term_pauli_fidelities.size(); ++i) {
    spam.term_pauli_fidelities[i] /= factor(pattern(PauliOp::from_index(nq, i)).bits());
  }
  if (spam.prep_state) {
    PauliVector c = to_pauli_vector(*spam.prep_state);
    for (std::size_t i = 0; i < c.size(); ++i) c[i] *= factor(pattern(PauliOp::from_index(nq, i)).bits());
    spam.prep_state = from_pauli_vector(c, nq);
  }
  return NoiseModel(std::move(instr), model.mcm.gate, std::move(spam));
}

}  // namespace mcmcb
