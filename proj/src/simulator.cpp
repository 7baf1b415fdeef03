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

#include "mcmcb/simulator.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <complex>
#include <stdexcept>

namespace mcmcb {

namespace {

using cd = std::complex<double>;

double r_expectation(const SignedPauli& e, const DensityMatrix& rho, const std::vector<double>& term_by_pattern) {
  return e.sign * term_by_pattern.at(pattern(e.op).bits()) * pauli_expectation(e.op, rho);
}

int bernoulli_pm(double expectation, Rng& rng) {
  if (std::abs(expectation) > 1.0 + 1e-9) throw std::runtime_error("measurement expectation outside [-1, 1]");
  std::uniform_real_distribution<double> u(0.0, 1.0);
  return u(rng) < 0.5 * (1.0 + expectation) ? 1 : -1;
}

int measure_in_frame(const SignedPauli& e, const DensityMatrix& rho, const SpamModel& spam, Rng& rng,
                     const CliffordTableau& frame, const Matrix& frame_unitary) {
  // Rotate the state by H, measure the rotated observable through the raw
  // (untwirled) Pauli fidelity.
  const DensityMatrix sigma = frame_unitary * rho * frame_unitary.adjoint();
  const SignedPauli rotated = frame.conjugate(e);
  const double lam = spam.term_pauli_fidelities.at(rotated.op.index());
  return bernoulli_pm(rotated.sign * lam * pauli_expectation(rotated.op, sigma), rng);
}

}  // namespace

void CircuitSpec::validate() const {
  const std::size_t nq = n + m;
  if (nq == 0) throw std::invalid_argument("circuit has no qubits");
  if (initial.op.n_qubits() != nq) throw std::invalid_argument("initial observable has wrong size");
  if (terminating && terminating->op.n_qubits() != nq) throw std::invalid_argument("terminating observable has wrong size");
  if (depth() == 0 && !terminating) throw std::invalid_argument("depth-0 circuit needs a terminating observable");
  const std::size_t want = depth() == 0 ? 0 : depth() - 1;
  if (interleavers.size() != want) throw std::invalid_argument("need one interleaver between consecutive layers");
  for (const auto& h : interleavers) {
    if (h.n_qubits() != nq) throw std::invalid_argument("interleaver has wrong size");
  }
  for (uint32_t mask : fourier_masks) {
    if (mask >= (1u << n)) throw std::invalid_argument("Fourier mask out of range");
  }
}

double pauli_expectation(const PauliOp& p, const DensityMatrix& rho) {
  const std::size_t n = p.n_qubits();
  const std::size_t dim = std::size_t{1} << n;
  if (static_cast<std::size_t>(rho.rows()) != dim) throw std::invalid_argument("density matrix has wrong size");
  const uint32_t xm = basis_mask(p.x(), n);
  const uint32_t zm = basis_mask(p.z(), n);
  static const cd ipow[4] = {cd(1, 0), cd(0, 1), cd(-1, 0), cd(0, -1)};
  cd tr = 0.0;
  for (uint32_t j = 0; j < dim; ++j) {
    const uint32_t jj = j ^ xm;
    const cd v = rho(jj, j);
    tr += dot2(zm, jj) ? -v : v;
  }
  return (ipow[std::popcount(p.x() & p.z()) & 3] * tr).real();
}

DensityMatrix prepare_state(const SignedPauli& observable, const SpamModel& spam) {
  const std::size_t nq = spam.n_qubits;
  if (observable.op.n_qubits() != nq) throw std::invalid_argument("observable has wrong size");
  if (spam.prep_state) return *spam.prep_state;
  const std::size_t dim = std::size_t{1} << nq;
  DensityMatrix rho = Matrix::Identity(dim, dim);
  if (!observable.op.is_identity()) {
    rho += (observable.sign * spam.prep_fidelities.at(pattern(observable.op).bits())) * pauli_matrix(observable.op);
  }
  return rho / static_cast<double>(dim);
}

McmSampler::McmSampler(const NoisyMeasurement& mcm) : mcm_(&mcm) {
  double acc = 0.0;
  const auto& rates = mcm.instrument.rates();
  for (std::size_t f = 0; f < rates.size(); ++f) {
    if (rates[f] <= 0.0) continue;
    acc += rates[f];
    cumulative_.push_back(acc);
    support_.push_back(f);
  }
  for (auto& c : cumulative_) c /= acc;
}

std::pair<uint32_t, DensityMatrix> McmSampler::sample(const DensityMatrix& rho, Rng& rng) const {
  const NoisyMeasurement& mcm = *mcm_;
  const std::size_t n = mcm.n();
  const std::size_t m = mcm.m();
  const std::size_t nb = std::size_t{1} << n;
  const std::size_t ds = std::size_t{1} << m;
  const std::size_t dim = nb * ds;
  if (static_cast<std::size_t>(rho.rows()) != dim) throw std::invalid_argument("density matrix has wrong size");

  std::uniform_real_distribution<double> u(0.0, 1.0);
  const auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), u(rng));
  const std::size_t f = support_[std::min<std::size_t>(it - cumulative_.begin(), support_.size() - 1)];
  const auto& shape = mcm.instrument.shape();
  const uint32_t a = shape.first_bits(f);
  const uint32_t b = shape.second_bits(f);
  const std::size_t pidx = f & (ds * ds - 1);

  const DensityMatrix sigma = mcm.gate_unitary * rho * mcm.gate_unitary.adjoint();
  // Born rule on the ancillas; kp is the n-bit string of the true outcome.
  std::vector<double> probs(nb, 0.0);
  for (uint32_t kp = 0; kp < nb; ++kp) {
    const uint32_t al = ancilla_index(kp, n);
    double p = 0.0;
    for (std::size_t i = 0; i < ds; ++i) p += sigma(i * nb + al, i * nb + al).real();
    probs[kp] = std::max(p, 0.0);
  }
  double total = 0.0;
  for (double p : probs) total += p;
  double draw = u(rng) * total;
  uint32_t kp = 0;
  while (kp + 1 < nb && draw >= probs[kp]) {
    draw -= probs[kp];
    ++kp;
  }
  if (probs[kp] <= 0.0) kp = static_cast<uint32_t>(std::max_element(probs.begin(), probs.end()) - probs.begin());
  const uint32_t src = ancilla_index(kp, n);
  const uint32_t k = kp ^ a;
  const uint32_t dst = ancilla_index(k ^ b, n);
  Matrix blk(ds, ds);
  for (std::size_t i = 0; i < ds; ++i) {
    for (std::size_t j = 0; j < ds; ++j) blk(i, j) = sigma(i * nb + src, j * nb + src);
  }
  const Matrix& pm = mcm.system_paulis[pidx];
  blk = pm * blk * pm / probs[kp];
  DensityMatrix out = Matrix::Zero(dim, dim);
  for (std::size_t i = 0; i < ds; ++i) {
    for (std::size_t j = 0; j < ds; ++j) out(i * nb + dst, j * nb + dst) = blk(i, j);
  }
  return {k, out};
}

std::pair<uint32_t, DensityMatrix> sample_mcm(const NoisyMeasurement& mcm, const DensityMatrix& rho, Rng& rng) {
  return McmSampler(mcm).sample(rho, rng);
}

int measure_pauli_twirled(const SignedPauli& e, const DensityMatrix& rho, const SpamModel& spam, Rng& rng,
                          const CliffordTableau* frame) {
  if (e.op.n_qubits() != spam.n_qubits) throw std::invalid_argument("observable has wrong size");
  if (frame == nullptr) return bernoulli_pm(r_expectation(e, rho, spam.term_fidelities()), rng);
  return measure_in_frame(e, rho, spam, rng, *frame, frame->unitary());
}

std::vector<ShotRecord> run_circuit(const CircuitSpec& spec, const NoiseModel& model, std::size_t shots,
                                    uint64_t seed, const RunOptions& options) {
  spec.validate();
  if (spec.n != model.n() || spec.m != model.m()) throw std::invalid_argument("circuit and model disagree on shape");
  Rng rng(seed);
  std::optional<CliffordTableau> frame;
  Matrix frame_unitary;
  if (options.explicit_twirl) {
    frame = random_local_clifford(spec.n + spec.m, rng);
    frame_unitary = frame->unitary();
  }
  std::vector<Matrix> hs;
  for (const auto& h : spec.interleavers) hs.push_back(h.unitary());
  const McmSampler sampler(model.mcm);
  const DensityMatrix rho0 = prepare_state(spec.initial, model.spam);
  const std::vector<double> term = model.spam.term_fidelities();

  std::vector<ShotRecord> out;
  out.reserve(shots);
  for (std::size_t s = 0; s < shots; ++s) {
    ShotRecord rec;
    rec.outcomes.reserve(spec.depth());
    DensityMatrix rho = rho0;
    for (std::size_t i = 0; i < spec.depth(); ++i) {
      auto [k, next] = sampler.sample(rho, rng);
      rec.outcomes.push_back(k);
      rho = i < hs.size() ? Matrix(hs[i] * next * hs[i].adjoint()) : next;
    }
    if (!spec.terminating) {
      rec.r = 1;
    } else if (frame) {
      rec.r = measure_in_frame(*spec.terminating, rho, model.spam, rng, *frame, frame_unitary);
    } else {
      rec.r = bernoulli_pm(r_expectation(*spec.terminating, rho, term), rng);
    }
    out.push_back(std::move(rec));
  }
  return out;
}

std::vector<OutcomeBranch> enumerate_outcomes(const CircuitSpec& spec, const NoiseModel& model) {
  spec.validate();
  if (spec.n != model.n() || spec.m != model.m()) throw std::invalid_argument("circuit and model disagree on shape");
  if (spec.n * spec.depth() > 24) throw std::invalid_argument("too many outcome branches to enumerate");
  std::vector<Matrix> hs;
  for (const auto& h : spec.interleavers) hs.push_back(h.unitary());
  const uint32_t nb = 1u << spec.n;
  const std::vector<double> term = model.spam.term_fidelities();

  std::vector<OutcomeBranch> out;
  std::vector<uint32_t> prefix;
  // Depth-first over outcomes with unnormalized states.
  auto recurse = [&](auto&& self, const DensityMatrix& rho, std::size_t layer) -> void {
    if (layer == spec.depth()) {
      OutcomeBranch br;
      br.outcomes = prefix;
      br.probability = rho.trace().real();
      br.r_moment = spec.terminating ? r_expectation(*spec.terminating, rho, term) : br.probability;
      out.push_back(std::move(br));
      return;
    }
    for (uint32_t k = 0; k < nb; ++k) {
      DensityMatrix next = apply_instrument_physical(model.mcm, rho, k);
      if (layer < hs.size()) next = hs[layer] * next * hs[layer].adjoint();
      prefix.push_back(k);
      self(self, next, layer + 1);
      prefix.pop_back();
    }
  };
  recurse(recurse, prepare_state(spec.initial, model.spam), 0);
  return out;
}

double enumerate_expectation(const CircuitSpec& spec, const NoiseModel& model) {
  spec.validate();
  if (spec.n != model.n() || spec.m != model.m()) throw std::invalid_argument("circuit and model disagree on shape");
  const uint32_t nb = 1u << spec.n;
  // The parity weight factors over layers, so each layer applies the signed
  // sum of its outcome branches instead of branching.
  DensityMatrix rho = prepare_state(spec.initial, model.spam);
  for (std::size_t layer = 0; layer < spec.depth(); ++layer) {
    DensityMatrix next = DensityMatrix::Zero(rho.rows(), rho.cols());
    for (uint32_t k = 0; k < nb; ++k) {
      const DensityMatrix branch = apply_instrument_physical(model.mcm, rho, k);
      if (dot2(k, spec.fourier_masks[layer])) {
        next -= branch;
      } else {
        next += branch;
      }
    }
    if (layer < spec.interleavers.size()) {
      const Matrix h = spec.interleavers[layer].unitary();
      next = h * next * h.adjoint();
    }
    rho = std::move(next);
  }
  return spec.terminating ? r_expectation(*spec.terminating, rho, model.spam.term_fidelities()) : rho.trace().real();
}

}  // namespace mcmcb
