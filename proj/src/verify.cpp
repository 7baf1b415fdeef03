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


#include "mcmcb/verify.hpp"

#include <cmath>
#include <exception>
#include <functional>
#include <sstream>

#include "mcmcb/analysis.hpp"
#include "mcmcb/channels.hpp"
#include "mcmcb/noise_model.hpp"
#include "mcmcb/protocol.hpp"
#include "mcmcb/ptgraph.hpp"
#include "mcmcb/simulator.hpp"

namespace mcmcb {

namespace {

std::string sci(double v) {
  std::ostringstream os;
  os.precision(3);
  os << std::scientific << v;
  return os.str();
}

DensityMatrix random_state(std::size_t nq, Rng& rng) {
  const auto dim = static_cast<Eigen::Index>(std::size_t{1} << nq);
  std::normal_distribution<double> nd(0.0, 1.0);
  Matrix a(dim, dim);
  for (Eigen::Index i = 0; i < dim; ++i) {
    for (Eigen::Index j = 0; j < dim; ++j) a(i, j) = {nd(rng), nd(rng)};
  }
  Matrix rho = a * a.adjoint();
  return rho / rho.trace().real();
}

// Random walk along the graph of length len, starting anywhere.
PathSpec random_path(const PatternTransferGraph& g, std::size_t len, Rng& rng) {
  PathSpec p;
  std::uniform_int_distribution<std::size_t> pick_edge(0, g.num_edges() - 1);
  p.edges.push_back(pick_edge(rng));
  while (p.edges.size() < len) {
    const auto& outs = g.out_edges(g.edge(p.edges.back()).dst);
    if (outs.empty()) break;
    std::uniform_int_distribution<std::size_t> pick(0, outs.size() - 1);
    p.edges.push_back(outs[pick(rng)]);
  }
  return p;
}

CircuitSpec random_circuit(std::size_t n, std::size_t m, std::size_t depth, Rng& rng) {
  const std::size_t nq = n + m;
  std::uniform_int_distribution<uint64_t> pauli(1, (uint64_t{1} << (2 * nq)) - 1);
  std::uniform_int_distribution<uint32_t> mask(0, (1u << n) - 1);
  CircuitSpec c;
  c.n = n;
  c.m = m;
  c.initial = {PauliOp::from_index(nq, pauli(rng)), 1};
  for (std::size_t i = 0; i < depth; ++i) {
    c.fourier_masks.push_back(mask(rng));
    if (i + 1 < depth) c.interleavers.push_back(random_local_clifford(nq, rng));
  }
  c.terminating = SignedPauli{PauliOp::from_index(nq, pauli(rng)), -1};
  return c;
}

NoiseModel random_model(std::size_t n, std::size_t m, const CliffordTableau& gate, double eps, Rng& rng) {
  return NoiseModel(random_instrument(n, m, eps, rng()), gate, SpamModel::random(n + m, eps / 2, rng()));
}

double check_transforms(Rng& rng) {
  double worst = 0.0;
  for (auto [n, m] : {std::pair<std::size_t, std::size_t>{1, 1}, {1, 2}, {2, 1}}) {
    const auto inst = random_instrument(n, m, 0.05, rng());
    const auto fid = fidelities_from_rates(inst);
    const auto back = rates_from_fidelities_raw(fid);
    for (std::size_t i = 0; i < back.size(); ++i) worst = std::max(worst, std::abs(back[i] - inst.rates()[i]));
    worst = std::max(worst, std::abs(fid.at_flat(0) - 1.0));
  }
  return worst;
}

double check_dual(Rng& rng) {
  double worst = 0.0;
  for (int trial = 0; trial < 3; ++trial) {
    const std::size_t n = 1 + trial % 2, m = 1;
    const NoisyMeasurement mcm(random_instrument(n, m, 0.1, rng()), random_clifford(n + m, rng));
    const DensityMatrix rho = random_state(n + m, rng);
    for (uint32_t k = 0; k < (1u << n); ++k) {
      const PauliVector a = to_pauli_vector(apply_instrument_physical(mcm, rho, k));
      const PauliVector b = apply_instrument_dual(mcm.fidelities, mcm.gate, to_pauli_vector(rho), k);
      for (std::size_t i = 0; i < a.size(); ++i) worst = std::max(worst, std::abs(a[i] - b[i]));
    }
  }
  return worst;
}

double check_twirl(Rng& rng) {
  const CliffordTableau gate = CliffordTableau::cnot(2, 0, 1);
  const NoisyMeasurement mcm(random_instrument(1, 1, 0.1, rng()), gate);
  const auto twirled = twirl_average(GeneralInstrument::from_noisy_measurement(mcm), gate);
  double worst = 0.0;
  for (std::size_t i = 0; i < twirled.rates().size(); ++i) {
    worst = std::max(worst, std::abs(twirled.rates()[i] - mcm.instrument.rates()[i]));
  }
  return worst;
}

double path_prediction(const CompiledExperiment& ex, const PatternTransferGraph& g, const NoiseModel& model) {
  const Edge& first = g.edge(ex.path.edges.front());
  const DensityMatrix rho = prepare_state(first.start, model.spam);
  double v = first.start.sign * pauli_expectation(first.start.op, rho);
  v *= model.spam.term_fidelity(ex.vl);
  for (std::size_t id : ex.path.edges) v *= model.fidelities().at_flat(id);
  return v;
}

double check_path_identity(Rng& rng) {
  double worst = 0.0;
  for (int trial = 0; trial < 4; ++trial) {
    const CliffordTableau gate = random_clifford(2, rng);
    const NoiseModel model = random_model(1, 1, gate, 0.05, rng);
    const PatternTransferGraph g(gate, 1, 1);
    const auto ex = compile_path(random_path(g, 1 + trial % 3, rng), g);
    const double s = ex.total_sign * enumerate_expectation(ex.main, model);
    worst = std::max(worst, std::abs(s - path_prediction(ex, g, model)));
  }
  return worst;
}

double check_gauge(Rng& rng) {
  const CliffordTableau gate = CliffordTableau::cnot(2, 0, 1);
  const NoiseModel model = random_model(1, 1, gate, 0.3, rng);
  std::uniform_real_distribution<double> u(-0.5, 0.5);
  for (int attempt = 0; attempt < 20; ++attempt) {
    ZeroChain nu;
    for (uint32_t v = 1; v < 4; ++v) nu[v] = u(rng);
    NoiseModel gauged;
    try {
      gauged = gauge_transform(model, nu, 1.05);
    } catch (const NonPhysicalError&) {
      continue;
    }
    // Compiled paths carry signal; random circuits mostly average to zero.
    const PatternTransferGraph g(gate, 1, 1);
    double worst = 0.0, signal = 0.0;
    for (int c = 0; c < 4; ++c) {
      const CircuitSpec spec = c % 2 ? random_circuit(1, 1, 3, rng) : compile_path(random_path(g, 3, rng), g).main;
      const double before = enumerate_expectation(spec, model);
      signal = std::max(signal, std::abs(before));
      worst = std::max(worst, std::abs(before - enumerate_expectation(spec, gauged)));
    }
    double moved = 0.0;
    for (std::size_t i = 0; i < model.fidelities().values().size(); ++i) {
      moved = std::max(moved, std::abs(model.fidelities().at_flat(i) - gauged.fidelities().at_flat(i)));
    }
    if (signal < 1e-3 || moved < 1e-6) throw std::runtime_error("gauge check has no signal");
    return worst;
  }
  throw std::runtime_error("no physical gauge found");
}

CheckResult run_check(const std::string& name, double tol, const std::function<double()>& f) {
  CheckResult r{name, false, ""};
  try {
    const double err = f();
    r.passed = err <= tol;
    r.detail = "max error " + sci(err) + " (tol " + sci(tol) + ")";
  } catch (const std::exception& e) {
    r.detail = e.what();
  }
  return r;
}

}  // namespace

std::vector<CheckResult> run_invariant_suite(uint64_t seed) {
  std::vector<CheckResult> out;
  Rng rng(seed);
  out.push_back(run_check("transform-roundtrip", 1e-12, [&] { return check_transforms(rng); }));
  out.push_back(run_check("dual-vs-kraus", 1e-12, [&] { return check_dual(rng); }));
  out.push_back(run_check("twirl-fixed-point", 1e-10, [&] { return check_twirl(rng); }));
  out.push_back(run_check("path-identity", 1e-10, [&] { return check_path_identity(rng); }));
  out.push_back(run_check("gauge-invariance", 1e-10, [&] { return check_gauge(rng); }));
  out.push_back(run_check("cycle-basis", 1e-12, [&] {
    const PatternTransferGraph g(CliffordTableau::cnot(2, 0, 1), 1, 1);
    const auto basis = cycle_basis(g);
    double worst = basis.size() == cycle_space_dimension(g) ? 0.0 : 1.0;
    for (const auto& c : basis) worst = std::max(worst, max_abs(boundary(g, c)));
    return worst;
  }));
  out.push_back(run_check("rate-combinations", 1e-12, [&] {
    const PatternTransferGraph g(CliffordTableau::cnot(2, 0, 1), 1, 1);
    double worst = 0.0;
    for (const auto& rc : learnable_rate_combinations(g)) {
      RationalOneChain exact;
      const auto& s = g.shape();
      for (const auto& [f, w] : rc.weights) {
        for (const auto& [id, c] : error_rate_chain<Rational>(g, s.first_bits(f), s.second_bits(f), s.pauli(f))) {
          exact[id] += w * c;
        }
      }
      for (const auto& [v, c] : boundary(g, exact)) worst = std::max(worst, c == Rational(0) ? 0.0 : 1.0);
    }
    return worst;
  }));
  out.push_back(run_check("walsh-invariance", 0.0, [&] {
    return walsh_cycle_invariance_check(PatternTransferGraph(CliffordTableau::cnot(2, 0, 1), 0, 2)) ? 0.0 : 1.0;
  }));
  return out;
}

}  // namespace mcmcb
