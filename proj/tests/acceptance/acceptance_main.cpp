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


// Acceptance gate: runs every criterion and prints one PASS/FAIL line each.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "../oracles.hpp"
#include "mcmcb/analysis.hpp"
#include "mcmcb/noise_model.hpp"
#include "mcmcb/protocol.hpp"
#include "mcmcb/ptgraph.hpp"
#include "mcmcb/simulator.hpp"

namespace mcmcb {
namespace {

struct Outcome {
  bool passed = false;
  std::string detail;
};

std::string fmt(const char* f, double a, double b = 0.0, double c = 0.0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c);
  return buf;
}

const std::vector<std::pair<std::size_t, std::size_t>> kShapes = {{1, 1}, {1, 2}, {2, 1}};

Matrix to_matrix(const PauliVector& c, std::size_t nq) { return from_pauli_vector(c, nq); }

PathSpec walk(const PatternTransferGraph& g, std::size_t len, Rng& rng) {
  std::vector<uint32_t> starts;
  for (uint32_t v = 0; v < g.num_vertices(); ++v) {
    if (!g.out_edges(v).empty()) starts.push_back(v);
  }
  uint32_t v = starts[std::uniform_int_distribution<std::size_t>(0, starts.size() - 1)(rng)];
  PathSpec p;
  while (p.edges.size() < len && !g.out_edges(v).empty()) {
    const auto& out = g.out_edges(v);
    p.edges.push_back(out[std::uniform_int_distribution<std::size_t>(0, out.size() - 1)(rng)]);
    v = g.edge(p.edges.back()).dst;
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
  c.terminating = SignedPauli{PauliOp::from_index(nq, pauli(rng)), 1};
  return c;
}

RationalOneChain rational_chain(const PatternTransferGraph& g, const std::map<std::size_t, Rational>& weights) {
  RationalOneChain out;
  const auto& s = g.shape();
  for (const auto& [f, w] : weights) {
    for (const auto& [id, c] : error_rate_chain<Rational>(g, s.first_bits(f), s.second_bits(f), s.pauli(f))) {
      out[id] += w * c;
    }
  }
  return out;
}

bool zero_boundary(const PatternTransferGraph& g, const RationalOneChain& c) {
  for (const auto& [v, x] : boundary(g, c)) {
    if (x != Rational(0)) return false;
  }
  return true;
}

// 1. Fast transform against the quadruple sum, and back.
Outcome transform_correctness() {
  double worst = 0.0, worst_id = 0.0;
  for (int i = 0; i < 50; ++i) {
    const auto [n, m] = kShapes[i % 3];
    const auto inst = random_instrument(n, m, 0.02 + 0.002 * i, 1000 + i);
    const auto fid = fidelities_from_rates(inst);
    const auto naive = oracle::naive_fidelities(inst);
    const auto back = rates_from_fidelities_raw(fid);
    for (std::size_t k = 0; k < naive.size(); ++k) {
      worst = std::max({worst, std::abs(fid.values()[k] - naive[k]), std::abs(back[k] - inst.rates()[k])});
    }
    worst_id = std::max(worst_id, std::abs(fid.at(0, 0, PauliOp(m)) - 1.0));
  }
  return {worst < 1e-12 && worst_id < 1e-12, fmt("max error %.2e, |lambda00I - 1| %.2e", worst, worst_id)};
}

// 2. Dual form against the Kraus form.
Outcome dual_equivalence() {
  Rng rng(2);
  double worst = 0.0, worst_oracle = 0.0;
  for (int i = 0; i < 20; ++i) {
    const auto [n, m] = kShapes[i % 3];
    const std::size_t nq = n + m;
    const NoisyMeasurement mcm(random_instrument(n, m, 0.1, rng()), random_clifford(nq, rng));
    const Matrix rho = oracle::random_density(nq, rng);
    const uint32_t k = std::uniform_int_distribution<uint32_t>(0, (1u << n) - 1)(rng);
    const Matrix phys = apply_instrument_physical(mcm, rho, k);
    const Matrix dual = to_matrix(apply_instrument_dual(mcm.fidelities, mcm.gate, to_pauli_vector(rho), k), nq);
    worst = std::max(worst, (phys - dual).cwiseAbs().maxCoeff());
    const Matrix ref = oracle::physical(mcm.instrument, mcm.gate_unitary, rho, k);
    worst_oracle = std::max(worst_oracle, (phys - ref).cwiseAbs().maxCoeff());
  }
  return {worst < 1e-12 && worst_oracle < 1e-12, fmt("dual vs Kraus %.2e, Kraus vs oracle %.2e", worst, worst_oracle)};
}

// 3. Frame averaging yields a uniform stochastic instrument and fixes one.
Outcome twirl_fixed_point() {
  Rng rng(3);
  const CliffordTableau gate = CliffordTableau::cnot(2, 0, 1);
  const Matrix u = gate.unitary();
  double worst_k = 0.0, worst_norm = 0.0, min_rate = 1.0, worst_fixed = 0.0;
  for (int i = 0; i < 10; ++i) {
    const auto gi = GeneralInstrument::random(1, 1, gate, 0.2, rng);
    const auto usi = twirl_average(gi, gate);
    double sum = 0.0;
    for (double p : usi.rates()) {
      sum += p;
      min_rate = std::min(min_rate, p);
    }
    worst_norm = std::max(worst_norm, std::abs(sum - 1.0));
    // Every outcome of the frame-averaged instrument is the same USI.
    const Matrix rho = oracle::random_density(2, rng);
    for (uint32_t k = 0; k < 2; ++k) {
      const Matrix diff = oracle::twirled(gi, u, rho, k) - oracle::physical(usi, u, rho, k);
      worst_k = std::max(worst_k, diff.cwiseAbs().maxCoeff());
    }
    const auto inst = random_instrument(1, 1, 0.1, rng());
    const auto again = twirl_average(GeneralInstrument::from_noisy_measurement(NoisyMeasurement(inst, gate)), gate);
    const auto f0 = fidelities_from_rates(inst), f1 = fidelities_from_rates(again);
    for (std::size_t j = 0; j < f0.values().size(); ++j) {
      worst_fixed = std::max(worst_fixed, std::abs(f0.values()[j] - f1.values()[j]));
    }
  }
  const bool ok = worst_k < 1e-10 && worst_norm < 1e-10 && min_rate > -1e-10 && worst_fixed < 1e-10;
  return {ok, fmt("outcome mismatch %.2e, norm %.2e, fixed point %.2e", worst_k, worst_norm, worst_fixed) +
                  fmt(", min rate %.2e", min_rate)};
}

// 4. Graph goldens, edge for edge.
Outcome graph_golden() {
  using Golden = std::map<std::string, std::pair<std::string, std::string>>;
  Golden left, right;
  left["0|1|I"] = {"00", "01"};
  left["1|0|Z"] = {"01", "10"};
  left["0|1|Z"] = {"10", "11"};
  left["1|0|I"] = {"11", "00"};
  for (const char* k : {"0|0|X", "1|0|X", "0|0|Y", "1|0|Y"}) left[k] = {"11", "10"};
  left["1|1|I"] = {"11", "01"};
  left["1|1|Z"] = {"01", "11"};
  left["0|0|I"] = {"00", "00"};
  left["0|0|Z"] = {"10", "10"};
  for (const char* k : {"0|1|X", "1|1|X", "0|1|Y", "1|1|Y"}) left[k] = {"11", "11"};
  right["||II"] = {"00", "00"};
  right["||IX"] = {"01", "01"};
  right["||ZI"] = {"10", "10"};
  for (const char* q : {"XZ", "ZX", "YY", "XY", "YZ"}) right[std::string("||") + q] = {"11", "11"};
  for (const char* q : {"IZ", "IY"}) right[std::string("||") + q] = {"11", "01"};
  for (const char* q : {"ZY", "ZZ"}) right[std::string("||") + q] = {"01", "11"};
  for (const char* q : {"XI", "YI"}) right[std::string("||") + q] = {"11", "10"};
  for (const char* q : {"YX", "XX"}) right[std::string("||") + q] = {"10", "11"};
  int mismatches = 0;
  auto check = [&](const PatternTransferGraph& g, const Golden& gold) {
    if (g.num_edges() != gold.size()) ++mismatches;
    for (const auto& [k, ends] : gold) {
      const Edge& e = g.edge(g.parse_edge_key(k));
      if (g.vertex_label(e.src) != ends.first || g.vertex_label(e.dst) != ends.second) ++mismatches;
    }
  };
  const PatternTransferGraph gl(CliffordTableau::cnot(2, 0, 1), 1, 1);
  check(gl, left);
  check(PatternTransferGraph(CliffordTableau::cnot(2, 0, 1), 0, 2), right);
  const std::size_t basis = cycle_basis(gl).size();
  return {mismatches == 0 && basis == 13 && cycle_space_dimension(gl) == 13,
          fmt("%.0f edge mismatches, cycle basis size %.0f", mismatches, static_cast<double>(basis))};
}

// 5. Circuit expectation equals the product along the path.
Outcome path_identity() {
  Rng rng(5);
  double worst = 0.0, worst_branch = 0.0, smallest = 1.0;
  for (int i = 0; i < 20; ++i) {
    const auto [n, m] = kShapes[i % 3];
    const std::size_t nq = n + m;
    const CliffordTableau gate = random_clifford(nq, rng);
    SpamModel spam = SpamModel::random(nq, 0.03, rng());
    spam.prep_state = oracle::random_density(nq, rng);
    const NoiseModel model(random_instrument(n, m, 0.05, rng()), gate, spam);
    const PatternTransferGraph g(gate, n, m);
    const auto ex = compile_path(walk(g, 1 + i % 4, rng), g);
    const Edge& first = g.edge(ex.path.edges.front());
    double predicted = first.start.sign * pauli_expectation(first.start.op, *spam.prep_state);
    predicted *= spam.term_fidelity(ex.vl);
    for (std::size_t id : ex.path.edges) {
      const Edge& e = g.edge(id);
      predicted *= model.fidelities().at(e.x, e.y, e.q);
    }
    const double layered = ex.total_sign * enumerate_expectation(ex.main, model);
    double branches = 0.0;
    for (const auto& br : enumerate_outcomes(ex.main, model)) {
      int parity = 0;
      for (std::size_t j = 0; j < br.outcomes.size(); ++j) parity ^= dot2(br.outcomes[j], ex.main.fourier_masks[j]);
      branches += parity ? -br.r_moment : br.r_moment;
    }
    worst = std::max(worst, std::abs(layered - predicted));
    worst_branch = std::max(worst_branch, std::abs(ex.total_sign * branches - predicted));
    smallest = std::min(smallest, std::abs(predicted));
  }
  return {worst < 1e-10 && worst_branch < 1e-10,
          fmt("layered %.2e, branch sum %.2e, smallest |prediction| %.2e", worst, worst_branch, smallest)};
}

// 6. Gauge transformations leave circuits and cycle functionals unchanged.
Outcome gauge_invariance() {
  Rng rng(6);
  const CliffordTableau gate = CliffordTableau::cnot(2, 0, 1);
  const PatternTransferGraph g(gate, 1, 1);
  const NoiseModel model(random_instrument(1, 1, 0.3, 61), gate, SpamModel::random(2, 0.1, 62));
  const auto basis = cycle_basis(g);
  std::uniform_real_distribution<double> u(-0.5, 0.5);
  double worst_circuit = 0.0, worst_cycle = 0.0, worst_cut = 0.0, max_shift = 0.0, signal = 0.0;
  int gauges = 0, retries = 0;
  for (double eta : {1.02, 1.05}) {
    for (int i = 0; i < 10; ++i) {
      ZeroChain nu;
      NoiseModel gauged;
      for (;;) {
        nu.clear();
        for (uint32_t v = 1; v < 4; ++v) nu[v] = u(rng);
        try {
          gauged = gauge_transform(model, nu, eta);
          break;
        } catch (const NonPhysicalError&) {
          if (++retries > 1000) return {false, "no physical gauge found"};
        }
      }
      ++gauges;
      for (int c = 0; c < 10; ++c) {
        const CircuitSpec spec = c % 2 ? random_circuit(1, 1, 3, rng) : compile_path(walk(g, 3, rng), g).main;
        const double before = enumerate_expectation(spec, model);
        signal = std::max(signal, std::abs(before));
        worst_circuit = std::max(worst_circuit, std::abs(before - enumerate_expectation(spec, gauged)));
      }
      for (const auto& cyc : basis) {
        worst_cycle = std::max(worst_cycle, std::abs(evaluate_log_fidelities(cyc, model.fidelities()) -
                                                     evaluate_log_fidelities(cyc, gauged.fidelities())));
      }
      const OneChain dnu = coboundary(g, nu);
      std::vector<OneChain> cuts = {dnu};
      for (uint32_t v = 0; v < 4; ++v) cuts.push_back(coboundary(g, ZeroChain{{v, 1.0}}));
      for (const auto& mu : cuts) {
        const double shift = evaluate_log_fidelities(mu, gauged.fidelities()) -
                             evaluate_log_fidelities(mu, model.fidelities());
        worst_cut = std::max(worst_cut, std::abs(shift - inner(dnu, mu) * std::log(eta)));
        max_shift = std::max(max_shift, std::abs(shift));
      }
    }
  }
  const bool ok = gauges == 20 && worst_circuit < 1e-10 && worst_cycle < 1e-10 && worst_cut < 1e-10 &&
                  max_shift > 1e-6 && signal > 1e-3;
  return {ok, fmt("circuits %.2e, cycles %.2e, cut shift error %.2e", worst_circuit, worst_cycle, worst_cut) +
                  fmt(", largest cut shift %.2e, %.0f retries", max_shift, retries)};
}

// 7. Every basis cycle at the reference budget.
Outcome cycle_reproduction() {
  const CliffordTableau gate = CliffordTableau::cnot(2, 0, 1);
  const PatternTransferGraph g(gate, 1, 1);
  const NoiseModel model(random_instrument(1, 1, 0.01, 71), gate, SpamModel::random(2, 0.01, 72));
  const SimulatedBackend backend(model);
  CharacterizeOptions opt;
  opt.budget = ShotBudget{100, 100, 10000};
  opt.target_length = 12;
  const auto res = characterize(backend, g, opt, 73);
  int within = 0, std_ok = 0, nontrivial = 0;
  double lo = 1e9, hi = 0.0;
  for (const auto& c : res.cycles) {
    const double truth = std::exp(evaluate_log_fidelities(c.cycle, model.fidelities()) / c.weight);
    if (c.trivial) {
      within += std::abs(c.geo_mean - truth) < 1e-12;
      continue;
    }
    ++nontrivial;
    if (!c.estimate.failed && std::abs(c.geo_mean - truth) <= 3.0 * c.geo_std) ++within;
    const double ratio = c.geo_std / predicted_geo_std(c, g, model, opt.budget);
    lo = std::min(lo, ratio);
    hi = std::max(hi, ratio);
    std_ok += ratio >= 0.5 && ratio <= 2.0;
  }
  const bool ok = res.cycles.size() == 13 && within >= 12 && std_ok == nontrivial;
  return {ok, fmt("%.0f/13 within 3 std, bootstrap/predicted std in [%.2f, %.2f]", within, lo, hi)};
}

// 8. Ancilla correlations at 1e5 shots per log-fidelity.
Outcome independence() {
  const CliffordTableau gate = CliffordTableau::cnot(2, 0, 1);
  const PatternTransferGraph g(gate, 1, 1);
  const ShotBudget budget{100, 500, 50000};
  const auto queries = default_correlation_queries(g);
  const SimulatedBackend map(
      NoiseModel(random_measure_and_prepare(1, 1, 0.02, 81).induced(), gate, SpamModel::random(2, 0.01, 82)));
  int consistent = 0;
  double worst_z = 0.0;
  for (const auto& e : independence_test(map, g, queries, budget, 83)) {
    consistent += e.consistent_with_zero;
    worst_z = std::max(worst_z, std::abs(e.value) / e.std);
  }
  const auto planted = random_instrument(1, 1, 0.02, 84, {{1, 1, PauliOp::from_string("I"), 0.01}});
  const SimulatedBackend generic(NoiseModel(planted, gate, SpamModel::random(2, 0.01, 85)));
  int flagged = 0;
  double best_snr = 0.0;
  for (const auto& e : independence_test(generic, g, queries, budget, 86)) {
    const double truth = correlation_truth(e.query, generic.model().fidelities());
    const double snr = std::abs(truth) / e.std;
    if (snr >= 10.0) {
      best_snr = std::max(best_snr, snr);
      flagged += !e.consistent_with_zero;
    }
  }
  return {consistent == 4 && flagged >= 1,
          fmt("measure-and-prepare %.0f/4 consistent (max |z| %.2f), ", consistent, worst_z) +
              fmt("%.0f planted flagged (truth/std %.1f)", flagged, best_snr)};
}

// 9. Coverage of the single-rate estimate over repeated experiments.
Outcome error_rate_coverage() {
  const CliffordTableau gate = CliffordTableau::cnot(2, 0, 1);
  const PatternTransferGraph g(gate, 1, 1);
  const auto& shape = g.shape();
  const PauliOp id = PauliOp::from_string("I");
  auto base = random_instrument(1, 1, 0.01, 91);
  std::vector<double> rates = base.rates();
  const double target = 2.79e-4;
  rates[shape.flat(0, 0, 0)] += rates[shape.flat(1, 1, 0)] - target;
  rates[shape.flat(1, 1, 0)] = target;
  const UniformStochasticInstrument inst(1, 1, rates);
  const SimulatedBackend backend(NoiseModel(inst, gate, SpamModel::random(2, 0.01, 92)));
  const double truth = inst.rate(1, 1, id);
  const ShotBudget budget{100, 10, 1000};
  int covered = 0;
  std::size_t shots = 0;
  double mean_std = 0.0;
  for (int r = 0; r < 100; ++r) {
    const auto est = reconstruct_error_rate(1, 1, id, g, backend, budget, 10, derive_seed(93, r));
    covered += std::abs(est.value - truth) <= 3.0 * est.std;
    mean_std += est.std / 100.0;
    if (r == 0) {
      for (const auto& rep : est.repetitions) {
        for (const auto& part : rep.parts) shots += part.report.main_shots + part.report.aux_shots;
      }
    }
  }
  return {covered >= 95 && shots == 40000,
          fmt("%.0f/100 within 3 std, %.0f shots per experiment, mean std %.2e", covered, static_cast<double>(shots),
              mean_std)};
}

// 10. Exact boundaries of every emitted chain, and the Walsh image.
Outcome chain_boundaries() {
  int chains = 0, bad = 0;
  auto count = [&](const PatternTransferGraph& g, const RationalOneChain& c) {
    ++chains;
    bad += !zero_boundary(g, c);
  };
  const PatternTransferGraph cnot(CliffordTableau::cnot(2, 0, 1), 1, 1);
  for (uint64_t pi = 0; pi < 4; ++pi) {
    const PauliOp p = PauliOp::from_index(1, pi);
    count(cnot, error_rate_chain<Rational>(cnot, 1, 1, p));
    count(cnot, proposition_chain<Rational>(cnot, PropositionKind::kSingleRate, 1, 1, p, {}));
  }
  for (const auto& rc : learnable_rate_combinations(cnot)) count(cnot, rational_chain(cnot, rc.weights));

  const std::vector<PauliOp> stab = {PauliOp::from_string("ZZ"), PauliOp::from_string("XX")};
  const PatternTransferGraph syn(build_syndrome_tableau(stab), 2, 2);
  for (uint64_t pi = 0; pi < 16; ++pi) {
    const PauliOp p = PauliOp::from_index(2, pi);
    for (uint32_t a = 1; a < 4; ++a) {
      for (uint32_t b = 1; b < 4; ++b) count(syn, proposition_chain<Rational>(syn, PropositionKind::kSingleRate, a, b, p, stab));
    }
    bool commutes = true;
    for (const auto& s : stab) commutes = commutes && symplectic_inner(s, p) == 0;
    if (!commutes) continue;
    count(syn, proposition_chain<Rational>(syn, PropositionKind::kStabilizerSum, 0, 0, p, stab));
    for (uint32_t a = 1; a < 4; ++a) count(syn, proposition_chain<Rational>(syn, PropositionKind::kSyndromeFlip, a, 0, p, stab));
  }
  for (const auto& rc : learnable_rate_combinations(syn, stab)) count(syn, rational_chain(syn, rc.weights));

  Rng rng(10);
  int walsh_ok = walsh_cycle_invariance_check(PatternTransferGraph(CliffordTableau::cnot(2, 0, 1), 0, 2));
  for (int i = 0; i < 3; ++i) walsh_ok += walsh_cycle_invariance_check(PatternTransferGraph(random_clifford(2, rng), 0, 2));
  return {bad == 0 && walsh_ok == 4,
          fmt("%.0f chains, %.0f with nonzero boundary, ", chains, bad) + fmt("Walsh invariance %.0f/4", walsh_ok)};
}

}  // namespace
}  // namespace mcmcb

int main() {
  using namespace mcmcb;
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
      {"transform-correctness", transform_correctness},
      {"dual-equivalence", dual_equivalence},
      {"twirl-fixed-point", twirl_fixed_point},
      {"graph-golden", graph_golden},
      {"path-identity", path_identity},
      {"gauge-invariance", gauge_invariance},
      {"cycle-reproduction", cycle_reproduction},
      {"independence", independence},
      {"error-rate-coverage", error_rate_coverage},
      {"chain-boundaries", chain_boundaries},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome out;
    try {
      out = criteria[i].second();
    } catch (const std::exception& e) {
      out = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("%s %2zu %s: %s [%.1f s]\n", out.passed ? "PASS" : "FAIL", i + 1, criteria[i].first,
                out.detail.c_str(), secs);
    std::fflush(stdout);
    failed += !out.passed;
  }
  return failed == 0 ? 0 : 1;
}
