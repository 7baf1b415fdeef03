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

#include "mcmcb/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

namespace mcmcb {

namespace {

std::string rational_string(const Rational& r) {
  std::ostringstream os;
  os << (r < Rational(0) ? "-" : "+") << std::llabs(r.numerator());
  if (r.denominator() != 1) os << "/" << r.denominator();
  return os.str();
}

// Sum of coefficient * replicate across parts, NaN if any part is NaN.
std::vector<double> combine_replicates(const std::vector<WalkPart>& parts, std::size_t nrep) {
  std::vector<double> out(nrep, 0.0);
  for (const auto& p : parts) {
    for (std::size_t b = 0; b < nrep; ++b) out[b] += p.coefficient * p.report.replicates.at(b);
  }
  return out;
}

}  // namespace

ChainEstimate estimate_chain(const OneChain& chain, const PatternTransferGraph& g, const Backend& backend,
                             const ShotBudget& budget, uint64_t seed, const EstimateOptions& options,
                             std::size_t target_length) {
  OneChain c = chain;
  c.erase(0);  // e_{0,0}^I
  const std::size_t nrep = std::max<std::size_t>(options.bootstrap_replicates, 2);
  ChainEstimate out;
  if (c.empty()) {
    out.value = 0.0;
    out.std = 0.0;
    out.replicates.assign(nrep, 0.0);
    return out;
  }
  if (!is_learnable(g, c)) throw NotLearnableError("chain has a non-zero cut component");

  const auto dec = decompose_closed_walks(g, c);
  uint64_t stream = 0;
  if (dec) {
    out.scale = dec->scale;
    const double inv = 1.0 / static_cast<double>(dec->scale);
    for (int sign : {1, -1}) {
      for (const auto& w : sign > 0 ? dec->positive : dec->negative) {
        WalkPart part;
        part.walk.edges = w;
        part.coefficient = sign * inv;
        if (target_length > 0) {
          const double reps = std::round(static_cast<double>(target_length) / static_cast<double>(w.size()));
          part.repetitions = static_cast<std::size_t>(std::max(1.0, reps));
        }
        part.report = estimate_cycle_concatenated(part.walk, g, {part.repetitions}, backend, budget,
                                                  derive_seed(seed, stream++), options);
        out.parts.push_back(std::move(part));
      }
    }
  } else {
    out.per_edge = true;
    for (const auto& [id, coef] : c) {
      WalkPart part;
      part.walk.edges = {id};
      part.coefficient = coef;
      part.report = estimate_path(compile_path(part.walk, g), backend, budget, derive_seed(seed, stream++), options);
      out.parts.push_back(std::move(part));
    }
  }
  out.value = 0.0;
  for (const auto& p : out.parts) {
    if (p.report.failed) out.failed = true;
    out.value += p.coefficient * p.report.value;
  }
  if (out.failed) out.value = kNaN;
  out.replicates = combine_replicates(out.parts, nrep);
  out.std = options.exact ? 0.0 : nan_stddev(out.replicates);
  return out;
}

std::string chain_label(const PatternTransferGraph& g, const OneChain& chain) {
  std::ostringstream os;
  bool first = true;
  for (const auto& [id, c] : chain) {
    const Edge& e = g.edge(id);
    if (!first) os << ' ';
    first = false;
    os << (c < 0 ? "-" : "+");
    if (std::abs(std::abs(c) - 1.0) > 1e-12) os << std::abs(c) << '*';
    os << e.q.to_string() << '[' << bits_to_string(e.x, g.n()) << '|' << bits_to_string(e.y, g.n()) << ']';
  }
  return os.str();
}

CharacterizationResult characterize(const Backend& backend, const PatternTransferGraph& g,
                                    const CharacterizeOptions& options, uint64_t seed) {
  CharacterizationResult res;
  const auto basis = cycle_basis(g);
  for (std::size_t i = 0; i < basis.size(); ++i) {
    CycleEstimate est;
    est.cycle = basis[i];
    est.label = chain_label(g, est.cycle);
    est.trivial = est.cycle.size() == 1 && est.cycle.begin()->first == 0;
    for (const auto& kv : est.cycle) est.weight += std::abs(kv.second);
    est.estimate = estimate_chain(est.cycle, g, backend, options.budget, derive_seed(seed, i), options.estimate,
                                  options.target_length);
    est.directed = !est.estimate.per_edge && est.estimate.parts.size() == 1 &&
                   est.estimate.parts[0].coefficient > 0 && est.estimate.scale == 1;
    est.geo_mean = std::exp(est.estimate.value / est.weight);
    std::vector<double> geo;
    for (double r : est.estimate.replicates) geo.push_back(std::exp(r / est.weight));
    est.geo_std = options.estimate.exact ? 0.0 : nan_stddev(geo);
    res.cycles.push_back(std::move(est));
  }
  return res;
}

double predicted_geo_std(const CycleEstimate& est, const PatternTransferGraph& g, const NoiseModel& truth,
                         const ShotBudget& budget) {
  if (est.estimate.parts.empty()) return 0.0;
  const auto& fid = truth.fidelities();
  const auto term = truth.spam.term_fidelities();
  double var = 0.0;
  for (const auto& part : est.estimate.parts) {
    const auto& w = part.walk.edges;
    const double len = static_cast<double>(w.size());
    const double lam = std::exp(evaluate_log_fidelities(path_chain(part.walk), fid) / len);
    const Edge& first = g.edge(w.front());
    const DensityMatrix rho = prepare_state(first.start, truth.spam);
    const double overlap = first.start.sign * pauli_expectation(first.start.op, rho);
    const double lambda0 = overlap * term.at(g.edge(w.back()).dst);
    const double pv = predict_variance(len * static_cast<double>(part.repetitions),
                                       static_cast<double>(budget.total_shots()), lambda0, lam);
    var += part.coefficient * part.coefficient * len * len * pv / (lam * lam);
  }
  const double geo = std::exp(evaluate_log_fidelities(est.cycle, fid) / est.weight);
  return geo * std::sqrt(var) / est.weight;
}

double correlation_truth(const CorrelationQuery& q, const FidelityTable& fid) {
  auto l = [&](uint32_t x, uint32_t y) { return std::log(fid.at(x, y, q.q)); };
  return l(q.x1, q.y1) + l(q.x2, q.y2) - l(q.x2, q.y1) - l(q.x1, q.y2);
}

std::vector<CorrelationQuery> default_correlation_queries(const PatternTransferGraph& g) {
  if (g.n() == 0) throw std::invalid_argument("correlations need at least one ancilla");
  std::vector<CorrelationQuery> out;
  const uint32_t ones = (1u << g.n()) - 1;
  const std::size_t np = std::size_t{1} << (2 * g.m());
  for (std::size_t qi = 0; qi < np; ++qi) out.push_back({PauliOp::from_index(g.m(), qi), 0, ones, 0, ones});
  return out;
}

std::vector<CorrelationEstimate> independence_test(const Backend& backend, const PatternTransferGraph& g,
                                                   const std::vector<CorrelationQuery>& queries,
                                                   const ShotBudget& budget, uint64_t seed,
                                                   const EstimateOptions& options, double sigma_threshold) {
  std::vector<CorrelationEstimate> out;
  const uint32_t lim = 1u << g.n();
  for (std::size_t qi = 0; qi < queries.size(); ++qi) {
    const auto& q = queries[qi];
    if (!(q.x1 < q.x2 && q.y1 < q.y2)) throw std::invalid_argument("correlation query needs x1 < x2 and y1 < y2");
    if (q.x2 >= lim || q.y2 >= lim || q.q.n_qubits() != g.m()) throw std::invalid_argument("query out of range");
    CorrelationEstimate ce;
    ce.query = q;
    const std::pair<uint32_t, uint32_t> labels[4] = {{q.x1, q.y1}, {q.x2, q.y2}, {q.x2, q.y1}, {q.x1, q.y2}};
    const double signs[4] = {1.0, 1.0, -1.0, -1.0};
    std::vector<WalkPart> parts;
    for (int j = 0; j < 4; ++j) {
      WalkPart p;
      p.walk.edges = {g.edge_id(labels[j].first, labels[j].second, q.q)};
      p.coefficient = signs[j];
      p.report = estimate_path(compile_path(p.walk, g), backend, budget, derive_seed(seed, 4 * qi + j), options);
      ce.terms.push_back(p.report);
      parts.push_back(std::move(p));
    }
    ce.value = 0.0;
    for (const auto& p : parts) ce.value += p.coefficient * p.report.value;
    const auto reps = combine_replicates(parts, parts.front().report.replicates.size());
    ce.std = options.exact ? 0.0 : nan_stddev(reps);
    ce.consistent_with_zero = std::abs(ce.value) <= sigma_threshold * ce.std;
    out.push_back(std::move(ce));
  }
  return out;
}

RateEstimate reconstruct_error_rate(uint32_t a, uint32_t b, const PauliOp& p, const PatternTransferGraph& g,
                                    const Backend& backend, const ShotBudget& budget, std::size_t repetitions,
                                    uint64_t seed, const EstimateOptions& options) {
  if (repetitions == 0) throw std::invalid_argument("need at least one repetition");
  const OneChain chain = error_rate_chain<double>(g, a, b, p);
  const double delta = (a == 0 && b == 0 && p.is_identity()) ? 1.0 : 0.0;
  RateEstimate out;
  double sum = 0.0;
  for (std::size_t r = 0; r < repetitions; ++r) {
    out.repetitions.push_back(estimate_chain(chain, g, backend, budget, derive_seed(seed, r), options));
    const double v = out.repetitions.back().value + delta;
    out.repetition_values.push_back(v);
    sum += v;
  }
  out.value = sum / static_cast<double>(repetitions);
  out.std = repetitions > 1 ? nan_stddev(out.repetition_values) / std::sqrt(static_cast<double>(repetitions))
                            : out.repetitions.front().std;
  if (options.exact) out.std = 0.0;
  return out;
}

double linearized_rate(uint32_t a, uint32_t b, const PauliOp& p, const PatternTransferGraph& g,
                       const FidelityTable& fidelities) {
  const double delta = (a == 0 && b == 0 && p.is_identity()) ? 1.0 : 0.0;
  return evaluate_log_fidelities(error_rate_chain<double>(g, a, b, p), fidelities) + delta;
}

std::string RateCombination::label(const InstrumentShape& shape) const {
  std::ostringstream os;
  bool first = true;
  for (const auto& [f, w] : weights) {
    if (!first) os << ' ';
    first = false;
    os << rational_string(w) << "*p[" << rate_key(shape, f) << ']';
  }
  return os.str();
}

OneChain combination_chain(const PatternTransferGraph& g, const std::map<std::size_t, Rational>& weights) {
  RationalOneChain acc;
  const auto& s = g.shape();
  for (const auto& [f, w] : weights) {
    for (const auto& [id, c] : error_rate_chain<Rational>(g, s.first_bits(f), s.second_bits(f), s.pauli(f))) {
      acc[id] += w * c;
    }
  }
  for (auto it = acc.begin(); it != acc.end();) it = it->second == Rational(0) ? acc.erase(it) : std::next(it);
  return to_double(acc);
}

std::vector<RateCombination> learnable_rate_combinations(const PatternTransferGraph& g,
                                                         const std::vector<PauliOp>& stabilizers) {
  const auto& s = g.shape();
  const uint32_t lim = 1u << s.n;
  const std::size_t np = std::size_t{1} << (2 * s.m);
  std::vector<RateCombination> out;
  std::set<std::map<std::size_t, Rational>> seen;
  auto emit = [&](std::string origin, std::map<std::size_t, Rational> w) {
    for (auto it = w.begin(); it != w.end();) it = it->second == Rational(0) ? w.erase(it) : std::next(it);
    if (w.empty() || !seen.insert(w).second) return;
    RateCombination rc;
    rc.origin = std::move(origin);
    rc.weights = std::move(w);
    rc.chain = combination_chain(g, rc.weights);
    out.push_back(std::move(rc));
  };

  for (uint32_t a = 1; a < lim; ++a) {
    for (uint32_t b = 1; b < lim; ++b) {
      for (std::size_t pi = 0; pi < np; ++pi) emit("single", {{s.flat(a, b, pi), Rational(1)}});
    }
  }
  if (!stabilizers.empty()) {
    if (stabilizers.size() != s.n) throw std::invalid_argument("need one stabilizer per ancilla");
    const auto commutes = [&](const PauliOp& p) {
      return std::all_of(stabilizers.begin(), stabilizers.end(),
                         [&](const PauliOp& st) { return symplectic_inner(st, p) == 0; });
    };
    for (std::size_t pi = 0; pi < np; ++pi) {
      const PauliOp p = PauliOp::from_index(s.m, pi);
      if (!commutes(p)) continue;
      std::map<std::size_t, Rational> w;
      for (uint32_t k = 0; k < lim; ++k) w[s.flat(0, 0, (stabilizer_power(stabilizers, k) * p).index())] += 1;
      emit("stabilizer-sum", w);
    }
    for (uint32_t a = 1; a < lim; ++a) {
      for (std::size_t pi = 0; pi < np; ++pi) {
        const PauliOp p = PauliOp::from_index(s.m, pi);
        if (!commutes(p)) continue;
        std::map<std::size_t, Rational> w;
        for (uint32_t k = 0; k < lim; ++k) {
          const auto idx = (stabilizer_power(stabilizers, k) * p).index();
          w[s.flat(0, a, idx)] += 1;
          w[s.flat(a, 0, idx)] += 1;
        }
        emit("syndrome-flip", w);
      }
    }
  }

  // Kernel of (boundary o rate-chain map), by exact row reduction. Entries
  // are scaled by 4^{n+m} to integers.
  const std::size_t nf = s.table_size();
  const std::size_t nv = g.num_vertices();
  std::vector<std::vector<Rational>> mat(nv, std::vector<Rational>(nf, Rational(0)));
  for (std::size_t f = 0; f < nf; ++f) {
    for (std::size_t id = 0; id < g.num_edges(); ++id) {
      const Edge& e = g.edge(id);
      if (e.is_loop()) continue;
      const int sg = dot2(s.first_bits(f), e.x) ^ dot2(s.second_bits(f), e.y) ^ symplectic_inner(s.pauli(f), e.q);
      const Rational v(sg ? -1 : 1);
      mat[e.dst][f] += v;
      mat[e.src][f] -= v;
    }
  }
  std::vector<std::size_t> pivot_cols;
  std::size_t row = 0;
  for (std::size_t col = 0; col < nf && row < nv; ++col) {
    std::size_t piv = row;
    while (piv < nv && mat[piv][col] == Rational(0)) ++piv;
    if (piv == nv) continue;
    std::swap(mat[piv], mat[row]);
    const Rational inv = Rational(1) / mat[row][col];
    for (auto& v : mat[row]) v *= inv;
    for (std::size_t r = 0; r < nv; ++r) {
      if (r == row || mat[r][col] == Rational(0)) continue;
      const Rational f = mat[r][col];
      for (std::size_t c2 = col; c2 < nf; ++c2) mat[r][c2] -= f * mat[row][c2];
    }
    pivot_cols.push_back(col);
    ++row;
  }
  std::vector<bool> is_pivot(nf, false);
  for (std::size_t c : pivot_cols) is_pivot[c] = true;
  for (std::size_t col = 0; col < nf; ++col) {
    if (is_pivot[col]) continue;
    std::map<std::size_t, Rational> w{{col, Rational(1)}};
    for (std::size_t r = 0; r < pivot_cols.size(); ++r) {
      if (mat[r][col] != Rational(0)) w[pivot_cols[r]] = -mat[r][col];
    }
    emit("kernel", w);
  }
  return out;
}

}  // namespace mcmcb
