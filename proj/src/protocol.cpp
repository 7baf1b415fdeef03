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

#include "mcmcb/protocol.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <thread>

namespace mcmcb {

namespace {

struct BatchSum {
  double sum = 0.0;
  std::size_t count = 0;
};

double signed_value(const ShotRecord& rec, const std::vector<uint32_t>& masks) {
  int parity = 0;
  for (std::size_t i = 0; i < rec.outcomes.size(); ++i) parity ^= dot2(rec.outcomes[i], masks[i]);
  return parity ? -rec.r : rec.r;
}

// Runs `count` batches, each with its own derived seed, on up to `workers`
// threads. Results are indexed by batch so the thread count never matters.
std::vector<BatchSum> run_batches(const Backend& backend, const CircuitSpec& spec,
                                  const std::vector<std::size_t>& shots, uint64_t seed, std::size_t stream_offset,
                                  std::size_t workers) {
  std::vector<BatchSum> out(shots.size());
  auto work = [&](std::size_t begin, std::size_t step) {
    for (std::size_t i = begin; i < shots.size(); i += step) {
      if (shots[i] == 0) continue;
      const auto recs = backend.run(spec, shots[i], derive_seed(seed, stream_offset + 2 * i));
      BatchSum b;
      for (const auto& r : recs) b.sum += signed_value(r, spec.fourier_masks);
      b.count = recs.size();
      out[i] = b;
    }
  };
  workers = std::max<std::size_t>(1, std::min(workers, shots.size()));
  if (workers == 1) {
    work(0, 1);
  } else {
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work, w, workers);
    for (auto& t : pool) t.join();
  }
  return out;
}

std::pair<double, std::size_t> pooled(const std::vector<BatchSum>& b) {
  double s = 0.0;
  std::size_t c = 0;
  for (const auto& x : b) {
    s += x.sum;
    c += x.count;
  }
  return {s, c};
}

}  // namespace

void validate_path(const PatternTransferGraph& g, const PathSpec& path) {
  if (path.edges.empty()) throw PathError("path is empty");
  for (std::size_t id : path.edges) {
    if (id >= g.num_edges()) throw PathError("path has an unknown edge");
  }
  for (std::size_t i = 0; i + 1 < path.edges.size(); ++i) {
    if (g.edge(path.edges[i]).dst != g.edge(path.edges[i + 1]).src) {
      throw PathError("path condition fails between edges " + g.edge_key(path.edges[i]) + " and " +
                      g.edge_key(path.edges[i + 1]));
    }
  }
}

bool is_closed(const PatternTransferGraph& g, const PathSpec& path) {
  validate_path(g, path);
  return g.edge(path.edges.back()).dst == g.edge(path.edges.front()).src;
}

PathSpec concatenate(const PatternTransferGraph& g, const PathSpec& path, std::size_t times) {
  if (!is_closed(g, path)) throw PathError("only closed paths can be concatenated");
  if (times == 0) throw PathError("repetition count must be positive");
  PathSpec out;
  for (std::size_t t = 0; t < times; ++t) out.edges.insert(out.edges.end(), path.edges.begin(), path.edges.end());
  return out;
}

OneChain path_chain(const PathSpec& path) {
  OneChain c;
  for (std::size_t id : path.edges) c[id] += 1.0;
  return c;
}

CompiledExperiment compile_path(const PathSpec& path, const PatternTransferGraph& g) {
  validate_path(g, path);
  const std::size_t n = g.n();
  const std::size_t m = g.m();
  const std::size_t nq = n + m;
  CompiledExperiment ex;
  ex.path = path;
  const Edge& first = g.edge(path.edges.front());
  const Edge& last = g.edge(path.edges.back());
  ex.v0 = first.src;
  ex.vl = last.dst;

  ex.main.n = ex.aux.n = n;
  ex.main.m = ex.aux.m = m;
  ex.main.initial = first.start;
  for (std::size_t i = 0; i < path.edges.size(); ++i) {
    const Edge& e = g.edge(path.edges[i]);
    ex.main.fourier_masks.push_back(e.x ^ e.y);
    if (i + 1 == path.edges.size()) break;
    const Edge& next = g.edge(path.edges[i + 1]);
    std::vector<CliffordTableau> factors;
    for (std::size_t q = 0; q < nq; ++q) {
      factors.push_back(solve_single_qubit_clifford(e.end.factor(q), next.start.op.factor(q)));
    }
    CliffordTableau h = CliffordTableau::tensor(factors);
    const SignedPauli img = h.conjugate(e.end);
    if (img.op != next.start.op || img.sign != 1) throw std::logic_error("interleaver does not map the edge labels");
    ex.sign_corrections.push_back(next.start.sign);
    ex.total_sign *= next.start.sign;
    ex.main.interleavers.push_back(std::move(h));
  }
  ex.main.terminating = SignedPauli{last.end, 1};
  ex.aux.initial = first.start;
  ex.aux.terminating = first.start;
  ex.main.validate();
  ex.aux.validate();
  return ex;
}

SimulatedBackend::SimulatedBackend(NoiseModel model, RunOptions options)
    : model_(std::move(model)), options_(options) {}

std::vector<ShotRecord> SimulatedBackend::run(const CircuitSpec& spec, std::size_t shots, uint64_t seed) const {
  return run_circuit(spec, model_, shots, seed, options_);
}

std::optional<double> SimulatedBackend::exact_expectation(const CircuitSpec& spec) const {
  return enumerate_expectation(spec, model_);
}

void ShotBudget::validate() const {
  if (circuits == 0 || shots_per_circuit == 0 || aux_shots == 0) {
    throw std::invalid_argument("shot budget must be positive");
  }
}

double nan_stddev(const std::vector<double>& v) {
  double sum = 0.0;
  std::size_t c = 0;
  for (double x : v) {
    if (std::isnan(x)) continue;
    sum += x;
    ++c;
  }
  if (c < 2) return kNaN;
  const double mean = sum / static_cast<double>(c);
  double ss = 0.0;
  for (double x : v) {
    if (!std::isnan(x)) ss += (x - mean) * (x - mean);
  }
  return std::sqrt(ss / static_cast<double>(c - 1));
}

EstimationReport estimate_path(const CompiledExperiment& ex, const Backend& backend, const ShotBudget& budget,
                               uint64_t seed, const EstimateOptions& options) {
  if (backend.n() != ex.main.n || backend.m() != ex.main.m) throw std::invalid_argument("backend has wrong shape");
  EstimationReport rep;
  const std::size_t nrep = std::max<std::size_t>(options.bootstrap_replicates, 2);
  if (options.exact) {
    const auto s = backend.exact_expectation(ex.main);
    const auto t = backend.exact_expectation(ex.aux);
    if (!s || !t) throw std::invalid_argument("backend has no exact mode");
    rep.exact = true;
    rep.s = ex.total_sign * *s;
    rep.t = *t;
    rep.std = 0.0;
    if (!(rep.s / rep.t > 0.0)) {
      rep.failed = true;
      rep.failure = "s/t is not positive";
      rep.replicates.assign(nrep, kNaN);
      return rep;
    }
    rep.value = std::log(rep.s / rep.t);
    rep.replicates.assign(nrep, rep.value);
    return rep;
  }

  budget.validate();
  std::vector<std::size_t> main_shots(budget.circuits, budget.shots_per_circuit);
  std::vector<std::size_t> aux_shots(budget.circuits, budget.aux_shots / budget.circuits);
  for (std::size_t i = 0; i < budget.aux_shots % budget.circuits; ++i) ++aux_shots[i];
  const auto main = run_batches(backend, ex.main, main_shots, seed, 0, options.workers);
  const auto aux = run_batches(backend, ex.aux, aux_shots, seed, 1, options.workers);
  const auto [ms, mc] = pooled(main);
  const auto [as, ac] = pooled(aux);
  rep.circuits = budget.circuits;
  rep.main_shots = mc;
  rep.aux_shots = ac;
  rep.s = ex.total_sign * ms / static_cast<double>(mc);
  rep.t = as / static_cast<double>(ac);

  // Bootstrap over compiled circuits (main) and batches (aux).
  Rng rng(derive_seed(seed, 0xB0075ULL));
  std::uniform_int_distribution<std::size_t> pick(0, budget.circuits - 1);
  rep.replicates.resize(nrep);
  for (std::size_t b = 0; b < nrep; ++b) {
    double s1 = 0.0, t1 = 0.0;
    std::size_t c1 = 0, c2 = 0;
    for (std::size_t i = 0; i < budget.circuits; ++i) {
      const auto& x = main[pick(rng)];
      s1 += x.sum;
      c1 += x.count;
    }
    for (std::size_t i = 0; i < budget.circuits; ++i) {
      const auto& x = aux[pick(rng)];
      t1 += x.sum;
      c2 += x.count;
    }
    const double ratio = (ex.total_sign * s1 / static_cast<double>(c1)) / (t1 / static_cast<double>(c2));
    rep.replicates[b] = ratio > 0.0 ? std::log(ratio) : kNaN;
  }
  rep.std = nan_stddev(rep.replicates);
  if (!(rep.s / rep.t > 0.0)) {
    rep.failed = true;
    rep.failure = "s/t is not positive";
    return rep;
  }
  rep.value = std::log(rep.s / rep.t);
  return rep;
}

EstimationReport estimate_cycle_concatenated(const PathSpec& cycle, const PatternTransferGraph& g,
                                             const std::vector<std::size_t>& repetitions, const Backend& backend,
                                             const ShotBudget& budget, uint64_t seed,
                                             const EstimateOptions& options) {
  if (repetitions.empty()) throw std::invalid_argument("need at least one repetition count");
  if (!is_closed(g, cycle)) throw PathError("concatenation needs a closed path");
  std::vector<EstimationReport> parts;
  EstimationReport out;
  out.repetitions = repetitions;
  out.exact = options.exact;
  for (std::size_t i = 0; i < repetitions.size(); ++i) {
    const auto ex = compile_path(concatenate(g, cycle, repetitions[i]), g);
    parts.push_back(estimate_path(ex, backend, budget, derive_seed(seed, i), options));
    out.circuits += parts.back().circuits;
    out.main_shots += parts.back().main_shots;
    out.aux_shots += parts.back().aux_shots;
    out.log_ratios.push_back(parts.back().value);
    if (parts.back().failed) {
      out.failed = true;
      out.failure = "L=" + std::to_string(repetitions[i]) + ": " + parts.back().failure;
    }
  }
  // Slope of log(s/t) against L: through the origin for a single L,
  // ordinary least squares otherwise.
  auto fit = [&](const std::vector<double>& y, double* residual) {
    if (repetitions.size() == 1) {
      if (residual) *residual = 0.0;
      return y[0] / static_cast<double>(repetitions[0]);
    }
    const double k = static_cast<double>(repetitions.size());
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < y.size(); ++i) {
      mx += static_cast<double>(repetitions[i]) / k;
      my += y[i] / k;
    }
    double sxy = 0.0, sxx = 0.0;
    for (std::size_t i = 0; i < y.size(); ++i) {
      const double dx = static_cast<double>(repetitions[i]) - mx;
      sxy += dx * (y[i] - my);
      sxx += dx * dx;
    }
    const double slope = sxy / sxx;
    if (residual) {
      double r = 0.0;
      for (std::size_t i = 0; i < y.size(); ++i) {
        r = std::max(r, std::abs(y[i] - (my + slope * (static_cast<double>(repetitions[i]) - mx))));
      }
      *residual = r;
    }
    return slope;
  };
  if (!out.failed) out.value = fit(out.log_ratios, &out.fit_residual);
  const std::size_t nrep = parts.front().replicates.size();
  out.replicates.resize(nrep);
  for (std::size_t b = 0; b < nrep; ++b) {
    std::vector<double> y;
    for (const auto& p : parts) y.push_back(p.replicates[b]);
    const bool bad = std::any_of(y.begin(), y.end(), [](double v) { return std::isnan(v); });
    out.replicates[b] = bad ? kNaN : fit(y, nullptr);
  }
  out.std = options.exact ? 0.0 : nan_stddev(out.replicates);
  if (parts.size() == 1) {
    out.s = parts[0].s;
    out.t = parts[0].t;
  }
  return out;
}

double predict_variance(double length, double total_shots, double lambda0, double lambda) {
  if (!(length > 0.0) || !(total_shots > 0.0)) throw std::invalid_argument("length and shots must be positive");
  const double half = total_shots / 2.0;
  return 2.0 * (1.0 - lambda0 * lambda0) / (length * length * half) +
         lambda0 * lambda0 * (1.0 - lambda * lambda) / (length * half);
}

}  // namespace mcmcb
