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

#ifndef MCMCB_PROTOCOL_HPP
#define MCMCB_PROTOCOL_HPP

#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "mcmcb/noise_model.hpp"
#include "mcmcb/ptgraph.hpp"
#include "mcmcb/simulator.hpp"

namespace mcmcb {

class PathError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Sequence of edge ids e_1..e_l with dst(e_i) = src(e_{i+1}).
struct PathSpec {
  std::vector<std::size_t> edges;
};

/// Throws PathError if the path is empty, has unknown edges, or breaks the
/// path condition.
void validate_path(const PatternTransferGraph& g, const PathSpec& path);
bool is_closed(const PatternTransferGraph& g, const PathSpec& path);
/// `times` copies of a closed path. Throws PathError if it is not closed.
PathSpec concatenate(const PatternTransferGraph& g, const PathSpec& path, std::size_t times);
/// Edge multiplicities as a chain.
OneChain path_chain(const PathSpec& path);

/// Main and auxiliary circuits for one path.
struct CompiledExperiment {
  PathSpec path;
  CircuitSpec main;
  CircuitSpec aux;
  /// H_i (Q_i (x) Z^{y_i}) = sign_i * G^dagger(Q_{i+1} (x) Z^{x_{i+1}}).
  std::vector<int> sign_corrections;
  int total_sign = 1;
  uint32_t v0 = 0;  // pattern of the starting vertex
  uint32_t vl = 0;  // pattern of the final vertex
};

CompiledExperiment compile_path(const PathSpec& path, const PatternTransferGraph& g);

/// Source of shot records for circuits of a fixed shape.
class Backend {
 public:
  virtual ~Backend() = default;
  virtual std::size_t n() const = 0;
  virtual std::size_t m() const = 0;
  virtual std::vector<ShotRecord> run(const CircuitSpec& spec, std::size_t shots, uint64_t seed) const = 0;
  /// Exact E[(-1)^{sum m.mask} r] when the backend can compute it.
  virtual std::optional<double> exact_expectation(const CircuitSpec&) const { return std::nullopt; }
};

class SimulatedBackend : public Backend {
 public:
  explicit SimulatedBackend(NoiseModel model, RunOptions options = {});
  std::size_t n() const override { return model_.n(); }
  std::size_t m() const override { return model_.m(); }
  std::vector<ShotRecord> run(const CircuitSpec& spec, std::size_t shots, uint64_t seed) const override;
  std::optional<double> exact_expectation(const CircuitSpec& spec) const override;
  const NoiseModel& model() const { return model_; }

 private:
  NoiseModel model_;
  RunOptions options_;
};

/// Shots for one path: `circuits` compiled circuits of `shots_per_circuit`
/// shots each for the main experiment, and `aux_shots` split over the same
/// number of batches for the auxiliary one.
struct ShotBudget {
  std::size_t circuits = 100;
  std::size_t shots_per_circuit = 100;
  std::size_t aux_shots = 10000;

  std::size_t main_shots() const { return circuits * shots_per_circuit; }
  std::size_t total_shots() const { return main_shots() + aux_shots; }
  void validate() const;
};

struct EstimateOptions {
  bool exact = false;
  std::size_t bootstrap_replicates = 200;
  std::size_t workers = 1;
};

inline constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

struct EstimationReport {
  double value = kNaN;  // estimate of the path functional
  double std = kNaN;    // bootstrap standard deviation
  double s = kNaN;
  double t = kNaN;
  bool exact = false;
  bool failed = false;
  std::string failure;
  std::size_t circuits = 0;
  std::size_t main_shots = 0;
  std::size_t aux_shots = 0;
  /// Bootstrap replicates of `value`; NaN where the replicate ratio was not
  /// positive. Exact estimates repeat the value.
  std::vector<double> replicates;
  /// Concatenated estimates only.
  std::vector<std::size_t> repetitions;
  std::vector<double> log_ratios;
  double fit_residual = 0.0;
};

/// log(s/t) = -log lambda_M^{v0} + sum log lambda + log lambda_M^{vl}.
EstimationReport estimate_path(const CompiledExperiment& experiment, const Backend& backend,
                               const ShotBudget& budget, uint64_t seed, const EstimateOptions& options = {});

/// Runs the cycle concatenated L times for each L and fits log(s/t)
/// against L; the slope estimates the sum of log-fidelities on the cycle.
EstimationReport estimate_cycle_concatenated(const PathSpec& cycle, const PatternTransferGraph& g,
                                             const std::vector<std::size_t>& repetitions, const Backend& backend,
                                             const ShotBudget& budget, uint64_t seed,
                                             const EstimateOptions& options = {});

/// Predicted variance of (s/t)^{1/l} for total shot count N split evenly
/// between s and t:
///   2 (1 - l0^2) / (l^2 N / 2) + l0^2 (1 - lam^2) / (l N / 2).
double predict_variance(double length, double total_shots, double lambda0, double lambda);

/// Sample standard deviation ignoring NaN entries (NaN if fewer than two).
double nan_stddev(const std::vector<double>& v);

}  // namespace mcmcb

#endif  // MCMCB_PROTOCOL_HPP
