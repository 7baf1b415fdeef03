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

#ifndef MCMCB_ANALYSIS_HPP
#define MCMCB_ANALYSIS_HPP

#include <cstddef>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "mcmcb/protocol.hpp"

namespace mcmcb {

class NotLearnableError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// One directed walk estimated as part of a chain.
struct WalkPart {
  PathSpec walk;
  double coefficient = 1.0;  // weight of this walk in the chain estimate
  std::size_t repetitions = 1;
  EstimationReport report;    // value = sum of log-fidelities along the walk
};

struct ChainEstimate {
  double value = kNaN;  // estimate of sum_e c_e log lambda_e
  double std = kNaN;
  bool failed = false;
  bool per_edge = false;  // estimated edge by edge instead of by closed walks
  long long scale = 1;
  std::vector<WalkPart> parts;
  std::vector<double> replicates;
};

/// Estimates a cycle-space chain. The chain is scaled to integers and split
/// as W+ - W- into closed directed walks, each concatenated to about
/// `target_length` edges (0 disables concatenation). If no such split
/// exists, each edge is estimated as a single-edge path and the end-point
/// terms cancel in the sum. The e_{0,0}^I term is dropped since its
/// log-fidelity is zero. Throws NotLearnableError for chains with a cut part.
ChainEstimate estimate_chain(const OneChain& chain, const PatternTransferGraph& g, const Backend& backend,
                             const ShotBudget& budget, uint64_t seed, const EstimateOptions& options = {},
                             std::size_t target_length = 0);

struct CycleEstimate {
  OneChain cycle;
  std::string label;
  bool trivial = false;   // the e_{0,0}^I loop
  bool directed = false;  // a single directed closed walk
  double weight = 0.0;    // sum of |coefficients|
  ChainEstimate estimate;
  double geo_mean = kNaN;  // exp(value / weight)
  double geo_std = kNaN;
};

struct CharacterizeOptions {
  ShotBudget budget;
  EstimateOptions estimate;
  std::size_t target_length = 12;
};

struct CharacterizationResult {
  std::vector<CycleEstimate> cycles;
};

/// Estimates every basis cycle of the graph.
CharacterizationResult characterize(const Backend& backend, const PatternTransferGraph& g,
                                    const CharacterizeOptions& options, uint64_t seed);

/// Human-readable cycle label such as "+I[0|0] +Z[0|1]".
std::string chain_label(const PatternTransferGraph& g, const OneChain& chain);

/// Predicted standard deviation of a cycle's geometric mean from the true
/// model, built from predict_variance for each walk.
double predicted_geo_std(const CycleEstimate& est, const PatternTransferGraph& g, const NoiseModel& truth,
                         const ShotBudget& budget);

/// c_{x1,x2,y1,y2}^Q = log l_{x1,y1} + log l_{x2,y2} - log l_{x2,y1} - log l_{x1,y2}.
struct CorrelationQuery {
  PauliOp q;
  uint32_t x1 = 0;
  uint32_t x2 = 1;
  uint32_t y1 = 0;
  uint32_t y2 = 1;
};

struct CorrelationEstimate {
  CorrelationQuery query;
  double value = kNaN;
  double std = kNaN;
  bool consistent_with_zero = false;
  std::vector<EstimationReport> terms;  // (x1,y1), (x2,y2), (x2,y1), (x1,y2)
};

double correlation_truth(const CorrelationQuery& query, const FidelityTable& fidelities);

/// One query per Q with x1 = y1 = 0 and x2 = y2 = all ones.
std::vector<CorrelationQuery> default_correlation_queries(const PatternTransferGraph& g);

/// Estimates each term as a single-edge path; the end-point terms cancel.
/// The std combines the bootstrap replicates of the four estimates.
std::vector<CorrelationEstimate> independence_test(const Backend& backend, const PatternTransferGraph& g,
                                                   const std::vector<CorrelationQuery>& queries,
                                                   const ShotBudget& budget, uint64_t seed,
                                                   const EstimateOptions& options = {},
                                                   double sigma_threshold = 3.0);

struct RateEstimate {
  double value = kNaN;
  double std = kNaN;
  std::vector<double> repetition_values;
  std::vector<ChainEstimate> repetitions;
};

/// Linearized error rate p_{a,b}^P from its chain, averaged over
/// `repetitions` independent runs. With more than one repetition the std is
/// the standard error of the mean over repetitions.
RateEstimate reconstruct_error_rate(uint32_t a, uint32_t b, const PauliOp& p, const PatternTransferGraph& g,
                                    const Backend& backend, const ShotBudget& budget, std::size_t repetitions,
                                    uint64_t seed, const EstimateOptions& options = {});

/// Linearized prediction 4^{-(n+m)} sum (-1)^{...} log lambda + delta.
double linearized_rate(uint32_t a, uint32_t b, const PauliOp& p, const PatternTransferGraph& g,
                       const FidelityTable& fidelities);

struct RateCombination {
  std::string origin;                         // "single", "stabilizer-sum", "syndrome-flip", "kernel"
  std::map<std::size_t, Rational> weights;    // flat rate index -> coefficient
  OneChain chain;
  std::string label(const InstrumentShape& shape) const;
};

/// Learnable linear combinations of rates: single rates with a, b != 0, the
/// stabilizer sums when stabilizers are given, and a basis of every rate
/// combination whose chain lies in the cycle space.
std::vector<RateCombination> learnable_rate_combinations(const PatternTransferGraph& g,
                                                         const std::vector<PauliOp>& stabilizers = {});

/// Chain of an arbitrary rate combination.
OneChain combination_chain(const PatternTransferGraph& g, const std::map<std::size_t, Rational>& weights);

}  // namespace mcmcb

#endif  // MCMCB_ANALYSIS_HPP
