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

#include <cmath>

#include <Eigen/Dense>
#include <gtest/gtest.h>

namespace mcmcb {
namespace {

PatternTransferGraph cnot11() { return PatternTransferGraph(CliffordTableau::cnot(2, 0, 1), 1, 1); }

NoiseModel model_from(UniformStochasticInstrument instr, uint64_t seed, double spam_eps = 0.02) {
  return NoiseModel(std::move(instr), CliffordTableau::cnot(2, 0, 1), SpamModel::random(2, spam_eps, seed));
}

const EstimateOptions kExact{.exact = true};

std::map<std::size_t, Rational> combo(const InstrumentShape& s, std::initializer_list<std::pair<const char*, int>> terms) {
  std::map<std::size_t, Rational> w;
  for (const auto& [k, c] : terms) w[parse_rate_key(s, k)] += Rational(c);
  return w;
}

TEST(Characterize, ExactModeRecoversCycleGeometricMeans) {
  const auto g = cnot11();
  const SimulatedBackend backend(model_from(random_instrument(1, 1, 0.05, 3), 4));
  const auto res = characterize(backend, g, CharacterizeOptions{.estimate = kExact}, 1);
  ASSERT_EQ(res.cycles.size(), 13u);
  int trivial = 0;
  for (const auto& c : res.cycles) {
    if (c.trivial) {
      ++trivial;
      continue;
    }
    ASSERT_FALSE(c.estimate.failed) << c.label;
    const double truth = std::exp(evaluate_log_fidelities(c.cycle, backend.model().fidelities()) / c.weight);
    EXPECT_NEAR(c.geo_mean, truth, 1e-10) << c.label;
    EXPECT_EQ(c.geo_std, 0.0);
  }
  EXPECT_EQ(trivial, 1);
}

TEST(Characterize, LabelsNameEdges) {
  const auto g = cnot11();
  const OneChain c{{g.parse_edge_key("1|1|I"), 1.0}, {g.parse_edge_key("1|1|Z"), 1.0}};
  EXPECT_EQ(chain_label(g, c), "+I[1|1] +Z[1|1]");
}

TEST(EstimateChain, RejectsChainsWithCutPart) {
  const auto g = cnot11();
  const SimulatedBackend backend(model_from(random_instrument(1, 1, 0.05, 3), 4));
  EXPECT_THROW(estimate_chain(OneChain{{g.parse_edge_key("0|1|I"), 1.0}}, g, backend, ShotBudget{}, 1, kExact),
               NotLearnableError);
  const auto zero = estimate_chain(OneChain{{0, 1.0}}, g, backend, ShotBudget{}, 1, kExact);
  EXPECT_EQ(zero.value, 0.0);
}

TEST(EstimateChain, SampledSingleRateIsWithinBootstrapError) {
  const auto g = cnot11();
  const SimulatedBackend backend(model_from(random_instrument(1, 1, 0.05, 5), 6));
  auto chain = error_rate_chain<double>(g, 1, 1, PauliOp::from_string("I"));
  const auto est = estimate_chain(chain, g, backend, ShotBudget{20, 50, 1000}, 7, EstimateOptions{.bootstrap_replicates = 100});
  ASSERT_FALSE(est.failed);
  EXPECT_EQ(est.scale, 16);
  EXPECT_EQ(est.parts.size(), 2u);
  const double truth = evaluate_log_fidelities(chain, backend.model().fidelities());
  EXPECT_GT(est.std, 0.0);
  EXPECT_LT(std::abs(est.value - truth), 4.0 * est.std);
}

TEST(Independence, ExactCorrelationsVanishForMeasureAndPrepare) {
  const auto g = cnot11();
  for (uint64_t seed = 1; seed <= 3; ++seed) {
    const auto map = random_measure_and_prepare(1, 1, 0.08, seed);
    const SimulatedBackend backend(model_from(map.induced(), seed + 10));
    const auto queries = default_correlation_queries(g);
    ASSERT_EQ(queries.size(), 4u);
    for (const auto& est : independence_test(backend, g, queries, ShotBudget{}, 1, kExact)) {
      EXPECT_NEAR(est.value, 0.0, 1e-10);
      EXPECT_NEAR(correlation_truth(est.query, backend.model().fidelities()), 0.0, 1e-12);
    }
  }
}

TEST(Independence, PlantedCorrelationIsRecovered) {
  const auto g = cnot11();
  const auto instr = random_instrument(1, 1, 0.02, 4, {{1, 1, PauliOp::from_string("I"), 0.01}});
  const SimulatedBackend backend(model_from(instr, 5));
  const auto ests = independence_test(backend, g, default_correlation_queries(g), ShotBudget{}, 1, kExact);
  bool nonzero = false;
  for (const auto& est : ests) {
    const double truth = correlation_truth(est.query, backend.model().fidelities());
    EXPECT_NEAR(est.value, truth, 1e-10);
    nonzero = nonzero || std::abs(truth) > 1e-3;
  }
  EXPECT_TRUE(nonzero);
}

TEST(Independence, TruthFollowsDefinition) {
  const auto instr = random_instrument(1, 1, 0.1, 9);
  const FidelityTable f = fidelities_from_rates(instr);
  const PauliOp q = PauliOp::from_string("X");
  const CorrelationQuery c{q, 0, 1, 0, 1};
  const double want = std::log(f.at(0, 0, q)) + std::log(f.at(1, 1, q)) - std::log(f.at(1, 0, q)) - std::log(f.at(0, 1, q));
  EXPECT_NEAR(correlation_truth(c, f), want, 1e-14);
  EXPECT_NEAR(correlation_truth(CorrelationQuery{q, 1, 0, 0, 1}, f), -want, 1e-14);
  EXPECT_THROW(default_correlation_queries(PatternTransferGraph(CliffordTableau(2), 0, 2)), std::invalid_argument);
}

TEST(ErrorRate, ExactReconstructionEqualsLinearizedRate) {
  const auto g = cnot11();
  const SimulatedBackend backend(model_from(random_instrument(1, 1, 0.03, 11), 12));
  for (const char* p : {"I", "X", "Y", "Z"}) {
    const PauliOp op = PauliOp::from_string(p);
    const auto est = reconstruct_error_rate(1, 1, op, g, backend, ShotBudget{}, 2, 1, kExact);
    EXPECT_NEAR(est.value, linearized_rate(1, 1, op, g, backend.model().fidelities()), 1e-12);
    EXPECT_EQ(est.std, 0.0);
  }
  const SimulatedBackend ideal(NoiseModel(UniformStochasticInstrument::ideal(1, 1), CliffordTableau::cnot(2, 0, 1),
                                          SpamModel::ideal(2)));
  EXPECT_NEAR(reconstruct_error_rate(1, 1, PauliOp::from_string("I"), g, ideal, ShotBudget{}, 1, 1, kExact).value,
              0.0, 1e-14);
}

// The linearization error is second order in the noise strength.
TEST(ErrorRate, LinearizationErrorIsSecondOrder) {
  const auto g = cnot11();
  for (uint64_t seed = 1; seed <= 5; ++seed) {
    for (double eps : {0.02, 0.005}) {
      const auto instr = random_instrument(1, 1, eps, seed);
      const FidelityTable f = fidelities_from_rates(instr);
      for (uint64_t pi = 0; pi < 4; ++pi) {
        const PauliOp p = PauliOp::from_index(1, pi);
        for (uint32_t a = 0; a < 2; ++a) {
          for (uint32_t b = 0; b < 2; ++b) {
            EXPECT_LT(std::abs(linearized_rate(a, b, p, g, f) - instr.rate(a, b, p)), 2.0 * eps * eps);
          }
        }
      }
    }
  }
}

TEST(RateCombinations, CnotSpanContainsKnownLearnableCombinations) {
  const auto g = cnot11();
  const auto& s = g.shape();
  const auto ours = learnable_rate_combinations(g);
  ASSERT_EQ(ours.size(), 13u);
  const std::vector<std::map<std::size_t, Rational>> known = {
      combo(s, {{"1|1|I", 1}}),
      combo(s, {{"1|1|Z", 1}}),
      combo(s, {{"1|1|X", 1}}),
      combo(s, {{"1|1|Y", 1}}),
      combo(s, {{"0|0|I", 1}, {"0|0|Z", 1}}),
      combo(s, {{"0|1|I", 1}, {"1|0|Z", 1}, {"0|1|Z", 1}, {"1|0|I", 1}}),
      combo(s, {{"0|0|X", 1}, {"0|0|Y", -1}}),
      combo(s, {{"1|0|X", 1}, {"1|0|Y", -1}}),
      combo(s, {{"0|1|X", 1}, {"0|1|Y", -1}}),
      combo(s, {{"0|1|X", 1}, {"0|1|Z", -1}}),
      combo(s, {{"0|1|I", 1}, {"1|0|I", 1}, {"0|0|I", -1}}),
      combo(s, {{"0|1|X", 1}, {"1|0|X", 1}, {"0|0|X", 1}}),
      combo(s, {{"0|0|I", 1}, {"1|0|I", 1}, {"0|1|X", 1}}),
  };
  const std::size_t nf = s.table_size();
  Eigen::MatrixXd a(nf, ours.size()), b(nf, ours.size() + known.size());
  a.setZero();
  b.setZero();
  for (std::size_t i = 0; i < ours.size(); ++i) {
    for (const auto& [f, w] : ours[i].weights) a(f, i) = b(f, i) = boost::rational_cast<double>(w);
    EXPECT_TRUE(is_learnable(g, ours[i].chain)) << ours[i].label(s);
  }
  for (std::size_t i = 0; i < known.size(); ++i) {
    for (const auto& [f, w] : known[i]) b(f, ours.size() + i) = boost::rational_cast<double>(w);
    EXPECT_TRUE(is_learnable(g, combination_chain(g, known[i]))) << i;
  }
  EXPECT_EQ(Eigen::FullPivLU<Eigen::MatrixXd>(a).rank(), 13);
  EXPECT_EQ(Eigen::FullPivLU<Eigen::MatrixXd>(b).rank(), 13);
  EXPECT_FALSE(is_learnable(g, combination_chain(g, combo(s, {{"0|0|I", 1}}))));
  EXPECT_FALSE(is_learnable(g, combination_chain(g, combo(s, {{"0|1|I", 1}}))));
}

TEST(RateCombinations, UnmeasuredGateLearnsEveryRate) {
  const PatternTransferGraph g(CliffordTableau(2), 0, 2);
  for (uint64_t pi = 0; pi < 16; ++pi) {
    EXPECT_TRUE(is_learnable(g, error_rate_chain<double>(g, 0, 0, PauliOp::from_index(2, pi))));
  }
  EXPECT_EQ(learnable_rate_combinations(g).size(), 16u);
}

TEST(RateCombinations, StabilizerCombinationsAreLearnable) {
  const std::vector<PauliOp> stab = {PauliOp::from_string("ZZ"), PauliOp::from_string("XX")};
  const PatternTransferGraph g(build_syndrome_tableau(stab), 2, 2);
  std::size_t sums = 0, flips = 0;
  for (const auto& rc : learnable_rate_combinations(g, stab)) {
    if (rc.origin == "stabilizer-sum") ++sums;
    if (rc.origin == "syndrome-flip") ++flips;
    if (rc.origin != "kernel") EXPECT_TRUE(is_learnable(g, rc.chain)) << rc.label(g.shape());
  }
  EXPECT_GT(sums, 0u);
  EXPECT_GT(flips, 0u);
  EXPECT_THROW(learnable_rate_combinations(g, {stab[0]}), std::invalid_argument);
}

TEST(RateCombinations, LabelListsTerms) {
  const auto g = cnot11();
  RateCombination rc;
  rc.weights = combo(g.shape(), {{"1|1|I", 1}});
  EXPECT_EQ(rc.label(g.shape()), "+1*p[1|1|I]");
}

}  // namespace
}  // namespace mcmcb
