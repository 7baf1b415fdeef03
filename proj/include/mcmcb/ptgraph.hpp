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

#ifndef MCMCB_PTGRAPH_HPP
#define MCMCB_PTGRAPH_HPP

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <boost/rational.hpp>

#include "mcmcb/channels.hpp"
#include "mcmcb/clifford.hpp"
#include "mcmcb/pauli.hpp"

namespace mcmcb {

using Rational = boost::rational<long long>;

/// Sparse chains. One-chains are keyed by edge id, zero-chains by vertex
/// (the pattern bits). Zero coefficients are never stored.
template <class T>
using BasicOneChain = std::map<std::size_t, T>;
template <class T>
using BasicZeroChain = std::map<uint32_t, T>;

using OneChain = BasicOneChain<double>;
using ZeroChain = BasicZeroChain<double>;
using RationalOneChain = BasicOneChain<Rational>;
using RationalZeroChain = BasicZeroChain<Rational>;

/// Edge e_{x,y}^Q from pt(G^dagger(Q (x) Z^x)) to pt(Q (x) Z^y).
struct Edge {
  uint32_t x = 0;
  uint32_t y = 0;
  PauliOp q;
  SignedPauli start;  // G^dagger (Q (x) Z^x) G, with its sign
  PauliOp end;        // Q (x) Z^y
  uint32_t src = 0;
  uint32_t dst = 0;

  bool is_loop() const { return src == dst; }
};

/// Pattern transfer graph of a measurement gate. Edge ids follow the flat
/// (x, y, Q) layout of InstrumentShape.
class PatternTransferGraph {
 public:
  PatternTransferGraph(const CliffordTableau& gate, std::size_t n, std::size_t m);

  std::size_t n() const { return shape_.n; }
  std::size_t m() const { return shape_.m; }
  const InstrumentShape& shape() const { return shape_; }
  std::size_t n_qubits() const { return shape_.n_qubits(); }
  std::size_t num_vertices() const { return std::size_t{1} << n_qubits(); }
  std::size_t num_edges() const { return edges_.size(); }
  const std::vector<Edge>& edges() const { return edges_; }
  const Edge& edge(std::size_t id) const { return edges_.at(id); }
  std::size_t edge_id(uint32_t x, uint32_t y, const PauliOp& q) const;
  const CliffordTableau& gate() const { return gate_; }
  const CliffordTableau& gate_inverse() const { return gate_inverse_; }

  /// "x|y|Q", e.g. "0|1|X".
  std::string edge_key(std::size_t id) const;
  std::size_t parse_edge_key(const std::string& key) const;
  std::string vertex_label(uint32_t v) const;

  /// Edges leaving / entering v in id order, self-loops included.
  const std::vector<std::size_t>& out_edges(uint32_t v) const { return out_.at(v); }
  const std::vector<std::size_t>& in_edges(uint32_t v) const { return in_.at(v); }

 private:
  InstrumentShape shape_;
  CliffordTableau gate_;
  CliffordTableau gate_inverse_;
  std::vector<Edge> edges_;
  std::vector<std::vector<std::size_t>> out_;
  std::vector<std::vector<std::size_t>> in_;
};

/// Boundary: each edge contributes dst - src.
template <class T>
BasicZeroChain<T> boundary(const PatternTransferGraph& g, const BasicOneChain<T>& chain);

/// Coboundary: delta(v) = sum of edges into v minus edges out of v, loops excluded.
template <class T>
BasicOneChain<T> coboundary(const PatternTransferGraph& g, const BasicZeroChain<T>& chain);

double inner(const OneChain& a, const OneChain& b);
double max_abs(const OneChain& c);
double max_abs(const ZeroChain& c);
OneChain add(const OneChain& a, const OneChain& b, double scale_b = 1.0);
OneChain to_double(const RationalOneChain& c);

struct CycleCutParts {
  OneChain cycle;
  OneChain cut;
  ZeroChain potential;  // cut = coboundary(potential)
};

/// Orthogonal split into cycle space and cut space (least squares against
/// the incidence matrix). Throws std::runtime_error if the cycle part has a
/// boundary above 1e-9.
CycleCutParts cycle_cut_decompose(const PatternTransferGraph& g, const OneChain& chain);

/// |E| - rank of the incidence matrix.
std::size_t cycle_space_dimension(const PatternTransferGraph& g);

/// Fundamental cycles of a breadth-first spanning forest. The forest starts at
/// the lowest vertex of each component and scans edges in id order; cycles
/// are listed in the id order of their non-tree edge.
std::vector<OneChain> cycle_basis(const PatternTransferGraph& g);

/// True iff the cut component is below `tol` in max norm.
bool is_learnable(const PatternTransferGraph& g, const OneChain& chain, double tol = 1e-9);

/// Chain whose evaluation on log-fidelities gives the linearized rate:
/// 4^{-(n+m)} sum (-1)^{a.x + b.y + <P,Q>} e_{x,y}^Q.
template <class T>
BasicOneChain<T> error_rate_chain(const PatternTransferGraph& g, uint32_t a, uint32_t b, const PauliOp& p);

enum class PropositionKind {
  kSingleRate = 1,    // p_{a,b}^P with a != 0 and b != 0
  kStabilizerSum = 2, // sum_k p_{0,0}^{S^k P}
  kSyndromeFlip = 3,  // sum_k p_{0,a}^{S^k P} + p_{a,0}^{S^k P}, P commuting with all S_i
};

/// Product S^k of stabilizers selected by the bits of k.
PauliOp stabilizer_power(const std::vector<PauliOp>& stabilizers, uint32_t k);

template <class T>
BasicOneChain<T> proposition_chain(const PatternTransferGraph& g, PropositionKind kind, uint32_t a, uint32_t b,
                                   const PauliOp& p, const std::vector<PauliOp>& stabilizers);

/// Syndrome-extraction gate: for ancilla i, H, controlled-S_i, H.
CliffordTableau build_syndrome_tableau(const std::vector<PauliOp>& stabilizers);

/// For n = 0: 4^{-m} sum_Q c_Q sum_R (-1)^{<Q,R>} e^R.
OneChain walsh_image(const PatternTransferGraph& g, const OneChain& chain);
/// Checks that the Walsh image of every basis cycle has zero boundary.
bool walsh_cycle_invariance_check(const PatternTransferGraph& g, double tol = 1e-9);

/// Integer chain M * chain = W+ - W-, where W+ and W- are sums of closed
/// directed walks. Each walk lists edge ids in traversal order.
struct WalkDecomposition {
  long long scale = 1;
  std::vector<std::vector<std::size_t>> positive;
  std::vector<std::vector<std::size_t>> negative;
};

/// Empty if the chain is not a rational cycle with denominator at most
/// `max_scale`, or if the graph lacks the directed paths needed for balancing.
std::optional<WalkDecomposition> decompose_closed_walks(const PatternTransferGraph& g, const OneChain& chain,
                                                        long long max_scale = 1 << 14);

/// Sum of chain coefficients times log-fidelities.
double evaluate_log_fidelities(const OneChain& chain, const FidelityTable& fidelities);

}  // namespace mcmcb

#endif  // MCMCB_PTGRAPH_HPP
