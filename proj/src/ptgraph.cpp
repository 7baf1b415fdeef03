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

#include "mcmcb/ptgraph.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <numeric>
#include <stdexcept>

#include <Eigen/Dense>

namespace mcmcb {

namespace {

template <class T>
void accumulate(std::map<std::size_t, T>& c, std::size_t key, const T& v) {
  auto [it, inserted] = c.try_emplace(key, v);
  if (!inserted) {
    it->second += v;
    if (it->second == T(0)) c.erase(it);
  } else if (v == T(0)) {
    c.erase(it);
  }
}

template <class T>
void accumulate(std::map<uint32_t, T>& c, uint32_t key, const T& v) {
  auto [it, inserted] = c.try_emplace(key, v);
  if (!inserted) {
    it->second += v;
    if (it->second == T(0)) c.erase(it);
  } else if (v == T(0)) {
    c.erase(it);
  }
}

template <class T>
T unit_fraction(const PatternTransferGraph& g) {
  return T(1) / T(static_cast<long long>(g.shape().table_size()));
}

// Union-find used for forest rank.
struct Dsu {
  std::vector<uint32_t> parent;
  explicit Dsu(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0u); }
  uint32_t find(uint32_t v) {
    while (parent[v] != v) v = parent[v] = parent[parent[v]];
    return v;
  }
  bool unite(uint32_t a, uint32_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent[std::max(a, b)] = std::min(a, b);
    return true;
  }
};

}  // namespace

PatternTransferGraph::PatternTransferGraph(const CliffordTableau& gate, std::size_t n, std::size_t m)
    : shape_{n, m}, gate_(gate) {
  shape_.validate();
  if (gate.n_qubits() != n + m) throw std::invalid_argument("gate acts on the wrong number of qubits");
  gate_inverse_ = gate.inverse();
  out_.resize(num_vertices());
  in_.resize(num_vertices());
  edges_.reserve(shape_.table_size());
  for (std::size_t id = 0; id < shape_.table_size(); ++id) {
    Edge e;
    e.x = shape_.first_bits(id);
    e.y = shape_.second_bits(id);
    e.q = shape_.pauli(id);
    e.start = gate_inverse_.conjugate(with_ancilla_z(e.q, n, e.x));
    e.end = with_ancilla_z(e.q, n, e.y);
    e.src = pattern(e.start.op).bits();
    e.dst = pattern(e.end).bits();
    out_[e.src].push_back(id);
    in_[e.dst].push_back(id);
    edges_.push_back(e);
  }
}

std::size_t PatternTransferGraph::edge_id(uint32_t x, uint32_t y, const PauliOp& q) const {
  const uint32_t lim = 1u << shape_.n;
  if (x >= lim || y >= lim || q.n_qubits() != shape_.m) throw std::invalid_argument("edge label out of range");
  return shape_.flat(x, y, q.index());
}

std::string PatternTransferGraph::edge_key(std::size_t id) const {
  const Edge& e = edge(id);
  return bits_to_string(e.x, shape_.n) + "|" + bits_to_string(e.y, shape_.n) + "|" + e.q.to_string();
}

std::size_t PatternTransferGraph::parse_edge_key(const std::string& key) const {
  return parse_rate_key(shape_, key);
}

std::string PatternTransferGraph::vertex_label(uint32_t v) const {
  return WeightPattern(n_qubits(), v).to_string();
}

template <class T>
BasicZeroChain<T> boundary(const PatternTransferGraph& g, const BasicOneChain<T>& chain) {
  BasicZeroChain<T> out;
  for (const auto& [id, c] : chain) {
    const Edge& e = g.edge(id);
    if (e.is_loop()) continue;
    accumulate(out, e.dst, c);
    accumulate(out, e.src, T(-c));
  }
  return out;
}

template <class T>
BasicOneChain<T> coboundary(const PatternTransferGraph& g, const BasicZeroChain<T>& chain) {
  BasicOneChain<T> out;
  for (const auto& [v, c] : chain) {
    if (v >= g.num_vertices()) throw std::invalid_argument("vertex out of range");
    for (std::size_t id : g.in_edges(v)) {
      if (!g.edge(id).is_loop()) accumulate(out, id, c);
    }
    for (std::size_t id : g.out_edges(v)) {
      if (!g.edge(id).is_loop()) accumulate(out, id, T(-c));
    }
  }
  return out;
}

template ZeroChain boundary<double>(const PatternTransferGraph&, const OneChain&);
template RationalZeroChain boundary<Rational>(const PatternTransferGraph&, const RationalOneChain&);
template OneChain coboundary<double>(const PatternTransferGraph&, const ZeroChain&);
template RationalOneChain coboundary<Rational>(const PatternTransferGraph&, const RationalZeroChain&);

double inner(const OneChain& a, const OneChain& b) {
  double s = 0.0;
  for (const auto& [id, c] : a) {
    auto it = b.find(id);
    if (it != b.end()) s += c * it->second;
  }
  return s;
}

double max_abs(const OneChain& c) {
  double m = 0.0;
  for (const auto& kv : c) m = std::max(m, std::abs(kv.second));
  return m;
}

double max_abs(const ZeroChain& c) {
  double m = 0.0;
  for (const auto& kv : c) m = std::max(m, std::abs(kv.second));
  return m;
}

OneChain add(const OneChain& a, const OneChain& b, double scale_b) {
  OneChain out = a;
  for (const auto& [id, c] : b) accumulate(out, id, scale_b * c);
  return out;
}

OneChain to_double(const RationalOneChain& c) {
  OneChain out;
  for (const auto& [id, v] : c) out[id] = boost::rational_cast<double>(v);
  return out;
}

CycleCutParts cycle_cut_decompose(const PatternTransferGraph& g, const OneChain& chain) {
  const auto nv = static_cast<Eigen::Index>(g.num_vertices());
  // Laplacian L = B B^T and right-hand side B mu.
  Eigen::MatrixXd lap = Eigen::MatrixXd::Zero(nv, nv);
  for (const Edge& e : g.edges()) {
    if (e.is_loop()) continue;
    lap(e.src, e.src) += 1.0;
    lap(e.dst, e.dst) += 1.0;
    lap(e.src, e.dst) -= 1.0;
    lap(e.dst, e.src) -= 1.0;
  }
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(nv);
  for (const auto& [v, c] : boundary(g, chain)) rhs(v) = c;
  const Eigen::VectorXd nu = lap.completeOrthogonalDecomposition().solve(rhs);

  CycleCutParts parts;
  for (Eigen::Index v = 0; v < nv; ++v) {
    if (nu(v) != 0.0) parts.potential[static_cast<uint32_t>(v)] = nu(v);
  }
  parts.cut = coboundary(g, parts.potential);
  parts.cycle = add(chain, parts.cut, -1.0);
  // Drop rounding residue on edges outside the combined support.
  for (auto it = parts.cycle.begin(); it != parts.cycle.end();) {
    it = std::abs(it->second) < 1e-15 ? parts.cycle.erase(it) : std::next(it);
  }
  if (max_abs(boundary(g, parts.cycle)) > 1e-9) {
    throw std::runtime_error("cycle part has non-zero boundary");
  }
  return parts;
}

std::size_t cycle_space_dimension(const PatternTransferGraph& g) {
  Dsu dsu(g.num_vertices());
  std::size_t rank = 0;
  for (const Edge& e : g.edges()) {
    if (!e.is_loop() && dsu.unite(e.src, e.dst)) ++rank;
  }
  return g.num_edges() - rank;
}

std::vector<OneChain> cycle_basis(const PatternTransferGraph& g) {
  const std::size_t nv = g.num_vertices();
  constexpr std::size_t kNone = static_cast<std::size_t>(-1);
  std::vector<std::size_t> parent_edge(nv, kNone);
  std::vector<uint32_t> parent(nv, 0);
  std::vector<std::size_t> depth(nv, 0);
  std::vector<bool> seen(nv, false);
  std::vector<bool> is_tree(g.num_edges(), false);

  // Non-loop incident edges per vertex, in id order.
  std::vector<std::vector<std::size_t>> adj(nv);
  for (std::size_t id = 0; id < g.num_edges(); ++id) {
    const Edge& e = g.edge(id);
    if (e.is_loop()) continue;
    adj[e.src].push_back(id);
    adj[e.dst].push_back(id);
  }
  for (auto& a : adj) std::sort(a.begin(), a.end());

  for (uint32_t root = 0; root < nv; ++root) {
    if (seen[root] || adj[root].empty()) continue;
    seen[root] = true;
    std::deque<uint32_t> queue{root};
    while (!queue.empty()) {
      const uint32_t v = queue.front();
      queue.pop_front();
      for (std::size_t id : adj[v]) {
        const Edge& e = g.edge(id);
        const uint32_t w = e.src == v ? e.dst : e.src;
        if (seen[w]) continue;
        seen[w] = true;
        parent[w] = v;
        parent_edge[w] = id;
        depth[w] = depth[v] + 1;
        is_tree[id] = true;
        queue.push_back(w);
      }
    }
  }

  // +1 if traversing tree edge `id` from u to w follows its direction.
  auto step = [&](std::size_t id, uint32_t from) { return g.edge(id).src == from ? 1.0 : -1.0; };

  std::vector<OneChain> basis;
  for (std::size_t id = 0; id < g.num_edges(); ++id) {
    if (is_tree[id]) continue;
    const Edge& e = g.edge(id);
    OneChain cyc;
    cyc[id] = 1.0;
    if (!e.is_loop()) {
      // Close the cycle by walking dst -> src through the tree.
      uint32_t a = e.dst;
      uint32_t b = e.src;
      std::vector<std::pair<std::size_t, uint32_t>> down;  // (edge, from) on the src side
      while (a != b) {
        if (depth[a] >= depth[b]) {
          cyc[parent_edge[a]] += step(parent_edge[a], a);
          a = parent[a];
        } else {
          down.emplace_back(parent_edge[b], parent[b]);
          b = parent[b];
        }
      }
      for (const auto& [te, from] : down) cyc[te] += step(te, from);
    }
    basis.push_back(std::move(cyc));
  }
  return basis;
}

bool is_learnable(const PatternTransferGraph& g, const OneChain& chain, double tol) {
  return max_abs(cycle_cut_decompose(g, chain).cut) <= tol;
}

template <class T>
BasicOneChain<T> error_rate_chain(const PatternTransferGraph& g, uint32_t a, uint32_t b, const PauliOp& p) {
  const uint32_t lim = 1u << g.n();
  if (a >= lim || b >= lim || p.n_qubits() != g.m()) throw std::invalid_argument("rate label out of range");
  const T unit = unit_fraction<T>(g);
  BasicOneChain<T> out;
  for (std::size_t id = 0; id < g.num_edges(); ++id) {
    const Edge& e = g.edge(id);
    const int s = dot2(a, e.x) ^ dot2(b, e.y) ^ symplectic_inner(p, e.q);
    out[id] = s ? T(-unit) : unit;
  }
  return out;
}

template OneChain error_rate_chain<double>(const PatternTransferGraph&, uint32_t, uint32_t, const PauliOp&);
template RationalOneChain error_rate_chain<Rational>(const PatternTransferGraph&, uint32_t, uint32_t,
                                                     const PauliOp&);

PauliOp stabilizer_power(const std::vector<PauliOp>& stabilizers, uint32_t k) {
  if (stabilizers.empty()) throw std::invalid_argument("no stabilizers");
  PauliOp out(stabilizers.front().n_qubits());
  for (std::size_t i = 0; i < stabilizers.size(); ++i) {
    if ((k >> i) & 1u) out = out * stabilizers[i];
  }
  return out;
}

template <class T>
BasicOneChain<T> proposition_chain(const PatternTransferGraph& g, PropositionKind kind, uint32_t a, uint32_t b,
                                   const PauliOp& p, const std::vector<PauliOp>& stabilizers) {
  if (kind == PropositionKind::kSingleRate) {
    if (a == 0 || b == 0) throw std::invalid_argument("single-rate chain needs a != 0 and b != 0");
    return error_rate_chain<T>(g, a, b, p);
  }
  if (stabilizers.size() != g.n()) throw std::invalid_argument("need one stabilizer per ancilla");
  BasicOneChain<T> out;
  auto add_into = [&](const BasicOneChain<T>& c) {
    for (const auto& [id, v] : c) accumulate(out, id, v);
  };
  const uint32_t lim = 1u << g.n();
  if (kind != PropositionKind::kSingleRate) {
    for (const auto& s : stabilizers) {
      if (symplectic_inner(s, p)) throw std::invalid_argument("P must commute with every stabilizer");
    }
  }
  if (kind == PropositionKind::kStabilizerSum) {
    for (uint32_t k = 0; k < lim; ++k) add_into(error_rate_chain<T>(g, 0, 0, stabilizer_power(stabilizers, k) * p));
    return out;
  }
  if (kind == PropositionKind::kSyndromeFlip) {
    if (a == 0) throw std::invalid_argument("syndrome-flip chain needs a != 0");
    for (uint32_t k = 0; k < lim; ++k) {
      const PauliOp sp = stabilizer_power(stabilizers, k) * p;
      add_into(error_rate_chain<T>(g, 0, a, sp));
      add_into(error_rate_chain<T>(g, a, 0, sp));
    }
    return out;
  }
  throw std::invalid_argument("unknown proposition kind");
}

template OneChain proposition_chain<double>(const PatternTransferGraph&, PropositionKind, uint32_t, uint32_t,
                                            const PauliOp&, const std::vector<PauliOp>&);
template RationalOneChain proposition_chain<Rational>(const PatternTransferGraph&, PropositionKind, uint32_t,
                                                      uint32_t, const PauliOp&, const std::vector<PauliOp>&);

CliffordTableau build_syndrome_tableau(const std::vector<PauliOp>& stabilizers) {
  if (stabilizers.empty()) throw std::invalid_argument("no stabilizers");
  const std::size_t m = stabilizers.front().n_qubits();
  const std::size_t n = stabilizers.size();
  for (const auto& s : stabilizers) {
    if (s.n_qubits() != m) throw std::invalid_argument("stabilizers differ in size");
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (symplectic_inner(stabilizers[i], stabilizers[j])) throw std::invalid_argument("stabilizers must commute");
    }
  }
  const std::size_t nq = n + m;
  CliffordTableau t(nq);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t anc = m + i;
    t = t.then(CliffordTableau::hadamard(nq, anc));
    t = t.then(CliffordTableau::controlled_pauli(anc, tensor(stabilizers[i], PauliOp(n))));
    t = t.then(CliffordTableau::hadamard(nq, anc));
  }
  return t;
}

OneChain walsh_image(const PatternTransferGraph& g, const OneChain& chain) {
  if (g.n() != 0) throw std::invalid_argument("Walsh image is defined for n = 0");
  const std::size_t np = g.num_edges();
  const double scale = 1.0 / static_cast<double>(np);
  OneChain out;
  for (std::size_t r = 0; r < np; ++r) {
    const PauliOp rp = PauliOp::from_index(g.m(), r);
    double v = 0.0;
    for (const auto& [q, c] : chain) v += symplectic_inner(PauliOp::from_index(g.m(), q), rp) ? -c : c;
    if (v != 0.0) out[r] = scale * v;
  }
  return out;
}

bool walsh_cycle_invariance_check(const PatternTransferGraph& g, double tol) {
  for (const auto& cyc : cycle_basis(g)) {
    if (max_abs(boundary(g, walsh_image(g, cyc))) > tol) return false;
  }
  return true;
}

namespace {

// Nearest vertex with negative excess reachable from `from` along directed
// non-loop edges; returns the edge path.
std::optional<std::vector<std::size_t>> shortest_path_to_deficit(const PatternTransferGraph& g, uint32_t from,
                                                                 const std::vector<long long>& excess) {
  constexpr std::size_t kNone = static_cast<std::size_t>(-1);
  std::vector<std::size_t> via(g.num_vertices(), kNone);
  std::vector<bool> seen(g.num_vertices(), false);
  std::deque<uint32_t> queue{from};
  seen[from] = true;
  while (!queue.empty()) {
    const uint32_t v = queue.front();
    queue.pop_front();
    if (v != from && excess[v] < 0) {
      std::vector<std::size_t> path;
      for (uint32_t w = v; w != from; w = g.edge(via[w]).src) path.push_back(via[w]);
      std::reverse(path.begin(), path.end());
      return path;
    }
    for (std::size_t id : g.out_edges(v)) {
      const uint32_t w = g.edge(id).dst;
      if (seen[w]) continue;
      seen[w] = true;
      via[w] = id;
      queue.push_back(w);
    }
  }
  return std::nullopt;
}

// Splits a balanced non-negative multigraph into closed walks (Hierholzer).
std::vector<std::vector<std::size_t>> euler_walks(const PatternTransferGraph& g, std::map<std::size_t, long long> mult) {
  std::vector<std::vector<std::size_t>> stacks(g.num_vertices());
  for (auto it = mult.rbegin(); it != mult.rend(); ++it) {
    for (long long c = 0; c < it->second; ++c) stacks[g.edge(it->first).src].push_back(it->first);
  }
  std::vector<std::vector<std::size_t>> walks;
  for (uint32_t start = 0; start < g.num_vertices(); ++start) {
    while (!stacks[start].empty()) {
      std::vector<std::pair<uint32_t, std::size_t>> st{{start, static_cast<std::size_t>(-1)}};
      std::vector<std::size_t> circuit;
      while (!st.empty()) {
        const uint32_t v = st.back().first;
        if (!stacks[v].empty()) {
          const std::size_t id = stacks[v].back();
          stacks[v].pop_back();
          st.emplace_back(g.edge(id).dst, id);
        } else {
          if (st.back().second != static_cast<std::size_t>(-1)) circuit.push_back(st.back().second);
          st.pop_back();
        }
      }
      std::reverse(circuit.begin(), circuit.end());
      walks.push_back(std::move(circuit));
    }
  }
  return walks;
}

}  // namespace

std::optional<WalkDecomposition> decompose_closed_walks(const PatternTransferGraph& g, const OneChain& chain,
                                                        long long max_scale) {
  if (chain.empty()) return WalkDecomposition{};
  long long scale = 0;
  for (long long s = 1; s <= max_scale && scale == 0; ++s) {
    bool ok = true;
    for (const auto& kv : chain) {
      const double v = kv.second * static_cast<double>(s);
      if (std::abs(v - std::round(v)) > 1e-9 * static_cast<double>(s)) {
        ok = false;
        break;
      }
    }
    if (ok) scale = s;
  }
  if (scale == 0) return std::nullopt;

  std::map<std::size_t, long long> pos;
  std::map<std::size_t, long long> neg;
  for (const auto& [id, c] : chain) {
    const auto v = static_cast<long long>(std::llround(c * static_cast<double>(scale)));
    if (v > 0) pos[id] = v;
    if (v < 0) neg[id] = -v;
  }
  // Both parts share the boundary of the positive part; one balancing flow
  // closes both.
  std::vector<long long> excess(g.num_vertices(), 0);
  for (const auto& [id, c] : pos) {
    excess[g.edge(id).dst] += c;
    excess[g.edge(id).src] -= c;
  }
  {
    std::vector<long long> check(g.num_vertices(), 0);
    for (const auto& [id, c] : neg) {
      check[g.edge(id).dst] += c;
      check[g.edge(id).src] -= c;
    }
    if (check != excess) return std::nullopt;  // not a cycle
  }
  std::map<std::size_t, long long> flow;
  for (uint32_t v = 0; v < g.num_vertices(); ++v) {
    while (excess[v] > 0) {
      const auto path = shortest_path_to_deficit(g, v, excess);
      if (!path) return std::nullopt;
      for (std::size_t id : *path) flow[id] += 1;
      excess[v] -= 1;
      excess[g.edge(path->back()).dst] += 1;
    }
  }
  for (const auto& [id, c] : flow) {
    pos[id] += c;
    neg[id] += c;
  }
  WalkDecomposition out;
  out.scale = scale;
  out.positive = euler_walks(g, pos);
  out.negative = euler_walks(g, neg);
  return out;
}

double evaluate_log_fidelities(const OneChain& chain, const FidelityTable& fidelities) {
  double s = 0.0;
  for (const auto& [id, c] : chain) {
    const double lam = fidelities.at_flat(id);
    if (!(lam > 0.0)) throw std::domain_error("log of a non-positive fidelity");
    s += c * std::log(lam);
  }
  return s;
}

}  // namespace mcmcb
