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


// Brute-force reference implementations shared by the unit tests and the
// acceptance binary. They favor directness over speed.

#ifndef MCMCB_TESTS_ORACLES_HPP
#define MCMCB_TESTS_ORACLES_HPP

#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include "mcmcb/channels.hpp"
#include "mcmcb/clifford.hpp"
#include "mcmcb/pauli.hpp"

namespace mcmcb::oracle {

// lambda_{x,y}^Q = sum_{a,b,P} (-1)^{a.x + b.y + <P,Q>} p_{a,b}^P, one entry
// at a time.
inline std::vector<double> naive_fidelities(const UniformStochasticInstrument& inst) {
  const std::size_t n = inst.n(), m = inst.m();
  const uint32_t nb = 1u << n;
  const uint64_t np = uint64_t{1} << (2 * m);
  std::vector<double> out(inst.rates().size(), 0.0);
  std::size_t idx = 0;
  for (uint32_t x = 0; x < nb; ++x) {
    for (uint32_t y = 0; y < nb; ++y) {
      for (uint64_t qi = 0; qi < np; ++qi, ++idx) {
        const PauliOp q = PauliOp::from_index(m, qi);
        double acc = 0.0;
        for (uint32_t a = 0; a < nb; ++a) {
          for (uint32_t b = 0; b < nb; ++b) {
            for (uint64_t pi = 0; pi < np; ++pi) {
              const PauliOp p = PauliOp::from_index(m, pi);
              const int sign = (std::popcount(a & x) + std::popcount(b & y) + symplectic_inner(p, q)) & 1;
              acc += (sign ? -1.0 : 1.0) * inst.rate(a, b, p);
            }
          }
        }
        out[idx] = acc;
      }
    }
  }
  return out;
}

// |bits><bits| pieces on n ancillas from single-qubit kets, ancilla 0 leftmost.
inline Matrix ancilla_ket(uint32_t bits, std::size_t n) {
  Matrix v = Matrix::Ones(1, 1);
  for (std::size_t j = 0; j < n; ++j) {
    Matrix k = Matrix::Zero(2, 1);
    k((bits >> j) & 1, 0) = 1.0;
    v = kron(v, k);
  }
  return v;
}

// U_k(G rho G^dagger) = sum p (P (x) |k+b><k+a|) G rho G^dagger (...)^dagger.
inline Matrix physical(const UniformStochasticInstrument& inst, const Matrix& u, const Matrix& rho, uint32_t k) {
  const std::size_t n = inst.n(), m = inst.m();
  const Matrix sigma = u * rho * u.adjoint();
  Matrix out = Matrix::Zero(rho.rows(), rho.cols());
  const auto& s = inst.shape();
  for (std::size_t f = 0; f < inst.rates().size(); ++f) {
    const double p = inst.rates()[f];
    if (p == 0.0) continue;
    const uint32_t a = s.first_bits(f), b = s.second_bits(f);
    const Matrix flip = ancilla_ket(k ^ b, n) * ancilla_ket(k ^ a, n).adjoint();
    const Matrix kr = kron(pauli_matrix(s.pauli(f)), flip);
    out += p * kr * sigma * kr.adjoint();
  }
  (void)m;
  return out;
}

// 2^{-(2n+m)} sum (-1)^{k.(x+y)} lambda |Q Z^y>> <<G^dagger (Q Z^x) G | rho>>.
inline Matrix dual(const std::vector<double>& lambda, std::size_t n, std::size_t m, const Matrix& u,
                   const Matrix& rho, uint32_t k) {
  const uint32_t nb = 1u << n;
  const uint64_t np = uint64_t{1} << (2 * m);
  Matrix out = Matrix::Zero(rho.rows(), rho.cols());
  std::size_t idx = 0;
  for (uint32_t x = 0; x < nb; ++x) {
    for (uint32_t y = 0; y < nb; ++y) {
      for (uint64_t qi = 0; qi < np; ++qi, ++idx) {
        const PauliOp q = PauliOp::from_index(m, qi);
        const Matrix in = u.adjoint() * pauli_matrix(with_ancilla_z(q, n, x)) * u;
        const std::complex<double> overlap = (in.adjoint() * rho).trace();
        const double sign = (std::popcount(k & (x ^ y)) & 1) ? -1.0 : 1.0;
        out += sign * lambda[idx] * overlap * pauli_matrix(with_ancilla_z(q, n, y));
      }
    }
  }
  return out / std::pow(2.0, 2.0 * static_cast<double>(n) + static_cast<double>(m));
}

// Frame-averaged instrument applied to rho: pre frame G^dagger (P (x) X^al Z^be) G,
// raw outcome k + al, post frame P (x) X^al Z^ga.
inline Matrix twirled(const GeneralInstrument& gi, const Matrix& u, const Matrix& rho, uint32_t k) {
  const std::size_t n = gi.n, m = gi.m;
  const uint32_t nb = 1u << n;
  const uint64_t np = uint64_t{1} << (2 * m);
  Matrix out = Matrix::Zero(rho.rows(), rho.cols());
  double count = 0.0;
  for (uint64_t pi = 0; pi < np; ++pi) {
    const PauliOp p = PauliOp::from_index(m, pi);
    for (uint32_t al = 0; al < nb; ++al) {
      for (uint32_t be = 0; be < nb; ++be) {
        for (uint32_t ga = 0; ga < nb; ++ga) {
          const Matrix pre = u.adjoint() * pauli_matrix(tensor(p, PauliOp(n, al, be))) * u;
          const Matrix post = pauli_matrix(tensor(p, PauliOp(n, al, ga)));
          out += post * gi.apply(k ^ al, pre * rho * pre.adjoint()) * post.adjoint();
          count += 1.0;
        }
      }
    }
  }
  return out / count;
}

inline Matrix random_density(std::size_t nq, std::mt19937_64& rng) {
  const auto dim = static_cast<Eigen::Index>(std::size_t{1} << nq);
  std::normal_distribution<double> nd(0.0, 1.0);
  Matrix a(dim, dim);
  for (Eigen::Index i = 0; i < dim; ++i) {
    for (Eigen::Index j = 0; j < dim; ++j) a(i, j) = {nd(rng), nd(rng)};
  }
  Matrix rho = a * a.adjoint();
  return rho / rho.trace().real();
}

}  // namespace mcmcb::oracle

#endif  // MCMCB_TESTS_ORACLES_HPP
