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

#include "mcmcb/clifford.hpp"

#include <bit>
#include <complex>
#include <stdexcept>

namespace mcmcb {

namespace {

using cd = std::complex<double>;

const cd kIPow[4] = {cd(1, 0), cd(0, 1), cd(-1, 0), cd(0, -1)};

// Phase-tracked product i^phase X^x Z^z.
struct PhasedPauli {
  int phase = 0;
  uint32_t x = 0;
  uint32_t z = 0;

  void multiply_by(const SignedPauli& s) {
    const uint32_t cx = s.op.x();
    const uint32_t cz = s.op.z();
    int ph = std::popcount(cx & cz) + (s.sign < 0 ? 2 : 0);
    // (X^x Z^z)(X^cx Z^cz) = (-1)^{z.cx} X^{x^cx} Z^{z^cz}
    if (dot2(z, cx)) ph += 2;
    phase = (phase + ph) & 3;
    x ^= cx;
    z ^= cz;
  }
};

}  // namespace

uint32_t basis_mask(uint32_t qubit_bits, std::size_t n_qubits) {
  uint32_t out = 0;
  for (std::size_t q = 0; q < n_qubits; ++q) {
    if ((qubit_bits >> q) & 1u) out |= 1u << (n_qubits - 1 - q);
  }
  return out;
}

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

Matrix pauli_matrix(const PauliOp& p) {
  const std::size_t n = p.n_qubits();
  const std::size_t dim = std::size_t{1} << n;
  const uint32_t xm = basis_mask(p.x(), n);
  const uint32_t zm = basis_mask(p.z(), n);
  const cd pre = kIPow[std::popcount(p.x() & p.z()) & 3];
  Matrix out = Matrix::Zero(dim, dim);
  for (uint32_t j = 0; j < dim; ++j) {
    out(j ^ xm, j) = dot2(zm, j) ? -pre : pre;
  }
  return out;
}

CliffordTableau::CliffordTableau(std::size_t n_qubits) {
  if (n_qubits > kMaxQubits) throw std::invalid_argument("too many qubits");
  for (std::size_t q = 0; q < n_qubits; ++q) {
    x_.push_back({PauliOp(n_qubits, 1u << q, 0), 1});
    z_.push_back({PauliOp(n_qubits, 0, 1u << q), 1});
  }
}

CliffordTableau CliffordTableau::from_images(std::vector<SignedPauli> x_images,
                                             std::vector<SignedPauli> z_images) {
  const std::size_t n = x_images.size();
  if (z_images.size() != n) throw std::invalid_argument("image count mismatch");
  for (std::size_t i = 0; i < n; ++i) {
    for (const auto* img : {&x_images[i], &z_images[i]}) {
      if (img->op.n_qubits() != n) throw std::invalid_argument("image size mismatch");
      if (img->sign != 1 && img->sign != -1) throw std::invalid_argument("sign must be +1 or -1");
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const bool ok = symplectic_inner(x_images[i].op, x_images[j].op) == 0 &&
                      symplectic_inner(z_images[i].op, z_images[j].op) == 0 &&
                      symplectic_inner(x_images[i].op, z_images[j].op) == (i == j ? 1 : 0);
      if (!ok) throw std::invalid_argument("images do not form a symplectic tableau");
    }
  }
  CliffordTableau t;
  t.x_ = std::move(x_images);
  t.z_ = std::move(z_images);
  return t;
}

CliffordTableau CliffordTableau::hadamard(std::size_t n, std::size_t q) {
  CliffordTableau t(n);
  std::swap(t.x_.at(q), t.z_.at(q));
  return t;
}

CliffordTableau CliffordTableau::phase(std::size_t n, std::size_t q) {
  CliffordTableau t(n);
  t.x_.at(q) = {PauliOp(n, 1u << q, 1u << q), 1};
  return t;
}

CliffordTableau CliffordTableau::cnot(std::size_t n, std::size_t control, std::size_t target) {
  if (control == target || control >= n || target >= n) throw std::invalid_argument("bad CNOT qubits");
  CliffordTableau t(n);
  t.x_[control] = {PauliOp(n, (1u << control) | (1u << target), 0), 1};
  t.z_[target] = {PauliOp(n, 0, (1u << control) | (1u << target)), 1};
  return t;
}

CliffordTableau CliffordTableau::cz(std::size_t n, std::size_t a, std::size_t b) {
  if (a == b || a >= n || b >= n) throw std::invalid_argument("bad CZ qubits");
  CliffordTableau t(n);
  t.x_[a] = {PauliOp(n, 1u << a, 1u << b), 1};
  t.x_[b] = {PauliOp(n, 1u << b, 1u << a), 1};
  return t;
}

CliffordTableau CliffordTableau::controlled_pauli(std::size_t control, const PauliOp& p) {
  const std::size_t n = p.n_qubits();
  if (control >= n) throw std::invalid_argument("control out of range");
  if (((p.x() | p.z()) >> control) & 1u) throw std::invalid_argument("target Pauli touches control");
  CliffordTableau t(n);
  const PauliOp zc(n, 0, 1u << control);
  for (std::size_t q = 0; q < n; ++q) {
    if (q == control) {
      t.x_[q] = {PauliOp(n, 1u << q, 0) * p, 1};
      continue;
    }
    if (symplectic_inner(t.x_[q].op, p)) t.x_[q].op = t.x_[q].op * zc;
    if (symplectic_inner(t.z_[q].op, p)) t.z_[q].op = t.z_[q].op * zc;
  }
  return t;
}

CliffordTableau CliffordTableau::tensor(const std::vector<CliffordTableau>& factors) {
  std::size_t n = 0;
  for (const auto& f : factors) n += f.n_qubits();
  CliffordTableau t(n);
  std::size_t offset = 0;
  for (const auto& f : factors) {
    auto shift = [&](const SignedPauli& s) {
      return SignedPauli{PauliOp(n, s.op.x() << offset, s.op.z() << offset), s.sign};
    };
    for (std::size_t q = 0; q < f.n_qubits(); ++q) {
      t.x_[offset + q] = shift(f.x_[q]);
      t.z_[offset + q] = shift(f.z_[q]);
    }
    offset += f.n_qubits();
  }
  return t;
}

SignedPauli CliffordTableau::conjugate(const PauliOp& p) const {
  const std::size_t n = n_qubits();
  if (p.n_qubits() != n) throw std::invalid_argument("Pauli size does not match tableau");
  // p = i^{|x&z|} X^x Z^z
  PhasedPauli acc;
  acc.phase = std::popcount(p.x() & p.z()) & 3;
  for (std::size_t q = 0; q < n; ++q) {
    if ((p.x() >> q) & 1u) acc.multiply_by(x_[q]);
  }
  for (std::size_t q = 0; q < n; ++q) {
    if ((p.z() >> q) & 1u) acc.multiply_by(z_[q]);
  }
  const int rel = (acc.phase - std::popcount(acc.x & acc.z)) & 3;
  if (rel & 1) throw std::logic_error("conjugation produced a non-Hermitian Pauli");
  return {PauliOp(n, acc.x, acc.z), rel == 0 ? 1 : -1};
}

SignedPauli CliffordTableau::conjugate(const SignedPauli& p) const {
  SignedPauli out = conjugate(p.op);
  out.sign *= p.sign;
  return out;
}

CliffordTableau CliffordTableau::inverse() const {
  const std::size_t n = n_qubits();
  const std::size_t w = 2 * n;
  // Column j holds the image bits of generator j (X_0..X_{n-1}, Z_0..Z_{n-1}).
  std::vector<uint64_t> rows(w, 0);  // row r: bit j set iff column j has bit r
  auto image_bits = [&](std::size_t j) {
    const SignedPauli& s = j < n ? x_[j] : z_[j - n];
    return uint64_t{s.op.x()} | (uint64_t{s.op.z()} << n);
  };
  for (std::size_t j = 0; j < w; ++j) {
    const uint64_t col = image_bits(j);
    for (std::size_t r = 0; r < w; ++r) {
      if ((col >> r) & 1u) rows[r] |= uint64_t{1} << j;
    }
  }
  // Gauss-Jordan on [M | I].
  std::vector<uint64_t> aug(w, 0);
  for (std::size_t r = 0; r < w; ++r) aug[r] = uint64_t{1} << r;
  for (std::size_t c = 0; c < w; ++c) {
    std::size_t piv = c;
    while (piv < w && !((rows[piv] >> c) & 1u)) ++piv;
    if (piv == w) throw std::logic_error("tableau is singular");
    std::swap(rows[piv], rows[c]);
    std::swap(aug[piv], aug[c]);
    for (std::size_t r = 0; r < w; ++r) {
      if (r != c && ((rows[r] >> c) & 1u)) {
        rows[r] ^= rows[c];
        aug[r] ^= aug[c];
      }
    }
  }
  // Row c of aug is row c of M^{-1}; column k of M^{-1} is the preimage of generator k.
  CliffordTableau inv(n);
  for (std::size_t k = 0; k < w; ++k) {
    uint64_t pre = 0;
    for (std::size_t r = 0; r < w; ++r) {
      if ((aug[r] >> k) & 1u) pre |= uint64_t{1} << r;
    }
    const PauliOp p = PauliOp::from_index(n, pre);
    const SignedPauli img = conjugate(p);
    SignedPauli& slot = k < n ? inv.x_[k] : inv.z_[k - n];
    slot = {p, img.sign};
  }
  return inv;
}

CliffordTableau CliffordTableau::then(const CliffordTableau& next) const {
  if (next.n_qubits() != n_qubits()) throw std::invalid_argument("tableau size mismatch");
  CliffordTableau out(n_qubits());
  for (std::size_t q = 0; q < n_qubits(); ++q) {
    out.x_[q] = next.conjugate(x_[q]);
    out.z_[q] = next.conjugate(z_[q]);
  }
  return out;
}

bool CliffordTableau::is_identity() const { return *this == CliffordTableau(n_qubits()); }

Matrix CliffordTableau::unitary() const {
  const std::size_t n = n_qubits();
  const std::size_t dim = std::size_t{1} << n;
  auto signed_matrix = [](const SignedPauli& s) {
    Matrix m = pauli_matrix(s.op);
    if (s.sign < 0) m = -m;
    return m;
  };
  // U|0...0> spans the joint +1 eigenspace of the Z images.
  Matrix proj = Matrix::Identity(dim, dim);
  for (std::size_t q = 0; q < n; ++q) {
    proj = 0.5 * (proj + signed_matrix(z_[q]) * proj);
  }
  Eigen::Index best = 0;
  double best_norm = -1.0;
  for (Eigen::Index c = 0; c < proj.cols(); ++c) {
    const double nrm = proj.col(c).norm();
    if (nrm > best_norm + 1e-12) {
      best_norm = nrm;
      best = c;
    }
  }
  const Eigen::VectorXcd psi0 = proj.col(best) / best_norm;
  std::vector<Matrix> xs;
  for (std::size_t q = 0; q < n; ++q) xs.push_back(signed_matrix(x_[q]));
  Matrix u(dim, dim);
  for (uint32_t j = 0; j < dim; ++j) {
    Eigen::VectorXcd col = psi0;
    for (std::size_t q = 0; q < n; ++q) {
      if ((j >> (n - 1 - q)) & 1u) col = xs[q] * col;
    }
    u.col(j) = col;
  }
  return u;
}

const std::array<CliffordTableau, 24>& single_qubit_cliffords() {
  static const std::array<CliffordTableau, 24> table = [] {
    std::array<CliffordTableau, 24> out;
    const char xs[3] = {'X', 'Y', 'Z'};
    const char zs[3] = {'Z', 'X', 'Y'};
    std::size_t k = 0;
    for (char px : xs) {
      for (char pz : zs) {
        if (px == pz) continue;
        for (int sx : {1, -1}) {
          for (int sz : {1, -1}) {
            out[k++] = CliffordTableau::from_images(
                {{PauliOp::from_string(std::string(1, px)), sx}},
                {{PauliOp::from_string(std::string(1, pz)), sz}});
          }
        }
      }
    }
    return out;
  }();
  return table;
}

CliffordTableau solve_single_qubit_clifford(const PauliOp& src, const PauliOp& dst) {
  if (src.n_qubits() != 1 || dst.n_qubits() != 1) throw std::invalid_argument("single-qubit Paulis required");
  if (src.is_identity() != dst.is_identity()) {
    throw std::invalid_argument("no Clifford maps " + src.to_string() + " to " + dst.to_string());
  }
  for (const auto& c : single_qubit_cliffords()) {
    if (c.conjugate(src) == SignedPauli{dst, 1}) return c;
  }
  throw std::logic_error("single-qubit Clifford table incomplete");
}

CliffordTableau random_clifford(std::size_t n, Rng& rng) {
  CliffordTableau t(n);
  std::uniform_int_distribution<std::size_t> qd(0, n - 1);
  std::uniform_int_distribution<int> gd(0, n > 1 ? 2 : 1);
  const std::size_t steps = 8 * n * n + 8;
  for (std::size_t s = 0; s < steps; ++s) {
    const int g = gd(rng);
    const std::size_t a = qd(rng);
    if (g == 0) {
      t = t.then(CliffordTableau::hadamard(n, a));
    } else if (g == 1) {
      t = t.then(CliffordTableau::phase(n, a));
    } else {
      std::size_t b = qd(rng);
      while (b == a) b = qd(rng);
      t = t.then(CliffordTableau::cnot(n, a, b));
    }
  }
  return t;
}

CliffordTableau random_local_clifford(std::size_t n, Rng& rng) {
  std::uniform_int_distribution<std::size_t> d(0, 23);
  std::vector<CliffordTableau> f;
  for (std::size_t q = 0; q < n; ++q) f.push_back(single_qubit_cliffords()[d(rng)]);
  return CliffordTableau::tensor(f);
}

}  // namespace mcmcb
