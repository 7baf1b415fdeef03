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

#include "mcmcb/channels.hpp"

#include <cmath>
#include <complex>
#include <random>
#include <sstream>

#include <Eigen/Eigenvalues>

namespace mcmcb {

namespace {

using cd = std::complex<double>;

constexpr std::size_t kMaxInstrumentQubits = 6;

void check_rates(const InstrumentShape& shape, const std::vector<double>& rates) {
  if (rates.size() != shape.table_size()) throw std::invalid_argument("rate table has wrong size");
  double sum = 0.0;
  for (std::size_t i = 0; i < rates.size(); ++i) {
    if (!std::isfinite(rates[i])) throw NonPhysicalError("non-finite rate");
    if (rates[i] < -kRateTolerance) {
      std::ostringstream os;
      os << "negative rate " << rates[i] << " at " << rate_key(shape, i);
      throw NonPhysicalError(os.str());
    }
    sum += rates[i];
  }
  if (std::abs(sum - 1.0) > kRateTolerance) {
    std::ostringstream os;
    os.precision(17);
    os << "rates sum to " << sum;
    throw NonPhysicalError(os.str());
  }
}

// Swaps the x and z halves of the low 2m bits.
std::size_t swap_xz(std::size_t flat, std::size_t m) {
  const std::size_t mask = (std::size_t{1} << m) - 1;
  const std::size_t lo = flat & mask;
  const std::size_t hi = (flat >> m) & mask;
  const std::size_t rest = flat >> (2 * m);
  return (rest << (2 * m)) | (lo << m) | hi;
}

std::vector<double> dirichlet_spread(std::size_t count, double total, Rng& rng) {
  std::exponential_distribution<double> e(1.0);
  std::vector<double> w(count);
  double s = 0.0;
  for (auto& v : w) {
    v = e(rng);
    s += v;
  }
  for (auto& v : w) v = total * v / s;
  return w;
}

Matrix inverse_sqrt_psd(const Matrix& s) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(s);
  const Eigen::VectorXd ev = es.eigenvalues();
  Eigen::VectorXd inv(ev.size());
  for (Eigen::Index i = 0; i < ev.size(); ++i) {
    if (ev(i) <= 1e-14) throw std::invalid_argument("Kraus normalization is singular");
    inv(i) = 1.0 / std::sqrt(ev(i));
  }
  return es.eigenvectors() * inv.asDiagonal() * es.eigenvectors().adjoint();
}

}  // namespace

void InstrumentShape::validate() const {
  if (n + m == 0) throw std::invalid_argument("instrument needs at least one qubit");
  if (n + m > kMaxInstrumentQubits) throw std::invalid_argument("n + m must be at most 6");
}

UniformStochasticInstrument::UniformStochasticInstrument(std::size_t n, std::size_t m,
                                                         std::vector<double> rates)
    : shape_{n, m}, rates_(std::move(rates)) {
  shape_.validate();
  check_rates(shape_, rates_);
}

UniformStochasticInstrument UniformStochasticInstrument::ideal(std::size_t n, std::size_t m) {
  InstrumentShape s{n, m};
  s.validate();
  std::vector<double> r(s.table_size(), 0.0);
  r[0] = 1.0;
  return UniformStochasticInstrument(n, m, std::move(r));
}

double UniformStochasticInstrument::rate(uint32_t a, uint32_t b, const PauliOp& p) const {
  if (p.n_qubits() != shape_.m) throw std::invalid_argument("Pauli size mismatch");
  return rates_.at(shape_.flat(a, b, p.index()));
}

FidelityTable::FidelityTable(std::size_t n, std::size_t m, std::vector<double> values)
    : shape_{n, m}, values_(std::move(values)) {
  shape_.validate();
  if (values_.size() != shape_.table_size()) throw std::invalid_argument("fidelity table has wrong size");
}

double FidelityTable::at(uint32_t x, uint32_t y, const PauliOp& q) const {
  if (q.n_qubits() != shape_.m) throw std::invalid_argument("Pauli size mismatch");
  return values_.at(shape_.flat(x, y, q.index()));
}

void walsh_hadamard(std::vector<double>& v) {
  const std::size_t len = v.size();
  if (len == 0 || (len & (len - 1)) != 0) throw std::invalid_argument("length must be a power of two");
  for (std::size_t h = 1; h < len; h <<= 1) {
    for (std::size_t i = 0; i < len; i += 2 * h) {
      for (std::size_t j = i; j < i + h; ++j) {
        const double a = v[j];
        const double b = v[j + h];
        v[j] = a + b;
        v[j + h] = a - b;
      }
    }
  }
}

FidelityTable fidelities_from_rates(const UniformStochasticInstrument& instrument) {
  const auto& s = instrument.shape();
  std::vector<double> w = instrument.rates();
  walsh_hadamard(w);
  // The transform pairs P with (z, x)-swapped Q; undo that.
  std::vector<double> out(w.size());
  for (std::size_t i = 0; i < w.size(); ++i) out[i] = w[swap_xz(i, s.m)];
  return FidelityTable(s.n, s.m, std::move(out));
}

std::vector<double> rates_from_fidelities_raw(const FidelityTable& fidelities) {
  const auto& s = fidelities.shape();
  std::vector<double> w(fidelities.values().size());
  for (std::size_t i = 0; i < w.size(); ++i) w[swap_xz(i, s.m)] = fidelities.values()[i];
  walsh_hadamard(w);
  const double scale = 1.0 / static_cast<double>(s.table_size());
  for (auto& v : w) v *= scale;
  return w;
}

UniformStochasticInstrument rates_from_fidelities(const FidelityTable& fidelities) {
  return UniformStochasticInstrument(fidelities.n(), fidelities.m(), rates_from_fidelities_raw(fidelities));
}

void MeasureAndPrepareInstrument::validate() const {
  InstrumentShape{n, m}.validate();
  const std::size_t len = (std::size_t{1} << n) << (2 * m);
  for (const auto* t : {&measure_rates, &prepare_rates}) {
    if (t->size() != len) throw std::invalid_argument("measure/prepare table has wrong size");
    double sum = 0.0;
    for (double v : *t) {
      if (v < -kRateTolerance) throw NonPhysicalError("negative measure/prepare rate");
      sum += v;
    }
    if (std::abs(sum - 1.0) > kRateTolerance) throw NonPhysicalError("measure/prepare rates must sum to 1");
  }
}

UniformStochasticInstrument MeasureAndPrepareInstrument::induced() const {
  validate();
  const InstrumentShape s{n, m};
  const std::size_t np = std::size_t{1} << (2 * m);
  const std::size_t nb = std::size_t{1} << n;
  std::vector<double> rates(s.table_size(), 0.0);
  for (uint32_t a = 0; a < nb; ++a) {
    for (uint32_t b = 0; b < nb; ++b) {
      for (std::size_t p1 = 0; p1 < np; ++p1) {
        for (std::size_t p2 = 0; p2 < np; ++p2) {
          rates[s.flat(a, b, p1 ^ p2)] += measure_rates[a * np + p1] * prepare_rates[b * np + p2];
        }
      }
    }
  }
  return UniformStochasticInstrument(n, m, std::move(rates));
}

namespace {

// Same transform as the full table with one bit-string register.
std::vector<double> half_fidelities(const std::vector<double>& table, std::size_t m) {
  std::vector<double> w = table;
  walsh_hadamard(w);
  std::vector<double> out(w.size());
  for (std::size_t i = 0; i < w.size(); ++i) out[i] = w[swap_xz(i, m)];
  return out;
}

}  // namespace

std::vector<double> MeasureAndPrepareInstrument::measure_fidelities() const {
  validate();
  return half_fidelities(measure_rates, m);
}

std::vector<double> MeasureAndPrepareInstrument::prepare_fidelities() const {
  validate();
  return half_fidelities(prepare_rates, m);
}

NoisyMeasurement::NoisyMeasurement(UniformStochasticInstrument instr, CliffordTableau g)
    : instrument(std::move(instr)), gate(std::move(g)) {
  if (gate.n_qubits() != instrument.n() + instrument.m()) {
    throw std::invalid_argument("gate acts on the wrong number of qubits");
  }
  gate_inverse = gate.inverse();
  gate_unitary = gate.unitary();
  fidelities = fidelities_from_rates(instrument);
  const std::size_t np = std::size_t{1} << (2 * instrument.m());
  for (std::size_t p = 0; p < np; ++p) {
    system_paulis.push_back(pauli_matrix(PauliOp::from_index(instrument.m(), p)));
  }
}

Matrix apply_instrument_physical(const NoisyMeasurement& mcm, const Matrix& rho, uint32_t k) {
  const std::size_t n = mcm.n();
  const std::size_t m = mcm.m();
  const std::size_t nb = std::size_t{1} << n;
  const std::size_t ds = std::size_t{1} << m;
  const std::size_t dim = ds * nb;
  if (rho.rows() != static_cast<Eigen::Index>(dim) || rho.cols() != rho.rows()) {
    throw std::invalid_argument("density matrix has wrong dimension");
  }
  if (k >= nb) throw std::invalid_argument("outcome out of range");
  const Matrix sigma = mcm.gate_unitary * rho * mcm.gate_unitary.adjoint();
  // Diagonal ancilla blocks <alpha| sigma |alpha>.
  std::vector<Matrix> blocks(nb, Matrix(ds, ds));
  for (uint32_t al = 0; al < nb; ++al) {
    for (std::size_t i = 0; i < ds; ++i) {
      for (std::size_t j = 0; j < ds; ++j) blocks[al](i, j) = sigma(i * nb + al, j * nb + al);
    }
  }
  Matrix out = Matrix::Zero(dim, dim);
  const auto& s = mcm.instrument.shape();
  const auto& rates = mcm.instrument.rates();
  for (std::size_t f = 0; f < rates.size(); ++f) {
    const double p = rates[f];
    if (p == 0.0) continue;
    const uint32_t a = s.first_bits(f);
    const uint32_t b = s.second_bits(f);
    const std::size_t pidx = f & (ds * ds - 1);
    const uint32_t src = ancilla_index(k ^ a, n);
    const uint32_t dst = ancilla_index(k ^ b, n);
    const Matrix& pm = mcm.system_paulis[pidx];
    const Matrix blk = pm * blocks[src] * pm;
    for (std::size_t i = 0; i < ds; ++i) {
      for (std::size_t j = 0; j < ds; ++j) out(i * nb + dst, j * nb + dst) += p * blk(i, j);
    }
  }
  return out;
}

PauliVector to_pauli_vector(const Matrix& rho) {
  const std::size_t dim = static_cast<std::size_t>(rho.rows());
  std::size_t n = 0;
  while ((std::size_t{1} << n) < dim) ++n;
  if ((std::size_t{1} << n) != dim || rho.cols() != rho.rows()) throw std::invalid_argument("bad density matrix");
  const std::size_t np = std::size_t{1} << (2 * n);
  PauliVector out(np);
  const double scale = 1.0 / static_cast<double>(dim);
  for (std::size_t idx = 0; idx < np; ++idx) {
    const PauliOp p = PauliOp::from_index(n, idx);
    const uint32_t xm = basis_mask(p.x(), n);
    const uint32_t zm = basis_mask(p.z(), n);
    static const cd ipow[4] = {cd(1, 0), cd(0, 1), cd(-1, 0), cd(0, -1)};
    const cd pre = ipow[std::popcount(p.x() & p.z()) & 3];
    // Tr(P rho) = sum_j <j|P rho|j>, with P|j ^ xm> = pre (-1)^{zm.(j^xm)} |j>.
    cd tr = 0.0;
    for (uint32_t j = 0; j < dim; ++j) {
      const uint32_t jj = j ^ xm;
      const cd v = rho(jj, j);
      tr += dot2(zm, jj) ? -v : v;
    }
    out[idx] = (pre * tr).real() * scale;
  }
  return out;
}

Matrix from_pauli_vector(const PauliVector& c, std::size_t n_qubits) {
  const std::size_t np = std::size_t{1} << (2 * n_qubits);
  if (c.size() != np) throw std::invalid_argument("Pauli vector has wrong size");
  const std::size_t dim = std::size_t{1} << n_qubits;
  Matrix out = Matrix::Zero(dim, dim);
  for (std::size_t idx = 0; idx < np; ++idx) {
    if (c[idx] != 0.0) out += c[idx] * pauli_matrix(PauliOp::from_index(n_qubits, idx));
  }
  return out;
}

PauliVector apply_instrument_dual(const FidelityTable& fidelities, const CliffordTableau& gate,
                                  const PauliVector& rho, uint32_t k) {
  const auto& s = fidelities.shape();
  const std::size_t n = s.n;
  const std::size_t m = s.m;
  const std::size_t nq = n + m;
  if (gate.n_qubits() != nq) throw std::invalid_argument("gate acts on the wrong number of qubits");
  if (rho.size() != (std::size_t{1} << (2 * nq))) throw std::invalid_argument("Pauli vector has wrong size");
  const std::size_t nb = std::size_t{1} << n;
  if (k >= nb) throw std::invalid_argument("outcome out of range");
  const std::size_t np = std::size_t{1} << (2 * m);
  const CliffordTableau inv = gate.inverse();
  const double pre = 1.0 / static_cast<double>(nb);
  PauliVector out(rho.size(), 0.0);
  for (uint32_t x = 0; x < nb; ++x) {
    for (std::size_t qi = 0; qi < np; ++qi) {
      const PauliOp q = PauliOp::from_index(m, qi);
      const SignedPauli src = inv.conjugate(with_ancilla_z(q, n, x));
      const double overlap = src.sign * rho[src.op.index()];
      if (overlap == 0.0) continue;
      for (uint32_t y = 0; y < nb; ++y) {
        const double lam = fidelities.at_flat(s.flat(x, y, qi));
        const double sg = parity_sign(k, x ^ y);
        out[with_ancilla_z(q, n, y).index()] += pre * sg * lam * overlap;
      }
    }
  }
  return out;
}

void GeneralInstrument::validate(double tol) const {
  InstrumentShape{n, m}.validate();
  const std::size_t dim = std::size_t{1} << (n + m);
  if (kraus.size() != (std::size_t{1} << n)) throw std::invalid_argument("need one Kraus set per outcome");
  Matrix sum = Matrix::Zero(dim, dim);
  for (const auto& set : kraus) {
    for (const auto& kr : set) {
      if (kr.rows() != static_cast<Eigen::Index>(dim) || kr.cols() != static_cast<Eigen::Index>(dim)) {
        throw std::invalid_argument("Kraus operator has wrong dimension");
      }
      sum += kr.adjoint() * kr;
    }
  }
  if ((sum - Matrix::Identity(dim, dim)).norm() > tol) {
    throw std::invalid_argument("instrument is not trace preserving");
  }
}

Matrix GeneralInstrument::apply(uint32_t k, const Matrix& rho) const {
  Matrix out = Matrix::Zero(rho.rows(), rho.cols());
  for (const auto& kr : kraus.at(k)) out += kr * rho * kr.adjoint();
  return out;
}

GeneralInstrument GeneralInstrument::ideal_measurement(std::size_t n, std::size_t m) {
  GeneralInstrument gi{n, m, {}};
  const std::size_t nb = std::size_t{1} << n;
  const std::size_t ds = std::size_t{1} << m;
  for (uint32_t k = 0; k < nb; ++k) {
    Matrix proj = Matrix::Zero(ds * nb, ds * nb);
    const uint32_t al = ancilla_index(k, n);
    for (std::size_t i = 0; i < ds; ++i) proj(i * nb + al, i * nb + al) = 1.0;
    gi.kraus.push_back({proj});
  }
  return gi;
}

GeneralInstrument GeneralInstrument::from_noisy_measurement(const NoisyMeasurement& mcm) {
  const std::size_t n = mcm.n();
  const std::size_t m = mcm.m();
  const std::size_t nb = std::size_t{1} << n;
  const std::size_t ds = std::size_t{1} << m;
  const auto& s = mcm.instrument.shape();
  GeneralInstrument gi{n, m, std::vector<std::vector<Matrix>>(nb)};
  for (uint32_t k = 0; k < nb; ++k) {
    for (std::size_t f = 0; f < mcm.instrument.rates().size(); ++f) {
      const double p = mcm.instrument.rates()[f];
      if (p <= 0.0) continue;
      const uint32_t a = s.first_bits(f);
      const uint32_t b = s.second_bits(f);
      Matrix flip = Matrix::Zero(nb, nb);  // |k+b><k+a|
      flip(ancilla_index(k ^ b, n), ancilla_index(k ^ a, n)) = 1.0;
      const Matrix kr = std::sqrt(p) * kron(mcm.system_paulis[f & (ds * ds - 1)], flip);
      gi.kraus[k].push_back(kr * mcm.gate_unitary);
    }
  }
  return gi;
}

GeneralInstrument GeneralInstrument::random(std::size_t n, std::size_t m, const CliffordTableau& gate,
                                            double strength, Rng& rng) {
  const GeneralInstrument ideal = ideal_measurement(n, m);
  const Matrix u = gate.unitary();
  const std::size_t dim = std::size_t{1} << (n + m);
  std::normal_distribution<double> nd(0.0, 1.0);
  auto gaussian = [&] {
    Matrix g(dim, dim);
    for (Eigen::Index i = 0; i < g.rows(); ++i) {
      for (Eigen::Index j = 0; j < g.cols(); ++j) g(i, j) = cd(nd(rng), nd(rng));
    }
    return g;
  };
  std::vector<std::vector<Matrix>> raw(ideal.kraus.size());
  Matrix s = Matrix::Zero(dim, dim);
  for (std::size_t k = 0; k < ideal.kraus.size(); ++k) {
    raw[k].push_back(ideal.kraus[k][0] * u + strength * gaussian());
    raw[k].push_back(strength * gaussian());
    for (const auto& a : raw[k]) s += a.adjoint() * a;
  }
  const Matrix norm = inverse_sqrt_psd(s);
  GeneralInstrument gi{n, m, {}};
  for (auto& set : raw) {
    for (auto& a : set) a = a * norm;
    gi.kraus.push_back(set);
  }
  gi.validate(1e-9);
  return gi;
}

UniformStochasticInstrument twirl_average(const GeneralInstrument& instrument, const CliffordTableau& gate) {
  instrument.validate();
  const std::size_t n = instrument.n;
  const std::size_t m = instrument.m;
  const std::size_t nq = n + m;
  if (gate.n_qubits() != nq) throw std::invalid_argument("gate acts on the wrong number of qubits");
  const InstrumentShape shape{n, m};
  const std::size_t nb = std::size_t{1} << n;
  const std::size_t np = std::size_t{1} << (2 * m);
  const Matrix u = gate.unitary();

  // Diagonal-block PTM entries of N_k = M_k G^dagger on the Q (x) Z^x inputs:
  // ptm[k][flat(x,y,Q)] = 2^{-N} Tr((Q Z^y) N_k(Q Z^x)).
  std::vector<std::vector<double>> ptm(nb, std::vector<double>(shape.table_size()));
  for (uint32_t x = 0; x < nb; ++x) {
    for (std::size_t qi = 0; qi < np; ++qi) {
      const PauliOp in = with_ancilla_z(PauliOp::from_index(m, qi), n, x);
      const Matrix pre = u.adjoint() * pauli_matrix(in) * u;
      for (uint32_t k = 0; k < nb; ++k) {
        const PauliVector outv = to_pauli_vector(instrument.apply(k, pre));
        for (uint32_t y = 0; y < nb; ++y) {
          ptm[k][shape.flat(x, y, qi)] = outv[with_ancilla_z(PauliOp::from_index(m, qi), n, y).index()];
        }
      }
    }
  }

  // Average over P, alpha, beta, gamma. Pauli conjugation is diagonal in the
  // Pauli basis, so each frame contributes signs only.
  std::vector<std::vector<double>> lam(nb, std::vector<double>(shape.table_size(), 0.0));
  const double count = static_cast<double>(np * nb * nb * nb);
  for (uint32_t k = 0; k < nb; ++k) {
    for (std::size_t pi = 0; pi < np; ++pi) {
      const PauliOp p = PauliOp::from_index(m, pi);
      for (uint32_t al = 0; al < nb; ++al) {
        for (uint32_t be = 0; be < nb; ++be) {
          const PauliOp pre_frame = tensor(p, PauliOp(n, al, be));
          for (uint32_t ga = 0; ga < nb; ++ga) {
            const PauliOp post_frame = tensor(p, PauliOp(n, al, ga));
            const auto& src = ptm[k ^ al];
            for (std::size_t f = 0; f < shape.table_size(); ++f) {
              const uint32_t x = shape.first_bits(f);
              const uint32_t y = shape.second_bits(f);
              const PauliOp q = shape.pauli(f);
              const int s_in = symplectic_inner(with_ancilla_z(q, n, x), pre_frame);
              const int s_out = symplectic_inner(with_ancilla_z(q, n, y), post_frame);
              const double v = ((s_in ^ s_out) ? -1.0 : 1.0) * src[f];
              lam[k][f] += v * static_cast<double>(nb) * parity_sign(k, x ^ y) / count;
            }
          }
        }
      }
    }
  }
  for (uint32_t k = 1; k < nb; ++k) {
    for (std::size_t f = 0; f < shape.table_size(); ++f) {
      if (std::abs(lam[k][f] - lam[0][f]) > 1e-10) {
        throw std::invalid_argument("twirled instrument depends on the outcome");
      }
    }
  }
  return rates_from_fidelities(FidelityTable(n, m, lam[0]));
}

UniformStochasticInstrument random_instrument(std::size_t n, std::size_t m, double eps, uint64_t seed,
                                              const std::vector<PlantedRate>& planted) {
  const InstrumentShape s{n, m};
  s.validate();
  if (!(eps >= 0.0 && eps < 1.0)) throw std::invalid_argument("eps must lie in [0, 1)");
  Rng rng(seed);
  std::vector<double> rates(s.table_size(), 0.0);
  double planted_total = 0.0;
  for (const auto& pr : planted) {
    if (pr.mass < 0.0) throw std::invalid_argument("planted mass must be non-negative");
    planted_total += pr.mass;
  }
  rates[0] = 1.0 - eps - planted_total;
  if (rates[0] < 0.0) throw std::invalid_argument("planted mass exceeds available weight");
  const auto spread = dirichlet_spread(s.table_size() - 1, eps, rng);
  for (std::size_t i = 1; i < s.table_size(); ++i) rates[i] = spread[i - 1];
  for (const auto& pr : planted) {
    if (pr.p.n_qubits() != m) throw std::invalid_argument("planted Pauli has wrong size");
    rates[s.flat(pr.a, pr.b, pr.p.index())] += pr.mass;
  }
  return UniformStochasticInstrument(n, m, std::move(rates));
}

MeasureAndPrepareInstrument random_measure_and_prepare(std::size_t n, std::size_t m, double eps,
                                                       uint64_t seed) {
  InstrumentShape{n, m}.validate();
  if (!(eps >= 0.0 && eps < 1.0)) throw std::invalid_argument("eps must lie in [0, 1)");
  Rng rng(seed);
  const std::size_t len = (std::size_t{1} << n) << (2 * m);
  auto table = [&] {
    std::vector<double> t(len, 0.0);
    t[0] = 1.0 - eps;
    const auto spread = dirichlet_spread(len - 1, eps, rng);
    for (std::size_t i = 1; i < len; ++i) t[i] = spread[i - 1];
    return t;
  };
  MeasureAndPrepareInstrument mp{n, m, table(), table()};
  mp.validate();
  return mp;
}

std::string rate_key(const InstrumentShape& shape, std::size_t flat_index) {
  return bits_to_string(shape.first_bits(flat_index), shape.n) + "|" +
         bits_to_string(shape.second_bits(flat_index), shape.n) + "|" + shape.pauli(flat_index).to_string();
}

std::size_t parse_rate_key(const InstrumentShape& shape, const std::string& key) {
  const auto p1 = key.find('|');
  const auto p2 = p1 == std::string::npos ? std::string::npos : key.find('|', p1 + 1);
  if (p2 == std::string::npos) throw std::invalid_argument("bad key: " + key);
  const std::string a = key.substr(0, p1);
  const std::string b = key.substr(p1 + 1, p2 - p1 - 1);
  const std::string q = key.substr(p2 + 1);
  if (a.size() != shape.n || b.size() != shape.n || q.size() != shape.m) {
    throw std::invalid_argument("key has wrong shape: " + key);
  }
  return shape.flat(bits_from_string(a), bits_from_string(b), PauliOp::from_string(q).index());
}

}  // namespace mcmcb
