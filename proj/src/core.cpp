// Copyright 2026 The tscomplex Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "tscomplex/core.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <vector>

#include "tscomplex/random.hpp"

namespace tscomplex {

namespace {

void check_qubit_count(int n) {
  if (n < 0 || n > kMaxDenseQubits)
    throw std::invalid_argument("state vector: qubit count " + std::to_string(n) + " outside [0, " +
                                std::to_string(kMaxDenseQubits) + "]");
}

std::uint64_t full_mask(int n) { return n >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1; }

}  // namespace

StateVector::StateVector(int n_qubits) : n_(n_qubits) {
  check_qubit_count(n_qubits);
  amps_ = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(dim()));
}

StateVector::StateVector(int n_qubits, Eigen::VectorXcd amplitudes) : n_(n_qubits), amps_(std::move(amplitudes)) {
  check_qubit_count(n_qubits);
  if (static_cast<std::uint64_t>(amps_.size()) != dim())
    throw std::invalid_argument("state vector: expected " + std::to_string(dim()) + " amplitudes, got " +
                                std::to_string(amps_.size()));
}

StateVector StateVector::basis(int n_qubits, std::uint64_t index) {
  StateVector s(n_qubits);
  if (index >= s.dim()) throw std::invalid_argument("state vector: basis index out of range");
  s[index] = 1.0;
  return s;
}

bool StateVector::is_normalized(double tol) const { return std::abs(amps_.squaredNorm() - 1.0) <= tol; }

StateVector StateVector::normalized() const {
  const double nrm = norm();
  if (nrm == 0.0) throw std::invalid_argument("state vector: cannot normalize the zero vector");
  return {n_, amps_ / nrm};
}

Bipartition::Bipartition(int n, std::uint64_t y_mask) : n_(n), y_mask_(y_mask) {
  if (n < 1 || n > 63) throw std::invalid_argument("bipartition: qubit count out of range");
  if ((y_mask & ~full_mask(n)) != 0) throw std::invalid_argument("bipartition: mask has bits beyond n");
}

Bipartition Bipartition::equal(int n, std::uint64_t y_mask) {
  if (n % 2 != 0) throw std::invalid_argument("bipartition: equal split needs an even qubit count");
  Bipartition p(n, y_mask);
  if (!p.is_equal()) throw std::invalid_argument("bipartition: Y side must hold exactly n/2 qubits");
  return p;
}

Bipartition Bipartition::from_qubits(int n, std::initializer_list<int> y_qubits) {
  std::uint64_t mask = 0;
  for (int q : y_qubits) {
    if (q < 1 || q > n) throw std::invalid_argument("bipartition: qubit label out of range");
    mask |= std::uint64_t{1} << (n - q);
  }
  return {n, mask};
}

std::uint64_t Bipartition::z_mask() const { return full_mask(n_) & ~y_mask_; }

int Bipartition::y_size() const { return std::popcount(y_mask_); }

bool Bipartition::in_y(int qubit) const { return (y_mask_ >> (n_ - qubit)) & 1U; }

std::uint64_t scatter_bits(std::uint64_t value, std::uint64_t mask) {
  std::uint64_t out = 0;
  for (std::uint64_t bit = 1; mask != 0; bit <<= 1) {
    const std::uint64_t lowest = mask & (~mask + 1);
    if (value & bit) out |= lowest;
    mask ^= lowest;
  }
  return out;
}

std::uint64_t gather_bits(std::uint64_t word, std::uint64_t mask) {
  std::uint64_t out = 0;
  for (std::uint64_t bit = 1; mask != 0; bit <<= 1) {
    const std::uint64_t lowest = mask & (~mask + 1);
    if (word & lowest) out |= bit;
    mask ^= lowest;
  }
  return out;
}

Complex inner_product(const StateVector& a, const StateVector& b) {
  if (a.n_qubits() != b.n_qubits()) throw std::invalid_argument("inner_product: dimension mismatch");
  return a.amplitudes().dot(b.amplitudes());  // Eigen conjugates the left operand
}

double overlap_squared(const StateVector& a, const StateVector& b) {
  const double denom = a.amplitudes().squaredNorm() * b.amplitudes().squaredNorm();
  if (denom == 0.0) throw std::invalid_argument("overlap_squared: zero vector");
  return std::norm(inner_product(a, b)) / denom;
}

Eigen::MatrixXcd coefficient_matrix(const StateVector& s, const Bipartition& p) {
  if (s.n_qubits() != p.n()) throw std::invalid_argument("coefficient_matrix: bipartition size mismatch");
  const std::uint64_t ym = p.y_mask();
  const std::uint64_t zm = p.z_mask();
  const Eigen::Index rows = Eigen::Index{1} << p.y_size();
  const Eigen::Index cols = Eigen::Index{1} << p.z_size();
  Eigen::MatrixXcd m(rows, cols);
  for (Eigen::Index y = 0; y < rows; ++y) {
    const std::uint64_t ybits = scatter_bits(static_cast<std::uint64_t>(y), ym);
    for (Eigen::Index z = 0; z < cols; ++z) m(y, z) = s[ybits | scatter_bits(static_cast<std::uint64_t>(z), zm)];
  }
  return m;
}

StateVector from_coefficient_matrix(const Eigen::MatrixXcd& m, const Bipartition& p) {
  if (m.rows() != (Eigen::Index{1} << p.y_size()) || m.cols() != (Eigen::Index{1} << p.z_size()))
    throw std::invalid_argument("from_coefficient_matrix: shape does not match bipartition");
  StateVector s(p.n());
  for (Eigen::Index y = 0; y < m.rows(); ++y) {
    const std::uint64_t ybits = scatter_bits(static_cast<std::uint64_t>(y), p.y_mask());
    for (Eigen::Index z = 0; z < m.cols(); ++z)
      s[ybits | scatter_bits(static_cast<std::uint64_t>(z), p.z_mask())] = m(y, z);
  }
  return s;
}

int schmidt_rank(const StateVector& s, const Bipartition& p, double tol) {
  return complex_rank(coefficient_matrix(s, p), tol);
}

std::vector<int> random_equal_half(int n, Rng& rng) {
  if (n < 2 || n % 2 != 0) throw std::invalid_argument("random_equal_half: n must be even and >= 2");
  std::vector<int> idx(static_cast<std::size_t>(n));
  std::iota(idx.begin(), idx.end(), 1);
  for (int i = 0; i < n / 2; ++i) {
    const auto j = static_cast<std::size_t>(i) + rng.below(static_cast<std::uint64_t>(n - i));
    std::swap(idx[static_cast<std::size_t>(i)], idx[j]);
  }
  idx.resize(static_cast<std::size_t>(n / 2));
  std::sort(idx.begin(), idx.end());
  return idx;
}

Bipartition random_equal_bipartition(int n, Rng& rng) {
  if (n > 64) throw std::invalid_argument("random_equal_bipartition: at most 64 qubits");
  std::uint64_t mask = 0;
  for (int q : random_equal_half(n, rng)) mask |= std::uint64_t{1} << (n - q);
  return {n, mask};
}

std::size_t basis_expansion_size(const StateVector& s, double tol) {
  std::size_t terms = 0;
  for (Eigen::Index i = 0; i < s.amplitudes().size(); ++i)
    if (std::abs(s.amplitudes()[i]) > tol) ++terms;
  return terms * static_cast<std::size_t>(s.n_qubits());
}

StateVector product_zero_state(int n) { return StateVector::basis(n, 0); }

StateVector ghz_state(int n) {
  StateVector s(n);
  s[0] = M_SQRT1_2;
  s[s.dim() - 1] = M_SQRT1_2;
  return s;
}

StateVector w_state(int n) {
  StateVector s(n);
  const double a = 1.0 / std::sqrt(static_cast<double>(n));
  for (int q = 1; q <= n; ++q) s[s.qubit_bit(q)] = a;
  return s;
}

}  // namespace tscomplex
