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

#ifndef TSCOMPLEX_CORE_HPP
#define TSCOMPLEX_CORE_HPP

#include <Eigen/Dense>

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace tscomplex {

using Complex = std::complex<double>;

class Rng;

/// Largest register we are willing to hold densely.
inline constexpr int kMaxDenseQubits = 24;

/// Default relative tolerance for rank decisions.
inline constexpr double kRankTolerance = 1e-9;

/// Dense pure state of `n` qubits.
///
/// Basis index convention: qubit 1 is the most significant bit, so the
/// index x is read as the bit string x_1 x_2 ... x_n. Amplitudes are not
/// normalized automatically; trees and intermediate states are allowed to
/// carry arbitrary scale.
class StateVector {
 public:
  StateVector() = default;
  explicit StateVector(int n_qubits);
  StateVector(int n_qubits, Eigen::VectorXcd amplitudes);

  static StateVector basis(int n_qubits, std::uint64_t index);

  int n_qubits() const { return n_; }
  std::uint64_t dim() const { return std::uint64_t{1} << n_; }

  const Eigen::VectorXcd& amplitudes() const { return amps_; }
  Eigen::VectorXcd& amplitudes() { return amps_; }

  Complex operator[](std::uint64_t index) const { return amps_[static_cast<Eigen::Index>(index)]; }
  Complex& operator[](std::uint64_t index) { return amps_[static_cast<Eigen::Index>(index)]; }

  double norm() const { return amps_.norm(); }
  bool is_normalized(double tol = 1e-12) const;
  StateVector normalized() const;

  /// Bit of qubit `q` (1-based) inside a basis index.
  std::uint64_t qubit_bit(int q) const { return std::uint64_t{1} << (n_ - q); }

 private:
  int n_ = 0;
  Eigen::VectorXcd amps_;
};

/// Split of the qubits into a Y side and a Z side.
///
/// `y_mask` uses the basis-index convention: qubit q sits at bit n - q.
/// Equal splits (|Y| = n/2) are what the Raz experiments sample; the tree
/// analysis also accepts unbalanced splits.
class Bipartition {
 public:
  Bipartition(int n, std::uint64_t y_mask);

  /// Validates |Y| = n/2 with n even.
  static Bipartition equal(int n, std::uint64_t y_mask);
  /// Y side given as 1-based qubit labels.
  static Bipartition from_qubits(int n, std::initializer_list<int> y_qubits);

  int n() const { return n_; }
  std::uint64_t y_mask() const { return y_mask_; }
  std::uint64_t z_mask() const;
  int y_size() const;
  int z_size() const { return n_ - y_size(); }
  bool is_equal() const { return n_ % 2 == 0 && y_size() == n_ / 2; }
  bool in_y(int qubit) const;

  /// Swaps the roles of Y and Z.
  Bipartition swapped() const { return {n_, z_mask()}; }

  friend bool operator==(const Bipartition&, const Bipartition&) = default;

 private:
  int n_;
  std::uint64_t y_mask_;
};

/// Deposits the low bits of `value` into the set bits of `mask`, lowest first.
std::uint64_t scatter_bits(std::uint64_t value, std::uint64_t mask);
/// Inverse of scatter_bits: gathers the bits of `word` selected by `mask`.
std::uint64_t gather_bits(std::uint64_t word, std::uint64_t mask);

/// <a|b>, conjugating a.
Complex inner_product(const StateVector& a, const StateVector& b);

/// |<a|b>|^2 / (|a|^2 |b|^2).
double overlap_squared(const StateVector& a, const StateVector& b);

/// Coefficient matrix M[y][z] of a state under a bipartition.
///
/// Row index y enumerates the Y qubits and column index z the Z qubits, each
/// read in ascending qubit order with the lowest qubit as the most
/// significant bit.
Eigen::MatrixXcd coefficient_matrix(const StateVector& s, const Bipartition& p);

/// Inverse of coefficient_matrix.
StateVector from_coefficient_matrix(const Eigen::MatrixXcd& m, const Bipartition& p);

/// Rank by Gaussian elimination with partial pivoting. A pivot counts when
/// its magnitude exceeds `tol` times the largest entry magnitude of the input.
template <typename Derived>
int complex_rank(const Eigen::MatrixBase<Derived>& m, double tol = kRankTolerance) {
  using Scalar = typename Derived::Scalar;
  if (!(tol > 0)) throw std::invalid_argument("complex_rank: tolerance must be positive");
  Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> work = m;
  const Eigen::Index rows = work.rows();
  const Eigen::Index cols = work.cols();
  if (rows == 0 || cols == 0) return 0;
  const double scale = work.cwiseAbs().maxCoeff();
  if (scale == 0.0) return 0;
  const double cutoff = tol * scale;

  int rank = 0;
  for (Eigen::Index c = 0; c < cols && rank < rows; ++c) {
    Eigen::Index pivot;
    const double best = work.col(c).tail(rows - rank).cwiseAbs().maxCoeff(&pivot);
    if (best <= cutoff) continue;
    pivot += rank;
    if (pivot != rank) work.row(pivot).swap(work.row(rank));
    const Scalar inv = Scalar(1) / work(rank, c);
    for (Eigen::Index r = rank + 1; r < rows; ++r) {
      const Scalar factor = work(r, c) * inv;
      if (factor != Scalar(0)) work.row(r).tail(cols - c) -= factor * work.row(rank).tail(cols - c);
    }
    ++rank;
  }
  return rank;
}

int schmidt_rank(const StateVector& s, const Bipartition& p, double tol = kRankTolerance);

/// Sorted labels of a uniformly random half of qubits 1..n, drawn by a
/// partial Fisher-Yates shuffle. Any even n.
std::vector<int> random_equal_half(int n, Rng& rng);

/// Same draws as random_equal_half, as a bipartition (n <= 64).
Bipartition random_equal_bipartition(int n, Rng& rng);

/// Leaf count of the literal computational-basis expansion: n per nonzero term.
std::size_t basis_expansion_size(const StateVector& s, double tol = 0.0);

// Canonical states used across modules and tests.
StateVector product_zero_state(int n);
StateVector ghz_state(int n);
StateVector w_state(int n);

}  // namespace tscomplex

#endif  // TSCOMPLEX_CORE_HPP
