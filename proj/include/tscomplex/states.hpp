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

#ifndef TSCOMPLEX_STATES_HPP
#define TSCOMPLEX_STATES_HPP

#include <bit>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

#include "tscomplex/core.hpp"
#include "tscomplex/tree.hpp"

namespace tscomplex {

/// Ryser's inclusion-exclusion formula with Gray-code subset order,
/// O(2^m m) after the first subset.
template <typename Derived>
typename Derived::Scalar permanent_ryser(const Eigen::MatrixBase<Derived>& m) {
  using Scalar = typename Derived::Scalar;
  if (m.rows() != m.cols()) throw std::invalid_argument("permanent_ryser: matrix must be square");
  const auto dim = static_cast<int>(m.rows());
  if (dim > 20) throw std::invalid_argument("permanent_ryser: dimension above 20");
  if (dim == 0) return Scalar(1);
  Eigen::Matrix<Scalar, Eigen::Dynamic, 1> row_sums = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>::Zero(dim);
  Scalar total(0);
  std::uint64_t gray = 0;
  for (std::uint64_t k = 1; k < (std::uint64_t{1} << dim); ++k) {
    const int j = std::countr_zero(k);
    const std::uint64_t bit = std::uint64_t{1} << j;
    gray ^= bit;
    if (gray & bit)
      row_sums += m.col(j);
    else
      row_sums -= m.col(j);
    const Scalar prod = row_sums.prod();
    // (-1)^{m - |S|}
    if ((dim - std::popcount(gray)) % 2 == 0)
      total += prod;
    else
      total -= prod;
  }
  return total;
}

/// Coefficients c_sigma indexed by the rank of sigma in lexicographic order
/// (the order std::next_permutation visits from the identity).
using ImmanantCoefficients = std::vector<Complex>;

ImmanantCoefficients permanent_coefficients(int m);
ImmanantCoefficients determinant_coefficients(int m);

inline constexpr int kMaxImmanantDim = 7;

/// sum_sigma c_sigma prod_i M(i, sigma(i)) by enumeration.
Complex immanant(const Eigen::MatrixXcd& m, const ImmanantCoefficients& coeffs);

/// M(x)_{ij} = x_{m(i-1)+j}; bit x_k is qubit k of basis index x (n = m^2).
Eigen::MatrixXcd square_arrangement(std::uint64_t x, int m);

inline constexpr int kMaxImmanantStateDim = 4;

/// Normalized sum_x Imm(M(x)) |x>.
StateVector immanant_state(int m, const ImmanantCoefficients& coeffs);

/// Unnormalized permanent state as a tree: one product branch per nonempty
/// column subset S, each row a sum over j in S. Size m^3 2^{m-1}.
TreeNode permanent_state_tree(int m);

/// Truth table over n inputs; entry x is f(x).
struct BooleanFunction {
  int n = 0;
  std::vector<std::uint8_t> values;

  bool is_balanced() const;
  bool is_constant() const;
};

BooleanFunction constant_function(int n, bool value);
/// Uniform over the C(2^n, 2^{n-1}) balanced functions.
BooleanFunction random_balanced_function(int n, Rng& rng);

inline constexpr int kMaxFamilyQubits = 20;

/// 2^{-n/2} sum_x (-1)^{f(x)} |x>.
StateVector dj_state(const BooleanFunction& f);

/// Uniform superposition of the multiples 0, p, 2p, ... below 2^n.
StateVector pz_state(int n, std::uint64_t p);

std::uint64_t multiplicative_order(std::uint64_t s, std::uint64_t modulus);

/// 2^{-n/2} sum_r |r>|s^r mod N> on 2n qubits, register one most significant.
StateVector shor_state(int n, std::uint64_t s, std::uint64_t modulus);

/// Normalized first register after measuring register two at `outcome`.
StateVector shor_postselect(const StateVector& state, int n, std::uint64_t outcome = 1);

}  // namespace tscomplex

#endif  // TSCOMPLEX_STATES_HPP
