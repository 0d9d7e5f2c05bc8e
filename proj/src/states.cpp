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

#include "tscomplex/states.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "tscomplex/random.hpp"

namespace tscomplex {

namespace {

std::size_t factorial(int m) {
  std::size_t f = 1;
  for (int i = 2; i <= m; ++i) f *= static_cast<std::size_t>(i);
  return f;
}

void require_dense(int n, const char* who) {
  if (n < 1 || n > kMaxFamilyQubits)
    throw std::invalid_argument(std::string(who) + ": n = " + std::to_string(n) + " outside [1, " +
                                std::to_string(kMaxFamilyQubits) + "]");
}

TreeNode uniform_leaf(int q) { return TreeNode::leaf(q, 1.0, 1.0); }

// sum_{j in S} |1>_j (|0> + |1>)^{other columns} for one row.
TreeNode row_tree(int m, int row, std::uint64_t subset) {
  std::vector<TreeNode> terms;
  for (int j = 0; j < m; ++j) {
    if (!((subset >> j) & 1U)) continue;
    std::vector<TreeNode> leaves;
    for (int c = 0; c < m; ++c) {
      const int q = m * row + c + 1;
      leaves.push_back(c == j ? TreeNode::leaf(q, 0.0, 1.0) : uniform_leaf(q));
    }
    terms.push_back(leaves.size() == 1 ? leaves.front() : TreeNode::prod(std::move(leaves)));
  }
  return terms.size() == 1 ? terms.front() : TreeNode::sum(std::move(terms));
}

}  // namespace

ImmanantCoefficients permanent_coefficients(int m) {
  if (m < 1 || m > kMaxImmanantDim) throw std::invalid_argument("permanent_coefficients: m outside [1, 7]");
  return ImmanantCoefficients(factorial(m), Complex(1.0));
}

ImmanantCoefficients determinant_coefficients(int m) {
  if (m < 1 || m > kMaxImmanantDim) throw std::invalid_argument("determinant_coefficients: m outside [1, 7]");
  std::vector<int> perm(static_cast<std::size_t>(m));
  std::iota(perm.begin(), perm.end(), 0);
  ImmanantCoefficients out;
  do {
    int inversions = 0;
    for (int i = 0; i < m; ++i)
      for (int j = i + 1; j < m; ++j)
        if (perm[static_cast<std::size_t>(i)] > perm[static_cast<std::size_t>(j)]) ++inversions;
    out.emplace_back(inversions % 2 == 0 ? 1.0 : -1.0);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return out;
}

Complex immanant(const Eigen::MatrixXcd& m, const ImmanantCoefficients& coeffs) {
  if (m.rows() != m.cols()) throw std::invalid_argument("immanant: matrix must be square");
  const auto dim = static_cast<int>(m.rows());
  if (dim < 1 || dim > kMaxImmanantDim) throw std::invalid_argument("immanant: dimension outside [1, 7]");
  if (coeffs.size() != factorial(dim))
    throw std::invalid_argument("immanant: expected " + std::to_string(factorial(dim)) + " coefficients, got " +
                                std::to_string(coeffs.size()));
  std::vector<int> perm(static_cast<std::size_t>(dim));
  std::iota(perm.begin(), perm.end(), 0);
  Complex total(0.0);
  std::size_t rank = 0;
  do {
    const Complex c = coeffs[rank++];
    if (c == Complex(0.0)) continue;
    Complex prod = c;
    for (int i = 0; i < dim; ++i) prod *= m(i, perm[static_cast<std::size_t>(i)]);
    total += prod;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return total;
}

Eigen::MatrixXcd square_arrangement(std::uint64_t x, int m) {
  if (m < 1 || m > 8) throw std::invalid_argument("square_arrangement: m outside [1, 8]");
  const int n = m * m;
  Eigen::MatrixXcd out(m, m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) out(i, j) = static_cast<double>((x >> (n - 1 - (m * i + j))) & 1U);
  return out;
}

StateVector immanant_state(int m, const ImmanantCoefficients& coeffs) {
  if (m < 1 || m > kMaxImmanantStateDim) throw std::invalid_argument("immanant_state: m outside [1, 4]");
  const int n = m * m;
  StateVector s(n);
  for (std::uint64_t x = 0; x < s.dim(); ++x) s[x] = immanant(square_arrangement(x, m), coeffs);
  if (s.norm() == 0.0) throw std::invalid_argument("immanant_state: every amplitude vanishes");
  return s.normalized();
}

TreeNode permanent_state_tree(int m) {
  if (m < 1 || m > kMaxImmanantStateDim) throw std::invalid_argument("permanent_state_tree: m outside [1, 4]");
  std::vector<TreeNode> branches;
  for (std::uint64_t subset = 1; subset < (std::uint64_t{1} << m); ++subset) {
    std::vector<TreeNode> rows;
    for (int i = 0; i < m; ++i) rows.push_back(row_tree(m, i, subset));
    TreeNode branch = rows.size() == 1 ? rows.front() : TreeNode::prod(std::move(rows));
    if ((m - std::popcount(subset)) % 2 != 0) branch = scale_tree(branch, -1.0);
    branches.push_back(std::move(branch));
  }
  return branches.size() == 1 ? branches.front() : TreeNode::sum(std::move(branches));
}

bool BooleanFunction::is_balanced() const {
  return std::count(values.begin(), values.end(), std::uint8_t{1}) * 2 == static_cast<std::ptrdiff_t>(values.size());
}

bool BooleanFunction::is_constant() const {
  return std::all_of(values.begin(), values.end(), [&](std::uint8_t v) { return v == values.front(); });
}

BooleanFunction constant_function(int n, bool value) {
  require_dense(n, "constant_function");
  return {n, std::vector<std::uint8_t>(std::size_t{1} << n, value ? 1 : 0)};
}

BooleanFunction random_balanced_function(int n, Rng& rng) {
  require_dense(n, "random_balanced_function");
  std::vector<std::uint8_t> values(std::size_t{1} << n, 0);
  std::fill(values.begin(), values.begin() + static_cast<std::ptrdiff_t>(values.size() / 2), std::uint8_t{1});
  std::shuffle(values.begin(), values.end(), rng);
  return {n, std::move(values)};
}

StateVector dj_state(const BooleanFunction& f) {
  require_dense(f.n, "dj_state");
  if (f.values.size() != (std::size_t{1} << f.n)) throw std::invalid_argument("dj_state: truth table has wrong length");
  StateVector s(f.n);
  const double amp = std::pow(2.0, -0.5 * f.n);
  for (std::uint64_t x = 0; x < s.dim(); ++x) s[x] = f.values[x] ? -amp : amp;
  return s;
}

StateVector pz_state(int n, std::uint64_t p) {
  require_dense(n, "pz_state");
  const std::uint64_t dim = std::uint64_t{1} << n;
  if (p < 1 || p >= dim) throw std::invalid_argument("pz_state: p must lie in [1, 2^n)");
  const std::uint64_t terms = (dim - 1) / p + 1;
  StateVector s(n);
  const double amp = 1.0 / std::sqrt(static_cast<double>(terms));
  for (std::uint64_t x = 0; x < dim; x += p) s[x] = amp;
  return s;
}

std::uint64_t multiplicative_order(std::uint64_t s, std::uint64_t modulus) {
  if (modulus < 1) throw std::invalid_argument("multiplicative_order: modulus must be positive");
  if (std::gcd(s, modulus) != 1) throw std::invalid_argument("multiplicative_order: gcd(s, N) must be 1");
  if (modulus == 1) return 1;
  std::uint64_t x = s % modulus;
  std::uint64_t r = 1;
  while (x != 1) {
    x = static_cast<std::uint64_t>(static_cast<unsigned __int128>(x) * s % modulus);
    ++r;
  }
  return r;
}

StateVector shor_state(int n, std::uint64_t s, std::uint64_t modulus) {
  if (n < 1 || 2 * n > kMaxFamilyQubits) throw std::invalid_argument("shor_state: 2n must lie in [2, 20]");
  if (modulus < 2 || modulus > (std::uint64_t{1} << n))
    throw std::invalid_argument("shor_state: N must lie in [2, 2^n]");
  if (std::gcd(s, modulus) != 1) throw std::invalid_argument("shor_state: gcd(s, N) must be 1");
  const std::uint64_t dim = std::uint64_t{1} << n;
  StateVector out(2 * n);
  const double amp = std::pow(2.0, -0.5 * n);
  std::uint64_t power = 1 % modulus;
  for (std::uint64_t r = 0; r < dim; ++r) {
    out[(r << n) | power] = amp;
    power = power * (s % modulus) % modulus;
  }
  return out;
}

StateVector shor_postselect(const StateVector& state, int n, std::uint64_t outcome) {
  if (state.n_qubits() != 2 * n) throw std::invalid_argument("shor_postselect: state must have 2n qubits");
  const std::uint64_t dim = std::uint64_t{1} << n;
  if (outcome >= dim) throw std::invalid_argument("shor_postselect: outcome out of range");
  StateVector first(n);
  for (std::uint64_t r = 0; r < dim; ++r) first[r] = state[(r << n) | outcome];
  if (first.norm() == 0.0) throw std::invalid_argument("shor_postselect: outcome has zero probability");
  return first.normalized();
}

}  // namespace tscomplex
