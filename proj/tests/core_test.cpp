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

#include <gtest/gtest.h>

#include <map>

#include "test_util.hpp"
#include "tscomplex/core.hpp"
#include "tscomplex/fewqubit.hpp"
#include "tscomplex/io.hpp"
#include "tscomplex/random.hpp"

namespace ts = tscomplex;
using ts::Bipartition;
using ts::Complex;
using ts::StateVector;

namespace {

StateVector bell() {
  StateVector s(2);
  s[0] = s[3] = 1.0 / std::sqrt(2.0);
  return s;
}

StateVector ghz_dense(int n) {
  StateVector s(n);
  s[0] = s[s.dim() - 1] = 1.0 / std::sqrt(2.0);
  return s;
}

}  // namespace

TEST(StateVector, RejectsWrongLength) {
  EXPECT_THROW(StateVector(3, Eigen::VectorXcd::Zero(7)), std::invalid_argument);
  EXPECT_THROW(StateVector(2).normalized(), std::invalid_argument);
}

TEST(StateVector, QubitOneIsMostSignificant) {
  const StateVector s = StateVector::basis(3, 0b100);
  EXPECT_EQ(s.qubit_bit(1), 0b100u);
  EXPECT_EQ(s[4], Complex(1.0));
}

TEST(InnerProduct, Examples) {
  EXPECT_EQ(ts::inner_product(StateVector::basis(1, 0), StateVector::basis(1, 0)), Complex(1.0));
  EXPECT_EQ(ts::inner_product(StateVector::basis(1, 0), StateVector::basis(1, 1)), Complex(0.0));
  // GHZ3 and W3 share no basis string.
  const StateVector g = ghz_dense(3);
  StateVector w(3);
  for (std::uint64_t x : {1u, 2u, 4u}) w[x] = 1.0 / std::sqrt(3.0);
  EXPECT_NEAR(std::abs(ts::inner_product(g, w)), 0.0, 1e-15);
}

TEST(InnerProduct, ConjugatesLeftArgument) {
  StateVector a(1);
  a[0] = Complex(0.0, 1.0);
  StateVector b(1);
  b[0] = 1.0;
  EXPECT_EQ(ts::inner_product(a, b), Complex(0.0, -1.0));
  EXPECT_THROW(ts::inner_product(a, StateVector(2)), std::invalid_argument);
}

TEST(CoefficientMatrix, ProductAndBell) {
  const auto p = Bipartition::from_qubits(2, {1});
  Eigen::Matrix2cd expected;
  expected << 1, 0, 0, 0;
  EXPECT_EQ(ts::coefficient_matrix(StateVector::basis(2, 0), p), Eigen::MatrixXcd(expected));
  const Eigen::MatrixXcd m = ts::coefficient_matrix(bell(), p);
  EXPECT_TRUE(m.isApprox(Eigen::MatrixXcd::Identity(2, 2) / std::sqrt(2.0)));
}

TEST(CoefficientMatrix, Psi4AgainstEnumeration) {
  const StateVector s = ts::build_psi4();
  const auto p = Bipartition::from_qubits(4, {1, 2});
  const Eigen::MatrixXcd m = ts::coefficient_matrix(s, p);
  // Y = {1,2} and Z = {3,4} are contiguous, so M[y][z] = amplitude(y*4 + z).
  for (int y = 0; y < 4; ++y)
    for (int z = 0; z < 4; ++z) EXPECT_EQ(m(y, z), s[static_cast<std::uint64_t>(y * 4 + z)]);
  EXPECT_NEAR(m(1, 2).real(), 1.0 / (2.0 * std::sqrt(3.0)), 1e-15);  // |0110>
  EXPECT_NEAR(m(0, 3).real(), -1.0 / std::sqrt(3.0), 1e-15);         // |0011>
}

TEST(CoefficientMatrix, InterleavedBipartitionOrdersQubitsAscending) {
  // Y = {1,3}: y bits are (x1, x3), z bits are (x2, x4), lowest qubit first.
  const auto p = Bipartition::from_qubits(4, {1, 3});
  const StateVector s = StateVector::basis(4, 0b1001);  // x1=1, x4=1
  const Eigen::MatrixXcd m = ts::coefficient_matrix(s, p);
  EXPECT_EQ(m(0b10, 0b01), Complex(1.0));
  EXPECT_NEAR(m.cwiseAbs().sum(), 1.0, 0.0);
}

TEST(CoefficientMatrix, OddQubitCountSplitsUnequally) {
  const Eigen::MatrixXcd m = ts::coefficient_matrix(ghz_dense(3), Bipartition::from_qubits(3, {1}));
  EXPECT_EQ(m.rows(), 2);
  EXPECT_EQ(m.cols(), 4);
  EXPECT_THROW(Bipartition::equal(3, 0b100), std::invalid_argument);
}

TEST(ComplexRank, Examples) {
  EXPECT_EQ(ts::complex_rank(Eigen::MatrixXcd::Identity(4, 4)), 4);
  EXPECT_EQ(ts::complex_rank(Eigen::MatrixXcd::Ones(4, 4)), 1);
  EXPECT_EQ(ts::complex_rank(Eigen::MatrixXcd(0, 0)), 0);
  EXPECT_THROW(ts::complex_rank(Eigen::MatrixXcd::Identity(2, 2), 0.0), std::invalid_argument);
}

TEST(SchmidtRank, GhzHasRankTwoOnEveryEqualBipartition) {
  for (int n = 2; n <= 10; n += 2) {
    const StateVector g = ghz_dense(n);
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
      if (std::popcount(mask) != n / 2) continue;
      const auto p = Bipartition::equal(n, mask);
      EXPECT_EQ(ts::complex_rank(ts::coefficient_matrix(g, p)), 2);
      EXPECT_EQ(ts::schmidt_rank(StateVector::basis(n, 0), p), 1);
    }
  }
}

TEST(RandomBipartition, TwoQubitsSplitEvenly) {
  ts::Rng rng(11);
  int first = 0;
  const int draws = 20000;
  for (int i = 0; i < draws; ++i) {
    const auto p = ts::random_equal_bipartition(2, rng);
    ASSERT_TRUE(p.y_mask() == 0b01 || p.y_mask() == 0b10);
    if (p.y_mask() == 0b10) ++first;
  }
  EXPECT_NEAR(first / static_cast<double>(draws), 0.5, 3.0 * std::sqrt(0.25 / draws) + 1e-3);
  EXPECT_THROW(ts::random_equal_bipartition(3, rng), std::invalid_argument);
}

TEST(RandomBipartition, FourQubitsUniformChiSquare) {
  ts::Rng rng(2024);
  std::map<std::uint64_t, int> counts;
  const int draws = 100000;
  for (int i = 0; i < draws; ++i) ++counts[ts::random_equal_bipartition(4, rng).y_mask()];
  ASSERT_EQ(counts.size(), 6u);
  double chi2 = 0.0;
  const double expected = draws / 6.0;
  for (const auto& [mask, c] : counts) {
    EXPECT_EQ(std::popcount(mask), 2);
    chi2 += (c - expected) * (c - expected) / expected;
  }
  EXPECT_LT(chi2, ts::testing::chi2_crit_05(5));
}

TEST(RandomBipartition, DeterministicForSeed) {
  ts::Rng a(99);
  ts::Rng b(99);
  for (int i = 0; i < 100; ++i) EXPECT_EQ(ts::random_equal_bipartition(12, a), ts::random_equal_bipartition(12, b));
}

TEST(RandomBipartition, HalfSamplerMatchesMaskForm) {
  ts::Rng a(5);
  ts::Rng b(5);
  for (int i = 0; i < 50; ++i) {
    const auto labels = ts::random_equal_half(10, a);
    const auto p = ts::random_equal_bipartition(10, b);
    for (int q = 1; q <= 10; ++q)
      EXPECT_EQ(p.in_y(q), std::find(labels.begin(), labels.end(), q) != labels.end());
  }
}

// -- invariants ---------------------------------------------------------------

TEST(SchmidtRankProperty, BoundsAndSwapInvariance) {
  ts::Rng rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 2 * (1 + static_cast<int>(rng.below(4)));
    StateVector s = ts::testing::random_state(n, rng);
    // Low-rank states too: zero out a random half of the rows.
    if (trial % 2 == 1) {
      const auto p0 = ts::random_equal_bipartition(n, rng);
      Eigen::MatrixXcd m = ts::coefficient_matrix(s, p0);
      for (Eigen::Index r = 0; r < m.rows(); r += 2) m.row(r).setZero();
      s = ts::from_coefficient_matrix(m, p0);
    }
    const auto p = ts::random_equal_bipartition(n, rng);
    const int r = ts::schmidt_rank(s, p);
    EXPECT_GE(r, 1);
    EXPECT_LE(r, 1 << (n / 2));
    EXPECT_EQ(r, ts::schmidt_rank(s, p.swapped()));
  }
}

TEST(SchmidtRankProperty, InvariantUnderLocalInvertibleOperators) {
  ts::Rng rng(8);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 2 * (1 + static_cast<int>(rng.below(4)));
    // Rank-deficient input: sum of three random product states.
    StateVector s(n);
    for (int k = 0; k < 3; ++k) {
      Eigen::VectorXcd v = Eigen::VectorXcd::Ones(1);
      for (int q = 0; q < n; ++q) {
        Eigen::Vector2cd leaf(rng.complex_normal(), rng.complex_normal());
        Eigen::VectorXcd next(v.size() * 2);
        for (Eigen::Index i = 0; i < v.size(); ++i) next.segment(2 * i, 2) = v[i] * leaf;
        v = next;
      }
      s.amplitudes() += v;
    }
    Eigen::MatrixXcd op = Eigen::MatrixXcd::Ones(1, 1);
    for (int q = 0; q < n; ++q) {
      const Eigen::Matrix2cd a = ts::testing::random_invertible(rng);
      Eigen::MatrixXcd next(op.rows() * 2, op.cols() * 2);
      for (Eigen::Index i = 0; i < op.rows(); ++i)
        for (Eigen::Index j = 0; j < op.cols(); ++j) next.block(2 * i, 2 * j, 2, 2) = op(i, j) * a;
      op = next;
    }
    const StateVector t(n, op * s.amplitudes());
    const auto p = ts::random_equal_bipartition(n, rng);
    EXPECT_EQ(ts::schmidt_rank(s, p), ts::schmidt_rank(t, p));
  }
}

TEST(CoefficientMatrixProperty, RoundTripIsExact) {
  ts::Rng rng(9);
  for (int trial = 0; trial < 50; ++trial) {
    const int n = 2 * (1 + static_cast<int>(rng.below(5)));
    const StateVector s = ts::testing::random_state(n, rng);
    const auto p = ts::random_equal_bipartition(n, rng);
    const StateVector back = ts::from_coefficient_matrix(ts::coefficient_matrix(s, p), p);
    EXPECT_EQ(back.amplitudes(), s.amplitudes());
  }
}

// -- file format ----------------------------------------------------------------

TEST(StateJson, RoundTripIsBitExact) {
  ts::Rng rng(10);
  const StateVector s = ts::testing::random_state(5, rng);
  const ts::Json j = ts::state_to_json(s);
  EXPECT_EQ(j.at("n_qubits").get<int>(), 5);
  const StateVector back = ts::state_from_json(ts::Json::parse(j.dump()));
  EXPECT_EQ(back.amplitudes(), s.amplitudes());
}

TEST(StateJson, RejectsMalformedInput) {
  EXPECT_THROW(ts::state_from_json(ts::Json::parse(R"({"n_qubits": 2, "amplitudes": [[1,0]]})")),
               std::invalid_argument);
  EXPECT_THROW(ts::state_from_json(ts::Json::parse(R"({"amplitudes": []})")), std::invalid_argument);
}
