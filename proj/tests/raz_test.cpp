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

#include <algorithm>
#include <cstdlib>
#include <map>
#include <numeric>

#include "test_util.hpp"
#include "tscomplex/raz.hpp"

namespace ts = tscomplex;
using ts::BitMatrix;
using ts::EstimateReport;
using ts::SubgroupSpec;

namespace {

// |p_hat - p| within k binomial standard deviations.
void expect_near_probability(const EstimateReport& r, double p, double k = 4.0) {
  const double sigma = std::sqrt(p * (1.0 - p) / static_cast<double>(r.samples));
  EXPECT_LE(std::abs(r.p_hat - p), k * sigma + 1e-12) << "p_hat " << r.p_hat << " vs " << p;
}

void expect_report_invariants(const EstimateReport& r) {
  EXPECT_LE(r.successes, r.samples);
  EXPECT_DOUBLE_EQ(r.p_hat, static_cast<double>(r.successes) / static_cast<double>(r.samples));
  EXPECT_LE(r.ci_low, r.p_hat);
  EXPECT_GE(r.ci_high, r.p_hat);
  EXPECT_GE(r.ci_low, 0.0);
  EXPECT_LE(r.ci_high, 1.0);
}

// GF(2) rank of columns given as bitmasks over at most 32 rows.
int rank_of_columns(std::vector<std::uint32_t> cols) {
  int rank = 0;
  for (int bit = 31; bit >= 0; --bit) {
    auto it = std::find_if(cols.begin() + rank, cols.end(), [&](std::uint32_t c) { return (c >> bit) & 1U; });
    if (it == cols.end()) continue;
    std::iter_swap(cols.begin() + rank, it);
    for (auto jt = cols.begin() + rank + 1; jt != cols.end(); ++jt)
      if ((*jt >> bit) & 1U) *jt ^= cols[static_cast<std::size_t>(rank)];
    ++rank;
  }
  return rank;
}

// Exact invertibility probability over all equal bipartitions.
double exhaustive_invertibility(const BitMatrix& a) {
  const int n = static_cast<int>(a.cols());
  const int rows = static_cast<int>(a.rows());
  std::vector<std::uint32_t> col(static_cast<std::size_t>(n), 0);
  for (int j = 0; j < n; ++j)
    for (int r = 0; r < rows; ++r)
      if (a.get(static_cast<std::size_t>(r), static_cast<std::size_t>(j))) col[static_cast<std::size_t>(j)] |= 1U << r;
  std::vector<int> choose(static_cast<std::size_t>(n), 0);
  std::fill(choose.begin() + n / 2, choose.end(), 1);
  std::uint64_t good = 0, total = 0;
  do {
    std::vector<std::uint32_t> y, z;
    for (int j = 0; j < n; ++j) (choose[static_cast<std::size_t>(j)] ? y : z).push_back(col[static_cast<std::size_t>(j)]);
    good += rank_of_columns(y) == rows && rank_of_columns(z) == rows;
    ++total;
  } while (std::next_permutation(choose.begin(), choose.end()));
  return static_cast<double>(good) / static_cast<double>(total);
}

std::int64_t det_laplace(const std::vector<std::vector<std::int64_t>>& m) {
  const std::size_t k = m.size();
  if (k == 1) return m[0][0];
  std::int64_t total = 0;
  for (std::size_t c = 0; c < k; ++c) {
    std::vector<std::vector<std::int64_t>> minor;
    for (std::size_t r = 1; r < k; ++r) {
      std::vector<std::int64_t> row;
      for (std::size_t j = 0; j < k; ++j)
        if (j != c) row.push_back(m[r][j]);
      minor.push_back(row);
    }
    total += (c % 2 ? -1 : 1) * m[0][c] * det_laplace(minor);
  }
  return total;
}

// Fraction of balanced +-1 arrangements of a dim x dim matrix that are
// nonsingular, by enumerating every arrangement.
double exhaustive_balanced(int dim) {
  const int cells = dim * dim;
  std::vector<int> signs(static_cast<std::size_t>(cells), -1);
  std::fill(signs.begin() + cells / 2, signs.end(), 1);
  std::uint64_t good = 0, total = 0;
  do {
    std::vector<std::vector<std::int64_t>> m(static_cast<std::size_t>(dim), std::vector<std::int64_t>(static_cast<std::size_t>(dim)));
    for (int i = 0; i < cells; ++i) m[static_cast<std::size_t>(i / dim)][static_cast<std::size_t>(i % dim)] = signs[static_cast<std::size_t>(i)];
    good += det_laplace(m) != 0;
    ++total;
  } while (std::next_permutation(signs.begin(), signs.end()));
  return static_cast<double>(good) / static_cast<double>(total);
}

Eigen::MatrixXi random_pm1(int dim, ts::Rng& rng) {
  Eigen::MatrixXi m(dim, dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) m(i, j) = rng.below(2) ? 1 : -1;
  return m;
}

class ThreadEnv {
 public:
  explicit ThreadEnv(const char* value) {
    if (const char* old = std::getenv("TSCOMPLEX_THREADS")) saved_ = old;
    setenv("TSCOMPLEX_THREADS", value, 1);
  }
  ~ThreadEnv() {
    if (saved_.empty()) unsetenv("TSCOMPLEX_THREADS");
    else setenv("TSCOMPLEX_THREADS", saved_.c_str(), 1);
  }

 private:
  std::string saved_;
};

}  // namespace

// -- thresholds and intervals -----------------------------------------------------

TEST(Threshold, Examples) {
  EXPECT_NEAR(ts::raz_threshold_log2(16), (16.0 - std::sqrt(2.0)) / 2.0, 1e-12);
  EXPECT_NEAR(ts::raz_threshold_log2(16), 7.2929, 1e-4);
  EXPECT_NEAR(ts::raz_threshold_log2(2), 0.4548, 1e-4);
  for (int n = 2; n <= 200; n += 2) EXPECT_LT(ts::raz_threshold_log2(n), n / 2.0);
  EXPECT_THROW(ts::raz_threshold_log2(3), std::invalid_argument);
  EXPECT_THROW(ts::raz_threshold_log2(0), std::invalid_argument);
}

TEST(Threshold, MinimumRankIsStrict) {
  for (int n = 2; n <= 40; n += 2) {
    const auto r = ts::raz_min_rank(n);
    EXPECT_GT(std::log2(static_cast<double>(r)), ts::raz_threshold_log2(n));
    EXPECT_LE(std::log2(static_cast<double>(r - 1)), ts::raz_threshold_log2(n));
  }
  EXPECT_EQ(ts::raz_min_rank(16), 157u);
}

TEST(Threshold, Mu) {
  EXPECT_NEAR(ts::raz_mu(2), std::pow(2.0, -0.5), 1e-15);
  EXPECT_NEAR(ts::raz_mu(512), std::pow(2.0, -std::pow(256.0, 0.125) / 2.0), 1e-15);
}

TEST(Wilson, ClosedFormAndBounds) {
  const double z = ts::kWilsonZ95;
  auto [lo0, hi0] = ts::wilson_interval(0, 10);
  EXPECT_DOUBLE_EQ(lo0, 0.0);
  EXPECT_NEAR(hi0, z * z / (10.0 + z * z), 1e-12);
  auto [lo1, hi1] = ts::wilson_interval(10, 10);
  EXPECT_NEAR(lo1, 10.0 / (10.0 + z * z), 1e-12);
  EXPECT_DOUBLE_EQ(hi1, 1.0);
  auto [lo, hi] = ts::wilson_interval(30, 100);
  const double p = 0.3, n = 100.0;
  const double centre = (p + z * z / (2 * n)) / (1 + z * z / n);
  const double half = z / (1 + z * z / n) * std::sqrt(p * (1 - p) / n + z * z / (4 * n * n));
  EXPECT_NEAR(lo, centre - half, 1e-12);
  EXPECT_NEAR(hi, centre + half, 1e-12);
  EXPECT_THROW(ts::wilson_interval(1, 0), std::invalid_argument);
  EXPECT_THROW(ts::wilson_interval(3, 2), std::invalid_argument);
}

TEST(WilsonProperty, ContainsEstimate) {
  for (std::uint64_t n : {1u, 7u, 100u, 100000u})
    for (std::uint64_t k = 0; k <= n; k += std::max<std::uint64_t>(1, n / 13)) {
      auto [lo, hi] = ts::wilson_interval(k, n);
      const double p = static_cast<double>(k) / static_cast<double>(n);
      EXPECT_LE(lo, p);
      EXPECT_GE(hi, p);
    }
}

// -- subgroup fast path --------------------------------------------------------------

TEST(SubgroupInvertibility, IdentityPairsMatchExhaustive) {
  const BitMatrix a = BitMatrix::from_rows({"1010", "0101"});
  const double exact = exhaustive_invertibility(a);
  EXPECT_NEAR(exact, 4.0 / 6.0, 1e-15);
  const auto r = ts::estimate_subgroup_invertibility(SubgroupSpec(a), 20000, 5);
  expect_report_invariants(r);
  expect_near_probability(r, exact);
  EXPECT_LE(r.ci_low, exact);
  EXPECT_GE(r.ci_high, exact);
}

TEST(SubgroupInvertibility, ZeroMatrixNeverSucceeds) {
  const auto r = ts::estimate_subgroup_invertibility(SubgroupSpec(BitMatrix(4, 8)), 1000, 1);
  EXPECT_EQ(r.successes, 0u);
  EXPECT_EQ(r.p_hat, 0.0);
  expect_report_invariants(r);
}

TEST(SubgroupInvertibility, JacobsthalElevenMatchesExhaustive) {
  const SubgroupSpec spec = ts::jacobsthal_subgroup(11);
  const double exact = exhaustive_invertibility(spec.matrix());
  const auto r = ts::estimate_subgroup_invertibility(spec, 10000, 1);
  expect_near_probability(r, exact);
  EXPECT_GT(exact, 0.2);
  EXPECT_LT(exact, 0.6);
}

TEST(SubgroupInvertibility, RandomSpecsMatchExhaustive) {
  ts::Rng rng(41);
  for (int n : {6, 10, 14}) {
    const SubgroupSpec spec(BitMatrix::random(static_cast<std::size_t>(n / 2), static_cast<std::size_t>(n), rng));
    expect_near_probability(ts::estimate_subgroup_invertibility(spec, 5000, 2), exhaustive_invertibility(spec.matrix()));
  }
}

TEST(SubgroupInvertibility, ScalesBeyondSixtyFourQubits) {
  const auto r = ts::estimate_subgroup_invertibility(ts::jacobsthal_subgroup(59), 500, 3);
  EXPECT_EQ(r.samples, 500u);
  expect_report_invariants(r);
}

// -- state estimator ------------------------------------------------------------------

TEST(StateSchmidt, GhzAndProductNeverSucceed) {
  const auto ghz = ts::estimate_state_schmidt(ts::ghz_state(16), 64, 1);
  EXPECT_EQ(ghz.successes, 0u);
  EXPECT_NEAR(ghz.threshold_log2, 7.2929, 1e-4);
  EXPECT_EQ(ts::estimate_state_schmidt(ts::product_zero_state(10), 200, 1).successes, 0u);
  EXPECT_THROW(ts::estimate_state_schmidt(ts::product_zero_state(22), 1, 1), std::invalid_argument);
}

TEST(StateSchmidt, AgreesWithFastPathOnSharedBipartitions) {
  ts::Rng rng(42);
  for (int trial = 0; trial < 3; ++trial) {
    const SubgroupSpec spec(BitMatrix::random(6, 12, rng));
    const auto fast = ts::estimate_subgroup_invertibility(spec, 1000, 9);
    const auto dense = ts::estimate_state_schmidt(ts::subgroup_state(spec), 1000, 9);
    // Identical bipartitions; full Schmidt rank holds exactly when both blocks are invertible.
    EXPECT_EQ(fast.successes, dense.successes);
    EXPECT_LE(std::max(fast.ci_low, dense.ci_low), std::min(fast.ci_high, dense.ci_high));
  }
}

// -- balanced +-1 matrices ----------------------------------------------------------------

TEST(BalancedSample, EntriesBalanced) {
  ts::Rng rng(43);
  for (int dim : {2, 4, 8, 16}) {
    const Eigen::MatrixXi m = ts::sample_balanced_pm1(dim, rng);
    EXPECT_EQ(m.sum(), 0);
    EXPECT_EQ((m.array() == 1).count(), dim * dim / 2);
    EXPECT_EQ((m.array().abs() == 1).count(), dim * dim);
  }
  EXPECT_THROW(ts::sample_balanced_pm1(3, rng), std::invalid_argument);
}

TEST(BalancedSample, UniformOverSixArrangements) {
  ts::Rng rng(44);
  std::map<std::vector<int>, int> counts;
  const int draws = 100000;
  for (int i = 0; i < draws; ++i) {
    const Eigen::MatrixXi m = ts::sample_balanced_pm1(2, rng);
    counts[{m(0, 0), m(0, 1), m(1, 0), m(1, 1)}]++;
  }
  ASSERT_EQ(counts.size(), 6u);
  double chi2 = 0.0;
  for (const auto& [k, c] : counts) chi2 += std::pow(c - draws / 6.0, 2) / (draws / 6.0);
  EXPECT_LT(chi2, ts::testing::chi2_crit_001(5));
}

TEST(BalancedFullRank, TwoByTwoMatchesEnumeration) {
  // ad = bc whenever two entries are +1 and two are -1, so every arrangement is singular.
  const double exact = exhaustive_balanced(2);
  EXPECT_EQ(exact, 0.0);
  const auto r = ts::estimate_balanced_fullrank(2, 10000, 1);
  EXPECT_EQ(r.p_hat, exact);
  expect_report_invariants(r);
}

TEST(BalancedFullRank, FourByFourMatchesEnumeration) {
  const double exact = exhaustive_balanced(4);
  const auto r = ts::estimate_balanced_fullrank(4, 100000, 2);
  expect_near_probability(r, exact);
  EXPECT_LE(r.ci_low, exact);
  EXPECT_GE(r.ci_high, exact);
}

TEST(BalancedFullRank, CurveRises) {
  double prev_low = 0.0;
  for (int n : {6, 8, 10, 12}) {
    const auto r = ts::estimate_balanced_fullrank(n, 1000, 3);
    EXPECT_GE(r.ci_high, prev_low) << n;  // non-decreasing up to interval overlap
    prev_low = r.ci_low;
  }
  EXPECT_GT(ts::estimate_balanced_fullrank(12, 1000, 3).p_hat, 0.9);
}

TEST(BalancedFullRank, RejectsUnsupportedSizes) {
  EXPECT_THROW(ts::estimate_balanced_fullrank(3, 10, 1), std::invalid_argument);
  EXPECT_THROW(ts::estimate_balanced_fullrank(18, 10, 1), std::invalid_argument);
}

TEST(ExactRank, AgreesWithLuOnSmallMatrices) {
  ts::Rng rng(45);
  for (int trial = 0; trial < 300; ++trial) {
    const int dim = 1 + static_cast<int>(rng.below(8));
    Eigen::MatrixXi m = random_pm1(dim, rng);
    if (dim > 2 && rng.below(2)) m.row(dim - 1) = m.row(0) - m.row(1) + m.row(2);  // forced dependency
    const int lu = static_cast<int>(Eigen::FullPivLU<Eigen::MatrixXd>(m.cast<double>()).rank());
    EXPECT_EQ(ts::exact_rank(m), lu);
    EXPECT_EQ(ts::is_nonsingular(m), lu == dim);
  }
}

TEST(ExactRank, KnownRanks) {
  Eigen::VectorXi u(5), v(5);
  u << 1, -1, 1, 1, -1;
  v << -1, -1, 1, -1, 1;
  EXPECT_EQ(ts::exact_rank(u * v.transpose()), 1);
  EXPECT_EQ(ts::exact_rank(Eigen::MatrixXi::Zero(3, 3)), 0);
  EXPECT_EQ(ts::exact_rank(Eigen::MatrixXi::Identity(64, 64)), 64);
}

TEST(ExactRankProperty, PermutationAndTransposeInvariant) {
  ts::Rng rng(46);
  for (int trial = 0; trial < 20; ++trial) {
    const int dim = 2 + static_cast<int>(rng.below(63));
    Eigen::MatrixXi m = random_pm1(dim, rng);
    if (rng.below(2)) m.col(dim - 1) = m.col(0);
    const int r = ts::exact_rank(m);
    std::vector<int> rows(static_cast<std::size_t>(dim)), cols(static_cast<std::size_t>(dim));
    std::iota(rows.begin(), rows.end(), 0);
    std::iota(cols.begin(), cols.end(), 0);
    std::shuffle(rows.begin(), rows.end(), rng);
    std::shuffle(cols.begin(), cols.end(), rng);
    Eigen::MatrixXi p(dim, dim);
    for (int i = 0; i < dim; ++i)
      for (int j = 0; j < dim; ++j) p(i, j) = m(rows[static_cast<std::size_t>(i)], cols[static_cast<std::size_t>(j)]);
    EXPECT_EQ(ts::exact_rank(p), r);
    EXPECT_EQ(ts::exact_rank(Eigen::MatrixXi(m.transpose())), r);
    EXPECT_EQ(ts::is_nonsingular(m), r == dim);
  }
}

TEST(FcBound, Examples) {
  EXPECT_DOUBLE_EQ(ts::fc_lower_bound(1.0, 0.5), 1.0);
  EXPECT_NEAR(ts::fc_lower_bound(0.9, 0.5), 0.8, 1e-15);
  EXPECT_DOUBLE_EQ(ts::fc_lower_bound(0.3, 0.3), 0.0);
  EXPECT_DOUBLE_EQ(ts::fc_lower_bound(0.1, 0.3), 0.0);
  EXPECT_THROW(ts::fc_lower_bound(0.5, 1.0), std::invalid_argument);
}

// -- reproducibility ------------------------------------------------------------------

TEST(Reproducibility, BitForBitAcrossRunsAndThreadCounts) {
  const SubgroupSpec spec = ts::jacobsthal_subgroup(19);
  EstimateReport one, many;
  {
    ThreadEnv env("1");
    one = ts::estimate_subgroup_invertibility(spec, 3000, 77);
  }
  {
    ThreadEnv env("5");
    many = ts::estimate_subgroup_invertibility(spec, 3000, 77);
  }
  EXPECT_EQ(one.successes, many.successes);
  EXPECT_EQ(one.ci_low, many.ci_low);
  EXPECT_EQ(ts::estimate_subgroup_invertibility(spec, 3000, 77).successes, one.successes);
  EXPECT_EQ(one.seed, 77u);

  EstimateReport b1, b2;
  {
    ThreadEnv env("1");
    b1 = ts::estimate_balanced_fullrank(6, 2000, 5);
  }
  {
    ThreadEnv env("3");
    b2 = ts::estimate_balanced_fullrank(6, 2000, 5);
  }
  EXPECT_EQ(b1.successes, b2.successes);
}
