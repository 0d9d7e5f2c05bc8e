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

#ifndef TSCOMPLEX_RAZ_HPP
#define TSCOMPLEX_RAZ_HPP

#include <cstdint>
#include <utility>

#include <Eigen/Dense>

#include "tscomplex/core.hpp"
#include "tscomplex/subgroup.hpp"

namespace tscomplex {

struct EstimateReport {
  std::uint64_t samples = 0;
  std::uint64_t successes = 0;
  double p_hat = 0.0;
  /// 95% Wilson score interval.
  double ci_low = 0.0;
  double ci_high = 0.0;
  double threshold_log2 = 0.0;
  std::uint64_t seed = 0;
  /// 2^{-(n/2)^{1/8}/2}, the overlap scale below which the approximate
  /// lower bound still applies.
  double mu_n = 0.0;
};

/// (n - n^{1/8}) / 2. Success means log2(rank) exceeds this strictly.
double raz_threshold_log2(int n);
double raz_mu(int n);

/// Smallest integer rank with log2(rank) > raz_threshold_log2(n).
std::uint64_t raz_min_rank(int n);

inline constexpr double kWilsonZ95 = 1.959963984540054;

std::pair<double, double> wilson_interval(std::uint64_t successes, std::uint64_t samples, double z = kWilsonZ95);

/// Samples are processed in fixed blocks; block b draws from
/// derive_seed(seed, name, b), so results do not depend on the thread count.
inline constexpr std::uint64_t kSampleBlock = 256;

/// Success when both column blocks A_y and A_z are invertible over GF(2) for a
/// uniform equal bipartition. No statevector; any even n.
EstimateReport estimate_subgroup_invertibility(const SubgroupSpec& spec, std::uint64_t samples, std::uint64_t seed);

/// Success when log2 of the numerical Schmidt rank exceeds the threshold.
/// Draws the same bipartitions as estimate_subgroup_invertibility for equal
/// (seed, n).
EstimateReport estimate_state_schmidt(const StateVector& s, std::uint64_t samples, std::uint64_t seed,
                                      double tol = kRankTolerance);

/// Uniform dim x dim matrix with dim^2/2 entries +1 and the rest -1.
Eigen::MatrixXi sample_balanced_pm1(int dim, Rng& rng);

/// Rank over the rationals by fraction-free elimination in arbitrary precision.
int exact_rank(const Eigen::MatrixXi& m);

/// Exact nonsingularity: a nonzero determinant mod a large prime decides
/// quickly; otherwise falls back to exact_rank.
bool is_nonsingular(const Eigen::MatrixXi& m);

inline constexpr int kMaxBalancedDim = 256;

/// Probability that a balanced 2^{n/2} x 2^{n/2} +-1 matrix has full rank.
EstimateReport estimate_balanced_fullrank(int n, std::uint64_t samples, std::uint64_t seed);

/// (pr_e2 - q) / (1 - q), clamped at zero.
double fc_lower_bound(double pr_e2, double q);

}  // namespace tscomplex

#endif  // TSCOMPLEX_RAZ_HPP
