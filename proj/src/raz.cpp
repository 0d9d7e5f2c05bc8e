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

#include "tscomplex/raz.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numeric>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "tscomplex/random.hpp"

namespace tscomplex {

namespace {

constexpr std::string_view kBipartitionStream = "raz-bipartition";
constexpr std::string_view kBalancedStream = "raz-balanced";

// Counts successes over `samples` draws split into fixed-size blocks.
template <typename Trial>
std::uint64_t count_successes(std::uint64_t samples, std::uint64_t seed, std::string_view stream, Trial trial) {
  const std::uint64_t blocks = (samples + kSampleBlock - 1) / kSampleBlock;
  std::atomic<std::uint64_t> total{0};
  parallel_blocks(blocks, [&](std::uint64_t b) {
    Rng rng(derive_seed(seed, stream, b));
    const std::uint64_t begin = b * kSampleBlock;
    const std::uint64_t end = std::min(samples, begin + kSampleBlock);
    std::uint64_t local = 0;
    for (std::uint64_t i = begin; i < end; ++i)
      if (trial(rng)) ++local;
    total += local;
  });
  return total.load();
}

EstimateReport make_report(std::uint64_t samples, std::uint64_t successes, std::uint64_t seed, int n) {
  EstimateReport r;
  r.samples = samples;
  r.successes = successes;
  r.p_hat = static_cast<double>(successes) / static_cast<double>(samples);
  std::tie(r.ci_low, r.ci_high) = wilson_interval(successes, samples);
  r.threshold_log2 = raz_threshold_log2(n);
  r.seed = seed;
  r.mu_n = raz_mu(n);
  return r;
}

void require_samples(std::uint64_t samples, const char* who) {
  if (samples == 0) throw std::invalid_argument(std::string(who) + ": need at least one sample");
}

constexpr std::uint64_t kPrime = 0xffffffffffffffc5ULL;  // 2^64 - 59

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % kPrime);
}

std::uint64_t inv_mod(std::uint64_t a) {
  std::uint64_t result = 1;
  std::uint64_t e = kPrime - 2;
  while (e > 0) {
    if (e & 1U) result = mul_mod(result, a);
    a = mul_mod(a, a);
    e >>= 1;
  }
  return result;
}

bool nonzero_det_mod_prime(const Eigen::MatrixXi& m) {
  const auto dim = static_cast<std::size_t>(m.rows());
  std::vector<std::uint64_t> a(dim * dim);
  for (std::size_t r = 0; r < dim; ++r)
    for (std::size_t c = 0; c < dim; ++c) {
      const int v = m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c));
      a[r * dim + c] = v >= 0 ? static_cast<std::uint64_t>(v) : kPrime - static_cast<std::uint64_t>(-v);
    }
  for (std::size_t c = 0; c < dim; ++c) {
    std::size_t piv = c;
    while (piv < dim && a[piv * dim + c] == 0) ++piv;
    if (piv == dim) return false;
    if (piv != c)
      for (std::size_t k = 0; k < dim; ++k) std::swap(a[piv * dim + k], a[c * dim + k]);
    const std::uint64_t inv = inv_mod(a[c * dim + c]);
    for (std::size_t r = c + 1; r < dim; ++r) {
      const std::uint64_t f = mul_mod(a[r * dim + c], inv);
      if (f == 0) continue;
      for (std::size_t k = c; k < dim; ++k) {
        const std::uint64_t sub = mul_mod(f, a[c * dim + k]);
        const std::uint64_t cur = a[r * dim + k];
        a[r * dim + k] = cur >= sub ? cur - sub : cur + (kPrime - sub);
      }
    }
  }
  return true;
}

}  // namespace

double raz_threshold_log2(int n) {
  if (n < 2 || n % 2 != 0) throw std::invalid_argument("raz_threshold_log2: n must be even and >= 2");
  return (n - std::pow(static_cast<double>(n), 0.125)) / 2.0;
}

double raz_mu(int n) { return std::pow(2.0, -std::pow(n / 2.0, 0.125) / 2.0); }

std::uint64_t raz_min_rank(int n) {
  const double t = raz_threshold_log2(n);
  auto r = static_cast<std::uint64_t>(std::floor(std::exp2(t)));
  while (std::log2(static_cast<double>(r)) <= t) ++r;
  return r;
}

std::pair<double, double> wilson_interval(std::uint64_t successes, std::uint64_t samples, double z) {
  if (samples == 0) throw std::invalid_argument("wilson_interval: no samples");
  if (successes > samples) throw std::invalid_argument("wilson_interval: more successes than samples");
  const double n = static_cast<double>(samples);
  const double p = static_cast<double>(successes) / n;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / n;
  const double centre = (p + z2 / (2.0 * n)) / denom;
  const double half = z * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n)) / denom;
  // Clamp so the interval always contains p_hat despite rounding.
  return {std::min(p, std::max(0.0, centre - half)), std::max(p, std::min(1.0, centre + half))};
}

EstimateReport estimate_subgroup_invertibility(const SubgroupSpec& spec, std::uint64_t samples, std::uint64_t seed) {
  require_samples(samples, "estimate_subgroup_invertibility");
  const int n = spec.n();
  const BitMatrix& a = spec.matrix();
  const std::uint64_t hits = count_successes(samples, seed, kBipartitionStream, [&](Rng& rng) {
    const std::vector<int> y = random_equal_half(n, rng);
    std::vector<std::size_t> ycols;
    std::vector<std::size_t> zcols;
    std::size_t k = 0;
    for (int q = 1; q <= n; ++q) {
      if (k < y.size() && y[k] == q) {
        ycols.push_back(static_cast<std::size_t>(q - 1));
        ++k;
      } else {
        zcols.push_back(static_cast<std::size_t>(q - 1));
      }
    }
    return gf2_is_invertible(gf2_columns(a, ycols)) && gf2_is_invertible(gf2_columns(a, zcols));
  });
  return make_report(samples, hits, seed, n);
}

EstimateReport estimate_state_schmidt(const StateVector& s, std::uint64_t samples, std::uint64_t seed, double tol) {
  require_samples(samples, "estimate_state_schmidt");
  const int n = s.n_qubits();
  if (n > 20) throw std::invalid_argument("estimate_state_schmidt: n = " + std::to_string(n) + " exceeds 20");
  const double threshold = raz_threshold_log2(n);
  const std::uint64_t hits = count_successes(samples, seed, kBipartitionStream, [&](Rng& rng) {
    const int rank = schmidt_rank(s, random_equal_bipartition(n, rng), tol);
    return rank > 0 && std::log2(static_cast<double>(rank)) > threshold;
  });
  return make_report(samples, hits, seed, n);
}

Eigen::MatrixXi sample_balanced_pm1(int dim, Rng& rng) {
  if (dim < 1 || (dim * dim) % 2 != 0)
    throw std::invalid_argument("sample_balanced_pm1: dim^2 must be even and positive");
  std::vector<int> entries(static_cast<std::size_t>(dim) * static_cast<std::size_t>(dim), -1);
  std::fill(entries.begin(), entries.begin() + static_cast<std::ptrdiff_t>(entries.size() / 2), 1);
  std::shuffle(entries.begin(), entries.end(), rng);
  Eigen::MatrixXi m(dim, dim);
  for (int r = 0; r < dim; ++r)
    for (int c = 0; c < dim; ++c) m(r, c) = entries[static_cast<std::size_t>(r * dim + c)];
  return m;
}

int exact_rank(const Eigen::MatrixXi& m) {
  using boost::multiprecision::cpp_int;
  const Eigen::Index rows = m.rows();
  const Eigen::Index cols = m.cols();
  std::vector<std::vector<cpp_int>> a(static_cast<std::size_t>(rows), std::vector<cpp_int>(static_cast<std::size_t>(cols)));
  for (Eigen::Index r = 0; r < rows; ++r)
    for (Eigen::Index c = 0; c < cols; ++c) a[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] = m(r, c);
  // Bareiss: every division below is exact.
  cpp_int prev = 1;
  std::size_t rank = 0;
  for (std::size_t c = 0; c < static_cast<std::size_t>(cols) && rank < static_cast<std::size_t>(rows); ++c) {
    std::size_t piv = rank;
    while (piv < a.size() && a[piv][c] == 0) ++piv;
    if (piv == a.size()) continue;
    std::swap(a[piv], a[rank]);
    for (std::size_t r = rank + 1; r < a.size(); ++r) {
      for (std::size_t k = c + 1; k < static_cast<std::size_t>(cols); ++k)
        a[r][k] = (a[rank][c] * a[r][k] - a[r][c] * a[rank][k]) / prev;
      a[r][c] = 0;
    }
    prev = a[rank][c];
    ++rank;
  }
  return static_cast<int>(rank);
}

bool is_nonsingular(const Eigen::MatrixXi& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("is_nonsingular: matrix must be square");
  if (m.rows() == 0) return true;
  if (nonzero_det_mod_prime(m)) return true;
  return exact_rank(m) == m.rows();
}

EstimateReport estimate_balanced_fullrank(int n, std::uint64_t samples, std::uint64_t seed) {
  require_samples(samples, "estimate_balanced_fullrank");
  if (n < 2 || n % 2 != 0) throw std::invalid_argument("estimate_balanced_fullrank: n must be even and >= 2");
  if (n / 2 > 8)
    throw std::invalid_argument("estimate_balanced_fullrank: 2^(n/2) exceeds the exact-mode limit of " +
                                std::to_string(kMaxBalancedDim));
  const int dim = 1 << (n / 2);
  const std::uint64_t hits = count_successes(samples, seed, kBalancedStream,
                                             [&](Rng& rng) { return is_nonsingular(sample_balanced_pm1(dim, rng)); });
  return make_report(samples, hits, seed, n);
}

double fc_lower_bound(double pr_e2, double q) {
  if (!(q >= 0.0 && q < 1.0)) throw std::invalid_argument("fc_lower_bound: q must lie in [0, 1)");
  return std::max(0.0, (pr_e2 - q) / (1.0 - q));
}

}  // namespace tscomplex
