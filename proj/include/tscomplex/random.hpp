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

#ifndef TSCOMPLEX_RANDOM_HPP
#define TSCOMPLEX_RANDOM_HPP

#include <complex>
#include <cstdint>
#include <functional>
#include <random>
#include <string_view>

namespace tscomplex {

/// Seeded random stream. Satisfies UniformRandomBitGenerator so it can be
/// handed to std::shuffle and the <random> distributions.
class Rng {
 public:
  using result_type = std::uint64_t;

  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  static constexpr result_type min() { return std::mt19937_64::min(); }
  static constexpr result_type max() { return std::mt19937_64::max(); }
  result_type operator()() { return engine_(); }

  /// Uniform integer in [0, bound).
  std::uint64_t below(std::uint64_t bound);
  /// Uniform double in [0, 1).
  double uniform();
  double normal();
  /// Standard complex Gaussian (independent real/imaginary parts).
  std::complex<double> complex_normal();

 private:
  std::mt19937_64 engine_;
};

/// splitmix64 finalizer.
std::uint64_t mix64(std::uint64_t x);

/// Child seed for (seed, experiment name, index). Distinct names and indices
/// give decorrelated streams.
std::uint64_t derive_seed(std::uint64_t seed, std::string_view name, std::uint64_t index = 0);

/// Worker count: TSCOMPLEX_THREADS if set, otherwise hardware concurrency.
unsigned worker_count();

/// Runs fn(block) for block in [0, blocks) over worker_count() threads.
/// Blocks are claimed dynamically; callers must not depend on the order.
void parallel_blocks(std::uint64_t blocks, const std::function<void(std::uint64_t)>& fn);

}  // namespace tscomplex

#endif  // TSCOMPLEX_RANDOM_HPP
