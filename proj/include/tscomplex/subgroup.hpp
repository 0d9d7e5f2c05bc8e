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

#ifndef TSCOMPLEX_SUBGROUP_HPP
#define TSCOMPLEX_SUBGROUP_HPP

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "tscomplex/core.hpp"
#include "tscomplex/gf2.hpp"

namespace tscomplex {

/// n/2 x n binary matrix A. Column j belongs to qubit j+1; the subgroup state
/// is the uniform superposition over the kernel {x : Ax = 0 mod 2}.
class SubgroupSpec {
 public:
  explicit SubgroupSpec(BitMatrix a);

  const BitMatrix& matrix() const { return a_; }
  int n() const { return static_cast<int>(a_.cols()); }

  /// Column submatrices A_y and A_z for an equal bipartition.
  BitMatrix y_block(const Bipartition& p) const;
  BitMatrix z_block(const Bipartition& p) const;

 private:
  BitMatrix a_;
};

inline constexpr int kMaxSubgroupStateQubits = 20;

StateVector subgroup_state(const SubgroupSpec& spec);

/// 1 iff a is a nonzero square mod the prime q.
int quadratic_character(std::int64_t a, std::int64_t q);
bool is_prime(std::int64_t q);

/// (I | Q) with Q_ij = chi((i - j) mod q); requires q prime and q = 3 mod 8.
SubgroupSpec jacobsthal_subgroup(std::int64_t q);

/// Signed Pauli string over {I, X, Z}. Position 0 is qubit 1.
struct PauliString {
  BitVector x;
  BitVector z;
  int sign = 1;

  std::size_t size() const { return x.size(); }
  /// Leading sign then one letter per qubit, e.g. "+IIZI".
  std::string to_string() const;
  /// Rejects letters other than I, X, Z.
  static PauliString parse(std::string_view text);

  /// Symplectic inner product is zero.
  bool commutes(const PauliString& other) const;
};

/// Z strings from the first independent rows of A, then X strings from the
/// kernel basis. Always n strings with sign +1.
std::vector<PauliString> derive_generators(const SubgroupSpec& spec);

StateVector apply_pauli(const PauliString& g, const StateVector& s);
double pauli_expectation(const PauliString& g, const StateVector& s);

bool check_stabilizes(const std::vector<PauliString>& gens, const StateVector& s, double tol = 1e-10);

/// 1/2 - |<target|s>|^2.
double witness_exact(const StateVector& s, const StateVector& target);

/// (n - 1) - sum_i <s|g_i|s>; s must be normalized.
double witness_stabilizer(const std::vector<PauliString>& gens, const StateVector& s);

/// Overlap above 1 - 1/(2n) forces a negative stabilizer witness.
double detection_threshold(int n);

struct WitnessReading {
  double value = 0.0;
  std::vector<double> means;
  std::uint64_t shots = 0;
  /// n * max_i sqrt((1 - m_i^2) / shots).
  double std_error = 0.0;
  /// value + std_error < 0.
  bool detected = false;
};

/// Estimates each <g_i> from `shots` idealized projective +-1 outcomes.
/// Generator i draws from the stream derive_seed(seed, "witness", i).
WitnessReading sample_witness(const std::vector<PauliString>& gens, const StateVector& s, std::uint64_t shots,
                              std::uint64_t seed);

/// Shots per generator for n * delta_g < 1 - alpha: ceil(n^2 / (1 - alpha)^2).
std::uint64_t required_shots(int n, double alpha);

inline constexpr int kMaxDenseWitnessQubits = 10;

/// Minimum eigenvalue of W' - 2W built densely.
double psd_gap_check(const std::vector<PauliString>& gens, const StateVector& target);

}  // namespace tscomplex

#endif  // TSCOMPLEX_SUBGROUP_HPP
