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

#ifndef TSCOMPLEX_FEWQUBIT_HPP
#define TSCOMPLEX_FEWQUBIT_HPP

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "tscomplex/core.hpp"
#include "tscomplex/tree.hpp"

namespace tscomplex {

/// SLOCC classes of three-qubit pure states. The biseparable classes are
/// named after the qubit that factors out: B23|1 means qubit 1 is a
/// separate factor and qubits 2, 3 are entangled.
enum class Slocc3Class { Product, B12_3, B13_2, B23_1, W, GHZ };

std::string to_string(Slocc3Class c);
Slocc3Class slocc3_class_from_string(std::string_view s);

inline constexpr double kTangleTolerance = 1e-10;

/// 3-tangle 4|Cayley hyperdeterminant| of the normalized state.
double three_tangle(const StateVector& s);

Slocc3Class slocc_classify3(const StateVector& s, double tangle_tol = kTangleTolerance,
                            double rank_tol = kRankTolerance);

/// Minimal tree size of each class: P 3, B 5, GHZ 6, W 8.
int ts_from_class3(Slocc3Class c);

struct EpsilonWitness {
  int ts_epsilon = 6;
  /// Normalized GHZ-class state with |<witness|W>|^2 >= 1 - epsilon.
  StateVector witness;
  /// Parameter t of the family ((|0>+t|1>)^3 - |000>)/t.
  double t = 0.0;
  double overlap_squared = 0.0;
};

/// The W state is approximated arbitrarily well by GHZ-class states, so its
/// epsilon tree size is 6 for every 0 < epsilon < 1.
EpsilonWitness ts_epsilon_w3(double epsilon);

/// The maximally complex four-qubit example (computational-basis size 24).
StateVector build_psi4();

// -- numerical tree fitting -------------------------------------------------

struct FitOptions {
  int restarts = 64;
  int iterations = 400;
  std::uint64_t seed = 1;
  double success_residual = 1e-8;
  /// Sweeps stop early once the residual falls below this value.
  double target_residual = 1e-13;
};

struct FitResult {
  TreeNode tree;
  /// 1 - |<target|tree>|^2 / (|target|^2 |tree|^2), clamped at zero.
  double residual = 1.0;
  std::size_t size = 0;
  int restarts_used = 0;
  /// Best residual seen after each restart; non-increasing.
  std::vector<double> best_history;

  bool success(double threshold = 1e-8) const { return residual < threshold; }
};

/// Fits the leaf amplitudes of `shape` (its own amplitudes are ignored) to the
/// target by multistart block-coordinate ascent on the normalized overlap,
/// each restart finished by a damped Gauss-Newton pass over all leaves.
/// Restarts are independent; each draws a stream from (seed, restart index).
FitResult fit_tree(const StateVector& target, const TreeNode& shape, const FitOptions& options = {});

/// Shapes with free leaves, written with unit amplitudes. Qubit labels matter.
TreeNode shape_ghz3();
TreeNode shape_w3();
/// Two-branch form (phi_12 x varphi_34) + (phi'_13 x varphi'_24), 16 leaves.
TreeNode shape_psi4();

/// All tree topologies on qubits 1..n with at most max_size leaves, up to
/// reordering of children and relabeling of qubits. Redundant gates (a sum
/// over a single qubit, a sum directly under a sum, a product directly under
/// a product) are excluded. Sorted by size, then canonical text.
std::vector<TreeNode> enumerate_topologies(int n, int max_size, bool identify_relabelings = true);

/// Canonical text of a topology, ignoring amplitudes and child order.
std::string topology_key(const TreeNode& t);

// -- three-qubit Werner family ---------------------------------------------

inline constexpr double kWernerWBoundary = 0.6955427;

/// Tree size of p|GHZ><GHZ| + (1-p) 1/8: 3 up to 1/5, 5 up to 3/7, else 6.
int werner_ts(double p);

}  // namespace tscomplex

#endif  // TSCOMPLEX_FEWQUBIT_HPP
