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

#ifndef TSCOMPLEX_MBQC_HPP
#define TSCOMPLEX_MBQC_HPP

#include <array>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "tscomplex/core.hpp"
#include "tscomplex/tree.hpp"

namespace tscomplex {

/// Orthonormal single-qubit basis {eta, eta_perp}; outcome 0 is eta.
class MeasurementBasis {
 public:
  /// Rejects pairs that are not orthonormal within 1e-12.
  MeasurementBasis(Eigen::Vector2cd eta, Eigen::Vector2cd eta_perp);

  static MeasurementBasis z();
  static MeasurementBasis x();
  /// (|0> +- e^{i phi}|1>)/sqrt(2).
  static MeasurementBasis xy(double phi);

  const Eigen::Vector2cd& vector(int outcome) const;
  const Eigen::Vector2cd& eta() const { return eta_; }
  const Eigen::Vector2cd& eta_perp() const { return perp_; }

 private:
  Eigen::Vector2cd eta_;
  Eigen::Vector2cd perp_;
};

struct TreeMeasurement {
  /// Empty when the projected state vanishes.
  std::optional<TreeNode> tree;
  /// Norm of the projected (unnormalized) state; NaN unless requested.
  double norm = 0.0;
};

/// Replaces every leaf a on `qubit` by <v|a> v with v the outcome's basis
/// vector. Zero leaves are pruned: a product holding one vanishes, a sum
/// drops it. Size never grows. The norm is computed densely when asked.
TreeMeasurement measure_on_tree(const TreeNode& t, int qubit, const MeasurementBasis& basis, int outcome,
                                bool compute_norm = true);

/// Removes `qubit` by contracting each of its leaves with <eta|, folding the
/// scalar into a sibling. Empty when the result vanishes.
std::optional<TreeNode> strip(const TreeNode& t, int qubit, const Eigen::Vector2cd& eta);

/// (|v><v| on qubit) applied to a dense state.
StateVector project_qubit(const StateVector& s, int qubit, const Eigen::Vector2cd& v);

enum class BasisKind { Z, X, XY };

/// One measurement of a pattern. For XY steps the angle is negated when the
/// parity of the outcomes of `sign_from` (indices of earlier steps) is odd.
/// A custom rule, when set, replaces this and maps the outcome history to a
/// basis.
struct PatternStep {
  int qubit = 1;
  BasisKind kind = BasisKind::Z;
  double angle = 0.0;
  std::vector<std::size_t> sign_from;
  /// Required in post-selection mode; ignored when sampling.
  std::optional<int> outcome;
  std::function<MeasurementBasis(const std::vector<int>&)> rule;

  MeasurementBasis basis(const std::vector<int>& history) const;
};

enum class SimulationMode { Born, PostSelect };

struct TraceEntry {
  int qubit = 0;
  int outcome = 0;
  /// Conditional probability of the outcome; absent in post-selection mode.
  std::optional<double> probability;
  Eigen::Vector2cd eta;
};

struct SimTrace {
  std::vector<TraceEntry> steps;
  /// Renormalized after each Born step; empty if post-selection hit zero.
  std::optional<TreeNode> final_tree;

  std::vector<int> outcomes() const;
};

/// Runs the steps in order on a tree. Born mode evaluates both branches
/// densely to draw the outcome from `rng`.
SimTrace simulate_pattern(const TreeNode& t, const std::vector<PatternStep>& steps, Rng& rng,
                          SimulationMode mode = SimulationMode::Born);

/// Dense reference: outcomes drawn from the same Born rule on a statevector.
std::vector<int> simulate_pattern_dense(const StateVector& s, const std::vector<PatternStep>& steps, Rng& rng);

/// Outcome strings ('0'/'1' per step) and counts over `runs` independent runs;
/// run r draws from derive_seed(seed, "mbqc-run", r).
std::map<std::string, std::uint64_t> outcome_histogram(const TreeNode& t, const std::vector<PatternStep>& steps,
                                                       std::uint64_t runs, std::uint64_t seed);

struct MonotonicityReport {
  double overlap = 0.0;
  /// |<a_o|b_o>| / (|a_o| |b_o|) per outcome; NaN when excluded.
  std::array<double, 2> branch_overlap{};
  std::array<double, 2> weight_a{};
  std::array<double, 2> weight_b{};
  /// True when either branch has zero norm.
  std::array<bool, 2> excluded{};
  double max_branch_overlap = 0.0;
  /// max_branch_overlap >= overlap - 1e-10.
  bool holds = false;
};

MonotonicityReport fidelity_monotonicity_check(const StateVector& a, const StateVector& b, int qubit,
                                               const MeasurementBasis& basis);

inline constexpr int kMaxClusterSites = 20;

/// |+> on every site, CZ on nearest neighbours; site (r, c) is qubit
/// r * cols + c + 1.
StateVector cluster2d_state(int rows, int cols);

}  // namespace tscomplex

#endif  // TSCOMPLEX_MBQC_HPP
