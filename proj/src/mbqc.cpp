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

#include "tscomplex/mbqc.hpp"

#include <bit>
#include <cmath>
#include <limits>
#include <set>

#include "tscomplex/random.hpp"

namespace tscomplex {

namespace {

std::optional<TreeNode> project_rec(const TreeNode& t, int qubit, const Eigen::Vector2cd& v) {
  if (!(t.qubits() & qubit_set_of(qubit))) return t;
  if (t.is_leaf()) {
    const Leaf& l = t.leaf_data();
    const Complex c = v.adjoint() * Eigen::Vector2cd(l.a0, l.a1);
    if (c == Complex(0.0)) return std::nullopt;
    return TreeNode::leaf(qubit, c * v[0], c * v[1]);
  }
  std::vector<TreeNode> kids;
  for (const auto& c : t.children()) {
    auto p = project_rec(c, qubit, v);
    if (p) {
      kids.push_back(std::move(*p));
    } else if (t.kind() == NodeKind::Prod) {
      return std::nullopt;
    }
  }
  if (kids.empty()) return std::nullopt;
  if (kids.size() == 1) return kids.front();
  return TreeNode::gate(t.kind(), std::move(kids));
}

struct Stripped {
  std::optional<TreeNode> tree;  // empty when the subtree acted only on the qubit
  Complex scalar{1.0};
  bool zero = false;
};

Stripped strip_rec(const TreeNode& t, int qubit, const Eigen::Vector2cd& eta) {
  if (!(t.qubits() & qubit_set_of(qubit))) return {t, 1.0, false};
  if (t.is_leaf()) {
    const Leaf& l = t.leaf_data();
    const Complex c = eta.adjoint() * Eigen::Vector2cd(l.a0, l.a1);
    return {std::nullopt, c, c == Complex(0.0)};
  }
  if (t.kind() == NodeKind::Sum) {
    // Children share one qubit set: all scalars or all trees.
    if (t.qubits() == qubit_set_of(qubit)) {
      Complex total(0.0);
      for (const auto& c : t.children()) total += strip_rec(c, qubit, eta).scalar;
      return {std::nullopt, total, total == Complex(0.0)};
    }
    std::vector<TreeNode> kids;
    for (const auto& c : t.children()) {
      Stripped s = strip_rec(c, qubit, eta);
      if (!s.zero) kids.push_back(std::move(*s.tree));
    }
    if (kids.empty()) return {std::nullopt, 0.0, true};
    if (kids.size() == 1) return {kids.front(), 1.0, false};
    return {TreeNode::sum(std::move(kids)), 1.0, false};
  }
  Complex scalar(1.0);
  std::vector<TreeNode> kids;
  for (const auto& c : t.children()) {
    Stripped s = strip_rec(c, qubit, eta);
    if (s.zero) return {std::nullopt, 0.0, true};
    scalar *= s.scalar;
    if (s.tree) kids.push_back(std::move(*s.tree));
  }
  if (kids.empty()) return {std::nullopt, scalar, scalar == Complex(0.0)};
  if (scalar != Complex(1.0)) kids.front() = scale_tree(kids.front(), scalar);
  if (kids.size() == 1) return {kids.front(), 1.0, false};
  return {TreeNode::prod(std::move(kids)), 1.0, false};
}

void check_distinct(const std::vector<PatternStep>& steps) {
  std::set<int> seen;
  for (const auto& s : steps)
    if (!seen.insert(s.qubit).second)
      throw std::invalid_argument("simulate_pattern: qubit " + std::to_string(s.qubit) + " is measured twice");
}

int draw_outcome(double p0, Rng& rng) { return rng.uniform() < p0 ? 0 : 1; }

}  // namespace

MeasurementBasis::MeasurementBasis(Eigen::Vector2cd eta, Eigen::Vector2cd eta_perp)
    : eta_(std::move(eta)), perp_(std::move(eta_perp)) {
  const double tol = 1e-12;
  if (std::abs(eta_.norm() - 1.0) > tol || std::abs(perp_.norm() - 1.0) > tol ||
      std::abs(eta_.dot(perp_)) > tol)
    throw std::invalid_argument("MeasurementBasis: vectors are not orthonormal");
}

MeasurementBasis MeasurementBasis::z() { return {Eigen::Vector2cd(1.0, 0.0), Eigen::Vector2cd(0.0, 1.0)}; }

MeasurementBasis MeasurementBasis::x() { return xy(0.0); }

MeasurementBasis MeasurementBasis::xy(double phi) {
  const double r = 1.0 / std::sqrt(2.0);
  const Complex ph = std::polar(r, phi);
  return {Eigen::Vector2cd(r, ph), Eigen::Vector2cd(r, -ph)};
}

const Eigen::Vector2cd& MeasurementBasis::vector(int outcome) const {
  if (outcome != 0 && outcome != 1) throw std::invalid_argument("MeasurementBasis: outcome must be 0 or 1");
  return outcome == 0 ? eta_ : perp_;
}

TreeMeasurement measure_on_tree(const TreeNode& t, int qubit, const MeasurementBasis& basis, int outcome,
                                bool compute_norm) {
  if (qubit < 1 || qubit > kMaxTreeQubits || !(t.qubits() & qubit_set_of(qubit)))
    throw std::invalid_argument("measure_on_tree: qubit " + std::to_string(qubit) + " is not in the tree");
  TreeMeasurement out;
  out.tree = project_rec(t, qubit, basis.vector(outcome));
  if (!compute_norm)
    out.norm = std::numeric_limits<double>::quiet_NaN();
  else
    out.norm = out.tree ? evaluate_local(*out.tree).norm() : 0.0;
  return out;
}

std::optional<TreeNode> strip(const TreeNode& t, int qubit, const Eigen::Vector2cd& eta) {
  if (!(t.qubits() & qubit_set_of(qubit)))
    throw std::invalid_argument("strip: qubit " + std::to_string(qubit) + " is not in the tree");
  if (t.qubits() == qubit_set_of(qubit)) throw std::invalid_argument("strip: tree acts only on the stripped qubit");
  Stripped s = strip_rec(t, qubit, eta);
  if (s.zero) return std::nullopt;
  return s.tree;
}

StateVector project_qubit(const StateVector& s, int qubit, const Eigen::Vector2cd& v) {
  if (qubit < 1 || qubit > s.n_qubits()) throw std::invalid_argument("project_qubit: qubit out of range");
  const std::uint64_t bit = s.qubit_bit(qubit);
  StateVector out(s.n_qubits());
  for (std::uint64_t i = 0; i < s.dim(); ++i) {
    if (i & bit) continue;
    const Complex c = std::conj(v[0]) * s[i] + std::conj(v[1]) * s[i | bit];
    out[i] = c * v[0];
    out[i | bit] = c * v[1];
  }
  return out;
}

MeasurementBasis PatternStep::basis(const std::vector<int>& history) const {
  if (rule) return rule(history);
  switch (kind) {
    case BasisKind::Z: return MeasurementBasis::z();
    case BasisKind::X: return MeasurementBasis::x();
    case BasisKind::XY: {
      int parity = 0;
      for (std::size_t i : sign_from) {
        if (i >= history.size())
          throw std::invalid_argument("PatternStep: feedforward refers to a step that has not run yet");
        parity ^= history[i];
      }
      return MeasurementBasis::xy(parity ? -angle : angle);
    }
  }
  throw std::invalid_argument("PatternStep: unknown basis kind");
}

std::vector<int> SimTrace::outcomes() const {
  std::vector<int> out;
  for (const auto& s : steps) out.push_back(s.outcome);
  return out;
}

SimTrace simulate_pattern(const TreeNode& t, const std::vector<PatternStep>& steps, Rng& rng, SimulationMode mode) {
  check_distinct(steps);
  SimTrace trace;
  std::optional<TreeNode> current = t;
  std::vector<int> history;
  for (const auto& step : steps) {
    const MeasurementBasis basis = step.basis(history);
    TraceEntry entry;
    entry.qubit = step.qubit;
    if (mode == SimulationMode::PostSelect) {
      if (!step.outcome) throw std::invalid_argument("simulate_pattern: post-selection needs every outcome");
      entry.outcome = *step.outcome;
      entry.eta = basis.vector(entry.outcome);
      if (current) current = measure_on_tree(*current, step.qubit, basis, entry.outcome, false).tree;
    } else {
      if (!current) throw std::logic_error("simulate_pattern: state vanished during sampling");
      const TreeMeasurement b0 = measure_on_tree(*current, step.qubit, basis, 0);
      const TreeMeasurement b1 = measure_on_tree(*current, step.qubit, basis, 1);
      const double w0 = b0.norm * b0.norm;
      const double w1 = b1.norm * b1.norm;
      if (w0 + w1 == 0.0) throw std::invalid_argument("simulate_pattern: zero input state");
      const double p0 = w0 / (w0 + w1);
      entry.outcome = draw_outcome(p0, rng);
      entry.probability = entry.outcome == 0 ? p0 : 1.0 - p0;
      entry.eta = basis.vector(entry.outcome);
      const TreeMeasurement& kept = entry.outcome == 0 ? b0 : b1;
      current = scale_tree(*kept.tree, 1.0 / kept.norm);
    }
    history.push_back(entry.outcome);
    trace.steps.push_back(std::move(entry));
  }
  trace.final_tree = current;
  return trace;
}

std::vector<int> simulate_pattern_dense(const StateVector& s, const std::vector<PatternStep>& steps, Rng& rng) {
  check_distinct(steps);
  StateVector current = s;
  std::vector<int> history;
  for (const auto& step : steps) {
    const MeasurementBasis basis = step.basis(history);
    const StateVector b0 = project_qubit(current, step.qubit, basis.eta());
    const StateVector b1 = project_qubit(current, step.qubit, basis.eta_perp());
    const double w0 = b0.norm() * b0.norm();
    const double w1 = b1.norm() * b1.norm();
    if (w0 + w1 == 0.0) throw std::invalid_argument("simulate_pattern_dense: zero input state");
    const int outcome = draw_outcome(w0 / (w0 + w1), rng);
    current = (outcome == 0 ? b0 : b1).normalized();
    history.push_back(outcome);
  }
  return history;
}

std::map<std::string, std::uint64_t> outcome_histogram(const TreeNode& t, const std::vector<PatternStep>& steps,
                                                       std::uint64_t runs, std::uint64_t seed) {
  std::vector<std::string> keys(runs);
  parallel_blocks(runs, [&](std::uint64_t r) {
    Rng rng(derive_seed(seed, "mbqc-run", r));
    std::string key;
    for (int o : simulate_pattern(t, steps, rng).outcomes()) key += static_cast<char>('0' + o);
    keys[r] = std::move(key);
  });
  std::map<std::string, std::uint64_t> hist;
  for (const auto& k : keys) ++hist[k];
  return hist;
}

MonotonicityReport fidelity_monotonicity_check(const StateVector& a, const StateVector& b, int qubit,
                                               const MeasurementBasis& basis) {
  if (a.n_qubits() != b.n_qubits()) throw std::invalid_argument("fidelity_monotonicity_check: qubit counts differ");
  if (!a.is_normalized(1e-9) || !b.is_normalized(1e-9))
    throw std::invalid_argument("fidelity_monotonicity_check: states must be normalized");
  MonotonicityReport r;
  r.overlap = std::abs(inner_product(a, b));
  r.max_branch_overlap = 0.0;
  for (int o = 0; o < 2; ++o) {
    const StateVector pa = project_qubit(a, qubit, basis.vector(o));
    const StateVector pb = project_qubit(b, qubit, basis.vector(o));
    const double na = pa.norm();
    const double nb = pb.norm();
    r.weight_a[o] = na * na;
    r.weight_b[o] = nb * nb;
    r.excluded[o] = na == 0.0 || nb == 0.0;
    if (r.excluded[o]) {
      r.branch_overlap[o] = std::numeric_limits<double>::quiet_NaN();
      continue;
    }
    r.branch_overlap[o] = std::abs(inner_product(pa, pb)) / (na * nb);
    r.max_branch_overlap = std::max(r.max_branch_overlap, r.branch_overlap[o]);
  }
  r.holds = r.max_branch_overlap >= r.overlap - 1e-10;
  return r;
}

StateVector cluster2d_state(int rows, int cols) {
  if (rows < 1 || cols < 1 || rows * cols > kMaxClusterSites)
    throw std::invalid_argument("cluster2d_state: need 1 <= rows * cols <= " + std::to_string(kMaxClusterSites));
  const int n = rows * cols;
  std::vector<std::uint64_t> edges;
  auto bit = [&](int r, int c) { return std::uint64_t{1} << (n - 1 - (r * cols + c)); };
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c) {
      if (c + 1 < cols) edges.push_back(bit(r, c) | bit(r, c + 1));
      if (r + 1 < rows) edges.push_back(bit(r, c) | bit(r + 1, c));
    }
  StateVector s(n);
  const double amp = std::pow(2.0, -0.5 * n);
  for (std::uint64_t x = 0; x < s.dim(); ++x) {
    int parity = 0;
    for (std::uint64_t e : edges) parity ^= (x & e) == e ? 1 : 0;
    s[x] = parity ? -amp : amp;
  }
  return s;
}

}  // namespace tscomplex
