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

#include <bit>
#include <cmath>
#include <limits>

#include "tscomplex/fewqubit.hpp"
#include "tscomplex/random.hpp"

namespace tscomplex {

namespace {

// Flattened copy of a shape whose leaf amplitudes live in a parameter array,
// so a leaf may temporarily be zero while it is being solved for.
class FitTree {
 public:
  explicit FitTree(const TreeNode& shape) { root_ = add(shape); }

  std::size_t leaf_count() const { return leaf_nodes_.size(); }
  std::vector<Eigen::Vector2cd>& params() { return params_; }
  const std::vector<Eigen::Vector2cd>& params() const { return params_; }

  Eigen::VectorXcd evaluate() const { return eval(root_); }

  TreeNode to_tree() const { return build(root_); }

 private:
  struct Node {
    NodeKind kind;
    int qubit = 0;
    std::size_t leaf_index = 0;
    QubitSet qubits = 0;
    std::vector<std::size_t> children;
    std::vector<std::uint64_t> child_masks;  // product gates only
  };

  std::size_t add(const TreeNode& t) {
    Node node;
    node.kind = t.kind();
    node.qubits = t.qubits();
    if (t.is_leaf()) {
      node.qubit = t.leaf_data().qubit;
      node.leaf_index = params_.size();
      params_.emplace_back(t.leaf_data().a0, t.leaf_data().a1);
      leaf_nodes_.push_back(nodes_.size());
      nodes_.push_back(node);
      return nodes_.size() - 1;
    }
    for (const auto& c : t.children()) node.children.push_back(add(c));
    if (node.kind == NodeKind::Prod) {
      const int width = std::popcount(node.qubits);
      for (std::size_t ci : node.children) {
        std::uint64_t mask = 0;
        int pos = 0;
        for (QubitSet rest = node.qubits; rest != 0; rest &= rest - 1, ++pos)
          if (nodes_[ci].qubits & rest & (~rest + 1)) mask |= std::uint64_t{1} << (width - 1 - pos);
        node.child_masks.push_back(mask);
      }
    }
    nodes_.push_back(std::move(node));
    return nodes_.size() - 1;
  }

  Eigen::VectorXcd eval(std::size_t i) const {
    const Node& node = nodes_[i];
    if (node.kind == NodeKind::Leaf) return params_[node.leaf_index];
    if (node.kind == NodeKind::Sum) {
      Eigen::VectorXcd acc = eval(node.children[0]);
      for (std::size_t k = 1; k < node.children.size(); ++k) acc += eval(node.children[k]);
      return acc;
    }
    const Eigen::Index dim = Eigen::Index{1} << std::popcount(node.qubits);
    Eigen::VectorXcd out = Eigen::VectorXcd::Ones(dim);
    for (std::size_t k = 0; k < node.children.size(); ++k) {
      const Eigen::VectorXcd v = eval(node.children[k]);
      const std::uint64_t mask = node.child_masks[k];
      for (Eigen::Index x = 0; x < dim; ++x)
        out[x] *= v[static_cast<Eigen::Index>(gather_bits(static_cast<std::uint64_t>(x), mask))];
    }
    return out;
  }

  TreeNode build(std::size_t i) const {
    const Node& node = nodes_[i];
    if (node.kind == NodeKind::Leaf) {
      Eigen::Vector2cd a = params_[node.leaf_index];
      if (a.squaredNorm() == 0.0) a[0] = std::numeric_limits<double>::min();
      return TreeNode::leaf(node.qubit, a[0], a[1]);
    }
    std::vector<TreeNode> kids;
    for (std::size_t c : node.children) kids.push_back(build(c));
    return TreeNode::gate(node.kind, std::move(kids));
  }

  std::size_t root_ = 0;
  std::vector<Node> nodes_;
  std::vector<std::size_t> leaf_nodes_;
  std::vector<Eigen::Vector2cd> params_;
};

double residual_of(const Eigen::VectorXcd& target, const Eigen::VectorXcd& v) {
  const double denom = target.squaredNorm() * v.squaredNorm();
  if (denom == 0.0) return 1.0;
  return std::max(0.0, 1.0 - std::norm(target.dot(v)) / denom);
}

// The state is affine in any single leaf: v(c) = c0 b0 + c1 b1 + d. The
// normalized overlap is scale invariant, so the best leaf follows from the
// least-squares fit of the target by span{b0, b1, d} after dividing by the
// coefficient of d.
void update_leaf(FitTree& tree, std::size_t leaf, const Eigen::VectorXcd& target) {
  auto& p = tree.params()[leaf];
  const Eigen::Vector2cd saved = p;
  p.setZero();
  const Eigen::VectorXcd d = tree.evaluate();
  p << 1.0, 0.0;
  const Eigen::VectorXcd b0 = tree.evaluate() - d;
  p << 0.0, 1.0;
  const Eigen::VectorXcd b1 = tree.evaluate() - d;

  const double bscale = b0.norm() + b1.norm();
  if (bscale == 0.0) {
    p = saved;
    return;
  }
  if (d.norm() <= 1e-14 * bscale) {
    Eigen::MatrixXcd m(target.size(), 2);
    m << b0, b1;
    const Eigen::Vector2cd w = m.completeOrthogonalDecomposition().solve(target);
    p = w.squaredNorm() > 0.0 ? w : saved;
    return;
  }
  Eigen::MatrixXcd m(target.size(), 3);
  m << b0, b1, d;
  const Eigen::Vector3cd w = m.completeOrthogonalDecomposition().solve(target);
  if (std::abs(w[2]) <= 1e-12 * w.norm()) {
    p = saved;
    return;
  }
  p = w.head<2>() / w[2];
}

// Derivatives of the state with respect to both amplitudes of every leaf.
// The state is affine in each leaf, so differences give exact columns.
Eigen::MatrixXcd jacobian(FitTree& tree, Eigen::Index dim) {
  const std::size_t leaves = tree.leaf_count();
  Eigen::MatrixXcd j(dim, static_cast<Eigen::Index>(2 * leaves));
  for (std::size_t l = 0; l < leaves; ++l) {
    auto& p = tree.params()[l];
    const Eigen::Vector2cd saved = p;
    p.setZero();
    const Eigen::VectorXcd d = tree.evaluate();
    p << 1.0, 0.0;
    j.col(static_cast<Eigen::Index>(2 * l)) = tree.evaluate() - d;
    p << 0.0, 1.0;
    j.col(static_cast<Eigen::Index>(2 * l + 1)) = tree.evaluate() - d;
    p = saved;
  }
  return j;
}

// Levenberg-Marquardt on all leaves at once, fitting the tree to the
// projection of the target that the current tree best matches. Converges
// quadratically where the alternating sweeps crawl.
double polish(FitTree& tree, const Eigen::VectorXcd& target, double residual, const FitOptions& options) {
  Eigen::VectorXcd v = tree.evaluate();
  const Eigen::VectorXcd goal = target * (target.dot(v) / target.squaredNorm());
  double cost = (goal - v).squaredNorm();
  double lambda = 1e-3;
  for (int it = 0; it < 100 && residual > options.target_residual; ++it) {
    const Eigen::MatrixXcd j = jacobian(tree, target.size());
    Eigen::MatrixXcd normal = j.adjoint() * j;
    const Eigen::VectorXcd rhs = j.adjoint() * (goal - v);
    const double diag = normal.diagonal().real().maxCoeff();
    const std::vector<Eigen::Vector2cd> saved = tree.params();
    bool accepted = false;
    for (int tries = 0; tries < 12 && !accepted; ++tries) {
      Eigen::MatrixXcd damped = normal;
      damped.diagonal().array() += lambda * diag;
      const Eigen::VectorXcd step = damped.ldlt().solve(rhs);
      for (std::size_t l = 0; l < tree.leaf_count(); ++l)
        tree.params()[l] = saved[l] + step.segment<2>(static_cast<Eigen::Index>(2 * l));
      const Eigen::VectorXcd trial = tree.evaluate();
      const double trial_cost = (goal - trial).squaredNorm();
      if (std::isfinite(trial_cost) && trial_cost < cost) {
        cost = trial_cost;
        v = trial;
        lambda = std::max(lambda / 3.0, 1e-15);
        accepted = true;
      } else {
        tree.params() = saved;
        lambda *= 4.0;
      }
    }
    if (!accepted) break;
    residual = std::min(residual, residual_of(target, v));
  }
  return residual_of(target, tree.evaluate());
}

struct RestartOutcome {
  double residual = 1.0;
  std::vector<Eigen::Vector2cd> params;
};

RestartOutcome run_restart(const TreeNode& shape, const Eigen::VectorXcd& target, const FitOptions& options,
                           std::uint64_t restart) {
  FitTree tree(shape);
  Rng rng(derive_seed(options.seed, "fit_tree", restart));
  for (auto& p : tree.params()) p << rng.complex_normal(), rng.complex_normal();

  double best = residual_of(target, tree.evaluate());
  std::vector<Eigen::Vector2cd> best_params = tree.params();
  int stalled = 0;
  for (int it = 0; it < options.iterations && best > options.target_residual; ++it) {
    for (std::size_t l = 0; l < tree.leaf_count(); ++l) update_leaf(tree, l, target);
    const double r = residual_of(target, tree.evaluate());
    if (r < best) {
      stalled = (best - r) < 1e-15 ? stalled + 1 : 0;
      best = r;
      best_params = tree.params();
    } else {
      ++stalled;
    }
    if (stalled >= 25) break;
  }
  if (best > options.target_residual) {
    tree.params() = best_params;
    const double polished = polish(tree, target, best, options);
    if (polished < best) {
      best = polished;
      best_params = tree.params();
    }
  }
  return {best, std::move(best_params)};
}

}  // namespace

FitResult fit_tree(const StateVector& target, const TreeNode& shape, const FitOptions& options) {
  if (options.restarts < 1) throw std::invalid_argument("fit_tree: need at least one restart");
  if (shape.qubits() != qubit_range(target.n_qubits()))
    throw std::invalid_argument("fit_tree: shape must act on exactly the target's qubits");
  if (target.norm() == 0.0) throw std::invalid_argument("fit_tree: zero target");

  const Eigen::VectorXcd& tv = target.amplitudes();
  std::vector<RestartOutcome> outcomes(static_cast<std::size_t>(options.restarts));
  parallel_blocks(outcomes.size(), [&](std::uint64_t r) { outcomes[r] = run_restart(shape, tv, options, r); });

  FitResult result{shape, 1.0, shape.size(), options.restarts, {}};
  std::size_t best_index = 0;
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t r = 0; r < outcomes.size(); ++r) {
    if (outcomes[r].residual < best) {
      best = outcomes[r].residual;
      best_index = r;
    }
    result.best_history.push_back(best);
  }
  FitTree tree(shape);
  tree.params() = outcomes[best_index].params;
  result.tree = tree.to_tree();
  result.residual = residual_of(tv, evaluate_local(result.tree));
  return result;
}

}  // namespace tscomplex
