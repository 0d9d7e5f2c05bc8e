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

#include "tscomplex/tree.hpp"

namespace tscomplex {

namespace {

std::string describe(const std::vector<TreeNode>& children, std::size_t i) {
  return "child " + std::to_string(i) + " (" + serialize_tree(children[i]) + ")";
}

// Position of each qubit of `sub` inside the local index of `super`.
// Local indices put the lowest label at the most significant bit.
std::uint64_t local_mask(QubitSet super, QubitSet sub) {
  const int width = std::popcount(super);
  std::uint64_t mask = 0;
  int pos = 0;
  for (QubitSet rest = super; rest != 0; rest &= rest - 1, ++pos) {
    const QubitSet q = rest & (~rest + 1);
    if (sub & q) mask |= std::uint64_t{1} << (width - 1 - pos);
  }
  return mask;
}

}  // namespace

QubitSet qubit_range(int n) {
  if (n < 0 || n > kMaxTreeQubits) throw std::invalid_argument("qubit_range: n out of range");
  return n == 64 ? ~QubitSet{0} : (QubitSet{1} << n) - 1;
}

std::vector<int> qubit_list(QubitSet s) {
  std::vector<int> out;
  for (; s != 0; s &= s - 1) out.push_back(std::countr_zero(s) + 1);
  return out;
}

QubitSet y_qubits(const Bipartition& p) {
  QubitSet s = 0;
  for (int q = 1; q <= p.n(); ++q)
    if (p.in_y(q)) s |= qubit_set_of(q);
  return s;
}

ParseError::ParseError(const std::string& what, std::size_t position)
    : std::invalid_argument("parse error at position " + std::to_string(position) + ": " + what),
      position_(position) {}

TreeNode TreeNode::leaf(int qubit, Complex a0, Complex a1) {
  if (qubit < 1 || qubit > kMaxTreeQubits)
    throw TreeError("leaf: qubit label " + std::to_string(qubit) + " outside [1, 64]");
  if (a0 == Complex{} && a1 == Complex{})
    throw TreeError("leaf on q" + std::to_string(qubit) + ": amplitudes are both zero");
  auto node = std::make_shared<Node>();
  node->kind = NodeKind::Leaf;
  node->leaf = Leaf{qubit, a0, a1};
  node->qubits = qubit_set_of(qubit);
  node->leaves = 1;
  return TreeNode(std::move(node));
}

TreeNode TreeNode::sum(std::vector<TreeNode> children) { return gate(NodeKind::Sum, std::move(children)); }

TreeNode TreeNode::prod(std::vector<TreeNode> children) { return gate(NodeKind::Prod, std::move(children)); }

TreeNode TreeNode::gate(NodeKind kind, std::vector<TreeNode> children) {
  const char* name = kind == NodeKind::Sum ? "sum gate" : "product gate";
  if (kind == NodeKind::Leaf) throw TreeError("gate: kind must be Sum or Prod");
  if (children.size() < 2) throw TreeError(std::string(name) + " needs at least two children");
  auto node = std::make_shared<Node>();
  node->kind = kind;
  node->qubits = 0;
  node->prods = kind == NodeKind::Prod ? 1 : 0;
  for (std::size_t i = 0; i < children.size(); ++i) {
    const QubitSet s = children[i].qubits();
    if (kind == NodeKind::Prod) {
      if (node->qubits & s)
        throw TreeError(std::string(name) + ": " + describe(children, i) +
                        " repeats a qubit already covered by an earlier child");
      node->qubits |= s;
    } else {
      if (i == 0)
        node->qubits = s;
      else if (s != node->qubits)
        throw TreeError(std::string(name) + ": " + describe(children, i) +
                        " acts on a different qubit set than child 0");
    }
    node->leaves += children[i].size();
    node->prods += children[i].prod_count();
  }
  node->children = std::move(children);
  return TreeNode(std::move(node));
}

Eigen::VectorXcd evaluate_local(const TreeNode& t) {
  if (t.is_leaf()) {
    Eigen::VectorXcd v(2);
    v << t.leaf_data().a0, t.leaf_data().a1;
    return v;
  }
  const QubitSet all = t.qubits();
  const int width = std::popcount(all);
  if (width > kMaxDenseQubits) throw std::invalid_argument("evaluate: too many qubits for a dense vector");
  const auto kids = t.children();
  if (t.kind() == NodeKind::Sum) {
    Eigen::VectorXcd acc = evaluate_local(kids[0]);
    for (std::size_t i = 1; i < kids.size(); ++i) acc += evaluate_local(kids[i]);
    return acc;
  }
  // Product: out[x] = prod_i child_i[gather(x, mask_i)].
  const Eigen::Index dim = Eigen::Index{1} << width;
  Eigen::VectorXcd out = Eigen::VectorXcd::Ones(dim);
  for (const auto& child : kids) {
    const Eigen::VectorXcd v = evaluate_local(child);
    const std::uint64_t mask = local_mask(all, child.qubits());
    for (Eigen::Index x = 0; x < dim; ++x) out[x] *= v[static_cast<Eigen::Index>(gather_bits(static_cast<std::uint64_t>(x), mask))];
  }
  return out;
}

StateVector evaluate(const TreeNode& t, int n) {
  if (t.qubits() != qubit_range(n))
    throw TreeError("evaluate: tree does not act on exactly qubits 1.." + std::to_string(n));
  return {n, evaluate_local(t)};
}

TreeNode binarize(const TreeNode& t) {
  if (t.is_leaf()) return t;
  const auto kids = t.children();
  TreeNode acc = binarize(kids[0]);
  for (std::size_t i = 1; i < kids.size(); ++i) acc = TreeNode::gate(t.kind(), {acc, binarize(kids[i])});
  return acc;
}

TreeNode scale_tree(const TreeNode& t, Complex c) {
  if (t.is_leaf()) {
    const Leaf& l = t.leaf_data();
    return TreeNode::leaf(l.qubit, c * l.a0, c * l.a1);
  }
  std::vector<TreeNode> kids(t.children().begin(), t.children().end());
  if (t.kind() == NodeKind::Prod) {
    kids[0] = scale_tree(kids[0], c);
  } else {
    for (auto& k : kids) k = scale_tree(k, c);
  }
  return TreeNode::gate(t.kind(), std::move(kids));
}

TreeNode apply_ilo(const TreeNode& t, std::span<const Eigen::Matrix2cd> ops) {
  for (std::size_t i = 0; i < ops.size(); ++i)
    if (std::abs(ops[i].determinant()) == 0.0)
      throw std::invalid_argument("apply_ilo: operator for q" + std::to_string(i + 1) + " is singular");
  return map_leaves(t, [&](const Leaf& l) {
    if (static_cast<std::size_t>(l.qubit) > ops.size())
      throw std::invalid_argument("apply_ilo: no operator for q" + std::to_string(l.qubit));
    const Eigen::Vector2cd v = ops[static_cast<std::size_t>(l.qubit - 1)] * Eigen::Vector2cd(l.a0, l.a1);
    return TreeNode::leaf(l.qubit, v[0], v[1]);
  });
}

}  // namespace tscomplex
