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

#ifndef TSCOMPLEX_TREE_HPP
#define TSCOMPLEX_TREE_HPP

#include <Eigen/Dense>

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "tscomplex/core.hpp"

namespace tscomplex {

/// Set of 1-based qubit labels; qubit q is bit q - 1.
using QubitSet = std::uint64_t;

inline constexpr int kMaxTreeQubits = 64;

inline QubitSet qubit_set_of(int q) { return QubitSet{1} << (q - 1); }
QubitSet qubit_range(int n);
/// Qubit labels in ascending order.
std::vector<int> qubit_list(QubitSet s);
/// Converts a Bipartition's Y mask into a QubitSet.
QubitSet y_qubits(const Bipartition& p);

/// Thrown when a tree violates multilinearity or another structural rule.
class TreeError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class ParseError : public std::invalid_argument {
 public:
  ParseError(const std::string& what, std::size_t position);
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

enum class NodeKind { Leaf, Sum, Prod };

/// Single-qubit leaf a0|0> + a1|1> on `qubit` (1-based).
struct Leaf {
  int qubit = 1;
  Complex a0;
  Complex a1;
};

/// Immutable rooted tree of sum and tensor-product gates.
///
/// Every constructor validates well-formedness: gates have at least two
/// children, product children act on disjoint qubits, sum children act on
/// identical qubits, and leaf amplitudes are not both zero. Subtrees are
/// shared, so copying is cheap.
class TreeNode {
 public:
  static TreeNode leaf(int qubit, Complex a0, Complex a1);
  static TreeNode sum(std::vector<TreeNode> children);
  static TreeNode prod(std::vector<TreeNode> children);
  static TreeNode gate(NodeKind kind, std::vector<TreeNode> children);

  NodeKind kind() const { return node_->kind; }
  bool is_leaf() const { return node_->kind == NodeKind::Leaf; }
  const Leaf& leaf_data() const { return node_->leaf; }
  std::span<const TreeNode> children() const { return node_->children; }
  QubitSet qubits() const { return node_->qubits; }

  /// Leaf count.
  std::size_t size() const { return node_->leaves; }
  /// Number of product gates.
  std::size_t prod_count() const { return node_->prods; }

 private:
  struct Node {
    NodeKind kind;
    Leaf leaf;
    std::vector<TreeNode> children;
    QubitSet qubits = 0;
    std::size_t leaves = 0;
    std::size_t prods = 0;
  };
  explicit TreeNode(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

inline std::size_t tree_size(const TreeNode& t) { return t.size(); }

// -- text format -----------------------------------------------------------
//
//   tree    := leaf | "(" op tree tree+ ")"
//   op      := "+" | "x"
//   leaf    := "[q" INT SP complex SP complex "]"
//   complex := FLOAT | "(" FLOAT "," FLOAT ")"

TreeNode parse_tree(std::string_view text);
std::string serialize_tree(const TreeNode& t);

// -- evaluation ------------------------------------------------------------

/// Amplitudes over the tree's own qubit set, ascending labels, lowest label as
/// the most significant bit.
Eigen::VectorXcd evaluate_local(const TreeNode& t);

/// Dense state on qubits 1..n. The root must act on exactly {1..n}.
StateVector evaluate(const TreeNode& t, int n);

/// Rebuilds n-ary gates as left-associated binary gates; leaf count unchanged.
TreeNode binarize(const TreeNode& t);

/// Multiplies the subtree's state by `c` without changing its shape.
TreeNode scale_tree(const TreeNode& t, Complex c);

/// Applies the 2x2 operator ops[q-1] to every leaf on qubit q.
TreeNode apply_ilo(const TreeNode& t, std::span<const Eigen::Matrix2cd> ops);

/// Same shape with every leaf replaced by f(leaf).
template <typename F>
TreeNode map_leaves(const TreeNode& t, F&& f) {
  if (t.is_leaf()) return f(t.leaf_data());
  std::vector<TreeNode> kids;
  kids.reserve(t.children().size());
  for (const auto& c : t.children()) kids.push_back(map_leaves(c, f));
  return TreeNode::gate(t.kind(), std::move(kids));
}

// -- builders --------------------------------------------------------------

/// |0...0> + |1...1>, size 2n.
TreeNode build_ghz(int n);

/// Tree proportional to the Dicke state D_{n,k} from the roots-of-unity sum
/// with the unwanted Hamming-weight components subtracted. Evaluates exactly
/// to the uniform weight-k superposition with unit amplitudes.
TreeNode build_dicke(int n, int k);

/// Site tensors of a matrix product state: A[0] for |0>, A[1] for |1>.
struct MpsSite {
  Eigen::MatrixXcd a0;
  Eigen::MatrixXcd a1;
};

/// Recursive-halving tree of the closed-trace MPS Tr(A_{x1} ... A_{xn}).
/// n must be a power of two.
TreeNode build_mps_tree(std::span<const MpsSite> sites);

/// Bond-dimension-2 tensors of the open 1D cluster state on n qubits
/// (|+> on every site, CZ on nearest neighbours), normalized.
std::vector<MpsSite> cluster1d_mps(int n);

// -- bipartition analysis --------------------------------------------------

struct SeparationReport {
  bool all_separating = true;
  std::size_t strictly_separating = 0;
  std::size_t prod_gates = 0;
  /// Child-index path of the first non-separating product gate in the
  /// binarized tree, e.g. "root/1/0".
  std::optional<std::string> offending_gate;
};

SeparationReport separating_analysis(const TreeNode& t, const Bipartition& p);

/// One term of a Schmidt-like sum. A missing side means that side carries no
/// qubits of the term (scalar one).
struct SchmidtTerm {
  std::optional<TreeNode> y;
  std::optional<TreeNode> z;
};

/// Pushes sums above separating product gates until the tree reads as
/// sum_i |Y_i>|Z_i>. Throws TreeError naming the first non-separating gate.
std::vector<SchmidtTerm> schmidt_like_rewrite(const TreeNode& t, const Bipartition& p);

/// Reassembles the terms into one tree (a sum of products).
TreeNode assemble_schmidt_terms(const std::vector<SchmidtTerm>& terms);

}  // namespace tscomplex

#endif  // TSCOMPLEX_TREE_HPP
