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

#include <cmath>

#include "tscomplex/tree.hpp"

namespace tscomplex {

namespace {

// Tensor product of identical leaves (a0, a1) on qubits 1..n, with the first
// leaf scaled by `front`. A single qubit yields a bare leaf.
TreeNode uniform_product(int n, Complex a0, Complex a1, Complex front = 1.0) {
  std::vector<TreeNode> leaves;
  leaves.reserve(static_cast<std::size_t>(n));
  for (int q = 1; q <= n; ++q) {
    const Complex s = q == 1 ? front : Complex{1.0};
    leaves.push_back(TreeNode::leaf(q, s * a0, s * a1));
  }
  if (n == 1) return leaves.front();
  return TreeNode::prod(std::move(leaves));
}

TreeNode join(NodeKind kind, std::vector<TreeNode> parts) {
  if (parts.size() == 1) return parts.front();
  return TreeNode::gate(kind, std::move(parts));
}

// Entry (a, b) of the MPS segment [lo, hi) as a tree, or nullopt when the
// entry is identically zero.
using TreeGrid = std::vector<std::vector<std::optional<TreeNode>>>;

TreeGrid mps_segment(std::span<const MpsSite> sites, int lo, int hi, Eigen::Index chi) {
  TreeGrid grid(static_cast<std::size_t>(chi), std::vector<std::optional<TreeNode>>(static_cast<std::size_t>(chi)));
  if (hi - lo == 1) {
    const MpsSite& s = sites[static_cast<std::size_t>(lo)];
    for (Eigen::Index a = 0; a < chi; ++a)
      for (Eigen::Index b = 0; b < chi; ++b)
        if (s.a0(a, b) != Complex{} || s.a1(a, b) != Complex{})
          grid[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] = TreeNode::leaf(lo + 1, s.a0(a, b), s.a1(a, b));
    return grid;
  }
  const int mid = lo + (hi - lo) / 2;
  const TreeGrid left = mps_segment(sites, lo, mid, chi);
  const TreeGrid right = mps_segment(sites, mid, hi, chi);
  for (std::size_t a = 0; a < left.size(); ++a) {
    for (std::size_t b = 0; b < left.size(); ++b) {
      std::vector<TreeNode> terms;
      for (std::size_t s = 0; s < left.size(); ++s)
        if (left[a][s] && right[s][b]) terms.push_back(TreeNode::prod({*left[a][s], *right[s][b]}));
      if (!terms.empty()) grid[a][b] = join(NodeKind::Sum, std::move(terms));
    }
  }
  return grid;
}

}  // namespace

TreeNode build_ghz(int n) {
  if (n < 1) throw std::invalid_argument("build_ghz: n must be >= 1");
  return TreeNode::sum({uniform_product(n, 1.0, 0.0), uniform_product(n, 0.0, 1.0)});
}

TreeNode build_dicke(int n, int k) {
  if (n < 2 || k < 1 || k > n - 1)
    throw std::invalid_argument("build_dicke: need 1 <= k <= n-1, got n=" + std::to_string(n) +
                                " k=" + std::to_string(k));
  // Work with the heavier weight k' >= n/2 and flip bits back at the end.
  const bool flip = 2 * k < n;
  const int kk = flip ? n - k : k;

  // sum_j (|0> + w^j |1>)^n = kk * sum_m D_{n, m kk}; for kk >= n/2 only
  // m = 0, 1 (and m = 2 when kk = n/2) survive.
  std::vector<TreeNode> branches;
  for (int j = 0; j < kk; ++j) {
    const Complex w = std::polar(1.0, 2.0 * M_PI * j / kk);
    branches.push_back(uniform_product(n, 1.0, w));
  }
  const Complex minus_k = -static_cast<double>(kk);
  branches.push_back(uniform_product(n, 1.0, 0.0, minus_k));
  if (2 * kk == n) branches.push_back(uniform_product(n, 0.0, 1.0, minus_k));
  // Divide by kk so every weight-k amplitude is exactly one.
  for (auto& b : branches) b = scale_tree(b, 1.0 / kk);

  TreeNode t = TreeNode::sum(std::move(branches));
  if (flip) t = map_leaves(t, [](const Leaf& l) { return TreeNode::leaf(l.qubit, l.a1, l.a0); });
  return t;
}

TreeNode build_mps_tree(std::span<const MpsSite> sites) {
  const auto n = static_cast<int>(sites.size());
  if (n < 1 || (n & (n - 1)) != 0) throw std::invalid_argument("build_mps_tree: site count must be a power of two");
  if (n > kMaxTreeQubits) throw std::invalid_argument("build_mps_tree: too many sites");
  const Eigen::Index chi = sites.front().a0.rows();
  for (const auto& s : sites)
    if (s.a0.rows() != chi || s.a0.cols() != chi || s.a1.rows() != chi || s.a1.cols() != chi)
      throw std::invalid_argument("build_mps_tree: all site matrices must be chi x chi with chi = " +
                                  std::to_string(chi));
  const TreeGrid grid = mps_segment(sites, 0, n, chi);
  std::vector<TreeNode> diagonal;
  for (std::size_t a = 0; a < grid.size(); ++a)
    if (grid[a][a]) diagonal.push_back(*grid[a][a]);
  if (diagonal.empty()) throw std::invalid_argument("build_mps_tree: MPS contracts to the zero state");
  return join(NodeKind::Sum, std::move(diagonal));
}

std::vector<MpsSite> cluster1d_mps(int n) {
  if (n < 2) throw std::invalid_argument("cluster1d_mps: need at least two sites");
  // Bond index carries the previous bit. The first site fixes the incoming
  // bond to 0 and the last site returns it to 0, which turns the closed trace
  // into an open chain.
  const double amp = M_SQRT1_2;
  std::vector<MpsSite> sites(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    MpsSite& s = sites[static_cast<std::size_t>(i)];
    s.a0 = Eigen::MatrixXcd::Zero(2, 2);
    s.a1 = Eigen::MatrixXcd::Zero(2, 2);
    for (int prev = 0; prev < 2; ++prev) {
      if (i == 0 && prev != 0) continue;
      for (int bit = 0; bit < 2; ++bit) {
        const double sign = (prev & bit) ? -1.0 : 1.0;
        const int out = i == n - 1 ? 0 : bit;
        (bit == 0 ? s.a0 : s.a1)(prev, out) = sign * amp;
      }
    }
  }
  return sites;
}

}  // namespace tscomplex
