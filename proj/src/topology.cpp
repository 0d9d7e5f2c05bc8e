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

#include <algorithm>
#include <bit>
#include <functional>
#include <map>
#include <numeric>
#include <set>

#include "tscomplex/fewqubit.hpp"

namespace tscomplex {

namespace {

std::string key_with_labels(const TreeNode& t, const std::vector<int>& relabel) {
  if (t.is_leaf()) return "q" + std::to_string(relabel[static_cast<std::size_t>(t.leaf_data().qubit)]);
  std::vector<std::string> parts;
  // Flatten associative chains so binarized and n-ary forms agree.
  std::function<void(const TreeNode&)> collect = [&](const TreeNode& c) {
    if (!c.is_leaf() && c.kind() == t.kind()) {
      for (const auto& g : c.children()) collect(g);
    } else {
      parts.push_back(key_with_labels(c, relabel));
    }
  };
  for (const auto& c : t.children()) collect(c);
  std::sort(parts.begin(), parts.end());
  std::string out = t.kind() == NodeKind::Sum ? "(+" : "(x";
  for (const auto& p : parts) out += " " + p;
  return out + ")";
}

std::vector<int> identity_labels(int n) {
  std::vector<int> l(static_cast<std::size_t>(n) + 1);
  std::iota(l.begin(), l.end(), 0);
  return l;
}

int max_label(const TreeNode& t) {
  const QubitSet s = t.qubits();
  return 64 - std::countl_zero(s);
}

struct Candidate {
  std::string key;
  TreeNode tree;
};

// Topologies on a qubit set with an exact leaf count, split by root kind.
class Enumerator {
 public:
  // Root is a leaf or a sum: what a product gate may hold as a child.
  const std::vector<Candidate>& non_product(QubitSet s, int size) {
    auto k = std::make_tuple(s, size, 0);
    if (auto it = memo_.find(k); it != memo_.end()) return it->second;
    std::vector<Candidate> out;
    if (std::popcount(s) == 1) {
      if (size == 1) {
        TreeNode leaf = TreeNode::leaf(std::countr_zero(s) + 1, 1.0, 1.0);
        out.push_back({topology_key(leaf), leaf});
      }
    } else {
      out = sums(s, size);
    }
    return memo_[k] = std::move(out);
  }

  const std::vector<Candidate>& products(QubitSet s, int size) {
    auto k = std::make_tuple(s, size, 1);
    if (auto it = memo_.find(k); it != memo_.end()) return it->second;
    std::vector<Candidate> out;
    const int n = std::popcount(s);
    if (n >= 2 && size >= n) {
      for (const auto& blocks : set_partitions(s)) {
        if (blocks.size() < 2) continue;
        std::vector<TreeNode> chosen;
        fill_product(blocks, 0, size, chosen, out);
      }
    }
    std::sort(out.begin(), out.end(), [](const Candidate& a, const Candidate& b) { return a.key < b.key; });
    return memo_[k] = std::move(out);
  }

 private:
  std::vector<Candidate> sums(QubitSet s, int size) {
    const int n = std::popcount(s);
    // Each summand is a product over s with at least n leaves.
    std::vector<Candidate> pool;
    for (int part = n; part <= size - n; ++part) {
      const auto& ps = products(s, part);
      pool.insert(pool.end(), ps.begin(), ps.end());
    }
    std::vector<Candidate> out;
    std::vector<TreeNode> chosen;
    fill_sum(pool, 0, size, chosen, out);
    return out;
  }

  void fill_sum(const std::vector<Candidate>& pool, std::size_t from, int remaining, std::vector<TreeNode>& chosen,
                std::vector<Candidate>& out) {
    if (remaining == 0) {
      if (chosen.size() >= 2) {
        TreeNode t = TreeNode::sum(chosen);
        out.push_back({topology_key(t), t});
      }
      return;
    }
    for (std::size_t i = from; i < pool.size(); ++i) {
      const int sz = static_cast<int>(pool[i].tree.size());
      if (sz > remaining) continue;
      chosen.push_back(pool[i].tree);
      fill_sum(pool, i, remaining - sz, chosen, out);  // repetition allowed
      chosen.pop_back();
    }
  }

  void fill_product(const std::vector<QubitSet>& blocks, std::size_t i, int remaining, std::vector<TreeNode>& chosen,
                    std::vector<Candidate>& out) {
    if (i == blocks.size()) {
      if (remaining == 0) {
        TreeNode t = TreeNode::prod(chosen);
        out.push_back({topology_key(t), t});
      }
      return;
    }
    int rest_min = 0;
    for (std::size_t j = i + 1; j < blocks.size(); ++j) rest_min += std::popcount(blocks[j]);
    for (int sz = std::popcount(blocks[i]); sz <= remaining - rest_min; ++sz) {
      for (const auto& c : non_product(blocks[i], sz)) {
        chosen.push_back(c.tree);
        fill_product(blocks, i + 1, remaining - sz, chosen, out);
        chosen.pop_back();
      }
    }
  }

  static std::vector<std::vector<QubitSet>> set_partitions(QubitSet s) {
    std::vector<std::vector<QubitSet>> out;
    if (s == 0) {
      out.push_back({});
      return out;
    }
    // The block holding the lowest qubit, then partitions of the remainder.
    const QubitSet low = s & (~s + 1);
    const QubitSet rest = s & ~low;
    for (QubitSet sub = rest;; sub = (sub - 1) & rest) {
      const QubitSet block = low | sub;
      for (auto tail : set_partitions(rest & ~sub)) {
        tail.insert(tail.begin(), block);
        out.push_back(std::move(tail));
      }
      if (sub == 0) break;
    }
    return out;
  }

  std::map<std::tuple<QubitSet, int, int>, std::vector<Candidate>> memo_;
};

}  // namespace

std::string topology_key(const TreeNode& t) { return key_with_labels(t, identity_labels(max_label(t))); }

std::vector<TreeNode> enumerate_topologies(int n, int max_size, bool identify_relabelings) {
  if (n < 1 || n > 4) throw std::invalid_argument("enumerate_topologies: n must lie in [1, 4]");
  if (max_size < 1 || max_size > 16) throw std::invalid_argument("enumerate_topologies: max_size must lie in [1, 16]");
  const QubitSet all = qubit_range(n);
  Enumerator gen;
  std::vector<std::pair<std::string, TreeNode>> found;
  std::set<std::string> seen;

  std::vector<std::vector<int>> perms;
  std::vector<int> labels = identity_labels(n);
  if (identify_relabelings) {
    do perms.push_back(labels);
    while (std::next_permutation(labels.begin() + 1, labels.end()));
  } else {
    perms.push_back(labels);
  }

  for (int size = n; size <= max_size; ++size) {
    std::vector<Candidate> level = gen.non_product(all, size);
    const auto& prods = gen.products(all, size);
    level.insert(level.end(), prods.begin(), prods.end());
    for (const auto& c : level) {
      std::string canon = c.key;
      for (const auto& p : perms) canon = std::min(canon, key_with_labels(c.tree, p));
      if (seen.insert(canon).second) found.emplace_back(canon, c.tree);
    }
  }
  std::stable_sort(found.begin(), found.end(), [](const auto& a, const auto& b) {
    if (a.second.size() != b.second.size()) return a.second.size() < b.second.size();
    return a.first < b.first;
  });
  std::vector<TreeNode> out;
  out.reserve(found.size());
  for (auto& f : found) out.push_back(std::move(f.second));
  return out;
}

}  // namespace tscomplex
