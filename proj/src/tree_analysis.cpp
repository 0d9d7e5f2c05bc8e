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

#include "tscomplex/tree.hpp"

namespace tscomplex {

namespace {

struct Sides {
  QubitSet y;
  QubitSet z;
  bool pure(QubitSet s) const { return (s & ~y) == 0 || (s & ~z) == 0; }
  bool strict(QubitSet a, QubitSet b) const {
    return ((a & ~y) == 0 && (b & ~z) == 0) || ((a & ~z) == 0 && (b & ~y) == 0);
  }
};

void analyse(const TreeNode& t, const Sides& sides, const std::string& path, SeparationReport& report) {
  if (t.is_leaf()) return;
  const auto kids = t.children();
  if (t.kind() == NodeKind::Prod) {
    ++report.prod_gates;
    const QubitSet a = kids[0].qubits();
    const QubitSet b = kids[1].qubits();
    if (sides.strict(a, b)) ++report.strictly_separating;
    if (!sides.pure(a) && !sides.pure(b) && report.all_separating) {
      report.all_separating = false;
      report.offending_gate = path;
    }
  }
  for (std::size_t i = 0; i < kids.size(); ++i) analyse(kids[i], sides, path + "/" + std::to_string(i), report);
}

std::optional<TreeNode> tensor(const std::optional<TreeNode>& a, const TreeNode& b) {
  if (!a) return b;
  return TreeNode::prod({*a, b});
}

std::vector<SchmidtTerm> rewrite(const TreeNode& t, const Sides& sides, const std::string& path) {
  const QubitSet s = t.qubits();
  if ((s & ~sides.y) == 0) return {SchmidtTerm{t, std::nullopt}};
  if ((s & ~sides.z) == 0) return {SchmidtTerm{std::nullopt, t}};

  const auto kids = t.children();
  if (t.kind() == NodeKind::Sum) {
    std::vector<SchmidtTerm> out;
    for (std::size_t i = 0; i < kids.size(); ++i) {
      auto part = rewrite(kids[i], sides, path + "/" + std::to_string(i));
      out.insert(out.end(), part.begin(), part.end());
    }
    return out;
  }
  // Binary product gate acting on both sides: a pure child distributes over
  // the terms of its sibling.
  const TreeNode& a = kids[0];
  const TreeNode& b = kids[1];
  if (sides.strict(a.qubits(), b.qubits())) {
    if ((a.qubits() & ~sides.y) == 0) return {SchmidtTerm{a, b}};
    return {SchmidtTerm{b, a}};
  }
  std::size_t mixed_index;
  if (sides.pure(b.qubits()))
    mixed_index = 0;
  else if (sides.pure(a.qubits()))
    mixed_index = 1;
  else
    throw TreeError("schmidt_like_rewrite: product gate at " + path + " is not separating");
  const TreeNode& pure = kids[1 - mixed_index];
  const bool pure_in_y = (pure.qubits() & ~sides.y) == 0;
  auto terms = rewrite(kids[mixed_index], sides, path + "/" + std::to_string(mixed_index));
  for (auto& term : terms) {
    if (pure_in_y)
      term.y = tensor(term.y, pure);
    else
      term.z = tensor(term.z, pure);
  }
  return terms;
}

}  // namespace

SeparationReport separating_analysis(const TreeNode& t, const Bipartition& p) {
  const QubitSet y = y_qubits(p);
  const Sides sides{y, qubit_range(p.n()) & ~y};
  SeparationReport report;
  analyse(binarize(t), sides, "root", report);
  return report;
}

std::vector<SchmidtTerm> schmidt_like_rewrite(const TreeNode& t, const Bipartition& p) {
  const QubitSet y = y_qubits(p);
  const Sides sides{y, qubit_range(p.n()) & ~y};
  return rewrite(binarize(t), sides, "root");
}

TreeNode assemble_schmidt_terms(const std::vector<SchmidtTerm>& terms) {
  if (terms.empty()) throw std::invalid_argument("assemble_schmidt_terms: no terms");
  std::vector<TreeNode> parts;
  for (const auto& term : terms) {
    if (term.y && term.z)
      parts.push_back(TreeNode::prod({*term.y, *term.z}));
    else if (term.y)
      parts.push_back(*term.y);
    else if (term.z)
      parts.push_back(*term.z);
    else
      throw std::invalid_argument("assemble_schmidt_terms: empty term");
  }
  if (parts.size() == 1) return parts.front();
  return TreeNode::sum(std::move(parts));
}

}  // namespace tscomplex
