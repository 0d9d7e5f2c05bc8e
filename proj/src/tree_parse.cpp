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

#include <cctype>
#include <charconv>

#include "tscomplex/tree.hpp"

namespace tscomplex {

namespace {

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  TreeNode parse_document() {
    TreeNode t = parse_tree();
    skip_space();
    if (pos_ != text_.size()) fail("trailing characters after tree");
    return t;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const { throw ParseError(what, pos_); }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  char peek() {
    skip_space();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    return text_[pos_];
  }

  void expect(char c) {
    if (peek() != c) fail(std::string("expected '") + c + "'");
    ++pos_;
  }

  TreeNode parse_tree() {
    const char c = peek();
    if (c == '[') return parse_leaf();
    if (c != '(') fail("expected '(' or '['");
    ++pos_;
    const std::size_t op_pos = pos_;
    const char op = peek();
    NodeKind kind;
    if (op == '+')
      kind = NodeKind::Sum;
    else if (op == 'x')
      kind = NodeKind::Prod;
    else
      fail("expected gate '+' or 'x'");
    ++pos_;
    std::vector<TreeNode> children;
    while (peek() != ')') children.push_back(parse_tree());
    if (children.size() < 2) fail("gate needs at least two children");
    ++pos_;
    try {
      return TreeNode::gate(kind, std::move(children));
    } catch (const TreeError& e) {
      throw TreeError("gate at position " + std::to_string(op_pos) + ": " + e.what());
    }
  }

  TreeNode parse_leaf() {
    const std::size_t start = pos_;
    expect('[');
    if (peek() != 'q') fail("expected 'q' after '['");
    ++pos_;
    int qubit = 0;
    const auto [ptr, ec] = std::from_chars(text_.data() + pos_, text_.data() + text_.size(), qubit);
    if (ec != std::errc{}) fail("expected qubit index");
    pos_ = static_cast<std::size_t>(ptr - text_.data());
    const Complex a0 = parse_complex();
    const Complex a1 = parse_complex();
    expect(']');
    try {
      return TreeNode::leaf(qubit, a0, a1);
    } catch (const TreeError& e) {
      throw ParseError(e.what(), start);
    }
  }

  Complex parse_complex() {
    if (peek() == '(') {
      ++pos_;
      const double re = parse_float();
      expect(',');
      const double im = parse_float();
      expect(')');
      return {re, im};
    }
    return {parse_float(), 0.0};
  }

  double parse_float() {
    skip_space();
    const char* begin = text_.data() + pos_;
    const char* end = text_.data() + text_.size();
    if (begin != end && *begin == '+') ++begin;  // from_chars rejects a leading '+'
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(begin, end, v);
    if (ec != std::errc{}) fail("expected a number");
    pos_ = static_cast<std::size_t>(ptr - text_.data());
    return v;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

void append_double(std::string& out, double v) {
  if (v == 0.0) v = 0.0;  // drop the sign of -0
  char buf[32];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  out.append(buf, ptr);
}

void append_complex(std::string& out, Complex c) {
  if (c.imag() == 0.0) {
    append_double(out, c.real());
    return;
  }
  out += '(';
  append_double(out, c.real());
  out += ',';
  append_double(out, c.imag());
  out += ')';
}

void serialize_into(std::string& out, const TreeNode& t) {
  if (t.is_leaf()) {
    const Leaf& l = t.leaf_data();
    out += "[q";
    out += std::to_string(l.qubit);
    out += ' ';
    append_complex(out, l.a0);
    out += ' ';
    append_complex(out, l.a1);
    out += ']';
    return;
  }
  out += t.kind() == NodeKind::Sum ? "(+" : "(x";
  for (const auto& c : t.children()) {
    out += ' ';
    serialize_into(out, c);
  }
  out += ')';
}

}  // namespace

TreeNode parse_tree(std::string_view text) { return Parser(text).parse_document(); }

std::string serialize_tree(const TreeNode& t) {
  std::string out;
  serialize_into(out, t);
  return out;
}

}  // namespace tscomplex
