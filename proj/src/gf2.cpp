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

#include "tscomplex/gf2.hpp"

#include <algorithm>
#include <bit>
#include <sstream>
#include <stdexcept>

#include "tscomplex/random.hpp"

namespace tscomplex {

namespace {

std::size_t word_count(std::size_t bits) { return (bits + 63) / 64; }

std::uint64_t tail_mask(std::size_t bits) {
  const std::size_t r = bits & 63;
  return r == 0 ? ~std::uint64_t{0} : (std::uint64_t{1} << r) - 1;
}

// In-place row reduction. Returns pivot column per pivot row. With `reduced`
// the pivot columns are cleared above the pivot as well.
std::vector<std::size_t> eliminate(BitMatrix& m, bool reduced) {
  std::vector<std::size_t> pivots;
  const std::size_t wpr = m.words_per_row();
  std::size_t rank = 0;
  for (std::size_t c = 0; c < m.cols() && rank < m.rows(); ++c) {
    const std::size_t w = c >> 6;
    const std::uint64_t bit = std::uint64_t{1} << (c & 63);
    std::size_t pivot = rank;
    while (pivot < m.rows() && !(m.row_words(pivot)[w] & bit)) ++pivot;
    if (pivot == m.rows()) continue;
    if (pivot != rank) {
      auto a = m.row_words(pivot);
      auto b = m.row_words(rank);
      std::swap_ranges(a.begin(), a.end(), b.begin());
    }
    const auto prow = m.row_words(rank);
    for (std::size_t r = reduced ? 0 : rank + 1; r < m.rows(); ++r) {
      if (r == rank) continue;
      auto row = m.row_words(r);
      if (row[w] & bit)
        for (std::size_t k = w; k < wpr; ++k) row[k] ^= prow[k];
    }
    pivots.push_back(c);
    ++rank;
  }
  return pivots;
}

}  // namespace

BitVector::BitVector(std::size_t size) : size_(size), words_(word_count(size), 0) {}

void BitVector::set(std::size_t i, bool v) {
  const std::uint64_t bit = std::uint64_t{1} << (i & 63);
  if (v)
    words_[i >> 6] |= bit;
  else
    words_[i >> 6] &= ~bit;
}

std::size_t BitVector::popcount() const {
  std::size_t total = 0;
  for (auto w : words_) total += static_cast<std::size_t>(std::popcount(w));
  return total;
}

bool BitVector::any() const {
  return std::any_of(words_.begin(), words_.end(), [](std::uint64_t w) { return w != 0; });
}

BitVector& BitVector::operator^=(const BitVector& other) {
  if (other.size_ != size_) throw std::invalid_argument("BitVector: size mismatch");
  for (std::size_t i = 0; i < words_.size(); ++i) words_[i] ^= other.words_[i];
  return *this;
}

BitVector& BitVector::operator&=(const BitVector& other) {
  if (other.size_ != size_) throw std::invalid_argument("BitVector: size mismatch");
  for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= other.words_[i];
  return *this;
}

bool dot(const BitVector& a, const BitVector& b) {
  if (a.size_ != b.size_) throw std::invalid_argument("BitVector: size mismatch");
  std::uint64_t acc = 0;
  for (std::size_t i = 0; i < a.words_.size(); ++i) acc ^= a.words_[i] & b.words_[i];
  return std::popcount(acc) & 1;
}

std::string BitVector::to_string() const {
  std::string s(size_, '0');
  for (std::size_t i = 0; i < size_; ++i)
    if (get(i)) s[i] = '1';
  return s;
}

BitVector BitVector::from_string(std::string_view bits) {
  BitVector v(bits.size());
  for (std::size_t i = 0; i < bits.size(); ++i) {
    if (bits[i] == '1')
      v.set(i);
    else if (bits[i] != '0')
      throw std::invalid_argument("BitVector: expected only '0' and '1'");
  }
  return v;
}

BitMatrix::BitMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), wpr_(word_count(cols)), data_(rows * word_count(cols), 0) {}

BitMatrix BitMatrix::identity(std::size_t k) {
  BitMatrix m(k, k);
  for (std::size_t i = 0; i < k; ++i) m.set(i, i);
  return m;
}

BitMatrix BitMatrix::random(std::size_t rows, std::size_t cols, Rng& rng) {
  BitMatrix m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    auto words = m.row_words(r);
    for (auto& w : words) w = rng();
    if (!words.empty()) words.back() &= tail_mask(cols);
  }
  return m;
}

BitMatrix BitMatrix::from_rows(const std::vector<std::string>& rows) {
  if (rows.empty()) return {};
  BitMatrix m(rows.size(), rows.front().size());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != m.cols()) throw std::invalid_argument("BitMatrix: ragged rows");
    m.set_row(r, BitVector::from_string(rows[r]));
  }
  return m;
}

void BitMatrix::set(std::size_t r, std::size_t c, bool v) {
  auto words = row_words(r);
  const std::uint64_t bit = std::uint64_t{1} << (c & 63);
  if (v)
    words[c >> 6] |= bit;
  else
    words[c >> 6] &= ~bit;
}

BitVector BitMatrix::row(std::size_t r) const {
  BitVector v(cols_);
  std::copy_n(row_words(r).begin(), wpr_, v.words().begin());
  return v;
}

void BitMatrix::set_row(std::size_t r, const BitVector& v) {
  if (v.size() != cols_) throw std::invalid_argument("BitMatrix: row length mismatch");
  std::copy_n(v.words().begin(), wpr_, row_words(r).begin());
}

BitMatrix BitMatrix::transpose() const {
  BitMatrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c)
      if (get(r, c)) t.set(c, r);
  return t;
}

BitMatrix BitMatrix::hconcat(const BitMatrix& right) const {
  if (right.rows_ != rows_) throw std::invalid_argument("BitMatrix: row count mismatch in hconcat");
  BitMatrix out(rows_, cols_ + right.cols_);
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = 0; c < cols_; ++c)
      if (get(r, c)) out.set(r, c);
    for (std::size_t c = 0; c < right.cols_; ++c)
      if (right.get(r, c)) out.set(r, cols_ + c);
  }
  return out;
}

BitVector BitMatrix::multiply(const BitVector& v) const {
  if (v.size() != cols_) throw std::invalid_argument("BitMatrix: vector length mismatch");
  BitVector out(rows_);
  for (std::size_t r = 0; r < rows_; ++r) {
    std::uint64_t acc = 0;
    const auto words = row_words(r);
    for (std::size_t k = 0; k < wpr_; ++k) acc ^= words[k] & v.words()[k];
    if (std::popcount(acc) & 1) out.set(r);
  }
  return out;
}

std::size_t gf2_rank(const BitMatrix& m) {
  BitMatrix work = m;
  return eliminate(work, false).size();
}

bool gf2_is_invertible(const BitMatrix& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("gf2_is_invertible: matrix is not square");
  return gf2_rank(m) == m.rows();
}

std::vector<BitVector> gf2_kernel_basis(const BitMatrix& m) {
  BitMatrix work = m;
  const std::vector<std::size_t> pivots = eliminate(work, true);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto c : pivots) is_pivot[c] = true;

  std::vector<BitVector> basis;
  for (std::size_t f = 0; f < m.cols(); ++f) {
    if (is_pivot[f]) continue;
    BitVector v(m.cols());
    v.set(f);
    // Pivot variable of row r equals the free-column entry of that row.
    for (std::size_t r = 0; r < pivots.size(); ++r)
      if (work.get(r, f)) v.set(pivots[r]);
    basis.push_back(std::move(v));
  }
  return basis;
}

BitMatrix gf2_columns(const BitMatrix& m, const BitVector& mask) {
  if (mask.size() != m.cols()) throw std::invalid_argument("gf2_columns: mask length must equal column count");
  std::vector<std::size_t> cols;
  for (std::size_t c = 0; c < mask.size(); ++c)
    if (mask.get(c)) cols.push_back(c);
  return gf2_columns(m, cols);
}

BitMatrix gf2_columns(const BitMatrix& m, std::span<const std::size_t> columns) {
  BitMatrix out(m.rows(), columns.size());
  for (std::size_t j = 0; j < columns.size(); ++j) {
    const std::size_t c = columns[j];
    if (c >= m.cols()) throw std::invalid_argument("gf2_columns: column index out of range");
    const std::size_t w = c >> 6;
    const unsigned sh = c & 63;
    for (std::size_t r = 0; r < m.rows(); ++r)
      if ((m.row_words(r)[w] >> sh) & 1U) out.row_words(r)[j >> 6] |= std::uint64_t{1} << (j & 63);
  }
  return out;
}

std::vector<std::size_t> gf2_independent_rows(const BitMatrix& m) {
  // Incremental basis in echelon form keyed by leading column.
  std::vector<std::size_t> chosen;
  std::vector<BitVector> basis;
  std::vector<std::size_t> lead;
  for (std::size_t r = 0; r < m.rows(); ++r) {
    BitVector v = m.row(r);
    for (std::size_t i = 0; i < basis.size(); ++i)
      if (v.get(lead[i])) v ^= basis[i];
    if (!v.any()) continue;
    std::size_t c = 0;
    while (!v.get(c)) ++c;
    // Keep basis reduced so the single pass above stays valid.
    for (auto& b : basis)
      if (b.get(c)) b ^= v;
    basis.push_back(std::move(v));
    lead.push_back(c);
    chosen.push_back(r);
  }
  return chosen;
}

std::string to_text(const BitMatrix& m) {
  std::string out;
  out.reserve(m.rows() * (m.cols() + 1));
  for (std::size_t r = 0; r < m.rows(); ++r) {
    out += m.row(r).to_string();
    out += '\n';
  }
  return out;
}

BitMatrix bit_matrix_from_text(std::string_view text) {
  std::vector<std::string> rows;
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    rows.push_back(line);
  }
  return BitMatrix::from_rows(rows);
}

}  // namespace tscomplex
