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

#ifndef TSCOMPLEX_GF2_HPP
#define TSCOMPLEX_GF2_HPP

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace tscomplex {

class Rng;

/// Packed bit vector over GF(2). Bit i lives in word i / 64 at position i % 64.
class BitVector {
 public:
  BitVector() = default;
  explicit BitVector(std::size_t size);

  std::size_t size() const { return size_; }
  bool get(std::size_t i) const { return (words_[i >> 6] >> (i & 63)) & 1U; }
  void set(std::size_t i, bool v = true);
  void flip(std::size_t i) { words_[i >> 6] ^= std::uint64_t{1} << (i & 63); }

  std::size_t popcount() const;
  bool any() const;

  std::span<const std::uint64_t> words() const { return words_; }
  std::span<std::uint64_t> words() { return words_; }

  BitVector& operator^=(const BitVector& other);
  BitVector& operator&=(const BitVector& other);
  friend BitVector operator^(BitVector a, const BitVector& b) { return a ^= b; }
  friend BitVector operator&(BitVector a, const BitVector& b) { return a &= b; }
  friend bool operator==(const BitVector&, const BitVector&) = default;

  /// Dot product mod 2.
  friend bool dot(const BitVector& a, const BitVector& b);

  /// '0'/'1' characters, index 0 first.
  std::string to_string() const;
  static BitVector from_string(std::string_view bits);

 private:
  std::size_t size_ = 0;
  std::vector<std::uint64_t> words_;
};

/// Dense bit-packed matrix over GF(2). Padding bits past `cols` in the last
/// word of every row are kept at zero.
class BitMatrix {
 public:
  BitMatrix() = default;
  BitMatrix(std::size_t rows, std::size_t cols);

  static BitMatrix identity(std::size_t k);
  static BitMatrix random(std::size_t rows, std::size_t cols, Rng& rng);
  /// Rows given as '0'/'1' strings of equal length.
  static BitMatrix from_rows(const std::vector<std::string>& rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t words_per_row() const { return wpr_; }

  bool get(std::size_t r, std::size_t c) const { return (row_words(r)[c >> 6] >> (c & 63)) & 1U; }
  void set(std::size_t r, std::size_t c, bool v = true);

  std::span<const std::uint64_t> row_words(std::size_t r) const { return {data_.data() + r * wpr_, wpr_}; }
  std::span<std::uint64_t> row_words(std::size_t r) { return {data_.data() + r * wpr_, wpr_}; }

  BitVector row(std::size_t r) const;
  void set_row(std::size_t r, const BitVector& v);

  BitMatrix transpose() const;
  /// Horizontal concatenation (this | right).
  BitMatrix hconcat(const BitMatrix& right) const;
  /// m * v mod 2.
  BitVector multiply(const BitVector& v) const;

  friend bool operator==(const BitMatrix&, const BitMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::size_t wpr_ = 0;
  std::vector<std::uint64_t> data_;
};

std::size_t gf2_rank(const BitMatrix& m);

/// Throws on non-square input.
bool gf2_is_invertible(const BitMatrix& m);

/// Basis of {v : m v = 0 mod 2}, one vector per free column of the reduced
/// echelon form; the result has cols - rank entries.
std::vector<BitVector> gf2_kernel_basis(const BitMatrix& m);

/// Columns selected by `mask` (size = cols), in ascending order.
BitMatrix gf2_columns(const BitMatrix& m, const BitVector& mask);
/// Columns by explicit index list, in the given order.
BitMatrix gf2_columns(const BitMatrix& m, std::span<const std::size_t> columns);

/// Indices of the first linearly independent rows, scanning top to bottom.
std::vector<std::size_t> gf2_independent_rows(const BitMatrix& m);

/// One row per line of '0'/'1' characters.
std::string to_text(const BitMatrix& m);
BitMatrix bit_matrix_from_text(std::string_view text);

}  // namespace tscomplex

#endif  // TSCOMPLEX_GF2_HPP
