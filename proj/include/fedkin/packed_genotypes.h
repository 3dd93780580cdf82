// Copyright 2026 The Fedkin Authors
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

#ifndef FEDKIN_PACKED_GENOTYPES_H_
#define FEDKIN_PACKED_GENOTYPES_H_

#include <array>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "fedkin/genotype.h"

namespace fedkin {

// Two bits per genotype, one bit plane per bit: a row's SNPs are laid out in
// consecutive 64-bit words, `het` set where the genotype is 1 and `alt` set
// where it is 2. Genotype 0 is the complement of both within `valid_mask`.
// Pairwise row comparisons reduce to AND/XOR plus population counts.
class PackedRows {
 public:
  PackedRows() = default;
  explicit PackedRows(const GenotypeMatrix& matrix);

  size_t rows() const { return rows_; }
  size_t cols() const { return cols_; }
  size_t words_per_row() const { return words_; }

  std::span<const uint64_t> het(size_t row) const {
    return {planes_.data() + row * 2 * words_, words_};
  }
  std::span<const uint64_t> alt(size_t row) const {
    return {planes_.data() + row * 2 * words_ + words_, words_};
  }
  // Mask of the bits that correspond to real SNPs in word `w`.
  uint64_t valid_mask(size_t w) const {
    return w + 1 == words_ ? last_mask_ : ~uint64_t{0};
  }

 private:
  size_t rows_ = 0;
  size_t cols_ = 0;
  size_t words_ = 0;
  uint64_t last_mask_ = ~uint64_t{0};
  std::vector<uint64_t> planes_;
};

// Positions where row `i` of `a` and row `j` of `b` hold different genotypes.
// Both packings must have the same column count.
int PackedHamming(const PackedRows& a, size_t i, const PackedRows& b,
                  size_t j);

// One indicator bitset per (column, genotype) over the rows, so that the
// 3x3 joint count of two columns is nine AND+popcount sweeps.
class PackedColumns {
 public:
  PackedColumns() = default;
  explicit PackedColumns(const GenotypeMatrix& matrix);

  size_t rows() const { return rows_; }
  size_t cols() const { return cols_; }

  std::span<const uint64_t> indicator(size_t col, int genotype) const {
    return {planes_.data() + (col * 3 + genotype) * words_, words_};
  }

  // counts[3u + v] = number of rows with genotype u in `col_a` and v in
  // `col_b`.
  std::array<uint32_t, 9> JointCounts(size_t col_a, size_t col_b) const;

 private:
  size_t rows_ = 0;
  size_t cols_ = 0;
  size_t words_ = 0;
  std::vector<uint64_t> planes_;
};

}  // namespace fedkin

#endif  // FEDKIN_PACKED_GENOTYPES_H_
