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

#include "fedkin/packed_genotypes.h"

namespace fedkin {

PackedRows::PackedRows(const GenotypeMatrix& matrix)
    : rows_(matrix.rows()),
      cols_(matrix.cols()),
      words_((matrix.cols() + 63) / 64),
      planes_(matrix.rows() * 2 * ((matrix.cols() + 63) / 64), 0) {
  if (cols_ % 64 != 0) last_mask_ = (uint64_t{1} << (cols_ % 64)) - 1;
  for (size_t r = 0; r < rows_; ++r) {
    uint64_t* het_plane = planes_.data() + r * 2 * words_;
    uint64_t* alt_plane = het_plane + words_;
    auto row = matrix.row(r);
    for (size_t c = 0; c < cols_; ++c) {
      const uint64_t bit = uint64_t{1} << (c % 64);
      if (row[c] == 1) het_plane[c / 64] |= bit;
      if (row[c] == 2) alt_plane[c / 64] |= bit;
    }
  }
}

int PackedHamming(const PackedRows& a, size_t i, const PackedRows& b,
                  size_t j) {
  auto het_a = a.het(i), alt_a = a.alt(i);
  auto het_b = b.het(j), alt_b = b.alt(j);
  int distance = 0;
  for (size_t w = 0; w < het_a.size(); ++w) {
    distance += std::popcount((het_a[w] ^ het_b[w]) | (alt_a[w] ^ alt_b[w]));
  }
  return distance;
}

PackedColumns::PackedColumns(const GenotypeMatrix& matrix)
    : rows_(matrix.rows()),
      cols_(matrix.cols()),
      words_((matrix.rows() + 63) / 64),
      planes_(matrix.cols() * 3 * ((matrix.rows() + 63) / 64), 0) {
  for (size_t r = 0; r < rows_; ++r) {
    const uint64_t bit = uint64_t{1} << (r % 64);
    auto row = matrix.row(r);
    for (size_t c = 0; c < cols_; ++c) {
      planes_[(c * 3 + row[c]) * words_ + r / 64] |= bit;
    }
  }
}

std::array<uint32_t, 9> PackedColumns::JointCounts(size_t col_a,
                                                   size_t col_b) const {
  std::array<uint32_t, 9> counts{};
  for (int u = 0; u < 3; ++u) {
    auto lhs = indicator(col_a, u);
    for (int v = 0; v < 3; ++v) {
      auto rhs = indicator(col_b, v);
      uint32_t total = 0;
      for (size_t w = 0; w < words_; ++w) total += std::popcount(lhs[w] & rhs[w]);
      counts[3 * u + v] = total;
    }
  }
  return counts;
}

}  // namespace fedkin
