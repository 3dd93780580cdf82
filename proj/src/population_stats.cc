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

#include "fedkin/population_stats.h"

#include <algorithm>
#include <cmath>
#include <cstdint>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"

namespace fedkin {

MafVector ComputeMaf(const GenotypeMatrix& matrix) {
  std::vector<uint64_t> sums(matrix.cols(), 0);
  for (size_t r = 0; r < matrix.rows(); ++r) {
    auto row = matrix.row(r);
    for (size_t c = 0; c < row.size(); ++c) sums[c] += row[c];
  }
  MafVector maf(matrix.cols(), 0.0);
  if (matrix.rows() == 0) return maf;
  const double denom = 2.0 * static_cast<double>(matrix.rows());
  for (size_t c = 0; c < sums.size(); ++c) {
    maf[c] = static_cast<double>(sums[c]) / denom;
  }
  return maf;
}

MafVector ComputeMaf(const GenotypeDataset& dataset) {
  return ComputeMaf(dataset.matrix());
}

JointTable JointTable::Transposed() const {
  JointTable t;
  for (int u = 0; u < 3; ++u) {
    for (int v = 0; v < 3; ++v) t.at(v, u) = at(u, v);
  }
  return t;
}

double JointTable::Total() const {
  double total = 0.0;
  for (double c : cells) total += c;
  return total;
}

absl::StatusOr<JointTable> ComputeJointTable(const GenotypeMatrix& matrix,
                                             size_t snp_a, size_t snp_b) {
  if (snp_a >= matrix.cols() || snp_b >= matrix.cols()) {
    return absl::OutOfRangeError(
        absl::StrCat("IndexOutOfRange: SNP index ", std::max(snp_a, snp_b),
                     " with ", matrix.cols(), " SNPs"));
  }
  if (snp_a == snp_b) {
    return absl::InvalidArgumentError(
        absl::StrCat("SameSnp: both indices are ", snp_a));
  }
  std::array<uint64_t, 9> counts{};
  for (size_t r = 0; r < matrix.rows(); ++r) {
    ++counts[3 * matrix.at(r, snp_a) + matrix.at(r, snp_b)];
  }
  JointTable table;
  if (matrix.rows() == 0) return table;
  for (int i = 0; i < 9; ++i) {
    table.cells[i] =
        static_cast<double>(counts[i]) / static_cast<double>(matrix.rows());
  }
  return table;
}

absl::StatusOr<JointTable> ComputeJointTable(const GenotypeDataset& dataset,
                                             size_t snp_a, size_t snp_b) {
  return ComputeJointTable(dataset.matrix(), snp_a, snp_b);
}

double TableDistance(const JointTable& t1, const JointTable& t2) {
  double distance = 0.0;
  for (int i = 0; i < 9; ++i) distance += std::abs(t1.cells[i] - t2.cells[i]);
  return distance;
}

absl::StatusOr<int> HammingDistance(std::span<const Genotype> g1,
                                    std::span<const Genotype> g2) {
  if (g1.size() != g2.size()) {
    return absl::InvalidArgumentError(absl::StrCat(
        "LengthMismatch: rows of length ", g1.size(), " and ", g2.size()));
  }
  int distance = 0;
  for (size_t i = 0; i < g1.size(); ++i) distance += g1[i] != g2[i];
  return distance;
}

double MeanAdjacentDistance(std::vector<double> values) {
  if (values.size() < 2) return 0.0;
  std::sort(values.begin(), values.end());
  double total = 0.0;
  for (size_t i = 1; i < values.size(); ++i) total += values[i] - values[i - 1];
  return total / static_cast<double>(values.size() - 1);
}

}  // namespace fedkin
