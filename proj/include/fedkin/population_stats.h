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

#ifndef FEDKIN_POPULATION_STATS_H_
#define FEDKIN_POPULATION_STATS_H_

#include <array>
#include <cstddef>
#include <span>
#include <vector>

#include "absl/status/statusor.h"
#include "fedkin/genotype.h"

namespace fedkin {

// Per-SNP minor allele frequency, indexed by column.
using MafVector = std::vector<double>;

// Column k -> (sum of column k) / (2 * rows). The encoding is taken as given:
// a column whose frequency exceeds 0.5 is not flipped.
MafVector ComputeMaf(const GenotypeMatrix& matrix);
MafVector ComputeMaf(const GenotypeDataset& dataset);

// Empirical 3x3 joint genotype distribution of two SNPs. Cell (u, v) is the
// fraction of samples with genotype u at the first SNP and v at the second.
struct JointTable {
  std::array<double, 9> cells{};

  double at(int u, int v) const { return cells[3 * u + v]; }
  double& at(int u, int v) { return cells[3 * u + v]; }

  JointTable Transposed() const;
  double Total() const;

  friend bool operator==(const JointTable&, const JointTable&) = default;
};

absl::StatusOr<JointTable> ComputeJointTable(const GenotypeMatrix& matrix,
                                             size_t snp_a, size_t snp_b);
absl::StatusOr<JointTable> ComputeJointTable(const GenotypeDataset& dataset,
                                             size_t snp_a, size_t snp_b);

// L1 distance over the nine cells; lies in [0, 2] for normalized tables.
double TableDistance(const JointTable& t1, const JointTable& t2);

// Number of positions at which the two rows differ. LengthMismatch when the
// rows have different lengths.
absl::StatusOr<int> HammingDistance(std::span<const Genotype> g1,
                                    std::span<const Genotype> g2);

// Mean gap between consecutive values after sorting; the spread measure used
// to compare SNP panels.
double MeanAdjacentDistance(std::vector<double> values);

}  // namespace fedkin

#endif  // FEDKIN_POPULATION_STATS_H_
