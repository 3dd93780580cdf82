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

#ifndef FEDKIN_KINSHIP_H_
#define FEDKIN_KINSHIP_H_

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "absl/status/statusor.h"
#include "fedkin/degree.h"
#include "fedkin/genotype.h"
#include "fedkin/packed_genotypes.h"
#include "fedkin/population.h"
#include "fedkin/report.h"
#include "fedkin/researcher.h"

namespace fedkin {

// Genotype concordance counts between row i and row j.
struct KingCounts {
  uint32_t n11 = 0;     // both heterozygous
  uint32_t n02 = 0;     // i = 0, j = 2
  uint32_t n20 = 0;     // i = 2, j = 0
  uint32_t n1star = 0;  // i heterozygous
  uint32_t nstar1 = 0;  // j heterozygous

  friend bool operator==(const KingCounts&, const KingCounts&) = default;
};

// Position-by-position reference count. LengthMismatch on unequal rows.
absl::StatusOr<KingCounts> ComputeKingCounts(std::span<const Genotype> g_i,
                                             std::span<const Genotype> g_j);

// Same counts from the 2-bit packing; row i of `a` against row j of `b`.
KingCounts PackedKingCounts(const PackedRows& a, size_t i, const PackedRows& b,
                            size_t j);

// phi = (2 n11 - 4 (n02 + n20) - n*1 + n1*) / (4 n1*); empty when n1* = 0.
std::optional<double> KingCoefficient(const KingCounts& counts);

inline constexpr double kDuplicateThreshold = 0.35;
inline constexpr double kFirstDegreeThreshold = 0.175;
inline constexpr double kSecondDegreeThreshold = 0.08;

// Half-open intervals; a value equal to a threshold falls to the weaker
// class. An undefined coefficient is unrelated.
KinshipDegree ClassifyDegree(std::optional<double> phi);

struct PairwiseOptions {
  PairScope scope = PairScope::kCrossOnly;
  bool both_orientations = false;
};

// All unordered pairs in scope, sorted by (a, b). Pseudonyms must be unique
// across the inputs. ColumnCountMismatch when column counts differ.
absl::StatusOr<KinshipReport> PairwiseKinship(
    std::span<const Metadata> metadatas, const PairwiseOptions& options = {});

struct KinshipMetricsResult {
  double accuracy = 0.0;
  double precision = 0.0;
  double recall = 0.0;
  // Share of all reported pairs (unrelated ones included) whose predicted
  // class equals the truth.
  double all_pairs_accuracy = 0.0;
  size_t related_pairs = 0;
  size_t predicted_related = 0;
  size_t true_positives = 0;
};

// Entries must already carry real sample ids. Accuracy counts exact degree
// matches over truly related pairs; a related pair absent from the report
// counts as predicted unrelated. Positive means predicted related for
// precision and recall. Precision is NaN when nothing is predicted related.
// MissingTruth when an entry names a sample the truth does not know.
absl::StatusOr<KinshipMetricsResult> ComputeKinshipMetrics(
    std::span<const KinshipEntry> entries, const PedigreeTruth& truth);

}  // namespace fedkin

#endif  // FEDKIN_KINSHIP_H_
