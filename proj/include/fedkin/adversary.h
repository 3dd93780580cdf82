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

#ifndef FEDKIN_ADVERSARY_H_
#define FEDKIN_ADVERSARY_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "absl/container/flat_hash_map.h"
#include "absl/status/statusor.h"
#include "fedkin/genotype.h"
#include "fedkin/population_stats.h"
#include "fedkin/researcher.h"

namespace fedkin {

// The server's side information: candidate SNP ids I', their reference
// MAFs, and a reference joint table for every unordered candidate pair.
class AdversaryKnowledge {
 public:
  // Statistics computed from the reference genotypes restricted to
  // `candidate_ids`, which must all be SNPs of `reference`.
  static absl::StatusOr<AdversaryKnowledge> FromReference(
      const GenotypeDataset& reference, std::vector<std::string> candidate_ids);

  // Explicit statistics. `pair_tables` holds one table per pair i < j in
  // row-major upper-triangular order, oriented (i, j).
  static absl::StatusOr<AdversaryKnowledge> Create(
      std::vector<std::string> candidate_ids, MafVector ref_maf,
      std::vector<JointTable> pair_tables);

  size_t size() const { return candidate_ids_.size(); }
  const std::vector<std::string>& candidate_ids() const {
    return candidate_ids_;
  }
  const MafVector& ref_maf() const { return ref_maf_; }

  // Table oriented (i, j): rows are genotypes of candidate i. i != j.
  JointTable Table(size_t i, size_t j) const;

 private:
  size_t PairIndex(size_t i, size_t j) const;

  std::vector<std::string> candidate_ids_;
  MafVector ref_maf_;
  std::vector<JointTable> pair_tables_;
};

// Metadata column index -> SNP id inferred for it.
struct MatchAssignment {
  std::vector<std::string> column_ids;
};

struct UnshuffleOptions {
  // Columns whose table distance is within this of the best one are treated
  // as tied and separated by MAF.
  double delta_corr = 0.01;
  // When even the best table distance exceeds this, the walk re-anchors on
  // the globally closest MAF pair.
  double stall_distance = 0.5;
};

// Greedy matching of shuffled columns to candidate ids.
//  1. Anchor: among unassigned columns and ids, the pair with the smallest
//     |MAF difference|. Exact ties go to the column whose best id is most
//     clearly separated from its second best, then to the lowest index.
//  2. Draw an unassigned id b uniformly at random. For every unassigned
//     column c compare the reference table (anchor id, b) with the metadata
//     table (anchor column, c) in L1.
//  3. Columns within delta_corr of the smallest distance are candidates;
//     several candidates are separated by |MAF(c) - refMAF(b)|.
//  4. Assign, make the new pair the anchor, repeat until every column has an
//     id.
// KnowledgeIncomplete when the knowledge has fewer ids than columns.
absl::StatusOr<MatchAssignment> UnshuffleGreedy(
    const Metadata& metadata, const AdversaryKnowledge& knowledge,
    uint64_t seed, const UnshuffleOptions& options = {});

// Fraction of columns c whose inferred id equals panel[q[c]].
double UnshufflingAccuracy(const MatchAssignment& assignment,
                           const PermutationVector& q,
                           std::span<const std::string> panel);

// Metadata reordered into panel order with exactly round(level * m) columns
// at their true position and the rest deranged among themselves.
// InvalidArgument when exactly one column would remain to derange.
absl::StatusOr<Metadata> SimulateUnshuffleLevel(const Metadata& metadata,
                                                const PermutationVector& q,
                                                double level, uint64_t seed);

// Victim profiles laid out in the adversary's column order: column c of the
// result holds each victim's genotype at assignment.column_ids[c].
absl::StatusOr<GenotypeMatrix> AlignVictims(const GenotypeDataset& victims,
                                            const MatchAssignment& assignment);

struct PowerConfig {
  size_t set_a_size = 50;  // non-members
  size_t set_b_size = 50;  // members
  double fpr_target = 0.05;

  absl::Status Validate() const;
};

struct PowerResult {
  // Hamming test: the integer gamma. LRT: the score threshold.
  double threshold = 0.0;
  double power = 0.0;
  double achieved_fpr = 0.0;
};

// Minimum Hamming distance from each victim to any row of `dataset`.
std::vector<int> MinHammingScores(const GenotypeMatrix& dataset,
                                  const GenotypeMatrix& victims);

// gamma is the largest integer with (share of non-members scoring below
// gamma) <= fpr_target; power is the share of members scoring below gamma.
// DegenerateSets when either victim set has fewer than 20 rows.
absl::StatusOr<PowerResult> MembershipPowerHamming(
    const GenotypeMatrix& unshuffled, const GenotypeMatrix& victims_in,
    const GenotypeMatrix& victims_out, const PowerConfig& config);

enum class LrtEncoding {
  // x = 1 when the victim carries at least one minor allele.
  kCarrier,
  // Two allele draws per SNP: x log(a/p) + (2 - x) log((1-a)/(1-p)).
  kDosage,
};

// sum_j x_j log(a_j / pop_j) + (1 - x_j) log((1 - a_j) / (1 - pop_j)) with
// both frequencies clamped to [1e-6, 1 - 1e-6]. LengthMismatch on unequal
// inputs.
absl::StatusOr<double> LrtScore(std::span<const Genotype> victim,
                                const MafVector& dataset_maf,
                                const MafVector& pop_maf,
                                LrtEncoding encoding = LrtEncoding::kCarrier);

// Threshold at the (1 - fpr_target) quantile of non-member scores; power is
// the share of members scoring strictly above it.
absl::StatusOr<PowerResult> LrtPower(
    const GenotypeMatrix& members, const GenotypeMatrix& nonmembers,
    const MafVector& dataset_maf, const MafVector& pop_maf, double fpr_target,
    LrtEncoding encoding = LrtEncoding::kCarrier);

}  // namespace fedkin

#endif  // FEDKIN_ADVERSARY_H_
