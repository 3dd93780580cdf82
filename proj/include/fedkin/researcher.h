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

#ifndef FEDKIN_RESEARCHER_H_
#define FEDKIN_RESEARCHER_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "absl/container/flat_hash_map.h"
#include "absl/container/flat_hash_set.h"
#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "absl/strings/string_view.h"
#include "fedkin/genotype.h"
#include "fedkin/population_stats.h"
#include "fedkin/report.h"

namespace fedkin {

// What the researchers agree on out of band: the ordered SNP panel and the
// common shuffling seed.
struct SyncAgreement {
  std::vector<std::string> panel;
  uint64_t seed_u = 0;

  size_t m() const { return panel.size(); }

  // Panel ids unique and m >= 2.
  absl::Status Validate() const;
};

// JSON object {"panel": [ids...], "seed_u": "<decimal uint64>"}.
std::string FormatAgreementJson(const SyncAgreement& agreement);
absl::StatusOr<SyncAgreement> ParseAgreementJson(absl::string_view text);

// Bijection on {0..m-1}. Entry c names the panel position whose values are
// placed in shuffled column c.
class PermutationVector {
 public:
  PermutationVector() = default;

  static absl::StatusOr<PermutationVector> FromMapping(
      std::vector<size_t> mapping);
  static PermutationVector Identity(size_t m);

  size_t size() const { return mapping_.size(); }
  size_t operator[](size_t column) const { return mapping_[column]; }
  const std::vector<size_t>& mapping() const { return mapping_; }

  PermutationVector Inverse() const;

  friend bool operator==(const PermutationVector&,
                         const PermutationVector&) = default;

 private:
  explicit PermutationVector(std::vector<size_t> mapping)
      : mapping_(std::move(mapping)) {}

  std::vector<size_t> mapping_;
};

// Fisher-Yates over [0..m-1] driven by ChaChaStream(seed_u, 0): for i from
// m-1 down to 1, swap position i with position UniformBelow(i + 1).
PermutationVector DerivePermutation(uint64_t seed_u, size_t m);

enum class PanelStrategy { kRandom, kCloseMaf };

absl::string_view PanelStrategyName(PanelStrategy strategy);
absl::StatusOr<PanelStrategy> ParsePanelStrategy(absl::string_view name);

// kRandom: uniform sample without replacement, returned in dataset order.
// kCloseMaf: the m consecutive SNPs of the MAF-sorted order whose MAF range
// is smallest (earliest window on ties), returned in MAF order.
// PanelTooLarge when m exceeds the number of SNPs.
absl::StatusOr<std::vector<std::string>> SelectSnpPanel(
    const MafVector& maf, std::span<const std::string> snp_ids, size_t m,
    PanelStrategy strategy, uint64_t seed);

// Randomized response restricted to moves of one allele. A value is kept
// with probability p = e^eps / (e^eps + 2); a homozygote otherwise becomes 1
// (probability 2 / (e^eps + 2)); a heterozygote otherwise becomes 0 or 2 with
// probability 1 / (e^eps + 2) each. epsilon = +inf disables noise.
class LdpParams {
 public:
  static absl::StatusOr<LdpParams> Create(double epsilon);
  static LdpParams NoNoise();

  double epsilon() const { return epsilon_; }
  bool is_identity() const { return keep_prob_ == 1.0; }

  double keep_prob() const { return keep_prob_; }
  double hom_to_het_prob() const { return 1.0 - keep_prob_; }
  double het_to_each_hom_prob() const { return 0.5 * (1.0 - keep_prob_); }

 private:
  LdpParams(double epsilon, double keep_prob)
      : epsilon_(epsilon), keep_prob_(keep_prob) {}

  double epsilon_;
  double keep_prob_;
};

// Noise for cell (r, c) uses keystream word r * cols + c of
// ChaChaStream(seed, "ldp"), so results do not depend on traversal order.
GenotypeMatrix ApplyLdpVariant(const GenotypeMatrix& matrix,
                               const LdpParams& params, uint64_t seed);

// Row ids a researcher knows to be synthetic. Never leaves the researcher.
class SyntheticRegistry {
 public:
  void Insert(std::string id) { ids_.insert(std::move(id)); }
  bool Contains(absl::string_view id) const {
    return ids_.contains(std::string(id));
  }
  size_t size() const { return ids_.size(); }
  bool empty() const { return ids_.empty(); }
  const absl::flat_hash_set<std::string>& ids() const { return ids_; }

 private:
  absl::flat_hash_set<std::string> ids_;
};

struct SyntheticSamples {
  GenotypeMatrix rows;
  // Local ids "syn" + index, one per row.
  std::vector<std::string> ids;
  SyntheticRegistry registry;
};

// n' rows with SNPs independent; each SNP gets a frequency drawn uniformly
// from [0.05, 0.5] once per batch and genotypes follow Hardy-Weinberg.
SyntheticSamples GenerateSyntheticSamples(size_t m, size_t n_prime,
                                          uint64_t seed);

// The partial dataset shipped to the server. Columns are labelled c0..c(m-1)
// on the wire; no SNP id is carried.
struct Metadata {
  std::vector<std::string> row_ids;
  GenotypeMatrix matrix;

  size_t m() const { return matrix.cols(); }
  size_t rows() const { return matrix.rows(); }
};

std::string FormatMetadata(const Metadata& metadata);
absl::StatusOr<Metadata> ParseMetadata(absl::string_view text);

struct MetadataSeeds {
  uint64_t synthetic = 0;
  uint64_t rows = 0;
  uint64_t noise = 0;

  // Independent seeds for each stage derived from one local seed.
  static MetadataSeeds FromLocalSeed(uint64_t local_seed);
};

// Everything prepare_metadata produces. Only `metadata` is sent.
struct PreparedShare {
  Metadata metadata;
  SyntheticRegistry registry;
  // Pseudonym -> original sample id; synthetic rows are absent.
  absl::flat_hash_map<std::string, std::string> pseudonym_to_sample;
};

// Project onto the panel in agreed order, append n' synthetic rows, shuffle
// columns by DerivePermutation(seed_u, m), shuffle rows and assign
// pseudonyms `label`-NNNNNN, then apply the LDP variant to every cell.
// MissingPanelSnp when the dataset lacks a panel SNP.
absl::StatusOr<PreparedShare> PrepareMetadata(const GenotypeDataset& dataset,
                                              const SyncAgreement& agreement,
                                              size_t n_prime,
                                              const LdpParams& params,
                                              const MetadataSeeds& seeds,
                                              absl::string_view label);

// Drops every entry that involves a synthetic id.
std::vector<KinshipEntry> FilterResults(std::span<const KinshipEntry> entries,
                                        const SyntheticRegistry& registry);

// Replaces every pseudonym found in `pseudonym_to_sample`; ids not found are
// left untouched. Orientation (which side normalizes phi) is kept.
std::vector<KinshipEntry> RelabelEntries(
    std::span<const KinshipEntry> entries,
    const absl::flat_hash_map<std::string, std::string>& pseudonym_to_sample);

}  // namespace fedkin

#endif  // FEDKIN_RESEARCHER_H_
