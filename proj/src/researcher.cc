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

#include "fedkin/researcher.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "absl/strings/numbers.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_format.h"
#include "fedkin/dataset_io.h"
#include "fedkin/population.h"
#include "fedkin/random.h"
#include "fedkin/status_macros.h"
#include "json.hpp"

namespace fedkin {

absl::Status SyncAgreement::Validate() const {
  if (panel.size() < 2) {
    return absl::InvalidArgumentError(
        absl::StrCat("agreement needs m >= 2, got ", panel.size()));
  }
  absl::flat_hash_set<std::string> seen;
  for (const std::string& id : panel) {
    if (!seen.insert(id).second) {
      return absl::InvalidArgumentError(
          absl::StrCat("DuplicateSnpId: panel lists ", id, " twice"));
    }
  }
  return absl::OkStatus();
}

std::string FormatAgreementJson(const SyncAgreement& agreement) {
  nlohmann::ordered_json json;
  json["panel"] = agreement.panel;
  json["seed_u"] = std::to_string(agreement.seed_u);
  return json.dump(2) + "\n";
}

absl::StatusOr<SyncAgreement> ParseAgreementJson(absl::string_view text) {
  nlohmann::json json = nlohmann::json::parse(text, nullptr, false);
  if (json.is_discarded() || !json.is_object()) {
    return absl::InvalidArgumentError("agreement is not a JSON object");
  }
  if (!json.contains("panel") || !json["panel"].is_array()) {
    return absl::InvalidArgumentError("agreement lacks a 'panel' array");
  }
  if (!json.contains("seed_u") || !json["seed_u"].is_string()) {
    return absl::InvalidArgumentError(
        "agreement lacks 'seed_u' as a decimal string");
  }
  SyncAgreement agreement;
  for (const auto& id : json["panel"]) {
    if (!id.is_string()) {
      return absl::InvalidArgumentError("panel ids must be strings");
    }
    agreement.panel.push_back(id.get<std::string>());
  }
  const std::string seed = json["seed_u"].get<std::string>();
  if (seed.empty() || seed.find_first_not_of("0123456789") != seed.npos ||
      !absl::SimpleAtoi(seed, &agreement.seed_u)) {
    return absl::InvalidArgumentError(
        absl::StrCat("seed_u '", seed, "' is not an unsigned 64-bit integer"));
  }
  RETURN_IF_ERROR(agreement.Validate());
  return agreement;
}

absl::StatusOr<PermutationVector> PermutationVector::FromMapping(
    std::vector<size_t> mapping) {
  std::vector<bool> seen(mapping.size(), false);
  for (size_t v : mapping) {
    if (v >= mapping.size() || seen[v]) {
      return absl::InvalidArgumentError("mapping is not a permutation");
    }
    seen[v] = true;
  }
  return PermutationVector(std::move(mapping));
}

PermutationVector PermutationVector::Identity(size_t m) {
  std::vector<size_t> mapping(m);
  std::iota(mapping.begin(), mapping.end(), size_t{0});
  return PermutationVector(std::move(mapping));
}

PermutationVector PermutationVector::Inverse() const {
  std::vector<size_t> inverse(mapping_.size());
  for (size_t c = 0; c < mapping_.size(); ++c) inverse[mapping_[c]] = c;
  return PermutationVector(std::move(inverse));
}

PermutationVector DerivePermutation(uint64_t seed_u, size_t m) {
  PermutationVector q = PermutationVector::Identity(m);
  std::vector<size_t> mapping = q.mapping();
  ChaChaStream stream(seed_u, 0);
  for (size_t i = m; i-- > 1;) {
    const size_t j = static_cast<size_t>(stream.UniformBelow(i + 1));
    std::swap(mapping[i], mapping[j]);
  }
  return *PermutationVector::FromMapping(std::move(mapping));
}

absl::string_view PanelStrategyName(PanelStrategy strategy) {
  return strategy == PanelStrategy::kRandom ? "random" : "close-maf";
}

absl::StatusOr<PanelStrategy> ParsePanelStrategy(absl::string_view name) {
  if (name == "random") return PanelStrategy::kRandom;
  if (name == "close-maf") return PanelStrategy::kCloseMaf;
  return absl::InvalidArgumentError(
      absl::StrCat("unknown panel strategy '", name, "'"));
}

absl::StatusOr<std::vector<std::string>> SelectSnpPanel(
    const MafVector& maf, std::span<const std::string> snp_ids, size_t m,
    PanelStrategy strategy, uint64_t seed) {
  if (maf.size() != snp_ids.size()) {
    return absl::InvalidArgumentError("MAF vector and SNP ids differ in size");
  }
  if (m > snp_ids.size()) {
    return absl::InvalidArgumentError(absl::StrCat(
        "PanelTooLarge: m=", m, " but only ", snp_ids.size(), " SNPs"));
  }
  std::vector<size_t> order(snp_ids.size());
  std::iota(order.begin(), order.end(), size_t{0});
  std::vector<std::string> panel;
  panel.reserve(m);
  if (strategy == PanelStrategy::kRandom) {
    ChaChaStream stream(seed, Fnv1a64("panel"));
    for (size_t i = 0; i < m; ++i) {
      const size_t j =
          i + static_cast<size_t>(stream.UniformBelow(order.size() - i));
      std::swap(order[i], order[j]);
    }
    std::sort(order.begin(), order.begin() + m);
    for (size_t i = 0; i < m; ++i) panel.push_back(snp_ids[order[i]]);
    return panel;
  }
  if (m == 0) return panel;
  std::stable_sort(order.begin(), order.end(),
                   [&](size_t x, size_t y) { return maf[x] < maf[y]; });
  size_t best = 0;
  double best_spread = std::numeric_limits<double>::infinity();
  for (size_t start = 0; start + m <= order.size(); ++start) {
    const double spread = maf[order[start + m - 1]] - maf[order[start]];
    if (spread < best_spread) {
      best_spread = spread;
      best = start;
    }
  }
  for (size_t i = 0; i < m; ++i) panel.push_back(snp_ids[order[best + i]]);
  return panel;
}

absl::StatusOr<LdpParams> LdpParams::Create(double epsilon) {
  if (std::isnan(epsilon) || epsilon <= 0.0) {
    return absl::InvalidArgumentError(
        absl::StrCat("epsilon must be > 0 or +inf, got ", epsilon));
  }
  if (std::isinf(epsilon)) return NoNoise();
  // e^eps / (e^eps + 2), written to stay finite for large epsilon.
  const double keep = 1.0 / (1.0 + 2.0 * std::exp(-epsilon));
  return LdpParams(epsilon, keep);
}

LdpParams LdpParams::NoNoise() {
  return LdpParams(std::numeric_limits<double>::infinity(), 1.0);
}

GenotypeMatrix ApplyLdpVariant(const GenotypeMatrix& matrix,
                               const LdpParams& params, uint64_t seed) {
  GenotypeMatrix out = matrix;
  if (params.is_identity()) return out;
  const double keep = params.keep_prob();
  const double to_zero = keep + params.het_to_each_hom_prob();
  ChaChaStream stream(seed, Fnv1a64("ldp"));
  for (size_t r = 0; r < matrix.rows(); ++r) {
    stream.SeekWord(static_cast<uint64_t>(r) * matrix.cols());
    auto row = out.mutable_row(r);
    for (size_t c = 0; c < row.size(); ++c) {
      const double u = stream.NextDouble();
      if (u < keep) continue;
      if (row[c] != 1) {
        row[c] = 1;
      } else {
        row[c] = u < to_zero ? 0 : 2;
      }
    }
  }
  return out;
}

SyntheticSamples GenerateSyntheticSamples(size_t m, size_t n_prime,
                                          uint64_t seed) {
  SyntheticSamples samples;
  samples.rows = GenotypeMatrix(0, m);
  if (n_prime == 0) return samples;
  MafModel model = MafModel::Uniform(m, 0.05, 0.5, seed);
  samples.rows = *GenerateGenotypes(n_prime, model, DeriveSeed(seed, "rows"));
  for (size_t i = 0; i < n_prime; ++i) {
    samples.ids.push_back(absl::StrFormat("syn%06d", i + 1));
    samples.registry.Insert(samples.ids.back());
  }
  return samples;
}

std::string FormatMetadata(const Metadata& metadata) {
  std::vector<std::string> labels(metadata.m());
  for (size_t c = 0; c < labels.size(); ++c) labels[c] = absl::StrCat("c", c);
  auto dataset = GenotypeDataset::Create(metadata.row_ids, std::move(labels),
                                         metadata.matrix);
  return dataset.ok() ? FormatDataset(*dataset) : std::string();
}

absl::StatusOr<Metadata> ParseMetadata(absl::string_view text) {
  ASSIGN_OR_RETURN(GenotypeDataset dataset, ParseDataset(text));
  for (size_t c = 0; c < dataset.num_snps(); ++c) {
    if (dataset.snp_ids()[c] != absl::StrCat("c", c)) {
      return absl::InvalidArgumentError(absl::StrCat(
          "metadata column ", c, " is labelled '", dataset.snp_ids()[c],
          "', expected c", c));
    }
  }
  return Metadata{dataset.sample_ids(), dataset.matrix()};
}

MetadataSeeds MetadataSeeds::FromLocalSeed(uint64_t local_seed) {
  return {DeriveSeed(local_seed, "synthetic"), DeriveSeed(local_seed, "rows"),
          DeriveSeed(local_seed, "noise")};
}

absl::StatusOr<PreparedShare> PrepareMetadata(const GenotypeDataset& dataset,
                                              const SyncAgreement& agreement,
                                              size_t n_prime,
                                              const LdpParams& params,
                                              const MetadataSeeds& seeds,
                                              absl::string_view label) {
  RETURN_IF_ERROR(agreement.Validate());
  std::vector<size_t> columns;
  columns.reserve(agreement.m());
  for (const std::string& id : agreement.panel) {
    auto index = dataset.SnpIndex(id);
    if (!index.ok()) {
      return absl::InvalidArgumentError(absl::StrCat("MissingPanelSnp: ", id));
    }
    columns.push_back(*index);
  }
  GenotypeMatrix combined = dataset.matrix().SelectColumns(columns);
  std::vector<std::string> local_ids = dataset.sample_ids();

  SyntheticSamples synthetic =
      GenerateSyntheticSamples(agreement.m(), n_prime, seeds.synthetic);
  combined.AppendRows(synthetic.rows);
  local_ids.insert(local_ids.end(), synthetic.ids.begin(),
                   synthetic.ids.end());

  const PermutationVector q = DerivePermutation(agreement.seed_u, agreement.m());
  combined = combined.SelectColumns(q.mapping());

  std::vector<size_t> row_order(combined.rows());
  std::iota(row_order.begin(), row_order.end(), size_t{0});
  ChaChaStream row_stream(seeds.rows, Fnv1a64("row-shuffle"));
  for (size_t i = row_order.size(); i-- > 1;) {
    std::swap(row_order[i], row_order[row_stream.UniformBelow(i + 1)]);
  }
  combined = combined.SelectRows(row_order);

  PreparedShare share;
  share.metadata.matrix = ApplyLdpVariant(combined, params, seeds.noise);
  share.metadata.row_ids.reserve(row_order.size());
  for (size_t i = 0; i < row_order.size(); ++i) {
    std::string pseudonym = absl::StrFormat("%s-%06d", label, i + 1);
    const std::string& local = local_ids[row_order[i]];
    if (row_order[i] >= dataset.num_samples()) {
      share.registry.Insert(pseudonym);
    } else {
      share.pseudonym_to_sample.emplace(pseudonym, local);
    }
    share.metadata.row_ids.push_back(std::move(pseudonym));
  }
  return share;
}

std::vector<KinshipEntry> FilterResults(std::span<const KinshipEntry> entries,
                                        const SyntheticRegistry& registry) {
  std::vector<KinshipEntry> kept;
  kept.reserve(entries.size());
  for (const KinshipEntry& entry : entries) {
    if (registry.Contains(entry.a) || registry.Contains(entry.b)) continue;
    kept.push_back(entry);
  }
  return kept;
}

std::vector<KinshipEntry> RelabelEntries(
    std::span<const KinshipEntry> entries,
    const absl::flat_hash_map<std::string, std::string>& pseudonym_to_sample) {
  std::vector<KinshipEntry> out(entries.begin(), entries.end());
  for (KinshipEntry& entry : out) {
    if (auto it = pseudonym_to_sample.find(entry.a);
        it != pseudonym_to_sample.end()) {
      entry.a = it->second;
    }
    if (auto it = pseudonym_to_sample.find(entry.b);
        it != pseudonym_to_sample.end()) {
      entry.b = it->second;
    }
  }
  return out;
}

}  // namespace fedkin
