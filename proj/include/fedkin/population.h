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

#ifndef FEDKIN_POPULATION_H_
#define FEDKIN_POPULATION_H_

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "absl/container/flat_hash_map.h"
#include "absl/container/flat_hash_set.h"
#include "absl/status/statusor.h"
#include "fedkin/degree.h"
#include "fedkin/genotype.h"

namespace fedkin {

// Per-SNP minor allele frequencies of the population being simulated.
struct MafModel {
  std::vector<double> frequencies;

  size_t size() const { return frequencies.size(); }

  // Frequencies drawn independently and uniformly from [lo, hi].
  static MafModel Uniform(size_t snp_count, double lo, double hi,
                          uint64_t seed);
};

// Hardy-Weinberg draw for frequency f given a uniform u in [0, 1):
// 0 with probability (1-f)^2, 1 with 2f(1-f), 2 with f^2.
Genotype SampleHardyWeinberg(double f, double u);

// n unrelated individuals, each genotype drawn under Hardy-Weinberg from the
// model. Row i is driven by its own stream, so the result does not depend on
// generation order. Sample ids are `sample_prefix` + zero-padded index; SNP
// ids are "snp" + zero-padded index. BadFrequency when a frequency lies
// outside [0, 0.5].
absl::StatusOr<GenotypeDataset> GeneratePopulation(
    size_t n, const MafModel& model, uint64_t seed,
    const std::string& sample_prefix = "s");

// Raw matrix variant with no ids; same sampling as GeneratePopulation.
absl::StatusOr<GenotypeMatrix> GenerateGenotypes(size_t n,
                                                 const MafModel& model,
                                                 uint64_t seed);

struct TruthPair {
  std::string a;
  std::string b;
  KinshipDegree degree = KinshipDegree::kUnrelated;
};

// Ground truth for scoring: the complete sample universe plus every planted
// relationship. Pairs are unordered; any pair not listed is unrelated.
class PedigreeTruth {
 public:
  PedigreeTruth() = default;

  void AddSample(const std::string& id);
  // Both ids must already be registered samples.
  absl::Status AddPair(const std::string& a, const std::string& b,
                       KinshipDegree degree);

  bool HasSample(const std::string& id) const { return samples_.contains(id); }
  KinshipDegree DegreeOf(const std::string& a, const std::string& b) const;

  const std::vector<TruthPair>& pairs() const { return pairs_; }
  size_t num_samples() const { return samples_.size(); }

 private:
  static std::pair<std::string, std::string> Key(const std::string& a,
                                                 const std::string& b);

  absl::flat_hash_set<std::string> samples_;
  std::vector<TruthPair> pairs_;
  absl::flat_hash_map<std::pair<std::string, std::string>, KinshipDegree>
      index_;
};

struct GeneratedRelative {
  std::vector<Genotype> row;
  std::vector<TruthPair> truth;
};

// Mendelian relative of existing samples. Each parent transmits its minor
// allele with probability genotype / 2.
//   degree 1 with one id: child of that sample and a fresh Hardy-Weinberg
//     mate; with two ids: child of both named samples.
//   degree 2 with one id: grandchild through an unobserved child of the
//     named sample; both generations take fresh mates.
// UnknownParent when an id is not in the dataset.
absl::StatusOr<GeneratedRelative> GenerateRelative(
    const GenotypeDataset& dataset, std::span<const std::string> parent_ids,
    int degree, const MafModel& model, uint64_t seed,
    const std::string& relative_id);

// One Mendelian transmission step from two parental rows.
std::vector<Genotype> MendelianChild(std::span<const Genotype> parent_a,
                                     std::span<const Genotype> parent_b,
                                     uint64_t seed);

}  // namespace fedkin

#endif  // FEDKIN_POPULATION_H_
