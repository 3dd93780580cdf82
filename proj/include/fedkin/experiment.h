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

#ifndef FEDKIN_EXPERIMENT_H_
#define FEDKIN_EXPERIMENT_H_

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "absl/strings/string_view.h"
#include "fedkin/adversary.h"
#include "fedkin/genotype.h"
#include "fedkin/population.h"
#include "fedkin/researcher.h"

namespace fedkin {

enum class ExperimentKind { kKinship, kUnshuffle, kMembership };

absl::string_view ExperimentKindName(ExperimentKind kind);
absl::StatusOr<ExperimentKind> ParseExperimentKind(absl::string_view name);

struct PopulationConfig {
  // Unrelated founders; relatives are generated on top of them.
  size_t n = 100;
  size_t snp_count = 28000;
  double maf_min = 0.05;
  double maf_max = 0.5;
  size_t first_degree = 20;
  size_t second_degree = 10;
  // Independent sample used as the population reference (LRT pop MAFs).
  size_t reference_size = 1000;
};

struct ProtocolConfig {
  size_t m = 500;
  PanelStrategy panel_strategy = PanelStrategy::kRandom;
  double epsilon = 5.0;
  size_t n_prime = 0;
  uint64_t seed_u = 20240101;
};

struct AdversaryConfig {
  // Candidate ids known to the server; 0 means exactly the panel.
  size_t i_prime_size = 0;
  double delta_corr = 0.01;
  double stall_distance = 0.5;
  PowerConfig power;
  LrtEncoding lrt_encoding = LrtEncoding::kCarrier;
};

// Axes swept by the exp commands. Empty axes fall back to the single value
// of the protocol section.
struct SweepConfig {
  std::vector<size_t> m;
  std::vector<double> epsilon;
  std::vector<size_t> n_prime;
  std::vector<PanelStrategy> panel_strategy;
  // Extra candidate ids beyond the panel: |I'| = m + extra.
  std::vector<size_t> i_prime_extra;
  std::vector<double> level;
};

struct ExperimentConfig {
  PopulationConfig population;
  ProtocolConfig protocol;
  AdversaryConfig adversary;
  SweepConfig sweep;
  size_t trials = 10;
  uint64_t seed = 1;
  std::string out = "out";

  // Default preset of each experiment: the 130-sample pedigree for kinship,
  // n = 500 unrelated samples with m = 250 for the attacks.
  static ExperimentConfig Preset(ExperimentKind kind);

  size_t EffectiveIPrime() const;
  absl::Status Validate() const;
};

// Overlays the keys present in `toml_text` on `base`. Unknown keys are
// rejected so that typos do not silently fall back to defaults.
absl::StatusOr<ExperimentConfig> ParseExperimentConfig(
    absl::string_view toml_text, ExperimentConfig base);

// Two researcher datasets over the same SNPs. Founders alternate between
// them; every relative descends from a founder of its own and lands on the
// other side, so each planted pair straddles the partition.
struct Cohort {
  MafModel model;
  GenotypeDataset dataset_a;
  GenotypeDataset dataset_b;
  PedigreeTruth truth;
};

absl::StatusOr<Cohort> GenerateCohort(const PopulationConfig& population,
                                      uint64_t seed);

struct KinshipRecord {
  size_t trial = 0;
  uint64_t seed = 0;
  size_t m = 0;
  double epsilon = 0.0;
  double accuracy = 0.0;
  double precision = 0.0;
  double recall = 0.0;
  double all_pairs_accuracy = 0.0;
  double wall_ms = 0.0;
};

struct UnshuffleRecord {
  size_t trial = 0;
  uint64_t seed = 0;
  size_t m = 0;
  size_t n_prime = 0;
  double epsilon = 0.0;
  PanelStrategy panel_strategy = PanelStrategy::kRandom;
  size_t i_prime_size = 0;
  double unshuffling_accuracy = 0.0;
  double wall_ms = 0.0;
};

struct MembershipRecord {
  size_t trial = 0;
  uint64_t seed = 0;
  double level = 0.0;
  double epsilon = 0.0;
  double gamma = 0.0;
  double power = 0.0;
  double achieved_fpr = 0.0;
  double lrt_power = 0.0;
  double lrt_fpr = 0.0;
  double wall_ms = 0.0;
};

// Records come back sorted by their sweep coordinates, then trial.
absl::StatusOr<std::vector<KinshipRecord>> RunKinshipExperiment(
    const ExperimentConfig& config);
absl::StatusOr<std::vector<UnshuffleRecord>> RunUnshuffleExperiment(
    const ExperimentConfig& config);
absl::StatusOr<std::vector<MembershipRecord>> RunMembershipExperiment(
    const ExperimentConfig& config);

// One JSON object per line, keys in a fixed order.
std::string ToNdjson(const std::vector<KinshipRecord>& records);
std::string ToNdjson(const std::vector<UnshuffleRecord>& records);
std::string ToNdjson(const std::vector<MembershipRecord>& records);

// Trial means per sweep point.
std::string SummaryCsv(const std::vector<KinshipRecord>& records);
std::string SummaryCsv(const std::vector<UnshuffleRecord>& records);
std::string SummaryCsv(const std::vector<MembershipRecord>& records);

// The single-trial building blocks of the sweeps, exposed for the CLI and
// the acceptance checks.
struct AttackSetup {
  MafModel model;
  GenotypeDataset dataset;
  SyncAgreement agreement;
  PreparedShare share;
  AdversaryKnowledge knowledge;
};

// n rows from the population model, a panel chosen by `strategy`, the
// researcher's metadata, and exact knowledge over the panel plus
// `i_prime_extra` further SNPs drawn at random from the rest of the dataset.
// Candidate ids are listed in a seeded random order.
absl::StatusOr<AttackSetup> BuildAttackSetup(const ExperimentConfig& config,
                                             size_t m, size_t n_prime,
                                             double epsilon,
                                             PanelStrategy strategy,
                                             size_t i_prime_extra,
                                             uint64_t trial_seed);

struct MembershipSets {
  GenotypeDataset members;     // B: real rows of the dataset, pre-noise
  GenotypeDataset nonmembers;  // A: fresh draws from the same population
  MafVector pop_maf;           // reference-sample MAFs over all SNPs
};

absl::StatusOr<MembershipSets> DrawMembershipSets(
    const ExperimentConfig& config, const GenotypeDataset& dataset,
    const MafModel& model, uint64_t trial_seed);

}  // namespace fedkin

#endif  // FEDKIN_EXPERIMENT_H_
