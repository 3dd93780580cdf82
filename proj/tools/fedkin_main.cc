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

// Command-line driver: data generation, the protocol steps of each party,
// the server's attacks, and the experiment sweeps.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <iostream>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "absl/container/flat_hash_map.h"
#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "absl/strings/match.h"
#include "absl/strings/numbers.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_split.h"
#include "absl/strings/strip.h"
#include "CLI11.hpp"
#include "fedkin/adversary.h"
#include "fedkin/dataset_io.h"
#include "fedkin/experiment.h"
#include "fedkin/kinship.h"
#include "fedkin/population_stats.h"
#include "fedkin/random.h"
#include "fedkin/researcher.h"
#include "fedkin/status_macros.h"

namespace fedkin {
namespace {

constexpr int kExitConfig = 2;
constexpr int kExitData = 3;

struct CommonFlags {
  std::string config;
  std::optional<uint64_t> seed;
  std::string out;
};

bool IsConfigError(const absl::Status& status) {
  return absl::StartsWith(status.message(), "ConfigError:");
}

// Config errors keep their status; anything else read from a file or from
// flags is data.
absl::Status AsConfigError(const absl::Status& status) {
  if (status.ok() || IsConfigError(status)) return status;
  return absl::InvalidArgumentError(
      absl::StrCat("ConfigError: ", status.message()));
}

absl::StatusOr<ExperimentConfig> LoadConfig(const CommonFlags& flags,
                                            ExperimentKind preset) {
  ExperimentConfig config = ExperimentConfig::Preset(preset);
  if (!flags.config.empty()) {
    auto text = ReadTextFile(flags.config);
    if (!text.ok()) return AsConfigError(text.status());
    ASSIGN_OR_RETURN(config, ParseExperimentConfig(*text, config));
  }
  if (flags.seed) config.seed = *flags.seed;
  if (!flags.out.empty()) config.out = flags.out;
  RETURN_IF_ERROR(AsConfigError(config.Validate()));
  return config;
}

absl::Status EnsureDirectory(const std::string& dir) {
  std::error_code error;
  std::filesystem::create_directories(dir, error);
  if (error) {
    return absl::InvalidArgumentError(
        absl::StrCat("cannot create ", dir, ": ", error.message()));
  }
  return absl::OkStatus();
}

std::string Join(const std::string& dir, const std::string& name) {
  return (std::filesystem::path(dir) / name).string();
}

double ParseEpsilonFlag(const std::string& text) {
  if (text == "inf" || text == "infinity") {
    return std::numeric_limits<double>::infinity();
  }
  double value = std::numeric_limits<double>::quiet_NaN();
  if (!absl::SimpleAtod(text, &value)) {
    return std::numeric_limits<double>::quiet_NaN();
  }
  return value;
}

absl::StatusOr<Metadata> ReadMetadataFile(const std::string& path) {
  ASSIGN_OR_RETURN(std::string text, ReadTextFile(path));
  return ParseMetadata(text);
}

// Researcher-private side files of prepare-metadata.
std::string FormatPseudonyms(const PreparedShare& share) {
  std::vector<std::pair<std::string, std::string>> rows(
      share.pseudonym_to_sample.begin(), share.pseudonym_to_sample.end());
  std::sort(rows.begin(), rows.end());
  std::string out = "pseudonym,sample_id\n";
  for (const auto& [pseudonym, sample] : rows) {
    absl::StrAppend(&out, pseudonym, ",", sample, "\n");
  }
  return out;
}

std::string FormatRegistry(const SyntheticRegistry& registry) {
  std::vector<std::string> ids(registry.ids().begin(), registry.ids().end());
  std::sort(ids.begin(), ids.end());
  std::string out;
  for (const std::string& id : ids) absl::StrAppend(&out, id, "\n");
  return out;
}

std::vector<std::string> NonEmptyLines(absl::string_view text) {
  std::vector<std::string> lines;
  for (absl::string_view line : absl::StrSplit(text, '\n')) {
    line = absl::StripAsciiWhitespace(line);
    if (!line.empty()) lines.emplace_back(line);
  }
  return lines;
}

absl::StatusOr<absl::flat_hash_map<std::string, std::string>> ReadPseudonyms(
    const std::string& path) {
  ASSIGN_OR_RETURN(std::string text, ReadTextFile(path));
  absl::flat_hash_map<std::string, std::string> map;
  std::vector<std::string> lines = NonEmptyLines(text);
  for (size_t i = 1; i < lines.size(); ++i) {
    std::vector<std::string> fields = absl::StrSplit(lines[i], ',');
    if (fields.size() != 2) {
      return absl::InvalidArgumentError(
          absl::StrCat(path, ": malformed line ", i + 1));
    }
    map[fields[0]] = fields[1];
  }
  return map;
}

absl::StatusOr<MatchAssignment> ReadAssignment(const std::string& path) {
  ASSIGN_OR_RETURN(std::string text, ReadTextFile(path));
  std::vector<std::string> lines = NonEmptyLines(text);
  MatchAssignment assignment;
  for (size_t i = 1; i < lines.size(); ++i) {
    std::vector<std::string> fields = absl::StrSplit(lines[i], ',');
    if (fields.size() != 2 || fields[0] != absl::StrCat("c", i - 1)) {
      return absl::InvalidArgumentError(
          absl::StrCat(path, ": expected column c", i - 1, " on line ", i + 1));
    }
    assignment.column_ids.push_back(fields[1]);
  }
  return assignment;
}

absl::Status RunGenerate(const CommonFlags& flags) {
  absl::StatusOr<ExperimentConfig> config =
      LoadConfig(flags, ExperimentKind::kKinship);
  RETURN_IF_ERROR(config.status());
  ASSIGN_OR_RETURN(Cohort cohort,
                   GenerateCohort(config->population,
                                  DeriveSeed(config->seed, "cohort")));
  SyncAgreement agreement;
  ASSIGN_OR_RETURN(agreement.panel,
                   SelectSnpPanel(ComputeMaf(cohort.dataset_a),
                                  cohort.dataset_a.snp_ids(),
                                  config->protocol.m,
                                  config->protocol.panel_strategy,
                                  DeriveSeed(config->seed, "panel")));
  agreement.seed_u = config->protocol.seed_u;
  RETURN_IF_ERROR(EnsureDirectory(config->out));
  RETURN_IF_ERROR(WriteTextFile(Join(config->out, "dataset_a.tsv"),
                                FormatDataset(cohort.dataset_a)));
  RETURN_IF_ERROR(WriteTextFile(Join(config->out, "dataset_b.tsv"),
                                FormatDataset(cohort.dataset_b)));
  RETURN_IF_ERROR(WriteTextFile(Join(config->out, "truth.csv"),
                                FormatTruthCsv(cohort.truth)));
  RETURN_IF_ERROR(WriteTextFile(Join(config->out, "agreement.json"),
                                FormatAgreementJson(agreement)));
  std::cout << "wrote " << cohort.dataset_a.num_samples() << " + "
            << cohort.dataset_b.num_samples() << " samples, "
            << cohort.truth.pairs().size() << " related pairs to "
            << config->out << "\n";
  return absl::OkStatus();
}

struct PrepareFlags {
  std::string dataset;
  std::string agreement;
  size_t n_prime = 0;
  std::string epsilon = "inf";
  std::string label = "r";
};

absl::Status RunPrepare(const CommonFlags& common, const PrepareFlags& flags) {
  const double epsilon = ParseEpsilonFlag(flags.epsilon);
  absl::StatusOr<LdpParams> params = LdpParams::Create(epsilon);
  if (!params.ok()) return AsConfigError(params.status());
  ASSIGN_OR_RETURN(GenotypeDataset dataset, ReadDatasetFile(flags.dataset));
  ASSIGN_OR_RETURN(std::string agreement_text, ReadTextFile(flags.agreement));
  ASSIGN_OR_RETURN(SyncAgreement agreement,
                   ParseAgreementJson(agreement_text));
  ASSIGN_OR_RETURN(
      PreparedShare share,
      PrepareMetadata(dataset, agreement, flags.n_prime, *params,
                      MetadataSeeds::FromLocalSeed(common.seed.value_or(1)),
                      flags.label));
  const std::string out = common.out.empty() ? "." : common.out;
  RETURN_IF_ERROR(EnsureDirectory(out));
  RETURN_IF_ERROR(WriteTextFile(Join(out, flags.label + ".metadata.tsv"),
                                FormatMetadata(share.metadata)));
  RETURN_IF_ERROR(WriteTextFile(Join(out, flags.label + ".pseudonyms.csv"),
                                FormatPseudonyms(share)));
  RETURN_IF_ERROR(WriteTextFile(Join(out, flags.label + ".synthetic.txt"),
                                FormatRegistry(share.registry)));
  std::cout << "wrote " << share.metadata.rows() << " rows x "
            << share.metadata.m() << " columns to " << out << "\n";
  return absl::OkStatus();
}

struct KinshipFlags {
  std::vector<std::string> metadata;
  std::vector<std::string> synthetic;
  std::vector<std::string> pseudonyms;
  bool all_pairs = false;
};

absl::Status RunComputeKinship(const CommonFlags& common,
                               const KinshipFlags& flags) {
  std::vector<Metadata> shares;
  for (const std::string& path : flags.metadata) {
    ASSIGN_OR_RETURN(Metadata metadata, ReadMetadataFile(path));
    shares.push_back(std::move(metadata));
  }
  PairwiseOptions options;
  options.scope = flags.all_pairs ? PairScope::kAllPairs : PairScope::kCrossOnly;
  ASSIGN_OR_RETURN(KinshipReport report, PairwiseKinship(shares, options));
  for (const std::string& path : flags.synthetic) {
    ASSIGN_OR_RETURN(std::string text, ReadTextFile(path));
    SyntheticRegistry registry;
    for (std::string& id : NonEmptyLines(text)) registry.Insert(std::move(id));
    report.entries = FilterResults(report.entries, registry);
  }
  for (const std::string& path : flags.pseudonyms) {
    ASSIGN_OR_RETURN(auto map, ReadPseudonyms(path));
    report.entries = RelabelEntries(report.entries, map);
  }
  const std::string csv = FormatReportCsv(report);
  if (common.out.empty()) {
    std::cout << csv;
    return absl::OkStatus();
  }
  return WriteTextFile(common.out, csv);
}

struct UnshuffleFlags {
  std::string metadata;
  std::string reference;
  std::string candidates;
  std::string agreement;
  double delta_corr = 0.01;
};

absl::Status RunAttackUnshuffle(const CommonFlags& common,
                                const UnshuffleFlags& flags) {
  ASSIGN_OR_RETURN(Metadata metadata, ReadMetadataFile(flags.metadata));
  ASSIGN_OR_RETURN(GenotypeDataset reference,
                   ReadDatasetFile(flags.reference));
  std::vector<std::string> candidates = reference.snp_ids();
  if (!flags.candidates.empty()) {
    ASSIGN_OR_RETURN(std::string text, ReadTextFile(flags.candidates));
    candidates = NonEmptyLines(text);
  }
  ASSIGN_OR_RETURN(AdversaryKnowledge knowledge,
                   AdversaryKnowledge::FromReference(reference, candidates));
  UnshuffleOptions options;
  options.delta_corr = flags.delta_corr;
  const uint64_t seed = common.seed.value_or(1);
  ASSIGN_OR_RETURN(MatchAssignment assignment,
                   UnshuffleGreedy(metadata, knowledge, seed, options));
  std::string csv = "column,snp_id\n";
  for (size_t c = 0; c < assignment.column_ids.size(); ++c) {
    absl::StrAppend(&csv, "c", c, ",", assignment.column_ids[c], "\n");
  }
  if (common.out.empty()) {
    std::cout << csv;
  } else {
    RETURN_IF_ERROR(WriteTextFile(common.out, csv));
  }
  if (!flags.agreement.empty()) {
    ASSIGN_OR_RETURN(std::string text, ReadTextFile(flags.agreement));
    ASSIGN_OR_RETURN(SyncAgreement agreement, ParseAgreementJson(text));
    const PermutationVector q =
        DerivePermutation(agreement.seed_u, agreement.m());
    std::cerr << "unshuffling_accuracy "
              << UnshufflingAccuracy(assignment, q, agreement.panel) << "\n";
  }
  return absl::OkStatus();
}

struct MembershipFlags {
  std::string metadata;
  std::string assignment;
  std::string members;
  std::string nonmembers;
  double fpr = 0.05;
};

absl::Status RunAttackMembership(const CommonFlags& common,
                                 const MembershipFlags& flags) {
  ASSIGN_OR_RETURN(Metadata metadata, ReadMetadataFile(flags.metadata));
  ASSIGN_OR_RETURN(MatchAssignment assignment,
                   ReadAssignment(flags.assignment));
  ASSIGN_OR_RETURN(GenotypeDataset members, ReadDatasetFile(flags.members));
  ASSIGN_OR_RETURN(GenotypeDataset nonmembers,
                   ReadDatasetFile(flags.nonmembers));
  ASSIGN_OR_RETURN(GenotypeMatrix in, AlignVictims(members, assignment));
  ASSIGN_OR_RETURN(GenotypeMatrix out, AlignVictims(nonmembers, assignment));
  PowerConfig config;
  config.set_a_size = nonmembers.num_samples();
  config.set_b_size = members.num_samples();
  config.fpr_target = flags.fpr;
  ASSIGN_OR_RETURN(PowerResult power,
                   MembershipPowerHamming(metadata.matrix, in, out, config));
  const std::string line =
      absl::StrCat("{\"gamma\":", power.threshold, ",\"power\":", power.power,
                   ",\"achieved_fpr\":", power.achieved_fpr, "}\n");
  if (common.out.empty()) {
    std::cout << line;
    return absl::OkStatus();
  }
  return WriteTextFile(common.out, line);
}

absl::Status RunExperiment(const CommonFlags& flags, ExperimentKind kind) {
  ASSIGN_OR_RETURN(ExperimentConfig config, LoadConfig(flags, kind));
  std::string ndjson;
  std::string csv;
  switch (kind) {
    case ExperimentKind::kKinship: {
      ASSIGN_OR_RETURN(auto records, RunKinshipExperiment(config));
      ndjson = ToNdjson(records);
      csv = SummaryCsv(records);
      break;
    }
    case ExperimentKind::kUnshuffle: {
      ASSIGN_OR_RETURN(auto records, RunUnshuffleExperiment(config));
      ndjson = ToNdjson(records);
      csv = SummaryCsv(records);
      break;
    }
    case ExperimentKind::kMembership: {
      ASSIGN_OR_RETURN(auto records, RunMembershipExperiment(config));
      ndjson = ToNdjson(records);
      csv = SummaryCsv(records);
      break;
    }
  }
  RETURN_IF_ERROR(EnsureDirectory(config.out));
  const std::string name(ExperimentKindName(kind));
  RETURN_IF_ERROR(WriteTextFile(Join(config.out, name + ".ndjson"), ndjson));
  RETURN_IF_ERROR(WriteTextFile(Join(config.out, name + ".csv"), csv));
  std::cout << csv;
  return absl::OkStatus();
}

void AddCommon(CLI::App* app, CommonFlags& flags, bool with_config) {
  if (with_config) {
    app->add_option("--config", flags.config, "TOML experiment config");
  }
  app->add_option("--seed", flags.seed, "Root seed");
  app->add_option("--out", flags.out, "Output path");
}

int Main(int argc, char** argv) {
  CLI::App app{"Kinship across federated genotype datasets: protocol, "
               "server, attacks and experiments"};
  app.require_subcommand(1);
  CommonFlags common;
  absl::Status status;

  CLI::App* generate =
      app.add_subcommand("generate", "Two researcher datasets and truth");
  AddCommon(generate, common, true);
  generate->callback([&] { status = RunGenerate(common); });

  PrepareFlags prepare_flags;
  CLI::App* prepare = app.add_subcommand(
      "prepare-metadata", "Shuffle, augment and noise one researcher's data");
  AddCommon(prepare, common, false);
  prepare->add_option("--dataset", prepare_flags.dataset)->required();
  prepare->add_option("--agreement", prepare_flags.agreement)->required();
  prepare->add_option("--n-prime", prepare_flags.n_prime);
  prepare->add_option("--epsilon", prepare_flags.epsilon,
                      "Privacy budget or inf");
  prepare->add_option("--label", prepare_flags.label, "Pseudonym prefix");
  prepare->callback([&] { status = RunPrepare(common, prepare_flags); });

  KinshipFlags kinship_flags;
  CLI::App* kinship = app.add_subcommand(
      "compute-kinship", "Pairwise KING coefficients over metadata files");
  AddCommon(kinship, common, false);
  kinship->add_option("--metadata", kinship_flags.metadata)->required();
  kinship->add_option("--synthetic", kinship_flags.synthetic,
                      "Synthetic id lists to drop from the report");
  kinship->add_option("--pseudonyms", kinship_flags.pseudonyms,
                      "Pseudonym maps used to restore sample ids");
  kinship->add_flag("--all-pairs", kinship_flags.all_pairs,
                    "Include pairs within one metadata file");
  kinship->callback(
      [&] { status = RunComputeKinship(common, kinship_flags); });

  CLI::App* attack = app.add_subcommand("attack", "Server-side attacks");
  attack->require_subcommand(1);
  UnshuffleFlags unshuffle_flags;
  CLI::App* unshuffle =
      attack->add_subcommand("unshuffle", "Greedy column matching");
  AddCommon(unshuffle, common, false);
  unshuffle->add_option("--metadata", unshuffle_flags.metadata)->required();
  unshuffle->add_option("--reference", unshuffle_flags.reference,
                        "Reference genotypes over the candidate SNPs")
      ->required();
  unshuffle->add_option("--candidates", unshuffle_flags.candidates,
                        "Candidate SNP ids, one per line");
  unshuffle->add_option("--agreement", unshuffle_flags.agreement,
                        "Score the result against the true panel");
  unshuffle->add_option("--delta-corr", unshuffle_flags.delta_corr);
  unshuffle->callback(
      [&] { status = RunAttackUnshuffle(common, unshuffle_flags); });

  MembershipFlags membership_flags;
  CLI::App* membership = attack->add_subcommand(
      "membership", "Hamming-distance membership test");
  AddCommon(membership, common, false);
  membership->add_option("--metadata", membership_flags.metadata)->required();
  membership->add_option("--assignment", membership_flags.assignment,
                         "Output of attack unshuffle")
      ->required();
  membership->add_option("--members", membership_flags.members)->required();
  membership->add_option("--nonmembers", membership_flags.nonmembers)
      ->required();
  membership->add_option("--fpr", membership_flags.fpr);
  membership->callback(
      [&] { status = RunAttackMembership(common, membership_flags); });

  CLI::App* exp = app.add_subcommand("exp", "Experiment sweeps");
  exp->require_subcommand(1);
  for (ExperimentKind kind :
       {ExperimentKind::kKinship, ExperimentKind::kUnshuffle,
        ExperimentKind::kMembership}) {
    CLI::App* sub = exp->add_subcommand(std::string(ExperimentKindName(kind)));
    AddCommon(sub, common, true);
    sub->callback([&, kind] { status = RunExperiment(common, kind); });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& error) {
    const int code = app.exit(error);
    return code == 0 ? 0 : kExitConfig;
  }
  if (status.ok()) return 0;
  std::cerr << "error: " << status.message() << "\n";
  return IsConfigError(status) ? kExitConfig : kExitData;
}

}  // namespace
}  // namespace fedkin

int main(int argc, char** argv) { return fedkin::Main(argc, argv); }
