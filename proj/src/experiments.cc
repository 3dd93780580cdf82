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

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "absl/container/flat_hash_map.h"
#include "absl/container/flat_hash_set.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_format.h"
#include "fedkin/experiment.h"
#include "fedkin/kinship.h"
#include "fedkin/parallel.h"
#include "fedkin/population_stats.h"
#include "fedkin/random.h"
#include "fedkin/status_macros.h"
#include "json.hpp"

namespace fedkin {
namespace {

using Clock = std::chrono::steady_clock;

double MillisSince(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start)
      .count();
}

uint64_t TrialSeed(const ExperimentConfig& config, size_t trial) {
  return DeriveSeed(config.seed, "trial", trial);
}

template <typename T>
std::vector<T> AxisOr(const std::vector<T>& axis, T fallback) {
  return axis.empty() ? std::vector<T>{fallback} : axis;
}

MafModel ModelFor(const PopulationConfig& population, uint64_t seed) {
  return MafModel::Uniform(population.snp_count, population.maf_min,
                           population.maf_max, DeriveSeed(seed, "maf"));
}

// First `count` entries of a seeded Fisher-Yates shuffle of `items`.
template <typename T>
std::vector<T> SampleWithoutReplacement(std::vector<T> items, size_t count,
                                        uint64_t seed) {
  ChaChaStream stream(seed, 0);
  count = std::min(count, items.size());
  for (size_t i = 0; i < count; ++i) {
    std::swap(items[i], items[i + stream.UniformBelow(items.size() - i)]);
  }
  items.resize(count);
  return items;
}

template <typename T>
void ShuffleInPlace(std::vector<T>& items, uint64_t seed) {
  ChaChaStream stream(seed, 0);
  for (size_t i = items.size(); i-- > 1;) {
    std::swap(items[i], items[stream.UniformBelow(i + 1)]);
  }
}

struct TrialPopulation {
  MafModel model;
  GenotypeDataset dataset;
  MafVector maf;
};

absl::StatusOr<TrialPopulation> MakeTrialPopulation(
    const ExperimentConfig& config, uint64_t trial_seed) {
  MafModel model = ModelFor(config.population, trial_seed);
  ASSIGN_OR_RETURN(GenotypeDataset dataset,
                   GeneratePopulation(config.population.n, model,
                                      DeriveSeed(trial_seed, "population")));
  MafVector maf = ComputeMaf(dataset);
  return TrialPopulation{std::move(model), std::move(dataset), std::move(maf)};
}

absl::StatusOr<SyncAgreement> MakeAgreement(const ExperimentConfig& config,
                                            const GenotypeDataset& dataset,
                                            const MafVector& maf, size_t m,
                                            PanelStrategy strategy,
                                            uint64_t trial_seed) {
  SyncAgreement agreement;
  ASSIGN_OR_RETURN(agreement.panel,
                   SelectSnpPanel(maf, dataset.snp_ids(), m, strategy,
                                  DeriveSeed(trial_seed, "panel", m)));
  agreement.seed_u = DeriveSeed(config.protocol.seed_u, "trial", trial_seed);
  RETURN_IF_ERROR(agreement.Validate());
  return agreement;
}

absl::StatusOr<std::vector<std::string>> CandidateIds(
    const GenotypeDataset& dataset, const std::vector<std::string>& panel,
    size_t extra, uint64_t trial_seed) {
  const absl::flat_hash_set<std::string> in_panel(panel.begin(), panel.end());
  std::vector<std::string> rest;
  for (const std::string& id : dataset.snp_ids()) {
    if (!in_panel.contains(id)) rest.push_back(id);
  }
  if (extra > rest.size()) {
    return absl::InvalidArgumentError(absl::StrCat(
        "ConfigError: ", extra, " extra candidates but only ", rest.size(),
        " SNPs lie outside the panel"));
  }
  std::vector<std::string> candidates = panel;
  for (std::string& id : SampleWithoutReplacement(
           std::move(rest), extra, DeriveSeed(trial_seed, "extra", extra))) {
    candidates.push_back(std::move(id));
  }
  ShuffleInPlace(candidates, DeriveSeed(trial_seed, "candidates"));
  return candidates;
}

absl::StatusOr<PreparedShare> MakeShare(const GenotypeDataset& dataset,
                                        const SyncAgreement& agreement,
                                        size_t n_prime, double epsilon,
                                        uint64_t local_seed,
                                        absl::string_view label) {
  ASSIGN_OR_RETURN(LdpParams params, LdpParams::Create(epsilon));
  return PrepareMetadata(dataset, agreement, n_prime, params,
                         MetadataSeeds::FromLocalSeed(local_seed), label);
}

absl::StatusOr<std::vector<size_t>> ColumnsOf(
    const GenotypeDataset& dataset, const std::vector<std::string>& ids) {
  std::vector<size_t> columns;
  columns.reserve(ids.size());
  for (const std::string& id : ids) {
    ASSIGN_OR_RETURN(size_t column, dataset.SnpIndex(id));
    columns.push_back(column);
  }
  return columns;
}

nlohmann::ordered_json EpsilonJson(double epsilon) {
  if (std::isinf(epsilon)) return "inf";
  return epsilon;
}

std::string EpsilonText(double epsilon) {
  if (std::isinf(epsilon)) return "inf";
  return absl::StrFormat("%g", epsilon);
}

std::string Decimal(double value) {
  if (std::isnan(value)) return "nan";
  return absl::StrFormat("%.6f", value);
}

// Mean over the finite values; NaN when none is finite.
double MeanOf(const std::vector<double>& values) {
  double sum = 0.0;
  size_t count = 0;
  for (double v : values) {
    if (std::isnan(v)) continue;
    sum += v;
    ++count;
  }
  return count == 0 ? std::numeric_limits<double>::quiet_NaN()
                    : sum / static_cast<double>(count);
}

double SampleSd(const std::vector<double>& values) {
  if (values.size() < 2) return 0.0;
  const double mean = MeanOf(values);
  double squares = 0.0;
  for (double v : values) squares += (v - mean) * (v - mean);
  return std::sqrt(squares / static_cast<double>(values.size() - 1));
}

template <typename Record>
absl::StatusOr<std::vector<Record>> RunTrials(
    const ExperimentConfig& config,
    absl::StatusOr<std::vector<Record>> (*trial_fn)(const ExperimentConfig&,
                                                    size_t)) {
  RETURN_IF_ERROR(config.Validate());
  std::vector<absl::StatusOr<std::vector<Record>>> per_trial(
      config.trials, std::vector<Record>{});
  ParallelFor(config.trials,
              [&](size_t t) { per_trial[t] = trial_fn(config, t); });
  std::vector<Record> records;
  for (auto& result : per_trial) {
    if (!result.ok()) return result.status();
    for (Record& record : *result) records.push_back(std::move(record));
  }
  return records;
}

absl::StatusOr<std::vector<KinshipRecord>> KinshipTrial(
    const ExperimentConfig& config, size_t trial) {
  const uint64_t trial_seed = TrialSeed(config, trial);
  ASSIGN_OR_RETURN(Cohort cohort,
                   GenerateCohort(config.population,
                                  DeriveSeed(trial_seed, "cohort")));
  const MafVector maf = ComputeMaf(cohort.dataset_a);
  std::vector<KinshipRecord> records;
  for (size_t m : AxisOr(config.sweep.m, config.protocol.m)) {
    ASSIGN_OR_RETURN(
        SyncAgreement agreement,
        MakeAgreement(config, cohort.dataset_a, maf, m,
                      config.protocol.panel_strategy, trial_seed));
    for (double epsilon : AxisOr(config.sweep.epsilon,
                                 config.protocol.epsilon)) {
      const Clock::time_point start = Clock::now();
      // The local seeds do not depend on epsilon, so the sweep compares
      // noise levels on the same uniforms.
      ASSIGN_OR_RETURN(
          PreparedShare share_a,
          MakeShare(cohort.dataset_a, agreement, config.protocol.n_prime,
                    epsilon, DeriveSeed(trial_seed, "party-a"), "ra"));
      ASSIGN_OR_RETURN(
          PreparedShare share_b,
          MakeShare(cohort.dataset_b, agreement, config.protocol.n_prime,
                    epsilon, DeriveSeed(trial_seed, "party-b"), "rb"));
      const std::vector<Metadata> shares = {share_a.metadata,
                                            share_b.metadata};
      ASSIGN_OR_RETURN(KinshipReport report, PairwiseKinship(shares));
      std::vector<KinshipEntry> entries =
          FilterResults(report.entries, share_a.registry);
      entries = FilterResults(entries, share_b.registry);
      absl::flat_hash_map<std::string, std::string> names =
          share_a.pseudonym_to_sample;
      names.insert(share_b.pseudonym_to_sample.begin(),
                   share_b.pseudonym_to_sample.end());
      entries = RelabelEntries(entries, names);
      ASSIGN_OR_RETURN(KinshipMetricsResult metrics,
                       ComputeKinshipMetrics(entries, cohort.truth));
      KinshipRecord record;
      record.trial = trial;
      record.seed = trial_seed;
      record.m = m;
      record.epsilon = epsilon;
      record.accuracy = metrics.accuracy;
      record.precision = metrics.precision;
      record.recall = metrics.recall;
      record.all_pairs_accuracy = metrics.all_pairs_accuracy;
      record.wall_ms = MillisSince(start);
      records.push_back(record);
    }
  }
  return records;
}

absl::StatusOr<std::vector<UnshuffleRecord>> UnshuffleTrial(
    const ExperimentConfig& config, size_t trial) {
  const uint64_t trial_seed = TrialSeed(config, trial);
  ASSIGN_OR_RETURN(TrialPopulation population,
                   MakeTrialPopulation(config, trial_seed));
  const size_t m = config.protocol.m;
  const UnshuffleOptions options{config.adversary.delta_corr,
                                 config.adversary.stall_distance};
  std::vector<UnshuffleRecord> records;
  for (PanelStrategy strategy : AxisOr(config.sweep.panel_strategy,
                                       config.protocol.panel_strategy)) {
    ASSIGN_OR_RETURN(SyncAgreement agreement,
                     MakeAgreement(config, population.dataset, population.maf,
                                   m, strategy, trial_seed));
    const PermutationVector q = DerivePermutation(agreement.seed_u, m);
    std::vector<std::pair<size_t, AdversaryKnowledge>> knowledge;
    for (size_t extra : AxisOr(config.sweep.i_prime_extra,
                               config.EffectiveIPrime() - m)) {
      ASSIGN_OR_RETURN(std::vector<std::string> candidates,
                       CandidateIds(population.dataset, agreement.panel,
                                    extra, trial_seed));
      ASSIGN_OR_RETURN(AdversaryKnowledge known,
                       AdversaryKnowledge::FromReference(
                           population.dataset, std::move(candidates)));
      knowledge.emplace_back(m + extra, std::move(known));
    }
    for (double epsilon : AxisOr(config.sweep.epsilon,
                                 config.protocol.epsilon)) {
      for (size_t n_prime : AxisOr(config.sweep.n_prime,
                                   config.protocol.n_prime)) {
        ASSIGN_OR_RETURN(
            PreparedShare share,
            MakeShare(population.dataset, agreement, n_prime, epsilon,
                      DeriveSeed(trial_seed, "party"), "r1"));
        for (const auto& [i_prime_size, known] : knowledge) {
          const Clock::time_point start = Clock::now();
          ASSIGN_OR_RETURN(
              MatchAssignment assignment,
              UnshuffleGreedy(share.metadata, known,
                              DeriveSeed(trial_seed, "greedy"), options));
          UnshuffleRecord record;
          record.trial = trial;
          record.seed = trial_seed;
          record.m = m;
          record.n_prime = n_prime;
          record.epsilon = epsilon;
          record.panel_strategy = strategy;
          record.i_prime_size = i_prime_size;
          record.unshuffling_accuracy =
              UnshufflingAccuracy(assignment, q, agreement.panel);
          record.wall_ms = MillisSince(start);
          records.push_back(record);
        }
      }
    }
  }
  return records;
}

absl::StatusOr<std::vector<MembershipRecord>> MembershipTrial(
    const ExperimentConfig& config, size_t trial) {
  const uint64_t trial_seed = TrialSeed(config, trial);
  ASSIGN_OR_RETURN(TrialPopulation population,
                   MakeTrialPopulation(config, trial_seed));
  const size_t m = config.protocol.m;
  ASSIGN_OR_RETURN(
      SyncAgreement agreement,
      MakeAgreement(config, population.dataset, population.maf, m,
                    config.protocol.panel_strategy, trial_seed));
  const PermutationVector q = DerivePermutation(agreement.seed_u, m);
  ASSIGN_OR_RETURN(MembershipSets sets,
                   DrawMembershipSets(config, population.dataset,
                                      population.model, trial_seed));
  ASSIGN_OR_RETURN(PowerResult lrt,
                   LrtPower(sets.members.matrix(), sets.nonmembers.matrix(),
                            population.maf, sets.pop_maf,
                            config.adversary.power.fpr_target,
                            config.adversary.lrt_encoding));
  ASSIGN_OR_RETURN(std::vector<size_t> panel_columns,
                   ColumnsOf(population.dataset, agreement.panel));
  const GenotypeMatrix victims_in =
      sets.members.matrix().SelectColumns(panel_columns);
  const GenotypeMatrix victims_out =
      sets.nonmembers.matrix().SelectColumns(panel_columns);
  std::vector<MembershipRecord> records;
  for (double epsilon : AxisOr(config.sweep.epsilon,
                               config.protocol.epsilon)) {
    ASSIGN_OR_RETURN(PreparedShare share,
                     MakeShare(population.dataset, agreement,
                               config.protocol.n_prime, epsilon,
                               DeriveSeed(trial_seed, "party"), "r1"));
    const std::vector<double> levels = AxisOr(config.sweep.level, 1.0);
    for (size_t l = 0; l < levels.size(); ++l) {
      const Clock::time_point start = Clock::now();
      ASSIGN_OR_RETURN(Metadata unshuffled,
                       SimulateUnshuffleLevel(share.metadata, q, levels[l],
                                              DeriveSeed(trial_seed, "level",
                                                         l)));
      ASSIGN_OR_RETURN(PowerResult power,
                       MembershipPowerHamming(unshuffled.matrix, victims_in,
                                              victims_out,
                                              config.adversary.power));
      MembershipRecord record;
      record.trial = trial;
      record.seed = trial_seed;
      record.level = levels[l];
      record.epsilon = epsilon;
      record.gamma = power.threshold;
      record.power = power.power;
      record.achieved_fpr = power.achieved_fpr;
      record.lrt_power = lrt.power;
      record.lrt_fpr = lrt.achieved_fpr;
      record.wall_ms = MillisSince(start);
      records.push_back(record);
    }
  }
  return records;
}

}  // namespace

absl::StatusOr<Cohort> GenerateCohort(const PopulationConfig& population,
                                      uint64_t seed) {
  const size_t relatives = population.first_degree + population.second_degree;
  if (relatives > population.n) {
    return absl::InvalidArgumentError(absl::StrCat(
        "ConfigError: ", relatives, " relatives need as many founders, have ",
        population.n));
  }
  Cohort cohort;
  cohort.model = ModelFor(population, seed);
  ASSIGN_OR_RETURN(GenotypeDataset founders,
                   GeneratePopulation(population.n, cohort.model,
                                      DeriveSeed(seed, "founders"), "f"));
  std::vector<std::string> ids[2];
  GenotypeMatrix rows[2];
  for (size_t i = 0; i < founders.num_samples(); ++i) {
    ids[i % 2].push_back(founders.sample_ids()[i]);
    rows[i % 2].AppendRow(founders.matrix().row(i));
    cohort.truth.AddSample(founders.sample_ids()[i]);
  }
  for (size_t k = 0; k < relatives; ++k) {
    const int degree = k < population.first_degree ? 1 : 2;
    const std::string id =
        absl::StrFormat("%s%04d", degree == 1 ? "c" : "g", k + 1);
    const std::string parent = founders.sample_ids()[k];
    ASSIGN_OR_RETURN(
        GeneratedRelative relative,
        GenerateRelative(founders, std::span<const std::string>(&parent, 1),
                         degree, cohort.model, DeriveSeed(seed, "relative", k),
                         id));
    const size_t side = 1 - k % 2;
    ids[side].push_back(id);
    rows[side].AppendRow(relative.row);
    cohort.truth.AddSample(id);
    for (const TruthPair& pair : relative.truth) {
      RETURN_IF_ERROR(cohort.truth.AddPair(pair.a, pair.b, pair.degree));
    }
  }
  ASSIGN_OR_RETURN(cohort.dataset_a,
                   GenotypeDataset::Create(ids[0], founders.snp_ids(),
                                           std::move(rows[0])));
  ASSIGN_OR_RETURN(cohort.dataset_b,
                   GenotypeDataset::Create(ids[1], founders.snp_ids(),
                                           std::move(rows[1])));
  return cohort;
}

absl::StatusOr<AttackSetup> BuildAttackSetup(const ExperimentConfig& config,
                                             size_t m, size_t n_prime,
                                             double epsilon,
                                             PanelStrategy strategy,
                                             size_t i_prime_extra,
                                             uint64_t trial_seed) {
  ASSIGN_OR_RETURN(TrialPopulation population,
                   MakeTrialPopulation(config, trial_seed));
  ASSIGN_OR_RETURN(SyncAgreement agreement,
                   MakeAgreement(config, population.dataset, population.maf,
                                 m, strategy, trial_seed));
  ASSIGN_OR_RETURN(PreparedShare share,
                   MakeShare(population.dataset, agreement, n_prime, epsilon,
                             DeriveSeed(trial_seed, "party"), "r1"));
  ASSIGN_OR_RETURN(std::vector<std::string> candidates,
                   CandidateIds(population.dataset, agreement.panel,
                                i_prime_extra, trial_seed));
  ASSIGN_OR_RETURN(AdversaryKnowledge knowledge,
                   AdversaryKnowledge::FromReference(population.dataset,
                                                     std::move(candidates)));
  return AttackSetup{std::move(population.model),
                     std::move(population.dataset), std::move(agreement),
                     std::move(share), std::move(knowledge)};
}

absl::StatusOr<MembershipSets> DrawMembershipSets(
    const ExperimentConfig& config, const GenotypeDataset& dataset,
    const MafModel& model, uint64_t trial_seed) {
  const PowerConfig& power = config.adversary.power;
  RETURN_IF_ERROR(power.Validate());
  if (power.set_b_size > dataset.num_samples()) {
    return absl::InvalidArgumentError(absl::StrCat(
        "ConfigError: set_b_size ", power.set_b_size, " exceeds n ",
        dataset.num_samples()));
  }
  std::vector<size_t> all_rows(dataset.num_samples());
  std::iota(all_rows.begin(), all_rows.end(), size_t{0});
  std::vector<size_t> chosen = SampleWithoutReplacement(
      std::move(all_rows), power.set_b_size,
      DeriveSeed(trial_seed, "members"));
  std::sort(chosen.begin(), chosen.end());
  std::vector<std::string> member_ids;
  for (size_t row : chosen) member_ids.push_back(dataset.sample_ids()[row]);
  MembershipSets sets;
  ASSIGN_OR_RETURN(sets.members,
                   GenotypeDataset::Create(member_ids, dataset.snp_ids(),
                                           dataset.matrix().SelectRows(chosen)));
  ASSIGN_OR_RETURN(GenotypeMatrix outsiders,
                   GenerateGenotypes(power.set_a_size, model,
                                     DeriveSeed(trial_seed, "nonmembers")));
  std::vector<std::string> outsider_ids;
  for (size_t i = 0; i < power.set_a_size; ++i) {
    outsider_ids.push_back(absl::StrFormat("a%04d", i));
  }
  ASSIGN_OR_RETURN(sets.nonmembers,
                   GenotypeDataset::Create(outsider_ids, dataset.snp_ids(),
                                           std::move(outsiders)));
  if (config.population.reference_size == 0) {
    return absl::InvalidArgumentError(
        "ConfigError: population.reference_size must be positive");
  }
  ASSIGN_OR_RETURN(GenotypeMatrix reference,
                   GenerateGenotypes(config.population.reference_size, model,
                                     DeriveSeed(trial_seed, "reference")));
  sets.pop_maf = ComputeMaf(reference);
  return sets;
}

absl::StatusOr<std::vector<KinshipRecord>> RunKinshipExperiment(
    const ExperimentConfig& config) {
  ASSIGN_OR_RETURN(std::vector<KinshipRecord> records,
                   RunTrials<KinshipRecord>(config, KinshipTrial));
  std::stable_sort(records.begin(), records.end(),
                   [](const KinshipRecord& x, const KinshipRecord& y) {
                     return std::tie(x.m, x.epsilon, x.trial) <
                            std::tie(y.m, y.epsilon, y.trial);
                   });
  return records;
}

absl::StatusOr<std::vector<UnshuffleRecord>> RunUnshuffleExperiment(
    const ExperimentConfig& config) {
  ASSIGN_OR_RETURN(std::vector<UnshuffleRecord> records,
                   RunTrials<UnshuffleRecord>(config, UnshuffleTrial));
  // Curves are listed from the weakest defense to the strongest: epsilon
  // descending, n' ascending.
  std::stable_sort(records.begin(), records.end(),
                   [](const UnshuffleRecord& x, const UnshuffleRecord& y) {
                     return std::make_tuple(x.panel_strategy, x.i_prime_size,
                                            -x.epsilon, x.n_prime, x.trial) <
                            std::make_tuple(y.panel_strategy, y.i_prime_size,
                                            -y.epsilon, y.n_prime, y.trial);
                   });
  return records;
}

absl::StatusOr<std::vector<MembershipRecord>> RunMembershipExperiment(
    const ExperimentConfig& config) {
  ASSIGN_OR_RETURN(std::vector<MembershipRecord> records,
                   RunTrials<MembershipRecord>(config, MembershipTrial));
  std::stable_sort(records.begin(), records.end(),
                   [](const MembershipRecord& x, const MembershipRecord& y) {
                     return std::tie(x.epsilon, x.level, x.trial) <
                            std::tie(y.epsilon, y.level, y.trial);
                   });
  return records;
}

std::string ToNdjson(const std::vector<KinshipRecord>& records) {
  std::string out;
  for (const KinshipRecord& r : records) {
    nlohmann::ordered_json j;
    j["trial"] = r.trial;
    j["seed"] = std::to_string(r.seed);
    j["m"] = r.m;
    j["epsilon"] = EpsilonJson(r.epsilon);
    j["accuracy"] = r.accuracy;
    j["precision"] = std::isnan(r.precision) ? nlohmann::ordered_json()
                                             : nlohmann::ordered_json(
                                                   r.precision);
    j["recall"] = r.recall;
    j["all_pairs_accuracy"] = r.all_pairs_accuracy;
    j["wall_ms"] = r.wall_ms;
    absl::StrAppend(&out, j.dump(), "\n");
  }
  return out;
}

std::string ToNdjson(const std::vector<UnshuffleRecord>& records) {
  std::string out;
  for (const UnshuffleRecord& r : records) {
    nlohmann::ordered_json j;
    j["seed"] = std::to_string(r.seed);
    j["trial"] = r.trial;
    j["m"] = r.m;
    j["n_prime"] = r.n_prime;
    j["epsilon"] = EpsilonJson(r.epsilon);
    j["panel_strategy"] = std::string(PanelStrategyName(r.panel_strategy));
    j["i_prime_size"] = r.i_prime_size;
    j["unshuffling_accuracy"] = r.unshuffling_accuracy;
    j["wall_ms"] = r.wall_ms;
    absl::StrAppend(&out, j.dump(), "\n");
  }
  return out;
}

std::string ToNdjson(const std::vector<MembershipRecord>& records) {
  std::string out;
  for (const MembershipRecord& r : records) {
    nlohmann::ordered_json j;
    j["level"] = r.level;
    j["epsilon"] = EpsilonJson(r.epsilon);
    j["gamma"] = r.gamma;
    j["power"] = r.power;
    j["achieved_fpr"] = r.achieved_fpr;
    j["lrt_power"] = r.lrt_power;
    j["lrt_fpr"] = r.lrt_fpr;
    j["seed"] = std::to_string(r.seed);
    j["trial"] = r.trial;
    j["wall_ms"] = r.wall_ms;
    absl::StrAppend(&out, j.dump(), "\n");
  }
  return out;
}

std::string SummaryCsv(const std::vector<KinshipRecord>& records) {
  std::map<std::pair<size_t, double>, std::vector<const KinshipRecord*>> groups;
  for (const KinshipRecord& r : records) {
    groups[{r.m, r.epsilon}].push_back(&r);
  }
  std::string out = "m,epsilon,trials,accuracy,precision,recall,"
                    "all_pairs_accuracy\n";
  for (const auto& [key, group] : groups) {
    std::vector<double> acc, prec, rec, all;
    for (const KinshipRecord* r : group) {
      acc.push_back(r->accuracy);
      prec.push_back(r->precision);
      rec.push_back(r->recall);
      all.push_back(r->all_pairs_accuracy);
    }
    absl::StrAppend(&out, key.first, ",", EpsilonText(key.second), ",",
                    group.size(), ",", Decimal(MeanOf(acc)), ",",
                    Decimal(MeanOf(prec)), ",", Decimal(MeanOf(rec)), ",",
                    Decimal(MeanOf(all)), "\n");
  }
  return out;
}

std::string SummaryCsv(const std::vector<UnshuffleRecord>& records) {
  // Records arrive sorted, so groups are emitted in first-seen order.
  std::vector<std::pair<const UnshuffleRecord*, std::vector<double>>> groups;
  for (const UnshuffleRecord& r : records) {
    const UnshuffleRecord* head = groups.empty() ? nullptr : groups.back().first;
    if (head == nullptr || head->panel_strategy != r.panel_strategy ||
        head->i_prime_size != r.i_prime_size || head->epsilon != r.epsilon ||
        head->n_prime != r.n_prime) {
      groups.emplace_back(&r, std::vector<double>{});
    }
    groups.back().second.push_back(r.unshuffling_accuracy);
  }
  std::string out =
      "panel_strategy,i_prime_size,epsilon,n_prime,trials,mean_accuracy,"
      "sd_accuracy\n";
  for (const auto& [head, values] : groups) {
    absl::StrAppend(&out, PanelStrategyName(head->panel_strategy), ",",
                    head->i_prime_size, ",", EpsilonText(head->epsilon), ",",
                    head->n_prime, ",", values.size(), ",",
                    Decimal(MeanOf(values)), ",", Decimal(SampleSd(values)),
                    "\n");
  }
  return out;
}

std::string SummaryCsv(const std::vector<MembershipRecord>& records) {
  std::map<std::pair<double, double>, std::vector<const MembershipRecord*>>
      groups;
  for (const MembershipRecord& r : records) {
    groups[{r.epsilon, r.level}].push_back(&r);
  }
  std::string out =
      "epsilon,level,trials,power,achieved_fpr,gamma,lrt_power,lrt_fpr\n";
  for (const auto& [key, group] : groups) {
    std::vector<double> power, fpr, gamma, lrt, lrt_fpr;
    for (const MembershipRecord* r : group) {
      power.push_back(r->power);
      fpr.push_back(r->achieved_fpr);
      gamma.push_back(r->gamma);
      lrt.push_back(r->lrt_power);
      lrt_fpr.push_back(r->lrt_fpr);
    }
    absl::StrAppend(&out, EpsilonText(key.first), ",",
                    absl::StrFormat("%g", key.second), ",", group.size(), ",",
                    Decimal(MeanOf(power)), ",", Decimal(MeanOf(fpr)), ",",
                    Decimal(MeanOf(gamma)), ",", Decimal(MeanOf(lrt)), ",",
                    Decimal(MeanOf(lrt_fpr)), "\n");
  }
  return out;
}

}  // namespace fedkin
