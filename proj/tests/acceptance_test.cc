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

// Standalone acceptance gate. Prints one PASS/FAIL line per criterion and
// exits non-zero when any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "absl/status/statusor.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_format.h"
#include "fedkin/adversary.h"
#include "fedkin/experiment.h"
#include "fedkin/genotype.h"
#include "fedkin/kinship.h"
#include "fedkin/packed_genotypes.h"
#include "fedkin/population.h"
#include "fedkin/population_stats.h"
#include "fedkin/random.h"
#include "fedkin/researcher.h"

namespace fedkin {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Collects the first failure of a criterion; later checks still run so the
// detail line reports every violated condition.
struct Aborted {
  std::string message;
};

class Check {
 public:
  void Expect(bool condition, const std::string& what) {
    if (!condition) {
      ok_ = false;
      if (failures_ < 6) absl::StrAppend(&detail_, detail_.empty() ? "" : "; ", what);
      ++failures_;
    }
  }
  // A library error ends the criterion; Main reports it as a failure.
  template <typename T>
  T Value(absl::StatusOr<T> value, const std::string& what) {
    if (!value.ok()) {
      throw Aborted{absl::StrCat(what, ": ", value.status().ToString())};
    }
    return *std::move(value);
  }
  void Note(const std::string& text) {
    absl::StrAppend(&notes_, notes_.empty() ? "" : ", ", text);
  }

  bool ok() const { return ok_; }
  std::string Summary() const {
    std::string out = notes_;
    if (!ok_) {
      absl::StrAppend(&out, out.empty() ? "" : "; ", "violations: ", detail_);
      if (failures_ > 6) absl::StrAppend(&out, " (+", failures_ - 6, " more)");
    }
    return out;
  }

 private:
  bool ok_ = true;
  int failures_ = 0;
  std::string detail_;
  std::string notes_;
};

GenotypeMatrix UniformMatrix(size_t rows, size_t cols, uint64_t seed) {
  GenotypeMatrix m(rows, cols);
  ChaChaStream stream(seed, 0);
  for (size_t r = 0; r < rows; ++r) {
    for (size_t c = 0; c < cols; ++c) {
      m.set(r, c, static_cast<Genotype>(stream.UniformBelow(3)));
    }
  }
  return m;
}

std::vector<Genotype> RowOf(const GenotypeMatrix& m, size_t r) {
  std::vector<Genotype> row(m.cols());
  for (size_t c = 0; c < m.cols(); ++c) row[c] = m.at(r, c);
  return row;
}

std::optional<double> Phi(std::span<const Genotype> a,
                          std::span<const Genotype> b) {
  absl::StatusOr<KingCounts> counts = ComputeKingCounts(a, b);
  if (!counts.ok()) return std::nullopt;
  return KingCoefficient(*counts);
}

void KingIdentities(Check& check) {
  ChaChaStream stream(101, 0);
  int defined = 0;
  int undefined = 0;
  for (int t = 0; t < 2000; ++t) {
    const size_t m = 1 + stream.UniformBelow(300);
    // Every fourth row avoids heterozygotes so that n1* = 0 is exercised.
    const bool no_het = t % 4 == 0;
    std::vector<Genotype> g(m), h(m);
    for (size_t c = 0; c < m; ++c) {
      g[c] = no_het ? static_cast<Genotype>(2 * stream.UniformBelow(2))
                    : static_cast<Genotype>(stream.UniformBelow(3));
      h[c] = static_cast<Genotype>(stream.UniformBelow(3));
    }
    const bool has_het = std::count(g.begin(), g.end(), 1) > 0;
    const std::optional<double> self = Phi(g, g);
    check.Expect(self.has_value() == has_het, "undefined iff n1* = 0 (self)");
    if (has_het) {
      ++defined;
      check.Expect(self == 0.5, absl::StrCat("self phi ", *self));
    } else {
      ++undefined;
    }
    const std::optional<double> gh = Phi(g, h);
    check.Expect(gh.has_value() == has_het, "undefined iff n1* = 0 (pair)");
    std::vector<size_t> perm(m);
    std::iota(perm.begin(), perm.end(), size_t{0});
    for (size_t i = m; i-- > 1;) {
      std::swap(perm[i], perm[stream.UniformBelow(i + 1)]);
    }
    std::vector<Genotype> gp(m), hp(m);
    for (size_t c = 0; c < m; ++c) {
      gp[c] = g[perm[c]];
      hp[c] = h[perm[c]];
    }
    check.Expect(Phi(gp, hp) == gh, "phi changed under column permutation");
  }
  check.Note(absl::StrCat(defined, " defined and ", undefined,
                          " undefined rows"));
}

void Thresholds(Check& check) {
  const std::vector<std::pair<double, KinshipDegree>> cases = {
      {0.5, KinshipDegree::kDuplicate},
      {0.25, KinshipDegree::kFirst},
      {0.1, KinshipDegree::kSecond},
      {0.05, KinshipDegree::kUnrelated}};
  for (const auto& [phi, degree] : cases) {
    check.Expect(ClassifyDegree(phi) == degree,
                 absl::StrCat("phi ", phi, " -> ", DegreeLabel(ClassifyDegree(phi))));
  }
  check.Expect(ClassifyDegree(std::nullopt) == KinshipDegree::kUnrelated,
               "undefined phi");
}

void LdpStatistics(Check& check) {
  const size_t side = 1000;
  const GenotypeMatrix input = UniformMatrix(side, side, 31);
  for (double epsilon : {3.0, 4.0, 5.0}) {
    const LdpParams& params =
        check.Value(LdpParams::Create(epsilon), "LdpParams");
    const GenotypeMatrix output = ApplyLdpVariant(input, params, 77);
    std::array<std::array<double, 3>, 3> counts{};
    for (size_t r = 0; r < side; ++r) {
      for (size_t c = 0; c < side; ++c) {
        ++counts[input.at(r, c)][output.at(r, c)];
      }
    }
    const double p = std::exp(epsilon) / (std::exp(epsilon) + 2.0);
    const double q1 = 1.0 - p;
    const double q_half = (1.0 - p) / 2.0;
    const std::array<std::array<double, 3>, 3> expected = {
        {{p, q1, 0.0}, {q_half, p, q_half}, {0.0, q1, p}}};
    double worst_z = 0.0;
    for (int u = 0; u < 3; ++u) {
      const double n = counts[u][0] + counts[u][1] + counts[u][2];
      for (int v = 0; v < 3; ++v) {
        const double e = expected[u][v];
        if (e == 0.0) {
          check.Expect(counts[u][v] == 0,
                       absl::StrCat(u, "->", v, " transitions at eps ", epsilon));
          continue;
        }
        const double sigma = std::sqrt(n * e * (1.0 - e));
        const double z = std::abs(counts[u][v] - n * e) / sigma;
        worst_z = std::max(worst_z, z);
        check.Expect(z <= 3.0, absl::StrFormat("%d->%d at eps %g: z=%.2f", u,
                                               v, epsilon, z));
      }
    }
    check.Note(absl::StrFormat("eps %g max |z| %.2f", epsilon, worst_z));
  }
  const LdpParams& none = check.Value(LdpParams::Create(kInf), "LdpParams");
  check.Expect(ApplyLdpVariant(input, none, 77) == input,
               "eps = inf is not the identity");
}

void ShuffleConsensus(Check& check) {
  ChaChaStream cases(2024, 0);
  for (int t = 0; t < 1000; ++t) {
    const uint64_t seed_u = cases.NextU64();
    const size_t m = 2 + cases.UniformBelow(3000);
    // Party one uses the library; party two rebuilds the shuffle from its own
    // keystream instance.
    const PermutationVector q = DerivePermutation(seed_u, m);
    std::vector<size_t> other(m);
    std::iota(other.begin(), other.end(), size_t{0});
    ChaChaStream stream(seed_u, 0);
    for (size_t i = m; i-- > 1;) {
      std::swap(other[i], other[stream.UniformBelow(i + 1)]);
    }
    check.Expect(q.mapping() == other,
                 absl::StrCat("parties disagree for U=", seed_u, " m=", m));
    check.Expect(DerivePermutation(seed_u, m).mapping() == q.mapping(),
                 "repeat derivation differs");
  }
  // Golden permutations from the independent keystream oracle.
  check.Expect(DerivePermutation(42, 5).mapping() ==
                   std::vector<size_t>{1, 3, 4, 2, 0},
               "golden perm(42, 5)");
  check.Expect(DerivePermutation(7, 10).mapping() ==
                   std::vector<size_t>{0, 1, 8, 5, 6, 9, 2, 7, 4, 3},
               "golden perm(7, 10)");
}

template <typename T>
double Mean(const std::vector<T>& values) {
  if (values.empty()) return std::numeric_limits<double>::quiet_NaN();
  return std::accumulate(values.begin(), values.end(), 0.0) / values.size();
}

void KinshipAccuracy(Check& check) {
  ExperimentConfig config = ExperimentConfig::Preset(ExperimentKind::kKinship);
  config.sweep.m = {500};
  config.sweep.epsilon = {3.0, 4.0, 5.0, kInf};
  const auto& records =
      check.Value(RunKinshipExperiment(config), "kinship experiment");
  std::map<double, std::vector<double>> accuracy, recall;
  for (const KinshipRecord& r : records) {
    accuracy[r.epsilon].push_back(r.accuracy);
    recall[r.epsilon].push_back(r.recall);
  }
  const double acc5 = Mean(accuracy[5.0]);
  check.Expect(acc5 >= 0.93, absl::StrFormat("accuracy at eps 5 %.3f", acc5));
  check.Note(absl::StrFormat("%zu trials, accuracy(eps 5) %.3f", config.trials,
                             acc5));
  const std::vector<std::pair<double, double>> targets = {
      {3.0, 0.86}, {4.0, 0.94}, {5.0, 0.98}, {kInf, 0.98}};
  double previous = -1.0;
  std::string line = "recall";
  for (const auto& [epsilon, target] : targets) {
    const double r = Mean(recall[epsilon]);
    absl::StrAppendFormat(&line, " %g:%.3f", epsilon, r);
    check.Expect(std::abs(r - target) <= 0.07,
                 absl::StrFormat("recall at eps %g %.3f vs %.2f", epsilon, r,
                                 target));
    check.Expect(r >= previous,
                 absl::StrFormat("recall decreases at eps %g", epsilon));
    previous = r;
  }
  check.Note(line);
}

void Unshuffling(Check& check) {
  const ExperimentConfig config =
      ExperimentConfig::Preset(ExperimentKind::kUnshuffle);
  const auto& records =
      check.Value(RunUnshuffleExperiment(config), "unshuffle experiment");
  // (strategy, |I'|, epsilon, n') -> trial accuracies.
  using Key = std::tuple<PanelStrategy, size_t, double, size_t>;
  std::map<Key, std::vector<double>> by_point;
  for (const UnshuffleRecord& r : records) {
    by_point[{r.panel_strategy, r.i_prime_size, r.epsilon, r.n_prime}]
        .push_back(r.unshuffling_accuracy);
    if (r.panel_strategy == PanelStrategy::kRandom && r.n_prime == 0 &&
        r.epsilon == kInf && r.i_prime_size == config.protocol.m) {
      check.Expect(r.unshuffling_accuracy == 1.0,
                   absl::StrFormat("no-defense trial %zu accuracy %.4f",
                                   r.trial, r.unshuffling_accuracy));
    }
  }
  int points = 0;
  int ordered = 0;
  double worst_random_high = 0.0;
  for (const auto& [key, values] : by_point) {
    const auto& [strategy, i_prime, epsilon, n_prime] = key;
    if (strategy != PanelStrategy::kRandom) continue;
    const double random = Mean(values);
    if (n_prime >= 400) {
      worst_random_high = std::max(worst_random_high, random);
      check.Expect(random < 0.5,
                   absl::StrFormat("random n'=%zu eps %g I'=%zu mean %.3f",
                                   n_prime, epsilon, i_prime, random));
    }
    const auto close = by_point.find(
        {PanelStrategy::kCloseMaf, i_prime, epsilon, n_prime});
    if (close == by_point.end()) continue;
    ++points;
    const double close_mean = Mean(close->second);
    if (close_mean <= random) {
      ++ordered;
    } else {
      check.Expect(false, absl::StrFormat(
                              "close-maf %.4f > random %.4f at n'=%zu eps %g "
                              "I'=%zu",
                              close_mean, random, n_prime, epsilon, i_prime));
    }
  }
  check.Note(absl::StrFormat(
      "%zu runs, max random mean at n'>=400 %.4f, close-maf <= random at "
      "%d/%d points",
      records.size(), worst_random_high, ordered, points));
}

void MembershipPower(Check& check) {
  const ExperimentConfig config =
      ExperimentConfig::Preset(ExperimentKind::kMembership);
  const auto& records =
      check.Value(RunMembershipExperiment(config), "membership experiment");
  const double fpr_bound =
      config.adversary.power.fpr_target + 1.0 / config.adversary.power.set_a_size;
  std::map<std::pair<double, double>, std::vector<double>> power;
  double worst_fpr = 0.0;
  for (const MembershipRecord& r : records) {
    power[{r.epsilon, r.level}].push_back(r.power);
    worst_fpr = std::max(worst_fpr, r.achieved_fpr);
    check.Expect(r.achieved_fpr <= fpr_bound,
                 absl::StrFormat("achieved FPR %.3f", r.achieved_fpr));
  }
  std::string low = "eps 5 power";
  for (const auto& [key, values] : power) {
    const auto& [epsilon, level] = key;
    const double mean = Mean(values);
    if (level >= 0.7) {
      check.Expect(mean >= 0.95,
                   absl::StrFormat("power %.3f at level %g eps %g", mean,
                                   level, epsilon));
    }
    if (level <= 0.4 && epsilon == 5.0) {
      absl::StrAppendFormat(&low, " %g:%.3f", level, mean);
      check.Expect(mean < 0.5, absl::StrFormat("power %.3f at level %g eps 5",
                                               mean, level));
    }
  }
  check.Note(absl::StrFormat("%zu runs, max achieved FPR %.3f, %s",
                             records.size(), worst_fpr, low));
}

void LrtBaseline(Check& check) {
  ExperimentConfig config =
      ExperimentConfig::Preset(ExperimentKind::kMembership);
  const PowerConfig& power = config.adversary.power;
  const size_t trials = 20;
  const uint64_t root = DeriveSeed(config.seed, "lrt-acceptance");

  // Null calibration: both victim sets are non-members. The threshold is an
  // order statistic of |A| scores, so 1/|A| is added to the 3 sigma band.
  std::vector<double> lrt_null, hamming_null;
  for (size_t t = 0; t < trials; ++t) {
    const uint64_t seed = DeriveSeed(root, "null", t);
    const auto& setup = check.Value(
        BuildAttackSetup(config, config.protocol.m, 0, kInf,
                         PanelStrategy::kRandom, 0, seed),
        "attack setup");
    const auto& sets = check.Value(
        DrawMembershipSets(config, setup.dataset, setup.model, seed),
        "membership sets");
    const auto& decoys = check.Value(
        GenerateGenotypes(power.set_b_size, setup.model,
                          DeriveSeed(seed, "decoys")),
        "decoys");
    const auto& lrt = check.Value(
        LrtPower(decoys, sets.nonmembers.matrix(), ComputeMaf(setup.dataset),
                 sets.pop_maf, power.fpr_target, config.adversary.lrt_encoding),
        "LRT null");
    lrt_null.push_back(lrt.power);
    const PermutationVector q =
        DerivePermutation(setup.agreement.seed_u, setup.agreement.m());
    MatchAssignment truth;
    for (size_t c = 0; c < q.size(); ++c) {
      truth.column_ids.push_back(setup.agreement.panel[q[c]]);
    }
    std::vector<std::string> decoy_ids;
    for (size_t i = 0; i < decoys.rows(); ++i) {
      decoy_ids.push_back(absl::StrCat("d", i));
    }
    const auto& decoy_rows = check.Value(
        GenotypeDataset::Create(decoy_ids, setup.dataset.snp_ids(), decoys),
        "decoy dataset");
    const auto& in = check.Value(AlignVictims(decoy_rows, truth), "align");
    const auto& out =
        check.Value(AlignVictims(sets.nonmembers, truth), "align");
    const auto& hamming = check.Value(
        MembershipPowerHamming(setup.share.metadata.matrix, in, out, power),
        "hamming null");
    hamming_null.push_back(hamming.power);
  }
  const double band =
      3.0 * std::sqrt(power.fpr_target * (1.0 - power.fpr_target) /
                      (trials * power.set_b_size)) +
      1.0 / power.set_a_size;
  const double lrt_mean = Mean(lrt_null);
  const double hamming_mean = Mean(hamming_null);
  check.Expect(std::abs(lrt_mean - power.fpr_target) <= band,
               absl::StrFormat("LRT null power %.3f", lrt_mean));
  check.Expect(std::abs(hamming_mean - power.fpr_target) <= band,
               absl::StrFormat("Hamming null power %.3f", hamming_mean));
  check.Note(absl::StrFormat("null power LRT %.3f, Hamming %.3f (band %.3f)",
                             lrt_mean, hamming_mean, band));

  // Defended configurations: close-MAF panel, synthetic rows and LDP noise,
  // attacked end to end by greedy un-shuffling. Trials are paired across
  // configurations: the trial seed fixes the population and victim sets, so
  // the LRT baseline of a trial is shared by all of them.
  const size_t defended_trials = 10;
  const std::vector<size_t> n_primes = {300, 400, 500};
  const std::vector<double> epsilons = {3.0, 4.0, 5.0};
  std::map<std::pair<size_t, double>, std::vector<double>> scheme;
  std::vector<double> lrt;
  for (size_t t = 0; t < defended_trials; ++t) {
    const uint64_t seed = DeriveSeed(root, "defended", t);
    std::optional<MembershipSets> sets;
    for (size_t n_prime : n_primes) {
      for (double epsilon : epsilons) {
        const auto& setup = check.Value(
            BuildAttackSetup(config, config.protocol.m, n_prime, epsilon,
                             PanelStrategy::kCloseMaf, 0, seed),
            "attack setup");
        if (!sets.has_value()) {
          sets = check.Value(
              DrawMembershipSets(config, setup.dataset, setup.model, seed),
              "membership sets");
          lrt.push_back(check
                            .Value(LrtPower(sets->members.matrix(),
                                            sets->nonmembers.matrix(),
                                            ComputeMaf(setup.dataset),
                                            sets->pop_maf, power.fpr_target,
                                            config.adversary.lrt_encoding),
                                   "LRT")
                            .power);
        }
        UnshuffleOptions options;
        options.delta_corr = config.adversary.delta_corr;
        options.stall_distance = config.adversary.stall_distance;
        const auto& assignment = check.Value(
            UnshuffleGreedy(setup.share.metadata, setup.knowledge,
                            DeriveSeed(seed, "greedy"), options),
            "greedy");
        const auto& in =
            check.Value(AlignVictims(sets->members, assignment), "align");
        const auto& out =
            check.Value(AlignVictims(sets->nonmembers, assignment), "align");
        scheme[{n_prime, epsilon}].push_back(
            check
                .Value(MembershipPowerHamming(setup.share.metadata.matrix, in,
                                              out, power),
                       "hamming")
                .power);
      }
    }
  }
  const double l = Mean(lrt);
  double worst_gap = -kInf;
  std::string worst;
  for (const auto& [key, values] : scheme) {
    const auto& [n_prime, epsilon] = key;
    const double s = Mean(values);
    check.Expect(s < l, absl::StrFormat("n'=%zu eps %g scheme %.3f >= LRT %.3f",
                                        n_prime, epsilon, s, l));
    if (s - l > worst_gap) {
      worst_gap = s - l;
      worst = absl::StrFormat("n'=%zu eps %g scheme %.3f vs LRT %.3f", n_prime,
                              epsilon, s, l);
    }
  }
  check.Note(absl::StrCat("closest defended point ", worst));
}

std::vector<size_t> BruteForceMafMatch(const MafVector& column_maf,
                                       const MafVector& ref_maf) {
  std::vector<size_t> perm(column_maf.size());
  std::iota(perm.begin(), perm.end(), size_t{0});
  std::vector<size_t> best = perm;
  double best_cost = kInf;
  do {
    double cost = 0.0;
    for (size_t c = 0; c < perm.size(); ++c) {
      cost += std::abs(column_maf[c] - ref_maf[perm[c]]);
    }
    if (cost < best_cost) {
      best_cost = cost;
      best = perm;
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

void OracleEquivalence(Check& check) {
  size_t pairs = 0;
  for (uint64_t seed = 0; seed < 4; ++seed) {
    const size_t cols = 63 + 301 * seed;
    const GenotypeMatrix a = UniformMatrix(50, cols, 500 + seed);
    const GenotypeMatrix b = UniformMatrix(50, cols, 600 + seed);
    const PackedRows pa(a);
    const PackedRows pb(b);
    for (size_t i = 0; i < a.rows(); ++i) {
      const std::vector<Genotype> gi = RowOf(a, i);
      for (size_t j = 0; j < b.rows(); ++j) {
        const auto& naive =
            check.Value(ComputeKingCounts(gi, RowOf(b, j)), "naive counts");
        check.Expect(PackedKingCounts(pa, i, pb, j) == naive,
                     absl::StrCat("packed != naive at ", i, ",", j));
        ++pairs;
      }
    }
  }
  int panels = 0;
  for (size_t m = 2; m <= 6; ++m) {
    for (uint64_t seed = 0; seed < 40; ++seed) {
      const uint64_t s = 1000 * m + seed;
      const MafModel model = MafModel::Uniform(40, 0.05, 0.5, s);
      const auto& dataset =
          check.Value(GeneratePopulation(150, model, s + 1), "population");
      SyncAgreement agreement;
      agreement.panel = check.Value(
          SelectSnpPanel(ComputeMaf(dataset), dataset.snp_ids(), m,
                         PanelStrategy::kRandom, s + 2),
          "panel");
      agreement.seed_u = s + 3;
      const auto& share = check.Value(
          PrepareMetadata(dataset, agreement, 0, LdpParams::NoNoise(),
                          MetadataSeeds::FromLocalSeed(s + 4), "r"),
          "metadata");
      const auto& knowledge = check.Value(
          AdversaryKnowledge::FromReference(dataset, agreement.panel),
          "knowledge");
      std::vector<double> sorted = knowledge.ref_maf();
      std::sort(sorted.begin(), sorted.end());
      if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
        continue;
      }
      const std::vector<size_t> oracle = BruteForceMafMatch(
          ComputeMaf(share.metadata.matrix), knowledge.ref_maf());
      const auto& assignment = check.Value(
          UnshuffleGreedy(share.metadata, knowledge, seed), "greedy");
      for (size_t c = 0; c < m; ++c) {
        check.Expect(assignment.column_ids.size() == m &&
                         assignment.column_ids[c] ==
                             knowledge.candidate_ids()[oracle[c]],
                     absl::StrCat("greedy != brute force, m=", m,
                                  " seed=", seed));
      }
      ++panels;
    }
  }
  check.Expect(panels >= 100, absl::StrCat("only ", panels, " panels"));
  check.Note(absl::StrCat(pairs, " packed pairs, ", panels,
                          " brute-force panels"));
}

void MendelianGenerator(Check& check) {
  const size_t snps = 2500;
  const MafModel model = MafModel::Uniform(snps, 0.05, 0.5, 8080);
  const auto& founders =
      check.Value(GeneratePopulation(200, model, 8081), "founders");
  std::vector<double> first, second;
  int opposed = 0;
  for (size_t k = 0; k < 100; ++k) {
    const std::string parent = founders.sample_ids()[k];
    // Half the children have one named parent, half have two.
    std::vector<std::string> parents = {parent};
    if (k % 2 == 1) parents.push_back(founders.sample_ids()[100 + k]);
    const auto& child = check.Value(
        GenerateRelative(founders, parents, 1, model, DeriveSeed(9, "c", k),
                         absl::StrCat("c", k)),
        "first-degree relative");
    for (const std::string& id : parents) {
      const auto& index = check.Value(founders.SampleIndex(id), "index");
      const std::span<const Genotype> p = founders.row(index);
      for (size_t s = 0; s < snps && !child.row.empty(); ++s) {
        opposed += std::abs(p[s] - child.row[s]) == 2;
      }
      if (!child.row.empty()) first.push_back(Phi(p, child.row).value_or(kInf));
    }
    const auto& grandchild = check.Value(
        GenerateRelative(founders, {&parent, 1}, 2, model,
                         DeriveSeed(9, "g", k), absl::StrCat("g", k)),
        "second-degree relative");
    const auto& index = check.Value(founders.SampleIndex(parent), "index");
    if (!grandchild.row.empty()) {
      second.push_back(
          Phi(founders.row(index), grandchild.row).value_or(kInf));
    }
  }
  check.Expect(opposed == 0,
               absl::StrCat(opposed, " opposite-homozygote parent/child sites"));
  const double mean_first = Mean(first);
  const double mean_second = Mean(second);
  check.Expect(mean_first > 0.175 && mean_first <= 0.35,
               absl::StrFormat("first-degree mean phi %.4f", mean_first));
  check.Expect(mean_second > 0.08 && mean_second <= 0.175,
               absl::StrFormat("second-degree mean phi %.4f", mean_second));
  check.Note(absl::StrFormat(
      "%zu parent/child pairs mean phi %.4f, %zu grandparent pairs %.4f",
      first.size(), mean_first, second.size(), mean_second));
}

struct Criterion {
  int id;
  const char* name;
  double budget_s;
  std::function<void(Check&)> run;
};

int Main() {
  const std::vector<Criterion> criteria = {
      {1, "KING identities", 1, KingIdentities},
      {2, "classification thresholds", 1, Thresholds},
      {3, "LDP variant statistics", 10, LdpStatistics},
      {4, "shuffle consensus", 1, ShuffleConsensus},
      {5, "kinship accuracy", 60, KinshipAccuracy},
      {6, "un-shuffling attack", 300, Unshuffling},
      {7, "membership power", 120, MembershipPower},
      {8, "LRT baseline", 60, LrtBaseline},
      {9, "oracle equivalence", 30, OracleEquivalence},
      {10, "Mendelian generator", 30, MendelianGenerator},
  };
  int failed = 0;
  for (const Criterion& criterion : criteria) {
    Check check;
    const auto start = std::chrono::steady_clock::now();
    try {
      criterion.run(check);
    } catch (const Aborted& aborted) {
      check.Expect(false, aborted.message);
    }
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
            .count();
    check.Expect(seconds < criterion.budget_s,
                 absl::StrFormat("runtime %.2f s over budget", seconds));
    failed += !check.ok();
    std::printf("%s criterion %d: %s [%.2f s / %.0f s] %s\n",
                check.ok() ? "PASS" : "FAIL", criterion.id, criterion.name,
                seconds, criterion.budget_s, check.Summary().c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n",
              static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}

}  // namespace
}  // namespace fedkin

int main() { return fedkin::Main(); }
