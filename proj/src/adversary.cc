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

#include "fedkin/adversary.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "absl/strings/str_cat.h"
#include "fedkin/packed_genotypes.h"
#include "fedkin/parallel.h"
#include "fedkin/random.h"
#include "fedkin/status_macros.h"

namespace fedkin {
namespace {

constexpr size_t kMinVictimSet = 20;
constexpr double kTieEpsilon = 1e-12;

JointTable Normalize(const std::array<uint32_t, 9>& counts, size_t rows) {
  JointTable table;
  if (rows == 0) return table;
  for (int i = 0; i < 9; ++i) {
    table.cells[i] = static_cast<double>(counts[i]) / static_cast<double>(rows);
  }
  return table;
}

}  // namespace

absl::StatusOr<AdversaryKnowledge> AdversaryKnowledge::FromReference(
    const GenotypeDataset& reference, std::vector<std::string> candidate_ids) {
  std::vector<size_t> columns;
  columns.reserve(candidate_ids.size());
  for (const std::string& id : candidate_ids) {
    auto index = reference.SnpIndex(id);
    if (!index.ok()) {
      return absl::FailedPreconditionError(
          absl::StrCat("KnowledgeIncomplete: reference lacks SNP ", id));
    }
    columns.push_back(*index);
  }
  const GenotypeMatrix projected = reference.matrix().SelectColumns(columns);
  MafVector maf = ComputeMaf(projected);
  const PackedColumns packed(projected);
  const size_t k = candidate_ids.size();
  std::vector<JointTable> tables(k < 2 ? 0 : k * (k - 1) / 2);
  ParallelFor(k, [&](size_t i) {
    size_t index = i * (2 * k - i - 1) / 2;
    for (size_t j = i + 1; j < k; ++j, ++index) {
      tables[index] = Normalize(packed.JointCounts(i, j), projected.rows());
    }
  });
  return Create(std::move(candidate_ids), std::move(maf), std::move(tables));
}

absl::StatusOr<AdversaryKnowledge> AdversaryKnowledge::Create(
    std::vector<std::string> candidate_ids, MafVector ref_maf,
    std::vector<JointTable> pair_tables) {
  const size_t k = candidate_ids.size();
  if (ref_maf.size() != k) {
    return absl::FailedPreconditionError(absl::StrCat(
        "KnowledgeIncomplete: ", ref_maf.size(), " MAFs for ", k, " ids"));
  }
  if (pair_tables.size() != (k < 2 ? 0 : k * (k - 1) / 2)) {
    return absl::FailedPreconditionError(
        absl::StrCat("KnowledgeIncomplete: ", pair_tables.size(),
                     " pair tables for ", k, " ids"));
  }
  AdversaryKnowledge knowledge;
  knowledge.candidate_ids_ = std::move(candidate_ids);
  knowledge.ref_maf_ = std::move(ref_maf);
  knowledge.pair_tables_ = std::move(pair_tables);
  return knowledge;
}

size_t AdversaryKnowledge::PairIndex(size_t i, size_t j) const {
  const size_t k = candidate_ids_.size();
  return i * (2 * k - i - 1) / 2 + (j - i - 1);
}

JointTable AdversaryKnowledge::Table(size_t i, size_t j) const {
  if (i < j) return pair_tables_[PairIndex(i, j)];
  return pair_tables_[PairIndex(j, i)].Transposed();
}

namespace {

// Mutable pools of the greedy walk. Removal swaps with the back, which is
// deterministic given the same sequence of operations.
struct Pool {
  std::vector<size_t> items;
  std::vector<size_t> position;

  explicit Pool(size_t n) : items(n), position(n) {
    std::iota(items.begin(), items.end(), size_t{0});
    std::iota(position.begin(), position.end(), size_t{0});
  }
  void Remove(size_t item) {
    const size_t at = position[item];
    const size_t last = items.back();
    items[at] = last;
    position[last] = at;
    items.pop_back();
  }
};

struct AnchorPair {
  size_t column;
  size_t id;
};

AnchorPair GlobalAnchor(const Pool& columns, const Pool& ids,
                        const MafVector& column_maf,
                        const MafVector& ref_maf) {
  double best_diff = std::numeric_limits<double>::infinity();
  double best_margin = -1.0;
  AnchorPair best{columns.items.front(), ids.items.front()};
  for (size_t c : columns.items) {
    double first = std::numeric_limits<double>::infinity();
    double second = std::numeric_limits<double>::infinity();
    size_t first_id = ids.items.front();
    for (size_t id : ids.items) {
      const double diff = std::abs(column_maf[c] - ref_maf[id]);
      if (diff < first || (diff == first && id < first_id)) {
        second = first;
        first = diff;
        first_id = id;
      } else if (diff < second) {
        second = diff;
      }
    }
    const double margin = second - first;
    const bool better_diff = first < best_diff - kTieEpsilon;
    const bool tied_diff = std::abs(first - best_diff) <= kTieEpsilon;
    if (better_diff ||
        (tied_diff && (margin > best_margin ||
                       (margin == best_margin && c < best.column)))) {
      best_diff = std::min(best_diff, first);
      best_margin = margin;
      best = {c, first_id};
    }
  }
  return best;
}

}  // namespace

absl::StatusOr<MatchAssignment> UnshuffleGreedy(
    const Metadata& metadata, const AdversaryKnowledge& knowledge,
    uint64_t seed, const UnshuffleOptions& options) {
  const size_t m = metadata.m();
  if (m < 2) {
    return absl::InvalidArgumentError("metadata needs at least two columns");
  }
  if (knowledge.size() < m) {
    return absl::FailedPreconditionError(
        absl::StrCat("KnowledgeIncomplete: ", knowledge.size(),
                     " candidate ids for ", m, " columns"));
  }
  const MafVector column_maf = ComputeMaf(metadata.matrix);
  const MafVector& ref_maf = knowledge.ref_maf();
  const PackedColumns packed(metadata.matrix);
  const size_t rows = metadata.rows();

  Pool columns(m);
  Pool ids(knowledge.size());
  std::vector<size_t> assigned(m, 0);
  ChaChaStream stream(seed, Fnv1a64("unshuffle"));

  auto assign = [&](size_t column, size_t id) {
    assigned[column] = id;
    columns.Remove(column);
    ids.Remove(id);
  };

  AnchorPair anchor = GlobalAnchor(columns, ids, column_maf, ref_maf);
  assign(anchor.column, anchor.id);
  std::vector<double> distance(m, 0.0);
  while (!columns.items.empty()) {
    const size_t b = ids.items[stream.UniformBelow(ids.items.size())];
    const JointTable reference = knowledge.Table(anchor.id, b);
    double best = std::numeric_limits<double>::infinity();
    for (size_t c : columns.items) {
      distance[c] = TableDistance(
          reference, Normalize(packed.JointCounts(anchor.column, c), rows));
      best = std::min(best, distance[c]);
    }
    if (best > options.stall_distance) {
      anchor = GlobalAnchor(columns, ids, column_maf, ref_maf);
      assign(anchor.column, anchor.id);
      continue;
    }
    size_t chosen = m;
    for (size_t c : columns.items) {
      if (distance[c] > best + options.delta_corr) continue;
      if (chosen == m) {
        chosen = c;
        continue;
      }
      const double maf_c = std::abs(column_maf[c] - ref_maf[b]);
      const double maf_chosen = std::abs(column_maf[chosen] - ref_maf[b]);
      if (maf_c < maf_chosen ||
          (maf_c == maf_chosen &&
           (distance[c] < distance[chosen] ||
            (distance[c] == distance[chosen] && c < chosen)))) {
        chosen = c;
      }
    }
    assign(chosen, b);
    anchor = {chosen, b};
  }

  MatchAssignment result;
  result.column_ids.reserve(m);
  for (size_t c = 0; c < m; ++c) {
    result.column_ids.push_back(knowledge.candidate_ids()[assigned[c]]);
  }
  return result;
}

double UnshufflingAccuracy(const MatchAssignment& assignment,
                           const PermutationVector& q,
                           std::span<const std::string> panel) {
  const size_t m = assignment.column_ids.size();
  if (m == 0) return 0.0;
  size_t correct = 0;
  for (size_t c = 0; c < m && c < q.size(); ++c) {
    correct += q[c] < panel.size() && assignment.column_ids[c] == panel[q[c]];
  }
  return static_cast<double>(correct) / static_cast<double>(m);
}

absl::StatusOr<Metadata> SimulateUnshuffleLevel(const Metadata& metadata,
                                                const PermutationVector& q,
                                                double level, uint64_t seed) {
  const size_t m = metadata.m();
  if (q.size() != m) {
    return absl::InvalidArgumentError("permutation size differs from m");
  }
  if (!(level >= 0.0 && level <= 1.0)) {
    return absl::InvalidArgumentError(
        absl::StrCat("level must lie in [0, 1], got ", level));
  }
  const size_t correct =
      static_cast<size_t>(std::llround(level * static_cast<double>(m)));
  const size_t wrong = m - correct;
  if (wrong == 1) {
    return absl::InvalidArgumentError(absl::StrCat(
        "level ", level, " leaves a single column, which cannot be deranged"));
  }
  ChaChaStream stream(seed, Fnv1a64("unshuffle-level"));
  std::vector<size_t> positions(m);
  std::iota(positions.begin(), positions.end(), size_t{0});
  for (size_t i = 0; i < wrong; ++i) {
    std::swap(positions[i],
              positions[i + stream.UniformBelow(m - i)]);
  }
  // source[s]: which panel position's data lands at panel position s.
  std::vector<size_t> source(m);
  std::iota(source.begin(), source.end(), size_t{0});
  std::vector<size_t> moved(positions.begin(), positions.begin() + wrong);
  if (wrong >= 2) {
    std::vector<size_t> shuffled;
    bool deranged = false;
    while (!deranged) {
      shuffled = moved;
      for (size_t i = shuffled.size(); i-- > 1;) {
        std::swap(shuffled[i], shuffled[stream.UniformBelow(i + 1)]);
      }
      deranged = true;
      for (size_t i = 0; i < moved.size(); ++i) {
        if (shuffled[i] == moved[i]) {
          deranged = false;
          break;
        }
      }
    }
    for (size_t i = 0; i < moved.size(); ++i) source[moved[i]] = shuffled[i];
  }
  const PermutationVector inverse = q.Inverse();
  std::vector<size_t> columns(m);
  for (size_t s = 0; s < m; ++s) columns[s] = inverse[source[s]];
  return Metadata{metadata.row_ids, metadata.matrix.SelectColumns(columns)};
}

absl::StatusOr<GenotypeMatrix> AlignVictims(const GenotypeDataset& victims,
                                            const MatchAssignment& assignment) {
  std::vector<size_t> columns;
  columns.reserve(assignment.column_ids.size());
  for (const std::string& id : assignment.column_ids) {
    auto index = victims.SnpIndex(id);
    if (!index.ok()) {
      return absl::FailedPreconditionError(
          absl::StrCat("victim profiles lack SNP ", id));
    }
    columns.push_back(*index);
  }
  return victims.matrix().SelectColumns(columns);
}

absl::Status PowerConfig::Validate() const {
  if (set_a_size < kMinVictimSet || set_b_size < kMinVictimSet) {
    return absl::InvalidArgumentError(absl::StrCat(
        "DegenerateSets: |A|=", set_a_size, ", |B|=", set_b_size,
        "; both need at least ", kMinVictimSet));
  }
  if (!(fpr_target > 0.0 && fpr_target < 1.0)) {
    return absl::InvalidArgumentError("fpr_target must lie in (0, 1)");
  }
  return absl::OkStatus();
}

std::vector<int> MinHammingScores(const GenotypeMatrix& dataset,
                                  const GenotypeMatrix& victims) {
  const PackedRows packed_dataset(dataset);
  const PackedRows packed_victims(victims);
  std::vector<int> scores(victims.rows(), 0);
  ParallelFor(victims.rows(), [&](size_t v) {
    int best = std::numeric_limits<int>::max();
    for (size_t r = 0; r < dataset.rows(); ++r) {
      best = std::min(best, PackedHamming(packed_victims, v, packed_dataset, r));
    }
    scores[v] = best;
  });
  return scores;
}

namespace {

absl::Status CheckVictimSets(size_t members, size_t nonmembers) {
  if (members < kMinVictimSet || nonmembers < kMinVictimSet) {
    return absl::InvalidArgumentError(absl::StrCat(
        "DegenerateSets: ", members, " members and ", nonmembers,
        " non-members; both need at least ", kMinVictimSet));
  }
  return absl::OkStatus();
}

}  // namespace

absl::StatusOr<PowerResult> MembershipPowerHamming(
    const GenotypeMatrix& unshuffled, const GenotypeMatrix& victims_in,
    const GenotypeMatrix& victims_out, const PowerConfig& config) {
  RETURN_IF_ERROR(CheckVictimSets(victims_in.rows(), victims_out.rows()));
  if (!(config.fpr_target > 0.0 && config.fpr_target < 1.0)) {
    return absl::InvalidArgumentError("fpr_target must lie in (0, 1)");
  }
  if (victims_in.cols() != unshuffled.cols() ||
      victims_out.cols() != unshuffled.cols()) {
    return absl::InvalidArgumentError(
        "LengthMismatch: victims and dataset differ in SNP count");
  }
  std::vector<int> out_scores = MinHammingScores(unshuffled, victims_out);
  const std::vector<int> in_scores = MinHammingScores(unshuffled, victims_in);
  std::sort(out_scores.begin(), out_scores.end());
  const size_t allowed = static_cast<size_t>(
      std::floor(config.fpr_target * static_cast<double>(out_scores.size())));
  const int gamma = allowed >= out_scores.size()
                        ? static_cast<int>(unshuffled.cols()) + 1
                        : out_scores[allowed];
  const auto below = [gamma](const std::vector<int>& scores) {
    return static_cast<double>(std::count_if(
               scores.begin(), scores.end(),
               [gamma](int s) { return s < gamma; })) /
           static_cast<double>(scores.size());
  };
  PowerResult result;
  result.threshold = gamma;
  result.power = below(in_scores);
  result.achieved_fpr = below(out_scores);
  return result;
}

absl::StatusOr<double> LrtScore(std::span<const Genotype> victim,
                                const MafVector& dataset_maf,
                                const MafVector& pop_maf,
                                LrtEncoding encoding) {
  if (victim.size() != dataset_maf.size() || victim.size() != pop_maf.size()) {
    return absl::InvalidArgumentError(absl::StrCat(
        "LengthMismatch: victim has ", victim.size(), " SNPs, MAF vectors ",
        dataset_maf.size(), " and ", pop_maf.size()));
  }
  constexpr double kLo = 1e-6;
  constexpr double kHi = 1.0 - 1e-6;
  double score = 0.0;
  for (size_t j = 0; j < victim.size(); ++j) {
    const double a = std::clamp(dataset_maf[j], kLo, kHi);
    const double p = std::clamp(pop_maf[j], kLo, kHi);
    const double carry = std::log(a / p);
    const double clear = std::log((1.0 - a) / (1.0 - p));
    if (encoding == LrtEncoding::kCarrier) {
      score += victim[j] >= 1 ? carry : clear;
    } else {
      score += victim[j] * carry + (2 - victim[j]) * clear;
    }
  }
  return score;
}

absl::StatusOr<PowerResult> LrtPower(const GenotypeMatrix& members,
                                     const GenotypeMatrix& nonmembers,
                                     const MafVector& dataset_maf,
                                     const MafVector& pop_maf,
                                     double fpr_target, LrtEncoding encoding) {
  RETURN_IF_ERROR(CheckVictimSets(members.rows(), nonmembers.rows()));
  if (!(fpr_target > 0.0 && fpr_target < 1.0)) {
    return absl::InvalidArgumentError("fpr_target must lie in (0, 1)");
  }
  auto scores_of = [&](const GenotypeMatrix& rows)
      -> absl::StatusOr<std::vector<double>> {
    std::vector<double> scores;
    scores.reserve(rows.rows());
    for (size_t r = 0; r < rows.rows(); ++r) {
      ASSIGN_OR_RETURN(double s,
                       LrtScore(rows.row(r), dataset_maf, pop_maf, encoding));
      scores.push_back(s);
    }
    return scores;
  };
  ASSIGN_OR_RETURN(std::vector<double> out_scores, scores_of(nonmembers));
  ASSIGN_OR_RETURN(std::vector<double> in_scores, scores_of(members));
  std::sort(out_scores.begin(), out_scores.end());
  const size_t allowed = static_cast<size_t>(
      std::floor(fpr_target * static_cast<double>(out_scores.size())));
  const double threshold =
      allowed >= out_scores.size()
          ? -std::numeric_limits<double>::infinity()
          : out_scores[out_scores.size() - 1 - allowed];
  const auto above = [threshold](const std::vector<double>& scores) {
    return static_cast<double>(std::count_if(
               scores.begin(), scores.end(),
               [threshold](double s) { return s > threshold; })) /
           static_cast<double>(scores.size());
  };
  PowerResult result;
  result.threshold = threshold;
  result.power = above(in_scores);
  result.achieved_fpr = above(out_scores);
  return result;
}

}  // namespace fedkin
