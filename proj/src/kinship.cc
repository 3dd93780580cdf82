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

#include "fedkin/kinship.h"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <string>
#include <utility>

#include "absl/container/flat_hash_map.h"
#include "absl/container/flat_hash_set.h"
#include "absl/strings/numbers.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_format.h"
#include "absl/strings/str_split.h"
#include "absl/strings/strip.h"
#include "fedkin/parallel.h"

namespace fedkin {

absl::StatusOr<KingCounts> ComputeKingCounts(std::span<const Genotype> g_i,
                                             std::span<const Genotype> g_j) {
  if (g_i.size() != g_j.size()) {
    return absl::InvalidArgumentError(absl::StrCat(
        "LengthMismatch: rows of length ", g_i.size(), " and ", g_j.size()));
  }
  KingCounts counts;
  for (size_t k = 0; k < g_i.size(); ++k) {
    counts.n11 += g_i[k] == 1 && g_j[k] == 1;
    counts.n02 += g_i[k] == 0 && g_j[k] == 2;
    counts.n20 += g_i[k] == 2 && g_j[k] == 0;
    counts.n1star += g_i[k] == 1;
    counts.nstar1 += g_j[k] == 1;
  }
  return counts;
}

KingCounts PackedKingCounts(const PackedRows& a, size_t i, const PackedRows& b,
                            size_t j) {
  auto het_i = a.het(i), alt_i = a.alt(i);
  auto het_j = b.het(j), alt_j = b.alt(j);
  KingCounts counts;
  for (size_t w = 0; w < het_i.size(); ++w) {
    const uint64_t valid = a.valid_mask(w);
    const uint64_t ref_i = ~(het_i[w] | alt_i[w]) & valid;
    const uint64_t ref_j = ~(het_j[w] | alt_j[w]) & valid;
    counts.n11 += std::popcount(het_i[w] & het_j[w]);
    counts.n02 += std::popcount(ref_i & alt_j[w]);
    counts.n20 += std::popcount(alt_i[w] & ref_j);
    counts.n1star += std::popcount(het_i[w]);
    counts.nstar1 += std::popcount(het_j[w]);
  }
  return counts;
}

std::optional<double> KingCoefficient(const KingCounts& counts) {
  if (counts.n1star == 0) return std::nullopt;
  const double numerator = 2.0 * counts.n11 -
                           4.0 * (static_cast<double>(counts.n02) + counts.n20) -
                           static_cast<double>(counts.nstar1) + counts.n1star;
  return numerator / (4.0 * counts.n1star);
}

KinshipDegree ClassifyDegree(std::optional<double> phi) {
  if (!phi.has_value()) return KinshipDegree::kUnrelated;
  if (*phi > kDuplicateThreshold) return KinshipDegree::kDuplicate;
  if (*phi > kFirstDegreeThreshold) return KinshipDegree::kFirst;
  if (*phi > kSecondDegreeThreshold) return KinshipDegree::kSecond;
  return KinshipDegree::kUnrelated;
}

namespace {

struct RowRef {
  size_t source;
  size_t row;
};

}  // namespace

absl::StatusOr<KinshipReport> PairwiseKinship(
    std::span<const Metadata> metadatas, const PairwiseOptions& options) {
  KinshipReport report;
  report.scope = options.scope;
  if (metadatas.empty()) return report;
  const size_t m = metadatas[0].m();
  std::vector<PackedRows> packed;
  packed.reserve(metadatas.size());
  absl::flat_hash_set<std::string> seen;
  std::vector<RowRef> refs;
  for (size_t s = 0; s < metadatas.size(); ++s) {
    const Metadata& metadata = metadatas[s];
    if (metadata.m() != m) {
      return absl::InvalidArgumentError(
          absl::StrCat("ColumnCountMismatch: metadata ", s, " has ",
                       metadata.m(), " columns, expected ", m));
    }
    if (metadata.row_ids.size() != metadata.rows()) {
      return absl::InvalidArgumentError(
          absl::StrCat("metadata ", s, " row ids do not match its rows"));
    }
    for (size_t r = 0; r < metadata.rows(); ++r) {
      if (!seen.insert(metadata.row_ids[r]).second) {
        return absl::InvalidArgumentError(absl::StrCat(
            "DuplicatePseudonym: ", metadata.row_ids[r], " appears twice"));
      }
      refs.push_back({s, r});
    }
    packed.emplace_back(metadata.matrix);
  }

  // Pairs (x, y) with x < y in `refs` order, grouped by x for parallelism.
  std::vector<std::vector<KinshipEntry>> per_row(refs.size());
  ParallelFor(refs.size(), [&](size_t x) {
    const RowRef& rx = refs[x];
    const std::string& id_x = metadatas[rx.source].row_ids[rx.row];
    for (size_t y = x + 1; y < refs.size(); ++y) {
      const RowRef& ry = refs[y];
      if (options.scope == PairScope::kCrossOnly && rx.source == ry.source) {
        continue;
      }
      const std::string& id_y = metadatas[ry.source].row_ids[ry.row];
      const bool x_first = id_x < id_y;
      const RowRef& ra = x_first ? rx : ry;
      const RowRef& rb = x_first ? ry : rx;
      KinshipEntry entry;
      entry.a = x_first ? id_x : id_y;
      entry.b = x_first ? id_y : id_x;
      entry.phi = KingCoefficient(PackedKingCounts(
          packed[ra.source], ra.row, packed[rb.source], rb.row));
      entry.degree = ClassifyDegree(entry.phi);
      if (options.both_orientations) {
        entry.phi_reverse = KingCoefficient(PackedKingCounts(
            packed[rb.source], rb.row, packed[ra.source], ra.row));
      }
      per_row[x].push_back(std::move(entry));
    }
  });
  size_t total = 0;
  for (const auto& chunk : per_row) total += chunk.size();
  report.entries.reserve(total);
  for (auto& chunk : per_row) {
    std::move(chunk.begin(), chunk.end(), std::back_inserter(report.entries));
  }
  std::sort(report.entries.begin(), report.entries.end(),
            [](const KinshipEntry& l, const KinshipEntry& r) {
              return std::tie(l.a, l.b) < std::tie(r.a, r.b);
            });
  return report;
}

namespace {

std::pair<std::string, std::string> UnorderedKey(const std::string& a,
                                                 const std::string& b) {
  return a < b ? std::make_pair(a, b) : std::make_pair(b, a);
}

}  // namespace

absl::StatusOr<KinshipMetricsResult> ComputeKinshipMetrics(
    std::span<const KinshipEntry> entries, const PedigreeTruth& truth) {
  absl::flat_hash_map<std::pair<std::string, std::string>, KinshipDegree>
      predicted;
  KinshipMetricsResult result;
  size_t all_pairs_correct = 0;
  for (const KinshipEntry& entry : entries) {
    for (const std::string* id : {&entry.a, &entry.b}) {
      if (!truth.HasSample(*id)) {
        return absl::InvalidArgumentError(
            absl::StrCat("MissingTruth: no truth for sample ", *id));
      }
    }
    predicted[UnorderedKey(entry.a, entry.b)] = entry.degree;
    const KinshipDegree actual = truth.DegreeOf(entry.a, entry.b);
    all_pairs_correct += actual == entry.degree;
    if (IsRelated(entry.degree)) {
      ++result.predicted_related;
      result.true_positives += IsRelated(actual);
    }
  }
  size_t exact = 0;
  size_t found = 0;
  for (const TruthPair& pair : truth.pairs()) {
    if (!IsRelated(pair.degree)) continue;
    ++result.related_pairs;
    auto it = predicted.find(UnorderedKey(pair.a, pair.b));
    const KinshipDegree guess =
        it == predicted.end() ? KinshipDegree::kUnrelated : it->second;
    exact += guess == pair.degree;
    found += IsRelated(guess);
  }
  const double nan = std::numeric_limits<double>::quiet_NaN();
  result.accuracy = result.related_pairs == 0
                        ? nan
                        : static_cast<double>(exact) / result.related_pairs;
  result.recall = result.related_pairs == 0
                      ? nan
                      : static_cast<double>(found) / result.related_pairs;
  result.precision =
      result.predicted_related == 0
          ? nan
          : static_cast<double>(result.true_positives) /
                result.predicted_related;
  result.all_pairs_accuracy =
      entries.empty() ? nan
                      : static_cast<double>(all_pairs_correct) / entries.size();
  return result;
}

std::string FormatReportCsv(const KinshipReport& report) {
  std::string out = "id_a,id_b,phi,degree\n";
  for (const KinshipEntry& entry : report.entries) {
    absl::StrAppend(&out, entry.a, ",", entry.b, ",",
                    entry.phi.has_value() ? absl::StrFormat("%.6f", *entry.phi)
                                          : std::string("nan"),
                    ",", DegreeLabel(entry.degree), "\n");
  }
  return out;
}

absl::StatusOr<KinshipReport> ParseReportCsv(absl::string_view text) {
  KinshipReport report;
  size_t line_number = 0;
  for (absl::string_view line : absl::StrSplit(text, '\n')) {
    ++line_number;
    line = absl::StripSuffix(line, "\r");
    if (line.empty()) continue;
    std::vector<absl::string_view> fields = absl::StrSplit(line, ',');
    if (fields.size() != 4) {
      return absl::InvalidArgumentError(
          absl::StrCat("report line ", line_number, ": expected 4 fields"));
    }
    if (line_number == 1 && fields[0] == "id_a") continue;
    KinshipEntry entry;
    entry.a = std::string(fields[0]);
    entry.b = std::string(fields[1]);
    double phi = 0.0;
    if (fields[2] != "nan") {
      if (!absl::SimpleAtod(fields[2], &phi)) {
        return absl::InvalidArgumentError(
            absl::StrCat("report line ", line_number, ": bad phi"));
      }
      entry.phi = phi;
    }
    auto degree = ParseDegreeLabel(fields[3]);
    if (!degree.has_value()) {
      return absl::InvalidArgumentError(
          absl::StrCat("report line ", line_number, ": bad degree"));
    }
    entry.degree = *degree;
    report.entries.push_back(std::move(entry));
  }
  return report;
}

}  // namespace fedkin
