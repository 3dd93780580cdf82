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

#ifndef FEDKIN_REPORT_H_
#define FEDKIN_REPORT_H_

#include <optional>
#include <string>
#include <vector>

#include "absl/status/statusor.h"
#include "absl/strings/string_view.h"
#include "fedkin/degree.h"

namespace fedkin {

// One unordered pair of the kinship report. `a` is the lexicographically
// smaller id and is the row whose heterozygote count normalizes phi.
// `phi` is empty when that row has no heterozygous sites.
struct KinshipEntry {
  std::string a;
  std::string b;
  std::optional<double> phi;
  KinshipDegree degree = KinshipDegree::kUnrelated;
  // Coefficient with the roles swapped; only filled on request.
  std::optional<double> phi_reverse;
};

enum class PairScope { kCrossOnly, kAllPairs };

struct KinshipReport {
  std::vector<KinshipEntry> entries;
  PairScope scope = PairScope::kCrossOnly;
};

// CSV `id_a,id_b,phi,degree`, phi with six decimals ("nan" when undefined),
// degree one of dup, 1st, 2nd, unrel.
std::string FormatReportCsv(const KinshipReport& report);
absl::StatusOr<KinshipReport> ParseReportCsv(absl::string_view text);

}  // namespace fedkin

#endif  // FEDKIN_REPORT_H_
