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

#ifndef FEDKIN_DEGREE_H_
#define FEDKIN_DEGREE_H_

#include <optional>

#include "absl/strings/string_view.h"

namespace fedkin {

// Relationship classes up to second degree. Numeric values match the degree.
enum class KinshipDegree {
  kDuplicate = 0,
  kFirst = 1,
  kSecond = 2,
  kUnrelated = 3,
};

inline bool IsRelated(KinshipDegree degree) {
  return degree != KinshipDegree::kUnrelated;
}

// Report labels: dup, 1st, 2nd, unrel.
absl::string_view DegreeLabel(KinshipDegree degree);
std::optional<KinshipDegree> ParseDegreeLabel(absl::string_view label);

}  // namespace fedkin

#endif  // FEDKIN_DEGREE_H_
