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

#include "fedkin/degree.h"

namespace fedkin {

absl::string_view DegreeLabel(KinshipDegree degree) {
  switch (degree) {
    case KinshipDegree::kDuplicate:
      return "dup";
    case KinshipDegree::kFirst:
      return "1st";
    case KinshipDegree::kSecond:
      return "2nd";
    case KinshipDegree::kUnrelated:
      return "unrel";
  }
  return "unrel";
}

std::optional<KinshipDegree> ParseDegreeLabel(absl::string_view label) {
  if (label == "dup" || label == "0") return KinshipDegree::kDuplicate;
  if (label == "1st" || label == "1") return KinshipDegree::kFirst;
  if (label == "2nd" || label == "2") return KinshipDegree::kSecond;
  if (label == "unrel" || label == "unrelated") {
    return KinshipDegree::kUnrelated;
  }
  return std::nullopt;
}

}  // namespace fedkin
