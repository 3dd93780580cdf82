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

#ifndef FEDKIN_TESTS_TEST_UTIL_H_
#define FEDKIN_TESTS_TEST_UTIL_H_

#include <initializer_list>
#include <string>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "absl/strings/match.h"
#include "fedkin/genotype.h"
#include "fedkin/random.h"
#include "gtest/gtest.h"

#define FEDKIN_ASSERT_OK(expr) \
  ASSERT_TRUE((expr).ok()) << ::fedkin::testing::StatusOf(expr)
#define FEDKIN_EXPECT_OK(expr) \
  EXPECT_TRUE((expr).ok()) << ::fedkin::testing::StatusOf(expr)

namespace fedkin::testing {

inline absl::Status StatusOf(const absl::Status& status) { return status; }
template <typename T>
absl::Status StatusOf(const absl::StatusOr<T>& value) {
  return value.status();
}

inline GenotypeMatrix Matrix(
    std::initializer_list<std::initializer_list<int>> rows) {
  GenotypeMatrix matrix;
  for (const auto& row : rows) {
    std::vector<Genotype> values(row.begin(), row.end());
    matrix.AppendRow(values);
  }
  return matrix;
}

inline std::vector<Genotype> Row(std::initializer_list<int> values) {
  return std::vector<Genotype>(values.begin(), values.end());
}

inline GenotypeMatrix RandomMatrix(size_t rows, size_t cols, uint64_t seed) {
  ChaChaStream stream(seed, 0);
  GenotypeMatrix matrix(rows, cols);
  for (size_t r = 0; r < rows; ++r) {
    for (size_t c = 0; c < cols; ++c) {
      matrix.set(r, c, static_cast<Genotype>(stream.UniformBelow(3)));
    }
  }
  return matrix;
}

inline std::vector<std::string> Ids(const std::string& prefix, size_t n) {
  std::vector<std::string> ids;
  for (size_t i = 0; i < n; ++i) ids.push_back(prefix + std::to_string(i));
  return ids;
}

// True when `status` failed with a message starting with `tag`.
inline bool HasTag(const absl::Status& status, const std::string& tag) {
  return !status.ok() && absl::StartsWith(status.message(), tag);
}

}  // namespace fedkin::testing

#endif  // FEDKIN_TESTS_TEST_UTIL_H_
