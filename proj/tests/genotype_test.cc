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

#include "fedkin/genotype.h"

#include <string>
#include <vector>

#include "gtest/gtest.h"
#include "test_util.h"

namespace fedkin {
namespace {

using ::fedkin::testing::HasTag;
using ::fedkin::testing::Matrix;

TEST(GenotypeMatrixTest, CreateRejectsOutOfRangeValues) {
  EXPECT_TRUE(GenotypeMatrix::Create(1, 3, {0, 1, 2}).ok());
  EXPECT_FALSE(GenotypeMatrix::Create(1, 3, {0, 1, 3}).ok());
  EXPECT_FALSE(GenotypeMatrix::Create(2, 2, {0, 1, 2}).ok());
}

TEST(GenotypeMatrixTest, SelectColumnsAndRows) {
  const GenotypeMatrix m = Matrix({{0, 1, 2}, {2, 2, 0}});
  const std::vector<size_t> columns = {2, 0};
  EXPECT_EQ(m.SelectColumns(columns), Matrix({{2, 0}, {0, 2}}));
  const std::vector<size_t> rows = {1, 1, 0};
  EXPECT_EQ(m.SelectRows(rows), Matrix({{2, 2, 0}, {2, 2, 0}, {0, 1, 2}}));
}

TEST(GenotypeMatrixTest, AppendRowsStacks) {
  GenotypeMatrix m = Matrix({{0, 1}});
  m.AppendRows(Matrix({{2, 2}, {1, 0}}));
  EXPECT_EQ(m, Matrix({{0, 1}, {2, 2}, {1, 0}}));
}

TEST(GenotypeDatasetTest, CreateIndexesIds) {
  auto dataset = GenotypeDataset::Create({"s1", "s2"}, {"rs1", "rs2", "rs3"},
                                         Matrix({{0, 1, 2}, {1, 1, 1}}));
  FEDKIN_ASSERT_OK(dataset);
  EXPECT_EQ(dataset->num_samples(), 2u);
  EXPECT_EQ(dataset->num_snps(), 3u);
  EXPECT_EQ(*dataset->SampleIndex("s2"), 1u);
  EXPECT_EQ(*dataset->SnpIndex("rs3"), 2u);
  EXPECT_EQ(dataset->SnpIndex("rs9").status().code(),
            absl::StatusCode::kNotFound);
}

TEST(GenotypeDatasetTest, CreateErrors) {
  EXPECT_TRUE(HasTag(
      GenotypeDataset::Create({}, {"rs1"}, GenotypeMatrix()).status(),
      "EmptyInput"));
  EXPECT_TRUE(HasTag(GenotypeDataset::Create({"s1", "s1"}, {"rs1"},
                                             Matrix({{0}, {1}}))
                         .status(),
                     "DuplicateSampleId"));
  EXPECT_TRUE(HasTag(GenotypeDataset::Create({"s1"}, {"rs1", "rs1"},
                                             Matrix({{0, 1}}))
                         .status(),
                     "DuplicateSnpId"));
  EXPECT_TRUE(HasTag(
      GenotypeDataset::Create({"s1"}, {"rs1", "rs2"}, Matrix({{0}})).status(),
      "RaggedRow"));
}

}  // namespace
}  // namespace fedkin
