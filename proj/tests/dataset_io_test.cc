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

#include "fedkin/dataset_io.h"

#include <string>
#include <vector>

#include "fedkin/population.h"
#include "gtest/gtest.h"
#include "test_util.h"

namespace fedkin {
namespace {

using ::fedkin::testing::HasTag;
using ::fedkin::testing::Matrix;

TEST(ParseDatasetTest, MinimalInput) {
  auto dataset = ParseDataset("rs1 rs2\ns1 0 1\n");
  FEDKIN_ASSERT_OK(dataset);
  EXPECT_EQ(dataset->sample_ids(), std::vector<std::string>{"s1"});
  EXPECT_EQ(dataset->snp_ids(), (std::vector<std::string>{"rs1", "rs2"}));
  EXPECT_EQ(dataset->matrix(), Matrix({{0, 1}}));
}

TEST(ParseDatasetTest, PreservesOrderAndToleratesWhitespace) {
  auto dataset =
      ParseDataset("b\ta  c\r\n\nz 2 1 0\r\ny\t0\t0 1\n\n");
  FEDKIN_ASSERT_OK(dataset);
  EXPECT_EQ(dataset->sample_ids(), (std::vector<std::string>{"z", "y"}));
  EXPECT_EQ(dataset->snp_ids(), (std::vector<std::string>{"b", "a", "c"}));
  EXPECT_EQ(dataset->matrix(), Matrix({{2, 1, 0}, {0, 0, 1}}));
}

TEST(ParseDatasetTest, Errors) {
  EXPECT_TRUE(HasTag(ParseDataset("rs1 rs2\ns1 0 3\n").status(),
                     "NonGenotypeValue"));
  EXPECT_TRUE(HasTag(ParseDataset("rs1 rs2\ns1 0 x\n").status(),
                     "NonGenotypeValue"));
  EXPECT_TRUE(HasTag(ParseDataset("rs1 rs2\ns1 0 -1\n").status(),
                     "NonGenotypeValue"));
  EXPECT_TRUE(HasTag(ParseDataset("rs1 rs2\ns1 0 1\ns1 1 1\n").status(),
                     "DuplicateSampleId"));
  EXPECT_TRUE(HasTag(ParseDataset("rs1 rs1\ns1 0 1\n").status(),
                     "DuplicateSnpId"));
  EXPECT_TRUE(HasTag(ParseDataset("rs1 rs2\ns1 0\n").status(), "RaggedRow"));
  EXPECT_TRUE(HasTag(ParseDataset("rs1 rs2\ns1 0 1 1\n").status(),
                     "RaggedRow"));
  EXPECT_TRUE(HasTag(ParseDataset("").status(), "EmptyInput"));
  EXPECT_TRUE(HasTag(ParseDataset("rs1 rs2\n").status(), "EmptyInput"));
}

TEST(FormatDatasetTest, RoundTripIsByteStable) {
  const std::string text = "rs1\trs2\trs3\ns1\t0\t1\t2\ns2\t2\t2\t0\n";
  auto dataset = ParseDataset(text);
  FEDKIN_ASSERT_OK(dataset);
  EXPECT_EQ(FormatDataset(*dataset), text);
  auto again = ParseDataset(FormatDataset(*dataset));
  FEDKIN_ASSERT_OK(again);
  EXPECT_EQ(again->matrix(), dataset->matrix());
}

TEST(TruthCsvTest, RoundTrip) {
  PedigreeTruth truth;
  for (const char* id : {"a", "b", "c", "d"}) truth.AddSample(id);
  ASSERT_TRUE(truth.AddPair("a", "b", KinshipDegree::kFirst).ok());
  ASSERT_TRUE(truth.AddPair("c", "a", KinshipDegree::kSecond).ok());
  ASSERT_TRUE(truth.AddPair("d", "b", KinshipDegree::kDuplicate).ok());
  const std::string csv = FormatTruthCsv(truth);
  EXPECT_EQ(csv, "id1,id2,degree\na,b,1\nc,a,2\nd,b,0\n");
  const std::vector<std::string> universe = {"a", "b", "c", "d"};
  auto parsed = ParseTruthCsv(csv, universe);
  FEDKIN_ASSERT_OK(parsed);
  EXPECT_EQ(parsed->DegreeOf("b", "a"), KinshipDegree::kFirst);
  EXPECT_EQ(parsed->DegreeOf("a", "c"), KinshipDegree::kSecond);
  EXPECT_EQ(parsed->DegreeOf("b", "d"), KinshipDegree::kDuplicate);
  EXPECT_EQ(parsed->DegreeOf("c", "d"), KinshipDegree::kUnrelated);
}

TEST(TruthCsvTest, RejectsUnknownSample) {
  const std::vector<std::string> universe = {"a"};
  EXPECT_FALSE(ParseTruthCsv("id1,id2,degree\na,b,1\n", universe).ok());
}

}  // namespace
}  // namespace fedkin
