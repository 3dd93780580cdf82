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

#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "absl/strings/match.h"
#include "absl/strings/str_cat.h"
#include "gtest/gtest.h"
#include "json.hpp"

namespace fedkin {
namespace {

namespace fs = std::filesystem;

std::string Slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void Spit(const fs::path& path, const std::string& text) {
  std::ofstream(path, std::ios::binary) << text;
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           absl::StrCat("fedkin_cli_", ::testing::UnitTest::GetInstance()
                                           ->current_test_info()
                                           ->name());
    fs::remove_all(dir_);
    fs::create_directories(dir_);
    Spit(dir_ / "small.toml",
         "[population]\nsnp_count = 2000\n[protocol]\nm = 300\n"
         "epsilon = \"inf\"\n[sweep]\nm = [300]\n");
  }
  void TearDown() override { fs::remove_all(dir_); }

  // Runs the binary with stdout and stderr captured; returns the exit code.
  int Run(const std::string& args) {
    const std::string command =
        absl::StrCat(FEDKIN_CLI_PATH, " ", args, " > ", (dir_ / "stdout").string(),
                     " 2> ", (dir_ / "stderr").string());
    const int raw = std::system(command.c_str());
    stdout_ = Slurp(dir_ / "stdout");
    stderr_ = Slurp(dir_ / "stderr");
    return WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  }

  std::string P(const std::string& name) const { return (dir_ / name).string(); }

  fs::path dir_;
  std::string stdout_;
  std::string stderr_;
};

TEST_F(CliTest, GenerateIsReproducible) {
  ASSERT_EQ(Run(absl::StrCat("generate --config ", P("small.toml"),
                             " --seed 5 --out ", P("one"))),
            0)
      << stderr_;
  ASSERT_EQ(Run(absl::StrCat("generate --config ", P("small.toml"),
                             " --seed 5 --out ", P("two"))),
            0);
  for (const char* file :
       {"dataset_a.tsv", "dataset_b.tsv", "truth.csv", "agreement.json"}) {
    const std::string one = Slurp(dir_ / "one" / file);
    EXPECT_FALSE(one.empty()) << file;
    EXPECT_EQ(one, Slurp(dir_ / "two" / file)) << file;
  }
  ASSERT_EQ(Run(absl::StrCat("generate --config ", P("small.toml"),
                             " --seed 6 --out ", P("three"))),
            0);
  EXPECT_NE(Slurp(dir_ / "one" / "dataset_a.tsv"),
            Slurp(dir_ / "three" / "dataset_a.tsv"));
}

TEST_F(CliTest, EndToEndProtocolAndAttacks) {
  ASSERT_EQ(Run(absl::StrCat("generate --config ", P("small.toml"),
                             " --out ", P("gen"))),
            0)
      << stderr_;
  const std::string agreement = P("gen/agreement.json");
  ASSERT_EQ(Run(absl::StrCat("prepare-metadata --dataset ",
                             P("gen/dataset_a.tsv"), " --agreement ",
                             agreement, " --n-prime 10 --label ra --seed 1",
                             " --out ", P("share"))),
            0)
      << stderr_;
  ASSERT_EQ(Run(absl::StrCat("prepare-metadata --dataset ",
                             P("gen/dataset_b.tsv"), " --agreement ",
                             agreement, " --label rb --seed 2 --out ",
                             P("share"))),
            0)
      << stderr_;
  ASSERT_EQ(Run(absl::StrCat(
                "compute-kinship --metadata ", P("share/ra.metadata.tsv"), " ",
                P("share/rb.metadata.tsv"), " --synthetic ",
                P("share/ra.synthetic.txt"), " --pseudonyms ",
                P("share/ra.pseudonyms.csv"), " ", P("share/rb.pseudonyms.csv"))),
            0)
      << stderr_;
  EXPECT_TRUE(absl::StrContains(stdout_, ",1st\n"));
  EXPECT_FALSE(absl::StrContains(stdout_, "ra-"));
  EXPECT_FALSE(absl::StrContains(stdout_, "rb-"));

  ASSERT_EQ(Run(absl::StrCat("prepare-metadata --dataset ",
                             P("gen/dataset_a.tsv"), " --agreement ",
                             agreement, " --label plain --out ", P("share"))),
            0);
  std::string panel;
  const nlohmann::json parsed = nlohmann::json::parse(Slurp(agreement));
  for (const auto& id : parsed["panel"]) {
    absl::StrAppend(&panel, id.get<std::string>(), "\n");
  }
  Spit(dir_ / "candidates.txt", panel);
  ASSERT_EQ(Run(absl::StrCat("attack unshuffle --metadata ",
                             P("share/plain.metadata.tsv"), " --reference ",
                             P("gen/dataset_a.tsv"), " --candidates ",
                             P("candidates.txt"), " --agreement ", agreement,
                             " --out ", P("assignment.csv"))),
            0)
      << stderr_;
  // 65 samples leave many MAF ties, so a few columns are missed.
  double accuracy = 0.0;
  ASSERT_EQ(std::sscanf(stderr_.c_str(), "unshuffling_accuracy %lf",
                        &accuracy),
            1)
      << stderr_;
  EXPECT_GT(accuracy, 0.9);
  EXPECT_TRUE(absl::StartsWith(Slurp(dir_ / "assignment.csv"),
                               "column,snp_id\nc0,"));

  ASSERT_EQ(Run(absl::StrCat("attack membership --metadata ",
                             P("share/plain.metadata.tsv"), " --assignment ",
                             P("assignment.csv"), " --members ",
                             P("gen/dataset_a.tsv"), " --nonmembers ",
                             P("gen/dataset_b.tsv"))),
            0)
      << stderr_;
  EXPECT_TRUE(absl::StrContains(stdout_, "\"power\":1,")) << stdout_;
}

TEST_F(CliTest, ExperimentWritesRecords) {
  Spit(dir_ / "exp.toml",
       "trials = 2\n[population]\nsnp_count = 1000\n[sweep]\nm = [100]\n"
       "epsilon = [5]\n");
  ASSERT_EQ(Run(absl::StrCat("exp kinship --config ", P("exp.toml"), " --out ",
                             P("exp"))),
            0)
      << stderr_;
  const std::string ndjson = Slurp(dir_ / "exp" / "kinship.ndjson");
  EXPECT_EQ(std::count(ndjson.begin(), ndjson.end(), '\n'), 2);
  EXPECT_FALSE(Slurp(dir_ / "exp" / "kinship.csv").empty());
}

TEST_F(CliTest, ExitCodes) {
  EXPECT_EQ(Run("no-such-verb"), 2);
  EXPECT_EQ(Run("generate --bogus-flag"), 2);
  Spit(dir_ / "bad.toml", "trails = 3\n");
  EXPECT_EQ(Run(absl::StrCat("generate --config ", P("bad.toml"), " --out ",
                             P("x"))),
            2);
  EXPECT_TRUE(absl::StrContains(stderr_, "ConfigError"));
  Spit(dir_ / "invalid.toml", "[protocol]\nm = 1\n");
  EXPECT_EQ(Run(absl::StrCat("exp unshuffle --config ", P("invalid.toml"),
                             " --out ", P("x"))),
            2);
  EXPECT_EQ(Run(absl::StrCat("generate --config ", P("missing.toml"))), 2);
  Spit(dir_ / "broken.tsv", "sample_id\trs1\ns1\t7\n");
  Spit(dir_ / "agreement.json", "{\"panel\":[\"rs1\",\"rs2\"],\"seed_u\":\"1\"}");
  EXPECT_EQ(Run(absl::StrCat("prepare-metadata --dataset ", P("broken.tsv"),
                             " --agreement ", P("agreement.json"), " --out ",
                             P("x"))),
            3);
  EXPECT_EQ(Run(absl::StrCat("compute-kinship --metadata ", P("nope.tsv"))),
            3);
}

}  // namespace
}  // namespace fedkin
