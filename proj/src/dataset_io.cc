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

#include <fstream>
#include <sstream>
#include <vector>

#include "absl/strings/str_cat.h"
#include "absl/strings/str_split.h"
#include "absl/strings/strip.h"
#include "fedkin/status_macros.h"

namespace fedkin {
namespace {

std::vector<absl::string_view> Tokens(absl::string_view line) {
  return absl::StrSplit(line, absl::ByAnyChar(" \t"), absl::SkipEmpty());
}

absl::string_view TruthDegreeToken(KinshipDegree degree) {
  switch (degree) {
    case KinshipDegree::kDuplicate:
      return "0";
    case KinshipDegree::kFirst:
      return "1";
    case KinshipDegree::kSecond:
      return "2";
    case KinshipDegree::kUnrelated:
      return "unrelated";
  }
  return "unrelated";
}

}  // namespace

absl::StatusOr<GenotypeDataset> ParseDataset(absl::string_view text,
                                             DatasetFormat format) {
  (void)format;
  std::vector<std::string> snp_ids;
  std::vector<std::string> sample_ids;
  std::vector<Genotype> values;
  bool have_header = false;
  size_t line_number = 0;
  for (absl::string_view line : absl::StrSplit(text, '\n')) {
    ++line_number;
    line = absl::StripSuffix(line, "\r");
    std::vector<absl::string_view> tokens = Tokens(line);
    if (tokens.empty()) continue;
    if (!have_header) {
      for (absl::string_view token : tokens) snp_ids.emplace_back(token);
      have_header = true;
      continue;
    }
    if (tokens.size() != snp_ids.size() + 1) {
      return absl::InvalidArgumentError(absl::StrCat(
          "RaggedRow: line ", line_number, " has ", tokens.size() - 1,
          " genotypes, header has ", snp_ids.size(), " SNPs"));
    }
    sample_ids.emplace_back(tokens[0]);
    for (size_t k = 1; k < tokens.size(); ++k) {
      const absl::string_view token = tokens[k];
      if (token.size() != 1 || token[0] < '0' || token[0] > '2') {
        return absl::InvalidArgumentError(
            absl::StrCat("NonGenotypeValue: '", token, "' at line ",
                         line_number, ", column ", k));
      }
      values.push_back(static_cast<Genotype>(token[0] - '0'));
    }
  }
  if (!have_header) {
    return absl::InvalidArgumentError("EmptyInput: no header line");
  }
  if (sample_ids.empty()) {
    return absl::InvalidArgumentError("EmptyInput: no sample rows");
  }
  const size_t rows = sample_ids.size();
  const size_t cols = snp_ids.size();
  ASSIGN_OR_RETURN(GenotypeMatrix matrix,
                   GenotypeMatrix::Create(rows, cols, std::move(values)));
  return GenotypeDataset::Create(std::move(sample_ids), std::move(snp_ids),
                                 std::move(matrix));
}

std::string FormatDataset(const GenotypeDataset& dataset) {
  std::string out;
  out.reserve(dataset.num_samples() * (dataset.num_snps() * 2 + 16));
  for (size_t k = 0; k < dataset.num_snps(); ++k) {
    if (k > 0) out.push_back('\t');
    out.append(dataset.snp_ids()[k]);
  }
  out.push_back('\n');
  for (size_t i = 0; i < dataset.num_samples(); ++i) {
    out.append(dataset.sample_ids()[i]);
    for (Genotype g : dataset.row(i)) {
      out.push_back('\t');
      out.push_back(static_cast<char>('0' + g));
    }
    out.push_back('\n');
  }
  return out;
}

std::string FormatTruthCsv(const PedigreeTruth& truth) {
  std::string out = "id1,id2,degree\n";
  for (const TruthPair& pair : truth.pairs()) {
    absl::StrAppend(&out, pair.a, ",", pair.b, ",",
                    TruthDegreeToken(pair.degree), "\n");
  }
  return out;
}

absl::StatusOr<PedigreeTruth> ParseTruthCsv(
    absl::string_view text, std::span<const std::string> universe) {
  PedigreeTruth truth;
  for (const std::string& id : universe) truth.AddSample(id);
  size_t line_number = 0;
  for (absl::string_view line : absl::StrSplit(text, '\n')) {
    ++line_number;
    line = absl::StripSuffix(line, "\r");
    if (line.empty()) continue;
    std::vector<absl::string_view> fields = absl::StrSplit(line, ',');
    if (fields.size() != 3) {
      return absl::InvalidArgumentError(
          absl::StrCat("truth line ", line_number, ": expected 3 fields"));
    }
    if (line_number == 1 && fields[0] == "id1") continue;
    auto degree = ParseDegreeLabel(fields[2]);
    if (!degree.has_value()) {
      return absl::InvalidArgumentError(absl::StrCat(
          "truth line ", line_number, ": bad degree '", fields[2], "'"));
    }
    RETURN_IF_ERROR(truth.AddPair(std::string(fields[0]),
                                  std::string(fields[1]), *degree));
  }
  return truth;
}

absl::StatusOr<std::string> ReadTextFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return absl::NotFoundError(absl::StrCat("cannot open ", path));
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

absl::Status WriteTextFile(const std::string& path, absl::string_view content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    return absl::PermissionDeniedError(absl::StrCat("cannot write ", path));
  }
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!out) return absl::DataLossError(absl::StrCat("short write to ", path));
  return absl::OkStatus();
}

absl::StatusOr<GenotypeDataset> ReadDatasetFile(const std::string& path) {
  ASSIGN_OR_RETURN(std::string text, ReadTextFile(path));
  return ParseDataset(text);
}

}  // namespace fedkin
