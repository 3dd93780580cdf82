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

#ifndef FEDKIN_DATASET_IO_H_
#define FEDKIN_DATASET_IO_H_

#include <span>
#include <string>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "absl/strings/string_view.h"
#include "fedkin/genotype.h"
#include "fedkin/population.h"

namespace fedkin {

enum class DatasetFormat { kTsv };

// Text dataset: the first line lists SNP ids; each following line is a
// sample id followed by one genotype token per SNP. Tokens are separated by
// any run of spaces or tabs; blank lines and a trailing '\r' are ignored.
// Errors: NonGenotypeValue, RaggedRow, DuplicateSampleId, DuplicateSnpId,
// EmptyInput (all InvalidArgument).
absl::StatusOr<GenotypeDataset> ParseDataset(
    absl::string_view text, DatasetFormat format = DatasetFormat::kTsv);

// Tab-separated rendering of the same format, '\n' line endings. Output is a
// pure function of the dataset, so equal datasets write equal bytes.
std::string FormatDataset(const GenotypeDataset& dataset);

// CSV with header `id1,id2,degree`; degree is 0, 1, 2 or unrelated.
std::string FormatTruthCsv(const PedigreeTruth& truth);
// Samples in `universe` are registered before the pairs are read.
absl::StatusOr<PedigreeTruth> ParseTruthCsv(
    absl::string_view text, std::span<const std::string> universe);

absl::StatusOr<std::string> ReadTextFile(const std::string& path);
absl::Status WriteTextFile(const std::string& path, absl::string_view content);

absl::StatusOr<GenotypeDataset> ReadDatasetFile(const std::string& path);

}  // namespace fedkin

#endif  // FEDKIN_DATASET_IO_H_
