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

#include <algorithm>
#include <utility>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"

namespace fedkin {

absl::StatusOr<GenotypeMatrix> GenotypeMatrix::Create(
    size_t rows, size_t cols, std::vector<Genotype> values) {
  if (values.size() != rows * cols) {
    return absl::InvalidArgumentError(
        absl::StrCat("RaggedRow: expected ", rows * cols, " values, got ",
                     values.size()));
  }
  for (size_t i = 0; i < values.size(); ++i) {
    if (values[i] > kMaxGenotype) {
      return absl::InvalidArgumentError(absl::StrCat(
          "NonGenotypeValue: ", static_cast<int>(values[i]), " at row ",
          cols == 0 ? 0 : i / cols, ", column ", cols == 0 ? 0 : i % cols));
    }
  }
  GenotypeMatrix matrix;
  matrix.rows_ = rows;
  matrix.cols_ = cols;
  matrix.values_ = std::move(values);
  return matrix;
}

void GenotypeMatrix::AppendRow(std::span<const Genotype> row) {
  if (rows_ == 0 && cols_ == 0) cols_ = row.size();
  values_.insert(values_.end(), row.begin(), row.end());
  ++rows_;
}

void GenotypeMatrix::AppendRows(const GenotypeMatrix& other) {
  if (other.rows_ == 0) return;
  if (rows_ == 0 && cols_ == 0) cols_ = other.cols_;
  values_.insert(values_.end(), other.values_.begin(), other.values_.end());
  rows_ += other.rows_;
}

GenotypeMatrix GenotypeMatrix::SelectColumns(
    std::span<const size_t> columns) const {
  GenotypeMatrix out(rows_, columns.size());
  for (size_t r = 0; r < rows_; ++r) {
    const Genotype* src = values_.data() + r * cols_;
    Genotype* dst = out.values_.data() + r * columns.size();
    for (size_t j = 0; j < columns.size(); ++j) dst[j] = src[columns[j]];
  }
  return out;
}

GenotypeMatrix GenotypeMatrix::SelectRows(std::span<const size_t> rows) const {
  GenotypeMatrix out(rows.size(), cols_);
  for (size_t i = 0; i < rows.size(); ++i) {
    std::copy_n(values_.begin() + rows[i] * cols_, cols_,
                out.values_.begin() + i * cols_);
  }
  return out;
}

absl::StatusOr<GenotypeDataset> GenotypeDataset::Create(
    std::vector<std::string> sample_ids, std::vector<std::string> snp_ids,
    GenotypeMatrix matrix) {
  if (sample_ids.empty()) {
    return absl::InvalidArgumentError("EmptyInput: dataset has no samples");
  }
  if (matrix.rows() != sample_ids.size() || matrix.cols() != snp_ids.size()) {
    return absl::InvalidArgumentError(absl::StrCat(
        "RaggedRow: matrix is ", matrix.rows(), "x", matrix.cols(),
        " but ids describe ", sample_ids.size(), "x", snp_ids.size()));
  }
  GenotypeDataset dataset;
  for (size_t i = 0; i < sample_ids.size(); ++i) {
    if (!dataset.sample_index_.emplace(sample_ids[i], i).second) {
      return absl::InvalidArgumentError(
          absl::StrCat("DuplicateSampleId: ", sample_ids[i]));
    }
  }
  for (size_t i = 0; i < snp_ids.size(); ++i) {
    if (!dataset.snp_index_.emplace(snp_ids[i], i).second) {
      return absl::InvalidArgumentError(
          absl::StrCat("DuplicateSnpId: ", snp_ids[i]));
    }
  }
  dataset.sample_ids_ = std::move(sample_ids);
  dataset.snp_ids_ = std::move(snp_ids);
  dataset.matrix_ = std::move(matrix);
  return dataset;
}

absl::StatusOr<size_t> GenotypeDataset::SampleIndex(
    const std::string& id) const {
  auto it = sample_index_.find(id);
  if (it == sample_index_.end()) {
    return absl::NotFoundError(absl::StrCat("unknown sample id ", id));
  }
  return it->second;
}

absl::StatusOr<size_t> GenotypeDataset::SnpIndex(const std::string& id) const {
  auto it = snp_index_.find(id);
  if (it == snp_index_.end()) {
    return absl::NotFoundError(absl::StrCat("unknown SNP id ", id));
  }
  return it->second;
}

}  // namespace fedkin
