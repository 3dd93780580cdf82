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

#ifndef FEDKIN_GENOTYPE_H_
#define FEDKIN_GENOTYPE_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "absl/container/flat_hash_map.h"
#include "absl/status/statusor.h"

namespace fedkin {

// Count of minor alleles at a biallelic SNP: 0, 1 or 2.
using Genotype = uint8_t;

inline constexpr Genotype kMaxGenotype = 2;

inline bool IsValidGenotype(int value) { return value >= 0 && value <= 2; }

// Dense row-major sample-by-SNP matrix of genotypes. Every stored value is in
// {0, 1, 2}; construction through Create() checks this.
class GenotypeMatrix {
 public:
  GenotypeMatrix() = default;
  GenotypeMatrix(size_t rows, size_t cols)
      : rows_(rows), cols_(cols), values_(rows * cols, 0) {}

  static absl::StatusOr<GenotypeMatrix> Create(size_t rows, size_t cols,
                                               std::vector<Genotype> values);

  size_t rows() const { return rows_; }
  size_t cols() const { return cols_; }
  bool empty() const { return rows_ == 0; }

  Genotype at(size_t row, size_t col) const {
    return values_[row * cols_ + col];
  }
  void set(size_t row, size_t col, Genotype value) {
    values_[row * cols_ + col] = value;
  }

  std::span<const Genotype> row(size_t r) const {
    return {values_.data() + r * cols_, cols_};
  }
  std::span<Genotype> mutable_row(size_t r) {
    return {values_.data() + r * cols_, cols_};
  }

  void AppendRow(std::span<const Genotype> row);
  void AppendRows(const GenotypeMatrix& other);

  // New matrix whose column j is column `columns[j]` of this one.
  GenotypeMatrix SelectColumns(std::span<const size_t> columns) const;
  // New matrix whose row i is row `rows[i]` of this one.
  GenotypeMatrix SelectRows(std::span<const size_t> rows) const;

  std::span<const Genotype> values() const { return values_; }

  friend bool operator==(const GenotypeMatrix&,
                         const GenotypeMatrix&) = default;

 private:
  size_t rows_ = 0;
  size_t cols_ = 0;
  std::vector<Genotype> values_;
};

// A researcher's dataset: named samples by named SNPs. Immutable once built.
// Invariants: at least one sample, sample and SNP ids unique, rectangular.
class GenotypeDataset {
 public:
  // Placeholder with no samples; only Create yields a valid dataset.
  GenotypeDataset() = default;
  static absl::StatusOr<GenotypeDataset> Create(
      std::vector<std::string> sample_ids, std::vector<std::string> snp_ids,
      GenotypeMatrix matrix);

  size_t num_samples() const { return sample_ids_.size(); }
  size_t num_snps() const { return snp_ids_.size(); }

  const std::vector<std::string>& sample_ids() const { return sample_ids_; }
  const std::vector<std::string>& snp_ids() const { return snp_ids_; }
  const GenotypeMatrix& matrix() const { return matrix_; }

  std::span<const Genotype> row(size_t sample) const {
    return matrix_.row(sample);
  }

  // Index lookups; NotFound when the id is absent.
  absl::StatusOr<size_t> SampleIndex(const std::string& id) const;
  absl::StatusOr<size_t> SnpIndex(const std::string& id) const;

 private:

  std::vector<std::string> sample_ids_;
  std::vector<std::string> snp_ids_;
  absl::flat_hash_map<std::string, size_t> sample_index_;
  absl::flat_hash_map<std::string, size_t> snp_index_;
  GenotypeMatrix matrix_;
};

}  // namespace fedkin

#endif  // FEDKIN_GENOTYPE_H_
