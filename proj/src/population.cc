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

#include "fedkin/population.h"

#include <cmath>
#include <string>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_format.h"
#include "fedkin/random.h"
#include "fedkin/status_macros.h"

namespace fedkin {
namespace {

absl::Status ValidateModel(const MafModel& model) {
  for (size_t k = 0; k < model.frequencies.size(); ++k) {
    const double f = model.frequencies[k];
    if (!(f >= 0.0 && f <= 0.5)) {
      return absl::InvalidArgumentError(absl::StrCat(
          "BadFrequency: SNP ", k, " has frequency ", f, " outside [0, 0.5]"));
    }
  }
  return absl::OkStatus();
}

std::string PaddedId(const std::string& prefix, size_t index, size_t count) {
  int width = 4;
  for (size_t c = count; c >= 10000; c /= 10) ++width;
  return absl::StrFormat("%s%0*d", prefix, width, index);
}

bool Transmits(Genotype g, ChaChaStream& stream) {
  const double u = stream.NextDouble();
  return u < static_cast<double>(g) / 2.0;
}

std::vector<Genotype> HardyWeinbergRow(const MafModel& model,
                                       ChaChaStream& stream) {
  std::vector<Genotype> row(model.size());
  for (size_t k = 0; k < row.size(); ++k) {
    row[k] = SampleHardyWeinberg(model.frequencies[k], stream.NextDouble());
  }
  return row;
}

}  // namespace

MafModel MafModel::Uniform(size_t snp_count, double lo, double hi,
                           uint64_t seed) {
  ChaChaStream stream(seed, Fnv1a64("maf-model"));
  MafModel model;
  model.frequencies.resize(snp_count);
  for (double& f : model.frequencies) f = lo + (hi - lo) * stream.NextDouble();
  return model;
}

Genotype SampleHardyWeinberg(double f, double u) {
  const double p0 = (1.0 - f) * (1.0 - f);
  if (u < p0) return 0;
  if (u < p0 + 2.0 * f * (1.0 - f)) return 1;
  return 2;
}

absl::StatusOr<GenotypeMatrix> GenerateGenotypes(size_t n,
                                                 const MafModel& model,
                                                 uint64_t seed) {
  RETURN_IF_ERROR(ValidateModel(model));
  GenotypeMatrix matrix(n, model.size());
  for (size_t i = 0; i < n; ++i) {
    ChaChaStream stream(seed, i);
    auto out = matrix.mutable_row(i);
    for (size_t k = 0; k < out.size(); ++k) {
      out[k] = SampleHardyWeinberg(model.frequencies[k], stream.NextDouble());
    }
  }
  return matrix;
}

absl::StatusOr<GenotypeDataset> GeneratePopulation(
    size_t n, const MafModel& model, uint64_t seed,
    const std::string& sample_prefix) {
  if (n == 0) {
    return absl::InvalidArgumentError("EmptyInput: population size is zero");
  }
  ASSIGN_OR_RETURN(GenotypeMatrix matrix, GenerateGenotypes(n, model, seed));
  std::vector<std::string> sample_ids(n);
  for (size_t i = 0; i < n; ++i) {
    sample_ids[i] = PaddedId(sample_prefix, i + 1, n);
  }
  std::vector<std::string> snp_ids(model.size());
  for (size_t k = 0; k < model.size(); ++k) {
    snp_ids[k] = PaddedId("snp", k + 1, model.size());
  }
  return GenotypeDataset::Create(std::move(sample_ids), std::move(snp_ids),
                                 std::move(matrix));
}

void PedigreeTruth::AddSample(const std::string& id) { samples_.insert(id); }

std::pair<std::string, std::string> PedigreeTruth::Key(const std::string& a,
                                                        const std::string& b) {
  return a < b ? std::make_pair(a, b) : std::make_pair(b, a);
}

absl::Status PedigreeTruth::AddPair(const std::string& a, const std::string& b,
                                    KinshipDegree degree) {
  if (!HasSample(a) || !HasSample(b)) {
    return absl::InvalidArgumentError(
        absl::StrCat("truth pair (", a, ", ", b, ") names an unknown sample"));
  }
  if (a == b) {
    return absl::InvalidArgumentError(absl::StrCat("self pair for ", a));
  }
  auto [it, inserted] = index_.emplace(Key(a, b), degree);
  if (!inserted) {
    return absl::AlreadyExistsError(
        absl::StrCat("truth pair (", a, ", ", b, ") listed twice"));
  }
  pairs_.push_back({a, b, degree});
  return absl::OkStatus();
}

KinshipDegree PedigreeTruth::DegreeOf(const std::string& a,
                                      const std::string& b) const {
  auto it = index_.find(Key(a, b));
  return it == index_.end() ? KinshipDegree::kUnrelated : it->second;
}

std::vector<Genotype> MendelianChild(std::span<const Genotype> parent_a,
                                     std::span<const Genotype> parent_b,
                                     uint64_t seed) {
  ChaChaStream stream(seed, Fnv1a64("mendel"));
  std::vector<Genotype> child(parent_a.size());
  for (size_t k = 0; k < child.size(); ++k) {
    const bool from_a = Transmits(parent_a[k], stream);
    const bool from_b = Transmits(parent_b[k], stream);
    child[k] = static_cast<Genotype>(from_a + from_b);
  }
  return child;
}

absl::StatusOr<GeneratedRelative> GenerateRelative(
    const GenotypeDataset& dataset, std::span<const std::string> parent_ids,
    int degree, const MafModel& model, uint64_t seed,
    const std::string& relative_id) {
  if (degree != 1 && degree != 2) {
    return absl::InvalidArgumentError(
        absl::StrCat("degree must be 1 or 2, got ", degree));
  }
  if (parent_ids.empty() || parent_ids.size() > 2 ||
      (degree == 2 && parent_ids.size() != 1)) {
    return absl::InvalidArgumentError(
        "degree 1 takes one or two parent ids, degree 2 exactly one");
  }
  if (model.size() != dataset.num_snps()) {
    return absl::InvalidArgumentError(
        "MAF model does not cover the dataset's SNPs");
  }
  RETURN_IF_ERROR(ValidateModel(model));
  std::vector<size_t> parents;
  for (const std::string& id : parent_ids) {
    auto index = dataset.SampleIndex(id);
    if (!index.ok()) {
      return absl::NotFoundError(absl::StrCat("UnknownParent: ", id));
    }
    parents.push_back(*index);
  }

  ChaChaStream mates(seed, Fnv1a64("mates"));
  GeneratedRelative relative;
  if (degree == 1) {
    std::vector<Genotype> other;
    std::span<const Genotype> second;
    if (parents.size() == 2) {
      second = dataset.row(parents[1]);
    } else {
      other = HardyWeinbergRow(model, mates);
      second = other;
    }
    relative.row = MendelianChild(dataset.row(parents[0]), second,
                                  DeriveSeed(seed, "child"));
    for (const std::string& id : parent_ids) {
      relative.truth.push_back({id, relative_id, KinshipDegree::kFirst});
    }
    return relative;
  }
  const std::vector<Genotype> first_mate = HardyWeinbergRow(model, mates);
  const std::vector<Genotype> middle = MendelianChild(
      dataset.row(parents[0]), first_mate, DeriveSeed(seed, "child"));
  const std::vector<Genotype> second_mate = HardyWeinbergRow(model, mates);
  relative.row =
      MendelianChild(middle, second_mate, DeriveSeed(seed, "grandchild"));
  relative.truth.push_back(
      {parent_ids[0], relative_id, KinshipDegree::kSecond});
  return relative;
}

}  // namespace fedkin
