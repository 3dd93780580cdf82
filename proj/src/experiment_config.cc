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

#include <cerrno>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_join.h"
#include "fedkin/experiment.h"
#include "fedkin/status_macros.h"

#define TOML_EXCEPTIONS 0
#include "toml.hpp"

namespace fedkin {
namespace {

absl::Status ConfigError(const std::string& key, absl::string_view what) {
  return absl::InvalidArgumentError(
      absl::StrCat("ConfigError: ", key, ": ", what));
}

std::string KeyPath(absl::string_view table, absl::string_view key) {
  return table.empty() ? std::string(key) : absl::StrCat(table, ".", key);
}

absl::StatusOr<int64_t> ReadInteger(const toml::node& node,
                                    const std::string& key) {
  if (auto value = node.value<int64_t>(); value && node.is_integer()) {
    return *value;
  }
  return ConfigError(key, "expected an integer");
}

absl::StatusOr<size_t> ReadCount(const toml::node& node,
                                 const std::string& key) {
  ASSIGN_OR_RETURN(int64_t value, ReadInteger(node, key));
  if (value < 0) return ConfigError(key, "must not be negative");
  return static_cast<size_t>(value);
}

absl::StatusOr<uint64_t> ReadSeed(const toml::node& node,
                                  const std::string& key) {
  // TOML integers are signed 64-bit; larger seeds go in as strings.
  if (node.is_string()) {
    const std::string text = *node.value<std::string>();
    char* end = nullptr;
    errno = 0;
    const unsigned long long value = std::strtoull(text.c_str(), &end, 10);
    if (text.empty() || *end != '\0' || errno != 0 || text[0] == '-') {
      return ConfigError(key, "expected an unsigned 64-bit integer");
    }
    return static_cast<uint64_t>(value);
  }
  ASSIGN_OR_RETURN(int64_t value, ReadInteger(node, key));
  if (value < 0) return ConfigError(key, "must not be negative");
  return static_cast<uint64_t>(value);
}

absl::StatusOr<double> ReadReal(const toml::node& node,
                                const std::string& key) {
  if (node.is_floating_point() || node.is_integer()) {
    return *node.value<double>();
  }
  if (node.is_string()) {
    const std::string text = *node.value<std::string>();
    if (text == "inf" || text == "+inf" || text == "infinity") {
      return std::numeric_limits<double>::infinity();
    }
  }
  return ConfigError(key, "expected a number");
}

absl::StatusOr<PanelStrategy> ReadStrategy(const toml::node& node,
                                           const std::string& key) {
  if (!node.is_string()) return ConfigError(key, "expected a string");
  auto strategy = ParsePanelStrategy(*node.value<std::string>());
  if (!strategy.ok()) return ConfigError(key, strategy.status().message());
  return *strategy;
}

template <typename T, typename Reader>
absl::StatusOr<std::vector<T>> ReadList(const toml::node& node,
                                        const std::string& key,
                                        Reader reader) {
  const toml::array* array = node.as_array();
  if (array == nullptr) return ConfigError(key, "expected an array");
  std::vector<T> values;
  for (size_t i = 0; i < array->size(); ++i) {
    ASSIGN_OR_RETURN(T value,
                     reader((*array)[i], absl::StrCat(key, "[", i, "]")));
    values.push_back(value);
  }
  return values;
}

const toml::table* SubTable(const toml::table& root, const char* name,
                            absl::Status& status) {
  const toml::node* node = root.get(name);
  if (node == nullptr) return nullptr;
  if (!node->is_table()) status = ConfigError(name, "expected a table");
  return node->as_table();
}

absl::Status ApplyPopulation(const toml::table& table, PopulationConfig& out) {
  for (const auto& [raw_key, node] : table) {
    const std::string name(raw_key.str());
    const std::string key = KeyPath("population", name);
    if (name == "n") {
      ASSIGN_OR_RETURN(out.n, ReadCount(node, key));
    } else if (name == "snp_count") {
      ASSIGN_OR_RETURN(out.snp_count, ReadCount(node, key));
    } else if (name == "maf_min") {
      ASSIGN_OR_RETURN(out.maf_min, ReadReal(node, key));
    } else if (name == "maf_max") {
      ASSIGN_OR_RETURN(out.maf_max, ReadReal(node, key));
    } else if (name == "first_degree") {
      ASSIGN_OR_RETURN(out.first_degree, ReadCount(node, key));
    } else if (name == "second_degree") {
      ASSIGN_OR_RETURN(out.second_degree, ReadCount(node, key));
    } else if (name == "reference_size") {
      ASSIGN_OR_RETURN(out.reference_size, ReadCount(node, key));
    } else {
      return ConfigError(key, "unknown key");
    }
  }
  return absl::OkStatus();
}

absl::Status ApplyProtocol(const toml::table& table, ProtocolConfig& out) {
  for (const auto& [raw_key, node] : table) {
    const std::string name(raw_key.str());
    const std::string key = KeyPath("protocol", name);
    if (name == "m") {
      ASSIGN_OR_RETURN(out.m, ReadCount(node, key));
    } else if (name == "panel_strategy") {
      ASSIGN_OR_RETURN(out.panel_strategy, ReadStrategy(node, key));
    } else if (name == "epsilon") {
      ASSIGN_OR_RETURN(out.epsilon, ReadReal(node, key));
    } else if (name == "n_prime") {
      ASSIGN_OR_RETURN(out.n_prime, ReadCount(node, key));
    } else if (name == "seed_u") {
      ASSIGN_OR_RETURN(out.seed_u, ReadSeed(node, key));
    } else {
      return ConfigError(key, "unknown key");
    }
  }
  return absl::OkStatus();
}

absl::Status ApplyAdversary(const toml::table& table, AdversaryConfig& out) {
  for (const auto& [raw_key, node] : table) {
    const std::string name(raw_key.str());
    const std::string key = KeyPath("adversary", name);
    if (name == "i_prime_size") {
      ASSIGN_OR_RETURN(out.i_prime_size, ReadCount(node, key));
    } else if (name == "delta_corr") {
      ASSIGN_OR_RETURN(out.delta_corr, ReadReal(node, key));
    } else if (name == "stall_distance") {
      ASSIGN_OR_RETURN(out.stall_distance, ReadReal(node, key));
    } else if (name == "set_a_size") {
      ASSIGN_OR_RETURN(out.power.set_a_size, ReadCount(node, key));
    } else if (name == "set_b_size") {
      ASSIGN_OR_RETURN(out.power.set_b_size, ReadCount(node, key));
    } else if (name == "fpr_target") {
      ASSIGN_OR_RETURN(out.power.fpr_target, ReadReal(node, key));
    } else if (name == "lrt_encoding") {
      const std::optional<std::string> text = node.value<std::string>();
      if (text == "carrier") {
        out.lrt_encoding = LrtEncoding::kCarrier;
      } else if (text == "dosage") {
        out.lrt_encoding = LrtEncoding::kDosage;
      } else {
        return ConfigError(key, "expected \"carrier\" or \"dosage\"");
      }
    } else {
      return ConfigError(key, "unknown key");
    }
  }
  return absl::OkStatus();
}

absl::Status ApplySweep(const toml::table& table, SweepConfig& out) {
  for (const auto& [raw_key, node] : table) {
    const std::string name(raw_key.str());
    const std::string key = KeyPath("sweep", name);
    if (name == "m") {
      ASSIGN_OR_RETURN(out.m, ReadList<size_t>(node, key, ReadCount));
    } else if (name == "epsilon") {
      ASSIGN_OR_RETURN(out.epsilon, ReadList<double>(node, key, ReadReal));
    } else if (name == "n_prime") {
      ASSIGN_OR_RETURN(out.n_prime, ReadList<size_t>(node, key, ReadCount));
    } else if (name == "panel_strategy") {
      ASSIGN_OR_RETURN(out.panel_strategy,
                       ReadList<PanelStrategy>(node, key, ReadStrategy));
    } else if (name == "i_prime_extra") {
      ASSIGN_OR_RETURN(out.i_prime_extra,
                       ReadList<size_t>(node, key, ReadCount));
    } else if (name == "level") {
      ASSIGN_OR_RETURN(out.level, ReadList<double>(node, key, ReadReal));
    } else {
      return ConfigError(key, "unknown key");
    }
  }
  return absl::OkStatus();
}

}  // namespace

absl::string_view ExperimentKindName(ExperimentKind kind) {
  switch (kind) {
    case ExperimentKind::kKinship:
      return "kinship";
    case ExperimentKind::kUnshuffle:
      return "unshuffle";
    case ExperimentKind::kMembership:
      return "membership";
  }
  return "kinship";
}

absl::StatusOr<ExperimentKind> ParseExperimentKind(absl::string_view name) {
  if (name == "kinship") return ExperimentKind::kKinship;
  if (name == "unshuffle") return ExperimentKind::kUnshuffle;
  if (name == "membership") return ExperimentKind::kMembership;
  return absl::InvalidArgumentError(
      absl::StrCat("unknown experiment \"", name, "\""));
}

ExperimentConfig ExperimentConfig::Preset(ExperimentKind kind) {
  constexpr double kInf = std::numeric_limits<double>::infinity();
  ExperimentConfig config;
  switch (kind) {
    case ExperimentKind::kKinship:
      config.trials = 20;
      config.protocol.m = 500;
      config.protocol.epsilon = 5.0;
      config.sweep.m = {50, 250, 500, 1000, 2500};
      config.sweep.epsilon = {3.0, 4.0, 5.0, kInf};
      break;
    case ExperimentKind::kUnshuffle:
      config.population.n = 500;
      config.population.first_degree = 0;
      config.population.second_degree = 0;
      config.protocol.m = 250;
      config.protocol.epsilon = kInf;
      config.sweep.n_prime = {0, 100, 200, 300, 400, 500};
      config.sweep.panel_strategy = {PanelStrategy::kRandom,
                                     PanelStrategy::kCloseMaf};
      config.sweep.epsilon = {kInf, 5.0, 4.0, 3.0};
      config.sweep.i_prime_extra = {0, 250};
      break;
    case ExperimentKind::kMembership:
      config.population.n = 500;
      config.population.first_degree = 0;
      config.population.second_degree = 0;
      config.protocol.m = 250;
      config.protocol.epsilon = 5.0;
      config.sweep.level = {0.0, 0.2, 0.4, 0.7, 1.0};
      config.sweep.epsilon = {3.0, 4.0, 5.0, kInf};
      break;
  }
  return config;
}

size_t ExperimentConfig::EffectiveIPrime() const {
  return adversary.i_prime_size == 0 ? protocol.m : adversary.i_prime_size;
}

absl::Status ExperimentConfig::Validate() const {
  if (trials < 1) return ConfigError("trials", "must be at least 1");
  if (population.n < 1) return ConfigError("population.n", "must be >= 1");
  if (population.snp_count < 2) {
    return ConfigError("population.snp_count", "must be at least 2");
  }
  if (!(population.maf_min >= 0.0 && population.maf_min <= population.maf_max &&
        population.maf_max <= 0.5)) {
    return ConfigError("population",
                       "need 0 <= maf_min <= maf_max <= 0.5");
  }
  if (population.first_degree + population.second_degree > population.n) {
    return ConfigError("population",
                       "every relative needs a founder of its own");
  }
  std::vector<size_t> panel_sizes = sweep.m;
  panel_sizes.push_back(protocol.m);
  for (size_t m : panel_sizes) {
    if (m < 2) return ConfigError("protocol.m", "must be at least 2");
    if (m > population.snp_count) {
      return ConfigError("protocol.m",
                         absl::StrCat(m, " exceeds snp_count ",
                                      population.snp_count));
    }
  }
  if (adversary.i_prime_size != 0 && adversary.i_prime_size < protocol.m) {
    return ConfigError("adversary.i_prime_size", "must be at least m");
  }
  for (size_t extra : sweep.i_prime_extra) {
    if (protocol.m + extra > population.snp_count) {
      return ConfigError("sweep.i_prime_extra", "exceeds snp_count");
    }
  }
  std::vector<double> epsilons = sweep.epsilon;
  epsilons.push_back(protocol.epsilon);
  for (double epsilon : epsilons) {
    if (!(epsilon > 0.0)) return ConfigError("epsilon", "must be positive");
  }
  for (double level : sweep.level) {
    if (!(level >= 0.0 && level <= 1.0)) {
      return ConfigError("sweep.level", "levels lie in [0, 1]");
    }
  }
  if (!(adversary.delta_corr >= 0.0)) {
    return ConfigError("adversary.delta_corr", "must not be negative");
  }
  if (absl::Status status = adversary.power.Validate(); !status.ok()) {
    return ConfigError("adversary", status.message());
  }
  return absl::OkStatus();
}

absl::StatusOr<ExperimentConfig> ParseExperimentConfig(
    absl::string_view toml_text, ExperimentConfig base) {
  toml::parse_result parsed =
      toml::parse(std::string_view(toml_text.data(), toml_text.size()));
  if (!parsed) {
    const toml::parse_error& error = parsed.error();
    return absl::InvalidArgumentError(absl::StrCat(
        "ConfigError: line ", error.source().begin.line, ": ",
        std::string(error.description())));
  }
  const toml::table& root = parsed.table();
  for (const auto& [raw_key, node] : root) {
    const std::string name(raw_key.str());
    if (name == "trials") {
      ASSIGN_OR_RETURN(base.trials, ReadCount(node, name));
    } else if (name == "seed") {
      ASSIGN_OR_RETURN(base.seed, ReadSeed(node, name));
    } else if (name == "out") {
      if (!node.is_string()) return ConfigError(name, "expected a string");
      base.out = *node.value<std::string>();
    } else if (name != "population" && name != "protocol" &&
               name != "adversary" && name != "sweep") {
      return ConfigError(name, "unknown key");
    }
  }
  absl::Status status;
  if (const toml::table* t = SubTable(root, "population", status)) {
    RETURN_IF_ERROR(ApplyPopulation(*t, base.population));
  }
  if (const toml::table* t = SubTable(root, "protocol", status)) {
    RETURN_IF_ERROR(ApplyProtocol(*t, base.protocol));
  }
  if (const toml::table* t = SubTable(root, "adversary", status)) {
    RETURN_IF_ERROR(ApplyAdversary(*t, base.adversary));
  }
  if (const toml::table* t = SubTable(root, "sweep", status)) {
    RETURN_IF_ERROR(ApplySweep(*t, base.sweep));
  }
  RETURN_IF_ERROR(status);
  return base;
}

}  // namespace fedkin
