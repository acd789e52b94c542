#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>

#include "infopres/environment.hpp"
#include "infopres/learning.hpp"
#include "infopres/reward.hpp"

namespace infopres {

struct EvaluationSettings {
  int n = 200;
  std::optional<std::uint64_t> seed;
  friend bool operator==(const EvaluationSettings&, const EvaluationSettings&) = default;
};

// Everything an experiment needs. Serialized as a flat sectioned key-value file
// (see docs/config.md).
struct ExperimentConfig {
  RealizerProfile realizer;
  UserSimTable user_sim;
  RewardModel reward;
  TrainConfig training;
  bool training_seed_set = false;
  EvaluationSettings evaluation;
  std::string output_directory = ".";

  Environment environment() const { return Environment(realizer, user_sim); }
  void validate() const;

  friend bool operator==(const ExperimentConfig&, const ExperimentConfig&) = default;
};

// Throws InputError naming the line and key on syntax errors, unknown keys,
// duplicates and invalid values.
ExperimentConfig parse_config(const std::string& text, const std::string& source = "<config>");
ExperimentConfig load_config(const std::filesystem::path& path);

// Canonical form: every key written, fixed order, shortest round-trip numbers.
std::string serialize_config(const ExperimentConfig& cfg);

// Hash of the canonical form.
std::uint64_t config_hash(const ExperimentConfig& cfg);

// `[averages]` section with summary/compare/recommend .attrs and .sentences keys.
StrategyAverages parse_averages(const std::string& text, const std::string& source = "<averages>");
std::string serialize_averages(const StrategyAverages& avg);

}  // namespace infopres
