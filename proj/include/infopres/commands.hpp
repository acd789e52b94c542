#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "infopres/config.hpp"

namespace infopres {

// CLI subcommand bodies. Each writes human-readable output to `out`, returns 0
// on success and throws on error.

inline constexpr const char* kSeedEnvVar = "INFOPRES_SEED";
inline constexpr std::uint64_t kDefaultSeed = 1;

// Precedence: explicit flag, then config value, then INFOPRES_SEED, then kDefaultSeed.
std::uint64_t resolve_seed(std::optional<std::uint64_t> flag,
                           std::optional<std::uint64_t> from_config);

ExperimentConfig load_config_or_default(const std::optional<std::filesystem::path>& path);

// Accepts comma lists with `Bi..Bj` ranges, e.g. "B1..B7,RL".
std::vector<std::string> parse_policy_list(const std::string& text);

struct TrainArgs {
  std::optional<std::filesystem::path> config;
  std::filesystem::path out = "weights.json";
  std::optional<std::uint64_t> seed;
};

// Path of the per-episode training log written next to the weights file.
std::filesystem::path training_log_path(const std::filesystem::path& weights_path);

int cmd_train(const TrainArgs& args, std::ostream& out);

struct EvalArgs {
  std::optional<std::filesystem::path> config;
  std::optional<std::filesystem::path> weights;
  std::optional<std::string> policies;
  std::optional<int> n;
  std::optional<std::uint64_t> seed;
  std::optional<std::filesystem::path> out_dir;
  bool write_episodes = false;
};

int cmd_eval(const EvalArgs& args, std::ostream& out);

struct RankArgs {
  std::optional<std::filesystem::path> averages;
  std::optional<std::filesystem::path> config;
  std::optional<double> attr_weight;
  std::optional<double> sentence_weight;
};

int cmd_rank(const RankArgs& args, std::ostream& out);

struct AnalyzeArgs {
  std::filesystem::path csv;
  double p_enter = 0.05;
  double p_remove = 0.10;
};

int cmd_analyze(const AnalyzeArgs& args, std::ostream& out);

struct SynthArgs {
  std::filesystem::path out = "corpus.csv";
  std::size_t n = 512;
  std::optional<std::uint64_t> seed;
  std::optional<double> noise_sd;
  std::optional<double> target_r2;
  bool noise_only = false;  // all weights zero
};

int cmd_synth(const SynthArgs& args, std::ostream& out);

struct WalkthroughArgs {
  std::optional<std::filesystem::path> config;
  std::optional<std::filesystem::path> weights;
  std::optional<std::string> policy;  // default: RL with weights, else B7
  std::optional<std::uint64_t> seed;
  bool interactive = false;
};

int cmd_walkthrough(const WalkthroughArgs& args, std::istream& in, std::ostream& out);

}  // namespace infopres
