#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "infopres/domain.hpp"
#include "infopres/environment.hpp"
#include "infopres/reward.hpp"
#include "infopres/rng.hpp"

namespace infopres {

// Feature layout: [attr_1 .. attr_9, user_goal, user_quit, sentences/11, bias].
inline constexpr std::size_t kFeatureDim = 13;
inline constexpr std::size_t kGoalFeature = 9;
inline constexpr std::size_t kQuitFeature = 10;
inline constexpr std::size_t kSentenceFeature = 11;
inline constexpr std::size_t kBiasFeature = 12;

using FeatureVector = std::array<double, kFeatureDim>;
using WeightVector = std::array<double, kFeatureDim>;

enum class AttrEncoding : std::uint8_t {
  OneHot,      // bit k set iff attr_count == k
  Thermometer  // bits 1..attr_count set
};

std::string_view to_string(AttrEncoding e);
std::optional<AttrEncoding> parse_attr_encoding(std::string_view text);

const std::array<std::string, kFeatureDim>& feature_names();

FeatureVector featurize(const GenerationContext& ctx,
                        AttrEncoding encoding = AttrEncoding::OneHot);

struct TrainConfig {
  int episodes = 3600;
  double alpha = 0.05;
  double gamma = 1.0;
  double epsilon_start = 0.8;
  double epsilon_end = 0.0;
  std::uint64_t seed = 1;
  AttrEncoding encoding = AttrEncoding::OneHot;

  void validate() const;
  // Linear decay from epsilon_start (first episode) to epsilon_end (last).
  double epsilon_at(int episode) const;

  friend bool operator==(const TrainConfig&, const TrainConfig&) = default;
};

// Linear Q-function: one weight vector per action, including STOP.
struct PolicyWeights {
  std::array<WeightVector, kNumActions> by_action{};
  AttrEncoding encoding = AttrEncoding::OneHot;
  // Training provenance.
  int episodes_trained = 0;
  TrainConfig trained_with;

  const WeightVector& operator[](StrategyAction a) const { return by_action[index_of(a)]; }
  WeightVector& operator[](StrategyAction a) { return by_action[index_of(a)]; }

  friend bool operator==(const PolicyWeights&, const PolicyWeights&) = default;
};

double q_value(const PolicyWeights& w, const FeatureVector& f, StrategyAction a);

// Highest-valued legal action; ties resolved SUMMARY < COMPARE < RECOMMEND < STOP.
StrategyAction greedy_action(const PolicyWeights& w, const GenerationContext& ctx);

// Epsilon-greedy over allowed_actions(ctx).
StrategyAction select_action(const PolicyWeights& w, const GenerationContext& ctx,
                             double epsilon, Rng& rng);

// One-step SARSA update of w[action] toward `target`; returns the TD error.
double sarsa_update(PolicyWeights& w, const FeatureVector& f, StrategyAction action,
                    double target, double alpha);

class DivergenceError : public std::runtime_error {
 public:
  DivergenceError(int episode, int step, double magnitude);
  int episode() const { return episode_; }
  int step() const { return step_; }

 private:
  int episode_;
  int step_;
};

inline constexpr double kDivergenceLimit = 1e6;

struct EpisodeLogEntry {
  int episode = 0;
  double episode_return = 0.0;
  double epsilon = 0.0;
};

struct TrainResult {
  PolicyWeights weights;
  std::vector<EpisodeLogEntry> log;
};

// On-policy SARSA with linear function approximation over `cfg.episodes`
// simulated episodes, starting from `initial` weights.
TrainResult sarsa_train(const Environment& env, const RewardModel& reward,
                        const TrainConfig& cfg, PolicyWeights initial = {});

}  // namespace infopres
