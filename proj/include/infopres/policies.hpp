#pragma once

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "infopres/domain.hpp"
#include "infopres/environment.hpp"
#include "infopres/learning.hpp"
#include "infopres/reward.hpp"
#include "infopres/rng.hpp"

namespace infopres {

// Per-episode decision function. Holds whatever the policy fixed at episode start.
using EpisodeAgent = std::function<StrategyAction(const GenerationContext&, Rng&)>;

// Presentation policy. Immutable; per-episode state lives in the agent returned
// by start_episode.
class Policy {
 public:
  virtual ~Policy() = default;
  virtual const std::string& name() const = 0;
  virtual EpisodeAgent start_episode(Rng& rng) const = 0;
};

using PolicyPtr = std::shared_ptr<const Policy>;

// Plays one of `candidates` to completion, then STOP. The candidate is drawn
// uniformly once per episode when there is more than one.
class ScriptedPolicy final : public Policy {
 public:
  ScriptedPolicy(std::string name, std::vector<std::vector<StrategyAction>> candidates);

  const std::string& name() const override { return name_; }
  EpisodeAgent start_episode(Rng& rng) const override;
  const std::vector<std::vector<StrategyAction>>& candidates() const { return candidates_; }

 private:
  std::string name_;
  std::vector<std::vector<StrategyAction>> candidates_;
};

class GreedyPolicy final : public Policy {
 public:
  explicit GreedyPolicy(PolicyWeights weights, std::string name = "RL");

  const std::string& name() const override { return name_; }
  EpisodeAgent start_episode(Rng& rng) const override;
  const PolicyWeights& weights() const { return weights_; }

 private:
  PolicyWeights weights_;
  std::string name_;
};

inline const std::vector<std::string> kBaselineIds{"B1", "B2", "B3", "B4", "B5", "B6", "B7"};

// B1 RECOMMEND; B2 COMPARE; B3 SUMMARY; B4 SUMMARY+RECOMMEND; B5 random B1/B2;
// B6 random over all seven sequences; B7 SUMMARY+COMPARE+RECOMMEND.
// Throws ContractViolation for any other id.
PolicyPtr make_baseline(const std::string& id);

PolicyPtr make_greedy(const PolicyWeights& w);

struct EpisodeStep {
  StrategyAction action = StrategyAction::Stop;
  int attrs_added = 0;
  int sentences_added = 0;
  int attr_count = 0;
  int sentence_count = 0;
  UserAct user_act = UserAct::Silent;
};

struct EpisodeRecord {
  std::vector<EpisodeStep> steps;  // last entry is STOP
  GenerationContext final_ctx;
  UserAct realized_act = UserAct::Silent;
  double reward = 0.0;
};

// Rolls one episode. Throws MaskedActionError if the policy emits an illegal action.
EpisodeRecord run_episode(const Policy& policy, const Environment& env,
                          const RewardModel& reward, Rng& rng);

struct DecisionRow {
  std::vector<StrategyAction> history;
  int attr_count = 0;
  int sentence_count = 0;
  UserAct last_user_act = UserAct::Silent;
  ActionSet legal;
  StrategyAction greedy = StrategyAction::Stop;
  std::array<double, kNumActions> q{};  // meaningful only for legal actions
};

// Every non-terminal context reachable under `env` with non-zero probability,
// one row per (history, attr_count, last_user_act), with the greedy choice.
std::vector<DecisionRow> describe_policy(const PolicyWeights& w, const Environment& env = {});

}  // namespace infopres
