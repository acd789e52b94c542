#pragma once

#include <array>
#include <string>
#include <vector>

#include "infopres/domain.hpp"

namespace infopres {

// Linear quality model over attribute and sentence counts, scaled and combined
// with a payoff for the user's reaction at the end of generation.
struct RewardModel {
  double attr_weight = 0.775;
  double sentence_weight = -0.301;
  double scale = 100.0;
  // Indexed by SYS_GOAL, USER_ELSE, USER_QUIT.
  std::array<double, 3> payoff{100.0, 0.0, -100.0};

  double payoff_for(UserAct act) const;

  friend bool operator==(const RewardModel&, const RewardModel&) = default;
};

// Corpus means per base strategy, indexed by SUMMARY, COMPARE, RECOMMEND.
struct StrategyAverages {
  struct Entry {
    double mean_attrs = 0.0;
    double mean_sentences = 0.0;
    friend bool operator==(const Entry&, const Entry&) = default;
  };
  std::array<Entry, 3> entries{{{2.07, 1.56}, {3.2, 5.5}, {2.4, 3.5}}};

  const Entry& at(StrategyAction a) const;
  void validate() const;

  friend bool operator==(const StrategyAverages&, const StrategyAverages&) = default;
};

// Unscaled regression score.
double regression_score(double attrs, double sentences, const RewardModel& model);

// Reward at the end of an episode; every non-terminal step earns 0.
double terminal_reward(const GenerationContext& ctx, UserAct realized_act,
                       const RewardModel& model);

// The seven legal non-empty action sequences, shortest first, then in
// SUMMARY < COMPARE < RECOMMEND lexicographic order.
const std::vector<std::vector<StrategyAction>>& all_strategies();

struct RankedStrategy {
  std::vector<StrategyAction> sequence;
  double mean_attrs = 0.0;
  double mean_sentences = 0.0;
  double score = 0.0;
};

// One-shot ranking: evaluates the regression on summed corpus means of each
// composite strategy. Descending by score, ties to the shorter sequence.
std::vector<RankedStrategy> rank_strategies_analytic(const StrategyAverages& avg,
                                                     const RewardModel& model);

}  // namespace infopres
