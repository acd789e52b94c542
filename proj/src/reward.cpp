#include "infopres/reward.hpp"

#include <algorithm>

#include "infopres/errors.hpp"

namespace infopres {

double RewardModel::payoff_for(UserAct act) const {
  if (act == UserAct::Silent) {
    throw ContractViolation("no payoff defined for SILENT");
  }
  return payoff[index_of(act)];
}

const StrategyAverages::Entry& StrategyAverages::at(StrategyAction a) const {
  if (a == StrategyAction::Stop) throw ContractViolation("STOP has no corpus averages");
  return entries[index_of(a)];
}

void StrategyAverages::validate() const {
  for (StrategyAction a : kGenerationActions) {
    const Entry& e = at(a);
    if (!(e.mean_attrs > 0.0) || !(e.mean_sentences > 0.0)) {
      throw ContractViolation("strategy averages for " + std::string(to_string(a)) +
                              " must be positive");
    }
  }
}

double regression_score(double attrs, double sentences, const RewardModel& model) {
  return model.attr_weight * attrs + model.sentence_weight * sentences;
}

double terminal_reward(const GenerationContext& ctx, UserAct realized_act,
                       const RewardModel& model) {
  if (!ctx.terminated) {
    throw ContractViolation("terminal_reward: episode has not stopped");
  }
  if (realized_act == UserAct::Silent) {
    throw ContractViolation("terminal_reward: no user act was observed before STOP");
  }
  return model.scale * regression_score(ctx.attr_count, ctx.sentence_count, model) +
         model.payoff_for(realized_act);
}

const std::vector<std::vector<StrategyAction>>& all_strategies() {
  using enum StrategyAction;
  static const std::vector<std::vector<StrategyAction>> kStrategies{
      {Summary},          {Compare},          {Recommend},
      {Summary, Compare}, {Summary, Recommend}, {Compare, Recommend},
      {Summary, Compare, Recommend}};
  return kStrategies;
}

std::vector<RankedStrategy> rank_strategies_analytic(const StrategyAverages& avg,
                                                     const RewardModel& model) {
  avg.validate();
  std::vector<RankedStrategy> ranked;
  for (const auto& seq : all_strategies()) {
    RankedStrategy r;
    r.sequence = seq;
    for (StrategyAction a : seq) {
      r.mean_attrs += avg.at(a).mean_attrs;
      r.mean_sentences += avg.at(a).mean_sentences;
    }
    r.score = regression_score(r.mean_attrs, r.mean_sentences, model);
    ranked.push_back(std::move(r));
  }
  // all_strategies() is already shortest-first, so a stable sort keeps that tie-break.
  std::stable_sort(ranked.begin(), ranked.end(),
                   [](const RankedStrategy& a, const RankedStrategy& b) { return a.score > b.score; });
  return ranked;
}

}  // namespace infopres
