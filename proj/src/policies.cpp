#include "infopres/policies.hpp"

#include <map>
#include <tuple>

#include "infopres/errors.hpp"

namespace infopres {

ScriptedPolicy::ScriptedPolicy(std::string name,
                               std::vector<std::vector<StrategyAction>> candidates)
    : name_(std::move(name)), candidates_(std::move(candidates)) {
  if (candidates_.empty()) throw ContractViolation("scripted policy needs a candidate sequence");
}

EpisodeAgent ScriptedPolicy::start_episode(Rng& rng) const {
  std::size_t pick = 0;
  if (candidates_.size() > 1) pick = rng.below(candidates_.size());
  const std::vector<StrategyAction>* plan = &candidates_[pick];
  return [plan](const GenerationContext& ctx, Rng&) {
    const std::size_t done = ctx.actions_taken.size();
    return done < plan->size() ? (*plan)[done] : StrategyAction::Stop;
  };
}

GreedyPolicy::GreedyPolicy(PolicyWeights weights, std::string name)
    : weights_(std::move(weights)), name_(std::move(name)) {}

EpisodeAgent GreedyPolicy::start_episode(Rng&) const {
  return [this](const GenerationContext& ctx, Rng&) { return greedy_action(weights_, ctx); };
}

PolicyPtr make_baseline(const std::string& id) {
  using enum StrategyAction;
  using Seqs = std::vector<std::vector<StrategyAction>>;
  if (id == "B1") return std::make_shared<ScriptedPolicy>(id, Seqs{{Recommend}});
  if (id == "B2") return std::make_shared<ScriptedPolicy>(id, Seqs{{Compare}});
  if (id == "B3") return std::make_shared<ScriptedPolicy>(id, Seqs{{Summary}});
  if (id == "B4") return std::make_shared<ScriptedPolicy>(id, Seqs{{Summary, Recommend}});
  if (id == "B5") return std::make_shared<ScriptedPolicy>(id, Seqs{{Recommend}, {Compare}});
  if (id == "B6") return std::make_shared<ScriptedPolicy>(id, all_strategies());
  if (id == "B7") {
    return std::make_shared<ScriptedPolicy>(id, Seqs{{Summary, Compare, Recommend}});
  }
  throw ContractViolation("unknown baseline '" + id + "' (expected B1..B7)");
}

PolicyPtr make_greedy(const PolicyWeights& w) { return std::make_shared<GreedyPolicy>(w); }

EpisodeRecord run_episode(const Policy& policy, const Environment& env,
                          const RewardModel& reward, Rng& rng) {
  EpisodeRecord record;
  EpisodeAgent agent = policy.start_episode(rng);
  GenerationContext ctx = env.reset();
  while (true) {
    const StrategyAction action = agent(ctx, rng);
    StepOutcome out = env.step(ctx, action, rng);
    record.steps.push_back({action, out.attrs_added, out.sentences_added,
                            out.next_ctx.attr_count, out.next_ctx.sentence_count,
                            out.predicted_user_act});
    ctx = std::move(out.next_ctx);
    if (out.done) {
      record.realized_act = out.predicted_user_act;
      break;
    }
  }
  record.reward = terminal_reward(ctx, record.realized_act, reward);
  record.final_ctx = std::move(ctx);
  return record;
}

namespace {

void enumerate_contexts(const GenerationContext& ctx, const Environment& env,
                        std::map<std::tuple<std::vector<StrategyAction>, int, UserAct>,
                                 GenerationContext>& out) {
  out.emplace(std::make_tuple(ctx.actions_taken, ctx.attr_count, ctx.last_user_act), ctx);
  for (StrategyAction a : allowed_actions(ctx).to_vector()) {
    if (a == StrategyAction::Stop) continue;
    const auto& entry = env.profile().at(a);
    for (int attrs : entry.attr_choices) {
      GenerationContext next = ctx;
      next.actions_taken.push_back(a);
      next.attr_count = std::min(kMaxAttributes, ctx.attr_count + attrs);
      next.sentence_count = std::min(kMaxSentences, ctx.sentence_count + entry.sentences_fixed);
      const ActDistribution& row = env.user_sim().row_for(next.attr_count);
      for (UserAct act : {UserAct::SysGoal, UserAct::UserElse, UserAct::UserQuit}) {
        if (row[index_of(act)] <= 0.0) continue;
        next.last_user_act = act;
        enumerate_contexts(next, env, out);
      }
    }
  }
}

}  // namespace

std::vector<DecisionRow> describe_policy(const PolicyWeights& w, const Environment& env) {
  std::map<std::tuple<std::vector<StrategyAction>, int, UserAct>, GenerationContext> contexts;
  enumerate_contexts(env.reset(), env, contexts);

  std::vector<DecisionRow> rows;
  rows.reserve(contexts.size());
  for (const auto& [key, ctx] : contexts) {
    DecisionRow row;
    row.history = ctx.actions_taken;
    row.attr_count = ctx.attr_count;
    row.sentence_count = ctx.sentence_count;
    row.last_user_act = ctx.last_user_act;
    row.legal = allowed_actions(ctx);
    const FeatureVector f = featurize(ctx, w.encoding);
    for (StrategyAction a : row.legal.to_vector()) row.q[index_of(a)] = q_value(w, f, a);
    row.greedy = greedy_action(w, ctx);
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace infopres
