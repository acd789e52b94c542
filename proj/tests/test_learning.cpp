#include <gtest/gtest.h>

#include <map>
#include <set>

#include "infopres/errors.hpp"
#include "infopres/learning.hpp"
#include "infopres/policies.hpp"
#include "infopres/weights_io.hpp"
#include "oracles.hpp"

using namespace infopres;
using enum StrategyAction;

namespace {

PolicyWeights random_weights(Rng& rng, double scale = 10.0) {
  PolicyWeights w;
  for (auto& v : w.by_action) {
    for (double& x : v) x = (rng.uniform() * 2 - 1) * scale;
  }
  return w;
}

}  // namespace

TEST(Featurize, InitialContext) {
  const FeatureVector f = featurize(GenerationContext{});
  for (std::size_t i = 0; i < 9; ++i) EXPECT_EQ(f[i], 0.0);
  EXPECT_EQ(f[kGoalFeature], 0.0);
  EXPECT_EQ(f[kQuitFeature], 0.0);
  EXPECT_EQ(f[kSentenceFeature], 0.0);
  EXPECT_EQ(f[kBiasFeature], 1.0);
}

TEST(Featurize, OneHotAttributeAndFlags) {
  GenerationContext ctx;
  ctx.actions_taken = {Summary, Compare};
  ctx.attr_count = 5;
  ctx.sentence_count = 8;
  ctx.last_user_act = UserAct::SysGoal;
  const FeatureVector f = featurize(ctx);
  for (std::size_t i = 0; i < 9; ++i) EXPECT_EQ(f[i], i == 4 ? 1.0 : 0.0);
  EXPECT_EQ(f[kGoalFeature], 1.0);
  EXPECT_EQ(f[kQuitFeature], 0.0);
  EXPECT_DOUBLE_EQ(f[kSentenceFeature], 8.0 / 11.0);

  ctx.last_user_act = UserAct::UserQuit;
  EXPECT_EQ(featurize(ctx)[kQuitFeature], 1.0);
  EXPECT_EQ(featurize(ctx)[kGoalFeature], 0.0);
  ctx.last_user_act = UserAct::UserElse;
  EXPECT_EQ(featurize(ctx)[kQuitFeature], 0.0);
  EXPECT_EQ(featurize(ctx)[kGoalFeature], 0.0);
}

TEST(Featurize, ThermometerEncoding) {
  GenerationContext ctx;
  ctx.actions_taken = {Compare};
  ctx.attr_count = 3;
  const FeatureVector f = featurize(ctx, AttrEncoding::Thermometer);
  for (std::size_t i = 0; i < 9; ++i) EXPECT_EQ(f[i], i < 3 ? 1.0 : 0.0);
}

TEST(Featurize, InjectiveOnReachableAbstraction) {
  // Enumerate reachable contexts and group them by (attrs, flags, sentences).
  const auto rows = describe_policy(PolicyWeights{});
  std::map<FeatureVector, std::tuple<int, bool, bool, int>> seen;
  for (const auto& r : rows) {
    GenerationContext ctx;
    ctx.actions_taken = r.history;
    ctx.attr_count = r.attr_count;
    ctx.sentence_count = r.sentence_count;
    ctx.last_user_act = r.last_user_act;
    const auto key = std::make_tuple(r.attr_count, r.last_user_act == UserAct::SysGoal,
                                     r.last_user_act == UserAct::UserQuit, r.sentence_count);
    const auto [it, inserted] = seen.emplace(featurize(ctx), key);
    if (!inserted) EXPECT_EQ(it->second, key);
  }
  std::set<std::tuple<int, bool, bool, int>> distinct;
  for (const auto& [f, k] : seen) distinct.insert(k);
  EXPECT_EQ(distinct.size(), seen.size());
}

TEST(QValue, ZeroAndBiasOnly) {
  PolicyWeights w;
  Rng rng(1);
  GenerationContext ctx;
  ctx.actions_taken = {Compare};
  ctx.attr_count = 4;
  ctx.sentence_count = 6;
  ctx.last_user_act = UserAct::UserQuit;
  for (auto a : kAllActions) EXPECT_EQ(q_value(w, featurize(ctx), a), 0.0);
  w[Compare][kBiasFeature] = 3.5;
  EXPECT_DOUBLE_EQ(q_value(w, featurize(ctx), Compare), 3.5);
  EXPECT_DOUBLE_EQ(q_value(w, featurize(GenerationContext{}), Compare), 3.5);
}

TEST(QValue, LinearInWeights) {
  Rng rng(17);
  for (int i = 0; i < 200; ++i) {
    const PolicyWeights w1 = random_weights(rng), w2 = random_weights(rng);
    PolicyWeights sum;
    for (std::size_t a = 0; a < kNumActions; ++a) {
      for (std::size_t k = 0; k < kFeatureDim; ++k) {
        sum.by_action[a][k] = w1.by_action[a][k] + w2.by_action[a][k];
      }
    }
    FeatureVector f;
    for (double& x : f) x = rng.uniform();
    for (auto a : kAllActions) {
      EXPECT_NEAR(q_value(sum, f, a), q_value(w1, f, a) + q_value(w2, f, a), 1e-9);
    }
  }
}

TEST(SelectAction, GreedyTieBreakAndArgmax) {
  PolicyWeights w;
  Rng rng(2);
  EXPECT_EQ(select_action(w, GenerationContext{}, 0.0, rng), Summary);
  w[Compare][kBiasFeature] = 1.0;
  EXPECT_EQ(select_action(w, GenerationContext{}, 0.0, rng), Compare);
  // STOP is masked at init even when it dominates.
  w[Stop][kBiasFeature] = 100.0;
  EXPECT_EQ(select_action(w, GenerationContext{}, 0.0, rng), Compare);
}

TEST(SelectAction, FullExplorationIsUniformOverLegalActions) {
  PolicyWeights w;
  w[Compare][kBiasFeature] = 50.0;
  Rng rng(31);
  constexpr int kN = 10000;
  std::vector<double> counts(3, 0.0);
  for (int i = 0; i < kN; ++i) counts[index_of(select_action(w, GenerationContext{}, 1.0, rng))] += 1;
  const double x = oracle::chi_square_stat(counts, {1.0 / 3, 1.0 / 3, 1.0 / 3}, kN);
  EXPECT_GT(oracle::chi2_df2_upper(x), 0.01);
}

TEST(SelectAction, GreedyChoiceInvariantUnderPositiveScaling) {
  Rng rng(8);
  const auto contexts = describe_policy(PolicyWeights{});
  for (int i = 0; i < 50; ++i) {
    const PolicyWeights w = random_weights(rng);
    PolicyWeights scaled = w;
    const double c = 0.1 + rng.uniform() * 10;
    for (auto& v : scaled.by_action) {
      for (double& x : v) x *= c;
    }
    const auto a = describe_policy(w);
    const auto b = describe_policy(scaled);
    ASSERT_EQ(a.size(), b.size());
    for (std::size_t k = 0; k < a.size(); ++k) EXPECT_EQ(a[k].greedy, b[k].greedy);
  }
}

TEST(SarsaUpdate, TerminalStepAddsScaledFeatures) {
  // One hand-built episode: init --SUMMARY--> s1 --STOP--> end, terminal reward 100.
  PolicyWeights w;
  GenerationContext s1;
  s1.actions_taken = {Summary};
  s1.attr_count = 2;
  s1.sentence_count = 2;
  s1.last_user_act = UserAct::UserElse;
  const FeatureVector f0 = featurize(GenerationContext{});
  const FeatureVector f1 = featurize(s1);

  // Non-terminal update toward gamma * q(s1, STOP) = 0 leaves everything at zero.
  sarsa_update(w, f0, Summary, 1.0 * q_value(w, f1, Stop), 0.1);
  const double td = sarsa_update(w, f1, Stop, 100.0, 0.1);
  EXPECT_DOUBLE_EQ(td, 100.0);
  for (std::size_t k = 0; k < kFeatureDim; ++k) {
    EXPECT_DOUBLE_EQ(w[Stop][k], 10.0 * f1[k]);
    EXPECT_EQ(w[Summary][k], 0.0);
    EXPECT_EQ(w[Compare][k], 0.0);
    EXPECT_EQ(w[Recommend][k], 0.0);
  }
}

TEST(SarsaUpdate, LeavesOtherActionsUntouched) {
  Rng rng(4);
  for (int i = 0; i < 100; ++i) {
    PolicyWeights w = random_weights(rng);
    const PolicyWeights before = w;
    FeatureVector f;
    for (double& x : f) x = rng.uniform();
    const auto a = kAllActions[rng.below(4)];
    sarsa_update(w, f, a, rng.uniform() * 100, 0.05);
    for (auto other : kAllActions) {
      if (other != a) EXPECT_EQ(w[other], before[other]);
    }
  }
}

TEST(SarsaTrain, ZeroEpisodesIsANoOp) {
  TrainConfig cfg;
  cfg.episodes = 0;
  const auto res = sarsa_train(Environment{}, RewardModel{}, cfg);
  EXPECT_EQ(res.weights.by_action, PolicyWeights{}.by_action);
  EXPECT_TRUE(res.log.empty());
}

TEST(SarsaTrain, DeterministicGivenSeed) {
  TrainConfig cfg;
  cfg.episodes = 500;
  cfg.seed = 12;
  const auto a = sarsa_train(Environment{}, RewardModel{}, cfg);
  const auto b = sarsa_train(Environment{}, RewardModel{}, cfg);
  EXPECT_EQ(a.weights, b.weights);
  EXPECT_EQ(weights_to_json(a.weights), weights_to_json(b.weights));
  cfg.seed = 13;
  EXPECT_NE(sarsa_train(Environment{}, RewardModel{}, cfg).weights, a.weights);
}

TEST(SarsaTrain, EpsilonDecaysLinearly) {
  TrainConfig cfg;
  cfg.episodes = 5;
  const auto res = sarsa_train(Environment{}, RewardModel{}, cfg);
  ASSERT_EQ(res.log.size(), 5u);
  EXPECT_DOUBLE_EQ(res.log.front().epsilon, 0.8);
  EXPECT_DOUBLE_EQ(res.log[2].epsilon, 0.4);
  EXPECT_DOUBLE_EQ(res.log.back().epsilon, 0.0);
  EXPECT_EQ(res.weights.episodes_trained, 5);
}

TEST(SarsaTrain, DivergenceGuardNamesEpisodeAndStep) {
  RewardModel huge;
  huge.scale = 1e9;
  TrainConfig cfg;
  cfg.alpha = 1.0;
  cfg.episodes = 10;
  try {
    sarsa_train(Environment{}, huge, cfg);
    FAIL() << "expected divergence";
  } catch (const DivergenceError& e) {
    EXPECT_EQ(e.episode(), 0);
    EXPECT_GE(e.step(), 1);
    EXPECT_NE(std::string(e.what()).find("episode 0"), std::string::npos);
  }
}

TEST(TrainConfig, Validation) {
  TrainConfig c;
  c.alpha = 0.0;
  EXPECT_THROW(c.validate(), ContractViolation);
  c = TrainConfig{};
  c.gamma = 1.5;
  EXPECT_THROW(c.validate(), ContractViolation);
  c = TrainConfig{};
  c.epsilon_end = 0.9;
  EXPECT_THROW(c.validate(), ContractViolation);
}

TEST(TrainedPolicy, GreedyRolloutsReproducible) {
  TrainConfig cfg;
  cfg.episodes = 300;
  const auto w = sarsa_train(Environment{}, RewardModel{}, cfg).weights;
  const auto policy = make_greedy(w);
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    Rng a(seed), b(seed);
    const auto ra = run_episode(*policy, Environment{}, RewardModel{}, a);
    const auto rb = run_episode(*policy, Environment{}, RewardModel{}, b);
    EXPECT_EQ(ra.reward, rb.reward);
    EXPECT_EQ(ra.final_ctx, rb.final_ctx);
  }
}

TEST(WeightsIo, RoundTripAndRejections) {
  TrainConfig cfg;
  cfg.episodes = 50;
  cfg.seed = 77;
  const auto w = sarsa_train(Environment{}, RewardModel{}, cfg).weights;
  const std::string json = weights_to_json(w);
  const PolicyWeights back = weights_from_json(json);
  EXPECT_EQ(back.by_action, w.by_action);
  EXPECT_EQ(back.episodes_trained, 50);
  EXPECT_EQ(back.trained_with.seed, 77u);
  EXPECT_EQ(weights_to_json(back), json);

  auto mutate = [&](const std::string& from, const std::string& to) {
    std::string s = json;
    s.replace(s.find(from), from.size(), to);
    return s;
  };
  EXPECT_THROW(weights_from_json(mutate("\"feature_dimension\": 13", "\"feature_dimension\": 12")),
               InputError);
  EXPECT_THROW(weights_from_json(mutate("\"version\": 1", "\"version\": 2")), InputError);
  EXPECT_THROW(weights_from_json("{not json"), InputError);
}
