#include "infopres/learning.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "infopres/errors.hpp"

namespace infopres {

std::string_view to_string(AttrEncoding e) {
  return e == AttrEncoding::OneHot ? "one_hot" : "thermometer";
}

std::optional<AttrEncoding> parse_attr_encoding(std::string_view text) {
  if (text == "one_hot") return AttrEncoding::OneHot;
  if (text == "thermometer") return AttrEncoding::Thermometer;
  return std::nullopt;
}

const std::array<std::string, kFeatureDim>& feature_names() {
  static const std::array<std::string, kFeatureDim> kNames{
      "attr_1", "attr_2", "attr_3", "attr_4",    "attr_5",    "attr_6",   "attr_7",
      "attr_8", "attr_9", "user_goal", "user_quit", "sentences", "bias"};
  return kNames;
}

FeatureVector featurize(const GenerationContext& ctx, AttrEncoding encoding) {
  FeatureVector f{};
  const int attrs = std::clamp(ctx.attr_count, 0, kMaxAttributes);
  if (encoding == AttrEncoding::OneHot) {
    if (attrs > 0) f[static_cast<std::size_t>(attrs - 1)] = 1.0;
  } else {
    for (int k = 0; k < attrs; ++k) f[static_cast<std::size_t>(k)] = 1.0;
  }
  f[kGoalFeature] = ctx.last_user_act == UserAct::SysGoal ? 1.0 : 0.0;
  f[kQuitFeature] = ctx.last_user_act == UserAct::UserQuit ? 1.0 : 0.0;
  f[kSentenceFeature] = static_cast<double>(ctx.sentence_count) / kMaxSentences;
  f[kBiasFeature] = 1.0;
  return f;
}

void TrainConfig::validate() const {
  if (episodes < 0) throw ContractViolation("training episodes must be >= 0");
  if (!(alpha > 0.0 && alpha <= 1.0)) throw ContractViolation("alpha must be in (0, 1]");
  if (!(gamma >= 0.0 && gamma <= 1.0)) throw ContractViolation("gamma must be in [0, 1]");
  if (!(epsilon_start <= 1.0 && epsilon_start >= epsilon_end && epsilon_end >= 0.0)) {
    throw ContractViolation("epsilon schedule must satisfy 1 >= start >= end >= 0");
  }
}

double TrainConfig::epsilon_at(int episode) const {
  if (episodes <= 1) return epsilon_start;
  const double frac = static_cast<double>(episode) / static_cast<double>(episodes - 1);
  return epsilon_start + (epsilon_end - epsilon_start) * frac;
}

double q_value(const PolicyWeights& w, const FeatureVector& f, StrategyAction a) {
  const WeightVector& wa = w[a];
  double q = 0.0;
  for (std::size_t i = 0; i < kFeatureDim; ++i) q += wa[i] * f[i];
  return q;
}

StrategyAction greedy_action(const PolicyWeights& w, const GenerationContext& ctx) {
  const FeatureVector f = featurize(ctx, w.encoding);
  const ActionSet legal = allowed_actions(ctx);
  StrategyAction best = StrategyAction::Stop;
  double best_q = 0.0;
  bool first = true;
  for (StrategyAction a : kAllActions) {
    if (!legal.contains(a)) continue;
    const double q = q_value(w, f, a);
    if (first || q > best_q) {
      best = a;
      best_q = q;
      first = false;
    }
  }
  return best;
}

StrategyAction select_action(const PolicyWeights& w, const GenerationContext& ctx,
                             double epsilon, Rng& rng) {
  // Draw the exploration coin even when epsilon is 0 or 1 so that the stream
  // advances the same way regardless of schedule.
  const bool explore = rng.uniform() < epsilon;
  if (explore) {
    const auto legal = allowed_actions(ctx).to_vector();
    return legal[rng.below(legal.size())];
  }
  return greedy_action(w, ctx);
}

double sarsa_update(PolicyWeights& w, const FeatureVector& f, StrategyAction action,
                    double target, double alpha) {
  const double td_error = target - q_value(w, f, action);
  WeightVector& wa = w[action];
  for (std::size_t i = 0; i < kFeatureDim; ++i) wa[i] += alpha * td_error * f[i];
  return td_error;
}

namespace {

std::string divergence_message(int episode, int step, double magnitude) {
  std::ostringstream os;
  os << "SARSA diverged: |weight| = " << magnitude << " exceeds " << kDivergenceLimit
     << " at episode " << episode << ", step " << step;
  return os.str();
}

double max_abs(const WeightVector& w) {
  double m = 0.0;
  for (double v : w) m = std::max(m, std::abs(v));
  return m;
}

}  // namespace

DivergenceError::DivergenceError(int episode, int step, double magnitude)
    : std::runtime_error(divergence_message(episode, step, magnitude)),
      episode_(episode),
      step_(step) {}

TrainResult sarsa_train(const Environment& env, const RewardModel& reward,
                        const TrainConfig& cfg, PolicyWeights initial) {
  cfg.validate();
  TrainResult result;
  result.weights = std::move(initial);
  result.weights.encoding = cfg.encoding;
  result.log.reserve(static_cast<std::size_t>(cfg.episodes));
  PolicyWeights& w = result.weights;

  Rng rng(cfg.seed);
  for (int ep = 0; ep < cfg.episodes; ++ep) {
    const double epsilon = cfg.epsilon_at(ep);
    GenerationContext ctx = env.reset();
    StrategyAction action = select_action(w, ctx, epsilon, rng);
    double episode_return = 0.0;

    for (int step = 0;; ++step) {
      const FeatureVector f = featurize(ctx, cfg.encoding);
      const StepOutcome out = env.step(ctx, action, rng);
      double target = 0.0;
      StrategyAction next_action = StrategyAction::Stop;
      if (out.done) {
        const double r = terminal_reward(out.next_ctx, out.predicted_user_act, reward);
        episode_return += r;
        target = r;
      } else {
        next_action = select_action(w, out.next_ctx, epsilon, rng);
        const FeatureVector f_next = featurize(out.next_ctx, cfg.encoding);
        target = cfg.gamma * q_value(w, f_next, next_action);
      }
      sarsa_update(w, f, action, target, cfg.alpha);
      const double magnitude = max_abs(w[action]);
      if (!(magnitude <= kDivergenceLimit)) throw DivergenceError(ep, step, magnitude);

      if (out.done) break;
      ctx = out.next_ctx;
      action = next_action;
    }
    result.log.push_back({ep, episode_return, epsilon});
  }
  w.episodes_trained += cfg.episodes;
  w.trained_with = cfg;
  return result;
}

}  // namespace infopres
