#include "infopres/environment.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "infopres/errors.hpp"

namespace infopres {

namespace {

std::size_t generation_index(StrategyAction a) {
  if (a == StrategyAction::Stop) {
    throw ContractViolation("realizer: STOP has no realization");
  }
  return index_of(a);
}

void check_row(const ActDistribution& row, std::string_view name) {
  double sum = 0.0;
  for (double p : row) {
    if (!(p >= 0.0)) {
      throw ContractViolation("user simulation row '" + std::string(name) +
                              "' has a negative probability");
    }
    sum += p;
  }
  if (std::abs(sum - 100.0) > 1e-9) {
    throw ContractViolation("user simulation row '" + std::string(name) +
                            "' sums to " + std::to_string(sum) + ", expected 100");
  }
}

}  // namespace

const RealizerProfile::Entry& RealizerProfile::at(StrategyAction a) const {
  return entries[generation_index(a)];
}

RealizerProfile::Entry& RealizerProfile::at(StrategyAction a) {
  return entries[generation_index(a)];
}

void RealizerProfile::validate() const {
  for (StrategyAction a : kGenerationActions) {
    const Entry& e = at(a);
    const std::string name(to_string(a));
    if (e.attr_choices.empty()) {
      throw ContractViolation("realizer profile for " + name + " has no attribute choices");
    }
    if (std::any_of(e.attr_choices.begin(), e.attr_choices.end(), [](int v) { return v < 1; })) {
      throw ContractViolation("realizer profile for " + name + " has an attribute choice < 1");
    }
    if (e.sentences_fixed < 1) {
      throw ContractViolation("realizer profile for " + name + " has sentences < 1");
    }
  }
}

const ActDistribution& UserSimTable::row_for(int attr_count) const {
  if (attr_count > overload_threshold) return overload_row;
  return rows[index_of(conciseness_bin(attr_count))];
}

void UserSimTable::validate() const {
  for (Conciseness c : {Conciseness::Concise, Conciseness::Average, Conciseness::Verbose}) {
    check_row(rows[index_of(c)], to_string(c));
  }
  check_row(overload_row, "overload");
  if (overload_threshold < 1) throw ContractViolation("overload threshold must be >= 1");
}

RealizedContent realize(StrategyAction action, const RealizerProfile& profile, Rng& rng) {
  const auto& entry = profile.at(action);
  const auto pick = rng.below(entry.attr_choices.size());
  return {entry.attr_choices[pick], entry.sentences_fixed};
}

UserAct predict_user_act(int attr_count, const UserSimTable& table, Rng& rng) {
  if (attr_count < 1) {
    throw ContractViolation("predict_user_act: no attributes presented yet");
  }
  // conciseness_bin rejects attr_count < 1 before the overload check matters.
  const ActDistribution& row = table.row_for(attr_count);
  return static_cast<UserAct>(rng.categorical(row));
}

Environment::Environment(RealizerProfile profile, UserSimTable table)
    : profile_(std::move(profile)), table_(std::move(table)) {
  profile_.validate();
  table_.validate();
}

StepOutcome Environment::step(const GenerationContext& ctx, StrategyAction action,
                              Rng& rng) const {
  const ActionSet legal = allowed_actions(ctx);
  if (!legal.contains(action)) {
    throw MaskedActionError("illegal action " + std::string(to_string(action)) + " after " +
                            history_label(ctx.actions_taken) + "; legal actions are " +
                            legal.to_string());
  }

  StepOutcome out;
  out.next_ctx = ctx;
  if (action == StrategyAction::Stop) {
    out.next_ctx.terminated = true;
    out.predicted_user_act = ctx.last_user_act;
    out.done = true;
    return out;
  }

  const RealizedContent content = realize(action, profile_, rng);
  out.attrs_added = content.attrs_added;
  out.sentences_added = content.sentences_added;
  GenerationContext& next = out.next_ctx;
  next.actions_taken.push_back(action);
  next.attr_count = std::min(kMaxAttributes, next.attr_count + content.attrs_added);
  next.sentence_count = std::min(kMaxSentences, next.sentence_count + content.sentences_added);
  next.last_user_act = predict_user_act(next.attr_count, table_, rng);
  out.predicted_user_act = next.last_user_act;
  return out;
}

}  // namespace infopres
