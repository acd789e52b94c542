#include "infopres/domain.hpp"

#include <algorithm>
#include <bit>
#include <cctype>

#include "infopres/errors.hpp"

namespace infopres {

namespace {

std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

}  // namespace

std::string_view to_string(StrategyAction a) {
  switch (a) {
    case StrategyAction::Summary: return "SUMMARY";
    case StrategyAction::Compare: return "COMPARE";
    case StrategyAction::Recommend: return "RECOMMEND";
    case StrategyAction::Stop: return "STOP";
  }
  return "?";
}

std::string_view to_string(UserAct a) {
  switch (a) {
    case UserAct::SysGoal: return "SYS_GOAL";
    case UserAct::UserElse: return "USER_ELSE";
    case UserAct::UserQuit: return "USER_QUIT";
    case UserAct::Silent: return "SILENT";
  }
  return "?";
}

std::string_view to_string(Conciseness c) {
  switch (c) {
    case Conciseness::Concise: return "concise";
    case Conciseness::Average: return "average";
    case Conciseness::Verbose: return "verbose";
  }
  return "?";
}

std::optional<StrategyAction> parse_action(std::string_view text) {
  const std::string t = lower(text);
  if (t == "summary" || t == "s") return StrategyAction::Summary;
  if (t == "compare" || t == "c") return StrategyAction::Compare;
  if (t == "recommend" || t == "r") return StrategyAction::Recommend;
  if (t == "stop" || t == "end" || t == "x") return StrategyAction::Stop;
  return std::nullopt;
}

std::optional<UserAct> parse_user_act(std::string_view text) {
  const std::string t = lower(text);
  if (t == "sys_goal" || t == "sysgoal" || t == "goal") return UserAct::SysGoal;
  if (t == "user_else" || t == "userelse" || t == "else") return UserAct::UserElse;
  if (t == "user_quit" || t == "userquit" || t == "quit") return UserAct::UserQuit;
  if (t == "silent") return UserAct::Silent;
  return std::nullopt;
}

std::size_t ActionSet::size() const { return static_cast<std::size_t>(std::popcount(bits_)); }

std::vector<StrategyAction> ActionSet::to_vector() const {
  std::vector<StrategyAction> out;
  for (StrategyAction a : kAllActions) {
    if (contains(a)) out.push_back(a);
  }
  return out;
}

std::string ActionSet::to_string() const {
  std::string out = "{";
  for (StrategyAction a : to_vector()) {
    if (out.size() > 1) out += ", ";
    out += infopres::to_string(a);
  }
  return out + "}";
}

ActionSet allowed_actions(const GenerationContext& ctx) {
  if (ctx.terminated) {
    throw ContractViolation("allowed_actions: context is already terminated");
  }
  ActionSet legal;
  if (ctx.actions_taken.empty()) {
    for (StrategyAction a : kGenerationActions) legal.insert(a);
    return legal;
  }
  // Anything strictly after the last action in SUMMARY < COMPARE < RECOMMEND order may follow.
  const auto last = index_of(ctx.actions_taken.back());
  for (StrategyAction a : kGenerationActions) {
    if (index_of(a) > last) legal.insert(a);
  }
  legal.insert(StrategyAction::Stop);
  return legal;
}

Conciseness conciseness_bin(int attr_count) {
  if (attr_count < 1) {
    throw ContractViolation("conciseness_bin: attr_count must be >= 1, got " +
                            std::to_string(attr_count));
  }
  if (attr_count <= 2) return Conciseness::Concise;
  if (attr_count <= 4) return Conciseness::Average;
  return Conciseness::Verbose;
}

std::string history_label(const std::vector<StrategyAction>& history) {
  if (history.empty()) return "init";
  std::string out;
  for (StrategyAction a : history) {
    if (!out.empty()) out += '+';
    out += to_string(a);
  }
  return out;
}

}  // namespace infopres
