#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace infopres {

// Presentation actions. The numeric order is also the greedy tie-break order.
enum class StrategyAction : std::uint8_t { Summary = 0, Compare = 1, Recommend = 2, Stop = 3 };

inline constexpr std::size_t kNumActions = 4;
inline constexpr std::array<StrategyAction, kNumActions> kAllActions{
    StrategyAction::Summary, StrategyAction::Compare, StrategyAction::Recommend,
    StrategyAction::Stop};
inline constexpr std::array<StrategyAction, 3> kGenerationActions{
    StrategyAction::Summary, StrategyAction::Compare, StrategyAction::Recommend};

enum class UserAct : std::uint8_t { SysGoal = 0, UserElse = 1, UserQuit = 2, Silent = 3 };

enum class Conciseness : std::uint8_t { Concise = 0, Average = 1, Verbose = 2 };

constexpr std::size_t index_of(StrategyAction a) { return static_cast<std::size_t>(a); }
constexpr std::size_t index_of(UserAct a) { return static_cast<std::size_t>(a); }
constexpr std::size_t index_of(Conciseness c) { return static_cast<std::size_t>(c); }

std::string_view to_string(StrategyAction a);
std::string_view to_string(UserAct a);
std::string_view to_string(Conciseness c);

// Case-insensitive; accepts the canonical names plus short forms (S/C/R/X, goal/else/quit).
std::optional<StrategyAction> parse_action(std::string_view text);
std::optional<UserAct> parse_user_act(std::string_view text);

// Small value set of actions, iterated in tie-break order.
class ActionSet {
 public:
  constexpr ActionSet() = default;

  constexpr void insert(StrategyAction a) { bits_ |= bit(a); }
  constexpr bool contains(StrategyAction a) const { return (bits_ & bit(a)) != 0; }
  constexpr bool empty() const { return bits_ == 0; }
  std::size_t size() const;
  std::vector<StrategyAction> to_vector() const;
  std::string to_string() const;

  friend constexpr bool operator==(ActionSet, ActionSet) = default;

 private:
  static constexpr std::uint8_t bit(StrategyAction a) {
    return static_cast<std::uint8_t>(1u << index_of(a));
  }
  std::uint8_t bits_ = 0;
};

inline constexpr int kMaxAttributes = 9;
inline constexpr int kMaxSentences = 11;

// Ground-truth episode state of the generator.
struct GenerationContext {
  std::vector<StrategyAction> actions_taken;  // STOP never recorded
  int attr_count = 0;
  int sentence_count = 0;
  UserAct last_user_act = UserAct::Silent;
  bool terminated = false;

  friend bool operator==(const GenerationContext&, const GenerationContext&) = default;
};

// Legal next actions under the SUMMARY < COMPARE < RECOMMEND ordering rule.
// STOP is unavailable before the first generation step.
ActionSet allowed_actions(const GenerationContext& ctx);

// 1-2 concise, 3-4 average, 5+ verbose.
Conciseness conciseness_bin(int attr_count);

// e.g. "SUMMARY+COMPARE"; "init" for an empty history.
std::string history_label(const std::vector<StrategyAction>& history);

}  // namespace infopres
