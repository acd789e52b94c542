#include <gtest/gtest.h>

#include <set>

#include "infopres/domain.hpp"
#include "infopres/errors.hpp"

using namespace infopres;
using enum StrategyAction;

namespace {

GenerationContext with_history(std::vector<StrategyAction> h) {
  GenerationContext ctx;
  ctx.actions_taken = std::move(h);
  ctx.attr_count = ctx.actions_taken.empty() ? 0 : 1;
  return ctx;
}

ActionSet set_of(std::initializer_list<StrategyAction> xs) {
  ActionSet s;
  for (auto a : xs) s.insert(a);
  return s;
}

// Every complete sequence reachable by repeatedly taking a legal generation action.
void collect(const std::vector<StrategyAction>& h, std::set<std::vector<StrategyAction>>& out) {
  const ActionSet legal = allowed_actions(with_history(h));
  ASSERT_FALSE(legal.empty());
  if (legal.contains(Stop)) out.insert(h);
  for (auto a : legal.to_vector()) {
    if (a == Stop) continue;
    auto next = h;
    next.push_back(a);
    collect(next, out);
  }
}

}  // namespace

TEST(AllowedActions, EmptyHistoryOffersEveryGenerationAction) {
  EXPECT_EQ(allowed_actions(GenerationContext{}), set_of({Summary, Compare, Recommend}));
}

TEST(AllowedActions, FollowsOrderingRule) {
  EXPECT_EQ(allowed_actions(with_history({Summary})), set_of({Compare, Recommend, Stop}));
  EXPECT_EQ(allowed_actions(with_history({Summary, Compare})), set_of({Recommend, Stop}));
  EXPECT_EQ(allowed_actions(with_history({Compare})), set_of({Recommend, Stop}));
  EXPECT_EQ(allowed_actions(with_history({Recommend})), set_of({Stop}));
  EXPECT_EQ(allowed_actions(with_history({Summary, Compare, Recommend})), set_of({Stop}));
}

TEST(AllowedActions, TerminatedContextIsAContractViolation) {
  GenerationContext ctx = with_history({Summary});
  ctx.terminated = true;
  EXPECT_THROW(allowed_actions(ctx), ContractViolation);
}

TEST(AllowedActions, ReachableCompleteSequencesAreExactlyTheSevenStrategies) {
  std::set<std::vector<StrategyAction>> found;
  collect({}, found);
  const std::set<std::vector<StrategyAction>> expected{
      {Summary},          {Compare},          {Recommend},
      {Summary, Compare}, {Summary, Recommend}, {Compare, Recommend},
      {Summary, Compare, Recommend}};
  EXPECT_EQ(found, expected);
}

TEST(Conciseness, Bins) {
  EXPECT_EQ(conciseness_bin(1), Conciseness::Concise);
  EXPECT_EQ(conciseness_bin(2), Conciseness::Concise);
  EXPECT_EQ(conciseness_bin(3), Conciseness::Average);
  EXPECT_EQ(conciseness_bin(4), Conciseness::Average);
  EXPECT_EQ(conciseness_bin(5), Conciseness::Verbose);
  EXPECT_EQ(conciseness_bin(9), Conciseness::Verbose);
  EXPECT_THROW(conciseness_bin(0), ContractViolation);
}

TEST(Conciseness, TotalAndMonotone) {
  for (int a = 1; a < 50; ++a) {
    EXPECT_LE(index_of(conciseness_bin(a)), index_of(conciseness_bin(a + 1)));
  }
}

TEST(Names, ParseRoundTrip) {
  for (auto a : kAllActions) EXPECT_EQ(parse_action(to_string(a)), a);
  for (auto u : {UserAct::SysGoal, UserAct::UserElse, UserAct::UserQuit, UserAct::Silent}) {
    EXPECT_EQ(parse_user_act(to_string(u)), u);
  }
  EXPECT_EQ(parse_action("x"), Stop);
  EXPECT_FALSE(parse_action("explain").has_value());
  EXPECT_EQ(history_label({}), "init");
  EXPECT_EQ(history_label({Summary, Recommend}), "SUMMARY+RECOMMEND");
}
