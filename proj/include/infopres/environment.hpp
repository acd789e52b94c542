#pragma once

#include <array>
#include <vector>

#include "infopres/domain.hpp"
#include "infopres/rng.hpp"

namespace infopres {

// Per-action realizer behaviour: attribute count drawn uniformly from a set,
// sentence count fixed.
struct RealizerProfile {
  struct Entry {
    std::vector<int> attr_choices;
    int sentences_fixed = 0;
    friend bool operator==(const Entry&, const Entry&) = default;
  };

  // Indexed by SUMMARY, COMPARE, RECOMMEND.
  std::array<Entry, 3> entries{{{{1, 2}, 2}, {{3, 4}, 6}, {{2, 3}, 3}}};

  const Entry& at(StrategyAction a) const;
  Entry& at(StrategyAction a);

  // Throws ContractViolation on empty choices or values < 1.
  void validate() const;

  friend bool operator==(const RealizerProfile&, const RealizerProfile&) = default;
};

// Probability triple over {SYS_GOAL, USER_ELSE, USER_QUIT}, in percent.
using ActDistribution = std::array<double, 3>;

struct UserSimTable {
  // Indexed by Conciseness.
  std::array<ActDistribution, 3> rows{{{20.0, 60.0, 20.0}, {60.0, 20.0, 20.0}, {20.0, 20.0, 60.0}}};
  // Used once the cumulative attribute count exceeds overload_threshold.
  ActDistribution overload_row{10.0, 10.0, 80.0};
  int overload_threshold = 7;

  const ActDistribution& row_for(int attr_count) const;

  // Rows must be non-negative and sum to 100 within 1e-9.
  void validate() const;

  friend bool operator==(const UserSimTable&, const UserSimTable&) = default;
};

struct StepOutcome {
  GenerationContext next_ctx;
  int attrs_added = 0;
  int sentences_added = 0;
  UserAct predicted_user_act = UserAct::Silent;
  bool done = false;

  friend bool operator==(const StepOutcome&, const StepOutcome&) = default;
};

struct RealizedContent {
  int attrs_added = 0;
  int sentences_added = 0;
};

RealizedContent realize(StrategyAction action, const RealizerProfile& profile, Rng& rng);

UserAct predict_user_act(int attr_count, const UserSimTable& table, Rng& rng);

// Simulated generation environment: realizer plus user simulation. Holds only
// configuration; all randomness comes from the stream passed to step().
class Environment {
 public:
  Environment() = default;
  Environment(RealizerProfile profile, UserSimTable table);

  GenerationContext reset() const { return {}; }

  StepOutcome step(const GenerationContext& ctx, StrategyAction action, Rng& rng) const;

  const RealizerProfile& profile() const { return profile_; }
  const UserSimTable& user_sim() const { return table_; }

 private:
  RealizerProfile profile_;
  UserSimTable table_;
};

}  // namespace infopres
