#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "infopres/environment.hpp"
#include "infopres/policies.hpp"
#include "infopres/reward.hpp"
#include "infopres/stats.hpp"

namespace infopres {

struct EvalResult {
  std::string policy;
  std::vector<double> rewards;
  double mean = 0.0;
  double std = 0.0;  // sample standard deviation
  bool degenerate_sample = false;  // n == 1, std reported as 0
  std::vector<EpisodeRecord> episodes;  // filled only when requested
};

// Seed of episode `episode` for policy `policy` under `master_seed`. Streams are
// keyed by policy name, so a policy's rewards do not depend on which other
// policies are evaluated alongside it.
std::uint64_t episode_seed(std::uint64_t master_seed, const std::string& policy,
                           std::uint64_t episode);

EvalResult run_eval(const Policy& policy, const Environment& env, const RewardModel& reward,
                    int n, std::uint64_t master_seed, bool keep_episodes = false);

// Canonical report order: B1..B7, RL, then anything else by name.
void sort_canonical(std::vector<EvalResult>& results);

struct ReportMetadata {
  std::uint64_t seed = 0;
  std::uint64_t config_hash = 0;
  int n = 0;
};

struct Report {
  std::string text;
  std::string csv;
};

Report render_report(const std::vector<EvalResult>& results, const SignificanceReport& sig,
                     const ReportMetadata& meta);

struct ParsedReport {
  struct Row {
    std::string policy;
    int n = 0;
    double mean = 0.0;
    double std = 0.0;
  };
  std::vector<Row> rows;
  std::vector<PairwiseComparison> pairwise;
  std::vector<std::pair<std::string, std::string>> pairwise_names;
  ReportMetadata meta;
  double anova_f = 0.0;
  double anova_p = 0.0;
};

// Inverse of the CSV half of render_report.
ParsedReport parse_report_csv(const std::string& csv);

// episode,policy,seed,actions,attrs,sentences,user_act,reward
std::string episodes_csv(const std::vector<EvalResult>& results, std::uint64_t master_seed);

// Shortest round-trip decimal representation.
std::string format_double(double v);

}  // namespace infopres
