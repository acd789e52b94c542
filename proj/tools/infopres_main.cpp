// Command-line front end: train, eval, rank, analyze, synth, walkthrough.

#include <iostream>

#include <CLI11.hpp>

#include "infopres/commands.hpp"
#include "infopres/errors.hpp"

namespace fs = std::filesystem;
using namespace infopres;

int main(int argc, char** argv) {
  CLI::App app{"Information presentation as planning under uncertainty: simulate, train and "
               "evaluate NLG presentation policies"};
  app.require_subcommand(1);

  TrainArgs train;
  auto* train_cmd = app.add_subcommand("train", "Train a SARSA policy");
  train_cmd->add_option("--config", train.config, "Experiment configuration file");
  train_cmd->add_option("--out", train.out, "Output weights file (JSON)");
  train_cmd->add_option("--seed", train.seed, "Training seed");

  EvalArgs eval;
  std::string policies;
  auto* eval_cmd = app.add_subcommand("eval", "Evaluate policies and test significance");
  eval_cmd->add_option("--config", eval.config, "Experiment configuration file");
  eval_cmd->add_option("--weights", eval.weights, "Trained weights (required for RL)");
  eval_cmd->add_option("--policies", policies, "Comma list, e.g. B1..B7,RL");
  eval_cmd->add_option("-n", eval.n, "Episodes per policy");
  eval_cmd->add_option("--seed", eval.seed, "Master evaluation seed");
  eval_cmd->add_option("--out", eval.out_dir, "Directory for report.txt / report.csv");
  eval_cmd->add_flag("--episodes", eval.write_episodes, "Also write episodes.csv");

  RankArgs rank;
  auto* rank_cmd = app.add_subcommand("rank", "Analytic ranking of the seven strategies");
  rank_cmd->add_option("--averages", rank.averages, "Strategy averages file");
  rank_cmd->add_option("--config", rank.config, "Experiment configuration (reward weights)");
  rank_cmd->add_option("--attr-weight", rank.attr_weight, "Override attribute weight");
  rank_cmd->add_option("--sentence-weight", rank.sentence_weight, "Override sentence weight");

  AnalyzeArgs analyze;
  auto* analyze_cmd = app.add_subcommand("analyze", "Stepwise regression over a rating corpus");
  analyze_cmd->add_option("csv", analyze.csv, "Corpus CSV (rating,<features>...)")->required();
  analyze_cmd->add_option("--p-enter", analyze.p_enter, "Entry p-value threshold");
  analyze_cmd->add_option("--p-remove", analyze.p_remove, "Removal p-value threshold");

  SynthArgs synth;
  auto* synth_cmd = app.add_subcommand("synth", "Write a synthetic rating corpus");
  synth_cmd->add_option("--out", synth.out, "Output CSV");
  synth_cmd->add_option("-n", synth.n, "Rows");
  synth_cmd->add_option("--seed", synth.seed, "Generator seed");
  auto* noise_opt = synth_cmd->add_option("--noise", synth.noise_sd, "Noise standard deviation");
  synth_cmd->add_option("--target-r2", synth.target_r2, "Calibrate noise to this R^2")
      ->excludes(noise_opt);
  synth_cmd->add_flag("--noise-only", synth.noise_only, "Ratings are pure noise");

  WalkthroughArgs walk;
  auto* walk_cmd = app.add_subcommand("walkthrough", "Step-by-step episode trace");
  walk_cmd->add_option("--config", walk.config, "Experiment configuration file");
  walk_cmd->add_option("--weights", walk.weights, "Trained weights");
  walk_cmd->add_option("--policy", walk.policy, "Policy to trace (B1..B7 or RL)");
  walk_cmd->add_option("--seed", walk.seed, "Master seed");
  walk_cmd->add_flag("--interactive", walk.interactive, "Choose actions at the terminal");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*train_cmd) return cmd_train(train, std::cout);
    if (*eval_cmd) {
      if (!policies.empty()) eval.policies = policies;
      return cmd_eval(eval, std::cout);
    }
    if (*rank_cmd) return cmd_rank(rank, std::cout);
    if (*analyze_cmd) return cmd_analyze(analyze, std::cout);
    if (*synth_cmd) return cmd_synth(synth, std::cout);
    if (*walk_cmd) return cmd_walkthrough(walk, std::cin, std::cout);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
