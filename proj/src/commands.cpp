#include "infopres/commands.hpp"

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "infopres/errors.hpp"
#include "infopres/evaluation.hpp"
#include "infopres/policies.hpp"
#include "infopres/regression.hpp"
#include "infopres/weights_io.hpp"

namespace infopres {

namespace fs = std::filesystem;

namespace {

void write_file(const fs::path& path, const std::string& content) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream f(path, std::ios::binary);
  if (!f) throw InputError("cannot write " + path.string());
  f << content;
  if (!f) throw InputError("failed writing " + path.string());
}

std::string fixed(double v, int precision) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(precision) << v;
  return os.str();
}

}  // namespace

std::uint64_t resolve_seed(std::optional<std::uint64_t> flag,
                           std::optional<std::uint64_t> from_config) {
  if (flag) return *flag;
  if (from_config) return *from_config;
  if (const char* env = std::getenv(kSeedEnvVar); env != nullptr && *env != '\0') {
    const std::string text(env);
    std::uint64_t v = 0;
    const auto res = std::from_chars(text.data(), text.data() + text.size(), v);
    if (res.ec != std::errc() || res.ptr != text.data() + text.size()) {
      throw InputError(std::string(kSeedEnvVar) + ": expected a non-negative integer, got '" +
                       text + "'");
    }
    return v;
  }
  return kDefaultSeed;
}

ExperimentConfig load_config_or_default(const std::optional<fs::path>& path) {
  return path ? load_config(*path) : ExperimentConfig{};
}

std::vector<std::string> parse_policy_list(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream is(text);
  std::string item;
  auto baseline_number = [](const std::string& s) -> int {
    if (s.size() == 2 && s[0] == 'B' && s[1] >= '1' && s[1] <= '7') return s[1] - '0';
    return 0;
  };
  while (std::getline(is, item, ',')) {
    const auto b = item.find_first_not_of(' ');
    const auto e = item.find_last_not_of(' ');
    if (b == std::string::npos) continue;
    item = item.substr(b, e - b + 1);
    const auto dots = item.find("..");
    if (dots != std::string::npos) {
      const int lo = baseline_number(item.substr(0, dots));
      const int hi = baseline_number(item.substr(dots + 2));
      if (lo == 0 || hi == 0 || lo > hi) throw InputError("invalid policy range '" + item + "'");
      for (int k = lo; k <= hi; ++k) out.push_back("B" + std::to_string(k));
      continue;
    }
    if (item != "RL" && baseline_number(item) == 0) {
      throw InputError("unknown policy '" + item + "' (expected B1..B7 or RL)");
    }
    out.push_back(item);
  }
  if (out.empty()) throw InputError("no policies given");
  for (std::size_t i = 0; i < out.size(); ++i) {
    for (std::size_t j = i + 1; j < out.size(); ++j) {
      if (out[i] == out[j]) throw InputError("policy '" + out[i] + "' listed twice");
    }
  }
  return out;
}

fs::path training_log_path(const fs::path& weights_path) {
  fs::path p = weights_path;
  p.replace_filename(weights_path.stem().string() + ".train.csv");
  return p;
}

int cmd_train(const TrainArgs& args, std::ostream& out) {
  ExperimentConfig cfg = load_config_or_default(args.config);
  TrainConfig train = cfg.training;
  train.seed = resolve_seed(args.seed, cfg.training_seed_set
                                           ? std::optional<std::uint64_t>(cfg.training.seed)
                                           : std::nullopt);
  const TrainResult result = sarsa_train(cfg.environment(), cfg.reward, train);
  save_weights(result.weights, args.out);

  std::ostringstream log;
  log << "episode,return,epsilon\n";
  for (const auto& e : result.log) {
    log << e.episode << ',' << format_double(e.episode_return) << ','
        << format_double(e.epsilon) << '\n';
  }
  const fs::path log_path = training_log_path(args.out);
  write_file(log_path, log.str());

  double last_third = 0.0;
  std::size_t count = 0;
  for (std::size_t i = result.log.size() * 2 / 3; i < result.log.size(); ++i, ++count) {
    last_third += result.log[i].episode_return;
  }
  out << "trained " << train.episodes << " episodes (seed " << train.seed << ")\n";
  if (count > 0) out << "mean return over final third: " << fixed(last_third / count, 2) << "\n";
  out << "weights: " << args.out.string() << "\n";
  out << "training log: " << log_path.string() << "\n";
  return 0;
}

int cmd_eval(const EvalArgs& args, std::ostream& out) {
  const ExperimentConfig cfg = load_config_or_default(args.config);
  std::vector<std::string> names =
      args.policies ? parse_policy_list(*args.policies)
                    : parse_policy_list(args.weights ? "B1..B7,RL" : "B1..B7");
  const bool wants_rl = std::find(names.begin(), names.end(), "RL") != names.end();
  if (wants_rl && !args.weights) throw InputError("policy RL requires --weights");
  const int n = args.n.value_or(cfg.evaluation.n);
  if (n < 1) throw InputError("-n must be >= 1");
  const std::uint64_t seed = resolve_seed(args.seed, cfg.evaluation.seed);

  std::vector<PolicyPtr> policies;
  for (const auto& name : names) {
    policies.push_back(name == "RL" ? make_greedy(load_weights(*args.weights))
                                    : make_baseline(name));
  }

  const Environment env = cfg.environment();
  std::vector<EvalResult> results;
  for (const auto& p : policies) {
    results.push_back(run_eval(*p, env, cfg.reward, n, seed, args.write_episodes));
  }
  sort_canonical(results);

  std::vector<std::vector<double>> groups;
  for (const auto& r : results) groups.push_back(r.rewards);
  SignificanceReport sig;
  if (n >= 2) {
    sig = pairwise_ttests(groups);
  } else {
    out << "note: n = 1, significance tests skipped\n";
  }
  const ReportMetadata meta{seed, config_hash(cfg), n};
  const Report report = render_report(results, sig, meta);

  const fs::path dir = args.out_dir.value_or(fs::path(cfg.output_directory));
  write_file(dir / "report.txt", report.text);
  write_file(dir / "report.csv", report.csv);
  if (args.write_episodes) write_file(dir / "episodes.csv", episodes_csv(results, seed));
  out << report.text;
  return 0;
}

int cmd_rank(const RankArgs& args, std::ostream& out) {
  StrategyAverages avg;
  if (args.averages) {
    std::ifstream in(*args.averages, std::ios::binary);
    if (!in) throw InputError("cannot read averages file " + args.averages->string());
    std::ostringstream buf;
    buf << in.rdbuf();
    avg = parse_averages(buf.str(), args.averages->string());
  }
  RewardModel model = load_config_or_default(args.config).reward;
  if (args.attr_weight) model.attr_weight = *args.attr_weight;
  if (args.sentence_weight) model.sentence_weight = *args.sentence_weight;

  const auto ranked = rank_strategies_analytic(avg, model);
  out << "rank  strategy                       attrs  sentences     score\n";
  for (std::size_t i = 0; i < ranked.size(); ++i) {
    const auto& r = ranked[i];
    out << std::setw(4) << i + 1 << "  " << std::left << std::setw(29)
        << history_label(r.sequence) << std::right << std::setw(7) << fixed(r.mean_attrs, 2)
        << std::setw(11) << fixed(r.mean_sentences, 2) << std::setw(10) << fixed(r.score, 4)
        << "\n";
  }
  return 0;
}

int cmd_analyze(const AnalyzeArgs& args, std::ostream& out) {
  std::ifstream in(args.csv, std::ios::binary);
  if (!in) throw InputError("cannot read corpus " + args.csv.string());
  const CorpusTable table = read_corpus_csv(in);
  const StepwiseResult res = stepwise_select(table, args.p_enter, args.p_remove);
  const FittedModel& m = res.model;

  out << "stepwise regression on " << m.n << " rows, " << table.feature_names.size()
      << " candidate features (p_enter " << args.p_enter << ", p_remove " << args.p_remove
      << ")\n";
  for (const auto& d : res.trace) {
    out << "  " << (d.kind == StepwiseDecision::Kind::Enter ? "enter " : "remove") << " "
        << d.feature << " (p = " << std::scientific << std::setprecision(3) << d.p
        << std::defaultfloat << ")\n";
  }
  if (m.coefficients.empty()) out << "no features selected: intercept-only model\n";
  out << "feature            coef       se          t           p\n";
  for (const auto& c : m.coefficients) {
    out << std::left << std::setw(14) << c.name << std::right << std::setw(10)
        << fixed(c.estimate, 4) << std::setw(10) << fixed(c.std_error, 4) << std::setw(10)
        << fixed(c.t, 2) << "   " << std::scientific << std::setprecision(3) << c.p
        << std::defaultfloat << "\n";
  }
  out << std::left << std::setw(14) << "(intercept)" << std::right << std::setw(10)
      << fixed(m.intercept, 4) << std::setw(10) << fixed(m.intercept_std_error, 4) << "\n";
  out << "R^2 = " << fixed(m.r_squared, 4) << "\n";
  out << "score =";
  bool first = true;
  for (const auto& c : m.coefficients) {
    out << (first ? " " : " + ") << fixed(c.estimate, 3) << " x " << c.name;
    first = false;
  }
  if (first) out << " " << fixed(m.intercept, 3);
  out << "\n";
  return 0;
}

int cmd_synth(const SynthArgs& args, std::ostream& out) {
  SyntheticSpec spec;
  if (args.noise_only) {
    for (auto& f : spec.features) f.weight = 0.0;
  }
  const std::uint64_t seed = resolve_seed(args.seed, std::nullopt);
  double noise = args.noise_sd.value_or(1.0);
  if (args.target_r2) {
    if (args.noise_only) throw InputError("--target-r2 cannot be combined with --noise-only");
    noise = calibrate_noise_sd(spec, *args.target_r2, args.n, seed);
  }
  const CorpusTable table = generate_synthetic_corpus(spec, noise, args.n, seed);
  write_file(args.out, corpus_to_csv(table));
  out << "wrote " << args.n << " rows to " << args.out.string() << " (noise sd "
      << format_double(noise) << ", seed " << seed << ")\n";
  return 0;
}

namespace {

void print_trace_header(std::ostream& out) {
  out << "state  action      attrs     sentences  user act\n";
}

void print_trace_row(std::ostream& out, const std::string& state, const std::string& action,
                     int attrs_added, int attrs, int sent_added, int sents, UserAct act) {
  std::ostringstream a;
  std::ostringstream s;
  a << "+" << attrs_added << "=" << attrs;
  s << "+" << sent_added << "=" << sents;
  out << std::left << std::setw(7) << state << std::setw(12) << action << std::setw(10) << a.str()
      << std::setw(11) << s.str() << to_string(act) << std::right << "\n";
}

std::string read_token(std::istream& in, std::ostream& out, const std::string& prompt) {
  out << prompt << std::flush;
  std::string line;
  if (!std::getline(in, line)) throw InputError("walkthrough: input ended");
  const auto b = line.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = line.find_last_not_of(" \t\r");
  return line.substr(b, e - b + 1);
}

}  // namespace

int cmd_walkthrough(const WalkthroughArgs& args, std::istream& in, std::ostream& out) {
  const ExperimentConfig cfg = load_config_or_default(args.config);
  const Environment env = cfg.environment();
  const std::uint64_t seed = resolve_seed(args.seed, cfg.evaluation.seed);

  if (!args.interactive) {
    const std::string name = args.policy.value_or(args.weights ? "RL" : "B7");
    PolicyPtr policy;
    if (name == "RL") {
      if (!args.weights) throw InputError("policy RL requires --weights");
      policy = make_greedy(load_weights(*args.weights));
    } else {
      policy = make_baseline(name);
    }
    Rng rng(episode_seed(seed, policy->name(), 0));
    const EpisodeRecord rec = run_episode(*policy, env, cfg.reward, rng);
    out << "policy " << policy->name() << ", seed " << seed << "\n";
    print_trace_header(out);
    print_trace_row(out, "init", "-", 0, 0, 0, 0, UserAct::Silent);
    for (std::size_t i = 0; i < rec.steps.size(); ++i) {
      const auto& s = rec.steps[i];
      const bool last = s.action == StrategyAction::Stop;
      print_trace_row(out, last ? "end" : "s" + std::to_string(i + 1),
                      std::string(to_string(s.action)), s.attrs_added, s.attr_count,
                      s.sentences_added, s.sentence_count, s.user_act);
    }
    out << "reward " << format_double(rec.reward) << "\n";
    return 0;
  }

  std::optional<PolicyWeights> weights;
  if (args.weights) weights = load_weights(*args.weights);
  Rng rng(episode_seed(seed, "interactive", 0));
  GenerationContext ctx = env.reset();
  out << "interactive walkthrough, seed " << seed << "\n";
  print_trace_header(out);
  print_trace_row(out, "init", "-", 0, 0, 0, 0, UserAct::Silent);
  for (int step = 1;; ++step) {
    const ActionSet legal = allowed_actions(ctx);
    std::string prompt = "legal " + legal.to_string();
    if (weights) prompt += ", greedy " + std::string(to_string(greedy_action(*weights, ctx)));
    prompt += "; action> ";
    std::optional<StrategyAction> action;
    while (true) {
      const std::string token = read_token(in, out, prompt);
      action = parse_action(token);
      if (action && legal.contains(*action)) break;
      out << "'" << token << "' is not a legal action; choose one of " << legal.to_string()
          << "\n";
    }
    StepOutcome o = env.step(ctx, *action, rng);
    if (o.done) {
      print_trace_row(out, "end", "STOP", 0, o.next_ctx.attr_count, 0,
                      o.next_ctx.sentence_count, o.predicted_user_act);
      out << "reward "
          << format_double(terminal_reward(o.next_ctx, o.predicted_user_act, cfg.reward)) << "\n";
      return 0;
    }
    print_trace_row(out, "s" + std::to_string(step), std::string(to_string(*action)),
                    o.attrs_added, o.next_ctx.attr_count, o.sentences_added,
                    o.next_ctx.sentence_count, o.predicted_user_act);
    while (true) {
      const std::string token =
          read_token(in, out, "user act [enter keeps " +
                                  std::string(to_string(o.predicted_user_act)) + "]> ");
      if (token.empty()) break;
      const auto act = parse_user_act(token);
      if (act && *act != UserAct::Silent) {
        o.next_ctx.last_user_act = *act;
        out << "user act set to " << to_string(*act) << "\n";
        break;
      }
      out << "'" << token << "' is not a user act; use goal, else or quit\n";
    }
    ctx = std::move(o.next_ctx);
  }
}

}  // namespace infopres
