#include "infopres/evaluation.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <iomanip>
#include <limits>
#include <map>
#include <sstream>

#include "infopres/errors.hpp"

namespace infopres {

std::string format_double(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (std::isnan(v)) return "nan";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

namespace {

double parse_double(const std::string& s) {
  if (s == "inf") return std::numeric_limits<double>::infinity();
  if (s == "-inf") return -std::numeric_limits<double>::infinity();
  double v = 0.0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size()) {
    throw InputError("report: malformed number '" + s + "'");
  }
  return v;
}

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream is(line);
  while (std::getline(is, cur, sep)) out.push_back(cur);
  if (!line.empty() && line.back() == sep) out.emplace_back();
  return out;
}

int canonical_rank(const std::string& name) {
  for (std::size_t i = 0; i < kBaselineIds.size(); ++i) {
    if (kBaselineIds[i] == name) return static_cast<int>(i);
  }
  if (name == "RL") return static_cast<int>(kBaselineIds.size());
  return static_cast<int>(kBaselineIds.size()) + 1;
}

std::string hex(std::uint64_t v) {
  std::ostringstream os;
  os << std::hex << std::setw(16) << std::setfill('0') << v;
  return os.str();
}

std::string action_string(const EpisodeRecord& rec) {
  std::string out;
  for (const auto& s : rec.steps) {
    if (!out.empty()) out += ' ';
    out += to_string(s.action);
  }
  return out;
}

}  // namespace

std::uint64_t episode_seed(std::uint64_t master_seed, const std::string& policy,
                           std::uint64_t episode) {
  return derive_seed(derive_seed(master_seed, fnv1a64(policy)), episode);
}

EvalResult run_eval(const Policy& policy, const Environment& env, const RewardModel& reward,
                    int n, std::uint64_t master_seed, bool keep_episodes) {
  if (n < 1) throw ContractViolation("run_eval: n must be >= 1");
  EvalResult res;
  res.policy = policy.name();
  res.rewards.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    Rng rng(episode_seed(master_seed, policy.name(), static_cast<std::uint64_t>(i)));
    EpisodeRecord rec = run_episode(policy, env, reward, rng);
    res.rewards.push_back(rec.reward);
    if (keep_episodes) res.episodes.push_back(std::move(rec));
  }
  res.mean = mean_of(res.rewards);
  res.degenerate_sample = n == 1;
  res.std = std::sqrt(sample_variance(res.rewards));
  return res;
}

void sort_canonical(std::vector<EvalResult>& results) {
  std::stable_sort(results.begin(), results.end(), [](const EvalResult& a, const EvalResult& b) {
    const int ra = canonical_rank(a.policy);
    const int rb = canonical_rank(b.policy);
    if (ra != rb) return ra < rb;
    return ra > static_cast<int>(kBaselineIds.size()) && a.policy < b.policy;
  });
}

Report render_report(const std::vector<EvalResult>& results, const SignificanceReport& sig,
                     const ReportMetadata& meta) {
  std::ostringstream txt;
  txt << "Evaluation results (n=" << meta.n << ", seed=" << meta.seed
      << ", config=" << hex(meta.config_hash) << ")\n\n";
  txt << std::left << std::setw(8) << "policy" << std::right << std::setw(10) << "reward"
      << "   (+-std)\n";
  txt << std::fixed << std::setprecision(1);
  for (const auto& r : results) {
    txt << std::left << std::setw(8) << r.policy << std::right << std::setw(10) << r.mean
        << "   (+-" << r.std << ")" << (r.degenerate_sample ? "  [n=1]" : "") << "\n";
  }
  txt << "\nOne-way ANOVA: F = " << std::setprecision(3) << sig.anova_f
      << ", p = " << std::scientific << std::setprecision(3) << sig.anova_p << "\n";
  txt << "Pairwise Welch t-tests, Bonferroni m = " << sig.comparisons
      << ", alpha = " << std::defaultfloat << sig.alpha << "\n";
  for (const auto& c : sig.pairwise) {
    txt << "  " << std::left << std::setw(4) << results.at(c.i).policy << " vs "
        << std::setw(4) << results.at(c.j).policy << std::right << std::fixed
        << std::setprecision(3) << "  t = " << std::setw(8) << c.t << std::scientific
        << std::setprecision(3) << "  p = " << c.raw_p << "  p_bonf = " << c.corrected_p
        << (c.significant ? "  *" : "") << (c.degenerate ? "  [degenerate]" : "") << "\n";
  }

  std::ostringstream csv;
  csv << "policy,n,mean,std\n";
  for (const auto& r : results) {
    csv << r.policy << ',' << r.rewards.size() << ',' << format_double(r.mean) << ','
        << format_double(r.std) << '\n';
  }
  csv << "\npolicy_a,policy_b,t,df,raw_p,corrected_p,significant,degenerate\n";
  for (const auto& c : sig.pairwise) {
    csv << results.at(c.i).policy << ',' << results.at(c.j).policy << ',' << format_double(c.t)
        << ',' << format_double(c.df) << ',' << format_double(c.raw_p) << ','
        << format_double(c.corrected_p) << ',' << (c.significant ? 1 : 0) << ','
        << (c.degenerate ? 1 : 0) << '\n';
  }
  csv << "\nkey,value\n";
  csv << "seed," << meta.seed << '\n';
  csv << "config_hash," << hex(meta.config_hash) << '\n';
  csv << "n," << meta.n << '\n';
  csv << "alpha," << format_double(sig.alpha) << '\n';
  csv << "anova_f," << format_double(sig.anova_f) << '\n';
  csv << "anova_p," << format_double(sig.anova_p) << '\n';
  return {txt.str(), csv.str()};
}

ParsedReport parse_report_csv(const std::string& csv) {
  ParsedReport out;
  std::istringstream is(csv);
  std::string line;
  int section = -1;
  std::map<std::string, std::size_t> index;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    if (line == "policy,n,mean,std") {
      section = 0;
      continue;
    }
    if (line.rfind("policy_a,", 0) == 0) {
      section = 1;
      continue;
    }
    if (line == "key,value") {
      section = 2;
      continue;
    }
    const auto f = split(line, ',');
    if (section == 0 && f.size() == 4) {
      index[f[0]] = out.rows.size();
      out.rows.push_back({f[0], std::stoi(f[1]), parse_double(f[2]), parse_double(f[3])});
    } else if (section == 1 && f.size() == 8) {
      PairwiseComparison c;
      c.i = index.at(f[0]);
      c.j = index.at(f[1]);
      c.t = parse_double(f[2]);
      c.df = parse_double(f[3]);
      c.raw_p = parse_double(f[4]);
      c.corrected_p = parse_double(f[5]);
      c.significant = f[6] == "1";
      c.degenerate = f[7] == "1";
      out.pairwise.push_back(c);
      out.pairwise_names.emplace_back(f[0], f[1]);
    } else if (section == 2 && f.size() == 2) {
      if (f[0] == "seed") out.meta.seed = std::stoull(f[1]);
      else if (f[0] == "config_hash") out.meta.config_hash = std::stoull(f[1], nullptr, 16);
      else if (f[0] == "n") out.meta.n = std::stoi(f[1]);
      else if (f[0] == "anova_f") out.anova_f = parse_double(f[1]);
      else if (f[0] == "anova_p") out.anova_p = parse_double(f[1]);
    } else {
      throw InputError("report: unexpected line '" + line + "'");
    }
  }
  return out;
}

std::string episodes_csv(const std::vector<EvalResult>& results, std::uint64_t master_seed) {
  std::ostringstream csv;
  csv << "episode,policy,seed,actions,attrs,sentences,user_act,reward\n";
  for (const auto& r : results) {
    for (std::size_t i = 0; i < r.episodes.size(); ++i) {
      const EpisodeRecord& rec = r.episodes[i];
      csv << i << ',' << r.policy << ',' << episode_seed(master_seed, r.policy, i) << ','
          << action_string(rec) << ',' << rec.final_ctx.attr_count << ','
          << rec.final_ctx.sentence_count << ',' << to_string(rec.realized_act) << ','
          << format_double(rec.reward) << '\n';
    }
  }
  return csv.str();
}

}  // namespace infopres
