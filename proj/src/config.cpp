#include "infopres/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <vector>

#include "infopres/errors.hpp"
#include "infopres/evaluation.hpp"
#include "infopres/rng.hpp"

namespace infopres {

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream is(s);
  while (std::getline(is, cur, ',')) out.push_back(trim(cur));
  return out;
}

// One `key = value` entry with its location, for diagnostics.
struct Entry {
  std::string value;
  std::size_t line = 0;
};

class Parser {
 public:
  Parser(std::string source, std::map<std::string, Entry> entries)
      : source_(std::move(source)), entries_(std::move(entries)) {}

  [[noreturn]] void fail(const std::string& key, const std::string& msg) const {
    const auto it = entries_.find(key);
    const std::string where =
        it == entries_.end() ? source_ : source_ + ":" + std::to_string(it->second.line);
    throw InputError(where + ": " + key + ": " + msg);
  }

  const Entry* get(const std::string& key) const {
    const auto it = entries_.find(key);
    return it == entries_.end() ? nullptr : &it->second;
  }

  double number(const std::string& key, const std::string& text) const {
    double v = 0.0;
    const auto res = std::from_chars(text.data(), text.data() + text.size(), v);
    if (text.empty() || res.ec != std::errc() || res.ptr != text.data() + text.size() ||
        !std::isfinite(v)) {
      fail(key, "expected a number, got '" + text + "'");
    }
    return v;
  }

  long long integer(const std::string& key, const std::string& text) const {
    long long v = 0;
    const auto res = std::from_chars(text.data(), text.data() + text.size(), v);
    if (text.empty() || res.ec != std::errc() || res.ptr != text.data() + text.size()) {
      fail(key, "expected an integer, got '" + text + "'");
    }
    return v;
  }

  void read(const std::string& key, double& out) const {
    if (const Entry* e = get(key)) out = number(key, e->value);
  }

  void read(const std::string& key, int& out) const {
    if (const Entry* e = get(key)) out = static_cast<int>(integer(key, e->value));
  }

  bool read_seed(const std::string& key, std::uint64_t& out) const {
    const Entry* e = get(key);
    if (e == nullptr) return false;
    std::uint64_t v = 0;
    const std::string& t = e->value;
    const auto res = std::from_chars(t.data(), t.data() + t.size(), v);
    if (t.empty() || res.ec != std::errc() || res.ptr != t.data() + t.size()) {
      fail(key, "expected a non-negative integer seed, got '" + t + "'");
    }
    out = v;
    return true;
  }

  void read_ints(const std::string& key, std::vector<int>& out) const {
    const Entry* e = get(key);
    if (e == nullptr) return;
    out.clear();
    for (const auto& item : split_list(e->value)) {
      out.push_back(static_cast<int>(integer(key, item)));
    }
  }

  void read_triple(const std::string& key, ActDistribution& out) const {
    const Entry* e = get(key);
    if (e == nullptr) return;
    const auto items = split_list(e->value);
    if (items.size() != 3) fail(key, "expected three comma-separated probabilities");
    ActDistribution row{};
    double sum = 0.0;
    for (std::size_t i = 0; i < 3; ++i) {
      row[i] = number(key, items[i]);
      if (row[i] < 0.0) fail(key, "probabilities must be non-negative");
      sum += row[i];
    }
    if (!(sum > 0.0)) fail(key, "probabilities must not all be zero");
    if (std::abs(sum - 100.0) > 1e-9) {
      for (double& p : row) p = 100.0 * p / sum;
    }
    out = row;
  }

 private:
  std::string source_;
  std::map<std::string, Entry> entries_;
};

// Splits the text into `section.key` entries, rejecting anything outside `known`.
std::map<std::string, Entry> tokenize(const std::string& text, const std::string& source,
                                      const std::set<std::string>& known) {
  std::map<std::string, Entry> entries;
  std::istringstream is(text);
  std::string raw;
  std::string section;
  std::size_t line_no = 0;
  while (std::getline(is, raw)) {
    ++line_no;
    if (line_no == 1 && raw.rfind("\xEF\xBB\xBF", 0) == 0) raw.erase(0, 3);
    const auto hash = raw.find('#');
    const std::string line = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
    if (line.empty()) continue;
    const std::string where = source + ":" + std::to_string(line_no);
    if (line.front() == '[') {
      if (line.back() != ']') throw InputError(where + ": unterminated section header");
      section = trim(line.substr(1, line.size() - 2));
      bool any = false;
      for (const auto& k : known) any = any || k.rfind(section + ".", 0) == 0;
      if (!any) throw InputError(where + ": unknown section [" + section + "]");
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw InputError(where + ": expected 'key = value'");
    if (section.empty()) throw InputError(where + ": key outside of any section");
    const std::string key = section + "." + trim(line.substr(0, eq));
    if (!known.contains(key)) throw InputError(where + ": unknown key '" + key + "'");
    if (entries.contains(key)) throw InputError(where + ": duplicate key '" + key + "'");
    entries[key] = {trim(line.substr(eq + 1)), line_no};
  }
  return entries;
}

const char* const kActionKeys[3] = {"summary", "compare", "recommend"};
const char* const kRowKeys[3] = {"concise", "average", "verbose"};
const char* const kPayoffKeys[3] = {"sys_goal", "user_else", "user_quit"};

std::set<std::string> config_keys() {
  std::set<std::string> k;
  for (const char* a : kActionKeys) {
    k.insert(std::string("environment.") + a + ".attrs");
    k.insert(std::string("environment.") + a + ".sentences");
  }
  for (const char* r : kRowKeys) k.insert(std::string("environment.usersim.") + r);
  k.insert("environment.usersim.overload");
  k.insert("environment.usersim.overload_threshold");
  for (const char* key : {"attr_weight", "sentence_weight", "scale"}) {
    k.insert(std::string("reward.") + key);
  }
  for (const char* p : kPayoffKeys) k.insert(std::string("reward.payoff.") + p);
  for (const char* key : {"episodes", "alpha", "gamma", "epsilon_start", "epsilon_end", "seed",
                          "attr_encoding"}) {
    k.insert(std::string("training.") + key);
  }
  k.insert("evaluation.n");
  k.insert("evaluation.seed");
  k.insert("output.directory");
  return k;
}

std::string join_ints(const std::vector<int>& xs) {
  std::string out;
  for (int x : xs) out += (out.empty() ? "" : ", ") + std::to_string(x);
  return out;
}

std::string join_triple(const ActDistribution& row) {
  return format_double(row[0]) + ", " + format_double(row[1]) + ", " + format_double(row[2]);
}

}  // namespace

void ExperimentConfig::validate() const {
  realizer.validate();
  user_sim.validate();
  training.validate();
  if (!(reward.scale > 0.0)) throw ContractViolation("reward scale must be positive");
  if (evaluation.n < 1) throw ContractViolation("evaluation n must be >= 1");
}

ExperimentConfig parse_config(const std::string& text, const std::string& source) {
  const Parser p(source, tokenize(text, source, config_keys()));
  ExperimentConfig cfg;
  for (std::size_t i = 0; i < 3; ++i) {
    const std::string base = std::string("environment.") + kActionKeys[i];
    p.read_ints(base + ".attrs", cfg.realizer.entries[i].attr_choices);
    p.read(base + ".sentences", cfg.realizer.entries[i].sentences_fixed);
    p.read_triple(std::string("environment.usersim.") + kRowKeys[i], cfg.user_sim.rows[i]);
  }
  p.read_triple("environment.usersim.overload", cfg.user_sim.overload_row);
  p.read("environment.usersim.overload_threshold", cfg.user_sim.overload_threshold);

  p.read("reward.attr_weight", cfg.reward.attr_weight);
  p.read("reward.sentence_weight", cfg.reward.sentence_weight);
  p.read("reward.scale", cfg.reward.scale);
  for (std::size_t i = 0; i < 3; ++i) {
    p.read(std::string("reward.payoff.") + kPayoffKeys[i], cfg.reward.payoff[i]);
  }

  p.read("training.episodes", cfg.training.episodes);
  p.read("training.alpha", cfg.training.alpha);
  p.read("training.gamma", cfg.training.gamma);
  p.read("training.epsilon_start", cfg.training.epsilon_start);
  p.read("training.epsilon_end", cfg.training.epsilon_end);
  cfg.training_seed_set = p.read_seed("training.seed", cfg.training.seed);
  if (const auto* e = p.get("training.attr_encoding")) {
    const auto enc = parse_attr_encoding(e->value);
    if (!enc) p.fail("training.attr_encoding", "expected one_hot or thermometer");
    cfg.training.encoding = *enc;
  }

  p.read("evaluation.n", cfg.evaluation.n);
  std::uint64_t eval_seed = 0;
  if (p.read_seed("evaluation.seed", eval_seed)) cfg.evaluation.seed = eval_seed;
  if (const auto* e = p.get("output.directory")) cfg.output_directory = e->value;

  // Map contract violations back to the section they came from.
  const std::vector<std::pair<std::string, std::function<void()>>> checks{
      {"environment", [&] { cfg.realizer.validate(); cfg.user_sim.validate(); }},
      {"training", [&] { cfg.training.validate(); }},
      {"reward.scale", [&] {
         if (!(cfg.reward.scale > 0.0)) throw ContractViolation("must be positive");
       }},
      {"evaluation.n", [&] {
         if (cfg.evaluation.n < 1) throw ContractViolation("must be >= 1");
       }},
  };
  for (const auto& [what, check] : checks) {
    try {
      check();
    } catch (const ContractViolation& e) {
      throw InputError(source + ": " + what + ": " + e.what());
    }
  }
  return cfg;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read config file " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str(), path.string());
}

std::string serialize_config(const ExperimentConfig& cfg) {
  std::ostringstream os;
  os << "[environment]\n";
  for (std::size_t i = 0; i < 3; ++i) {
    os << kActionKeys[i] << ".attrs = " << join_ints(cfg.realizer.entries[i].attr_choices) << '\n';
    os << kActionKeys[i] << ".sentences = " << cfg.realizer.entries[i].sentences_fixed << '\n';
  }
  for (std::size_t i = 0; i < 3; ++i) {
    os << "usersim." << kRowKeys[i] << " = " << join_triple(cfg.user_sim.rows[i]) << '\n';
  }
  os << "usersim.overload = " << join_triple(cfg.user_sim.overload_row) << '\n';
  os << "usersim.overload_threshold = " << cfg.user_sim.overload_threshold << '\n';

  os << "\n[reward]\n";
  os << "attr_weight = " << format_double(cfg.reward.attr_weight) << '\n';
  os << "sentence_weight = " << format_double(cfg.reward.sentence_weight) << '\n';
  os << "scale = " << format_double(cfg.reward.scale) << '\n';
  for (std::size_t i = 0; i < 3; ++i) {
    os << "payoff." << kPayoffKeys[i] << " = " << format_double(cfg.reward.payoff[i]) << '\n';
  }

  const TrainConfig& t = cfg.training;
  os << "\n[training]\n";
  os << "episodes = " << t.episodes << '\n';
  os << "alpha = " << format_double(t.alpha) << '\n';
  os << "gamma = " << format_double(t.gamma) << '\n';
  os << "epsilon_start = " << format_double(t.epsilon_start) << '\n';
  os << "epsilon_end = " << format_double(t.epsilon_end) << '\n';
  if (cfg.training_seed_set) os << "seed = " << t.seed << '\n';
  os << "attr_encoding = " << to_string(t.encoding) << '\n';

  os << "\n[evaluation]\n";
  os << "n = " << cfg.evaluation.n << '\n';
  if (cfg.evaluation.seed) os << "seed = " << *cfg.evaluation.seed << '\n';

  os << "\n[output]\n";
  os << "directory = " << cfg.output_directory << '\n';
  return os.str();
}

std::uint64_t config_hash(const ExperimentConfig& cfg) { return fnv1a64(serialize_config(cfg)); }

StrategyAverages parse_averages(const std::string& text, const std::string& source) {
  std::set<std::string> known;
  for (const char* a : kActionKeys) {
    known.insert(std::string("averages.") + a + ".attrs");
    known.insert(std::string("averages.") + a + ".sentences");
  }
  const Parser p(source, tokenize(text, source, known));
  StrategyAverages avg;
  for (std::size_t i = 0; i < 3; ++i) {
    const std::string base = std::string("averages.") + kActionKeys[i];
    p.read(base + ".attrs", avg.entries[i].mean_attrs);
    p.read(base + ".sentences", avg.entries[i].mean_sentences);
  }
  try {
    avg.validate();
  } catch (const ContractViolation& e) {
    throw InputError(source + ": " + e.what());
  }
  return avg;
}

std::string serialize_averages(const StrategyAverages& avg) {
  std::ostringstream os;
  os << "[averages]\n";
  for (std::size_t i = 0; i < 3; ++i) {
    os << kActionKeys[i] << ".attrs = " << format_double(avg.entries[i].mean_attrs) << '\n';
    os << kActionKeys[i] << ".sentences = " << format_double(avg.entries[i].mean_sentences)
       << '\n';
  }
  return os.str();
}

}  // namespace infopres
