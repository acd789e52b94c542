#include "infopres/weights_io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "infopres/errors.hpp"

namespace infopres {

using nlohmann::ordered_json;

namespace {

constexpr const char* kFormatName = "infopres-policy-weights";

}  // namespace

std::string weights_to_json(const PolicyWeights& w) {
  ordered_json doc;
  doc["format"] = kFormatName;
  doc["version"] = kWeightsFormatVersion;
  doc["feature_dimension"] = kFeatureDim;
  doc["attr_encoding"] = std::string(to_string(w.encoding));
  doc["feature_names"] = feature_names();
  ordered_json actions = ordered_json::object();
  for (StrategyAction a : kAllActions) actions[std::string(to_string(a))] = w[a];
  doc["weights"] = std::move(actions);
  const TrainConfig& t = w.trained_with;
  doc["metadata"] = {
      {"episodes", w.episodes_trained},
      {"seed", t.seed},
      {"alpha", t.alpha},
      {"gamma", t.gamma},
      {"epsilon_start", t.epsilon_start},
      {"epsilon_end", t.epsilon_end},
  };
  return doc.dump(2) + "\n";
}

PolicyWeights weights_from_json(const std::string& text) {
  ordered_json doc;
  try {
    doc = ordered_json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw InputError(std::string("weights: invalid JSON: ") + e.what());
  }
  try {
    if (doc.at("format").get<std::string>() != kFormatName) {
      throw InputError("weights: not a policy weights document");
    }
    const int version = doc.at("version").get<int>();
    if (version != kWeightsFormatVersion) {
      throw InputError("weights: unsupported format version " + std::to_string(version));
    }
    const auto dim = doc.at("feature_dimension").get<std::size_t>();
    if (dim != kFeatureDim) {
      throw InputError("weights: feature dimension " + std::to_string(dim) + " does not match " +
                       std::to_string(kFeatureDim));
    }
    PolicyWeights w;
    const auto encoding = parse_attr_encoding(doc.at("attr_encoding").get<std::string>());
    if (!encoding) throw InputError("weights: unknown attr_encoding");
    w.encoding = *encoding;
    const auto& vectors = doc.at("weights");
    for (StrategyAction a : kAllActions) {
      const auto values = vectors.at(std::string(to_string(a))).get<std::vector<double>>();
      if (values.size() != kFeatureDim) {
        throw InputError("weights: vector for " + std::string(to_string(a)) + " has " +
                         std::to_string(values.size()) + " entries, expected " +
                         std::to_string(kFeatureDim));
      }
      std::copy(values.begin(), values.end(), w[a].begin());
    }
    const auto& meta = doc.at("metadata");
    w.episodes_trained = meta.at("episodes").get<int>();
    w.trained_with.episodes = w.episodes_trained;
    w.trained_with.seed = meta.at("seed").get<std::uint64_t>();
    w.trained_with.alpha = meta.at("alpha").get<double>();
    w.trained_with.gamma = meta.at("gamma").get<double>();
    w.trained_with.epsilon_start = meta.at("epsilon_start").get<double>();
    w.trained_with.epsilon_end = meta.at("epsilon_end").get<double>();
    w.trained_with.encoding = w.encoding;
    return w;
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("weights: ") + e.what());
  }
}

void save_weights(const PolicyWeights& w, const std::filesystem::path& path) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write weights file " + path.string());
  out << weights_to_json(w);
}

PolicyWeights load_weights(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read weights file " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return weights_from_json(buf.str());
}

}  // namespace infopres
