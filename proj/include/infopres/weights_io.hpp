#pragma once

#include <filesystem>
#include <string>

#include "infopres/learning.hpp"

namespace infopres {

inline constexpr int kWeightsFormatVersion = 1;

// Versioned JSON document: feature names, dimension, per-action vectors and
// training metadata. Output is deterministic for equal weights.
std::string weights_to_json(const PolicyWeights& w);

// Throws InputError on malformed documents, unsupported versions or a
// feature dimension other than kFeatureDim.
PolicyWeights weights_from_json(const std::string& text);

void save_weights(const PolicyWeights& w, const std::filesystem::path& path);
PolicyWeights load_weights(const std::filesystem::path& path);

}  // namespace infopres
