#pragma once

#include <cstdint>
#include <istream>
#include <stdexcept>
#include <string>
#include <vector>

namespace infopres {

// Ratings with named numeric features, column-major.
struct CorpusTable {
  std::vector<std::string> feature_names;
  std::vector<double> ratings;
  std::vector<std::vector<double>> columns;  // columns[k][row]

  std::size_t rows() const { return ratings.size(); }
  std::size_t feature_index(const std::string& name) const;

  // >= 2 rows, finite values, unique names, consistent column lengths.
  void validate() const;
};

// CSV with header `rating,<feature>,...`, dot decimals. Errors name row and column.
CorpusTable read_corpus_csv(std::istream& in);
std::string corpus_to_csv(const CorpusTable& table);

struct Coefficient {
  std::string name;
  double estimate = 0.0;
  double std_error = 0.0;
  double t = 0.0;
  double p = 1.0;
};

struct FittedModel {
  std::vector<Coefficient> coefficients;  // selected features only, in selection order
  double intercept = 0.0;
  double intercept_std_error = 0.0;
  double r_squared = 0.0;
  double residual_sd = 0.0;
  std::size_t n = 0;

  const Coefficient* find(const std::string& name) const;
  std::vector<std::string> selected() const;
};

class SingularDesignError : public std::runtime_error {
 public:
  SingularDesignError(const std::vector<std::string>& collinear);
  const std::vector<std::string>& collinear_columns() const { return collinear_; }

 private:
  std::vector<std::string> collinear_;
};

// Least squares with intercept via Householder QR. Requires rows > features + 1
// and a full-rank design.
FittedModel fit_ols(const CorpusTable& table, const std::vector<std::string>& features);

struct StepwiseDecision {
  enum class Kind { Enter, Remove };
  Kind kind;
  std::string feature;
  double p;
};

class StepwiseError : public std::runtime_error {
 public:
  StepwiseError(const std::string& what, std::vector<StepwiseDecision> trace);
  const std::vector<StepwiseDecision>& trace() const { return trace_; }

 private:
  std::vector<StepwiseDecision> trace_;
};

struct StepwiseResult {
  FittedModel model;
  std::vector<StepwiseDecision> trace;
};

// Forward selection with backward elimination on coefficient p-values: each
// sweep enters the best candidate with p < p_enter, then removes the worst
// selected feature with p > p_remove, until neither happens.
StepwiseResult stepwise_select(const CorpusTable& table, double p_enter = 0.05,
                               double p_remove = 0.10, int max_sweeps = 100);

struct SyntheticFeature {
  std::string name;
  double weight = 0.0;
  int min_value = 0;
  int max_value = 0;  // inclusive; values drawn uniformly
};

struct SyntheticSpec {
  std::vector<SyntheticFeature> features{{"n_attr", 0.775, 1, 9},
                                         {"n_sentence", -0.301, 1, 11},
                                         {"n_words", 0.0, 5, 80},
                                         {"n_items", 0.0, 1, 6},
                                         {"n_clauses", 0.0, 1, 8}};
  double intercept = 0.0;
};

// rating = intercept + sum(weight * feature) + N(0, noise_sd^2).
CorpusTable generate_synthetic_corpus(const SyntheticSpec& spec, double noise_sd, std::size_t n,
                                      std::uint64_t seed);

// Noise level at which an OLS fit on the weighted features of a seeded corpus
// reaches `target_r2`, found by bisection.
double calibrate_noise_sd(const SyntheticSpec& spec, double target_r2, std::size_t n,
                          std::uint64_t seed);

}  // namespace infopres
