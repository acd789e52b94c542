#include <gtest/gtest.h>

#include <cmath>
#include <algorithm>
#include <map>
#include <sstream>

#include "infopres/errors.hpp"
#include "infopres/regression.hpp"
#include "infopres/rng.hpp"

using namespace infopres;

namespace {

CorpusTable table_from(std::vector<double> y, std::vector<std::pair<std::string, std::vector<double>>> cols) {
  CorpusTable t;
  t.ratings = std::move(y);
  for (auto& [n, c] : cols) {
    t.feature_names.push_back(n);
    t.columns.push_back(std::move(c));
  }
  return t;
}

SyntheticSpec noise_only_spec() {
  SyntheticSpec s;
  for (auto& f : s.features) f.weight = 0.0;
  return s;
}

}  // namespace

TEST(FitOls, ExactLinearData) {
  std::vector<double> x, y;
  for (int i = 0; i < 10; ++i) {
    x.push_back(i);
    y.push_back(2.0 * i);
  }
  const auto m = fit_ols(table_from(y, {{"x", x}}), {"x"});
  EXPECT_NEAR(m.find("x")->estimate, 2.0, 1e-12);
  EXPECT_NEAR(m.intercept, 0.0, 1e-12);
  EXPECT_NEAR(m.r_squared, 1.0, 1e-12);
}

TEST(FitOls, ConstantResponse) {
  const auto t = table_from({4, 4, 4, 4, 4}, {{"a", {1, 2, 3, 5, 8}}, {"b", {2, 1, 2, 1, 0}}});
  const auto m = fit_ols(t, {"a", "b"});
  EXPECT_EQ(m.r_squared, 0.0);
  for (const auto& c : m.coefficients) EXPECT_EQ(c.estimate, 0.0);
  EXPECT_DOUBLE_EQ(m.intercept, 4.0);
}

TEST(FitOls, RecoversGeneratingWeightsUnderModerateNoise) {
  SyntheticSpec spec;
  spec.features.resize(2);
  const auto t = generate_synthetic_corpus(spec, 0.5, 512, 42);
  const auto m = fit_ols(t, {"n_attr", "n_sentence"});
  EXPECT_NEAR(m.find("n_attr")->estimate, 0.775, 0.05);
  EXPECT_NEAR(m.find("n_sentence")->estimate, -0.301, 0.05);
}

TEST(FitOls, NoiselessCorpusIsRecoveredExactly) {
  const auto t = generate_synthetic_corpus(SyntheticSpec{}, 0.0, 100, 3);
  const auto m = fit_ols(t, {"n_attr", "n_sentence"});
  EXPECT_NEAR(m.find("n_attr")->estimate, 0.775, 1e-9);
  EXPECT_NEAR(m.find("n_sentence")->estimate, -0.301, 1e-9);
  EXPECT_NEAR(m.r_squared, 1.0, 1e-12);
}

TEST(FitOls, SingularDesignNamesCollinearColumns) {
  const auto t = table_from({1, 2, 3, 5, 4, 6},
                            {{"a", {1, 2, 3, 4, 5, 6}},
                             {"b", {2, 4, 6, 8, 10, 12}},
                             {"c", {1, 0, 1, 0, 1, 1}}});
  try {
    fit_ols(t, {"a", "b", "c"});
    FAIL() << "expected SingularDesignError";
  } catch (const SingularDesignError& e) {
    EXPECT_EQ(e.collinear_columns(), std::vector<std::string>{"b"});
  }
  const auto constant = table_from({1, 2, 3, 4}, {{"k", {7, 7, 7, 7}}});
  EXPECT_THROW(fit_ols(constant, {"k"}), SingularDesignError);
}

TEST(FitOls, TooFewRows) {
  const auto t = table_from({1, 2, 3}, {{"a", {1, 2, 4}}, {"b", {0, 1, 0}}});
  EXPECT_THROW(fit_ols(t, {"a", "b"}), ContractViolation);
}

TEST(FitOls, ResidualsOrthogonalToSelectedColumns) {
  const auto t = generate_synthetic_corpus(SyntheticSpec{}, 2.0, 300, 8);
  const std::vector<std::string> feats{"n_attr", "n_sentence", "n_words"};
  const auto m = fit_ols(t, feats);
  std::vector<double> resid(t.rows());
  for (std::size_t r = 0; r < t.rows(); ++r) {
    double pred = m.intercept;
    for (const auto& c : m.coefficients) pred += c.estimate * t.columns[t.feature_index(c.name)][r];
    resid[r] = t.ratings[r] - pred;
  }
  double rnorm = 0.0;
  for (double e : resid) rnorm += e * e;
  rnorm = std::sqrt(rnorm);
  for (const auto& name : feats) {
    const auto& col = t.columns[t.feature_index(name)];
    double dot = 0.0, cnorm = 0.0;
    for (std::size_t r = 0; r < t.rows(); ++r) {
      dot += resid[r] * col[r];
      cnorm += col[r] * col[r];
    }
    EXPECT_LT(std::abs(dot) / (rnorm * std::sqrt(cnorm)), 1e-8) << name;
  }
}

TEST(FitOls, RSquaredInvariantUnderAffineRescaling) {
  Rng rng(5);
  const auto t = generate_synthetic_corpus(SyntheticSpec{}, 3.0, 200, 19);
  const std::vector<std::string> feats{"n_attr", "n_sentence", "n_items"};
  const double base = fit_ols(t, feats).r_squared;
  for (int i = 0; i < 20; ++i) {
    CorpusTable scaled = t;
    auto& col = scaled.columns[rng.below(scaled.columns.size())];
    const double a = 0.01 + rng.uniform() * 50, b = rng.uniform() * 100 - 50;
    for (double& v : col) v = a * v + b;
    EXPECT_NEAR(fit_ols(scaled, feats).r_squared, base, 1e-10);
  }
}

TEST(Synthetic, DeterministicGivenSeed) {
  const auto a = generate_synthetic_corpus(SyntheticSpec{}, 1.0, 50, 77);
  const auto b = generate_synthetic_corpus(SyntheticSpec{}, 1.0, 50, 77);
  EXPECT_EQ(a.ratings, b.ratings);
  EXPECT_EQ(a.columns, b.columns);
  const auto c = generate_synthetic_corpus(SyntheticSpec{}, 2.0, 50, 77);
  EXPECT_EQ(a.columns, c.columns);  // features do not depend on noise level
}

TEST(Synthetic, CalibratedNoiseHitsTargetRSquared) {
  const SyntheticSpec spec;
  const double sd = calibrate_noise_sd(spec, 0.34, 512, 1);
  const auto m = fit_ols(generate_synthetic_corpus(spec, sd, 512, 1), {"n_attr", "n_sentence"});
  EXPECT_NEAR(m.r_squared, 0.34, 1e-6);
  double mean_r2 = 0.0;
  for (std::uint64_t s = 100; s < 120; ++s) {
    mean_r2 += fit_ols(generate_synthetic_corpus(spec, sd, 512, s), {"n_attr", "n_sentence"})
                   .r_squared / 20.0;
  }
  EXPECT_NEAR(mean_r2, 0.34, 0.05);
}

TEST(Stepwise, SelectsTrueFeaturesAmongDistractors) {
  constexpr int kSeeds = 100;
  int both_true = 0;
  int distractor_entries = 0;
  for (std::uint64_t seed = 0; seed < kSeeds; ++seed) {
    const auto t = generate_synthetic_corpus(SyntheticSpec{}, 0.5, 512, seed);
    const auto m = stepwise_select(t).model;
    both_true += m.find("n_attr") != nullptr && m.find("n_sentence") != nullptr;
    distractor_entries += static_cast<int>(m.coefficients.size()) -
                          (m.find("n_attr") != nullptr) - (m.find("n_sentence") != nullptr);
  }
  EXPECT_EQ(both_true, kSeeds);
  // Three null distractors, each entering with probability about p_enter.
  const double rate = distractor_entries / (3.0 * kSeeds);
  EXPECT_LE(rate, 0.05 + 3.0 * std::sqrt(0.05 * 0.95 / (3.0 * kSeeds)));
}

TEST(Stepwise, SingleStrongFeature) {
  SyntheticSpec spec;
  spec.features = {{"x", 1.5, 0, 20}};
  const auto res = stepwise_select(generate_synthetic_corpus(spec, 1.0, 100, 2));
  EXPECT_EQ(res.model.selected(), std::vector<std::string>{"x"});
  ASSERT_EQ(res.trace.size(), 1u);
  EXPECT_EQ(res.trace[0].kind, StepwiseDecision::Kind::Enter);
}

TEST(Stepwise, PureNoiseRarelySelectsAnything) {
  const SyntheticSpec spec = noise_only_spec();
  std::map<std::string, int> hits;
  int empty = 0;
  constexpr int kSeeds = 400;
  for (std::uint64_t seed = 0; seed < kSeeds; ++seed) {
    const auto m = stepwise_select(generate_synthetic_corpus(spec, 1.0, 200, seed)).model;
    empty += m.coefficients.empty();
    for (const auto& n : m.selected()) hits[n]++;
  }
  // Each distractor enters at most about p_enter of the time (3-sigma Monte Carlo slack).
  const double slack = 3.0 * std::sqrt(0.05 * 0.95 / kSeeds);
  for (const auto& [name, count] : hits) {
    EXPECT_LE(count / static_cast<double>(kSeeds), 0.05 + slack) << name;
  }
  EXPECT_GT(empty, kSeeds / 2);
}

TEST(Stepwise, ThresholdOrderAndDeterminism) {
  const auto t = generate_synthetic_corpus(SyntheticSpec{}, 2.0, 200, 4);
  EXPECT_THROW(stepwise_select(t, 0.2, 0.1), ContractViolation);
  const auto a = stepwise_select(t);
  const auto b = stepwise_select(t);
  EXPECT_EQ(a.model.selected(), b.model.selected());
  ASSERT_EQ(a.trace.size(), b.trace.size());
}

TEST(Stepwise, NonConvergenceReportsTrace) {
  const auto t = generate_synthetic_corpus(SyntheticSpec{}, 0.5, 200, 4);
  try {
    stepwise_select(t, 0.05, 0.10, 1);
    FAIL() << "expected StepwiseError";
  } catch (const StepwiseError& e) {
    ASSERT_FALSE(e.trace().empty());
    EXPECT_NE(std::string(e.what()).find("trace"), std::string::npos);
  }
}

TEST(CorpusCsv, ReadAndDiagnostics) {
  std::istringstream good("rating,n_attr,n_sentence\n1.5,2,1\n2.0,3,2\n0.5,1,3\n");
  const auto t = read_corpus_csv(good);
  EXPECT_EQ(t.rows(), 3u);
  EXPECT_EQ(t.feature_names, (std::vector<std::string>{"n_attr", "n_sentence"}));
  EXPECT_DOUBLE_EQ(t.columns[1][2], 3.0);

  std::istringstream bad_header("score,a\n1,2\n3,4\n");
  EXPECT_THROW(read_corpus_csv(bad_header), InputError);
  std::istringstream bad_cell("rating,a\n1,2\n3,x\n");
  try {
    read_corpus_csv(bad_cell);
    FAIL();
  } catch (const InputError& e) {
    EXPECT_NE(std::string(e.what()).find("line 3"), std::string::npos);
    EXPECT_NE(std::string(e.what()).find("'a'"), std::string::npos);
  }
  std::istringstream ragged("rating,a\n1,2\n3\n");
  EXPECT_THROW(read_corpus_csv(ragged), InputError);
  std::istringstream dup("rating,a,a\n1,2,3\n3,4,5\n");
  EXPECT_THROW(read_corpus_csv(dup), InputError);
}

TEST(CorpusCsv, WriteThenReadPreservesValues) {
  const auto t = generate_synthetic_corpus(SyntheticSpec{}, 1.3, 30, 6);
  std::istringstream in(corpus_to_csv(t));
  const auto back = read_corpus_csv(in);
  EXPECT_EQ(back.ratings, t.ratings);
  EXPECT_EQ(back.columns, t.columns);
  EXPECT_EQ(back.feature_names, t.feature_names);
}
