#pragma once

#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace infopres {

class DegenerateDataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

double mean_of(std::span<const double> xs);
// Sample variance (n - 1 denominator); 0 for fewer than two values.
double sample_variance(std::span<const double> xs);

struct AnovaResult {
  double f = 0.0;
  double p = 1.0;
  double df_between = 0.0;
  double df_within = 0.0;
  double ss_between = 0.0;
  double ss_within = 0.0;
};

// One-way ANOVA. Requires >= 2 groups of >= 2 values each. Throws
// DegenerateDataError when both between- and within-group variance vanish.
AnovaResult one_way_anova(const std::vector<std::vector<double>>& groups);

struct WelchResult {
  double t = 0.0;
  double df = 0.0;
  double p = 1.0;
  bool degenerate = false;  // both groups have zero variance
};

// Two-sided Welch two-sample t-test (a minus b).
WelchResult welch_ttest(std::span<const double> a, std::span<const double> b);

struct PairwiseComparison {
  std::size_t i = 0;
  std::size_t j = 0;
  double t = 0.0;
  double df = 0.0;
  double raw_p = 1.0;
  double corrected_p = 1.0;
  bool significant = false;
  bool degenerate = false;
};

struct SignificanceReport {
  double anova_f = 0.0;
  double anova_p = 1.0;
  double alpha = 0.05;
  std::size_t comparisons = 0;  // m = k(k-1)/2
  std::vector<PairwiseComparison> pairwise;  // (0,1), (0,2), ..., (k-2,k-1)

  const PairwiseComparison& pair(std::size_t i, std::size_t j) const;
};

// Welch t-tests for every unordered pair with Bonferroni correction
// corrected_p = min(1, raw_p * m). Also runs the omnibus ANOVA when it is defined.
SignificanceReport pairwise_ttests(const std::vector<std::vector<double>>& groups,
                                   double alpha = 0.05);

}  // namespace infopres
