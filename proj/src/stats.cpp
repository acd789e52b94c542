#include "infopres/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "infopres/errors.hpp"
#include "infopres/special_functions.hpp"

namespace infopres {

double mean_of(std::span<const double> xs) {
  if (xs.empty()) throw ContractViolation("mean of an empty sample");
  return std::accumulate(xs.begin(), xs.end(), 0.0) / static_cast<double>(xs.size());
}

double sample_variance(std::span<const double> xs) {
  if (xs.size() < 2) return 0.0;
  const double m = mean_of(xs);
  double ss = 0.0;
  for (double x : xs) ss += (x - m) * (x - m);
  return ss / static_cast<double>(xs.size() - 1);
}

AnovaResult one_way_anova(const std::vector<std::vector<double>>& groups) {
  if (groups.size() < 2) throw ContractViolation("ANOVA needs at least two groups");
  std::size_t total_n = 0;
  double grand_sum = 0.0;
  for (const auto& g : groups) {
    if (g.size() < 2) throw ContractViolation("ANOVA needs at least two values per group");
    total_n += g.size();
    grand_sum += std::accumulate(g.begin(), g.end(), 0.0);
  }
  const double grand_mean = grand_sum / static_cast<double>(total_n);

  AnovaResult r;
  for (const auto& g : groups) {
    const double m = mean_of(g);
    r.ss_between += static_cast<double>(g.size()) * (m - grand_mean) * (m - grand_mean);
    for (double x : g) r.ss_within += (x - m) * (x - m);
  }
  r.df_between = static_cast<double>(groups.size() - 1);
  r.df_within = static_cast<double>(total_n - groups.size());

  // Treat sums of squares at rounding level of the data as exactly zero.
  const double scale = std::max(1.0, grand_mean * grand_mean) * static_cast<double>(total_n);
  const double eps = 1e-24 * scale;
  const bool no_between = r.ss_between <= eps;
  const bool no_within = r.ss_within <= eps;
  if (no_between && no_within) {
    throw DegenerateDataError("ANOVA: all values are identical");
  }
  if (no_between) {
    r.ss_between = 0.0;
    r.f = 0.0;
    r.p = 1.0;
    return r;
  }
  if (no_within) {
    r.f = std::numeric_limits<double>::infinity();
    r.p = 0.0;
    return r;
  }
  r.f = (r.ss_between / r.df_between) / (r.ss_within / r.df_within);
  r.p = f_upper_tail_p(r.f, r.df_between, r.df_within);
  return r;
}

WelchResult welch_ttest(std::span<const double> a, std::span<const double> b) {
  if (a.size() < 2 || b.size() < 2) {
    throw ContractViolation("t-test needs at least two values per group");
  }
  const double na = static_cast<double>(a.size());
  const double nb = static_cast<double>(b.size());
  const double diff = mean_of(a) - mean_of(b);
  const double va = sample_variance(a) / na;
  const double vb = sample_variance(b) / nb;
  WelchResult r;
  if (va + vb == 0.0) {
    r.degenerate = true;
    r.df = na + nb - 2.0;
    if (diff == 0.0) {
      r.t = 0.0;
      r.p = 1.0;
    } else {
      r.t = std::copysign(std::numeric_limits<double>::infinity(), diff);
      r.p = 0.0;
    }
    return r;
  }
  r.t = diff / std::sqrt(va + vb);
  r.df = (va + vb) * (va + vb) / (va * va / (na - 1.0) + vb * vb / (nb - 1.0));
  r.p = student_t_two_sided_p(r.t, r.df);
  return r;
}

const PairwiseComparison& SignificanceReport::pair(std::size_t i, std::size_t j) const {
  if (i > j) std::swap(i, j);
  for (const auto& c : pairwise) {
    if (c.i == i && c.j == j) return c;
  }
  throw ContractViolation("no comparison for pair (" + std::to_string(i) + ", " +
                          std::to_string(j) + ")");
}

SignificanceReport pairwise_ttests(const std::vector<std::vector<double>>& groups,
                                   double alpha) {
  SignificanceReport rep;
  rep.alpha = alpha;
  const std::size_t k = groups.size();
  rep.comparisons = k * (k - 1) / 2;
  if (k >= 2) {
    try {
      const AnovaResult anova = one_way_anova(groups);
      rep.anova_f = anova.f;
      rep.anova_p = anova.p;
    } catch (const DegenerateDataError&) {
      rep.anova_f = 0.0;
      rep.anova_p = 1.0;
    }
  }
  const double m = static_cast<double>(rep.comparisons);
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = i + 1; j < k; ++j) {
      const WelchResult w = welch_ttest(groups[i], groups[j]);
      PairwiseComparison c;
      c.i = i;
      c.j = j;
      c.t = w.t;
      c.df = w.df;
      c.raw_p = w.p;
      c.corrected_p = std::min(1.0, w.p * m);
      c.significant = c.corrected_p < alpha;
      c.degenerate = w.degenerate;
      rep.pairwise.push_back(c);
    }
  }
  return rep;
}

}  // namespace infopres
