#include "infopres/regression.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <set>
#include <sstream>

#include <Eigen/Dense>

#include "infopres/errors.hpp"
#include "infopres/evaluation.hpp"
#include "infopres/rng.hpp"
#include "infopres/special_functions.hpp"

namespace infopres {

std::size_t CorpusTable::feature_index(const std::string& name) const {
  const auto it = std::find(feature_names.begin(), feature_names.end(), name);
  if (it == feature_names.end()) throw ContractViolation("unknown feature '" + name + "'");
  return static_cast<std::size_t>(it - feature_names.begin());
}

void CorpusTable::validate() const {
  if (rows() < 2) throw ContractViolation("corpus needs at least two rows");
  if (columns.size() != feature_names.size()) {
    throw ContractViolation("corpus has " + std::to_string(columns.size()) + " columns for " +
                            std::to_string(feature_names.size()) + " feature names");
  }
  std::set<std::string> seen;
  for (std::size_t k = 0; k < columns.size(); ++k) {
    if (!seen.insert(feature_names[k]).second) {
      throw ContractViolation("duplicate feature name '" + feature_names[k] + "'");
    }
    if (columns[k].size() != rows()) {
      throw ContractViolation("feature '" + feature_names[k] + "' has the wrong length");
    }
    for (double v : columns[k]) {
      if (!std::isfinite(v)) {
        throw ContractViolation("feature '" + feature_names[k] + "' has a non-finite value");
      }
    }
  }
  for (double r : ratings) {
    if (!std::isfinite(r)) throw ContractViolation("corpus has a non-finite rating");
  }
}

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : line) {
    if (c == ',') {
      out.push_back(cur);
      cur.clear();
    } else if (c != '\r') {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t");
  return s.substr(b, e - b + 1);
}

}  // namespace

CorpusTable read_corpus_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw InputError("corpus CSV: empty input");
  if (line.size() >= 3 && line.compare(0, 3, "\xEF\xBB\xBF") == 0) line.erase(0, 3);
  const auto header = split_csv_line(line);
  if (header.empty() || trim(header[0]) != "rating") {
    throw InputError("corpus CSV: line 1: first column must be 'rating'");
  }
  CorpusTable t;
  std::set<std::string> seen;
  for (std::size_t k = 1; k < header.size(); ++k) {
    const std::string name = trim(header[k]);
    if (name.empty()) throw InputError("corpus CSV: line 1: empty feature name in column " +
                                       std::to_string(k + 1));
    if (!seen.insert(name).second) {
      throw InputError("corpus CSV: line 1: duplicate feature name '" + name + "'");
    }
    t.feature_names.push_back(name);
  }
  t.columns.resize(t.feature_names.size());

  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty() || trim(line) == "\r") continue;
    const auto fields = split_csv_line(line);
    if (fields.size() != header.size()) {
      throw InputError("corpus CSV: line " + std::to_string(line_no) + ": expected " +
                       std::to_string(header.size()) + " fields, found " +
                       std::to_string(fields.size()));
    }
    for (std::size_t k = 0; k < fields.size(); ++k) {
      const std::string f = trim(fields[k]);
      double v = 0.0;
      const auto res = std::from_chars(f.data(), f.data() + f.size(), v);
      if (f.empty() || res.ec != std::errc() || res.ptr != f.data() + f.size() ||
          !std::isfinite(v)) {
        throw InputError("corpus CSV: line " + std::to_string(line_no) + ", column '" +
                         trim(header[k]) + "': invalid number '" + f + "'");
      }
      if (k == 0) t.ratings.push_back(v);
      else t.columns[k - 1].push_back(v);
    }
  }
  if (t.rows() < 2) throw InputError("corpus CSV: need at least two data rows");
  return t;
}

std::string corpus_to_csv(const CorpusTable& table) {
  std::ostringstream os;
  os << "rating";
  for (const auto& n : table.feature_names) os << ',' << n;
  os << '\n';
  for (std::size_t r = 0; r < table.rows(); ++r) {
    os << format_double(table.ratings[r]);
    for (const auto& col : table.columns) os << ',' << format_double(col[r]);
    os << '\n';
  }
  return os.str();
}

const Coefficient* FittedModel::find(const std::string& name) const {
  for (const auto& c : coefficients) {
    if (c.name == name) return &c;
  }
  return nullptr;
}

std::vector<std::string> FittedModel::selected() const {
  std::vector<std::string> out;
  for (const auto& c : coefficients) out.push_back(c.name);
  return out;
}

namespace {

std::string join(const std::vector<std::string>& xs) {
  std::string out;
  for (const auto& x : xs) out += (out.empty() ? "" : ", ") + x;
  return out;
}

std::string trace_string(const std::vector<StepwiseDecision>& trace) {
  std::ostringstream os;
  for (const auto& d : trace) {
    os << (d.kind == StepwiseDecision::Kind::Enter ? " +" : " -") << d.feature << "(p=" << d.p
       << ")";
  }
  return os.str();
}

}  // namespace

SingularDesignError::SingularDesignError(const std::vector<std::string>& collinear)
    : std::runtime_error("singular design: collinear columns " + join(collinear)),
      collinear_(collinear) {}

StepwiseError::StepwiseError(const std::string& what, std::vector<StepwiseDecision> trace)
    : std::runtime_error(what + "; trace:" + trace_string(trace)), trace_(std::move(trace)) {}

FittedModel fit_ols(const CorpusTable& table, const std::vector<std::string>& features) {
  table.validate();
  const auto n = static_cast<Eigen::Index>(table.rows());
  const auto p = static_cast<Eigen::Index>(features.size()) + 1;
  if (n <= p) {
    throw ContractViolation("fit_ols: need more rows (" + std::to_string(n) +
                            ") than features + 1 (" + std::to_string(p) + ")");
  }

  Eigen::MatrixXd x(n, p);
  x.col(0).setOnes();
  std::vector<std::string> names{"(intercept)"};
  for (Eigen::Index k = 1; k < p; ++k) {
    const auto& col = table.columns[table.feature_index(features[static_cast<std::size_t>(k - 1)])];
    x.col(k) = Eigen::Map<const Eigen::VectorXd>(col.data(), n);
    names.push_back(features[static_cast<std::size_t>(k - 1)]);
  }
  const Eigen::VectorXd y = Eigen::Map<const Eigen::VectorXd>(table.ratings.data(), n);

  // Rank check on column-normalized data; report every column that adds no new direction.
  Eigen::MatrixXd xn = x;
  for (Eigen::Index k = 0; k < p; ++k) {
    const double norm = xn.col(k).norm();
    if (norm > 0.0) xn.col(k) /= norm;
  }
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> pivoted(xn);
  pivoted.setThreshold(1e-10);
  if (pivoted.rank() < p) {
    std::vector<std::string> collinear;
    Eigen::Index rank = 0;
    for (Eigen::Index k = 0; k < p; ++k) {
      Eigen::ColPivHouseholderQR<Eigen::MatrixXd> partial(xn.leftCols(k + 1));
      partial.setThreshold(1e-10);
      if (partial.rank() > rank) rank = partial.rank();
      else collinear.push_back(names[static_cast<std::size_t>(k)]);
    }
    throw SingularDesignError(collinear);
  }

  Eigen::HouseholderQR<Eigen::MatrixXd> qr(x);
  const Eigen::VectorXd beta = qr.solve(y);
  const Eigen::VectorXd resid = y - x * beta;
  const double ssr = resid.squaredNorm();
  const double ybar = y.mean();
  const double sst = (y.array() - ybar).matrix().squaredNorm();

  FittedModel m;
  m.n = static_cast<std::size_t>(n);
  m.r_squared = sst > 0.0 ? std::clamp(1.0 - ssr / sst, 0.0, 1.0) : 0.0;
  // Floor the residual variance at rounding level so exact fits give finite t.
  const double dof = static_cast<double>(n - p);
  const double sigma2 = std::max(ssr / dof, 1e-24 * std::max(sst, y.squaredNorm()) /
                                               static_cast<double>(n));
  m.residual_sd = std::sqrt(ssr / dof);

  const Eigen::MatrixXd r = qr.matrixQR().topRows(p).triangularView<Eigen::Upper>();
  const Eigen::MatrixXd r_inv =
      r.triangularView<Eigen::Upper>().solve(Eigen::MatrixXd::Identity(p, p));
  const Eigen::VectorXd var_diag = (r_inv * r_inv.transpose()).diagonal() * sigma2;

  auto make = [&](Eigen::Index k) {
    Coefficient c;
    c.name = names[static_cast<std::size_t>(k)];
    c.estimate = beta(k);
    c.std_error = std::sqrt(var_diag(k));
    c.t = c.estimate / c.std_error;
    c.p = student_t_two_sided_p(c.t, dof);
    return c;
  };
  const Coefficient icpt = make(0);
  m.intercept = icpt.estimate;
  m.intercept_std_error = icpt.std_error;
  for (Eigen::Index k = 1; k < p; ++k) {
    if (sst == 0.0) {
      // Constant response: slopes are exactly zero.
      Coefficient c = make(k);
      c.estimate = 0.0;
      c.t = 0.0;
      c.p = 1.0;
      m.coefficients.push_back(c);
    } else {
      m.coefficients.push_back(make(k));
    }
  }
  if (sst == 0.0) m.intercept = ybar;
  return m;
}

StepwiseResult stepwise_select(const CorpusTable& table, double p_enter, double p_remove,
                               int max_sweeps) {
  if (!(p_enter <= p_remove)) throw ContractViolation("stepwise: p_enter must be <= p_remove");
  table.validate();
  StepwiseResult out;
  std::vector<std::string> selected;

  for (int sweep = 0; sweep < max_sweeps; ++sweep) {
    bool changed = false;

    // Forward: best remaining candidate by p-value of its coefficient.
    std::string best;
    double best_p = 1.0;
    for (const auto& name : table.feature_names) {
      if (std::find(selected.begin(), selected.end(), name) != selected.end()) continue;
      if (table.rows() <= selected.size() + 2) break;
      std::vector<std::string> trial = selected;
      trial.push_back(name);
      double p = 1.0;
      try {
        p = fit_ols(table, trial).find(name)->p;
      } catch (const SingularDesignError&) {
        continue;
      }
      if (best.empty() || p < best_p) {
        best = name;
        best_p = p;
      }
    }
    if (!best.empty() && best_p < p_enter) {
      selected.push_back(best);
      out.trace.push_back({StepwiseDecision::Kind::Enter, best, best_p});
      changed = true;
    }

    // Backward: drop the weakest selected feature if it no longer earns its place.
    if (!selected.empty()) {
      const FittedModel current = fit_ols(table, selected);
      const Coefficient* worst = nullptr;
      for (const auto& c : current.coefficients) {
        if (worst == nullptr || c.p > worst->p) worst = &c;
      }
      if (worst != nullptr && worst->p > p_remove) {
        out.trace.push_back({StepwiseDecision::Kind::Remove, worst->name, worst->p});
        selected.erase(std::find(selected.begin(), selected.end(), worst->name));
        changed = true;
      }
    }

    if (!changed) {
      out.model = fit_ols(table, selected);
      return out;
    }
  }
  throw StepwiseError("stepwise selection did not converge after " + std::to_string(max_sweeps) +
                          " sweeps",
                      out.trace);
}

CorpusTable generate_synthetic_corpus(const SyntheticSpec& spec, double noise_sd, std::size_t n,
                                      std::uint64_t seed) {
  if (n < 1) throw ContractViolation("synthetic corpus: n must be >= 1");
  if (!(noise_sd >= 0.0)) throw ContractViolation("synthetic corpus: noise_sd must be >= 0");
  CorpusTable t;
  for (const auto& f : spec.features) {
    if (f.max_value < f.min_value) {
      throw ContractViolation("synthetic feature '" + f.name + "' has an empty range");
    }
    t.feature_names.push_back(f.name);
  }
  t.columns.assign(spec.features.size(), {});
  Rng rng(seed);
  for (std::size_t r = 0; r < n; ++r) {
    double rating = spec.intercept;
    for (std::size_t k = 0; k < spec.features.size(); ++k) {
      const auto& f = spec.features[k];
      const auto span = static_cast<std::uint64_t>(f.max_value - f.min_value + 1);
      const double v = f.min_value + static_cast<double>(rng.below(span));
      t.columns[k].push_back(v);
      rating += f.weight * v;
    }
    // Always draw the noise variate so feature values do not depend on noise_sd.
    rating += noise_sd * rng.normal();
    t.ratings.push_back(rating);
  }
  return t;
}

double calibrate_noise_sd(const SyntheticSpec& spec, double target_r2, std::size_t n,
                          std::uint64_t seed) {
  if (!(target_r2 > 0.0 && target_r2 < 1.0)) {
    throw ContractViolation("calibrate_noise_sd: target R^2 must be in (0, 1)");
  }
  std::vector<std::string> active;
  for (const auto& f : spec.features) {
    if (f.weight != 0.0) active.push_back(f.name);
  }
  if (active.empty()) throw ContractViolation("calibrate_noise_sd: no weighted features");
  auto r2_at = [&](double sd) {
    return fit_ols(generate_synthetic_corpus(spec, sd, n, seed), active).r_squared;
  };
  double lo = 0.0;
  double hi = 1.0;
  while (r2_at(hi) > target_r2) {
    hi *= 2.0;
    if (hi > 1e9) throw ContractViolation("calibrate_noise_sd: target R^2 unreachable");
  }
  for (int i = 0; i < 100 && hi - lo > 1e-12 * hi; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (r2_at(mid) > target_r2) lo = mid;
    else hi = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace infopres
