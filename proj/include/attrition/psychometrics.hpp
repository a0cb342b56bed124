#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <limits>
#include <string>
#include <vector>

#include <json.hpp>

#include "attrition/distributions.hpp"
#include "attrition/error.hpp"
#include "attrition/subscale.hpp"
#include "attrition/types.hpp"

namespace attrition {

// --- basic descriptives ------------------------------------------------------

inline Eigen::MatrixXd responses_to_matrix(
    const std::vector<ParticipantResponse>& responses) {
  Eigen::MatrixXd m(static_cast<Eigen::Index>(responses.size()), kItemCount);
  for (Eigen::Index r = 0; r < m.rows(); ++r)
    for (int c = 0; c < kItemCount; ++c) m(r, c) = responses[r].items[c];
  return m;
}

// Sample covariance with n-1 denominator.
inline Eigen::MatrixXd covariance_matrix(const Eigen::MatrixXd& x) {
  if (x.rows() < 2) fail(ErrorKind::InsufficientData, "covariance needs >= 2 rows");
  const Eigen::MatrixXd centered = x.rowwise() - x.colwise().mean();
  return centered.transpose() * centered / static_cast<double>(x.rows() - 1);
}

// Mean of one respondent's items within each subscale.
inline std::array<double, kSubscaleCount> subscale_scores(
    const ParticipantResponse& response, const SubscaleMap& map) {
  std::array<double, kSubscaleCount> out{};
  for (int s = 0; s < kSubscaleCount; ++s) {
    double sum = 0;
    for (int i : map.items[s]) sum += response.items[i - 1];
    out[s] = sum / static_cast<double>(map.items[s].size());
  }
  return out;
}

struct SubscaleDescriptives {
  std::string name;
  double mean = 0;
  double sd = 0;
};

inline std::vector<SubscaleDescriptives> descriptives(
    const std::vector<ParticipantResponse>& responses, const SubscaleMap& map) {
  const std::size_t n = responses.size();
  if (n < 2) fail(ErrorKind::InsufficientData, "descriptives need >= 2 responses");
  std::vector<SubscaleDescriptives> out(kSubscaleCount);
  std::vector<std::array<double, kSubscaleCount>> scores;
  scores.reserve(n);
  for (const auto& r : responses) scores.push_back(subscale_scores(r, map));
  for (int s = 0; s < kSubscaleCount; ++s) {
    double mean = 0;
    for (const auto& sc : scores) mean += sc[s];
    mean /= static_cast<double>(n);
    double ss = 0;
    for (const auto& sc : scores) ss += (sc[s] - mean) * (sc[s] - mean);
    out[s] = {map.names[s], mean, std::sqrt(ss / static_cast<double>(n - 1))};
  }
  return out;
}

// Number formatting used in the report tables: up to four decimals, trailing
// zeros trimmed, at least two decimals kept (4.06, 4.1525, 3.85).
inline std::string format_stat(double v, int max_dec = 4, int min_dec = 2) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", max_dec, v);
  std::string s(buf);
  const auto dot = s.find('.');
  std::size_t end = s.size();
  while (end > dot + 1 + static_cast<std::size_t>(min_dec) && s[end - 1] == '0')
    --end;
  return s.substr(0, end);
}

// "Goal Setting (μ=4.06)" style rendering.
inline std::string format_subscale_mean(const std::string& name, double mean) {
  return name + " (μ=" + format_stat(mean) + ")";
}

// --- reliability -------------------------------------------------------------

struct AlphaReport {
  std::string name;
  double alpha = 0;
  int item_count = 0;
  std::size_t respondent_count = 0;
};

// Cronbach's alpha: k/(k-1) * (1 - sum of item variances / variance of row
// sums), all variances with the n-1 denominator.
inline double cronbach_alpha(const Eigen::MatrixXd& items) {
  const Eigen::Index n = items.rows(), k = items.cols();
  if (n < 2 || k < 2)
    fail(ErrorKind::InsufficientData, "cronbach_alpha needs n >= 2 and k >= 2");
  const Eigen::MatrixXd centered = items.rowwise() - items.colwise().mean();
  double item_var_sum = 0;
  for (Eigen::Index j = 0; j < k; ++j)
    item_var_sum += centered.col(j).squaredNorm() / static_cast<double>(n - 1);
  const Eigen::VectorXd totals = items.rowwise().sum();
  const double total_mean = totals.mean();
  const double total_var =
      (totals.array() - total_mean).square().sum() / static_cast<double>(n - 1);
  if (total_var == 0.0)
    fail(ErrorKind::Degenerate, "total-score variance is zero");
  return (static_cast<double>(k) / static_cast<double>(k - 1)) *
         (1.0 - item_var_sum / total_var);
}

inline std::vector<AlphaReport> alpha_by_subscale(
    const std::vector<ParticipantResponse>& responses, const SubscaleMap& map) {
  const Eigen::MatrixXd all = responses_to_matrix(responses);
  std::vector<AlphaReport> out;
  for (int s = 0; s < kSubscaleCount; ++s) {
    Eigen::MatrixXd sub(all.rows(), static_cast<Eigen::Index>(map.items[s].size()));
    for (std::size_t j = 0; j < map.items[s].size(); ++j)
      sub.col(static_cast<Eigen::Index>(j)) = all.col(map.items[s][j] - 1);
    out.push_back({map.names[s], cronbach_alpha(sub),
                   static_cast<int>(map.items[s].size()), responses.size()});
  }
  return out;
}

// --- confirmatory factor analysis ---------------------------------------------

// Degrees of freedom for a simple-structure model with factor variances fixed
// to 1: p(p+1)/2 observed moments minus (p loadings + p uniquenesses + one
// covariance per active factor pair).
inline int model_df(const LoadingPattern& pattern) {
  const int p = pattern.items;
  std::vector<int> used(pattern.factors, 0);
  for (int f : pattern.factor_of) used[f] = 1;
  int m = 0;
  for (int u : used) m += u;
  return p * (p + 1) / 2 - (p + p + m * (m - 1) / 2);
}

struct CfaOptions {
  double tol = 1e-6;            // gradient max-norm for convergence
  int max_iter = 5000;
  double min_uniqueness = 1e-4;
  double max_abs_corr = 0.999;  // keeps factor correlations off the poles
  double start_loading = 0.7;
};

struct CfaModel {
  LoadingPattern pattern;
  Eigen::MatrixXd loadings;       // items x factors, zero off-pattern
  Eigen::MatrixXd factor_corr;    // factors x factors, unit diagonal
  Eigen::VectorXd uniqueness;     // items
  std::vector<int> heywood_items; // uniquenesses pinned at the lower bound

  Eigen::MatrixXd implied_covariance() const {
    return loadings * factor_corr * loadings.transpose() +
           Eigen::MatrixXd(uniqueness.asDiagonal());
  }
};

struct CfaFit {
  double chi2 = 0;
  int df = 0;
  double p_value = 0;
  double cfi = 0;
  double tli = 0;
  double rmsea = 0;
  double rmsea_lo = 0;
  double rmsea_hi = 0;
  std::size_t n = 0;
  double discrepancy = 0;  // minimized value of F
  int iterations = 0;
  double grad_norm = 0;
  bool baseline_degenerate = false;  // baseline fits perfectly; CFI/TLI forced to 1
};

// Maximum-likelihood discrepancy for a simple-structure CFA, parameterized as
// [loadings (p), lower-triangle factor correlations (m(m-1)/2),
// uniquenesses (p)]. Exposed so tests can finite-difference the gradient.
class CfaProblem {
 public:
  CfaProblem(Eigen::MatrixXd sample_cov, LoadingPattern pattern)
      : s_(std::move(sample_cov)), pattern_(std::move(pattern)) {
    const int p = pattern_.items;
    if (s_.rows() != p || s_.cols() != p)
      fail(ErrorKind::Dimension, "covariance size does not match pattern");
    if (!s_.isApprox(s_.transpose(), 1e-10))
      fail(ErrorKind::NotPositiveDefinite, "sample covariance is not symmetric");
    Eigen::LLT<Eigen::MatrixXd> llt(s_);
    if (llt.info() != Eigen::Success)
      fail(ErrorKind::NotPositiveDefinite, "sample covariance is not positive definite");
    logdet_s_ = 2.0 * Eigen::MatrixXd(llt.matrixL()).diagonal().array().log().sum();
    pairs_ = active_factor_pairs(pattern_);
  }

  static std::vector<std::pair<int, int>> active_factor_pairs(
      const LoadingPattern& pattern) {
    std::vector<int> used(pattern.factors, 0);
    for (int f : pattern.factor_of) used[f] = 1;
    std::vector<std::pair<int, int>> pairs;
    for (int a = 0; a < pattern.factors; ++a)
      for (int b = a + 1; b < pattern.factors; ++b)
        if (used[a] && used[b]) pairs.emplace_back(a, b);
    return pairs;
  }

  int dim() const {
    return 2 * pattern_.items + static_cast<int>(pairs_.size());
  }

  int n_loadings() const { return pattern_.items; }
  int n_corrs() const { return static_cast<int>(pairs_.size()); }
  const Eigen::MatrixXd& sample_cov() const { return s_; }
  const LoadingPattern& pattern() const { return pattern_; }
  double logdet_sample() const { return logdet_s_; }

  void unpack(const Eigen::VectorXd& th, Eigen::MatrixXd& lambda,
              Eigen::MatrixXd& phi, Eigen::VectorXd& theta) const {
    const int p = pattern_.items, m = pattern_.factors;
    lambda = Eigen::MatrixXd::Zero(p, m);
    for (int i = 0; i < p; ++i) lambda(i, pattern_.factor_of[i]) = th(i);
    phi = Eigen::MatrixXd::Identity(m, m);
    for (std::size_t q = 0; q < pairs_.size(); ++q) {
      phi(pairs_[q].first, pairs_[q].second) = th(p + static_cast<int>(q));
      phi(pairs_[q].second, pairs_[q].first) = th(p + static_cast<int>(q));
    }
    theta = th.tail(p);
  }

  // F(theta) = ln|Sigma| - ln|S| + tr(S Sigma^-1) - p, +inf when Sigma is not
  // positive definite.
  double value(const Eigen::VectorXd& th) const {
    Eigen::MatrixXd lambda, phi;
    Eigen::VectorXd theta;
    unpack(th, lambda, phi, theta);
    const Eigen::MatrixXd sigma = lambda * phi * lambda.transpose() +
                                  Eigen::MatrixXd(theta.asDiagonal());
    Eigen::LLT<Eigen::MatrixXd> llt(sigma);
    if (llt.info() != Eigen::Success)
      return std::numeric_limits<double>::infinity();
    const double logdet =
        2.0 * Eigen::MatrixXd(llt.matrixL()).diagonal().array().log().sum();
    const Eigen::MatrixXd inv =
        llt.solve(Eigen::MatrixXd::Identity(sigma.rows(), sigma.cols()));
    const double trace = (s_.cwiseProduct(inv)).sum();
    return logdet - logdet_s_ + trace - static_cast<double>(pattern_.items);
  }

  Eigen::VectorXd gradient(const Eigen::VectorXd& th) const {
    Eigen::MatrixXd lambda, phi;
    Eigen::VectorXd theta;
    unpack(th, lambda, phi, theta);
    const Eigen::MatrixXd sigma = lambda * phi * lambda.transpose() +
                                  Eigen::MatrixXd(theta.asDiagonal());
    Eigen::LLT<Eigen::MatrixXd> llt(sigma);
    if (llt.info() != Eigen::Success)
      fail(ErrorKind::NotPositiveDefinite, "gradient requested at infeasible point");
    const Eigen::MatrixXd inv =
        llt.solve(Eigen::MatrixXd::Identity(sigma.rows(), sigma.cols()));
    // dF/dSigma = Sigma^-1 (Sigma - S) Sigma^-1
    const Eigen::MatrixXd g = inv - inv * s_ * inv;

    const int p = pattern_.items;
    Eigen::VectorXd grad(dim());
    const Eigen::MatrixXd glp = 2.0 * g * lambda * phi;
    for (int i = 0; i < p; ++i) grad(i) = glp(i, pattern_.factor_of[i]);
    const Eigen::MatrixXd lgl = lambda.transpose() * g * lambda;
    for (std::size_t q = 0; q < pairs_.size(); ++q)
      grad(p + static_cast<int>(q)) =
          2.0 * lgl(pairs_[q].first, pairs_[q].second);
    for (int i = 0; i < p; ++i) grad(p + n_corrs() + i) = g(i, i);
    return grad;
  }

 private:
  Eigen::MatrixXd s_;
  LoadingPattern pattern_;
  std::vector<std::pair<int, int>> pairs_;
  double logdet_s_ = 0;
};

namespace detail {

struct Bounds {
  Eigen::VectorXd lo, hi;

  Eigen::VectorXd clamp(const Eigen::VectorXd& v) const {
    return v.cwiseMax(lo).cwiseMin(hi);
  }

  double projected_grad_norm(const Eigen::VectorXd& th,
                             const Eigen::VectorXd& g) const {
    double norm = 0;
    for (Eigen::Index i = 0; i < th.size(); ++i) {
      double gi = g(i);
      if (th(i) <= lo(i) && gi > 0) gi = 0;
      if (th(i) >= hi(i) && gi < 0) gi = 0;
      norm = std::max(norm, std::fabs(gi));
    }
    return norm;
  }
};

struct BfgsResult {
  Eigen::VectorXd x;
  double value = 0;
  double grad_norm = 0;
  int iterations = 0;
  bool converged = false;
};

// Dense BFGS with box bounds handled by projection; the inverse-Hessian
// approximation is reset whenever the active set changes or curvature
// breaks down. Accepted steps never increase the objective.
template <typename Value, typename Gradient>
BfgsResult bfgs_minimize(const Value& value_fn, const Gradient& grad_fn,
                         Eigen::VectorXd x0, const Bounds& bounds, double tol,
                         int max_iter) {
  const Eigen::Index n = x0.size();
  Eigen::VectorXd x = bounds.clamp(x0);
  double f = value_fn(x);
  if (!std::isfinite(f))
    fail(ErrorKind::NotPositiveDefinite, "infeasible start point");
  Eigen::VectorXd g = grad_fn(x);
  Eigen::MatrixXd h = Eigen::MatrixXd::Identity(n, n);

  BfgsResult res;
  auto active_mask = [&](const Eigen::VectorXd& v) {
    std::vector<int> mask(n);
    for (Eigen::Index i = 0; i < n; ++i)
      mask[i] = (v(i) <= bounds.lo(i)) ? -1 : (v(i) >= bounds.hi(i) ? 1 : 0);
    return mask;
  };
  std::vector<int> mask = active_mask(x);

  int stalls = 0;
  int iter = 0;
  for (; iter < max_iter; ++iter) {
    const double pg = bounds.projected_grad_norm(x, g);
    if (pg < tol) {
      res.converged = true;
      break;
    }
    Eigen::VectorXd d = -(h * g);
    if (d.dot(g) >= 0) {
      h.setIdentity();
      d = -g;
    }
    double step = 1.0;
    bool accepted = false;
    Eigen::VectorXd x_new;
    double f_new = f;
    for (int ls = 0; ls < 70; ++ls) {
      x_new = bounds.clamp(x + step * d);
      const Eigen::VectorXd s = x_new - x;
      if (s.lpNorm<Eigen::Infinity>() == 0.0) break;
      f_new = value_fn(x_new);
      const double slope = g.dot(s);
      if (std::isfinite(f_new) &&
          f_new <= f + 1e-4 * std::min(slope, 0.0) && f_new <= f) {
        accepted = true;
        break;
      }
      step *= 0.5;
    }
    if (!accepted) {
      if (++stalls >= 2) break;
      h.setIdentity();
      continue;
    }
    stalls = 0;
    Eigen::VectorXd g_new = grad_fn(x_new);
    const Eigen::VectorXd s = x_new - x;
    const Eigen::VectorXd y = g_new - g;
    const std::vector<int> mask_new = active_mask(x_new);
    const double sy = s.dot(y);
    if (mask_new != mask) {
      h.setIdentity();
    } else if (sy > 1e-12 * s.norm() * y.norm()) {
      const Eigen::VectorXd hy = h * y;
      const double yhy = y.dot(hy);
      h += ((sy + yhy) / (sy * sy)) * (s * s.transpose()) -
           (hy * s.transpose() + s * hy.transpose()) / sy;
    } else {
      h.setIdentity();
    }
    mask = mask_new;
    x = std::move(x_new);
    f = f_new;
    g = std::move(g_new);
  }
  res.x = x;
  res.value = f;
  res.grad_norm = bounds.projected_grad_norm(x, g);
  res.iterations = iter;
  return res;
}

}  // namespace detail

// Independence baseline: Sigma_b = diag(S), so F_b = ln|diag S| - ln|S| and
// df_b = p(p-1)/2.
inline std::pair<double, int> baseline_model(const Eigen::MatrixXd& s,
                                             std::size_t n) {
  Eigen::LLT<Eigen::MatrixXd> llt(s);
  if (!s.isApprox(s.transpose(), 1e-10) || llt.info() != Eigen::Success)
    fail(ErrorKind::NotPositiveDefinite, "baseline needs a positive-definite covariance");
  const double logdet_s =
      2.0 * Eigen::MatrixXd(llt.matrixL()).diagonal().array().log().sum();
  const double logdet_diag = s.diagonal().array().log().sum();
  const double f_b = logdet_diag - logdet_s;
  const int p = static_cast<int>(s.rows());
  return {static_cast<double>(n - 1) * f_b, p * (p - 1) / 2};
}

struct FitIndices {
  double cfi = 0;
  double tli = 0;
  double rmsea = 0;
};

inline FitIndices fit_indices(double chi2_m, int df_m, double chi2_b, int df_b,
                              std::size_t n) {
  if (df_m <= 0) fail(ErrorKind::Range, "fit_indices requires df_m > 0");
  if (df_b <= df_m) fail(ErrorKind::Range, "fit_indices requires df_b > df_m");
  if (n <= 1) fail(ErrorKind::Range, "fit_indices requires n > 1");
  if (chi2_b <= df_b)
    fail(ErrorKind::DegenerateBaseline,
         "baseline chi-square does not exceed its degrees of freedom");
  FitIndices out;
  const double excess_m = std::max(chi2_m - df_m, 0.0);
  const double den = std::max({chi2_b - df_b, chi2_m - df_m, 0.0});
  out.cfi = den == 0.0 ? 1.0 : 1.0 - excess_m / den;
  const double rb = chi2_b / df_b;
  const double rm = chi2_m / df_m;
  out.tli = (rb - rm) / (rb - 1.0);
  out.rmsea = std::sqrt(excess_m / (df_m * static_cast<double>(n - 1)));
  return out;
}

// 90% interval for RMSEA: solve the noncentrality that puts the observed
// chi-square at the 0.95 / 0.05 quantile of the noncentral distribution,
// then rescale. Bisection; bounds clamp at zero noncentrality.
inline std::pair<double, double> rmsea_ci(double chi2_m, int df_m, std::size_t n,
                                          double level = 0.90) {
  if (df_m <= 0) fail(ErrorKind::Range, "rmsea_ci requires df_m > 0");
  if (n <= 1) fail(ErrorKind::Range, "rmsea_ci requires n > 1");
  const double tail = (1.0 - level) / 2.0;

  auto solve = [&](double target) -> double {
    // CDF decreases in lambda; target in (0,1).
    if (noncentral_chi2_cdf(chi2_m, df_m, 0.0) <= target) return 0.0;
    double lo = 0.0, hi = 1.0;
    int guard = 0;
    while (noncentral_chi2_cdf(chi2_m, df_m, hi) > target) {
      lo = hi;
      hi *= 2.0;
      if (++guard > 200)
        fail(ErrorKind::NonConvergence, "rmsea_ci bracket expansion failed");
    }
    for (int i = 0; i < 200; ++i) {
      const double mid = 0.5 * (lo + hi);
      if (noncentral_chi2_cdf(chi2_m, df_m, mid) > target)
        lo = mid;
      else
        hi = mid;
      if (hi - lo < 1e-10 * (1.0 + hi)) break;
    }
    return 0.5 * (lo + hi);
  };

  const double lam_lo = solve(1.0 - tail);
  const double lam_hi = solve(tail);
  const double scale = df_m * static_cast<double>(n - 1);
  return {std::sqrt(std::max(lam_lo, 0.0) / scale),
          std::sqrt(std::max(lam_hi, 0.0) / scale)};
}

inline std::pair<CfaModel, CfaFit> fit_cfa(const Eigen::MatrixXd& s,
                                           std::size_t n,
                                           const LoadingPattern& pattern,
                                           const CfaOptions& opts = {}) {
  if (static_cast<int>(n) <= pattern.items)
    fail(ErrorKind::InsufficientData, "fit_cfa requires n > number of items");
  CfaProblem problem(s, pattern);
  const int p = pattern.items;
  const int nc = problem.n_corrs();
  const int dim = problem.dim();

  Eigen::VectorXd x0(dim);
  x0.head(p).setConstant(opts.start_loading);
  x0.segment(p, nc).setZero();
  x0.tail(p) = 0.5 * s.diagonal();

  detail::Bounds bounds;
  bounds.lo = Eigen::VectorXd::Constant(dim, -std::numeric_limits<double>::infinity());
  bounds.hi = Eigen::VectorXd::Constant(dim, std::numeric_limits<double>::infinity());
  bounds.lo.segment(p, nc).setConstant(-opts.max_abs_corr);
  bounds.hi.segment(p, nc).setConstant(opts.max_abs_corr);
  bounds.lo.tail(p).setConstant(opts.min_uniqueness);

  const auto res = detail::bfgs_minimize(
      [&](const Eigen::VectorXd& v) { return problem.value(v); },
      [&](const Eigen::VectorXd& v) { return problem.gradient(v); }, x0, bounds,
      opts.tol, opts.max_iter);
  if (!res.converged)
    fail(ErrorKind::NonConvergence,
         "CFA did not converge: " + std::to_string(res.iterations) +
             " iterations, projected gradient max-norm " +
             std::to_string(res.grad_norm) + ", F " + std::to_string(res.value));

  CfaModel model;
  model.pattern = pattern;
  Eigen::VectorXd theta;
  problem.unpack(res.x, model.loadings, model.factor_corr, theta);
  model.uniqueness = theta;
  for (int i = 0; i < p; ++i)
    if (theta(i) <= opts.min_uniqueness + 1e-12) model.heywood_items.push_back(i);

  CfaFit fit;
  fit.discrepancy = res.value;
  fit.iterations = res.iterations;
  fit.grad_norm = res.grad_norm;
  fit.n = n;
  fit.df = model_df(pattern);
  fit.chi2 = static_cast<double>(n - 1) * std::max(res.value, 0.0);
  fit.p_value = fit.df > 0 ? chi2_sf(fit.chi2, fit.df) : 1.0;
  const auto [chi2_b, df_b] = baseline_model(s, n);
  if (fit.df > 0) {
    if (chi2_b > df_b && df_b > fit.df) {
      const FitIndices fi = fit_indices(fit.chi2, fit.df, chi2_b, df_b, n);
      fit.cfi = fi.cfi;
      fit.tli = fi.tli;
      fit.rmsea = fi.rmsea;
    } else {
      fit.baseline_degenerate = true;
      fit.cfi = 1.0;
      fit.tli = 1.0;
      fit.rmsea = std::sqrt(std::max(fit.chi2 - fit.df, 0.0) /
                            (fit.df * static_cast<double>(n - 1)));
    }
    const auto [lo, hi] = rmsea_ci(fit.chi2, fit.df, n);
    fit.rmsea_lo = lo;
    fit.rmsea_hi = hi;
  } else {
    fit.cfi = 1.0;
    fit.tli = 1.0;
  }
  return {std::move(model), fit};
}

// --- report rendering ----------------------------------------------------------

inline std::string alpha_table_text(const std::vector<AlphaReport>& reports) {
  std::string out = "OSLQ Internal Consistency\n";
  out += "Sub Scales               Cronbach's Alpha\n";
  for (const auto& r : reports) {
    char line[96];
    std::snprintf(line, sizeof(line), "%-24s %s\n", r.name.c_str(),
                  format_stat(r.alpha, 3, 3).c_str());
    out += line;
  }
  return out;
}

inline std::string descriptives_text(const std::vector<SubscaleDescriptives>& d) {
  std::string out = "Subscale descriptives\n";
  for (const auto& s : d)
    out += format_subscale_mean(s.name, s.mean) + ", sd=" + format_stat(s.sd) + "\n";
  return out;
}

inline std::string cfa_tables_text(const CfaFit& fit) {
  char buf[256];
  std::string out = "Exact Model Fit\n";
  out += "chi^2        df     p\n";
  std::snprintf(buf, sizeof(buf), "%-12s %-6d %s\n", format_stat(fit.chi2).c_str(),
                fit.df,
                fit.p_value < 0.001 ? "< .001" : format_stat(fit.p_value, 4, 3).c_str());
  out += buf;
  out += "\nFit Measures\n";
  out += "CFI     TLI     RMSEA    RMSEA 90% CI\n";
  out += "                         Lower    Upper\n";
  std::snprintf(buf, sizeof(buf), "%-7s %-7s %-8s %-8s %s\n",
                format_stat(fit.cfi, 3, 3).c_str(), format_stat(fit.tli, 3, 3).c_str(),
                format_stat(fit.rmsea, 4, 4).c_str(),
                format_stat(fit.rmsea_lo, 4, 4).c_str(),
                format_stat(fit.rmsea_hi, 4, 4).c_str());
  out += buf;
  return out;
}

inline nlohmann::json alpha_report_json(const std::vector<AlphaReport>& reports) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& r : reports)
    arr.push_back({{"subscale", r.name},
                   {"alpha", r.alpha},
                   {"items", r.item_count},
                   {"respondents", r.respondent_count}});
  return arr;
}

inline nlohmann::json descriptives_json(const std::vector<SubscaleDescriptives>& d) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& s : d)
    arr.push_back({{"subscale", s.name}, {"mean", s.mean}, {"sd", s.sd}});
  return arr;
}

inline nlohmann::json cfa_fit_json(const CfaFit& fit) {
  return {{"chi2", fit.chi2},
          {"df", fit.df},
          {"p_value", fit.p_value},
          {"cfi", fit.cfi},
          {"tli", fit.tli},
          {"rmsea", fit.rmsea},
          {"rmsea_ci90", {fit.rmsea_lo, fit.rmsea_hi}},
          {"n", fit.n},
          {"discrepancy", fit.discrepancy},
          {"iterations", fit.iterations},
          {"grad_norm", fit.grad_norm},
          {"baseline_degenerate", fit.baseline_degenerate}};
}

}  // namespace attrition
