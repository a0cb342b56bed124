#pragma once

#include <cmath>
#include <limits>

#include "attrition/error.hpp"

namespace attrition {

namespace detail {

// Regularized lower incomplete gamma P(a,x) by series expansion, valid for
// x < a + 1.
inline double gamma_p_series(double a, double x) {
  double ap = a;
  double sum = 1.0 / a;
  double term = sum;
  for (int n = 0; n < 1000; ++n) {
    ap += 1.0;
    term *= x / ap;
    sum += term;
    if (std::fabs(term) < std::fabs(sum) * 1e-16)
      return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
  }
  fail(ErrorKind::NonConvergence, "incomplete gamma series did not converge");
}

// Regularized upper incomplete gamma Q(a,x) by Lentz's continued fraction,
// valid for x >= a + 1.
inline double gamma_q_cf(double a, double x) {
  const double tiny = 1e-300;
  double b = x + 1.0 - a;
  double c = 1.0 / tiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i < 1000; ++i) {
    const double an = -i * (i - a);
    b += 2.0;
    d = an * d + b;
    if (std::fabs(d) < tiny) d = tiny;
    c = b + an / c;
    if (std::fabs(c) < tiny) c = tiny;
    d = 1.0 / d;
    const double delta = d * c;
    h *= delta;
    if (std::fabs(delta - 1.0) < 1e-16)
      return h * std::exp(-x + a * std::log(x) - std::lgamma(a));
  }
  fail(ErrorKind::NonConvergence, "incomplete gamma continued fraction did not converge");
}

}  // namespace detail

// Regularized lower incomplete gamma P(a, x).
inline double gamma_p(double a, double x) {
  if (a <= 0.0) fail(ErrorKind::Range, "gamma_p requires a > 0");
  if (x < 0.0) fail(ErrorKind::Range, "gamma_p requires x >= 0");
  if (x == 0.0) return 0.0;
  return x < a + 1.0 ? detail::gamma_p_series(a, x) : 1.0 - detail::gamma_q_cf(a, x);
}

// Regularized upper incomplete gamma Q(a, x) = 1 - P(a, x).
inline double gamma_q(double a, double x) {
  if (a <= 0.0) fail(ErrorKind::Range, "gamma_q requires a > 0");
  if (x < 0.0) fail(ErrorKind::Range, "gamma_q requires x >= 0");
  if (x == 0.0) return 1.0;
  return x < a + 1.0 ? 1.0 - detail::gamma_p_series(a, x) : detail::gamma_q_cf(a, x);
}

inline double chi2_cdf(double x, double df) {
  if (x <= 0.0) return 0.0;
  return gamma_p(df / 2.0, x / 2.0);
}

// Upper tail of the central chi-square; used for model p-values.
inline double chi2_sf(double x, double df) {
  if (x <= 0.0) return 1.0;
  return gamma_q(df / 2.0, x / 2.0);
}

// Noncentral chi-square CDF as the Poisson(lambda/2)-weighted mixture of
// central chi-square CDFs. Terms start at the modal Poisson weight (so large
// noncentralities do not underflow) and expand outward until the remaining
// Poisson mass is below 1e-10; since every central CDF factor is <= 1, that
// mass bounds the truncation error.
inline double noncentral_chi2_cdf(double x, double df, double lambda) {
  if (x <= 0.0) return 0.0;
  if (lambda < 1e-300) return chi2_cdf(x, df);

  const double half = lambda / 2.0;
  const long j0 = static_cast<long>(half);
  const double logw0 =
      -half + (j0 > 0 ? j0 * std::log(half) : 0.0) - std::lgamma(j0 + 1.0);
  const double w0 = std::exp(logw0);

  double sum = w0 * chi2_cdf(x, df + 2.0 * j0);
  double covered = w0;

  double wf = w0;
  for (long j = j0 + 1; j < j0 + 100000; ++j) {
    wf *= half / j;
    sum += wf * chi2_cdf(x, df + 2.0 * j);
    covered += wf;
    if (1.0 - covered < 1e-10) return sum;
    if (wf < 1e-300) break;
  }
  double wb = w0;
  for (long j = j0; j >= 1; --j) {
    wb *= j / half;
    sum += wb * chi2_cdf(x, df + 2.0 * (j - 1));
    covered += wb;
    if (1.0 - covered < 1e-10) return sum;
  }
  if (1.0 - covered > 1e-8)
    fail(ErrorKind::NonConvergence, "noncentral chi-square series left mass " +
                                        std::to_string(1.0 - covered));
  return sum;
}

}  // namespace attrition
