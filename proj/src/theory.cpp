#include "fpp/theory.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "fpp/special_functions.hpp"

namespace fpp {

namespace {

// Root of f on [lo, hi] by bisection followed by Newton polishing; f must
// change sign on the bracket.
template <class F, class DF>
double solve_increasing(const F& f, const DF& df, double lo, double hi) {
  double flo = f(lo);
  if (!(flo < 0.0) || !(f(hi) > 0.0))
    throw std::logic_error("solve_increasing: bracket does not straddle the root");
  for (int i = 0; i < 80; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (f(mid) < 0.0)
      lo = mid;
    else
      hi = mid;
  }
  double x = 0.5 * (lo + hi);
  for (int i = 0; i < 8; ++i) x -= f(x) / df(x);
  return x;
}

double alpha_for_coefficient(double c) {
  // Solve a ln a - c a = 1.  The function is increasing past e^{c-1} and the
  // root lies above e^c; bracket generously.
  const auto f = [c](double a) { return a * std::log(a) - c * a - 1.0; };
  const auto df = [c](double a) { return std::log(a) + 1.0 - c; };
  return solve_increasing(f, df, std::exp(c) + 1e-12, 6.0);
}

}  // namespace

double loglog_bar(double x) {
  const double lx = std::log(x);
  if (!(lx > 1.0)) return 1.0;  // also covers x <= 1 where log log is undefined
  return std::max(std::log(lx), 1.0);
}

double zeta2() { return std::numbers::pi * std::numbers::pi / 6.0; }

double alpha_star() {
  static const double value = alpha_for_coefficient(1.0);
  return value;
}

double alpha_eps(double eps) {
  if (!(eps >= 0.0 && eps <= 0.5))
    throw std::invalid_argument("alpha_eps: eps must lie in [0, 1/2]");
  return alpha_for_coefficient(1.0 + std::log1p(-eps));
}

double beta_eps(double eps) {
  return 1.0 / (2.0 * (1.0 + std::log(alpha_eps(eps)) - std::log1p(-eps)));
}

double k_eps(double n, double eps) {
  if (!(n > 1.0)) throw std::invalid_argument("k_eps: need n > 1");
  return alpha_eps(eps) * std::log(n) - beta_eps(eps) * loglog_bar(n);
}

double spt_tail_bound(double t, std::int64_t m) {
  if (m < 1) throw std::invalid_argument("spt_tail_bound: m must be >= 1");
  const double ratio = static_cast<double>(m) * std::exp(-t);
  if (ratio < 1.0) return 1.0;  // bound only applies from m >= e^t
  return 3.0 * std::sqrt(ratio) * std::exp(-ratio);
}

double rrt_height_bound(std::int64_t m, double x) {
  if (m < 2) throw std::invalid_argument("rrt_height_bound: m must be >= 2");
  if (!(x > 1.0)) throw std::invalid_argument("rrt_height_bound: x must exceed 1");
  const double lm = std::log(static_cast<double>(m));
  return std::exp((x - 1.0) + (x - x * std::log(x)) * lm);
}

double max_hops_tail_bound(double n, double t) {
  if (!(n > 1.0)) throw std::invalid_argument("max_hops_tail_bound: need n > 1");
  return std::exp(alpha_star() + t / std::log(n) - t);
}

PoissonGammaPair poisson_gamma_identity(double w, std::int64_t k) {
  if (k < 0) throw std::invalid_argument("poisson_gamma_identity: k must be >= 0");
  PoissonGammaPair pair;
  pair.poisson_route = poisson_upper_tail(w, k);
  // An empty sum is certain; Gamma(0) is the zero variable.
  pair.gamma_route =
      k == 0 ? 1.0 : (w == 0.0 ? 0.0 : gamma_cdf(static_cast<double>(k), w));
  return pair;
}

LightPathExpectation expected_light_paths(double n, std::int64_t k, double eps) {
  if (k < 1) throw std::invalid_argument("expected_light_paths: k must be >= 1");
  if (!(n > static_cast<double>(k + 1)))
    throw std::invalid_argument("expected_light_paths: need n > k + 1");
  if (!(eps >= 0.0 && eps < 1.0))
    throw std::invalid_argument("expected_light_paths: eps must lie in [0, 1)");
  LightPathExpectation e;
  e.threshold_internal = (1.0 - eps) * std::log(n) / n;
  // (n)_{k+1}/2 ordered sequences collapse pairwise to undirected paths.
  const double log_paths = log_falling_factorial(n, k + 1) - std::log(2.0);
  e.log_exact = log_paths + log_gamma_lower_regularized(static_cast<double>(k),
                                                        e.threshold_internal);
  e.log_asymptotic = static_cast<double>(k + 1) * std::log(n) +
                     static_cast<double>(k) * std::log(e.threshold_internal) -
                     std::lgamma(static_cast<double>(k) + 1.0);
  e.exact = std::exp(e.log_exact);
  e.asymptotic = std::exp(e.log_asymptotic);
  return e;
}

double joint_weight_exact(std::int64_t k, std::int64_t i, double s) {
  if (i < 1 || i >= k)
    throw std::invalid_argument(
        "joint_weight_exact: need 1 <= i < k (use the plain Gamma CDF at i = k)");
  if (!(s >= 0.0)) throw std::invalid_argument("joint_weight_exact: s must be nonnegative");
  if (s == 0.0) return 0.0;
  const double di = static_cast<double>(i);
  const double dki = static_cast<double>(k - i);
  // Condition on the shared weight t; each path independently fits its own
  // k-i edges into the remaining budget s - t.
  const auto integrand = [di, dki, s](double t) {
    const double f = gamma_pdf(di, t);
    const double fit = gamma_lower_regularized(dki, s - t);
    return f * fit * fit;
  };
  // Rough scale of the integral so the absolute tolerance tracks the value.
  const double scale = gamma_lower_regularized(di, s);
  const double tol = 1e-12 * std::max(1.0, scale);
  return adaptive_simpson(integrand, 0.0, s, tol);
}

double joint_weight_bound(std::int64_t k, std::int64_t i, double s) {
  if (i < 1 || i > k) throw std::invalid_argument("joint_weight_bound: need 1 <= i <= k");
  if (!(s >= 0.0)) throw std::invalid_argument("joint_weight_bound: s must be nonnegative");
  if (s == 0.0) return 0.0;
  const double dki = static_cast<double>(k - i);
  const double d2ki = static_cast<double>(2 * k - i);
  return std::exp(dki * std::log(4.0) + d2ki * std::log(s) - std::lgamma(d2ki + 1.0));
}

double pair_count_bound(double n, std::int64_t k, std::int64_t i, std::int64_t j) {
  if (!(n >= 2.0)) throw std::invalid_argument("pair_count_bound: need n >= 2");
  if (k < 1 || i < 0 || j < 0) throw std::invalid_argument("pair_count_bound: bad indices");
  // Deliberately no zero clause: the bound stays positive even for overlap
  // shapes whose exact count happens to be zero.
  const double dk = static_cast<double>(k);
  const double expo = static_cast<double>(2 * k + 2 - i - j) * std::log(n) +
                      static_cast<double>(j) * std::log(2.0 * dk * dk * dk);
  return std::exp(expo);
}

double pair_overlap_exponent(double beta, double gamma, double eps) {
  if (!(gamma > 0.0)) throw std::invalid_argument("pair_overlap_exponent: gamma must be positive");
  if (!(eps >= 0.0 && eps < 1.0))
    throw std::invalid_argument("pair_overlap_exponent: eps must lie in [0, 1)");
  if (!(beta >= 0.0 && beta < 2.0 * gamma))
    throw std::invalid_argument("pair_overlap_exponent: beta must lie in [0, 2 gamma)");
  const double rest = 2.0 * gamma - beta;
  const double first =
      beta == 0.0 ? 0.0
                  : beta * std::log(rest / (4.0 * std::exp(1.0) * (1.0 - eps)));
  return first + 2.0 * gamma * std::log(2.0 * gamma / rest);
}

double pair_overlap_exponent_star(double beta) {
  return pair_overlap_exponent(beta, alpha_star(), 0.0);
}

ExponentMaximum maximize_pair_overlap_exponent_star() {
  // Golden-section search; the exponent is smooth and unimodal on [0, alpha*].
  const double phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double lo = 0.0, hi = alpha_star();
  double x1 = hi - phi * (hi - lo), x2 = lo + phi * (hi - lo);
  double f1 = pair_overlap_exponent_star(x1), f2 = pair_overlap_exponent_star(x2);
  while (hi - lo > 1e-10) {
    if (f1 < f2) {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + phi * (hi - lo);
      f2 = pair_overlap_exponent_star(x2);
    } else {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - phi * (hi - lo);
      f1 = pair_overlap_exponent_star(x1);
    }
  }
  ExponentMaximum m;
  m.beta_hat = 0.5 * (lo + hi);
  m.value = pair_overlap_exponent_star(m.beta_hat);
  return m;
}

double second_moment_defect(double delta, double expectation) {
  if (!(expectation > 0.0))
    throw std::invalid_argument("second_moment_defect: expectation must be positive");
  if (delta < 0.0) throw std::invalid_argument("second_moment_defect: delta must be nonnegative");
  return 1.0 / expectation + delta / (expectation * expectation);
}

double large_dev_rate(double x) {
  if (!(x > 0.0)) throw std::invalid_argument("large_dev_rate: x must be positive");
  return x - 1.0 - std::log(x);
}

double stirling_upper(double c) {
  // Below c = 1 the e^{1/12} correction is too small and the inequality
  // genuinely fails (at c = 1/2 the bound is 0.826 < Gamma(3/2) = 0.886).
  if (!(c >= 1.0)) throw std::invalid_argument("stirling_upper: requires c >= 1");
  return std::exp(0.5 * std::log(2.0 * std::numbers::pi * c) +
                  c * (std::log(c) - 1.0) + 1.0 / 12.0);
}

std::vector<NamedConstant> theory_table() {
  const double a = alpha_star();
  return {
      {"alpha_star", a, "hop rate of the longest minimum-weight path (root of a ln a - a = 1)"},
      {"hop_rate_single_source", std::exp(1.0), "height of one source's shortest-path tree over ln n"},
      {"hop_limit_fixed_pair", 1.0, "hops between a fixed pair over ln n"},
      {"weight_limit_fixed_pair", 1.0, "weight between a fixed pair over ln n (mean-n scale)"},
      {"weight_limit_single_source", 2.0, "max weight from one source over ln n"},
      {"weight_limit_all_pairs", 3.0, "max weight over all pairs over ln n"},
      {"spt_weight_limit", zeta2(), "limit of the total single-source tree weight (internal scale)"},
      {"zeta3", kZeta3, "appears in the variance of the total tree weight, 4 zeta(3)/n"},
      {"overlap_exponent_peak", 2.0 * a - 4.0, "argmax of the limiting overlap exponent"},
  };
}

}  // namespace fpp
