#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <vector>

// Small statistics toolbox shared by the test suites and the experiment
// harness: one-sided Wilson score bounds for bound-vs-frequency checks and
// Kolmogorov-Smirnov distances for distributional checks.

namespace fpp {

// z for a one-sided 95% interval.
inline constexpr double kZOneSided95 = 1.6448536269514722;

// Upper end of the one-sided Wilson score interval for a binomial proportion.
// Never below the point estimate, stays in [0,1], and is well defined for
// successes == 0 or successes == trials.
double wilson_upper(std::int64_t successes, std::int64_t trials,
                    double z = kZOneSided95);

struct Summary {
  std::int64_t count = 0;
  double mean = 0.0;
  double variance = 0.0;  // unbiased, 0 when count < 2
  double stddev = 0.0;
  double ci_halfwidth = 0.0;  // 1.96 * stddev / sqrt(count)
  double min = 0.0;
  double max = 0.0;
};

Summary summarize(const std::vector<double>& xs);

// One-sample KS distance sup |F_n - F| against a CDF.  Sorts a copy.
double ks_distance(std::vector<double> sample,
                   const std::function<double(double)>& cdf);

// Two-sample KS distance between empirical CDFs.  Sorts copies.
double ks_distance_two_sample(std::vector<double> a, std::vector<double> b);

// Asymptotic critical value c(alpha) with D_crit = c / sqrt(n) one-sample and
// D_crit = c * sqrt((n+m)/(n m)) two-sample; alpha is the rejection level.
double ks_critical_coefficient(double alpha);

inline double ks_critical_one_sample(std::size_t n, double alpha) {
  return ks_critical_coefficient(alpha) / std::sqrt(static_cast<double>(n));
}

inline double ks_critical_two_sample(std::size_t n, std::size_t m, double alpha) {
  const double nn = static_cast<double>(n), mm = static_cast<double>(m);
  return ks_critical_coefficient(alpha) * std::sqrt((nn + mm) / (nn * mm));
}

// Pearson correlation; 0 for degenerate inputs.
double correlation(const std::vector<double>& a, const std::vector<double>& b);

// Least-squares slope of y on x.
double least_squares_slope(const std::vector<double>& x,
                           const std::vector<double>& y);

}  // namespace fpp
