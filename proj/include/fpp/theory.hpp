#pragma once

#include <cstdint>
#include <string>
#include <vector>

// Closed-form side of the laboratory: limit constants, tail bounds, and
// counting estimates for minimum-weight paths on complete graphs with
// exponential edge weights.  Everything here is deterministic numerics; the
// experiment harness compares these values against simulation.

namespace fpp {

// max(log log x, 1); the convention used by every bound with an iterated log,
// so small arguments never produce negative or undefined values.
double loglog_bar(double x);

inline constexpr double kZeta3 = 1.2020569031595942854;
double zeta2();  // pi^2 / 6

// Root of a*ln(a) - a = 1 in (e, 5): the hop-count rate of the longest
// minimum-weight path, ~3.5911.
double alpha_star();

// Root of a*ln(a) - a*(1 + ln(1-eps)) = 1: hop-count rate for paths whose
// weight stays below (1-eps) ln n.  eps in [0, 1/2]; eps = 0 gives alpha_star.
double alpha_eps(double eps);

// 1 / (2 (1 + ln(alpha_eps) - ln(1-eps))): the iterated-log correction
// coefficient that accompanies alpha_eps.
double beta_eps(double eps);

// alpha_eps * ln n - beta_eps * max(log log n, 1): the edge count at which
// the expected number of light k-edge paths stops growing.
double k_eps(double n, double eps);

// P(|tree at time t| >= m) <= 3 sqrt(m/e^t) exp(-m/e^t) for m >= e^t
// (mean-n weight scale); returns 1 when m < e^t, where the bound is vacuous.
double spt_tail_bound(double t, std::int64_t m);

// P(height of a random recursive tree with m nodes >= x ln m) <=
// e^{x-1} m^{x - x ln x}; requires x > 1, m >= 2.  May exceed 1.
double rrt_height_bound(std::int64_t m, double x);

// P(max pairwise hop count >= alpha_star ln n + t) <= e^{alpha_star + t/ln n - t}.
double max_hops_tail_bound(double n, double t);

// P(path weight <= w n) computed two independent ways; they must agree
// because a k-edge path beats level w exactly when a rate-1 Poisson process
// places >= k points before w.
struct PoissonGammaPair {
  double poisson_route = 0.0;  // P(Poisson(w) >= k), direct summation
  double gamma_route = 0.0;    // P(Gamma(k) <= w), incomplete gamma
};
PoissonGammaPair poisson_gamma_identity(double w, std::int64_t k);

// Expected number of k-edge paths with weight <= (1-eps) ln n (mean-n scale).
// Exact: (n)_{k+1}/2 * P(Gamma(k) <= s); asymptotic: n^{k+1} s^k / k!, with
// s = (1-eps) ln n / n.  Logs are always finite; linear values may under- or
// overflow for extreme parameters.
struct LightPathExpectation {
  double log_exact = 0.0;
  double log_asymptotic = 0.0;
  double exact = 0.0;
  double asymptotic = 0.0;
  double threshold_internal = 0.0;  // s
};
LightPathExpectation expected_light_paths(double n, std::int64_t k, double eps);

// P(two k-edge paths sharing i edges are both <= s): exactly
// int_0^s f_i(t) F_{k-i}(s-t)^2 dt with Gamma densities/CDFs (adaptive
// Simpson), and the closed-form upper bound 4^{k-i} s^{2k-i} / (2k-i)!.
// Requires 1 <= i < k (for i = k the plain Gamma CDF applies instead).
double joint_weight_exact(std::int64_t k, std::int64_t i, double s);
double joint_weight_bound(std::int64_t k, std::int64_t i, double s);

// Upper bound n^{2k+2-i-j} (2 k^3)^j on the number of ordered pairs of
// k-edge paths sharing i edges in j blocks.  Always positive, even for
// overlap shapes whose exact count is zero.
double pair_count_bound(double n, std::int64_t k, std::int64_t i, std::int64_t j);

// Exponent controlling the overlap-profile contribution to the second moment:
// g(beta) = beta ln((2 gamma - beta) / (4 e (1-eps))) + 2 gamma ln(2 gamma / (2 gamma - beta)),
// for beta in [0, 2 gamma).  The eps = 0, gamma = alpha_star specialization is
// the limiting exponent; its maximum over beta sits at 2 alpha_star - 4.
double pair_overlap_exponent(double beta, double gamma, double eps);
double pair_overlap_exponent_star(double beta);

struct ExponentMaximum {
  double beta_hat = 0.0;
  double value = 0.0;
};
// Golden-section maximization of the limiting exponent over [0, alpha_star].
ExponentMaximum maximize_pair_overlap_exponent_star();

// Second-moment defect bound: P(no light path) <= 1/E + Delta/E^2.
double second_moment_defect(double delta, double expectation);

// Large-deviation rate H(x) = x - 1 - ln x for sums of mean-1 exponentials.
double large_dev_rate(double x);

// Stirling-type upper bound sqrt(2 pi c) (c/e)^c e^{1/12} >= Gamma(c+1),
// valid for c >= 1.
double stirling_upper(double c);

struct NamedConstant {
  std::string name;
  double value = 0.0;
  std::string meaning;
};

// The limit table printed by the CLI: weight and hop limits plus the
// underlying constants.
std::vector<NamedConstant> theory_table();

}  // namespace fpp
