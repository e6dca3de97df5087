#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "fpp/spt.hpp"
#include "fpp/stats.hpp"

// Monte Carlo harness over the simulation and theory layers: hop and weight
// asymptotics, tail-bound verification tables, the light-path census, the
// planted-path conditional test, and coupling / order-statistic checks.
// Every experiment derives an independent seed per trial, lets each trial
// write only its own result slot, and aggregates in trial-index order, so
// results and output files are identical for any worker count.

namespace fpp {

// Thrown when a parameter combination exceeds the documented resource model.
// The CLI maps this to a dedicated exit code instead of running for hours.
struct ResourceGuardError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Pinned output schema tag, echoed in JSON summaries.
inline constexpr char kSchemaVersion[] = "fpplab-1";

struct ExperimentConfig {
  std::string name;
  std::uint32_t n = 1000;
  std::vector<std::uint32_t> n_grid;  // slope experiments
  std::uint32_t k = 5;
  double eps = 0.1;
  double C = 1.0;
  double delta = 0.5;
  std::uint32_t trials = 100;
  std::uint64_t master_seed = 0;
  std::uint32_t workers = 1;
  std::string out;  // output file path, empty for none
  bool bonsai_eps_variant = false;
};

// Basic sanity shared by all experiments: n >= 2, trials >= 1, workers >= 1.
void validate(const ExperimentConfig& config);

// Runs body(t) for every t in [0, trials) across the given number of worker
// threads.  Each body call must write only to data owned by its own trial
// index.  Trial claiming is dynamic, so scheduling varies, but slot writes
// make the combined result order-independent.  Rethrows the first body
// exception after all workers join.
void parallel_for_trials(std::uint32_t trials, std::uint32_t workers,
                         const std::function<void(std::uint32_t)>& body);

// One all-pairs trial.  Hop statistics are normalized by log n and weight
// statistics by log n on the mean-n scale, matching the limits 1, e, alpha*
// and 1, 2, 3 they converge to.
struct TrialResult {
  std::uint32_t n = 0;
  std::uint64_t seed = 0;
  std::uint32_t hops_12 = 0;
  std::uint32_t max_hops_from_1 = 0;
  std::uint32_t max_hops_all_pairs = 0;
  double w12_over_logn = 0.0;
  double maxw_from1_over_logn = 0.0;
  double maxw_allpairs_over_logn = 0.0;
  double spt1_total_weight_over_n = 0.0;
  double runtime_ms = 0.0;  // informational only; never written to files
};

struct HopExperiment {
  ExperimentConfig config;
  std::vector<TrialResult> results;
  // Summaries of the normalized per-trial statistics, in trial order.
  Summary hops_12;
  Summary max_hops_from_1;
  Summary max_hops_all_pairs;
  Summary w12;
  Summary maxw_from_1;
  Summary maxw_all_pairs;
  Summary spt1_weight_over_n;
};

// n Dijkstra sweeps per trial; O(n^3 * trials) total.  Guarded to n <= 4000.
HopExperiment run_hop_experiment(const ExperimentConfig& config);

// Runtime model for the guard message and the CLI preflight printout,
// calibrated on the dense Dijkstra sweep.
double estimated_allpairs_seconds(std::uint32_t n, std::uint32_t trials);

// One empirical-frequency-vs-theoretical-bound comparison.  `a` and `b` are
// the grid parameters; their meaning (and CSV column names) come from the
// suite.  A row passes when the one-sided 95% Wilson upper bound on the
// frequency stays below the theoretical bound, or when the bound is >= 1 and
// the row is vacuous.
struct BoundCheckRow {
  double a = 0.0;
  double b = 0.0;
  std::int64_t hits = 0;
  std::int64_t trials = 0;
  double empirical = 0.0;
  double wilson_upper_95 = 0.0;
  double theoretical_bound = 0.0;
  bool vacuous = false;
  bool pass = false;
};

struct BoundSuite {
  std::string name;
  std::string col_a;
  std::string col_b;
  std::vector<BoundCheckRow> rows;

  bool all_pass() const;
};

// Tree-size tail: P(|SPT(t)| >= m) <= 3 sqrt(m/e^t) exp(-m/e^t), via the
// direct growth simulation.  t runs over t_factors * log n (mean-n scale)
// and m over ceil(c * e^t).  Row a = t, b = m.
BoundSuite verify_spt_tail(std::uint32_t n, std::uint32_t trials,
                           std::uint64_t master_seed,
                           const std::vector<double>& t_factors = {0.3, 0.5, 0.7},
                           const std::vector<double>& c_values = {2.0, 4.0, 8.0},
                           std::uint32_t workers = 1);

struct RrtHeightSuite {
  BoundSuite bounds;        // a = x, b = x * log m
  Summary height;           // raw heights
  double mean_over_logm = 0.0;
};

// Height tail of the random recursive tree with m vertices:
// P(h >= x log m) <= e^{x-1} m^{x - x log x} for x > 1.
RrtHeightSuite verify_rrt_height(std::uint32_t m,
                                 const std::vector<double>& x_grid,
                                 std::uint32_t trials, std::uint64_t master_seed,
                                 std::uint32_t workers = 1);

// Tail of the longest optimal path: P(max hops >= alpha* log n + t)
// <= e^{alpha* + t/log n} e^{-t}.  Row a = t, b = the hop threshold.
// All-pairs per trial, so guarded to n <= 1000.
BoundSuite verify_max_hops_tail(std::uint32_t n,
                                const std::vector<double>& t_grid,
                                std::uint32_t trials, std::uint64_t master_seed,
                                std::uint32_t workers = 1);

struct LightPathCensus {
  std::uint32_t n = 0;
  std::uint32_t k = 0;
  double eps = 0.0;
  double threshold_internal = 0.0;  // (1-eps) log n / n
  std::vector<double> counts;       // per trial
  Summary summary;
  double exact_expectation = 0.0;
  double std_error = 0.0;           // of the Monte Carlo mean
  double z = 0.0;                   // (mean - exact) / std_error
};

// Exact per-trial count of k-edge paths with weight <= (1-eps) log n
// (mean-n scale), by pruned enumeration.  Guarded to n <= 40.
LightPathCensus count_light_paths_mc(std::uint32_t n, std::uint32_t k,
                                     double eps, std::uint32_t trials,
                                     std::uint64_t master_seed,
                                     std::uint32_t workers = 1);

struct PlantedPathCheck {
  std::uint32_t n = 0;
  std::uint32_t k = 0;
  double eps = 0.0;
  double window_lo = 0.0;  // internal scale
  double window_hi = 0.0;
  std::int64_t mismatches = 0;
  BoundCheckRow row;              // a = k, b = eps; bound 13 k^2 / n^eps
  bool eps_above_threshold = false;  // eps > 2 log log n / log n
};

// Conditional test of "the planted path in the weight window is the shortest
// path between its endpoints": plant k edge weights drawn from the law of
// i.i.d. exponentials conditioned on their sum lying in the window
// [(1-2 eps) log n, (1-eps) log n] (mean-n scale), leave every other edge
// i.i.d., and compare Dijkstra's answer.  Valid because the planted edges are
// disjoint from the rest.  Guarded to n <= 2000.
PlantedPathCheck verify_lightest_given_light(std::uint32_t n, std::uint32_t k,
                                             double eps, std::uint32_t trials,
                                             std::uint64_t master_seed,
                                             std::uint32_t workers = 1);

struct CouplingCheck {
  std::uint32_t n = 0;
  std::int64_t paths = 0;
  double max_discrepancy = 0.0;   // max |w'(P) - sum U_e| over sampled paths
  double mean_discrepancy = 0.0;
  double bound = 0.0;             // 864 (log n)^3 / n^2, internal scale
  double max_path_weight_scaled = 0.0;
  std::uint32_t max_path_edges = 0;
  std::int64_t out_of_scope_paths = 0;  // violated the length/weight premise
  bool pass = false;
};

// Couples each exponential weight with the uniform that generated it and
// measures |w'(P) - sum U_e| over all tree paths of `sources` shortest path
// trees.  Tree paths stay well inside the premise (at most 12 log n edges
// and mean-n weight at most 12 log n); any that do not are excluded and
// counted.
CouplingCheck verify_coupling(std::uint32_t n, std::uint32_t sources,
                              std::uint64_t master_seed,
                              std::uint32_t workers = 1);

struct OrderStatsCheck {
  std::uint32_t n = 0;
  std::uint32_t trials = 0;
  double alpha = 0.0;             // rejection level
  double ks_pooled = 0.0;         // S_k/S_n pooled over trials vs uniform
  double ks_pooled_critical = 0.0;
  double ks_first = 0.0;          // S_1/S_n vs Beta(1, n-1)
  double ks_first_critical = 0.0;
  Summary first_ratio;            // mean should be 1/n
  bool pass = false;
};

// Normalized partial sums S_k/S_n of n i.i.d. exponentials behave like the
// order statistics of n-1 uniforms; S_n/S_n is excluded.
OrderStatsCheck verify_uniform_order_stats(std::uint32_t n, std::uint32_t trials,
                                           std::uint64_t master_seed,
                                           double alpha = 0.001,
                                           std::uint32_t workers = 1);

struct AlphaEstimate {
  std::vector<std::uint32_t> n_grid;
  std::vector<std::uint32_t> trials_per_n;
  std::vector<HopExperiment> runs;   // one per grid point, same order
  double slope_all_pairs = 0.0;      // mean max hops (all pairs) vs log n
  double slope_from_1 = 0.0;         // mean single-source height vs log n
};

// Least-squares slopes of the raw mean hop statistics against log n over a
// grid of sizes.  Needs at least 3 grid points; each point runs its own
// hop experiment with a seed derived from (master_seed, grid index).
AlphaEstimate estimate_alpha(const std::vector<std::uint32_t>& n_grid,
                             const std::vector<std::uint32_t>& trials_per_n,
                             std::uint64_t master_seed,
                             std::uint32_t workers = 1);

// CSV writers.  Deterministic byte-for-byte: fixed column order, %.17g
// doubles, '\n' newlines, no locale dependence, and no timing fields.
void write_hops_csv(std::ostream& os, const HopExperiment& experiment);
void write_bound_suite_csv(std::ostream& os, const BoundSuite& suite);
void write_light_paths_csv(std::ostream& os, const LightPathCensus& census);
void write_planted_csv(std::ostream& os, const PlantedPathCheck& check);
void write_coupling_csv(std::ostream& os, const CouplingCheck& check);
void write_order_stats_csv(std::ostream& os, const OrderStatsCheck& check);
void write_alpha_csv(std::ostream& os, const AlphaEstimate& estimate);

}  // namespace fpp
