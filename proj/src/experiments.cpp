#include "fpp/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <mutex>
#include <ostream>
#include <thread>

#include "fpp/growth.hpp"
#include "fpp/theory.hpp"

namespace fpp {
namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

// %.17g round-trips doubles exactly and snprintf ignores the C++ locale.
void append_double(std::string& out, double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  out += buf;
}

void append_u64(std::string& out, std::uint64_t x) {
  char buf[24];
  std::snprintf(buf, sizeof buf, "%llu", static_cast<unsigned long long>(x));
  out += buf;
}

void append_i64(std::string& out, std::int64_t x) {
  char buf[24];
  std::snprintf(buf, sizeof buf, "%lld", static_cast<long long>(x));
  out += buf;
}

BoundCheckRow make_row(double a, double b, std::int64_t hits,
                       std::int64_t trials, double bound) {
  BoundCheckRow row;
  row.a = a;
  row.b = b;
  row.hits = hits;
  row.trials = trials;
  row.empirical = static_cast<double>(hits) / static_cast<double>(trials);
  row.wilson_upper_95 = wilson_upper(hits, trials);
  row.theoretical_bound = bound;
  row.vacuous = bound >= 1.0;
  row.pass = row.vacuous || row.wilson_upper_95 <= bound;
  return row;
}

}  // namespace

void validate(const ExperimentConfig& config) {
  if (config.n < 2) throw std::invalid_argument("config: need n >= 2");
  if (config.trials < 1) throw std::invalid_argument("config: need trials >= 1");
  if (config.workers < 1) throw std::invalid_argument("config: need workers >= 1");
}

void parallel_for_trials(std::uint32_t trials, std::uint32_t workers,
                         const std::function<void(std::uint32_t)>& body) {
  if (workers < 1) throw std::invalid_argument("parallel_for_trials: need workers >= 1");
  if (workers == 1 || trials <= 1) {
    for (std::uint32_t t = 0; t < trials; ++t) body(t);
    return;
  }
  std::atomic<std::uint32_t> next{0};
  std::atomic<bool> failed{false};
  std::exception_ptr first_error;
  std::mutex error_lock;
  const std::uint32_t count = std::min(workers, trials);
  std::vector<std::thread> pool;
  pool.reserve(count);
  for (std::uint32_t w = 0; w < count; ++w) {
    pool.emplace_back([&] {
      for (;;) {
        const std::uint32_t t = next.fetch_add(1, std::memory_order_relaxed);
        if (t >= trials || failed.load(std::memory_order_relaxed)) return;
        try {
          body(t);
        } catch (...) {
          const std::lock_guard<std::mutex> hold(error_lock);
          if (!first_error) first_error = std::current_exception();
          failed.store(true, std::memory_order_relaxed);
          return;
        }
      }
    });
  }
  for (auto& th : pool) th.join();
  if (first_error) std::rethrow_exception(first_error);
}

double estimated_allpairs_seconds(std::uint32_t n, std::uint32_t trials) {
  // Calibrated on the dense sweep: ~3.2 s per trial at n = 1000, cubic in n.
  const double dn = static_cast<double>(n);
  return 3.2e-9 * dn * dn * dn * static_cast<double>(trials);
}

HopExperiment run_hop_experiment(const ExperimentConfig& config) {
  validate(config);
  if (config.n > 4000) {
    std::string msg = "run_hop_experiment: all-pairs guarded to n <= 4000 "
                      "(cubic cost; this request models to ";
    append_double(msg, estimated_allpairs_seconds(config.n, config.trials));
    msg += " s)";
    throw ResourceGuardError(msg);
  }

  HopExperiment experiment;
  experiment.config = config;
  experiment.results.assign(config.trials, TrialResult{});
  const double logn = std::log(static_cast<double>(config.n));
  const double dn = static_cast<double>(config.n);

  parallel_for_trials(config.trials, config.workers, [&](std::uint32_t t) {
    const auto t0 = Clock::now();
    const std::uint64_t seed = derive_trial_seed(config.master_seed, t).value;
    const WeightOracle oracle(seed, 0, Distribution::ExponentialMean1);
    const AllPairsStats stats = all_pairs_hop_stats(config.n, oracle);
    TrialResult& r = experiment.results[t];
    r.n = config.n;
    r.seed = seed;
    r.hops_12 = stats.hops_12;
    r.max_hops_from_1 = stats.max_hops_from_1;
    r.max_hops_all_pairs = stats.max_hops_all_pairs;
    r.w12_over_logn = stats.w12 * dn / logn;
    r.maxw_from1_over_logn = stats.max_w_from_1 * dn / logn;
    r.maxw_allpairs_over_logn = stats.max_w_all_pairs * dn / logn;
    r.spt1_total_weight_over_n = stats.spt1_total_weight;
    r.runtime_ms = ms_since(t0);
  });

  std::vector<double> column(config.trials);
  const auto fold = [&](const std::function<double(const TrialResult&)>& pick) {
    for (std::uint32_t t = 0; t < config.trials; ++t)
      column[t] = pick(experiment.results[t]);
    return summarize(column);
  };
  experiment.hops_12 = fold([&](const TrialResult& r) { return r.hops_12 / logn; });
  experiment.max_hops_from_1 =
      fold([&](const TrialResult& r) { return r.max_hops_from_1 / logn; });
  experiment.max_hops_all_pairs =
      fold([&](const TrialResult& r) { return r.max_hops_all_pairs / logn; });
  experiment.w12 = fold([](const TrialResult& r) { return r.w12_over_logn; });
  experiment.maxw_from_1 =
      fold([](const TrialResult& r) { return r.maxw_from1_over_logn; });
  experiment.maxw_all_pairs =
      fold([](const TrialResult& r) { return r.maxw_allpairs_over_logn; });
  experiment.spt1_weight_over_n =
      fold([](const TrialResult& r) { return r.spt1_total_weight_over_n; });
  return experiment;
}

bool BoundSuite::all_pass() const {
  return std::all_of(rows.begin(), rows.end(),
                     [](const BoundCheckRow& r) { return r.pass; });
}

BoundSuite verify_spt_tail(std::uint32_t n, std::uint32_t trials,
                           std::uint64_t master_seed,
                           const std::vector<double>& t_factors,
                           const std::vector<double>& c_values,
                           std::uint32_t workers) {
  if (n < 2) throw std::invalid_argument("verify_spt_tail: need n >= 2");
  if (trials < 1) throw std::invalid_argument("verify_spt_tail: need trials >= 1");
  if (t_factors.empty() || c_values.empty())
    throw std::invalid_argument("verify_spt_tail: empty grid");
  if (!std::is_sorted(t_factors.begin(), t_factors.end()))
    throw std::invalid_argument("verify_spt_tail: t factors must ascend");

  const double logn = std::log(static_cast<double>(n));
  const auto F = static_cast<std::uint32_t>(t_factors.size());
  std::vector<double> t_scaled(F);
  std::vector<double> times_internal(F);
  for (std::uint32_t f = 0; f < F; ++f) {
    t_scaled[f] = t_factors[f] * logn;
    times_internal[f] = t_scaled[f] / static_cast<double>(n);
  }

  std::vector<std::uint32_t> sizes(static_cast<std::size_t>(trials) * F);
  parallel_for_trials(trials, workers, [&](std::uint32_t t) {
    const auto got = sizes_at_times(
        n, derive_trial_seed(master_seed, t).value, times_internal);
    for (std::uint32_t f = 0; f < F; ++f)
      sizes[static_cast<std::size_t>(t) * F + f] = got[f];
  });

  BoundSuite suite;
  suite.name = "spt_tail";
  suite.col_a = "t";
  suite.col_b = "m";
  for (std::uint32_t f = 0; f < F; ++f) {
    for (const double c : c_values) {
      const auto m = static_cast<std::int64_t>(std::ceil(c * std::exp(t_scaled[f])));
      std::int64_t hits = 0;
      for (std::uint32_t t = 0; t < trials; ++t)
        if (sizes[static_cast<std::size_t>(t) * F + f] >= m) ++hits;
      suite.rows.push_back(make_row(t_scaled[f], static_cast<double>(m), hits,
                                    trials, spt_tail_bound(t_scaled[f], m)));
    }
  }
  return suite;
}

RrtHeightSuite verify_rrt_height(std::uint32_t m,
                                 const std::vector<double>& x_grid,
                                 std::uint32_t trials, std::uint64_t master_seed,
                                 std::uint32_t workers) {
  if (m < 2) throw std::invalid_argument("verify_rrt_height: need m >= 2");
  if (trials < 1) throw std::invalid_argument("verify_rrt_height: need trials >= 1");
  for (const double x : x_grid)
    if (!(x > 1.0))
      throw std::invalid_argument("verify_rrt_height: need every x > 1");

  std::vector<std::uint32_t> heights(trials);
  parallel_for_trials(trials, workers, [&](std::uint32_t t) {
    heights[t] =
        random_recursive_tree_height(m, derive_trial_seed(master_seed, t).value);
  });

  RrtHeightSuite suite;
  suite.bounds.name = "rrt_height";
  suite.bounds.col_a = "x";
  suite.bounds.col_b = "height_threshold";
  const double logm = std::log(static_cast<double>(m));
  for (const double x : x_grid) {
    const double threshold = x * logm;
    std::int64_t hits = 0;
    for (const std::uint32_t h : heights)
      if (static_cast<double>(h) >= threshold) ++hits;
    suite.bounds.rows.push_back(
        make_row(x, threshold, hits, trials, rrt_height_bound(m, x)));
  }
  std::vector<double> as_double(heights.begin(), heights.end());
  suite.height = summarize(as_double);
  suite.mean_over_logm = suite.height.mean / logm;
  return suite;
}

BoundSuite verify_max_hops_tail(std::uint32_t n,
                                const std::vector<double>& t_grid,
                                std::uint32_t trials, std::uint64_t master_seed,
                                std::uint32_t workers) {
  if (n < 2) throw std::invalid_argument("verify_max_hops_tail: need n >= 2");
  if (n > 1000)
    throw ResourceGuardError("verify_max_hops_tail: all-pairs per trial, guarded to n <= 1000");
  if (trials < 1) throw std::invalid_argument("verify_max_hops_tail: need trials >= 1");
  for (const double t : t_grid)
    if (!(t >= 0.0))
      throw std::invalid_argument("verify_max_hops_tail: need every t >= 0");

  std::vector<std::uint32_t> maxima(trials);
  parallel_for_trials(trials, workers, [&](std::uint32_t t) {
    const WeightOracle oracle(derive_trial_seed(master_seed, t).value, 0,
                              Distribution::ExponentialMean1);
    maxima[t] = all_pairs_hop_stats(n, oracle).max_hops_all_pairs;
  });

  BoundSuite suite;
  suite.name = "max_hops_tail";
  suite.col_a = "t";
  suite.col_b = "hop_threshold";
  const double base = alpha_star() * std::log(static_cast<double>(n));
  for (const double t : t_grid) {
    const double threshold = base + t;
    std::int64_t hits = 0;
    for (const std::uint32_t h : maxima)
      if (static_cast<double>(h) >= threshold) ++hits;
    suite.rows.push_back(make_row(t, threshold, hits, trials,
                                  max_hops_tail_bound(static_cast<double>(n), t)));
  }
  return suite;
}

LightPathCensus count_light_paths_mc(std::uint32_t n, std::uint32_t k,
                                     double eps, std::uint32_t trials,
                                     std::uint64_t master_seed,
                                     std::uint32_t workers) {
  if (n < 2) throw std::invalid_argument("count_light_paths_mc: need n >= 2");
  if (n > 40)
    throw ResourceGuardError("count_light_paths_mc: per-trial enumeration guarded to n <= 40");
  if (k < 1 || k + 1 > n)
    throw std::invalid_argument("count_light_paths_mc: need 1 <= k <= n-1");
  if (!(eps > 0.0 && eps < 1.0))
    throw std::invalid_argument("count_light_paths_mc: need eps in (0, 1)");
  if (trials < 1) throw std::invalid_argument("count_light_paths_mc: need trials >= 1");

  LightPathCensus census;
  census.n = n;
  census.k = k;
  census.eps = eps;
  census.threshold_internal =
      (1.0 - eps) * std::log(static_cast<double>(n)) / static_cast<double>(n);
  census.counts.assign(trials, 0.0);
  const double s = census.threshold_internal;

  parallel_for_trials(trials, workers, [&](std::uint32_t trial) {
    const WeightOracle oracle(derive_trial_seed(master_seed, trial).value, 0,
                              Distribution::ExponentialMean1);
    std::vector<double> w(static_cast<std::size_t>(n) * n, 0.0);
    for (Vertex a = 0; a < n; ++a)
      for (Vertex b = a + 1; b < n; ++b) {
        const double x = oracle.weight(a, b);
        w[static_cast<std::size_t>(a) * n + b] = x;
        w[static_cast<std::size_t>(b) * n + a] = x;
      }

    // Weights are nonnegative, so a full path of weight <= s has every prefix
    // <= s in both orientations: pruning prefixes > s loses nothing, and each
    // undirected light path is completed exactly twice (once per direction).
    struct Frame {
      std::uint64_t mask;
      Vertex last;
      double acc;
      std::uint32_t depth;
    };
    std::uint64_t directed = 0;
    std::vector<Frame> stack;
    for (Vertex v0 = 0; v0 < n; ++v0) {
      stack.push_back({std::uint64_t{1} << v0, v0, 0.0, 0});
      while (!stack.empty()) {
        const Frame f = stack.back();
        stack.pop_back();
        if (f.depth == k) {
          ++directed;
          continue;
        }
        const double* row = &w[static_cast<std::size_t>(f.last) * n];
        for (Vertex v = 0; v < n; ++v) {
          if (f.mask & (std::uint64_t{1} << v)) continue;
          const double acc = f.acc + row[v];
          if (acc <= s)
            stack.push_back({f.mask | (std::uint64_t{1} << v), v, acc, f.depth + 1});
        }
      }
    }
    census.counts[trial] = static_cast<double>(directed) / 2.0;
  });

  census.summary = summarize(census.counts);
  census.exact_expectation =
      expected_light_paths(static_cast<double>(n), k, eps).exact;
  census.std_error =
      census.summary.stddev / std::sqrt(static_cast<double>(trials));
  census.z = census.std_error > 0.0
                 ? (census.summary.mean - census.exact_expectation) / census.std_error
                 : 0.0;
  return census;
}

PlantedPathCheck verify_lightest_given_light(std::uint32_t n, std::uint32_t k,
                                             double eps, std::uint32_t trials,
                                             std::uint64_t master_seed,
                                             std::uint32_t workers) {
  if (n < 3) throw std::invalid_argument("verify_lightest_given_light: need n >= 3");
  if (n > 2000)
    throw ResourceGuardError("verify_lightest_given_light: guarded to n <= 2000");
  if (k < 1 || k + 1 > n)
    throw std::invalid_argument("verify_lightest_given_light: need 1 <= k <= n-1");
  if (!(eps > 0.0 && eps < 1.0))
    throw std::invalid_argument("verify_lightest_given_light: need eps in (0, 1)");
  if (trials < 1)
    throw std::invalid_argument("verify_lightest_given_light: need trials >= 1");

  PlantedPathCheck check;
  check.n = n;
  check.k = k;
  check.eps = eps;
  const double dn = static_cast<double>(n);
  const double logn = std::log(dn);
  check.window_lo = std::max(0.0, (1.0 - 2.0 * eps)) * logn / dn;
  check.window_hi = (1.0 - eps) * logn / dn;
  check.eps_above_threshold = eps > 2.0 * std::log(logn) / logn;

  const double lo = check.window_lo;
  const double hi = check.window_hi;
  const double ratio = lo / hi;  // in [0, 1)
  const double dk = static_cast<double>(k);

  std::vector<std::uint8_t> mismatch(trials, 0);
  parallel_for_trials(trials, workers, [&](std::uint32_t t) {
    const std::uint64_t trial_seed = derive_trial_seed(master_seed, t).value;
    // Split into a sampler stream and a graph seed so the planted weights
    // and the ambient weights come from unrelated draws.
    UnitStream sampler(derive_trial_seed(trial_seed, 1).value);
    const WeightOracle ambient(derive_trial_seed(trial_seed, 0).value, 0,
                               Distribution::ExponentialMean1);

    // Sum of the k planted weights, conditioned on [lo, hi]: density
    // proportional to S^{k-1} e^{-S}.  Inverse transform for the S^{k-1}
    // factor, then an e^{-(S-lo)} rejection (acceptance is nearly 1 because
    // the window is narrow on the internal scale).
    double S = 0.0;
    for (;;) {
      const double u = sampler.next();
      S = hi * std::pow(u + (1.0 - u) * std::pow(ratio, dk), 1.0 / dk);
      if (sampler.next() <= std::exp(-(S - lo))) break;
    }

    // Given the sum, the weights are S times uniform spacings.
    std::vector<double> cuts(k - 1);
    for (double& c : cuts) c = sampler.next();
    std::sort(cuts.begin(), cuts.end());
    OverlayOracle world(ambient);
    double prev = 0.0;
    for (std::uint32_t e = 0; e < k; ++e) {
      const double cut = e + 1 < k ? cuts[e] : 1.0;
      world.pin(e, e + 1, (cut - prev) * S);
      prev = cut;
    }

    const auto tree = dijkstra_spt(n, 0, world, {.stop_after = k});
    const PathRecord sp = extract_path(tree, k);
    bool same = sp.vertices.size() == static_cast<std::size_t>(k) + 1;
    if (same)
      for (std::uint32_t i = 0; i <= k; ++i) same = same && sp.vertices[i] == i;
    mismatch[t] = same ? 0 : 1;
  });

  for (const std::uint8_t m : mismatch) check.mismatches += m;
  const double bound = 13.0 * dk * dk / std::pow(dn, eps);
  check.row = make_row(dk, eps, check.mismatches, trials, bound);
  // The bound also degenerates when eps is below the triviality threshold.
  check.row.vacuous = check.row.vacuous || !check.eps_above_threshold;
  check.row.pass = check.row.vacuous || check.row.wilson_upper_95 <= bound;
  return check;
}

CouplingCheck verify_coupling(std::uint32_t n, std::uint32_t sources,
                              std::uint64_t master_seed, std::uint32_t workers) {
  if (n < 2) throw std::invalid_argument("verify_coupling: need n >= 2");
  if (sources < 1) throw std::invalid_argument("verify_coupling: need sources >= 1");

  struct SourceStats {
    double max_disc = 0.0;
    double sum_disc = 0.0;
    std::int64_t paths = 0;
    std::int64_t out_of_scope = 0;
    double max_weight = 0.0;  // internal
    std::uint32_t max_edges = 0;
  };
  std::vector<SourceStats> per_source(sources);
  const double dn = static_cast<double>(n);
  const double logn = std::log(dn);
  const double scope_edges = 12.0 * logn;
  const double scope_weight_internal = 12.0 * logn / dn;

  parallel_for_trials(sources, workers, [&](std::uint32_t s) {
    const std::uint64_t seed = derive_trial_seed(master_seed, s).value;
    // Same seed and layer: each edge's exponential shares the uniform that
    // generated it, which is the coupling under test.
    const WeightOracle coupled(seed, 0, Distribution::CoupledExponential);
    const WeightOracle uniforms(seed, 0, Distribution::Uniform01);
    const auto source = static_cast<Vertex>(s % n);
    const auto tree = dijkstra_spt(n, source, coupled, {});
    SourceStats& out = per_source[s];
    for (Vertex v = 0; v < n; ++v) {
      if (v == source || !tree.reached(v)) continue;
      double u_sum = 0.0;
      std::uint32_t edges = 0;
      for (Vertex a = v; tree.parent[a] != kNoVertex; a = tree.parent[a]) {
        u_sum += uniforms.weight(a, tree.parent[a]);
        ++edges;
      }
      const double w = tree.dist[v];  // exact path sum in settle order
      if (static_cast<double>(edges) > scope_edges || w > scope_weight_internal) {
        ++out.out_of_scope;
        continue;
      }
      const double disc = std::fabs(w - u_sum);
      out.max_disc = std::max(out.max_disc, disc);
      out.sum_disc += disc;
      ++out.paths;
      out.max_weight = std::max(out.max_weight, w);
      out.max_edges = std::max(out.max_edges, edges);
    }
  });

  CouplingCheck check;
  check.n = n;
  check.bound = 864.0 * logn * logn * logn / (dn * dn);
  double total = 0.0;
  for (const SourceStats& s : per_source) {
    check.max_discrepancy = std::max(check.max_discrepancy, s.max_disc);
    total += s.sum_disc;
    check.paths += s.paths;
    check.out_of_scope_paths += s.out_of_scope;
    check.max_path_weight_scaled = std::max(check.max_path_weight_scaled, s.max_weight * dn);
    check.max_path_edges = std::max(check.max_path_edges, s.max_edges);
  }
  check.mean_discrepancy = check.paths > 0 ? total / static_cast<double>(check.paths) : 0.0;
  check.pass = check.max_discrepancy <= check.bound;
  return check;
}

OrderStatsCheck verify_uniform_order_stats(std::uint32_t n, std::uint32_t trials,
                                           std::uint64_t master_seed,
                                           double alpha, std::uint32_t workers) {
  if (n < 2) throw std::invalid_argument("verify_uniform_order_stats: need n >= 2");
  if (trials < 1)
    throw std::invalid_argument("verify_uniform_order_stats: need trials >= 1");
  if (!(alpha > 0.0 && alpha < 1.0))
    throw std::invalid_argument("verify_uniform_order_stats: need alpha in (0, 1)");

  std::vector<double> pooled(static_cast<std::size_t>(trials) * (n - 1));
  std::vector<double> first(trials);
  parallel_for_trials(trials, workers, [&](std::uint32_t t) {
    UnitStream stream(derive_trial_seed(master_seed, t).value);
    double s1 = 0.0;
    double total = 0.0;
    std::vector<double> partial(n - 1);
    for (std::uint32_t i = 0; i < n; ++i) {
      total += exp_from_unit(stream.next());
      if (i == 0) s1 = total;
      if (i + 1 < n) partial[i] = total;
    }
    for (std::uint32_t i = 0; i + 1 < n; ++i)
      pooled[static_cast<std::size_t>(t) * (n - 1) + i] = partial[i] / total;
    first[t] = s1 / total;
  });

  OrderStatsCheck check;
  check.n = n;
  check.trials = trials;
  check.alpha = alpha;
  check.first_ratio = summarize(first);
  check.ks_pooled = ks_distance(
      pooled, [](double x) { return std::clamp(x, 0.0, 1.0); });
  check.ks_pooled_critical = ks_critical_one_sample(pooled.size(), alpha);
  const double shape = static_cast<double>(n - 1);
  check.ks_first = ks_distance(first, [shape](double x) {
    return 1.0 - std::pow(1.0 - std::clamp(x, 0.0, 1.0), shape);
  });
  check.ks_first_critical = ks_critical_one_sample(first.size(), alpha);
  check.pass = check.ks_pooled <= check.ks_pooled_critical &&
               check.ks_first <= check.ks_first_critical;
  return check;
}

AlphaEstimate estimate_alpha(const std::vector<std::uint32_t>& n_grid,
                             const std::vector<std::uint32_t>& trials_per_n,
                             std::uint64_t master_seed, std::uint32_t workers) {
  if (n_grid.size() < 3)
    throw std::invalid_argument("estimate_alpha: need at least 3 grid points");
  if (n_grid.size() != trials_per_n.size())
    throw std::invalid_argument("estimate_alpha: grid and trial counts differ in length");

  AlphaEstimate estimate;
  estimate.n_grid = n_grid;
  estimate.trials_per_n = trials_per_n;
  std::vector<double> xs, y_all, y_from1;
  for (std::size_t i = 0; i < n_grid.size(); ++i) {
    ExperimentConfig config;
    config.name = "hops";
    config.n = n_grid[i];
    config.trials = trials_per_n[i];
    config.master_seed = derive_trial_seed(master_seed, i).value;
    config.workers = workers;
    estimate.runs.push_back(run_hop_experiment(config));
    const double logn = std::log(static_cast<double>(n_grid[i]));
    xs.push_back(logn);
    // The summaries hold log n - normalized means; undo for the raw slope.
    y_all.push_back(estimate.runs.back().max_hops_all_pairs.mean * logn);
    y_from1.push_back(estimate.runs.back().max_hops_from_1.mean * logn);
  }
  estimate.slope_all_pairs = least_squares_slope(xs, y_all);
  estimate.slope_from_1 = least_squares_slope(xs, y_from1);
  return estimate;
}

void write_hops_csv(std::ostream& os, const HopExperiment& experiment) {
  std::string out =
      "trial,seed,n,hops_12,max_hops_from_1,max_hops_all_pairs,"
      "w12_over_logn,maxw_from1_over_logn,maxw_allpairs_over_logn,"
      "spt1_total_weight_over_n\n";
  for (std::size_t t = 0; t < experiment.results.size(); ++t) {
    const TrialResult& r = experiment.results[t];
    append_u64(out, t);
    out += ',';
    append_u64(out, r.seed);
    out += ',';
    append_u64(out, r.n);
    out += ',';
    append_u64(out, r.hops_12);
    out += ',';
    append_u64(out, r.max_hops_from_1);
    out += ',';
    append_u64(out, r.max_hops_all_pairs);
    out += ',';
    append_double(out, r.w12_over_logn);
    out += ',';
    append_double(out, r.maxw_from1_over_logn);
    out += ',';
    append_double(out, r.maxw_allpairs_over_logn);
    out += ',';
    append_double(out, r.spt1_total_weight_over_n);
    out += '\n';
  }
  os << out;
}

void write_bound_suite_csv(std::ostream& os, const BoundSuite& suite) {
  std::string out = suite.col_a + "," + suite.col_b +
                    ",hits,trials,empirical,wilson_upper_95,theoretical_bound,"
                    "vacuous,pass\n";
  for (const BoundCheckRow& r : suite.rows) {
    append_double(out, r.a);
    out += ',';
    append_double(out, r.b);
    out += ',';
    append_i64(out, r.hits);
    out += ',';
    append_i64(out, r.trials);
    out += ',';
    append_double(out, r.empirical);
    out += ',';
    append_double(out, r.wilson_upper_95);
    out += ',';
    append_double(out, r.theoretical_bound);
    out += ',';
    out += r.vacuous ? '1' : '0';
    out += ',';
    out += r.pass ? '1' : '0';
    out += '\n';
  }
  os << out;
}

void write_light_paths_csv(std::ostream& os, const LightPathCensus& census) {
  std::string out = "trial,count\n";
  for (std::size_t t = 0; t < census.counts.size(); ++t) {
    append_u64(out, t);
    out += ',';
    append_double(out, census.counts[t]);
    out += '\n';
  }
  os << out;
}

void write_planted_csv(std::ostream& os, const PlantedPathCheck& check) {
  std::string out =
      "n,k,eps,trials,mismatches,empirical,wilson_upper_95,theoretical_bound,"
      "eps_above_threshold,vacuous,pass\n";
  append_u64(out, check.n);
  out += ',';
  append_u64(out, check.k);
  out += ',';
  append_double(out, check.eps);
  out += ',';
  append_i64(out, check.row.trials);
  out += ',';
  append_i64(out, check.mismatches);
  out += ',';
  append_double(out, check.row.empirical);
  out += ',';
  append_double(out, check.row.wilson_upper_95);
  out += ',';
  append_double(out, check.row.theoretical_bound);
  out += ',';
  out += check.eps_above_threshold ? '1' : '0';
  out += ',';
  out += check.row.vacuous ? '1' : '0';
  out += ',';
  out += check.row.pass ? '1' : '0';
  out += '\n';
  os << out;
}

void write_coupling_csv(std::ostream& os, const CouplingCheck& check) {
  std::string out =
      "n,paths,max_discrepancy,mean_discrepancy,theoretical_bound,"
      "max_path_weight_scaled,max_path_edges,out_of_scope_paths,pass\n";
  append_u64(out, check.n);
  out += ',';
  append_i64(out, check.paths);
  out += ',';
  append_double(out, check.max_discrepancy);
  out += ',';
  append_double(out, check.mean_discrepancy);
  out += ',';
  append_double(out, check.bound);
  out += ',';
  append_double(out, check.max_path_weight_scaled);
  out += ',';
  append_u64(out, check.max_path_edges);
  out += ',';
  append_i64(out, check.out_of_scope_paths);
  out += ',';
  out += check.pass ? '1' : '0';
  out += '\n';
  os << out;
}

void write_order_stats_csv(std::ostream& os, const OrderStatsCheck& check) {
  std::string out =
      "n,trials,alpha,ks_pooled,ks_pooled_critical,ks_first,ks_first_critical,"
      "mean_first_ratio,pass\n";
  append_u64(out, check.n);
  out += ',';
  append_u64(out, check.trials);
  out += ',';
  append_double(out, check.alpha);
  out += ',';
  append_double(out, check.ks_pooled);
  out += ',';
  append_double(out, check.ks_pooled_critical);
  out += ',';
  append_double(out, check.ks_first);
  out += ',';
  append_double(out, check.ks_first_critical);
  out += ',';
  append_double(out, check.first_ratio.mean);
  out += ',';
  out += check.pass ? '1' : '0';
  out += '\n';
  os << out;
}

void write_alpha_csv(std::ostream& os, const AlphaEstimate& estimate) {
  std::string out =
      "n,trials,log_n,mean_max_hops_all_pairs,mean_max_hops_from_1,"
      "mean_hops_12\n";
  for (std::size_t i = 0; i < estimate.n_grid.size(); ++i) {
    const double logn = std::log(static_cast<double>(estimate.n_grid[i]));
    const HopExperiment& run = estimate.runs[i];
    append_u64(out, estimate.n_grid[i]);
    out += ',';
    append_u64(out, estimate.trials_per_n[i]);
    out += ',';
    append_double(out, logn);
    out += ',';
    append_double(out, run.max_hops_all_pairs.mean * logn);
    out += ',';
    append_double(out, run.max_hops_from_1.mean * logn);
    out += ',';
    append_double(out, run.hops_12.mean * logn);
    out += '\n';
  }
  os << out;
}

}  // namespace fpp
