#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numeric>
#include <vector>

#include "fpp/growth.hpp"
#include "fpp/spt.hpp"
#include "fpp/stats.hpp"

using namespace fpp;

TEST_CASE("trace bookkeeping is consistent") {
  const auto trace = simulate_growth(50, 123);
  REQUIRE(trace.interarrival.size() == 49);
  REQUIRE(trace.attach_to.size() == 49);
  REQUIRE(trace.arrival_time.size() == 49);
  double t = 0.0;
  for (std::size_t k = 0; k < 49; ++k) {
    CHECK(trace.interarrival[k] > 0.0);
    t += trace.interarrival[k];
    CHECK(trace.arrival_time[k] == doctest::Approx(t).epsilon(1e-15));
    CHECK(trace.attach_to[k] <= k);  // vertex k+1 attaches to an earlier one
  }
  CHECK(simulate_growth(50, 123).arrival_time == trace.arrival_time);  // pure
  CHECK_THROWS_AS(simulate_growth(1, 0), std::invalid_argument);
}

TEST_CASE("size_at_time counts arrivals up to t") {
  const auto trace = simulate_growth(20, 7);
  CHECK(size_at_time(trace, 0.0) == 1);
  CHECK(size_at_time(trace, trace.arrival_time[0]) == 2);  // ties count
  CHECK(size_at_time(trace, trace.arrival_time.back()) == 20);
  CHECK(size_at_time(trace, 1e9) == 20);
  const double mid =
      0.5 * (trace.arrival_time[4] + trace.arrival_time[5]);
  CHECK(size_at_time(trace, mid) == 6);
}

TEST_CASE("completion time has the right mean") {
  // t_{n-1} is a sum of independent Exp(k(n-k)) steps, so its mean is
  // sum_k 1/(k(n-k)); with n = 50 trials concentrate quickly.
  const std::uint32_t n = 50;
  double expect = 0.0;
  for (std::uint32_t k = 1; k < n; ++k)
    expect += 1.0 / (static_cast<double>(k) * (n - k));
  std::vector<double> finishes;
  for (std::uint64_t trial = 0; trial < 4000; ++trial)
    finishes.push_back(
        simulate_growth(n, derive_trial_seed(404, trial).value).arrival_time.back());
  const auto s = summarize(finishes);
  CHECK(std::abs(s.mean - expect) < 0.05 * expect);
  CHECK(std::abs(s.mean - expect) < 3.0 * s.ci_halfwidth + 1e-9);
}

TEST_CASE("heights and depths derive from attachments") {
  GrowthTrace trace;
  trace.n = 6;
  trace.attach_to = {0, 0, 1, 2, 4};  // chain under 2: 0-2-4-5, plus 0-1-3
  const auto hd = height_and_depths(trace);
  CHECK(hd.depths == std::vector<std::uint32_t>({0, 1, 1, 2, 2, 3}));
  CHECK(hd.height == 3);
}

TEST_CASE("sizes_at_times matches the full trace") {
  const std::uint32_t n = 300;
  for (std::uint64_t seed : {1ull, 9ull, 77ull}) {
    const auto trace = simulate_growth(n, seed);
    const std::vector<double> times = {0.0, 0.002, 0.01, 0.02, 0.05, 0.4, 12.0};
    const auto sizes = sizes_at_times(n, seed, times);
    REQUIRE(sizes.size() == times.size());
    for (std::size_t i = 0; i < times.size(); ++i)
      CHECK(sizes[i] == size_at_time(trace, times[i]));
  }
  CHECK_THROWS_AS(sizes_at_times(10, 0, std::vector<double>{0.3, 0.1}),
                  std::invalid_argument);
}

TEST_CASE("root degree law: exact recurrence moments") {
  for (std::uint32_t m : {2u, 3u, 6u, 40u}) {
    const auto p = rrt_root_degree_law(m);
    double mass = 0.0, mean = 0.0, var = 0.0;
    for (std::size_t d = 0; d < p.size(); ++d) {
      mass += p[d];
      mean += static_cast<double>(d) * p[d];
    }
    // Root degree is 1 + sum of Bernoulli(1/k), k = 2..m-1.
    double h = 0.0;
    for (std::uint32_t k = 1; k < m; ++k) h += 1.0 / k;
    for (std::size_t d = 0; d < p.size(); ++d)
      var += (d - mean) * (d - mean) * p[d];
    double vexpect = 0.0;
    for (std::uint32_t k = 2; k < m; ++k)
      vexpect += (1.0 / k) * (1.0 - 1.0 / k);
    CHECK(mass == doctest::Approx(1.0).epsilon(1e-13));
    CHECK(mean == doctest::Approx(h).epsilon(1e-13));
    CHECK(var == doctest::Approx(vexpect).epsilon(1e-12));
  }
  // Hand-computed table for m = 4: (1/3, 1/2, 1/6).
  const auto p4 = rrt_root_degree_law(4);
  CHECK(p4[1] == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
  CHECK(p4[2] == doctest::Approx(1.0 / 2.0).epsilon(1e-15));
  CHECK(p4[3] == doctest::Approx(1.0 / 6.0).epsilon(1e-15));
}

TEST_CASE("simulated root degrees follow the exact law") {
  const std::uint32_t m = 6;
  const std::uint64_t trials = 40000;
  std::vector<double> freq(m, 0.0);
  for (std::uint64_t trial = 0; trial < trials; ++trial) {
    const auto trace = simulate_growth(m, derive_trial_seed(606, trial).value);
    std::uint32_t deg = 0;
    for (Vertex a : trace.attach_to)
      if (a == 0) ++deg;
    ++freq[deg];
  }
  const auto p = rrt_root_degree_law(m);
  for (std::uint32_t d = 1; d < m; ++d) {
    const double phat = freq[d] / static_cast<double>(trials);
    const double se = std::sqrt(p[d] * (1.0 - p[d]) / static_cast<double>(trials));
    CHECK(std::abs(phat - p[d]) < 4.0 * se + 1e-12);
  }
}

TEST_CASE("recursive tree height is reproducible and plausible") {
  CHECK(random_recursive_tree_height(1, 5) == 0);
  CHECK(random_recursive_tree_height(2, 5) == 1);
  const auto h = random_recursive_tree_height(2000, 5);
  CHECK(h == random_recursive_tree_height(2000, 5));
  // e log m ~ 20.7 for m = 2000; anything within [7, 40] is sane for one draw.
  CHECK(h > 7);
  CHECK(h < 40);
}

TEST_CASE("growth process and Dijkstra ball sizes share one distribution") {
  // The two routes simulate the same object: a cluster that swallows its
  // k+1st vertex after an Exp(k(n-k)) wait.  Compare size-at-t samples.
  const std::uint32_t n = 200;
  const std::uint64_t trials = 10000;
  const double t = std::log(50.0) / n;  // mean cluster size around 50
  std::vector<double> via_growth, via_dijkstra;
  via_growth.reserve(trials);
  via_dijkstra.reserve(trials);
  const std::vector<double> times = {t};
  for (std::uint64_t trial = 0; trial < trials; ++trial) {
    via_growth.push_back(
        sizes_at_times(n, derive_trial_seed(111, trial).value, times)[0]);
    WeightOracle oracle(derive_trial_seed(222, trial).value, 0,
                        Distribution::ExponentialMean1);
    const auto tree = dijkstra_spt(n, 0, oracle, DijkstraOptions{.budget = t});
    via_dijkstra.push_back(static_cast<double>(tree.size()));
  }
  // Heavily tied integer samples make the asymptotic KS level conservative.
  const double d = ks_distance_two_sample(via_growth, via_dijkstra);
  CHECK(d < ks_critical_two_sample(trials, trials, 0.001));
  // Means agree too.
  const auto sg = summarize(via_growth), sd = summarize(via_dijkstra);
  CHECK(std::abs(sg.mean - sd.mean) <
        3.0 * std::hypot(sg.ci_halfwidth, sd.ci_halfwidth) + 1.0);
}
