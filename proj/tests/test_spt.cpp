#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <vector>

#include "fpp/spt.hpp"

using namespace fpp;

namespace {

// Independent reference: Floyd-Warshall on the materialized weight matrix.
std::vector<std::vector<double>> floyd_warshall(std::uint32_t n,
                                                const WeightOracle& oracle) {
  std::vector<std::vector<double>> d(n, std::vector<double>(n, 0.0));
  for (Vertex i = 0; i < n; ++i)
    for (Vertex j = 0; j < n; ++j)
      if (i != j) d[i][j] = oracle.weight(i, j);
  for (Vertex k = 0; k < n; ++k)
    for (Vertex i = 0; i < n; ++i)
      for (Vertex j = 0; j < n; ++j)
        d[i][j] = std::min(d[i][j], d[i][k] + d[k][j]);
  return d;
}

// Second independent reference: enumerate every simple path from source and
// track, per target, the minimum front-to-back weight sum and its hop count.
// Front-to-back summation makes the float expression identical to Dijkstra's
// accumulation along the same path.
struct BestPaths {
  std::vector<double> weight;
  std::vector<std::uint32_t> hops;
};

void enumerate_rec(std::uint32_t n, const WeightOracle& oracle,
                   std::vector<Vertex>& stack, std::vector<bool>& used,
                   double acc, BestPaths& best) {
  const Vertex tail = stack.back();
  if (acc < best.weight[tail]) {
    best.weight[tail] = acc;
    best.hops[tail] = static_cast<std::uint32_t>(stack.size() - 1);
  }
  for (Vertex v = 0; v < n; ++v) {
    if (used[v]) continue;
    used[v] = true;
    stack.push_back(v);
    enumerate_rec(n, oracle, stack, used, acc + oracle.weight(tail, v), best);
    stack.pop_back();
    used[v] = false;
  }
}

BestPaths brute_force_paths(std::uint32_t n, Vertex source,
                            const WeightOracle& oracle) {
  BestPaths best{std::vector<double>(n, kInf), std::vector<std::uint32_t>(n, 0)};
  std::vector<Vertex> stack = {source};
  std::vector<bool> used(n, false);
  used[source] = true;
  enumerate_rec(n, oracle, stack, used, 0.0, best);
  return best;
}

// Weight source without a floor, to drive the unfiltered Dijkstra branch.
struct PlainSource {
  const WeightOracle* inner;
  double weight(Vertex a, Vertex b) const { return inner->weight(a, b); }
};

}  // namespace

TEST_CASE("tree distances match Floyd-Warshall") {
  const std::uint32_t n = 5;
  for (std::uint64_t seed : {1ull, 2ull, 3ull, 99ull}) {
    WeightOracle oracle(seed, 0, Distribution::ExponentialMean1);
    const auto ref = floyd_warshall(n, oracle);
    for (Vertex s = 0; s < n; ++s) {
      const auto tree = dijkstra_spt(n, s, oracle);
      for (Vertex v = 0; v < n; ++v)
        CHECK(tree.dist[v] == doctest::Approx(ref[s][v]).epsilon(1e-12));
    }
  }
}

TEST_CASE("tree distances and hop counts match exhaustive enumeration") {
  const std::uint32_t n = 7;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    WeightOracle oracle(seed, 0, Distribution::ExponentialMean1);
    const auto best = brute_force_paths(n, 0, oracle);
    const auto tree = dijkstra_spt(n, 0, oracle);
    for (Vertex v = 0; v < n; ++v) {
      // Bitwise equality: both sides sum the optimal path front to back.
      CHECK(tree.dist[v] == best.weight[v]);
      CHECK(tree.depth[v] == best.hops[v]);
    }
  }
}

TEST_CASE("tree invariants hold") {
  const std::uint32_t n = 80;
  WeightOracle oracle(7, 0, Distribution::ExponentialMean1);
  const auto tree = dijkstra_spt(n, 3, oracle);
  REQUIRE(tree.size() == n);
  CHECK(tree.settle_order.front() == 3);
  CHECK(tree.dist[3] == 0.0);
  CHECK(tree.depth[3] == 0);
  CHECK(tree.parent[3] == kNoVertex);
  double prev = -1.0;
  for (Vertex v : tree.settle_order) {
    CHECK(tree.dist[v] >= prev);  // settle order is by increasing distance
    prev = tree.dist[v];
    if (v == tree.source) continue;
    const Vertex p = tree.parent[v];
    REQUIRE(p != kNoVertex);
    CHECK(tree.arrival_rank[p] < tree.arrival_rank[v]);  // parent settles first
    CHECK(tree.depth[v] == tree.depth[p] + 1);
    CHECK(tree.dist[v] >= tree.dist[p]);
    // The tree edge is consistent with the oracle.
    CHECK(tree.dist[v] == tree.dist[p] + oracle.weight(p, v));
  }
  CHECK(tree.height() >= 1);
}

TEST_CASE("skip filter does not change results") {
  const std::uint32_t n = 120;
  WeightOracle oracle(42, 0, Distribution::ExponentialMean1);
  const auto filtered = dijkstra_spt(n, 0, oracle);
  const auto plain = dijkstra_spt(n, 0, PlainSource{&oracle});
  CHECK(filtered.dist == plain.dist);  // bitwise identical
  CHECK(filtered.parent == plain.parent);
  CHECK(filtered.settle_order == plain.settle_order);
}

TEST_CASE("budget truncation settles exactly the in-range prefix") {
  const std::uint32_t n = 100;
  WeightOracle oracle(13, 0, Distribution::ExponentialMean1);
  const auto full = dijkstra_spt(n, 0, oracle);
  const double budget = full.dist[full.settle_order[30]];
  const auto cut = dijkstra_spt(n, 0, oracle, DijkstraOptions{.budget = budget});
  REQUIRE(cut.size() == 31);  // distances are a.s. distinct
  for (std::size_t i = 0; i < cut.size(); ++i) {
    const Vertex v = cut.settle_order[i];
    CHECK(v == full.settle_order[i]);
    CHECK(cut.dist[v] == full.dist[v]);
    CHECK(cut.dist[v] <= budget);
  }
  for (Vertex v = 0; v < n; ++v)
    if (!cut.reached(v)) CHECK(full.dist[v] > budget);
  // Zero budget keeps only the source.
  const auto only_source = dijkstra_spt(n, 0, oracle, DijkstraOptions{.budget = 0.0});
  CHECK(only_source.size() == 1);
}

TEST_CASE("stop_after halts once the target settles") {
  const std::uint32_t n = 100;
  WeightOracle oracle(21, 0, Distribution::ExponentialMean1);
  const auto full = dijkstra_spt(n, 0, oracle);
  const Vertex target = full.settle_order[40];
  const auto partial =
      dijkstra_spt(n, 0, oracle, DijkstraOptions{.stop_after = target});
  CHECK(partial.size() == 41);
  CHECK(partial.settle_order.back() == target);
  CHECK(partial.dist[target] == full.dist[target]);
}

TEST_CASE("input validation") {
  WeightOracle oracle(1, 0, Distribution::ExponentialMean1);
  CHECK_THROWS_AS(dijkstra_spt(1, 0, oracle), std::invalid_argument);
  CHECK_THROWS_AS(dijkstra_spt(10, 10, oracle), std::invalid_argument);
}

TEST_CASE("path extraction walks the tree") {
  const std::uint32_t n = 60;
  WeightOracle oracle(5, 0, Distribution::ExponentialMean1);
  const auto tree = dijkstra_spt(n, 2, oracle);
  const auto path = extract_path(tree, 47);
  REQUIRE(path.vertices.size() >= 2);
  CHECK(path.vertices.front() == 2);
  CHECK(path.vertices.back() == 47);
  CHECK(path.edge_count() == tree.depth[47]);
  CHECK(path.weight == tree.dist[47]);
  // Front-to-back resummation reproduces the tree distance bitwise.
  CHECK(path_weight(oracle, path.vertices) == tree.dist[47]);
  const auto empty = extract_path(tree, 2);
  CHECK(empty.vertices.empty());
  CHECK(empty.weight == 0.0);
  CHECK(path_weight(oracle, empty.vertices) == 0.0);
  CHECK_THROWS_AS(extract_path(tree, n), std::invalid_argument);
  const auto cut = dijkstra_spt(n, 2, oracle, DijkstraOptions{.budget = 0.0});
  CHECK_THROWS_AS(extract_path(cut, 47), std::invalid_argument);
}

TEST_CASE("total tree weight equals the sum of its edges") {
  const std::uint32_t n = 50;
  WeightOracle oracle(9, 0, Distribution::ExponentialMean1);
  const auto tree = dijkstra_spt(n, 0, oracle);
  double direct = 0.0;
  for (Vertex v = 0; v < n; ++v)
    if (tree.parent[v] != kNoVertex) direct += oracle.weight(v, tree.parent[v]);
  CHECK(total_tree_weight(tree) == doctest::Approx(direct).epsilon(1e-12));
}

TEST_CASE("rerouting moves exactly the path edges to the other layer") {
  WeightOracle base(3, 0, Distribution::ExponentialMean1);
  WeightOracle alt(3, 1, Distribution::ExponentialMean1);
  const std::vector<Vertex> path = {4, 9, 2};
  RerouteOracle oracle(base, alt, path);
  CHECK(oracle.weight(4, 9) == alt.weight(4, 9));
  CHECK(oracle.weight(9, 2) == alt.weight(2, 9));   // orientation-free
  CHECK(oracle.weight(4, 2) == base.weight(4, 2));  // chord stays on base
  CHECK(oracle.weight(7, 8) == base.weight(7, 8));
  CHECK(oracle.weight_floor(4, 9) == alt.weight_floor(4, 9));
  CHECK(oracle.weight_floor(7, 8) == base.weight_floor(7, 8));
}

TEST_CASE("restricted tree respects budget and sees resampled path edges") {
  const std::uint32_t n = 40;
  WeightOracle base(17, 0, Distribution::ExponentialMean1);
  WeightOracle alt(17, 1, Distribution::ExponentialMean1);
  const std::vector<Vertex> path = {0, 5, 11};
  const double budget = 0.08;
  const auto tree = spt_restricted(n, 0, base, alt, path, budget);
  CHECK(tree.size() >= 1);
  for (Vertex v : tree.settle_order) CHECK(tree.dist[v] <= budget);
  // The tree must price the path's own edges on the resampled layer.
  RerouteOracle expect(base, alt, path);
  for (Vertex v : tree.settle_order) {
    if (v == 0) continue;
    CHECK(tree.dist[v] ==
          tree.dist[tree.parent[v]] + expect.weight(tree.parent[v], v));
  }
  CHECK_THROWS_AS(spt_restricted(n, 0, base, alt, path, -1.0), std::invalid_argument);
}

TEST_CASE("pinned edges override the base oracle") {
  WeightOracle base(23, 0, Distribution::ExponentialMean1);
  OverlayOracle overlay(base);
  overlay.pin(2, 7, 0.001);
  overlay.pin(9, 4, 0.002);
  CHECK(overlay.weight(2, 7) == 0.001);
  CHECK(overlay.weight(7, 2) == 0.001);
  CHECK(overlay.weight(4, 9) == 0.002);
  CHECK(overlay.weight(1, 3) == base.weight(1, 3));
  CHECK(overlay.weight_floor(2, 7) == 0.001);
  // A pinned near-zero edge is picked up by the tree.
  const auto tree = dijkstra_spt(10, 2, overlay);
  CHECK(tree.parent[7] == 2);
  CHECK(tree.dist[7] == 0.001);
}

TEST_CASE("all-pairs statistics agree with per-source trees") {
  const std::uint32_t n = 60;
  WeightOracle oracle(31, 0, Distribution::ExponentialMean1);
  const auto stats = all_pairs_hop_stats(n, oracle);
  AllPairsStats ref;
  for (Vertex s = 0; s < n; ++s) {
    const auto tree = dijkstra_spt(n, s, oracle);
    double max_w = 0.0;
    for (Vertex v = 0; v < n; ++v) max_w = std::max(max_w, tree.dist[v]);
    if (s == 0) {
      ref.hops_12 = tree.depth[1];
      ref.max_hops_from_1 = tree.height();
      ref.w12 = tree.dist[1];
      ref.max_w_from_1 = max_w;
      ref.spt1_total_weight = total_tree_weight(tree);
    }
    ref.max_hops_all_pairs = std::max(ref.max_hops_all_pairs, tree.height());
    ref.max_w_all_pairs = std::max(ref.max_w_all_pairs, max_w);
  }
  CHECK(stats.hops_12 == ref.hops_12);
  CHECK(stats.max_hops_from_1 == ref.max_hops_from_1);
  CHECK(stats.max_hops_all_pairs == ref.max_hops_all_pairs);
  CHECK(stats.w12 == ref.w12);
  CHECK(stats.max_w_from_1 == ref.max_w_from_1);
  CHECK(stats.max_w_all_pairs == ref.max_w_all_pairs);
  CHECK(stats.spt1_total_weight == doctest::Approx(ref.spt1_total_weight).epsilon(1e-12));
  // Ordering relations that must always hold.
  CHECK(stats.hops_12 <= stats.max_hops_from_1);
  CHECK(stats.max_hops_from_1 <= stats.max_hops_all_pairs);
  CHECK(stats.w12 <= stats.max_w_from_1);
  CHECK(stats.max_w_from_1 <= stats.max_w_all_pairs);
}
