#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <set>
#include <vector>

#include "fpp/combinat.hpp"
#include "fpp/special_functions.hpp"
#include "fpp/stats.hpp"
#include "fpp/theory.hpp"

using namespace fpp;

TEST_CASE("exact path counts") {
  CHECK(count_paths_exact(5, 2) == 30);     // 5*4*3 / 2
  CHECK(count_paths_exact(7, 4) == 1260);   // 7*6*5*4*3 / 2
  CHECK(count_paths_exact(20, 3) == 58140);
  CHECK(count_paths_exact(2, 1) == 1);
  CHECK_THROWS_AS(count_paths_exact(5, 5), std::invalid_argument);
  CHECK_THROWS_AS(count_paths_exact(5, 0), std::invalid_argument);
}

TEST_CASE("enumeration is canonical, self-avoiding, and complete") {
  for (std::uint32_t n = 4; n <= 7; ++n)
    for (std::uint32_t k = 1; k < n && k <= 4; ++k) {
      const auto paths = enumerate_paths(n, k);
      CHECK(paths.size() == count_paths_exact(n, k));
      std::set<VertexPath> seen;
      for (const auto& p : paths) {
        REQUIRE(p.size() == k + 1);
        CHECK(p.front() < p.back());  // canonical orientation
        std::set<Vertex> verts(p.begin(), p.end());
        CHECK(verts.size() == p.size());  // self-avoiding
        for (Vertex v : p) CHECK(v < n);
        seen.insert(p);
        // The reversal must not be listed separately.
        VertexPath rev(p.rbegin(), p.rend());
        CHECK(seen.count(rev) == 0);
      }
      CHECK(seen.size() == paths.size());  // all distinct
    }
  CHECK_THROWS_AS(enumerate_paths(11, 2), std::invalid_argument);
}

TEST_CASE("intersection profiles on hand-built cases") {
  auto prof = [](const VertexPath& p, const VertexPath& q) {
    return intersection_profile(p, q);
  };
  // Identical paths: all edges shared in one run.
  CHECK(prof({0, 1, 2, 3}, {0, 1, 2, 3}).edges == 3);
  CHECK(prof({0, 1, 2, 3}, {0, 1, 2, 3}).blocks == 1);
  // Reversed writing of the same path: identical edge set.
  CHECK(prof({0, 1, 2, 3}, {3, 2, 1, 0}).edges == 3);
  CHECK(prof({0, 1, 2, 3}, {3, 2, 1, 0}).blocks == 1);
  // One middle edge shared.
  CHECK(prof({0, 1, 2, 3}, {4, 1, 2, 5}).edges == 1);
  CHECK(prof({0, 1, 2, 3}, {4, 1, 2, 5}).blocks == 1);
  // Two runs separated by a detour.
  CHECK(prof({0, 1, 2, 3, 4, 5}, {0, 1, 6, 3, 4, 7}).edges == 2);
  CHECK(prof({0, 1, 2, 3, 4, 5}, {0, 1, 6, 3, 4, 7}).blocks == 2);
  // A shared vertex without a shared edge contributes nothing.
  CHECK(prof({0, 1, 2}, {3, 1, 4}).edges == 0);
  CHECK(prof({0, 1, 2}, {3, 1, 4}).blocks == 0);
  // Symmetry in the arguments.
  const auto ab = prof({0, 1, 2, 3, 4}, {7, 1, 2, 3, 8});
  const auto ba = prof({7, 1, 2, 3, 8}, {0, 1, 2, 3, 4});
  CHECK(ab.edges == ba.edges);
  CHECK(ab.blocks == ba.blocks);
  CHECK_THROWS_AS(prof({0}, {1, 2}), std::invalid_argument);
}

TEST_CASE("pair table at n=4, k=2 matches hand counting") {
  // 12 paths; a 2-edge path shares one edge with exactly 6 others (3 per
  // edge) and both edges with none, so 72 ordered pairs overlap.
  const auto table = count_pairs(4, 2);
  CHECK(table.path_count == 12);
  CHECK(table.pairs[1][1] == 72);
  CHECK(table.pairs[0][0] == 60);
  CHECK(table.pairs[2][1] == 0);  // distinct paths cannot share everything
  CHECK(table.total_ordered_distinct() == 12 * 11);
  CHECK(table.sharing_edges(1) == 72);
}

TEST_CASE("pair table structural invariants") {
  for (std::uint32_t n = 5; n <= 7; ++n)
    for (std::uint32_t k = 2; k <= std::min(n - 1, 4u); ++k) {
      const auto table = count_pairs(n, k);
      CHECK(table.path_count == count_paths_exact(n, k));
      // Ordered pairs partition: every distinct ordered pair lands in one cell.
      CHECK(table.total_ordered_distinct() ==
            table.path_count * (table.path_count - 1));
      for (std::uint32_t i = 0; i <= k; ++i)
        for (std::uint32_t j = 0; j <= k; ++j) {
          const std::uint64_t c = table.pairs[i][j];
          if (c == 0) continue;
          CHECK(i >= j);              // each block holds >= 1 edge
          if (i > 0) CHECK(j >= 1);
          // Ordered-pair symmetry makes every cell even.
          CHECK(c % 2 == 0);
          // The second path carries the i shared edges plus at least one
          // connecting edge per gap between consecutive blocks.  A single
          // edge per gap suffices: the connector may join two block
          // endpoints directly, so only j - 1 extras are forced.
          CHECK(static_cast<std::int64_t>(k) >=
                static_cast<std::int64_t>(i) + static_cast<std::int64_t>(j) - 1);
        }
      // Full-overlap distinct pairs cannot exist.
      CHECK(table.pairs[k][1] == 0);
    }
  // Block-adjacent overlaps are real: P = 0-1-2-3 against Q = 1-0-3-2 shares
  // edges {0,1} and {2,3} in two blocks that Q joins with the single edge
  // (0,3).  Every 4-vertex path a-b-c-d has exactly three such partners
  // (connectors ac, ad, bd; bc rebuilds the path itself), so the cell holds
  // 3 x path_count ordered pairs.
  CHECK(count_pairs(5, 3).pairs[2][2] == 3 * count_paths_exact(5, 3));
  CHECK(count_pairs(6, 3).pairs[2][2] == 3 * count_paths_exact(6, 3));
  CHECK(count_pairs(7, 3).pairs[2][2] == 3 * count_paths_exact(7, 3));
}

TEST_CASE("closed-form bounds against the empirical table entrywise") {
  // The n^{2k+2-i-j} (2k^3)^j bound dominates every cell.  The tighter
  // product formula dominates wherever it is positive; its construction
  // interleaves blocks so that consecutive blocks along the second path are
  // separated by a free vertex, so it returns 0 on block-adjacent shapes
  // that the exhaustive count shows are populated.
  bool saw_uncovered_cell = false;
  for (std::uint32_t n = 5; n <= 7; ++n)
    for (std::uint32_t k = 2; k <= std::min(n - 1, 4u); ++k) {
      const auto table = count_pairs(n, k);
      for (std::uint32_t i = 0; i <= k; ++i)
        for (std::uint32_t j = 0; j <= k; ++j) {
          const auto c = static_cast<double>(table.pairs[i][j]);
          if (c == 0.0) continue;
          CHECK(c <= pair_count_bound(n, k, i, j));
          const double formula = counting_formula_upper(n, k, i, j);
          if (formula > 0.0)
            CHECK(c <= formula);
          else
            saw_uncovered_cell = true;
        }
    }
  CHECK(saw_uncovered_cell);
}

TEST_CASE("counting formula vanishes exactly on impossible shapes") {
  // Too many blocks for the edges of Q: k - i - j + 1 < j.
  CHECK(counting_formula_upper(30, 3, 3, 2) == 0.0);
  // More insertion slots requested than exist in P: j > k - i + 1.
  CHECK(counting_formula_upper(30, 4, 4, 2) == 0.0);
  // Negative leftover vertices for Q.
  CHECK(counting_formula_upper(30, 2, 2, 3) == 0.0);
  // A realizable shape is positive and finite.
  const double v = counting_formula_upper(30, 4, 2, 1);
  CHECK(v > 0.0);
  CHECK(std::isfinite(v));
  // (i, j) = (0, 0) degenerates to all ordered sequence pairs.
  const double all = counting_formula_upper(10.0, 2, 0, 0);
  CHECK(all == doctest::Approx(720.0 * 720.0).epsilon(1e-12));
}

TEST_CASE("second-moment correction: inversion equals direct pair sum") {
  const std::uint32_t n = 6, k = 3;
  const double s = 0.4;
  // Direct route: walk every ordered distinct pair.
  const auto paths = enumerate_paths(n, k);
  double direct = 0.0;
  for (std::size_t a = 0; a < paths.size(); ++a)
    for (std::size_t b = 0; b < paths.size(); ++b) {
      if (a == b) continue;
      const auto prof = intersection_profile(paths[a], paths[b]);
      if (prof.edges == 0) continue;
      direct += prof.edges == k
                    ? gamma_cdf(static_cast<double>(k), s)
                    : joint_weight_exact(k, prof.edges, s);
    }
  CHECK(delta_exact_small(n, k, s) == doctest::Approx(direct).epsilon(1e-9));
}

TEST_CASE("second-moment correction vs Monte Carlo at n=20") {
  const std::uint32_t n = 20, k = 3;
  const double eps = 0.3;
  const double s = (1.0 - eps) * std::log(static_cast<double>(n)) / n;
  const double exact = delta_exact_small(n, k, s);
  REQUIRE(exact > 0.0);

  // Per trial, gather light k-edge paths by pruned DFS (any prefix already
  // above s is dead), then count ordered distinct overlapping pairs.
  const std::uint64_t trials = 3000;
  std::vector<double> counts;
  counts.reserve(trials);
  std::vector<std::vector<std::uint64_t>> light;  // sorted edge sets
  for (std::uint64_t trial = 0; trial < trials; ++trial) {
    WeightOracle oracle(derive_trial_seed(808, trial).value, 0,
                        Distribution::ExponentialMean1);
    light.clear();
    std::vector<Vertex> stack;
    std::vector<std::uint64_t> edge_stack;
    std::vector<bool> used(n, false);
    auto dfs = [&](auto&& self, double acc) -> void {
      if (stack.size() == k + 1) {
        if (stack.front() < stack.back()) {  // canonical: count each path once
          auto edges = edge_stack;
          std::sort(edges.begin(), edges.end());
          light.push_back(std::move(edges));
        }
        return;
      }
      const Vertex tail = stack.back();
      for (Vertex v = 0; v < n; ++v) {
        if (used[v]) continue;
        const double w = acc + oracle.weight(tail, v);
        if (w > s) continue;
        used[v] = true;
        stack.push_back(v);
        edge_stack.push_back(pack_edge(tail, v));
        self(self, w);
        edge_stack.pop_back();
        stack.pop_back();
        used[v] = false;
      }
    };
    for (Vertex v = 0; v < n; ++v) {
      used[v] = true;
      stack.push_back(v);
      dfs(dfs, 0.0);
      stack.pop_back();
      used[v] = false;
    }
    std::uint64_t overlapping = 0;
    for (std::size_t a = 0; a < light.size(); ++a)
      for (std::size_t b = 0; b < light.size(); ++b) {
        if (a == b) continue;
        const bool shares = std::find_first_of(
                                light[a].begin(), light[a].end(),
                                light[b].begin(), light[b].end()) != light[a].end();
        if (shares) ++overlapping;
      }
    counts.push_back(static_cast<double>(overlapping));
  }
  const auto mc = summarize(counts);
  const double se = mc.stddev / std::sqrt(static_cast<double>(trials));
  CHECK(std::abs(mc.mean - exact) < 4.0 * se + 1e-9);
}

TEST_CASE("correction term guards") {
  CHECK_THROWS_AS(delta_exact_small(40, 3, 0.1), std::invalid_argument);
  CHECK_THROWS_AS(delta_exact_small(20, 6, 0.1), std::invalid_argument);  // workload
  CHECK_THROWS_AS(delta_exact_small(6, 3, -1.0), std::invalid_argument);
  CHECK(delta_exact_small(6, 3, 0.0) == 0.0);
  // Single-edge paths never overlap without coinciding.
  CHECK(delta_exact_small(6, 1, 0.5) == 0.0);
}
