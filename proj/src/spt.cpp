#include "fpp/spt.hpp"

#include <algorithm>

namespace fpp {

double total_tree_weight(const ShortestPathTree& tree) {
  double total = 0.0;
  for (Vertex v : tree.settle_order) {
    if (tree.parent[v] != kNoVertex) total += tree.dist[v] - tree.dist[tree.parent[v]];
  }
  return total;
}

ShortestPathTree spt_restricted(std::uint32_t n, Vertex source,
                                const WeightOracle& base,
                                const WeightOracle& rerouted,
                                std::span<const Vertex> forbidden_path,
                                double budget) {
  if (budget < 0.0) throw std::invalid_argument("spt_restricted: negative budget");
  RerouteOracle oracle(base, rerouted, forbidden_path);
  return dijkstra_spt(n, source, oracle, DijkstraOptions{.budget = budget});
}

PathRecord extract_path(const ShortestPathTree& tree, Vertex target) {
  if (target >= tree.n) throw std::invalid_argument("extract_path: target out of range");
  PathRecord path;
  if (target == tree.source) return path;  // empty path by convention
  if (!tree.reached(target))
    throw std::invalid_argument("extract_path: target not reached");
  Vertex v = target;
  while (v != kNoVertex) {
    path.vertices.push_back(v);
    v = tree.parent[v];
  }
  std::reverse(path.vertices.begin(), path.vertices.end());
  path.weight = tree.dist[target];
  return path;
}

namespace {

// Materialized n x n weight table.  Hashing an edge weight costs more than
// reading it, and the all-pairs sweep touches every edge n times, so filling
// the table once pays for itself many times over.
struct DenseMatrixSource {
  std::uint32_t n = 0;
  std::vector<double> w;  // row-major, diagonal unused

  DenseMatrixSource(std::uint32_t size, const WeightOracle& oracle)
      : n(size), w(static_cast<std::size_t>(size) * size, 0.0) {
    for (Vertex a = 0; a < n; ++a)
      for (Vertex b = a + 1; b < n; ++b) {
        const double x = oracle.weight(a, b);
        w[static_cast<std::size_t>(a) * n + b] = x;
        w[static_cast<std::size_t>(b) * n + a] = x;
      }
  }

  double weight(Vertex a, Vertex b) const {
    return w[static_cast<std::size_t>(a) * n + b];
  }
};

}  // namespace

AllPairsStats all_pairs_hop_stats(std::uint32_t n, const WeightOracle& oracle) {
  AllPairsStats stats;
  const DenseMatrixSource matrix(n, oracle);
  ShortestPathTree tree;
  DijkstraWorkspace ws;
  for (Vertex s = 0; s < n; ++s) {
    detail::dijkstra_into(tree, ws, n, s, matrix, DijkstraOptions{});
    std::uint32_t height = 0;
    double max_w = 0.0;
    for (Vertex v : tree.settle_order) {
      height = std::max(height, tree.depth[v]);
      max_w = std::max(max_w, tree.dist[v]);
    }
    if (s == 0) {
      stats.hops_12 = tree.depth[1];
      stats.max_hops_from_1 = height;
      stats.w12 = tree.dist[1];
      stats.max_w_from_1 = max_w;
      stats.spt1_total_weight = total_tree_weight(tree);
    }
    stats.max_hops_all_pairs = std::max(stats.max_hops_all_pairs, height);
    stats.max_w_all_pairs = std::max(stats.max_w_all_pairs, max_w);
  }
  return stats;
}

}  // namespace fpp
