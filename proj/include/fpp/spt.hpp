#pragma once

#include <limits>
#include <span>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "fpp/edge_weights.hpp"

// Shortest path trees on the implicit complete graph.  The graph is never
// materialized: Dijkstra runs dense (argmin by linear scan, relax all n-1
// neighbours of the settled vertex), querying the weight oracle edge by edge.
// That is O(n^2) time and O(n) memory per source, which beats heap-based
// variants on complete graphs and keeps all-pairs scans at O(n) memory.

namespace fpp {

inline constexpr double kInf = std::numeric_limits<double>::infinity();
inline constexpr std::uint32_t kNoRank = 0xffffffffu;

struct ShortestPathTree {
  std::uint32_t n = 0;
  Vertex source = 0;
  std::vector<Vertex> parent;              // kNoVertex for source and unreached
  std::vector<double> dist;                // +inf for unreached
  std::vector<std::uint32_t> depth;        // hops from source; 0 at source
  std::vector<std::uint32_t> arrival_rank; // settle order; kNoRank if unreached
  std::vector<Vertex> settle_order;        // vertices by increasing dist

  bool reached(Vertex v) const { return dist[v] < kInf; }
  std::size_t size() const { return settle_order.size(); }

  std::uint32_t height() const {
    std::uint32_t h = 0;
    for (Vertex v : settle_order) h = std::max(h, depth[v]);
    return h;
  }
};

// Sum of tree edge weights, recovered as dist[v] - dist[parent[v]].
double total_tree_weight(const ShortestPathTree& tree);

struct DijkstraOptions {
  double budget = kInf;         // settle vertices while dist <= budget
  Vertex stop_after = kNoVertex;  // stop once this vertex settles
};

// Reusable scratch arrays so all-pairs sweeps do not reallocate per source.
struct DijkstraWorkspace {
  std::vector<double> scan_key;   // tentative dist; +inf once settled (argmin scan)
  std::vector<double> relax_key;  // tentative dist; -inf once settled (skip filter)
  std::vector<Vertex> tentative_parent;
};

namespace detail {

template <EdgeWeightSource O>
void dijkstra_into(ShortestPathTree& tree, DijkstraWorkspace& ws, std::uint32_t n,
                   Vertex source, const O& oracle, const DijkstraOptions& opt) {
  if (n < 2) throw std::invalid_argument("dijkstra_spt: need n >= 2");
  if (source >= n) throw std::invalid_argument("dijkstra_spt: source out of range");

  tree.n = n;
  tree.source = source;
  tree.parent.assign(n, kNoVertex);
  tree.dist.assign(n, kInf);
  tree.depth.assign(n, 0);
  tree.arrival_rank.assign(n, kNoRank);
  tree.settle_order.clear();
  tree.settle_order.reserve(n);

  ws.scan_key.assign(n, kInf);
  ws.relax_key.assign(n, kInf);
  ws.tentative_parent.assign(n, kNoVertex);
  ws.scan_key[source] = 0.0;
  ws.relax_key[source] = 0.0;

  double* const scan_key = ws.scan_key.data();
  double* const relax_key = ws.relax_key.data();

  for (std::uint32_t round = 0; round < n; ++round) {
    // Dense argmin; settled entries hold +inf so a plain scan suffices.
    Vertex u = 0;
    double best = scan_key[0];
    for (std::uint32_t v = 1; v < n; ++v) {
      if (scan_key[v] < best) {
        best = scan_key[v];
        u = v;
      }
    }
    if (best > opt.budget || best == kInf) break;

    tree.dist[u] = best;
    tree.arrival_rank[u] = round;
    tree.settle_order.push_back(u);
    const Vertex p = ws.tentative_parent[u];
    if (p != kNoVertex) {
      tree.parent[u] = p;
      tree.depth[u] = tree.depth[p] + 1;
    }
    scan_key[u] = kInf;
    relax_key[u] = -kInf;  // any candidate lower bound now fails the filter
    if (u == opt.stop_after) break;

    const double du = best;
    for (std::uint32_t v = 0; v < n; ++v) {
      if (v == u) continue;
      if constexpr (FilteredWeightSource<O>) {
        // weight_floor never exceeds the true weight, so skipping here can
        // only discard relaxations that would have failed anyway; settled
        // vertices (relax_key = -inf) are skipped by the same comparison.
        if (du + oracle.weight_floor(u, v) >= relax_key[v]) continue;
      } else if (relax_key[v] == -kInf) {
        continue;
      }
      const double cand = du + oracle.weight(u, v);
      if (cand < relax_key[v]) {
        relax_key[v] = cand;
        scan_key[v] = cand;
        ws.tentative_parent[v] = u;
      }
    }
  }
}

}  // namespace detail

template <EdgeWeightSource O>
ShortestPathTree dijkstra_spt(std::uint32_t n, Vertex source, const O& oracle,
                              const DijkstraOptions& opt = {}) {
  ShortestPathTree tree;
  DijkstraWorkspace ws;
  detail::dijkstra_into(tree, ws, n, source, oracle, opt);
  return tree;
}

// Weight source that reroutes the edges of one path to a second layer and
// leaves every other edge on the base layer.  Used for trees grown in the
// graph where a path's own edges have been resampled.
class RerouteOracle {
 public:
  RerouteOracle(const WeightOracle& base, const WeightOracle& alt,
                std::span<const Vertex> path_vertices)
      : base_(base), alt_(alt) {
    for (std::size_t i = 0; i + 1 < path_vertices.size(); ++i)
      rerouted_.insert(pack_edge(path_vertices[i], path_vertices[i + 1]));
  }

  double weight(Vertex a, Vertex b) const {
    return pick(a, b).weight(a, b);
  }
  double weight_floor(Vertex a, Vertex b) const {
    return pick(a, b).weight_floor(a, b);
  }

 private:
  const WeightOracle& pick(Vertex a, Vertex b) const {
    return rerouted_.count(pack_edge(a, b)) ? alt_ : base_;
  }
  const WeightOracle& base_;
  const WeightOracle& alt_;
  std::unordered_set<std::uint64_t> rerouted_;
};

// Weight source with a handful of explicitly pinned edge weights on top of a
// base oracle (planted-path experiments).
class OverlayOracle {
 public:
  explicit OverlayOracle(const WeightOracle& base) : base_(base) {}

  void pin(Vertex a, Vertex b, double w) { pinned_[pack_edge(a, b)] = w; }

  double weight(Vertex a, Vertex b) const {
    auto it = pinned_.find(pack_edge(a, b));
    return it != pinned_.end() ? it->second : base_.weight(a, b);
  }
  double weight_floor(Vertex a, Vertex b) const {
    auto it = pinned_.find(pack_edge(a, b));
    return it != pinned_.end() ? it->second : base_.weight_floor(a, b);
  }

 private:
  const WeightOracle& base_;
  std::unordered_map<std::uint64_t, double> pinned_;
};

// Truncated tree in the graph with forbidden_path's edges moved to the layer
// of `rerouted`: grow from source until the next settle would exceed budget.
ShortestPathTree spt_restricted(std::uint32_t n, Vertex source,
                                const WeightOracle& base,
                                const WeightOracle& rerouted,
                                std::span<const Vertex> forbidden_path,
                                double budget);

// A simple (self-avoiding) path, stored as its vertex sequence.
struct PathRecord {
  std::vector<Vertex> vertices;
  double weight = 0.0;  // internal (mean-1) scale

  std::size_t edge_count() const {
    return vertices.empty() ? 0 : vertices.size() - 1;
  }
};

// Sum the path's edge weights front to back (matches Dijkstra's accumulation
// order when the front is the tree source).
template <EdgeWeightSource O>
double path_weight(const O& oracle, std::span<const Vertex> vertices) {
  double w = 0.0;
  for (std::size_t i = 0; i + 1 < vertices.size(); ++i)
    w += oracle.weight(vertices[i], vertices[i + 1]);
  return w;
}

// Tree path from the source to target.  target == source yields the empty
// path of weight 0; an unreached target is an error.
PathRecord extract_path(const ShortestPathTree& tree, Vertex target);

struct AllPairsStats {
  std::uint32_t hops_12 = 0;            // |path| between the first two vertices
  std::uint32_t max_hops_from_1 = 0;    // height of the first source's tree
  std::uint32_t max_hops_all_pairs = 0; // max height over all sources
  double w12 = 0.0;                     // internal-scale weights below
  double max_w_from_1 = 0.0;
  double max_w_all_pairs = 0.0;
  double spt1_total_weight = 0.0;
};

// n Dijkstra passes over the shared oracle: O(n^3) time, O(n) extra memory.
AllPairsStats all_pairs_hop_stats(std::uint32_t n, const WeightOracle& oracle);

}  // namespace fpp
