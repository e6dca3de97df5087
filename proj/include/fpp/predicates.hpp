#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "fpp/combinat.hpp"
#include "fpp/spt.hpp"
#include "fpp/theory.hpp"

// Structural path predicates: linear prefix-sum growth (legality), bounded
// shortest-path-tree heights around the path (bonsai), and the exhaustive
// small-n check that the two together force local optimality.  Vertex
// positions follow the 1-based convention of the defining formulas; code
// handling raw vertex arrays is 0-based and says so.

namespace fpp {

// Distances from positions i < j (1-based, on a path with k edges and k+1
// vertices) to the nearer path end: m(i,k) = min{i-1, k+1-i}, and
// s = max{m(i,k), m(j,k)}.
struct EndDistances {
  std::uint32_t m_i = 0;
  std::uint32_t m_j = 0;
  std::uint32_t s = 0;
};
EndDistances m_and_s(std::uint32_t i, std::uint32_t j, std::uint32_t k);

// A path with edge weights X_1..X_k and total w is C-legal when every prefix
// and every suffix of i edges satisfies |k/w * sum - i| <= C sqrt(2 i llb(i))
// with llb = loglog_bar.  Margins store deviation minus allowance, so legal
// means every margin <= 0.  Deviations are computed as |k*S_i - i*w| / w,
// which cancels exactly at i = k and for unit-weight edges.
struct LegalityReport {
  std::vector<double> edge_weights;
  double C = 0.0;
  std::vector<double> forward_margins;   // prefix of i edges, i = 1..k
  std::vector<double> backward_margins;  // suffix of i edges, i = 1..k
  bool legal = false;
};
LegalityReport is_legal(const std::vector<double>& edge_weights, double C);

// Smallest C at which the path would be legal: the largest deviation-to-
// allowance ratio over both directions.  Zero for perfectly linear paths.
double minimal_legal_C(const std::vector<double>& edge_weights);

// Interior subpath deviation between vertex positions i < j (1-based) and
// the allowance 2C sqrt(2 s llb(s)) that legality implies for it.
struct SubpathDeviation {
  double deviation = 0.0;
  double bound = 0.0;
  EndDistances ends;
};
SubpathDeviation subpath_deviation(const std::vector<double>& edge_weights,
                                   std::uint32_t i, std::uint32_t j, double C);

struct BonsaiViolation {
  std::uint32_t vertex_index = 0;  // 0-based position along the path
  std::uint64_t level = 0;         // the level ell being checked
  std::uint32_t observed_height = 0;
  double allowed_height = 0.0;
};

struct BonsaiOptions {
  // Factor taking oracle weight units to the scale the level budgets live in
  // (pass n when the oracle holds mean-1 weights and budgets are mean-n).
  double weight_scale = 1.0;
  // When set, the height allowance divides by (1 - eps) log n instead of the
  // path weight.
  std::optional<double> eps;
  bool stop_at_first = false;
};

struct BonsaiReport {
  std::vector<Vertex> path;
  double C = 0.0;
  std::vector<BonsaiViolation> violations;
  bool bonsai = false;
  std::uint64_t ell_max_used = 0;   // levels beyond this allow height >= n
  double final_allowance = 0.0;     // allowance at ell_max_used
};

// A path is C-bonsai when, in the graph with the path's own edges resampled,
// the tree grown from each path vertex to weight budget
// ell + 2C sqrt(500 ell llb(ell)) has height strictly below
// (9k / (10 w)) * ell, for every integer level ell from max(ceil(m/40), 1)
// upward; w is the path weight on the same scale as the budgets.  Levels
// with allowance >= n are vacuous (no tree on n vertices is that tall), so
// checking stops at ell_max.  One tree per vertex answers every level: the
// settle order is sorted by distance, so height at any budget is a prefix
// maximum of depths.
template <EdgeWeightSource S>
BonsaiReport is_bonsai(std::span<const Vertex> path_vertices, double path_weight,
                       double C, std::uint32_t n, const S& resampled_graph,
                       const BonsaiOptions& opt = {}) {
  if (path_vertices.size() < 2)
    throw std::invalid_argument("is_bonsai: path needs at least one edge");
  if (!(C >= 0.0)) throw std::invalid_argument("is_bonsai: C must be >= 0");
  if (!(opt.weight_scale > 0.0))
    throw std::invalid_argument("is_bonsai: weight_scale must be positive");
  const auto k = static_cast<std::uint32_t>(path_vertices.size() - 1);
  const double w_scaled = opt.weight_scale * path_weight;
  double denom = w_scaled;
  if (opt.eps) {
    if (!(*opt.eps > 0.0 && *opt.eps < 1.0))
      throw std::invalid_argument("is_bonsai: eps must lie in (0, 1)");
    denom = (1.0 - *opt.eps) * std::log(static_cast<double>(n));
  }
  if (!(denom > 0.0))
    throw std::invalid_argument("is_bonsai: nonpositive weight normalization");

  BonsaiReport report;
  report.path.assign(path_vertices.begin(), path_vertices.end());
  report.C = C;

  const double rate = 9.0 * static_cast<double>(k) / (10.0 * denom);
  std::uint64_t ell_max =
      std::max<std::uint64_t>(1, static_cast<std::uint64_t>(
                                     std::ceil(static_cast<double>(n) / rate)));
  while (rate * static_cast<double>(ell_max) < static_cast<double>(n)) ++ell_max;
  report.ell_max_used = ell_max;
  report.final_allowance = rate * static_cast<double>(ell_max);

  const auto budget_at = [C, scale = opt.weight_scale](std::uint64_t ell) {
    const double e = static_cast<double>(ell);
    return (e + 2.0 * C * std::sqrt(500.0 * e * loglog_bar(e))) / scale;
  };

  ShortestPathTree tree;
  DijkstraWorkspace ws;
  std::vector<double> settle_dist;
  std::vector<std::uint32_t> prefix_height;
  for (std::uint32_t idx = 0; idx <= k && !(opt.stop_at_first && !report.violations.empty());
       ++idx) {
    const std::uint32_t m = std::min(idx, k - idx);
    const std::uint64_t ell_lo = std::max<std::uint64_t>(1, (m + 39) / 40);
    if (ell_lo > ell_max) continue;

    detail::dijkstra_into(tree, ws, n, path_vertices[idx], resampled_graph,
                          DijkstraOptions{.budget = budget_at(ell_max)});
    settle_dist.clear();
    prefix_height.clear();
    std::uint32_t running = 0;
    for (Vertex v : tree.settle_order) {
      settle_dist.push_back(tree.dist[v]);
      running = std::max(running, tree.depth[v]);
      prefix_height.push_back(running);
    }
    const bool complete = tree.size() == n;
    const std::uint32_t full_height = running;

    for (std::uint64_t ell = ell_lo; ell <= ell_max; ++ell) {
      const double allowed = rate * static_cast<double>(ell);
      if (complete && allowed > static_cast<double>(full_height)) break;
      const double b = budget_at(ell);
      const auto it =
          std::upper_bound(settle_dist.begin(), settle_dist.end(), b);
      const std::uint32_t height =
          it == settle_dist.begin()
              ? 0
              : prefix_height[static_cast<std::size_t>(it - settle_dist.begin()) - 1];
      if (!(static_cast<double>(height) < allowed)) {
        report.violations.push_back({idx, ell, height, allowed});
        if (opt.stop_at_first) break;
      }
    }
  }
  report.bonsai = report.violations.empty();
  return report;
}

// Convenience overload building the resampled graph from two weight layers.
inline BonsaiReport is_bonsai(std::span<const Vertex> path_vertices,
                              double path_weight, double C, std::uint32_t n,
                              const WeightOracle& base, const WeightOracle& alt,
                              const BonsaiOptions& opt = {}) {
  RerouteOracle graph(base, alt, path_vertices);
  return is_bonsai(path_vertices, path_weight, C, n, graph, opt);
}

// True when the shared edge set of two paths is a single nonempty block.
bool intersects_once(const VertexPath& p, const VertexPath& q);

// Search all equal-length once-intersecting rivals of a path for one that is
// at least as light.  Returns the first such rival, or nothing when the path
// beats them all (i.e. it is a local optimum).  Exhaustive: guarded to n <= 9.
std::optional<PathRecord> lighter_once_intersecting(std::uint32_t n,
                                                    const VertexPath& path,
                                                    const WeightOracle& oracle);

bool is_local_optimum(std::uint32_t n, const VertexPath& path,
                      const WeightOracle& oracle);

struct KeyLemmaCounterexample {
  std::uint32_t trial = 0;
  std::uint64_t seed = 0;    // trial seed, for standalone reproduction
  std::uint32_t k = 0;
  VertexPath path;
  VertexPath rival;
  double path_weight = 0.0;  // mean-n scale, like the k-window it must sit in
  double rival_weight = 0.0;
};

struct KeyLemmaStats {
  std::uint32_t n = 0;
  std::uint32_t trials = 0;
  double C = 0.0;
  // Funnel: paths inside the weight window, those also legal, those also
  // bonsai, and how many of the last group a lighter rival disproves.
  std::uint64_t window_paths = 0;
  std::uint64_t legal_paths = 0;
  std::uint64_t bonsai_paths = 0;
  std::vector<KeyLemmaCounterexample> counterexamples;
};

// Exhaustively test, over seeded weight draws on K_n, the claim that every
// path with w(P) <= k <= 4 w(P) (mean-n scale) that is both C-legal and
// C-bonsai is a local optimum.  Bonsai trees resample the path's own edges
// onto a second weight layer; rivals are priced on the base layer.  Guarded
// to n <= 8 (rival scans are exhaustive).
KeyLemmaStats verify_key_lemma(std::uint32_t n, std::uint32_t trials, double C,
                               std::uint64_t master_seed);

// Smallest C on a geometric grid making at least a 1-delta fraction of
// k-edge i.i.d. exponential-weight paths C-legal, over seeded samples.
struct Calibration {
  double C = 0.0;
  double delta = 0.0;
  std::uint32_t k = 0;
  std::uint32_t samples = 0;
  std::uint32_t legal_at_C = 0;
  double legal_fraction = 0.0;
  double failure_upper95 = 0.0;  // one-sided Wilson bound on the failure rate
};
Calibration calibrate_C(double delta, std::uint32_t k, std::uint32_t samples,
                        std::uint64_t seed);

}  // namespace fpp
