#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "fpp/edge_weights.hpp"

// The exploration process behind a single-source tree, simulated directly.
// When the k-th vertex has been reached, the wait for the next one is
// exponential with rate k(n-k) (internal mean-1 edge scale) and the newcomer
// attaches to a uniformly chosen tree vertex; the attachment skeleton is a
// random recursive tree.  This reproduces tree sizes and heights at a fraction
// of Dijkstra's cost and is the reference the Dijkstra path is tested against.

namespace fpp {

// Sequential counter-based uniform stream; value i is a pure function of
// (seed, i), so a trial's draws are reproducible from its seed alone.
class UnitStream {
 public:
  explicit UnitStream(std::uint64_t seed) : stream_(mix64(seed + kGolden64)) {}

  double next() { return unit_from_hash(mix64(stream_ ^ counter_++)); }

 private:
  std::uint64_t stream_;
  std::uint64_t counter_ = 0;
};

struct GrowthTrace {
  std::uint32_t n = 0;
  std::vector<double> interarrival;   // tau_k, k = 1..n-1, at index k-1
  std::vector<Vertex> attach_to;      // parent of vertex k, uniform in {0..k-1}
  std::vector<double> arrival_time;   // t_k = tau_1 + ... + tau_k
};

// Draw order per step: interarrival first, then attachment.
GrowthTrace simulate_growth(std::uint32_t n, std::uint64_t seed);

// 1 + #{k : t_k <= t}; the root is present from time 0.
std::uint32_t size_at_time(const GrowthTrace& trace, double t);

struct HeightAndDepths {
  std::uint32_t height = 0;
  std::vector<std::uint32_t> depths;  // depth of vertex i (root = 0)
};

HeightAndDepths height_and_depths(const GrowthTrace& trace);

// Tree sizes at several times without materializing a trace: consumes the
// same stream prefix as simulate_growth and stops once the largest time has
// been crossed.  times must be sorted ascending; returns one size per time.
std::vector<std::uint32_t> sizes_at_times(std::uint32_t n, std::uint64_t seed,
                                          std::span<const double> times);

// Height of a random recursive tree with m vertices (attachment draws only).
std::uint32_t random_recursive_tree_height(std::uint32_t m, std::uint64_t seed);

// Exact root-degree law of a random recursive tree with m vertices, by the
// recurrence p_m(d) = p_{m-1}(d) (m-2)/(m-1) + p_{m-1}(d-1)/(m-1).
std::vector<double> rrt_root_degree_law(std::uint32_t m);

}  // namespace fpp
