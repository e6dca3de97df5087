#pragma once

#include <cstdint>
#include <vector>

#include "fpp/edge_weights.hpp"

// Exhaustive path combinatorics on small complete graphs: enumerate
// self-avoiding k-edge paths, classify pairs by how they overlap, and compute
// the closed-form pair-count bounds those empirical tables are checked
// against.  Everything here is exact integer counting; sizes are guarded so a
// forgotten parameter cannot silently allocate gigabytes.

namespace fpp {

// A self-avoiding path as its vertex sequence, stored in canonical
// orientation (first vertex < last vertex), so each undirected path appears
// exactly once.
using VertexPath = std::vector<Vertex>;

// (n)_{k+1} / 2: falling factorial pairs of orientations collapse.
std::uint64_t count_paths_exact(std::uint32_t n, std::uint32_t k);

// All canonical k-edge paths of K_n, lexicographically ordered.  Guarded to
// n <= 10; the count grows like n^{k+1}.
std::vector<VertexPath> enumerate_paths(std::uint32_t n, std::uint32_t k);

struct IntersectionProfile {
  std::uint32_t edges = 0;   // |E(P) cap E(Q)|
  std::uint32_t blocks = 0;  // connected components of the shared edge set
};

// Shared edges form a disjoint union of subpaths of P; blocks counts those
// maximal runs.  Isolated shared vertices do not contribute.
IntersectionProfile intersection_profile(const VertexPath& p, const VertexPath& q);

struct PairCountTable {
  std::uint32_t n = 0;
  std::uint32_t k = 0;
  std::uint64_t path_count = 0;
  // pairs[i][j]: ordered pairs of distinct canonical paths sharing exactly i
  // edges in j blocks; the i = 0 class sits at pairs[0][0].
  std::vector<std::vector<std::uint64_t>> pairs;

  std::uint64_t total_ordered_distinct() const;
  // Ordered distinct pairs sharing exactly i edges, any block count.
  std::uint64_t sharing_edges(std::uint32_t i) const;
};

// Classify every ordered pair of distinct canonical paths.  Quadratic in the
// number of paths; guarded to n <= 10.
PairCountTable count_pairs(std::uint32_t n, std::uint32_t k);

// Product of the two stage counts for building such a pair (choices of P
// with distinguished shared edges, times choices of Q through them):
//   (n)_{k+1} C(i+j,j) C(k-i+1,j)  *  j! (n-i-j)_{k+1-i-j} C(k-i-j+1,j).
// Zero whenever a binomial is out of range.  The Q-side interleaving factor
// assumes consecutive blocks along Q are separated by a free vertex, so the
// product vanishes on block-adjacent shapes (k < i + 2j - 1) even though
// such pairs exist; it dominates the table only where it is positive.
double counting_formula_upper(double n, std::int64_t k, std::int64_t i, std::int64_t j);

// Sum of P(both paths weigh <= s) over ordered pairs of distinct paths
// sharing at least one edge: the correction term of the second-moment
// argument.  Exact: overlap class counts are recovered from per-edge-subset
// containment counts (linear in paths * 2^k, no pair enumeration), and the
// joint weight depends on the overlap only through its edge count.
// Guarded by that workload; reaches n = 20 at k = 3.
double delta_exact_small(std::uint32_t n, std::uint32_t k, double s);

}  // namespace fpp
