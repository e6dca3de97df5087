#include "fpp/combinat.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <unordered_map>

#include "fpp/special_functions.hpp"
#include "fpp/theory.hpp"

namespace fpp {

namespace {

void require_valid_nk(std::uint32_t n, std::uint32_t k, const char* who) {
  if (n < 2 || k < 1 || k >= n)
    throw std::invalid_argument(std::string(who) + ": need 2 <= k+1 <= n");
  if (n > 30)  // vertices live in a 32-bit visited mask
    throw std::invalid_argument(std::string(who) + ": n too large to enumerate");
}

void extend_path(std::uint32_t n, std::uint32_t k, std::vector<Vertex>& prefix,
                 std::uint32_t used_mask, std::vector<VertexPath>& out) {
  if (prefix.size() == k + 1) {
    if (prefix.front() < prefix.back()) out.push_back(prefix);
    return;
  }
  for (Vertex v = 0; v < n; ++v) {
    if (used_mask & (1u << v)) continue;
    prefix.push_back(v);
    extend_path(n, k, prefix, used_mask | (1u << v), out);
    prefix.pop_back();
  }
}

// C(a, b) as a double; 0 outside the triangle.  Arguments stay tiny here.
double choose(std::int64_t a, std::int64_t b) {
  if (b < 0 || a < 0 || b > a) return 0.0;
  double r = 1.0;
  for (std::int64_t t = 0; t < b; ++t)
    r *= static_cast<double>(a - t) / static_cast<double>(t + 1);
  return r;
}

double falling(double n, std::int64_t k) {
  double r = 1.0;
  for (std::int64_t t = 0; t < k; ++t) r *= n - static_cast<double>(t);
  return r;
}

// Hash for a sorted vector of packed edges.
struct EdgeSetHash {
  std::size_t operator()(const std::vector<std::uint64_t>& edges) const noexcept {
    std::uint64_t h = 0x243f6a8885a308d3ull;
    for (std::uint64_t e : edges) h = mix64(h ^ e);
    return static_cast<std::size_t>(h);
  }
};

// Enumeration core shared by the guarded public entry points.
std::vector<VertexPath> enumerate_all(std::uint32_t n, std::uint32_t k) {
  std::vector<VertexPath> out;
  out.reserve(count_paths_exact(n, k));
  std::vector<Vertex> prefix;
  prefix.reserve(k + 1);
  for (Vertex v = 0; v < n; ++v) {
    prefix.push_back(v);
    extend_path(n, k, prefix, 1u << v, out);
    prefix.pop_back();
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

std::uint64_t count_paths_exact(std::uint32_t n, std::uint32_t k) {
  if (k < 1 || k >= n)
    throw std::invalid_argument("count_paths_exact: need 1 <= k < n");
  std::uint64_t r = 1;
  for (std::uint32_t t = 0; t <= k; ++t) r *= n - t;
  return r / 2;
}

std::vector<VertexPath> enumerate_paths(std::uint32_t n, std::uint32_t k) {
  require_valid_nk(n, k, "enumerate_paths");
  if (n > 10)
    throw std::invalid_argument("enumerate_paths: capped at n = 10");
  return enumerate_all(n, k);
}

IntersectionProfile intersection_profile(const VertexPath& p, const VertexPath& q) {
  if (p.size() < 2 || q.size() < 2)
    throw std::invalid_argument("intersection_profile: paths need >= 1 edge");
  std::vector<std::uint64_t> q_edges;
  q_edges.reserve(q.size() - 1);
  for (std::size_t t = 0; t + 1 < q.size(); ++t)
    q_edges.push_back(pack_edge(q[t], q[t + 1]));
  IntersectionProfile prof;
  bool in_run = false;
  for (std::size_t t = 0; t + 1 < p.size(); ++t) {
    const std::uint64_t e = pack_edge(p[t], p[t + 1]);
    const bool shared =
        std::find(q_edges.begin(), q_edges.end(), e) != q_edges.end();
    if (shared) {
      ++prof.edges;
      if (!in_run) ++prof.blocks;  // a new maximal run of shared edges starts
    }
    in_run = shared;
  }
  return prof;
}

std::uint64_t PairCountTable::total_ordered_distinct() const {
  std::uint64_t total = 0;
  for (const auto& row : pairs)
    for (std::uint64_t c : row) total += c;
  return total;
}

std::uint64_t PairCountTable::sharing_edges(std::uint32_t i) const {
  if (i >= pairs.size()) return 0;
  std::uint64_t total = 0;
  for (std::uint64_t c : pairs[i]) total += c;
  return total;
}

PairCountTable count_pairs(std::uint32_t n, std::uint32_t k) {
  const auto paths = enumerate_paths(n, k);
  PairCountTable table;
  table.n = n;
  table.k = k;
  table.path_count = paths.size();
  // j <= i <= k blocks; j <= (k+1)/2 really, but a rectangular table is simpler.
  table.pairs.assign(k + 1, std::vector<std::uint64_t>(k + 1, 0));
  for (std::size_t a = 0; a < paths.size(); ++a)
    for (std::size_t b = 0; b < paths.size(); ++b) {
      if (a == b) continue;
      const auto prof = intersection_profile(paths[a], paths[b]);
      ++table.pairs[prof.edges][prof.blocks];
    }
  return table;
}

double counting_formula_upper(double n, std::int64_t k, std::int64_t i,
                              std::int64_t j) {
  if (!(n >= 2.0) || k < 1)
    throw std::invalid_argument("counting_formula_upper: need n >= 2, k >= 1");
  if (i < 0 || j < 0) throw std::invalid_argument("counting_formula_upper: bad overlap");
  if (k + 1 - i - j < 0) return 0.0;
  const double place_p = choose(i + j, j) * choose(k - i + 1, j);
  const double place_q = choose(k - i - j + 1, j);
  if (place_p == 0.0 || place_q == 0.0) return 0.0;
  double jfact = 1.0;
  for (std::int64_t t = 2; t <= j; ++t) jfact *= static_cast<double>(t);
  return falling(n, k + 1) * place_p * jfact *
         falling(n - static_cast<double>(i + j), k + 1 - i - j) * place_q;
}

double delta_exact_small(std::uint32_t n, std::uint32_t k, double s) {
  require_valid_nk(n, k, "delta_exact_small");
  if (!(s >= 0.0)) throw std::invalid_argument("delta_exact_small: s must be nonnegative");
  if (k > 20) throw std::invalid_argument("delta_exact_small: k too large");
  const std::uint64_t workload = count_paths_exact(n, k) << k;
  if (workload > (1ull << 23))
    throw std::invalid_argument("delta_exact_small: n, k workload too large");

  const auto paths = enumerate_all(n, k);
  // subset_count[S] = number of paths whose edge set contains S; grouped by
  // |S| below.  Each unordered pair with t shared edges contributes C(t, m)
  // to the m-edge layer, which is what the inversion undoes.
  std::unordered_map<std::vector<std::uint64_t>, std::uint32_t, EdgeSetHash>
      subset_count;
  std::vector<std::uint64_t> edges(k), subset;
  for (const auto& path : paths) {
    for (std::uint32_t t = 0; t < k; ++t)
      edges[t] = pack_edge(path[t], path[t + 1]);
    std::sort(edges.begin(), edges.end());
    for (std::uint32_t mask = 1; mask < (1u << k); ++mask) {
      subset.clear();
      for (std::uint32_t t = 0; t < k; ++t)
        if (mask & (1u << t)) subset.push_back(edges[t]);
      ++subset_count[subset];
    }
  }
  // a[m] = sum over m-edge sets of (containment count)^2
  //      = sum over ordered path pairs of C(shared, m).
  std::vector<double> a(k + 1, 0.0);
  for (const auto& [set, count] : subset_count)
    a[set.size()] += static_cast<double>(count) * static_cast<double>(count);
  // Binomial inversion recovers exact-overlap pair counts from a[].
  std::vector<double> exact(k + 1, 0.0);
  for (std::uint32_t t = 1; t <= k; ++t) {
    double acc = 0.0;
    for (std::uint32_t m = t; m <= k; ++m) {
      const double signed_c = ((m - t) % 2 == 0 ? 1.0 : -1.0) * choose(m, t);
      acc += signed_c * a[m];
    }
    exact[t] = acc;
  }
  exact[k] -= static_cast<double>(paths.size());  // drop the diagonal pairs

  double delta = 0.0;
  for (std::uint32_t t = 1; t <= k; ++t) {
    if (exact[t] <= 0.0) continue;
    const double joint =
        t == k ? gamma_cdf(static_cast<double>(k), s)
               : joint_weight_exact(static_cast<std::int64_t>(k),
                                    static_cast<std::int64_t>(t), s);
    delta += exact[t] * joint;
  }
  return delta;
}

}  // namespace fpp
