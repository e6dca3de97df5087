#include "fpp/growth.hpp"

#include <algorithm>
#include <stdexcept>

namespace fpp {

namespace {

double draw_interarrival(UnitStream& stream, std::uint32_t k, std::uint32_t n) {
  const double rate = static_cast<double>(k) * static_cast<double>(n - k);
  return exp_from_unit(stream.next()) / rate;
}

Vertex draw_attachment(UnitStream& stream, std::uint32_t k) {
  const auto a = static_cast<Vertex>(stream.next() * static_cast<double>(k));
  return std::min(a, k - 1);  // guards the (never observed) u -> 1.0 edge
}

}  // namespace

GrowthTrace simulate_growth(std::uint32_t n, std::uint64_t seed) {
  if (n < 2) throw std::invalid_argument("simulate_growth: need n >= 2");
  GrowthTrace trace;
  trace.n = n;
  trace.interarrival.reserve(n - 1);
  trace.attach_to.reserve(n - 1);
  trace.arrival_time.reserve(n - 1);
  UnitStream stream(seed);
  double t = 0.0;
  for (std::uint32_t k = 1; k < n; ++k) {
    const double tau = draw_interarrival(stream, k, n);
    t += tau;
    trace.interarrival.push_back(tau);
    trace.attach_to.push_back(draw_attachment(stream, k));
    trace.arrival_time.push_back(t);
  }
  return trace;
}

std::uint32_t size_at_time(const GrowthTrace& trace, double t) {
  const auto it = std::upper_bound(trace.arrival_time.begin(),
                                   trace.arrival_time.end(), t);
  return 1 + static_cast<std::uint32_t>(it - trace.arrival_time.begin());
}

HeightAndDepths height_and_depths(const GrowthTrace& trace) {
  HeightAndDepths hd;
  hd.depths.assign(trace.n, 0);
  for (std::uint32_t k = 1; k < trace.n; ++k) {
    hd.depths[k] = hd.depths[trace.attach_to[k - 1]] + 1;
    hd.height = std::max(hd.height, hd.depths[k]);
  }
  return hd;
}

std::vector<std::uint32_t> sizes_at_times(std::uint32_t n, std::uint64_t seed,
                                          std::span<const double> times) {
  if (n < 2) throw std::invalid_argument("sizes_at_times: need n >= 2");
  if (!std::is_sorted(times.begin(), times.end()))
    throw std::invalid_argument("sizes_at_times: times must be sorted");
  std::vector<std::uint32_t> sizes(times.size(), n);
  if (times.empty()) return sizes;
  UnitStream stream(seed);
  double t = 0.0;
  std::size_t next = 0;
  for (std::uint32_t k = 1; k < n && next < times.size(); ++k) {
    t += draw_interarrival(stream, k, n);
    (void)draw_attachment(stream, k);  // keep the stream aligned with simulate_growth
    while (next < times.size() && times[next] < t) sizes[next++] = k;
  }
  return sizes;
}

std::uint32_t random_recursive_tree_height(std::uint32_t m, std::uint64_t seed) {
  if (m < 1) throw std::invalid_argument("random_recursive_tree_height: need m >= 1");
  UnitStream stream(seed);
  std::vector<std::uint32_t> depth(m, 0);
  std::uint32_t height = 0;
  for (std::uint32_t k = 1; k < m; ++k) {
    depth[k] = depth[draw_attachment(stream, k)] + 1;
    height = std::max(height, depth[k]);
  }
  return height;
}

std::vector<double> rrt_root_degree_law(std::uint32_t m) {
  if (m < 2) throw std::invalid_argument("rrt_root_degree_law: need m >= 2");
  // p[d] = P(root degree == d) for the tree with j vertices; start at j = 2.
  std::vector<double> p(m, 0.0);
  p[1] = 1.0;
  for (std::uint32_t j = 3; j <= m; ++j) {
    const double attach = 1.0 / static_cast<double>(j - 1);
    for (std::uint32_t d = j - 1; d >= 1; --d)
      p[d] = p[d] * (1.0 - attach) + p[d - 1] * attach;
  }
  return p;
}

}  // namespace fpp
