#pragma once

#include <cmath>
#include <concepts>
#include <cstdint>
#include <stdexcept>

// Pure counter-based edge weight generation for complete graphs.  Every draw is
// a function of (seed, layer, edge), so weights never need to be materialized:
// the oracle can be queried lazily from any thread in any order and always
// returns the same value.  An n = 10^4 instance has ~5*10^7 edges; storing them
// would cost ~400 MB, querying them costs nothing.

namespace fpp {

using Vertex = std::uint32_t;

inline constexpr Vertex kNoVertex = 0xffffffffu;
inline constexpr std::uint64_t kGolden64 = 0x9e3779b97f4a7c15ull;

// Finalizer of splitmix64 (Stafford's mix13 variant).  Bijective on 64-bit
// words with full avalanche, which is all we need from a keyed generator here.
constexpr std::uint64_t mix64(std::uint64_t x) noexcept {
  x ^= x >> 30;
  x *= 0xbf58476d1ce4e5b9ull;
  x ^= x >> 27;
  x *= 0x94d049bb133111ebull;
  x ^= x >> 31;
  return x;
}

// Map a hash to a uniform double strictly inside (0,1): take the top 52 bits
// and center the bin.  With 52 bits the +0.5 is always exact, so the extremes
// are 2^-53 and 1 - 2^-53 and -log1p(-u) is always finite and positive.  (53
// bits would round the topmost bin center up to exactly 1.0.)
constexpr double unit_from_hash(std::uint64_t h) noexcept {
  return (static_cast<double>(h >> 12) + 0.5) * 0x1.0p-52;
}

// Inverse CDF of the mean-1 exponential.  -log1p(-u) is the numerically stable
// form of -ln(1-u); it maps 0 -> 0 and is exact to one ulp.
inline double exp_from_unit(double u) { return -std::log1p(-u); }

// Undirected edge of K_n, always stored with u < v so that (a,b) and (b,a)
// name the same random variable.
struct EdgeKey {
  Vertex u;
  Vertex v;

  EdgeKey(Vertex a, Vertex b) : u(a < b ? a : b), v(a < b ? b : a) {
    if (a == b) throw std::invalid_argument("EdgeKey: self-loop (u == v)");
  }

  std::uint64_t packed() const noexcept {
    return (static_cast<std::uint64_t>(u) << 32) | v;
  }
  bool operator==(const EdgeKey&) const = default;
};

inline std::uint64_t pack_edge(Vertex a, Vertex b) noexcept {
  return a < b ? (static_cast<std::uint64_t>(a) << 32) | b
               : (static_cast<std::uint64_t>(b) << 32) | a;
}

enum class Distribution : std::uint8_t {
  ExponentialMean1,    // internal scale; multiply by n to reach mean-n weights
  Uniform01,           // the raw uniform itself
  CoupledExponential,  // exponential sharing its uniform with Uniform01
};

struct TrialSeed {
  std::uint64_t value = 0;
};

// Derive the seed for one trial of an experiment.  Injective in trial_index
// for a fixed master seed (odd multiplier, then a bijective mix), so distinct
// trials never share a stream.
constexpr TrialSeed derive_trial_seed(std::uint64_t master_seed,
                                      std::uint64_t trial_index) noexcept {
  const std::uint64_t stream = mix64(master_seed + kGolden64);
  return TrialSeed{mix64(stream ^ (trial_index * 0xd1342543de82ef95ull + 0x2545f4914f6cdd1dull))};
}

// Multiplying a uniform by this keeps it a strict lower bound for
// -log1p(-u) even if log1p is off by an ulp, which makes the Dijkstra
// skip-filter in spt.cpp safe.
inline constexpr double kWeightFloorSafety = 0.999999999;

class WeightOracle {
 public:
  WeightOracle(std::uint64_t seed, std::uint32_t layer, Distribution dist)
      : seed_(seed),
        layer_(layer),
        dist_(dist),
        stream_(mix64(mix64(seed + kGolden64) ^
                      (static_cast<std::uint64_t>(layer) + 0x6a09e667f3bcc909ull))) {}

  std::uint64_t seed() const noexcept { return seed_; }
  std::uint32_t layer() const noexcept { return layer_; }
  Distribution distribution() const noexcept { return dist_; }

  // Uniform in (0,1), a pure function of (seed, layer, edge).
  double uniform_draw(EdgeKey e) const noexcept { return uniform(e.u, e.v); }

  double uniform(Vertex a, Vertex b) const noexcept {
    return unit_from_hash(mix64(stream_ ^ pack_edge(a, b)));
  }

  double edge_weight(EdgeKey e) const { return weight(e.u, e.v); }

  double weight(Vertex a, Vertex b) const {
    const double u = uniform(a, b);
    return dist_ == Distribution::Uniform01 ? u : exp_from_unit(u);
  }

  // Cheap lower bound: u <= -log1p(-u), and for Uniform01 the weight is u
  // itself, so the safety-scaled uniform under-estimates in every mode.
  double weight_floor(Vertex a, Vertex b) const noexcept {
    return kWeightFloorSafety * uniform(a, b);
  }

 private:
  std::uint64_t seed_;
  std::uint32_t layer_;
  Distribution dist_;
  std::uint64_t stream_;
};

// Anything Dijkstra can consume.
template <class O>
concept EdgeWeightSource = requires(const O& o, Vertex a, Vertex b) {
  { o.weight(a, b) } -> std::convertible_to<double>;
};

// Sources that also offer a cheap lower bound on the weight; the Dijkstra
// inner loop uses it to skip the expensive part of most relaxations.
template <class O>
concept FilteredWeightSource =
    EdgeWeightSource<O> && requires(const O& o, Vertex a, Vertex b) {
      { o.weight_floor(a, b) } -> std::convertible_to<double>;
    };

}  // namespace fpp
