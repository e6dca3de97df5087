#include "fpp/predicates.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "fpp/growth.hpp"
#include "fpp/stats.hpp"

namespace fpp {
namespace {

double checked_total(const std::vector<double>& edge_weights, const char* who) {
  if (edge_weights.empty())
    throw std::invalid_argument(std::string(who) + ": path needs at least one edge");
  double w = 0.0;
  for (double x : edge_weights) {
    if (!(x >= 0.0))
      throw std::invalid_argument(std::string(who) + ": negative edge weight");
    w += x;
  }
  if (!(w > 0.0))
    throw std::invalid_argument(std::string(who) + ": zero-weight path");
  return w;
}

double legal_allowance(std::uint32_t i) {
  const double di = static_cast<double>(i);
  return std::sqrt(2.0 * di * loglog_bar(di));
}

VertexPath canonical(const VertexPath& path) {
  if (path.size() < 2 || path.front() < path.back()) return path;
  return VertexPath(path.rbegin(), path.rend());
}

void validate_simple_path(std::uint32_t n, const VertexPath& path, const char* who) {
  if (path.size() < 2)
    throw std::invalid_argument(std::string(who) + ": path needs at least one edge");
  std::uint32_t seen = 0;
  for (Vertex v : path) {
    if (v >= n) throw std::invalid_argument(std::string(who) + ": vertex out of range");
    const std::uint32_t bit = 1u << v;
    if (seen & bit)
      throw std::invalid_argument(std::string(who) + ": path revisits a vertex");
    seen |= bit;
  }
}

}  // namespace

EndDistances m_and_s(std::uint32_t i, std::uint32_t j, std::uint32_t k) {
  if (k < 1) throw std::invalid_argument("m_and_s: need k >= 1");
  if (!(1 <= i && i < j && j <= k + 1))
    throw std::invalid_argument("m_and_s: need 1 <= i < j <= k+1");
  EndDistances d;
  d.m_i = std::min(i - 1, k + 1 - i);
  d.m_j = std::min(j - 1, k + 1 - j);
  d.s = std::max(d.m_i, d.m_j);
  return d;
}

LegalityReport is_legal(const std::vector<double>& edge_weights, double C) {
  if (!(C >= 0.0)) throw std::invalid_argument("is_legal: C must be >= 0");
  const double w = checked_total(edge_weights, "is_legal");
  const auto k = static_cast<std::uint32_t>(edge_weights.size());
  const double dk = static_cast<double>(k);

  LegalityReport report;
  report.edge_weights = edge_weights;
  report.C = C;
  report.forward_margins.reserve(k);
  report.backward_margins.reserve(k);

  double fwd = 0.0;
  double bwd = 0.0;
  bool ok = true;
  for (std::uint32_t i = 1; i <= k; ++i) {
    const double di = static_cast<double>(i);
    const double allow = C * legal_allowance(i);
    fwd += edge_weights[i - 1];
    bwd += edge_weights[k - i];
    const double mf = std::fabs(dk * fwd - di * w) / w - allow;
    const double mb = std::fabs(dk * bwd - di * w) / w - allow;
    report.forward_margins.push_back(mf);
    report.backward_margins.push_back(mb);
    ok = ok && mf <= 0.0 && mb <= 0.0;
  }
  report.legal = ok;
  return report;
}

double minimal_legal_C(const std::vector<double>& edge_weights) {
  const double w = checked_total(edge_weights, "minimal_legal_C");
  const auto k = static_cast<std::uint32_t>(edge_weights.size());
  const double dk = static_cast<double>(k);
  double fwd = 0.0;
  double bwd = 0.0;
  double need = 0.0;
  for (std::uint32_t i = 1; i <= k; ++i) {
    const double di = static_cast<double>(i);
    const double allow = legal_allowance(i);
    fwd += edge_weights[i - 1];
    bwd += edge_weights[k - i];
    need = std::max(need, std::fabs(dk * fwd - di * w) / (w * allow));
    need = std::max(need, std::fabs(dk * bwd - di * w) / (w * allow));
  }
  return need;
}

SubpathDeviation subpath_deviation(const std::vector<double>& edge_weights,
                                   std::uint32_t i, std::uint32_t j, double C) {
  if (!(C >= 0.0)) throw std::invalid_argument("subpath_deviation: C must be >= 0");
  const double w = checked_total(edge_weights, "subpath_deviation");
  const auto k = static_cast<std::uint32_t>(edge_weights.size());

  SubpathDeviation out;
  out.ends = m_and_s(i, j, k);

  // Prefix sums with the same left-to-right accumulation as the total, so
  // the full-path case cancels exactly.
  double upto_j = 0.0;
  double upto_i = 0.0;
  for (std::uint32_t t = 0; t < j - 1; ++t) {
    upto_j += edge_weights[t];
    if (t + 1 == i - 1) upto_i = upto_j;
  }
  const double dk = static_cast<double>(k);
  const double span = static_cast<double>(j - i);
  out.deviation = std::fabs(dk * (upto_j - upto_i) - span * w) / w;
  const double s = static_cast<double>(out.ends.s);
  out.bound = 2.0 * C * std::sqrt(2.0 * s * loglog_bar(s));
  return out;
}

bool intersects_once(const VertexPath& p, const VertexPath& q) {
  const IntersectionProfile prof = intersection_profile(p, q);
  return prof.edges >= 1 && prof.blocks == 1;
}

std::optional<PathRecord> lighter_once_intersecting(std::uint32_t n,
                                                    const VertexPath& path,
                                                    const WeightOracle& oracle) {
  if (n > 9)
    throw std::invalid_argument("lighter_once_intersecting: guarded to n <= 9");
  validate_simple_path(n, path, "lighter_once_intersecting");
  const VertexPath p = canonical(path);
  const auto k = static_cast<std::uint32_t>(p.size() - 1);
  const double wp = path_weight(oracle, p);
  for (const VertexPath& q : enumerate_paths(n, k)) {
    if (q == p || !intersects_once(p, q)) continue;
    const double wq = path_weight(oracle, q);
    if (wq <= wp) return PathRecord{q, wq};
  }
  return std::nullopt;
}

bool is_local_optimum(std::uint32_t n, const VertexPath& path,
                      const WeightOracle& oracle) {
  return !lighter_once_intersecting(n, path, oracle).has_value();
}

KeyLemmaStats verify_key_lemma(std::uint32_t n, std::uint32_t trials, double C,
                               std::uint64_t master_seed) {
  if (n < 3 || n > 8)
    throw std::invalid_argument("verify_key_lemma: guarded to 3 <= n <= 8");
  if (trials < 1) throw std::invalid_argument("verify_key_lemma: need trials >= 1");
  if (!(C >= 0.0)) throw std::invalid_argument("verify_key_lemma: C must be >= 0");

  KeyLemmaStats stats;
  stats.n = n;
  stats.trials = trials;
  stats.C = C;

  // Path structure is weight-free; enumerate once per length.
  std::vector<std::vector<VertexPath>> paths_by_k(n);
  for (std::uint32_t k = 1; k <= n - 1; ++k) paths_by_k[k] = enumerate_paths(n, k);

  const double dn = static_cast<double>(n);
  std::vector<double> edge_w;
  for (std::uint32_t t = 0; t < trials; ++t) {
    const std::uint64_t seed = derive_trial_seed(master_seed, t).value;
    const WeightOracle base(seed, 0, Distribution::ExponentialMean1);
    const WeightOracle alt(seed, 1, Distribution::ExponentialMean1);
    for (std::uint32_t k = 1; k <= n - 1; ++k) {
      const double dk = static_cast<double>(k);
      for (const VertexPath& p : paths_by_k[k]) {
        edge_w.clear();
        double w = 0.0;
        for (std::uint32_t e = 0; e < k; ++e) {
          edge_w.push_back(base.weight(p[e], p[e + 1]));
          w += edge_w.back();
        }
        const double w_scaled = dn * w;
        if (!(w_scaled <= dk && dk <= 4.0 * w_scaled)) continue;
        ++stats.window_paths;
        if (!is_legal(edge_w, C).legal) continue;
        ++stats.legal_paths;
        BonsaiOptions bopt;
        bopt.weight_scale = dn;
        bopt.stop_at_first = true;
        if (!is_bonsai(p, w, C, n, base, alt, bopt).bonsai) continue;
        ++stats.bonsai_paths;
        for (const VertexPath& q : paths_by_k[k]) {
          if (q == p || !intersects_once(p, q)) continue;
          const double wq = path_weight(base, q);
          if (wq <= w) {
            stats.counterexamples.push_back({t, seed, k, p, q, dn * w, dn * wq});
            break;
          }
        }
      }
    }
  }
  return stats;
}

Calibration calibrate_C(double delta, std::uint32_t k, std::uint32_t samples,
                        std::uint64_t seed) {
  if (!(delta > 0.0 && delta <= 1.0))
    throw std::invalid_argument("calibrate_C: delta must lie in (0, 1]");
  if (k < 1) throw std::invalid_argument("calibrate_C: need k >= 1");
  if (samples < 1) throw std::invalid_argument("calibrate_C: need samples >= 1");

  std::vector<double> minimal(samples);
  std::vector<double> edge_w(k);
  for (std::uint32_t t = 0; t < samples; ++t) {
    UnitStream stream(derive_trial_seed(seed, t).value);
    for (std::uint32_t e = 0; e < k; ++e) edge_w[e] = exp_from_unit(stream.next());
    minimal[t] = minimal_legal_C(edge_w);
  }

  // Smallest C covering the (1 - delta) quantile, snapped up to the grid
  // (1/16) * 2^{m/8}.
  const auto quota = static_cast<std::uint32_t>(
      std::ceil((1.0 - delta) * static_cast<double>(samples)));
  double c = 0.0;
  if (quota > 0) {
    std::vector<double> order = minimal;
    std::nth_element(order.begin(), order.begin() + (quota - 1), order.end());
    const double need = order[quota - 1];
    if (need > 0.0) {
      const double kBase = 1.0 / 16.0;
      const double m = std::ceil(8.0 * std::log2(need / kBase));
      c = kBase * std::exp2(m / 8.0);
      while (c < need) c *= std::exp2(1.0 / 8.0);
    }
  }

  Calibration cal;
  cal.C = c;
  cal.delta = delta;
  cal.k = k;
  cal.samples = samples;
  for (double need : minimal)
    if (need <= c) ++cal.legal_at_C;
  cal.legal_fraction = static_cast<double>(cal.legal_at_C) / samples;
  cal.failure_upper95 = wilson_upper(samples - cal.legal_at_C, samples);
  return cal;
}

}  // namespace fpp
