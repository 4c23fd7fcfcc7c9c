#pragma once

#include <utility>
#include <vector>

#include "msc/graph.hpp"

namespace msc {

/// Min Stable Cut instance with separate cut weights (on the graph) and
/// per-endpoint stability weights: s(uv,v) is how much edge uv contributes
/// to v's stability. The plain problem is the special case where s mirrors
/// the cut weight on both endpoints.
struct ExtendedInstance {
  WeightedGraph graph;
  // Aligned with graph.edges(): first = s at edge.u, second = s at edge.v.
  std::vector<std::pair<Int, Int>> s;

  const Int& s_at(int e, int v) const {
    const Edge& ed = graph.edge(e);
    if (v == ed.u) return s[e].first;
    if (v == ed.v) return s[e].second;
    throw InputError("vertex is not an endpoint of the edge");
  }

  Int& s_at(int e, int v) {
    const Edge& ed = graph.edge(e);
    if (v == ed.u) return s[e].first;
    if (v == ed.v) return s[e].second;
    throw InputError("vertex is not an endpoint of the edge");
  }

  /// d_s(v): total stability weight incident on v.
  Int stability_degree(int v) const {
    Int d = 0;
    for (int e : graph.incident(v)) d += s_at(e, v);
    return d;
  }

  /// S(v): largest stability weight incident on v.
  Int max_s_at(int v) const {
    Int m = 0;
    for (int e : graph.incident(v)) m = std::max(m, s_at(e, v));
    return m;
  }

  Int max_s() const {
    Int m = 0;
    for (const auto& [a, b] : s) m = std::max({m, a, b});
    return m;
  }

  void check() const {
    if (s.size() != static_cast<std::size_t>(graph.edge_count()))
      throw InputError("stability weights do not cover all edges");
    for (const auto& [a, b] : s)
      if (a < 0 || b < 0) throw InputError("negative stability weight");
  }
};

inline ExtendedInstance extend_from_plain(const WeightedGraph& g) {
  ExtendedInstance ext;
  ext.graph = g;
  ext.s.reserve(g.edge_count());
  for (const Edge& e : g.edges()) ext.s.emplace_back(e.weight, e.weight);
  return ext;
}

/// A vertex is rho-stable when its crossing stability weight is at least
/// d_s(v) / (2 rho). Vertices with d_s(v) = 0 are unconditionally stable.
inline bool is_rho_stable(const ExtendedInstance& ext, const Cut& c, const Rational& rho) {
  if (rho < 1) throw InputError("rho must be at least 1");
  check_cut(ext.graph, c);
  for (int v = 0; v < ext.graph.vertex_count(); ++v) {
    Int crossing = 0, ds = 0;
    for (int e : ext.graph.incident(v)) {
      const Edge& ed = ext.graph.edge(e);
      ds += ext.s_at(e, v);
      if (c[ed.u] != c[ed.v]) crossing += ext.s_at(e, v);
    }
    if (Rational(2) * rho * crossing < Rational(ds)) return false;
  }
  return true;
}

/// Rescales stability weights so the largest value is at most n^2:
/// s'(uv,v) = floor(n^2 * s(uv,v) / S(v)). Cut weights are unchanged.
/// Vertices with all incident s = 0 keep s' = 0 and stay trivially stable.
inline ExtendedInstance rescale_stability(const ExtendedInstance& ext) {
  ext.check();
  ExtendedInstance out = ext;
  Int n2 = Int(ext.graph.vertex_count()) * ext.graph.vertex_count();
  for (int v = 0; v < ext.graph.vertex_count(); ++v) {
    Int sv = ext.max_s_at(v);
    for (int e : ext.graph.incident(v))
      out.s_at(e, v) = sv == 0 ? Int(0) : Int(n2 * ext.s_at(e, v) / sv);
  }
  return out;
}

}  // namespace msc
