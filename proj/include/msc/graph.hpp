#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <boost/rational.hpp>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace msc {

using Int = boost::multiprecision::cpp_int;
using Rational = boost::rational<Int>;

struct InputError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct ResourceError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Edge {
  int u = 0;
  int v = 0;
  Int weight = 1;
};

/// Simple undirected graph with positive integer edge weights.
/// Parallel edges are merged by summing weights; self-loops are rejected.
class WeightedGraph {
 public:
  WeightedGraph() = default;
  explicit WeightedGraph(int vertex_count) : n_(vertex_count) {
    if (vertex_count < 0) throw InputError("negative vertex count");
    adj_.resize(vertex_count);
  }

  int vertex_count() const { return n_; }
  int edge_count() const { return static_cast<int>(edges_.size()); }

  void add_edge(int u, int v, Int w = 1) {
    check_vertex(u);
    check_vertex(v);
    if (u == v) throw InputError("self-loop on vertex " + std::to_string(u));
    if (w <= 0) throw InputError("nonpositive edge weight");
    if (u > v) std::swap(u, v);
    auto it = edge_index_.find({u, v});
    if (it != edge_index_.end()) {
      edges_[it->second].weight += w;  // merge parallel edges
      return;
    }
    edge_index_[{u, v}] = edges_.size();
    adj_[u].push_back(static_cast<int>(edges_.size()));
    adj_[v].push_back(static_cast<int>(edges_.size()));
    edges_.push_back(Edge{u, v, std::move(w)});
  }

  const std::vector<Edge>& edges() const { return edges_; }
  const Edge& edge(int e) const { return edges_.at(e); }

  /// Edge ids incident on v.
  const std::vector<int>& incident(int v) const {
    check_vertex(v);
    return adj_[v];
  }

  std::vector<int> neighbors(int v) const {
    check_vertex(v);
    std::vector<int> out;
    out.reserve(adj_[v].size());
    for (int e : adj_[v]) out.push_back(other_endpoint(e, v));
    return out;
  }

  int other_endpoint(int e, int v) const {
    const Edge& ed = edges_.at(e);
    return ed.u == v ? ed.v : ed.u;
  }

  int degree(int v) const { return static_cast<int>(incident(v).size()); }

  int max_degree() const {
    int d = 0;
    for (int v = 0; v < n_; ++v) d = std::max(d, degree(v));
    return d;
  }

  Int weighted_degree(int v) const {
    Int d = 0;
    for (int e : incident(v)) d += edges_[e].weight;
    return d;
  }

  Int total_weight() const {
    Int t = 0;
    for (const Edge& e : edges_) t += e.weight;
    return t;
  }

  Int max_weight() const {
    Int w = 0;
    for (const Edge& e : edges_) w = std::max(w, e.weight);
    return w;
  }

  bool unit_weights() const {
    for (const Edge& e : edges_)
      if (e.weight != 1) return false;
    return true;
  }

  bool has_edge(int u, int v) const {
    if (u > v) std::swap(u, v);
    return edge_index_.count({u, v}) > 0;
  }

  void check_vertex(int v) const {
    if (v < 0 || v >= n_) throw InputError("invalid vertex id " + std::to_string(v));
  }

 private:
  int n_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::vector<int>> adj_;
  std::map<std::pair<int, int>, std::size_t> edge_index_;
};

/// Total assignment of vertices to side 0 or side 1.
using Cut = std::vector<std::uint8_t>;

struct VertexStability {
  Int weighted_degree;
  Int cut_incident_weight;
  bool stable;  // 2 * cut_incident_weight >= weighted_degree
};

struct StabilityReport {
  std::vector<VertexStability> per_vertex;
  Int cut_weight;
  bool stable;
};

inline void check_cut(const WeightedGraph& g, const Cut& c) {
  if (static_cast<int>(c.size()) != g.vertex_count())
    throw InputError("cut assignment does not cover all vertices");
}

inline Int weighted_degree(const WeightedGraph& g, int v) { return g.weighted_degree(v); }

inline StabilityReport evaluate_cut(const WeightedGraph& g, const Cut& c) {
  check_cut(g, c);
  StabilityReport r;
  r.per_vertex.resize(g.vertex_count());
  r.cut_weight = 0;
  r.stable = true;
  for (int v = 0; v < g.vertex_count(); ++v) {
    Int dw = 0, cw = 0;
    for (int e : g.incident(v)) {
      const Edge& ed = g.edge(e);
      dw += ed.weight;
      if (c[ed.u] != c[ed.v]) cw += ed.weight;
    }
    bool st = 2 * cw >= dw;
    if (!st) r.stable = false;
    r.per_vertex[v] = VertexStability{std::move(dw), std::move(cw), st};
  }
  for (const Edge& e : g.edges())
    if (c[e.u] != c[e.v]) r.cut_weight += e.weight;
  return r;
}

inline Int cut_weight(const WeightedGraph& g, const Cut& c) {
  check_cut(g, c);
  Int w = 0;
  for (const Edge& e : g.edges())
    if (c[e.u] != c[e.v]) w += e.weight;
  return w;
}

inline bool is_stable(const WeightedGraph& g, const Cut& c) {
  check_cut(g, c);
  for (int v = 0; v < g.vertex_count(); ++v) {
    Int dw = 0, cw = 0;
    for (int e : g.incident(v)) {
      const Edge& ed = g.edge(e);
      dw += ed.weight;
      if (c[ed.u] != c[ed.v]) cw += ed.weight;
    }
    if (2 * cw < dw) return false;
  }
  return true;
}

}  // namespace msc
