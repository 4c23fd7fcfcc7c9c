#pragma once

#include <random>

#include "msc/msc.hpp"

namespace testutil {

inline msc::WeightedGraph path_graph(int n) {
  msc::WeightedGraph g(n);
  for (int i = 0; i + 1 < n; ++i) g.add_edge(i, i + 1);
  return g;
}

inline msc::WeightedGraph cycle_graph(int n) {
  msc::WeightedGraph g(n);
  for (int i = 0; i < n; ++i) g.add_edge(i, (i + 1) % n);
  return g;
}

inline msc::WeightedGraph complete_graph(int n) {
  msc::WeightedGraph g(n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) g.add_edge(i, j);
  return g;
}

/// Random connected graph: a random spanning tree plus extra edges.
inline msc::WeightedGraph random_connected(std::mt19937_64& rng, int n, int extra_edges,
                                           int max_weight = 1) {
  msc::WeightedGraph g(n);
  auto weight = [&] {
    return max_weight <= 1 ? msc::Int(1)
                           : msc::Int(std::uniform_int_distribution<int>(1, max_weight)(rng));
  };
  for (int v = 1; v < n; ++v)
    g.add_edge(v, static_cast<int>(std::uniform_int_distribution<int>(0, v - 1)(rng)), weight());
  for (int t = 0; t < extra_edges && n >= 2; ++t) {
    int u = std::uniform_int_distribution<int>(0, n - 1)(rng);
    int v = std::uniform_int_distribution<int>(0, n - 1)(rng);
    if (u != v && !g.has_edge(u, v)) g.add_edge(u, v, weight());
  }
  return g;
}

inline msc::NiceDecomposition nice_for(const msc::WeightedGraph& g) {
  return msc::make_nice(msc::heuristic_decompose(g, msc::EliminationStrategy::MinDegree));
}

}  // namespace testutil
