#pragma once

#include <algorithm>
#include <functional>
#include <numeric>
#include <random>
#include <utility>
#include <vector>

#include "msc/exact_solver.hpp"
#include "msc/graph.hpp"

namespace msc {

inline constexpr int kDefaultEnumerationLimit = 24;

namespace detail {

inline void check_enumeration_limit(const WeightedGraph& g, int limit) {
  if (g.vertex_count() > limit)
    throw ResourceError("graph exceeds enumeration limit of " + std::to_string(limit) +
                        " vertices");
}

// Visits every assignment with vertex 0 pinned to side 0 (stability and cut
// weight are invariant under flipping all sides).
template <typename F>
void enumerate_assignments(const WeightedGraph& g, F&& visit) {
  const int n = g.vertex_count();
  Cut c(n, 0);
  const std::uint64_t count = n <= 1 ? 1 : (std::uint64_t{1} << (n - 1));
  for (std::uint64_t mask = 0; mask < count; ++mask) {
    for (int v = 1; v < n; ++v) c[v] = (mask >> (v - 1)) & 1;
    visit(c);
  }
}

}  // namespace detail

inline OptimalCut brute_min_stable_cut(const WeightedGraph& g,
                                       int limit = kDefaultEnumerationLimit) {
  detail::check_enumeration_limit(g, limit);
  OptimalCut best;
  bool found = false;
  detail::enumerate_assignments(g, [&](const Cut& c) {
    if (!is_stable(g, c)) return;
    Int w = cut_weight(g, c);
    if (!found || w < best.weight || (w == best.weight && c < best.cut)) {
      best = OptimalCut{c, std::move(w), true};
      found = true;
    }
  });
  return best;  // always found: the maximum cut is stable
}

inline Int brute_max_cut(const WeightedGraph& g, int limit = kDefaultEnumerationLimit) {
  detail::check_enumeration_limit(g, limit);
  Int best = 0;
  detail::enumerate_assignments(g, [&](const Cut& c) { best = std::max(best, cut_weight(g, c)); });
  return best;
}

/// All stable cuts up to global flip (vertex 0 on side 0), with weights.
inline std::vector<std::pair<Cut, Int>> enumerate_stable_cuts(
    const WeightedGraph& g, int limit = kDefaultEnumerationLimit) {
  detail::check_enumeration_limit(g, limit);
  std::vector<std::pair<Cut, Int>> out;
  detail::enumerate_assignments(g, [&](const Cut& c) {
    if (is_stable(g, c)) out.emplace_back(c, cut_weight(g, c));
  });
  return out;
}

enum class PivotRule { FirstImprovement, BestImprovement };

struct LocalSearchResult {
  Cut cut;
  long flip_count = 0;
};

/// Best-response dynamics: repeatedly flip a vertex whose flip strictly
/// increases the cut weight (exactly the unstable vertices), until the cut
/// is stable. Deterministic given the pivot rule and seed.
inline LocalSearchResult local_search(const WeightedGraph& g, Cut start, PivotRule pivot,
                                      std::uint64_t seed = 0) {
  check_cut(g, start);
  const int n = g.vertex_count();
  std::vector<Int> crossing(n, 0), dw(n, 0);
  for (int v = 0; v < n; ++v) {
    for (int e : g.incident(v)) {
      const Edge& ed = g.edge(e);
      dw[v] += ed.weight;
      if (start[ed.u] != start[ed.v]) crossing[v] += ed.weight;
    }
  }
  auto gain = [&](int v) { return dw[v] - 2 * crossing[v]; };  // flip adds this to the cut
  auto flip = [&](int v) {
    start[v] ^= 1;
    crossing[v] = dw[v] - crossing[v];
    for (int e : g.incident(v)) {
      const Edge& ed = g.edge(e);
      int u = g.other_endpoint(e, v);
      if (start[ed.u] != start[ed.v])
        crossing[u] += ed.weight;
      else
        crossing[u] -= ed.weight;
    }
  };

  LocalSearchResult res;
  std::mt19937_64 rng(seed);
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  for (;;) {
    int chosen = -1;
    if (pivot == PivotRule::FirstImprovement) {
      std::shuffle(order.begin(), order.end(), rng);  // fresh order each pass
      for (int v : order)
        if (gain(v) > 0) {
          chosen = v;
          break;
        }
    } else {
      Int best_gain = 0;
      for (int v = 0; v < n; ++v)
        if (gain(v) > best_gain) {  // ties keep the smallest id
          best_gain = gain(v);
          chosen = v;
        }
    }
    if (chosen < 0) break;
    flip(chosen);
    ++res.flip_count;
  }
  res.cut = std::move(start);
  return res;
}

struct PoAReport {
  Int max_cut;
  Int min_stable_cut;
  Rational ratio;  // max_cut / min_stable_cut, 1 on edgeless graphs
};

inline PoAReport make_poa_report(Int max_cut, Int min_stable_cut) {
  PoAReport r{std::move(max_cut), std::move(min_stable_cut), Rational(1)};
  if (r.max_cut != 0) r.ratio = Rational(r.max_cut, r.min_stable_cut);
  return r;
}

///// Price of Anarchy of the Max Cut game: max cut over minimum stable cut.
inline PoAReport price_of_anarchy(const WeightedGraph& g,
                                  int limit = kDefaultEnumerationLimit) {
  return make_poa_report(brute_max_cut(g, limit), brute_min_stable_cut(g, limit).weight);
}

/// DP-backed variant for graphs beyond the enumeration limit.
inline PoAReport price_of_anarchy(const WeightedGraph& g, const NiceDecomposition& nd) {
  return make_poa_report(solve_max_cut(g, nd), solve_pseudo(g, nd).weight);
}

}  // namespace msc
