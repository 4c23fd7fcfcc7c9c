#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <vector>

#include "msc/graph.hpp"
#include "msc/tree_decomposition.hpp"

namespace msc {

struct OptimalCut {
  Cut cut;
  Int weight;
  bool stable = true;
};

struct SolveOptions {
  bool prune_dominated = true;
  // Only consider cuts of weight <= budget; enables lower-bound pruning.
  // With a budget the solve may report "no cut within budget".
  std::optional<Int> budget;
  bool want_witness = true;
};

namespace detail {

struct SigKey {
  std::vector<std::uint8_t> sides;
  std::vector<Int> counters;

  bool operator<(const SigKey& o) const {
    if (sides != o.sides) return sides < o.sides;
    return counters < o.counters;
  }
};

struct SigEntry {
  Int value;
  const SigKey* child1 = nullptr;
  const SigKey* child2 = nullptr;
};

using SigTable = std::map<SigKey, SigEntry>;

inline int bag_position(const std::vector<int>& bag, int v) {
  auto it = std::lower_bound(bag.begin(), bag.end(), v);
  return (it != bag.end() && *it == v) ? static_cast<int>(it - bag.begin()) : -1;
}

// Per-node aggregates for lower-bound pruning: W_unproc = weight of edges
// with no endpoint forgotten below the node; S_half = sum of floor(d_w/2)
// over vertices not forgotten below the node. Any completion adds cut weight
// at least W_unproc - floor((S_half - sum of counters)/2).
struct NodeAggregates {
  std::vector<Int> w_unproc;
  std::vector<Int> s_half;
};

inline NodeAggregates compute_aggregates(const WeightedGraph& g, const NiceDecomposition& nd) {
  const int nn = nd.node_count();
  NodeAggregates agg;
  // Subtree intervals via iterative DFS from the root.
  std::vector<int> tin(nn, 0), tout(nn, 0);
  {
    int timer = 0;
    std::vector<std::pair<int, int>> st{{nd.root, 0}};
    while (!st.empty()) {
      auto& [x, phase] = st.back();
      if (phase == 0) {
        tin[x] = timer++;
        phase = 1;
        for (int c : nd.nodes[x].children) st.push_back({c, 0});
      } else {
        tout[x] = timer++;
        st.pop_back();
      }
    }
  }
  std::vector<int> forget_node(g.vertex_count(), -1);
  for (int t = 0; t < nn; ++t)
    if (nd.nodes[t].type == NodeType::Forget) forget_node[nd.nodes[t].vertex] = t;
  auto inside = [&](int node, int anc) {
    return tin[anc] <= tin[node] && tout[node] <= tout[anc];
  };
  std::vector<Int> w_at(nn, 0), half_at(nn, 0);
  for (const Edge& e : g.edges()) {
    int fu = forget_node[e.u], fv = forget_node[e.v];
    int lower = inside(fu, fv) ? fu : fv;  // forget nodes of adjacent vertices nest
    w_at[lower] += e.weight;
  }
  for (int v = 0; v < g.vertex_count(); ++v)
    if (forget_node[v] >= 0) half_at[forget_node[v]] += g.weighted_degree(v) / 2;
  agg.w_unproc.assign(nn, 0);
  agg.s_half.assign(nn, 0);
  Int total_w = g.total_weight();
  Int total_half = 0;
  for (int v = 0; v < g.vertex_count(); ++v) total_half += g.weighted_degree(v) / 2;
  // Node ids are post-order (children precede parents).
  std::vector<Int> below_w(nn, 0), below_half(nn, 0);
  for (int t = 0; t < nn; ++t) {
    below_w[t] = w_at[t];
    below_half[t] = half_at[t];
    for (int c : nd.nodes[t].children) {
      below_w[t] += below_w[c];
      below_half[t] += below_half[c];
    }
    agg.w_unproc[t] = total_w - below_w[t];
    agg.s_half[t] = total_half - below_half[t];
  }
  return agg;
}

// Drops entries whose counters are componentwise >= and value >= those of
// another entry with the same bag partition. Sound for minimization:
// stability feasibility is monotone decreasing in the counters.
inline void prune_dominated(SigTable& table) {
  auto it = table.begin();
  std::vector<SigTable::iterator> group;
  while (it != table.end()) {
    group.clear();
    auto gend = it;
    while (gend != table.end() && gend->first.sides == it->first.sides) {
      group.push_back(gend);
      ++gend;
    }
    std::vector<char> dead(group.size(), 0);
    for (std::size_t a = 0; a < group.size(); ++a) {
      if (dead[a]) continue;
      for (std::size_t b = 0; b < group.size(); ++b) {
        if (a == b || dead[b]) continue;
        const auto& ka = group[a]->first.counters;
        const auto& kb = group[b]->first.counters;
        bool le = group[a]->second.value <= group[b]->second.value;
        for (std::size_t i = 0; le && i < ka.size(); ++i) le = ka[i] <= kb[i];
        if (le) dead[b] = 1;
      }
    }
    for (std::size_t a = 0; a < group.size(); ++a)
      if (dead[a]) table.erase(group[a]);
    it = gend;
  }
}

struct PseudoDpResult {
  std::optional<Int> weight;
  Cut cut;
};

inline PseudoDpResult run_pseudo_dp(const WeightedGraph& g, const NiceDecomposition& nd,
                                    const SolveOptions& opts) {
  const int nn = nd.node_count();
  std::vector<Int> dw(g.vertex_count());
  for (int v = 0; v < g.vertex_count(); ++v) dw[v] = g.weighted_degree(v);

  NodeAggregates agg;
  if (opts.budget) agg = compute_aggregates(g, nd);

  auto admissible = [&](int node, const SigKey& key, const Int& value) {
    if (!opts.budget) return true;
    Int csum = 0;
    for (const Int& c : key.counters) csum += c;
    Int lb = agg.w_unproc[node] - (agg.s_half[node] - csum) / 2;
    if (lb < 0) lb = 0;
    return value + lb <= *opts.budget;
  };

  std::vector<SigTable> tables(nn);
  std::vector<char> consumed(nn, 0);
  for (int t = 0; t < nn; ++t) {
    const NiceNode& node = nd.nodes[t];
    SigTable& table = tables[t];
    switch (node.type) {
      case NodeType::Leaf:
        table.emplace(SigKey{}, SigEntry{Int(0)});
        break;
      case NodeType::Introduce: {
        const SigTable& ct = tables[node.children[0]];
        int pos = bag_position(node.bag, node.vertex);
        for (const auto& [ck, ce] : ct) {
          for (std::uint8_t side : {std::uint8_t{0}, std::uint8_t{1}}) {
            SigKey k = ck;
            k.sides.insert(k.sides.begin() + pos, side);
            k.counters.insert(k.counters.begin() + pos, Int(0));
            table.emplace(std::move(k), SigEntry{ce.value, &ck});
          }
        }
        break;
      }
      case NodeType::Forget: {
        const int v = node.vertex;
        const SigTable& ct = tables[node.children[0]];
        const std::vector<int>& cbag = nd.nodes[node.children[0]].bag;
        int pos = bag_position(cbag, v);
        // Neighbors of v inside the new bag, with their positions there.
        std::vector<std::pair<int, Int>> nbr;  // (position in node.bag, weight)
        for (int e : g.incident(v)) {
          int u = g.other_endpoint(e, v);
          int p = bag_position(node.bag, u);
          if (p >= 0) nbr.push_back({p, g.edge(e).weight});
        }
        for (const auto& [ck, ce] : ct) {
          std::uint8_t vside = ck.sides[pos];
          SigKey k;
          k.sides = ck.sides;
          k.sides.erase(k.sides.begin() + pos);
          k.counters = ck.counters;
          k.counters.erase(k.counters.begin() + pos);
          Int same = ck.counters[pos];
          Int value = ce.value;
          for (const auto& [p, w] : nbr) {
            if (k.sides[p] == vside) {
              same += w;
              k.counters[p] += w;
            } else {
              value += w;
            }
          }
          if (2 * same > dw[v]) continue;  // v would be unstable
          bool dead = false;
          for (const auto& [p, w] : nbr)
            if (2 * k.counters[p] > dw[node.bag[p]]) {  // doomed, counters only grow
              dead = true;
              break;
            }
          if (dead) continue;
          if (!admissible(t, k, value)) continue;
          auto [it2, inserted] = table.emplace(std::move(k), SigEntry{value, &ck});
          if (!inserted && value < it2->second.value) it2->second = SigEntry{value, &ck};
        }
        break;
      }
      case NodeType::Join: {
        SigTable& t1 = tables[node.children[0]];
        SigTable& t2 = tables[node.children[1]];
        const SigTable& small = t1.size() <= t2.size() ? t1 : t2;
        const SigTable& large = t1.size() <= t2.size() ? t2 : t1;
        auto it1 = small.begin();
        while (it1 != small.end()) {
          auto gend = it1;
          while (gend != small.end() && gend->first.sides == it1->first.sides) ++gend;
          auto it2 = large.lower_bound(SigKey{it1->first.sides, {}});
          for (; it2 != large.end() && it2->first.sides == it1->first.sides; ++it2) {
            for (auto ita = it1; ita != gend; ++ita) {
              SigKey k;
              k.sides = ita->first.sides;
              k.counters.resize(k.sides.size());
              for (std::size_t i = 0; i < k.counters.size(); ++i) {
                k.counters[i] = ita->first.counters[i] + it2->first.counters[i];
                if (2 * k.counters[i] > dw[node.bag[i]]) {
                  k.counters.clear();
                  break;
                }
              }
              if (k.counters.empty() && !k.sides.empty()) continue;
              Int value = ita->second.value + it2->second.value;
              if (!admissible(t, k, value)) continue;
              SigEntry e{value, &ita->first, &it2->first};
              auto [it3, inserted] = table.emplace(std::move(k), e);
              if (!inserted && value < it3->second.value) it3->second = e;
            }
          }
          it1 = gend;
        }
        break;
      }
    }
    if (opts.prune_dominated && node.type != NodeType::Leaf) prune_dominated(table);
    if (!opts.want_witness)
      for (int c : node.children) {
        tables[c].clear();
        consumed[c] = 1;
      }
  }

  PseudoDpResult res;
  const SigTable& root_table = tables[nd.root];
  if (root_table.empty()) return res;  // only possible with a budget
  const SigKey* best_key = nullptr;
  for (const auto& [k, e] : root_table)
    if (!res.weight || e.value < *res.weight) {
      res.weight = e.value;
      best_key = &k;
    }
  if (!opts.want_witness) return res;

  // Walk back down collecting sides from every signature on the optimal chain.
  res.cut.assign(g.vertex_count(), 0);
  std::vector<char> assigned(g.vertex_count(), 0);
  std::vector<std::pair<int, const SigKey*>> stack{{nd.root, best_key}};
  while (!stack.empty()) {
    auto [t, key] = stack.back();
    stack.pop_back();
    const NiceNode& node = nd.nodes[t];
    for (std::size_t i = 0; i < node.bag.size(); ++i) {
      int v = node.bag[i];
      if (!assigned[v]) {
        assigned[v] = 1;
        res.cut[v] = key->sides[i];
      }
    }
    const SigEntry& e = tables[t].at(*key);
    if (node.type == NodeType::Join) {
      // child1 belongs to the smaller table; recover which child that was
      const SigTable& t1 = tables[node.children[0]];
      const SigTable& t2 = tables[node.children[1]];
      bool small_is_first = t1.size() <= t2.size();
      stack.push_back({node.children[small_is_first ? 0 : 1], e.child1});
      stack.push_back({node.children[small_is_first ? 1 : 0], e.child2});
    } else if (!node.children.empty()) {
      stack.push_back({node.children[0], e.child1});
    }
  }
  return res;
}

}  // namespace detail

/// Minimum stable cut via the signature DP: bag partition plus, per bag
/// vertex, the exact weight of same-side edges to already-forgotten
/// neighbors. Stability of each vertex is decided at its Forget node.
inline OptimalCut solve_pseudo(const WeightedGraph& g, const NiceDecomposition& nd,
                               const SolveOptions& opts = {}) {
  ValidationResult vr = validate_nice(g, nd);
  if (!vr.ok()) throw InputError("invalid nice decomposition: " + vr.violations.front());
  SolveOptions o = opts;
  o.budget.reset();  // unbudgeted: a stable cut always exists
  detail::PseudoDpResult r = detail::run_pseudo_dp(g, nd, o);
  return OptimalCut{std::move(r.cut), *r.weight, true};
}

/// Decision variant: the minimum stable cut weight if it is <= budget.
inline std::optional<Int> min_stable_cut_within(const WeightedGraph& g,
                                                const NiceDecomposition& nd, Int budget,
                                                const SolveOptions& opts = {}) {
  ValidationResult vr = validate_nice(g, nd);
  if (!vr.ok()) throw InputError("invalid nice decomposition: " + vr.violations.front());
  SolveOptions o = opts;
  o.budget = std::move(budget);
  o.want_witness = false;
  return detail::run_pseudo_dp(g, nd, o).weight;
}

/// Unweighted alias of solve_pseudo; rejects weighted inputs.
inline OptimalCut solve_unweighted(const WeightedGraph& g, const NiceDecomposition& nd,
                                   const SolveOptions& opts = {}) {
  if (!g.unit_weights()) throw InputError("solve_unweighted requires unit weights");
  return solve_pseudo(g, nd, opts);
}

namespace detail {

// Partition-only DP over a nice decomposition. Edges are paid for at the
// Forget node of their earlier-forgotten endpoint. `filters[t]` lists
// vertices whose stability is checked against the bag of node t (the bag
// must contain the closed neighborhood).
struct PartitionDpResult {
  Int value;
  Cut cut;
};

inline PartitionDpResult run_partition_dp(const WeightedGraph& g, const NiceDecomposition& nd,
                                          const std::vector<std::vector<int>>& filters,
                                          bool maximize, bool want_witness) {
  struct Entry {
    Int value;
    const std::vector<std::uint8_t>* child1 = nullptr;
    const std::vector<std::uint8_t>* child2 = nullptr;
  };
  using Table = std::map<std::vector<std::uint8_t>, Entry>;
  const int nn = nd.node_count();
  std::vector<Int> dw(g.vertex_count());
  for (int v = 0; v < g.vertex_count(); ++v) dw[v] = g.weighted_degree(v);
  std::vector<Table> tables(nn);
  auto better = [&](const Int& a, const Int& b) { return maximize ? a > b : a < b; };
  for (int t = 0; t < nn; ++t) {
    const NiceNode& node = nd.nodes[t];
    Table& table = tables[t];
    switch (node.type) {
      case NodeType::Leaf:
        table.emplace(std::vector<std::uint8_t>{}, Entry{Int(0)});
        break;
      case NodeType::Introduce: {
        const Table& ct = tables[node.children[0]];
        int pos = detail::bag_position(node.bag, node.vertex);
        for (const auto& [ck, ce] : ct)
          for (std::uint8_t side : {std::uint8_t{0}, std::uint8_t{1}}) {
            std::vector<std::uint8_t> k = ck;
            k.insert(k.begin() + pos, side);
            table.emplace(std::move(k), Entry{ce.value, &ck});
          }
        break;
      }
      case NodeType::Forget: {
        const int v = node.vertex;
        const Table& ct = tables[node.children[0]];
        const std::vector<int>& cbag = nd.nodes[node.children[0]].bag;
        int pos = detail::bag_position(cbag, v);
        std::vector<std::pair<int, Int>> nbr;
        for (int e : g.incident(v)) {
          int p = detail::bag_position(node.bag, g.other_endpoint(e, v));
          if (p >= 0) nbr.push_back({p, g.edge(e).weight});
        }
        for (const auto& [ck, ce] : ct) {
          std::uint8_t vside = ck[pos];
          std::vector<std::uint8_t> k = ck;
          k.erase(k.begin() + pos);
          Int value = ce.value;
          for (const auto& [p, w] : nbr)
            if (k[p] != vside) value += w;
          auto [it, inserted] = table.emplace(std::move(k), Entry{value, &ck});
          if (!inserted && better(value, it->second.value)) it->second = Entry{value, &ck};
        }
        break;
      }
      case NodeType::Join: {
        const Table& t1 = tables[node.children[0]];
        const Table& t2 = tables[node.children[1]];
        for (const auto& [k1, e1] : t1) {
          auto it2 = t2.find(k1);
          if (it2 == t2.end()) continue;
          table.emplace(k1, Entry{e1.value + it2->second.value, &k1, &it2->first});
        }
        break;
      }
    }
    // Stability filters assigned to this node.
    if (!filters[t].empty()) {
      for (auto it = table.begin(); it != table.end();) {
        bool ok = true;
        for (int v : filters[t]) {
          int pv = detail::bag_position(node.bag, v);
          Int same = 0;
          for (int e : g.incident(v)) {
            int pu = detail::bag_position(node.bag, g.other_endpoint(e, v));
            if (it->first[pu] == it->first[pv]) same += g.edge(e).weight;
          }
          if (2 * same > dw[v]) {
            ok = false;
            break;
          }
        }
        it = ok ? std::next(it) : table.erase(it);
      }
    }
  }
  const Table& root_table = tables[nd.root];
  PartitionDpResult res;
  const std::vector<std::uint8_t>* best = nullptr;
  for (const auto& [k, e] : root_table)
    if (!best || better(e.value, res.value)) {
      res.value = e.value;
      best = &k;
    }
  if (!want_witness || !best) return res;
  res.cut.assign(g.vertex_count(), 0);
  std::vector<char> assigned(g.vertex_count(), 0);
  std::vector<std::pair<int, const std::vector<std::uint8_t>*>> stack{{nd.root, best}};
  while (!stack.empty()) {
    auto [t, key] = stack.back();
    stack.pop_back();
    const NiceNode& node = nd.nodes[t];
    for (std::size_t i = 0; i < node.bag.size(); ++i)
      if (!assigned[node.bag[i]]) {
        assigned[node.bag[i]] = 1;
        res.cut[node.bag[i]] = (*key)[i];
      }
    const Entry& e = tables[t].at(*key);
    if (node.type == NodeType::Join) {
      stack.push_back({node.children[0], e.child1});
      stack.push_back({node.children[1], e.child2});
    } else if (!node.children.empty()) {
      stack.push_back({node.children[0], e.child1});
    }
  }
  return res;
}

}  // namespace detail

/// Minimum stable cut via the neighborhood-augmented partition DP: the
/// decomposition is augmented so that some bag contains N[v] for every v,
/// nice-ified, and each vertex's stability is checked at one such bag.
inline OptimalCut solve_degree(const WeightedGraph& g, const TreeDecomposition& td) {
  ValidationResult vr = validate(g, td);
  if (!vr.ok()) throw InputError("invalid tree decomposition: " + vr.violations.front());
  TreeDecomposition aug = augment_neighborhoods(g, td);
  NiceDecomposition nd = make_nice(aug);
  std::vector<std::vector<int>> filters(nd.node_count());
  for (int v = 0; v < g.vertex_count(); ++v) {
    std::vector<int> closed = g.neighbors(v);
    closed.push_back(v);
    std::sort(closed.begin(), closed.end());
    int home = -1;
    for (int t = 0; t < nd.node_count() && home < 0; ++t) {
      const auto& bag = nd.nodes[t].bag;
      if (std::includes(bag.begin(), bag.end(), closed.begin(), closed.end())) home = t;
    }
    if (home < 0) throw InputError("augmented decomposition misses a closed neighborhood");
    filters[home].push_back(v);
  }
  detail::PartitionDpResult r =
      detail::run_partition_dp(g, nd, filters, /*maximize=*/false, /*want_witness=*/true);
  return OptimalCut{std::move(r.cut), std::move(r.value), true};
}

/// Maximum cut weight (no stability constraint); supports Price of Anarchy.
inline Int solve_max_cut(const WeightedGraph& g, const NiceDecomposition& nd) {
  ValidationResult vr = validate_nice(g, nd);
  if (!vr.ok()) throw InputError("invalid nice decomposition: " + vr.violations.front());
  std::vector<std::vector<int>> filters(nd.node_count());
  return detail::run_partition_dp(g, nd, filters, /*maximize=*/true, /*want_witness=*/false)
      .value;
}

}  // namespace msc
