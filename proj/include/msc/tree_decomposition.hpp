#pragma once

#include <algorithm>
#include <queue>
#include <set>
#include <string>
#include <vector>

#include "msc/graph.hpp"

namespace msc {

/// Unrooted tree decomposition: a tree over node ids with a bag per node.
/// Bags are kept sorted.
struct TreeDecomposition {
  std::vector<std::vector<int>> bags;
  std::vector<std::pair<int, int>> tree_edges;

  int node_count() const { return static_cast<int>(bags.size()); }

  int width() const {
    std::size_t m = 0;
    for (const auto& b : bags) m = std::max(m, b.size());
    return static_cast<int>(m) - 1;
  }

  std::vector<std::vector<int>> adjacency() const {
    std::vector<std::vector<int>> adj(bags.size());
    for (auto [a, b] : tree_edges) {
      adj[a].push_back(b);
      adj[b].push_back(a);
    }
    return adj;
  }

  void normalize() {
    for (auto& b : bags) {
      std::sort(b.begin(), b.end());
      b.erase(std::unique(b.begin(), b.end()), b.end());
    }
  }
};

struct ValidationResult {
  std::vector<std::string> violations;
  bool ok() const { return violations.empty(); }
};

/// Checks vertex coverage, edge coverage, occurrence connectivity, and that
/// the node graph is a tree. Violations are reported as data, not errors.
inline ValidationResult validate(const WeightedGraph& g, const TreeDecomposition& td) {
  ValidationResult res;
  const int nb = td.node_count();
  if (nb == 0) {
    if (g.vertex_count() > 0) res.violations.push_back("empty decomposition for nonempty graph");
    return res;
  }
  for (auto [a, b] : td.tree_edges)
    if (a < 0 || a >= nb || b < 0 || b >= nb) {
      res.violations.push_back("tree edge references unknown node");
      return res;
    }
  // Tree check: connected and |E| = |V| - 1.
  if (static_cast<int>(td.tree_edges.size()) != nb - 1)
    res.violations.push_back("node graph is not a tree (edge count)");
  auto adj = td.adjacency();
  std::vector<char> seen(nb, 0);
  std::queue<int> q;
  q.push(0);
  seen[0] = 1;
  int reached = 1;
  while (!q.empty()) {
    int x = q.front();
    q.pop();
    for (int y : adj[x])
      if (!seen[y]) {
        seen[y] = 1;
        ++reached;
        q.push(y);
      }
  }
  if (reached != nb) res.violations.push_back("node graph is not connected");

  std::vector<std::vector<int>> occ(g.vertex_count());
  for (int t = 0; t < nb; ++t)
    for (int v : td.bags[t]) {
      if (v < 0 || v >= g.vertex_count()) {
        res.violations.push_back("bag " + std::to_string(t) + " references invalid vertex");
        continue;
      }
      occ[v].push_back(t);
    }
  for (int v = 0; v < g.vertex_count(); ++v)
    if (occ[v].empty()) res.violations.push_back("vertex " + std::to_string(v) + " not covered");
  for (const Edge& e : g.edges()) {
    bool covered = false;
    for (int t : occ[e.u]) {
      const auto& bag = td.bags[t];
      if (std::binary_search(bag.begin(), bag.end(), e.v)) {
        covered = true;
        break;
      }
    }
    if (!covered)
      res.violations.push_back("edge (" + std::to_string(e.u) + "," + std::to_string(e.v) +
                               ") not covered");
  }
  // Connectivity of each occurrence set.
  for (int v = 0; v < g.vertex_count(); ++v) {
    if (occ[v].size() <= 1) continue;
    std::set<int> members(occ[v].begin(), occ[v].end());
    std::queue<int> qq;
    std::set<int> vis;
    qq.push(occ[v][0]);
    vis.insert(occ[v][0]);
    while (!qq.empty()) {
      int x = qq.front();
      qq.pop();
      for (int y : adj[x])
        if (members.count(y) && !vis.count(y)) {
          vis.insert(y);
          qq.push(y);
        }
    }
    if (vis.size() != members.size())
      res.violations.push_back("occurrence set of vertex " + std::to_string(v) +
                               " is disconnected");
  }
  return res;
}

enum class NodeType { Leaf, Introduce, Forget, Join };

struct NiceNode {
  NodeType type = NodeType::Leaf;
  int vertex = -1;  // introduced/forgotten vertex, -1 for Leaf/Join
  std::vector<int> children;
  std::vector<int> bag;  // sorted
};

/// Rooted nice decomposition: empty root and leaves, one Forget node per
/// vertex, typed transitions.
struct NiceDecomposition {
  std::vector<NiceNode> nodes;
  int root = -1;

  int node_count() const { return static_cast<int>(nodes.size()); }

  int width() const {
    std::size_t m = 0;
    for (const auto& nd : nodes) m = std::max(m, nd.bag.size());
    return static_cast<int>(m) - 1;
  }
};

/// Root-to-leaf maximum edge count.
inline int height(const NiceDecomposition& nd) {
  std::vector<int> h(nd.nodes.size(), 0);
  // Children always have smaller ids than their parent (post-order build).
  int best = 0;
  for (std::size_t i = 0; i < nd.nodes.size(); ++i) {
    for (int c : nd.nodes[i].children) h[i] = std::max(h[i], h[c] + 1);
    best = std::max(best, h[i]);
  }
  return h[nd.root];
}

namespace detail {

class NiceBuilder {
 public:
  int add(NodeType t, int vertex, std::vector<int> children, std::vector<int> bag) {
    nodes_.push_back(NiceNode{t, vertex, std::move(children), std::move(bag)});
    return static_cast<int>(nodes_.size()) - 1;
  }

  /// Chain of Forget/Introduce nodes transforming bag `from` (at node `below`)
  /// into bag `to`. Forgets first, in ascending vertex order, then introduces.
  int transition(int below, const std::vector<int>& from, const std::vector<int>& to) {
    std::vector<int> cur = from;
    int node = below;
    for (int v : from) {
      if (std::binary_search(to.begin(), to.end(), v)) continue;
      cur.erase(std::find(cur.begin(), cur.end(), v));
      node = add(NodeType::Forget, v, {node}, cur);
    }
    for (int v : to) {
      if (std::binary_search(from.begin(), from.end(), v)) continue;
      cur.insert(std::upper_bound(cur.begin(), cur.end(), v), v);
      node = add(NodeType::Introduce, v, {node}, cur);
    }
    return node;
  }

  std::vector<NiceNode> take() { return std::move(nodes_); }

 private:
  std::vector<NiceNode> nodes_;
};

}  // namespace detail

/// Converts a valid decomposition into a nice one of the same width, with an
/// empty root bag, empty leaves, and exactly one Forget node per vertex.
inline NiceDecomposition make_nice(const TreeDecomposition& td_in) {
  TreeDecomposition td = td_in;
  td.normalize();
  if (td.node_count() == 0) {
    NiceDecomposition nd;
    nd.nodes.push_back(NiceNode{NodeType::Leaf, -1, {}, {}});
    nd.root = 0;
    return nd;
  }
  auto adj = td.adjacency();
  // Deterministic root: node 0. Children visited in order of (min bag vertex,
  // node id).
  detail::NiceBuilder b;
  std::vector<int> parent(td.node_count(), -2);
  // Build recursively (iterative post-order).
  struct Frame {
    int node;
    std::size_t next_child = 0;
    std::vector<int> order;          // child td-nodes in deterministic order
    std::vector<int> built_subbags;  // nice node ids at this bag, one per child
  };
  std::vector<Frame> stack;
  auto order_children = [&](int t, int par) {
    std::vector<int> ch;
    for (int y : adj[t])
      if (y != par) ch.push_back(y);
    std::sort(ch.begin(), ch.end(), [&](int a, int bnode) {
      int ma = td.bags[a].empty() ? -1 : td.bags[a][0];
      int mb = td.bags[bnode].empty() ? -1 : td.bags[bnode][0];
      return std::tie(ma, a) < std::tie(mb, bnode);
    });
    return ch;
  };
  const int root_td = 0;
  stack.push_back(Frame{root_td, 0, order_children(root_td, -1), {}});
  parent[root_td] = -1;
  int result_at_root = -1;
  while (!stack.empty()) {
    Frame& f = stack.back();
    if (f.next_child < f.order.size()) {
      int c = f.order[f.next_child++];
      parent[c] = f.node;
      stack.push_back(Frame{c, 0, order_children(c, f.node), {}});
      continue;
    }
    // All children built: assemble this node.
    int here;
    if (f.built_subbags.empty()) {
      int leaf = b.add(NodeType::Leaf, -1, {}, {});
      here = b.transition(leaf, {}, td.bags[f.node]);
    } else {
      here = f.built_subbags[0];
      for (std::size_t i = 1; i < f.built_subbags.size(); ++i)
        here = b.add(NodeType::Join, -1, {here, f.built_subbags[i]}, td.bags[f.node]);
    }
    int done = f.node;
    stack.pop_back();
    if (stack.empty()) {
      result_at_root = here;
    } else {
      // Transition from this bag up to the parent bag, then record.
      int up = b.transition(here, td.bags[done], td.bags[stack.back().node]);
      stack.back().built_subbags.push_back(up);
    }
  }
  // Forget everything remaining at the root.
  NiceDecomposition nd;
  detail::NiceBuilder* pb = &b;
  int top = pb->transition(result_at_root, td.bags[root_td], {});
  nd.nodes = pb->take();
  nd.root = top;
  return nd;
}

/// Strips node typing, returning the underlying plain decomposition.
inline TreeDecomposition to_tree_decomposition(const NiceDecomposition& nd) {
  TreeDecomposition td;
  td.bags.resize(nd.nodes.size());
  for (int i = 0; i < nd.node_count(); ++i) {
    td.bags[i] = nd.nodes[i].bag;
    for (int c : nd.nodes[i].children) td.tree_edges.push_back({i, c});
  }
  return td;
}

/// Checks nice-decomposition structural invariants (types, transitions, one
/// Forget per vertex, empty root/leaves).
inline ValidationResult validate_nice(const WeightedGraph& g, const NiceDecomposition& nd) {
  ValidationResult res = validate(g, to_tree_decomposition(nd));
  if (nd.root < 0 || nd.root >= nd.node_count()) {
    res.violations.push_back("missing root");
    return res;
  }
  if (!nd.nodes[nd.root].bag.empty()) res.violations.push_back("root bag not empty");
  std::vector<int> forgets(g.vertex_count(), 0);
  for (const NiceNode& x : nd.nodes) {
    switch (x.type) {
      case NodeType::Leaf:
        if (!x.children.empty() || !x.bag.empty()) res.violations.push_back("bad leaf node");
        break;
      case NodeType::Introduce:
      case NodeType::Forget: {
        if (x.children.size() != 1) {
          res.violations.push_back("introduce/forget must have one child");
          break;
        }
        std::vector<int> expect = nd.nodes[x.children[0]].bag;
        if (x.type == NodeType::Introduce) {
          expect.insert(std::upper_bound(expect.begin(), expect.end(), x.vertex), x.vertex);
        } else {
          auto it = std::find(expect.begin(), expect.end(), x.vertex);
          if (it == expect.end()) {
            res.violations.push_back("forgotten vertex missing from child bag");
            break;
          }
          expect.erase(it);
          if (x.vertex >= 0 && x.vertex < g.vertex_count()) forgets[x.vertex]++;
        }
        if (expect != x.bag) res.violations.push_back("bag transition does not match node type");
        break;
      }
      case NodeType::Join:
        if (x.children.size() != 2)
          res.violations.push_back("join must have two children");
        else if (nd.nodes[x.children[0]].bag != x.bag || nd.nodes[x.children[1]].bag != x.bag)
          res.violations.push_back("join children bags differ");
        break;
    }
  }
  for (int v = 0; v < g.vertex_count(); ++v)
    if (forgets[v] != 1)
      res.violations.push_back("vertex " + std::to_string(v) + " has " +
                               std::to_string(forgets[v]) + " forget nodes");
  return res;
}

enum class EliminationStrategy { MinDegree, MinFill };

/// Elimination-ordering heuristic. Deterministic: ties broken by smallest
/// vertex id.
inline TreeDecomposition heuristic_decompose(const WeightedGraph& g,
                                             EliminationStrategy strategy) {
  const int n = g.vertex_count();
  TreeDecomposition td;
  if (n == 0) {
    td.bags.push_back({});
    return td;
  }
  std::vector<std::set<int>> nb(n);
  for (const Edge& e : g.edges()) {
    nb[e.u].insert(e.v);
    nb[e.v].insert(e.u);
  }
  std::vector<char> gone(n, 0);
  std::vector<int> order;
  std::vector<std::vector<int>> elim_bags(n);
  auto fill_cost = [&](int v) {
    long long c = 0;
    std::vector<int> ns(nb[v].begin(), nb[v].end());
    for (std::size_t i = 0; i < ns.size(); ++i)
      for (std::size_t j = i + 1; j < ns.size(); ++j)
        if (!nb[ns[i]].count(ns[j])) ++c;
    return c;
  };
  for (int step = 0; step < n; ++step) {
    int best = -1;
    long long best_score = 0;
    for (int v = 0; v < n; ++v) {
      if (gone[v]) continue;
      long long score = strategy == EliminationStrategy::MinDegree
                            ? static_cast<long long>(nb[v].size())
                            : fill_cost(v);
      if (best == -1 || score < best_score) {
        best = v;
        best_score = score;
      }
    }
    order.push_back(best);
    gone[best] = 1;
    std::vector<int> ns(nb[best].begin(), nb[best].end());
    elim_bags[best] = ns;
    elim_bags[best].push_back(best);
    std::sort(elim_bags[best].begin(), elim_bags[best].end());
    for (std::size_t i = 0; i < ns.size(); ++i) {
      nb[ns[i]].erase(best);
      for (std::size_t j = i + 1; j < ns.size(); ++j) {
        nb[ns[i]].insert(ns[j]);
        nb[ns[j]].insert(ns[i]);
      }
    }
  }
  // Bag of v attaches to the bag of the earliest-eliminated vertex among its
  // higher neighbors; otherwise to the previously created bag (keeps a tree).
  std::vector<int> pos(n);
  for (int i = 0; i < n; ++i) pos[order[i]] = i;
  td.bags.resize(n);
  for (int i = 0; i < n; ++i) td.bags[i] = elim_bags[order[i]];
  for (int i = 0; i < n; ++i) {
    int v = order[i];
    int attach = -1;
    for (int u : elim_bags[v])
      if (u != v && (attach == -1 || pos[u] < pos[attach])) attach = u;
    if (attach != -1)
      td.tree_edges.push_back({i, pos[attach]});
    else if (i + 1 < n)
      td.tree_edges.push_back({i, i + 1});
  }
  td.normalize();
  return td;
}

/// Adds to every bag containing v all of N(v). Afterwards some bag contains
/// N[v] for every v; width grows to at most (Delta+1)(tw+1) - 1.
inline TreeDecomposition augment_neighborhoods(const WeightedGraph& g,
                                               const TreeDecomposition& td_in) {
  ValidationResult vr = validate(g, td_in);
  if (!vr.ok()) throw InputError("invalid tree decomposition: " + vr.violations.front());
  TreeDecomposition td = td_in;
  td.normalize();
  for (auto& bag : td.bags) {
    std::set<int> out(bag.begin(), bag.end());
    for (int v : bag)
      for (int u : g.neighbors(v)) out.insert(u);
    bag.assign(out.begin(), out.end());
  }
  return td;
}

/// Single-bag decomposition; the trivial fallback.
inline TreeDecomposition trivial_decomposition(const WeightedGraph& g) {
  TreeDecomposition td;
  td.bags.emplace_back();
  for (int v = 0; v < g.vertex_count(); ++v) td.bags[0].push_back(v);
  return td;
}

}  // namespace msc
