#pragma once

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "msc/graph.hpp"
#include "msc/tree_decomposition.hpp"

namespace msc {

struct PartitionInstance {
  std::vector<Int> values;

  Int total() const {
    Int t = 0;
    for (const Int& x : values) t += x;
    return t;
  }

  void check() const {
    if (values.empty()) throw InputError("empty partition instance");
    for (const Int& x : values)
      if (x < 1) throw InputError("partition values must be positive");
  }
};

struct SetSplittingInstance {
  int element_count = 0;
  std::vector<std::vector<int>> sets;  // each of size 2 or 3, distinct elements

  void check() const {
    if (element_count < 1) throw InputError("set splitting needs at least one element");
    for (const auto& s : sets) {
      if (s.size() != 2 && s.size() != 3) throw InputError("set sizes must be 2 or 3");
      std::set<int> uniq(s.begin(), s.end());
      if (uniq.size() != s.size()) throw InputError("ill-formed set with repeated element");
      for (int e : s)
        if (e < 0 || e >= element_count) throw InputError("set element out of range");
    }
  }
};

struct MCISInstance {
  int k = 0;  // color classes
  int n = 0;  // vertices per class
  // Edges ((i1,j1),(i2,j2)) with 1-based class ids i and in-class indices j.
  std::vector<std::pair<std::pair<int, int>, std::pair<int, int>>> edges;

  void check() const {
    if (k < 1 || n < 1) throw InputError("multicolored instance needs k >= 1 and n >= 1");
    for (const auto& [a, b] : edges) {
      auto valid = [&](const std::pair<int, int>& p) {
        return p.first >= 1 && p.first <= k && p.second >= 1 && p.second <= n;
      };
      if (!valid(a) || !valid(b)) throw InputError("edge endpoint out of range");
      if (a.first == b.first) throw InputError("edge inside a color class");
    }
  }
};

enum class SourceKind { Partition, PartitionK2N, MaxCut, SetSplitting, MCIS };

namespace detail {

// Deterministic vertex layout of the set-splitting target: m columns of
// n_padded element copies, each with a stabilizer leaf; one checker per
// column; rho propagators between consecutive columns.
struct SsLayout {
  int n_padded, m, delta, rho;

  explicit SsLayout(const SetSplittingInstance& h, int d) {
    delta = d;
    m = static_cast<int>(h.sets.size());
    n_padded = ((h.element_count + d - 1) / d) * d;
    rho = n_padded / d;
  }

  int element(int i, int j) const { return j * n_padded + i; }
  int leaf(int i, int j) const { return n_padded * m + j * n_padded + i; }
  int checker(int j) const { return 2 * n_padded * m + j; }
  int propagator(int i, int j) const { return 2 * n_padded * m + m + j * rho + i; }
  int vertex_count() const { return 2 * n_padded * m + m + std::max(m - 1, 0) * rho; }
};

struct MaxCutLayout {
  int nv, me;

  int original(int v) const { return v; }
  int subdivider(int e) const { return nv + e; }
  int leaf(int v, int t) const { return nv + me + 3 * v + t; }
  int vertex_count() const { return 4 * nv + me; }
};

struct McisChecker {
  int t[4];
  std::vector<int> T[4];  // first entry is the designated a_j/b_j contact
  int a, b, c;
};

struct McisLayout {
  int p0 = 0, p1 = 1;
  std::vector<std::vector<std::vector<int>>> path;  // [i][j][l], 0-based
  std::vector<std::vector<int>> propagator;         // [i][j]
  std::vector<McisChecker> checkers;                // [j]
  int palette_heavy_first = 0;                      // contiguous run of A ids
};

}  // namespace detail

struct ReductionArtifact {
  SourceKind kind;
  WeightedGraph graph;
  Int threshold;
  TreeDecomposition companion_pd;
  std::vector<std::string> vertex_roles;
  std::map<std::string, Int> metadata;

  // Source instance (only the fields for `kind` are meaningful).
  PartitionInstance partition;
  WeightedGraph maxcut_source;
  Int maxcut_k = 0;
  SetSplittingInstance setsplitting;
  int delta = 1;
  MCISInstance mcis;
  detail::McisLayout mcis_layout;
};

struct SourceWitness {
  std::vector<int> subset;     // Partition variants: chosen indices (0-based)
  Cut assignment;              // MaxCut: source cut; SetSplitting: element sides
  std::vector<int> selection;  // multicolored independent set, 1-based per class
};

// ---------------------------------------------------------------------------
// Subdivided star: both edges of the i-th center-to-leaf path carry x_i.
// A stable cut of weight 3B exists iff the values split into two halves.

inline ReductionArtifact partition_to_tree(const PartitionInstance& p) {
  p.check();
  if (p.total() % 2 != 0) throw InputError("partition total is odd: trivial NO instance");
  const int n = static_cast<int>(p.values.size());
  ReductionArtifact art;
  art.kind = SourceKind::Partition;
  art.partition = p;
  art.graph = WeightedGraph(2 * n + 1);
  art.vertex_roles.assign(2 * n + 1, "");
  art.vertex_roles[0] = "center";
  for (int i = 0; i < n; ++i) {
    art.vertex_roles[1 + i] = "middle";
    art.vertex_roles[1 + n + i] = "stabilizer-leaf";
    art.graph.add_edge(0, 1 + i, p.values[i]);
    art.graph.add_edge(1 + i, 1 + n + i, p.values[i]);
  }
  Int b = p.total() / 2;
  art.threshold = 3 * b;
  art.metadata["B"] = b;
  for (int i = 0; i < n; ++i) {
    art.companion_pd.bags.push_back({0, 1 + i, 1 + n + i});
    if (i > 0) art.companion_pd.tree_edges.push_back({i - 1, i});
  }
  art.companion_pd.normalize();
  return art;
}

// ---------------------------------------------------------------------------
// K_{2,n}: right vertex i is joined to both left vertices with weight x_i.

inline ReductionArtifact partition_to_k2n(const PartitionInstance& p) {
  p.check();
  if (p.total() % 2 != 0) throw InputError("partition total is odd: trivial NO instance");
  const int n = static_cast<int>(p.values.size());
  ReductionArtifact art;
  art.kind = SourceKind::PartitionK2N;
  art.partition = p;
  art.graph = WeightedGraph(n + 2);
  art.vertex_roles.assign(n + 2, "right");
  art.vertex_roles[0] = art.vertex_roles[1] = "left";
  for (int i = 0; i < n; ++i) {
    art.graph.add_edge(0, 2 + i, p.values[i]);
    art.graph.add_edge(1, 2 + i, p.values[i]);
  }
  Int b = p.total() / 2;
  art.threshold = 2 * b;
  art.metadata["B"] = b;
  for (int i = 0; i < n; ++i) {
    art.companion_pd.bags.push_back({0, 1, 2 + i});
    if (i > 0) art.companion_pd.tree_edges.push_back({i - 1, i});
  }
  art.companion_pd.normalize();
  return art;
}

// ---------------------------------------------------------------------------
// Max Cut on subcubic graphs -> unweighted stable cut: subdivide every edge
// and attach three leaves per original vertex; cut >= k in the source iff
// stable cut <= 3|V| + 2|E| - k in the target.

inline ReductionArtifact maxcut_to_unweighted(const WeightedGraph& g, Int k) {
  if (!g.unit_weights()) throw InputError("source must have unit weights");
  if (g.max_degree() > 3) throw InputError("source must have maximum degree 3");
  detail::MaxCutLayout lay{g.vertex_count(), g.edge_count()};
  ReductionArtifact art;
  art.kind = SourceKind::MaxCut;
  art.maxcut_source = g;
  art.maxcut_k = k;
  art.graph = WeightedGraph(lay.vertex_count());
  art.vertex_roles.assign(lay.vertex_count(), "");
  for (int v = 0; v < lay.nv; ++v) {
    art.vertex_roles[lay.original(v)] = "source";
    for (int t = 0; t < 3; ++t) {
      art.vertex_roles[lay.leaf(v, t)] = "stabilizer-leaf";
      art.graph.add_edge(v, lay.leaf(v, t));
    }
  }
  for (int e = 0; e < lay.me; ++e) {
    art.vertex_roles[lay.subdivider(e)] = "subdivider";
    art.graph.add_edge(g.edge(e).u, lay.subdivider(e));
    art.graph.add_edge(g.edge(e).v, lay.subdivider(e));
  }
  art.threshold = 3 * Int(lay.nv) + 2 * Int(lay.me) - k;
  if (art.threshold < 0) throw InputError("cut target k exceeds the threshold range");

  // Companion path decomposition: a left-to-right sweep over the source
  // vertices, with one spliced bag per leaf and per subdivider.
  TreeDecomposition& pd = art.companion_pd;
  for (int i = 0; i < lay.nv; ++i) {
    std::vector<int> bag{i};
    for (int u = 0; u < i; ++u)
      for (int w : g.neighbors(u))
        if (w >= i) {
          bag.push_back(u);
          break;
        }
    pd.bags.push_back(bag);
    for (int t = 0; t < 3; ++t) {
      std::vector<int> extra = bag;
      extra.push_back(lay.leaf(i, t));
      pd.bags.push_back(std::move(extra));
    }
    for (int e = 0; e < lay.me; ++e)
      if (std::max(g.edge(e).u, g.edge(e).v) == i) {
        std::vector<int> extra = bag;
        extra.push_back(lay.subdivider(e));
        pd.bags.push_back(std::move(extra));
      }
  }
  if (pd.bags.empty()) pd.bags.push_back({});
  for (std::size_t i = 1; i < pd.bags.size(); ++i)
    pd.tree_edges.push_back({static_cast<int>(i) - 1, static_cast<int>(i)});
  pd.normalize();
  return art;
}

// ---------------------------------------------------------------------------
// Set Splitting -> weighted stable cut with small degree and pathwidth:
// m element-set columns tied together by exponential-weight propagators.

inline ReductionArtifact setsplitting_to_stablecut(const SetSplittingInstance& h, int delta) {
  h.check();
  if (delta < 1) throw InputError("delta must be at least 1");
  detail::SsLayout lay(h, delta);
  ReductionArtifact art;
  art.kind = SourceKind::SetSplitting;
  art.setsplitting = h;
  art.delta = delta;
  art.graph = WeightedGraph(lay.vertex_count());
  art.vertex_roles.assign(lay.vertex_count(), "");
  Int lw = 0, pw = 0, e2 = 0, e3 = 0;
  for (int j = 0; j < lay.m; ++j) {
    for (int i = 0; i < lay.n_padded; ++i) {
      art.vertex_roles[lay.element(i, j)] = i < h.element_count ? "element" : "dummy-element";
      art.vertex_roles[lay.leaf(i, j)] = "stabilizer-leaf";
      Int w = Int(3) << (i % delta);
      art.graph.add_edge(lay.element(i, j), lay.leaf(i, j), w);
      lw += w;
    }
    art.vertex_roles[lay.checker(j)] = "checker";
    for (int el : h.sets[j]) art.graph.add_edge(lay.checker(j), lay.element(el, j));
    (h.sets[j].size() == 2 ? e2 : e3) += 1;
  }
  for (int j = 0; j + 1 < lay.m; ++j)
    for (int i = 0; i < lay.rho; ++i) {
      art.vertex_roles[lay.propagator(i, j)] = "propagator";
      for (int l = 0; l < delta; ++l) {
        Int w = Int(1) << l;
        art.graph.add_edge(lay.propagator(i, j), lay.element(i * delta + l, j), w);
        art.graph.add_edge(lay.propagator(i, j), lay.element(i * delta + l, j + 1), w);
        pw += 2 * w;
      }
    }
  art.threshold = lw + pw / 2 + e2 + 2 * e3;
  art.metadata["L_w"] = lw;
  art.metadata["P"] = pw;
  art.metadata["e2"] = e2;
  art.metadata["e3"] = e3;
  art.metadata["rho"] = lay.rho;
  art.metadata["delta"] = delta;
  art.metadata["n_padded"] = lay.n_padded;
  art.metadata["Delta"] = 2 * delta;

  // Companion path decomposition, one block per column: the checker and all
  // propagators touching the column ride in every bag of the block.
  TreeDecomposition& pd = art.companion_pd;
  for (int j = 0; j < lay.m; ++j) {
    std::vector<int> common{lay.checker(j)};
    for (int i = 0; i < lay.rho; ++i) {
      if (j > 0) common.push_back(lay.propagator(i, j - 1));
      if (j + 1 < lay.m) common.push_back(lay.propagator(i, j));
    }
    for (int i = 0; i < lay.n_padded; ++i) {
      std::vector<int> bag = common;
      bag.push_back(lay.element(i, j));
      bag.push_back(lay.leaf(i, j));
      pd.bags.push_back(std::move(bag));
    }
  }
  if (pd.bags.empty()) pd.bags.push_back({});
  for (std::size_t i = 1; i < pd.bags.size(); ++i)
    pd.tree_edges.push_back({static_cast<int>(i) - 1, static_cast<int>(i)});
  pd.normalize();
  return art;
}

// ---------------------------------------------------------------------------
// Multicolored Independent Set -> unweighted stable cut of pathwidth O(k).

inline Int mcis_default_heavy(const MCISInstance& mc) {
  Int k = mc.k, n = mc.n, m = static_cast<Int>(mc.edges.size());
  Int a = k * m + k * std::max(Int(m - 1), Int(0)) * (n + 1) + m * (2 * n + 6) + 1;
  if (mc.edges.empty() && a % 2 != 0) a += 1;  // palette balance needs A even
  if (a < 2) a = 2;
  return a;
}

inline ReductionArtifact mcis_to_unweighted(const MCISInstance& mc,
                                            std::optional<Int> heavy_A = std::nullopt) {
  mc.check();
  Int a_big = heavy_A.value_or(mcis_default_heavy(mc));
  if (a_big < 2 || (mc.edges.empty() && a_big % 2 != 0))
    throw InputError("heavy edge size must be >= 2 (and even when there are no edges)");
  if (a_big > 1000000) throw ResourceError("heavy edge size too large to materialize");
  const int A = static_cast<int>(a_big);
  const int k = mc.k, n = mc.n, m = static_cast<int>(mc.edges.size());

  ReductionArtifact art;
  art.kind = SourceKind::MCIS;
  art.mcis = mc;
  detail::McisLayout& lay = art.mcis_layout;
  std::vector<std::pair<int, int>> edges;
  int next = 0;
  auto fresh = [&](const char* role) {
    art.vertex_roles.push_back(role);
    return next++;
  };
  auto add_leaves = [&](int v, int count) {
    for (int t = 0; t < count; ++t) edges.push_back({v, fresh("stabilizer-leaf")});
  };
  auto heavy = [&](int u, int v, const char* role = "heavy-internal") {
    int first = next;
    for (int t = 0; t < A; ++t) {
      int x = fresh(role);
      edges.push_back({u, x});
      edges.push_back({v, x});
    }
    return first;
  };

  int p0 = fresh("palette"), p1 = fresh("palette");
  lay.p0 = p0;
  lay.p1 = p1;
  lay.palette_heavy_first = heavy(p0, p1);
  lay.path.assign(k, std::vector<std::vector<int>>(m));
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < m; ++j) {
      auto& path = lay.path[i][j];
      for (int l = 0; l <= n; ++l) {
        path.push_back(fresh("selector"));
        if (l > 0) edges.push_back({path[l - 1], path[l]});
      }
      bool odd = (j + 1) % 2 == 1;
      heavy(path[0], odd ? p1 : p0);
      heavy(path[n], odd ? p0 : p1);
      add_leaves(path[0], A + 5);
      add_leaves(path[n], A + 5);
      for (int l = 1; l < n; ++l) add_leaves(path[l], 5);
    }
  lay.propagator.assign(k, {});
  for (int i = 0; i < k; ++i)
    for (int j = 0; j + 1 < m; ++j) {
      int p = fresh("propagator");
      lay.propagator[i].push_back(p);
      for (int l = 0; l <= n; ++l) {
        edges.push_back({p, lay.path[i][j][l]});
        edges.push_back({p, lay.path[i][j + 1][l]});
      }
    }
  for (int j = 0; j < m; ++j) {
    auto [ep1, ep2] = mc.edges[j];
    auto [i1, j1] = ep1;
    auto [i2, j2] = ep2;
    detail::McisChecker ch;
    int sizes[4] = {j1, n + 1 - j1, j2, n + 1 - j2};
    const std::vector<int>* paths[4] = {&lay.path[i1 - 1][j], &lay.path[i1 - 1][j],
                                        &lay.path[i2 - 1][j], &lay.path[i2 - 1][j]};
    int lo[4] = {0, j1, 0, j2};
    for (int x = 0; x < 4; ++x) {
      ch.t[x] = fresh("checker");
      for (int l = lo[x]; l < lo[x] + sizes[x]; ++l) edges.push_back({ch.t[x], (*paths[x])[l]});
      for (int y = 0; y < sizes[x]; ++y) {
        int tv = fresh("T-set");
        ch.T[x].push_back(tv);
        edges.push_back({ch.t[x], tv});
        add_leaves(tv, 2);
      }
    }
    ch.a = fresh("a");
    ch.b = fresh("b");
    ch.c = fresh("c");
    edges.push_back({ch.c, ch.a});
    edges.push_back({ch.c, ch.b});
    edges.push_back({ch.a, ch.T[0].front()});
    edges.push_back({ch.a, ch.T[2].front()});
    edges.push_back({ch.b, ch.T[1].front()});
    edges.push_back({ch.b, ch.T[3].front()});
    lay.checkers.push_back(std::move(ch));
  }

  art.graph = WeightedGraph(next);
  for (auto [u, v] : edges) art.graph.add_edge(u, v);
  Int l1 = 0, l2 = 0;
  for (int v = 0; v < next; ++v) {
    if (art.vertex_roles[v] == "stabilizer-leaf") ++l1;
    if (art.vertex_roles[v] == "heavy-internal") ++l2;
  }
  Int km = Int(k) * m, prop_cut = Int(k) * std::max(m - 1, 0) * (n + 1);
  art.threshold = l1 + l2 + km + prop_cut + Int(m) * (2 * n + 6);
  art.metadata["A"] = A;
  art.metadata["L1"] = l1;
  art.metadata["L2"] = l2;

  // Companion path decomposition: palette everywhere; per column, the two
  // propagator layers plus the checker's t/a/b vertices ride in every bag.
  TreeDecomposition& pd = art.companion_pd;
  auto leaf_and_heavy_bags = [&](const std::vector<int>& common, int v) {
    // One spliced bag per leaf or heavy internal attached to v.
    for (int e : art.graph.incident(v)) {
      int u = art.graph.other_endpoint(e, v);
      const std::string& role = art.vertex_roles[u];
      if (role == "stabilizer-leaf" || role == "heavy-internal") {
        std::vector<int> bag = common;
        bag.push_back(v);
        bag.push_back(u);
        pd.bags.push_back(std::move(bag));
      }
    }
  };
  for (int t = 0; t < A; ++t) pd.bags.push_back({p0, p1, lay.palette_heavy_first + t});
  for (int j = 0; j < m; ++j) {
    std::vector<int> common{p0, p1};
    for (int i = 0; i < k; ++i) {
      if (j > 0) common.push_back(lay.propagator[i][j - 1]);
      if (j + 1 < m) common.push_back(lay.propagator[i][j]);
    }
    const detail::McisChecker& ch = lay.checkers[j];
    for (int x = 0; x < 4; ++x) common.push_back(ch.t[x]);
    common.push_back(ch.a);
    common.push_back(ch.b);
    for (int i = 0; i < k; ++i) {
      const auto& path = lay.path[i][j];
      for (int l = 0; l <= n; ++l) {
        leaf_and_heavy_bags(common, path[l]);
        if (l + 1 <= n) {
          std::vector<int> bag = common;
          bag.push_back(path[l]);
          bag.push_back(path[l + 1]);
          pd.bags.push_back(std::move(bag));
        }
      }
    }
    {
      std::vector<int> bag = common;
      bag.push_back(ch.c);
      pd.bags.push_back(std::move(bag));
    }
    for (int x = 0; x < 4; ++x)
      for (int tv : ch.T[x]) leaf_and_heavy_bags(common, tv);
  }
  for (std::size_t i = 1; i < pd.bags.size(); ++i)
    pd.tree_edges.push_back({static_cast<int>(i) - 1, static_cast<int>(i)});
  pd.normalize();
  return art;
}

// ---------------------------------------------------------------------------
// Witness lifting: turn a source witness into a stable cut of the target
// whose weight is exactly the threshold (for Max Cut: exactly the threshold
// when the witness cut has size exactly k).

namespace detail {

inline void lift_generic_attachments(const ReductionArtifact& art, Cut& c) {
  const WeightedGraph& g = art.graph;
  for (int v = 0; v < g.vertex_count(); ++v) {
    const std::string& role = art.vertex_roles[v];
    if (role == "stabilizer-leaf") {
      c[v] = c[g.other_endpoint(g.incident(v).front(), v)] ^ 1;
    } else if (role == "heavy-internal") {
      int x = g.other_endpoint(g.incident(v)[0], v);
      int y = g.other_endpoint(g.incident(v)[1], v);
      const detail::McisLayout& lay = art.mcis_layout;
      bool xp = x == lay.p0 || x == lay.p1, yp = y == lay.p0 || y == lay.p1;
      if (xp && yp)
        c[v] = v % 2;  // the palette-palette bridge splits evenly
      else
        c[v] = (xp ? x : y) == lay.p0 ? 1 : 0;
    }
  }
}

}  // namespace detail

inline Cut lift_witness(const ReductionArtifact& art, const SourceWitness& w) {
  Cut c(art.graph.vertex_count(), 0);
  switch (art.kind) {
    case SourceKind::Partition: {
      const int n = static_cast<int>(art.partition.values.size());
      Int sum = 0;
      for (int i : w.subset) sum += art.partition.values.at(i);
      if (2 * sum != art.partition.total()) throw InputError("subset does not split the values");
      for (int i : w.subset) c[1 + i] = 1;
      for (int i = 0; i < n; ++i) c[1 + n + i] = c[1 + i] ^ 1;
      break;
    }
    case SourceKind::PartitionK2N: {
      Int sum = 0;
      for (int i : w.subset) sum += art.partition.values.at(i);
      if (2 * sum != art.partition.total()) throw InputError("subset does not split the values");
      c[1] = 1;
      for (std::size_t i = 0; i < art.partition.values.size(); ++i) c[2 + i] = 1;
      for (int i : w.subset) c[2 + i] = 0;
      break;
    }
    case SourceKind::MaxCut: {
      const WeightedGraph& src = art.maxcut_source;
      check_cut(src, w.assignment);
      detail::MaxCutLayout lay{src.vertex_count(), src.edge_count()};
      for (int v = 0; v < lay.nv; ++v) {
        c[v] = w.assignment[v];
        for (int t = 0; t < 3; ++t) c[lay.leaf(v, t)] = c[v] ^ 1;
      }
      for (int e = 0; e < lay.me; ++e)
        c[lay.subdivider(e)] = w.assignment[std::min(src.edge(e).u, src.edge(e).v)] ^ 1;
      return c;
    }
    case SourceKind::SetSplitting: {
      const SetSplittingInstance& h = art.setsplitting;
      if (static_cast<int>(w.assignment.size()) != h.element_count)
        throw InputError("splitting witness must assign every element");
      detail::SsLayout lay(h, art.delta);
      for (const auto& s : h.sets) {
        bool has0 = false, has1 = false;
        for (int el : s) (w.assignment[el] ? has1 : has0) = true;
        if (!has0 || !has1) throw InputError("witness does not split every set");
      }
      for (int j = 0; j < lay.m; ++j) {
        for (int i = 0; i < lay.n_padded; ++i) {
          std::uint8_t base = i < h.element_count ? w.assignment[i] : 0;
          c[lay.element(i, j)] = j % 2 == 0 ? base : base ^ 1;
          c[lay.leaf(i, j)] = c[lay.element(i, j)] ^ 1;
        }
        // Checker joins the side where it keeps exactly one neighbor.
        int zeros = 0;
        for (int el : h.sets[j]) zeros += c[lay.element(el, j)] == 0;
        c[lay.checker(j)] = zeros == 1 ? 0 : 1;
      }
      // Propagators are balanced either way; pin them to side 0.
      break;
    }
    case SourceKind::MCIS: {
      const MCISInstance& mc = art.mcis;
      if (static_cast<int>(w.selection.size()) != mc.k)
        throw InputError("selection must pick one index per class");
      for (int s : w.selection)
        if (s < 1 || s > mc.n) throw InputError("selection index out of range");
      for (const auto& [ep1, ep2] : mc.edges)
        if (w.selection[ep1.first - 1] == ep1.second && w.selection[ep2.first - 1] == ep2.second)
          throw InputError("selection is not an independent set");
      const detail::McisLayout& lay = art.mcis_layout;
      c[lay.p0] = 0;
      c[lay.p1] = 1;
      const int n = mc.n, m = static_cast<int>(mc.edges.size());
      for (int i = 0; i < mc.k; ++i)
        for (int j = 0; j < m; ++j) {
          std::uint8_t first = (j + 1) % 2 == 1 ? 0 : 1;  // opposite the heavy partner
          for (int l = 0; l <= n; ++l)
            c[lay.path[i][j][l]] = l < w.selection[i] ? first : first ^ 1;
        }
      for (int j = 0; j < m; ++j) {
        const detail::McisChecker& ch = lay.checkers[j];
        auto [ep1, ep2] = mc.edges[j];
        const std::vector<int>* paths[4] = {
            &lay.path[ep1.first - 1][j], &lay.path[ep1.first - 1][j],
            &lay.path[ep2.first - 1][j], &lay.path[ep2.first - 1][j]};
        int lo[4] = {0, ep1.second, 0, ep2.second};
        int sizes[4] = {ep1.second, n + 1 - ep1.second, ep2.second, n + 1 - ep2.second};
        int need[4];  // zeros required inside T[x] to balance t[x]
        for (int x = 0; x < 4; ++x) {
          int q = 0;
          for (int l = lo[x]; l < lo[x] + sizes[x]; ++l) q += c[(*paths[x])[l]] == 0;
          need[x] = sizes[x] - q;
        }
        // Search the designated-contact sides and a/b/c sides for a stable
        // completion cutting exactly four of the six a/b/c edges.
        bool found = false;
        for (int mask = 0; mask < 128 && !found; ++mask) {
          int d[4] = {mask & 1, (mask >> 1) & 1, (mask >> 2) & 1, (mask >> 3) & 1};
          int sa = (mask >> 4) & 1, sb = (mask >> 5) & 1, sc = (mask >> 6) & 1;
          bool ok = true;
          for (int x = 0; x < 4 && ok; ++x) {
            int rest = need[x] - (d[x] == 0);  // zeros among non-designated
            ok = rest >= 0 && rest <= sizes[x] - 1;
          }
          if (!ok) continue;
          int cut_a = (sa != sc) + (sa != d[0]) + (sa != d[2]);
          int cut_b = (sb != sc) + (sb != d[1]) + (sb != d[3]);
          int cut_c = (sc != sa) + (sc != sb);
          if (cut_a < 2 || cut_b < 2 || cut_c < 1) continue;
          if ((sa != d[0]) + (sa != d[2]) + (sb != d[1]) + (sb != d[3]) + (sa != sc) +
                  (sb != sc) !=
              4)
            continue;
          for (int x = 0; x < 4; ++x) {
            c[ch.T[x][0]] = d[x];
            int rest = need[x] - (d[x] == 0);
            for (int y = 1; y < sizes[x]; ++y) c[ch.T[x][y]] = y - 1 < rest ? 0 : 1;
            c[ch.t[x]] = 0;  // balanced, either side is stable
          }
          c[ch.a] = sa;
          c[ch.b] = sb;
          c[ch.c] = sc;
          found = true;
        }
        if (!found) throw InputError("no stable checker completion for the given selection");
      }
      break;
    }
  }
  detail::lift_generic_attachments(art, c);
  return c;
}

// ---------------------------------------------------------------------------
// Witness extraction: decode a stable cut of weight <= threshold back to a
// source solution and verify it.

inline SourceWitness extract_witness(const ReductionArtifact& art, const Cut& c) {
  check_cut(art.graph, c);
  if (!is_stable(art.graph, c)) throw InputError("extraction refused: cut is not stable");
  if (cut_weight(art.graph, c) > art.threshold)
    throw InputError("extraction refused: cut exceeds the threshold");
  SourceWitness w;
  switch (art.kind) {
    case SourceKind::Partition: {
      Int sum = 0;
      for (std::size_t i = 0; i < art.partition.values.size(); ++i)
        if (c[1 + i] != c[0]) {
          w.subset.push_back(static_cast<int>(i));
          sum += art.partition.values[i];
        }
      if (2 * sum != art.partition.total())
        throw InputError("extraction failed: decoded subset does not split the values");
      break;
    }
    case SourceKind::PartitionK2N: {
      Int sum = 0;
      for (std::size_t i = 0; i < art.partition.values.size(); ++i)
        if (c[2 + i] != c[1]) {
          w.subset.push_back(static_cast<int>(i));
          sum += art.partition.values[i];
        }
      if (2 * sum != art.partition.total())
        throw InputError("extraction failed: decoded subset does not split the values");
      break;
    }
    case SourceKind::MaxCut: {
      const WeightedGraph& src = art.maxcut_source;
      w.assignment.assign(c.begin(), c.begin() + src.vertex_count());
      Int cut = cut_weight(src, w.assignment);
      if (cut < art.maxcut_k)
        throw InputError("extraction failed: decoded cut smaller than the target");
      break;
    }
    case SourceKind::SetSplitting: {
      const SetSplittingInstance& h = art.setsplitting;
      detail::SsLayout lay(h, art.delta);
      if (lay.m == 0) throw InputError("nothing to extract from an instance with no sets");
      w.assignment.resize(h.element_count);
      for (int i = 0; i < h.element_count; ++i) w.assignment[i] = c[lay.element(i, 0)];
      for (const auto& s : h.sets) {
        bool has0 = false, has1 = false;
        for (int el : s) (w.assignment[el] ? has1 : has0) = true;
        if (!has0 || !has1)
          throw InputError("extraction failed: decoded partition does not split every set");
      }
      break;
    }
    case SourceKind::MCIS: {
      const detail::McisLayout& lay = art.mcis_layout;
      const MCISInstance& mc = art.mcis;
      if (mc.edges.empty())
        throw InputError("nothing to extract from an instance with no edges");
      for (int i = 0; i < mc.k; ++i) {
        int count = 0;
        for (int l = 0; l <= mc.n; ++l) count += c[lay.path[i][0][l]] == c[lay.path[i][0][0]];
        if (count < 1 || count > mc.n)
          throw InputError("extraction failed: selector cut is degenerate");
        w.selection.push_back(count);
      }
      for (const auto& [ep1, ep2] : mc.edges)
        if (w.selection[ep1.first - 1] == ep1.second && w.selection[ep2.first - 1] == ep2.second)
          throw InputError("extraction failed: decoded selection is not independent");
      break;
    }
  }
  return w;
}

}  // namespace msc
