#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <vector>

#include "msc/exact_solver.hpp"
#include "msc/extended.hpp"
#include "msc/graph.hpp"
#include "msc/tree_decomposition.hpp"

namespace msc {

struct ApproxCut {
  Cut cut;
  Int weight;
};

// Optional capture of the rounded DP tables for invariant testing.
struct RoundedTraceSignature {
  std::vector<std::uint8_t> sides;
  std::vector<long> exponents;  // -1 marks an exact zero counter
  std::vector<Rational> approx_counters;
  Int value;
};

struct RoundedTraceNode {
  std::vector<int> bag;
  std::vector<RoundedTraceSignature> signatures;
};

struct RoundedTrace {
  Rational delta;
  std::vector<RoundedTraceNode> nodes;
};

namespace detail {

// Exact powers of (1+delta) with an incremental cache. Counter values are
// stored as exponents; arithmetic re-rounds sums up to the next power.
class PowerCalc {
 public:
  explicit PowerCalc(const Rational& delta) : base_(delta + 1) { powers_.push_back(Rational(1)); }

  const Rational& power(long x) {
    while (static_cast<long>(powers_.size()) <= x) powers_.push_back(powers_.back() * base_);
    return powers_[x];
  }

  /// Least x >= 0 with (1+delta)^x >= val; requires val >= 1.
  long ceil_log(const Rational& val) {
    while (powers_.back() < val) powers_.push_back(powers_.back() * base_);
    auto it = std::lower_bound(powers_.begin(), powers_.end(), val);
    return static_cast<long>(it - powers_.begin());
  }

  Rational value_of(long exponent) { return exponent < 0 ? Rational(0) : power(exponent); }

 private:
  Rational base_;
  std::vector<Rational> powers_;
};

struct RSig {
  std::vector<std::uint8_t> sides;
  std::vector<long> exponents;

  bool operator<(const RSig& o) const {
    if (sides != o.sides) return sides < o.sides;
    return exponents < o.exponents;
  }
};

}  // namespace detail

/// Rounded signature DP: same shape as the exact signature DP, but each
/// same-side counter is stored as the least power of (1+delta) at least its
/// value, with delta = eps / (5 * height). A candidate is discarded at a
/// Forget node only when the over-approximated same-side weight already
/// rules out (1+2 eps)-stability, so the returned cut is (1+2 eps)-stable
/// and weighs no more than the best (1+eps)-stable cut.
inline ApproxCut solve_rounded(const ExtendedInstance& ext, const NiceDecomposition& nd,
                               const Rational& eps, RoundedTrace* trace = nullptr) {
  if (eps <= 0 || eps > Rational(1, 2)) throw InputError("eps must lie in (0, 1/2]");
  ext.check();
  const WeightedGraph& g = ext.graph;
  ValidationResult vr = validate_nice(g, nd);
  if (!vr.ok()) throw InputError("invalid nice decomposition: " + vr.violations.front());

  long h = std::max(height(nd), 1);
  Rational delta = eps / (5 * h);
  detail::PowerCalc pc(delta);
  const Rational rho2 = Rational(1) + 2 * eps;  // target stability factor
  std::vector<Int> ds(g.vertex_count());
  for (int v = 0; v < g.vertex_count(); ++v) ds[v] = ext.stability_degree(v);

  struct Entry {
    Int value;
    const detail::RSig* child1 = nullptr;
    const detail::RSig* child2 = nullptr;
  };
  using Table = std::map<detail::RSig, Entry>;
  const int nn = nd.node_count();
  std::vector<Table> tables(nn);
  if (trace) {
    trace->delta = delta;
    trace->nodes.assign(nn, {});
  }

  for (int t = 0; t < nn; ++t) {
    const NiceNode& node = nd.nodes[t];
    Table& table = tables[t];
    switch (node.type) {
      case NodeType::Leaf:
        table.emplace(detail::RSig{}, Entry{Int(0)});
        break;
      case NodeType::Introduce: {
        const Table& ct = tables[node.children[0]];
        int pos = detail::bag_position(node.bag, node.vertex);
        for (const auto& [ck, ce] : ct)
          for (std::uint8_t side : {std::uint8_t{0}, std::uint8_t{1}}) {
            detail::RSig k = ck;
            k.sides.insert(k.sides.begin() + pos, side);
            k.exponents.insert(k.exponents.begin() + pos, -1);
            table.emplace(std::move(k), Entry{ce.value, &ck});
          }
        break;
      }
      case NodeType::Forget: {
        const int v = node.vertex;
        const Table& ct = tables[node.children[0]];
        int pos = detail::bag_position(nd.nodes[node.children[0]].bag, v);
        struct Nbr {
          int pos;
          Int w;     // cut weight
          Int s_v;   // stability weight at v
          Int s_u;   // stability weight at the bag neighbor
        };
        std::vector<Nbr> nbr;
        for (int e : g.incident(v)) {
          int u = g.other_endpoint(e, v);
          int p = detail::bag_position(node.bag, u);
          if (p >= 0) nbr.push_back({p, g.edge(e).weight, ext.s_at(e, v), ext.s_at(e, u)});
        }
        for (const auto& [ck, ce] : ct) {
          std::uint8_t vside = ck.sides[pos];
          Rational approx_same = pc.value_of(ck.exponents[pos]);
          detail::RSig k;
          k.sides = ck.sides;
          k.sides.erase(k.sides.begin() + pos);
          k.exponents = ck.exponents;
          k.exponents.erase(k.exponents.begin() + pos);
          Int value = ce.value;
          for (const Nbr& nb : nbr) {
            if (k.sides[nb.pos] == vside) {
              approx_same += nb.s_v;
              if (nb.s_u > 0)
                k.exponents[nb.pos] = pc.ceil_log(pc.value_of(k.exponents[nb.pos]) + nb.s_u);
            } else {
              value += nb.w;
            }
          }
          // Keep iff the under-approximated crossing weight still meets the
          // (1+2 eps) stability threshold: d_s - approx_same >= d_s/(2 rho2).
          if ((Rational(ds[v]) - approx_same) * 2 * rho2 < Rational(ds[v])) continue;
          auto [it, inserted] = table.emplace(std::move(k), Entry{value, &ck});
          if (!inserted && value < it->second.value) it->second = Entry{value, &ck};
        }
        break;
      }
      case NodeType::Join: {
        const Table& t1 = tables[node.children[0]];
        const Table& t2 = tables[node.children[1]];
        for (const auto& [k1, e1] : t1) {
          auto it2 = t2.lower_bound(detail::RSig{k1.sides, {}});
          for (; it2 != t2.end() && it2->first.sides == k1.sides; ++it2) {
            detail::RSig k;
            k.sides = k1.sides;
            k.exponents.resize(k.sides.size());
            for (std::size_t i = 0; i < k.exponents.size(); ++i) {
              long a = k1.exponents[i], b = it2->first.exponents[i];
              if (a < 0 && b < 0)
                k.exponents[i] = -1;
              else
                k.exponents[i] = pc.ceil_log(pc.value_of(a) + pc.value_of(b));
            }
            Int value = e1.value + it2->second.value;
            Entry e{value, &k1, &it2->first};
            auto [it3, inserted] = table.emplace(std::move(k), e);
            if (!inserted && value < it3->second.value) it3->second = e;
          }
        }
        break;
      }
    }
    if (trace) {
      RoundedTraceNode& tn = trace->nodes[t];
      tn.bag = node.bag;
      for (const auto& [k, e] : table) {
        RoundedTraceSignature sig{k.sides, k.exponents, {}, e.value};
        for (long x : k.exponents) sig.approx_counters.push_back(pc.value_of(x));
        tn.signatures.push_back(std::move(sig));
      }
    }
  }

  const Table& root_table = tables[nd.root];
  if (root_table.empty()) throw ResourceError("rounded DP eliminated all candidates");
  const detail::RSig* best = nullptr;
  Int best_value = 0;
  for (const auto& [k, e] : root_table)
    if (!best || e.value < best_value) {
      best = &k;
      best_value = e.value;
    }

  ApproxCut res;
  res.weight = best_value;
  res.cut.assign(g.vertex_count(), 0);
  std::vector<char> assigned(g.vertex_count(), 0);
  std::vector<std::pair<int, const detail::RSig*>> stack{{nd.root, best}};
  while (!stack.empty()) {
    auto [t, key] = stack.back();
    stack.pop_back();
    const NiceNode& node = nd.nodes[t];
    for (std::size_t i = 0; i < node.bag.size(); ++i)
      if (!assigned[node.bag[i]]) {
        assigned[node.bag[i]] = 1;
        res.cut[node.bag[i]] = key->sides[i];
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

/// Almost-stable approximation: rescale stability weights, run the rounded
/// DP with eps/4, and verify the guarantee exactly against the original
/// weights; on tiny instances (or if verification fails) fall back to the
/// exact DP. The returned cut has every vertex within a (1-eps) factor of
/// half its weighted degree crossing, at weight <= the minimum stable cut.
inline ApproxCut solve_approx(const WeightedGraph& g, const NiceDecomposition& nd,
                              const Rational& eps) {
  if (eps <= 0 || eps > Rational(1, 2)) throw InputError("eps must lie in (0, 1/2]");
  ValidationResult vr = validate_nice(g, nd);
  if (!vr.ok()) throw InputError("invalid nice decomposition: " + vr.violations.front());

  const int n = g.vertex_count();
  Rational epsp = eps / 4;
  // The rescaling distorts per-vertex crossing fractions by about 1 +- 1/n,
  // so the pipeline is only trustworthy once that slack fits inside eps.
  bool gate = n >= 2 && epsp >= Rational(1, n - 1) &&
              (Rational(1) + 2 * epsp) * (Rational(1) + Rational(1, n)) <=
                  Rational(1) / (Rational(1) - eps);
  if (gate) {
    ExtendedInstance rescaled = rescale_stability(extend_from_plain(g));
    ApproxCut r = solve_rounded(rescaled, nd, epsp);
    bool ok = true;
    for (int v = 0; v < n && ok; ++v) {
      Int crossing = 0;
      for (int e : g.incident(v)) {
        const Edge& ed = g.edge(e);
        if (r.cut[ed.u] != r.cut[ed.v]) crossing += ed.weight;
      }
      ok = Rational(2 * crossing) >= (Rational(1) - eps) * Rational(g.weighted_degree(v));
    }
    if (ok) return r;
  }
  OptimalCut exact = solve_pseudo(g, nd);
  return ApproxCut{std::move(exact.cut), std::move(exact.weight)};
}

}  // namespace msc
