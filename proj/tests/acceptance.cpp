// Acceptance gate: one criterion per invocation (argv[1] in 1..10), one
// pass/fail line each. Exit 0 on pass, 1 on fail.

#include <atomic>
#include <cstdlib>
#include <iostream>
#include <mutex>
#include <sstream>
#include <thread>
#include <vector>

#include "helpers.hpp"
#include "msc/msc.hpp"

namespace {

using namespace msc;

struct Outcome {
  bool pass = true;
  std::string detail;
};

class Failures {
 public:
  void add(const std::string& msg) {
    std::lock_guard<std::mutex> lock(mu_);
    if (count_++ == 0) first_ = msg;
  }
  Outcome outcome() const {
    if (count_ == 0) return {};
    std::ostringstream ss;
    ss << count_ << " violation(s); first: " << first_;
    return {false, ss.str()};
  }

 private:
  mutable std::mutex mu_;
  int count_ = 0;
  std::string first_;
};

template <class F>
void parallel_for(int count, Failures& fails, F body) {
  unsigned nt = std::max(1u, std::thread::hardware_concurrency());
  std::atomic<int> next{0};
  std::vector<std::thread> threads;
  for (unsigned t = 0; t < nt; ++t)
    threads.emplace_back([&] {
      for (int i; (i = next.fetch_add(1)) < count;) {
        try {
          body(i);
        } catch (const std::exception& e) {
          std::ostringstream ss;
          ss << "task " << i << " threw: " << e.what();
          fails.add(ss.str());
        }
      }
    });
  for (auto& th : threads) th.join();
}

// Budgeted decision on the narrower of the companion decomposition and the
// min-degree heuristic: the exact optimum does not depend on which valid
// decomposition backs the DP, and the heuristic is often far narrower than
// the companion's worst-case-width guarantee.
std::optional<Int> decide_within(const ReductionArtifact& art, const Int& budget) {
  TreeDecomposition heur = heuristic_decompose(art.graph, EliminationStrategy::MinDegree);
  const TreeDecomposition& best =
      heur.width() < art.companion_pd.width() ? heur : art.companion_pd;
  return min_stable_cut_within(art.graph, make_nice(best), budget);
}

// All graphs on n labeled vertices, one per edge subset.
WeightedGraph graph_from_mask(int n, std::uint32_t mask) {
  WeightedGraph g(n);
  int bit = 0;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j, ++bit)
      if (mask & (1u << bit)) g.add_edge(i, j);
  return g;
}

// --------------------------------------------------------------------- 1
Outcome criterion_oracle_equivalence() {
  Failures fails;
  std::mt19937_64 rng(101);
  std::vector<WeightedGraph> graphs;
  for (int trial = 0; trial < 500; ++trial) {
    int n = 2 + static_cast<int>(rng() % 6);
    graphs.push_back(testutil::random_connected(rng, n, static_cast<int>(rng() % 8), 10));
  }
  parallel_for(static_cast<int>(graphs.size()), fails, [&](int i) {
    const WeightedGraph& g = graphs[i];
    OptimalCut brute = brute_min_stable_cut(g);
    OptimalCut dp = solve_pseudo(g, testutil::nice_for(g));
    OptimalCut dg = solve_degree(g, heuristic_decompose(g, EliminationStrategy::MinDegree));
    if (dp.weight != brute.weight || dg.weight != brute.weight || !is_stable(g, dp.cut) ||
        !is_stable(g, dg.cut) || cut_weight(g, dp.cut) != dp.weight) {
      std::ostringstream ss;
      ss << "graph " << i << ": brute " << brute.weight << " dp " << dp.weight << " degree "
         << dg.weight;
      fails.add(ss.str());
    }
  });
  return fails.outcome();
}

// --------------------------------------------------------------------- 2
Outcome criterion_c4_facts() {
  WeightedGraph g = testutil::cycle_graph(4);
  PoAReport rep = price_of_anarchy(g);
  if (rep.min_stable_cut == 2 && rep.max_cut == 4 && rep.ratio == Rational(2)) return {};
  std::ostringstream ss;
  ss << "got min " << rep.min_stable_cut << " max " << rep.max_cut << " ratio "
     << rep.ratio.numerator() << "/" << rep.ratio.denominator();
  return {false, ss.str()};
}

// --------------------------------------------------------------------- 3
Outcome criterion_half_weight() {
  Failures fails;
  for (int n = 1; n <= 6 && fails.outcome().pass; ++n) {
    int bits = n * (n - 1) / 2;
    parallel_for(1 << bits, fails, [&, n](int mask) {
      WeightedGraph unit = graph_from_mask(n, static_cast<std::uint32_t>(mask));
      std::mt19937_64 rng(1000u * n + static_cast<unsigned>(mask));
      WeightedGraph weighted(n);
      for (const Edge& e : unit.edges()) weighted.add_edge(e.u, e.v, Int(1 + rng() % 9));
      for (const WeightedGraph* g : {&unit, &weighted}) {
        Int total = g->total_weight();
        for (const auto& [c, w] : enumerate_stable_cuts(*g))
          if (2 * w < total) {
            std::ostringstream ss;
            ss << "n=" << n << " mask=" << mask << ": stable cut below half weight";
            fails.add(ss.str());
          }
      }
    });
  }
  return fails.outcome();
}

// --------------------------------------------------------------------- 4
Outcome criterion_partition_reductions() {
  std::vector<std::vector<Int>> instances;
  std::vector<Int> cur;
  auto emit = [&](auto&& self, int min_val) -> void {
    if (!cur.empty()) instances.push_back(cur);
    if (static_cast<int>(cur.size()) == 7) return;
    for (int v = min_val; v <= 8; ++v) {
      cur.push_back(v);
      self(self, v);
      cur.pop_back();
    }
  };
  emit(emit, 1);
  std::vector<std::vector<Int>> even;
  for (auto& values : instances) {
    Int sum = 0;
    for (const Int& v : values) sum += v;
    if (sum % 2 == 0) even.push_back(std::move(values));
  }

  Failures fails;
  parallel_for(static_cast<int>(even.size()), fails, [&](int i) {
    PartitionInstance p{even[i]};
    bool expect = false;
    for (std::uint32_t mask = 0; mask < (1u << p.values.size()); ++mask) {
      Int sum = 0;
      for (std::size_t j = 0; j < p.values.size(); ++j)
        if (mask & (1u << j)) sum += p.values[j];
      expect = expect || 2 * sum == p.total();
    }
    for (auto build : {partition_to_tree, partition_to_k2n}) {
      ReductionArtifact art = build(p);
      bool got = decide_within(art, art.threshold).has_value();
      if (got != expect) {
        std::ostringstream ss;
        ss << "multiset " << i << ": expected " << expect << " got " << got;
        fails.add(ss.str());
      }
    }
  });
  return fails.outcome();
}

// --------------------------------------------------------------------- 5
Outcome criterion_maxcut_reduction() {
  Failures fails;
  for (int n = 1; n <= 6 && fails.outcome().pass; ++n) {
    int bits = n * (n - 1) / 2;
    parallel_for(1 << bits, fails, [&, n](int mask) {
      WeightedGraph g = graph_from_mask(n, static_cast<std::uint32_t>(mask));
      if (g.max_degree() > 3) return;
      Int mc = brute_max_cut(g);
      ReductionArtifact art = maxcut_to_unweighted(g, mc);
      std::optional<Int> at = decide_within(art, art.threshold);
      // Tightness: the target optimum must equal 3|V| + 2|E| - maxcut, which
      // settles the equivalence for every k in [0, maxcut] at once.
      bool ok = at.has_value() && *at == art.threshold;
      if (ok && art.threshold > 0) ok = !decide_within(art, art.threshold - 1).has_value();
      if (!ok) {
        std::ostringstream ss;
        ss << "n=" << n << " mask=" << mask << ": optimum not " << art.threshold;
        fails.add(ss.str());
      }
    });
  }
  return fails.outcome();
}

// --------------------------------------------------------------------- 6
Outcome criterion_setsplitting_reduction() {
  std::mt19937_64 rng(106);
  struct Case {
    SetSplittingInstance h;
    int delta;
  };
  std::vector<Case> cases;
  while (cases.size() < 60) {
    SetSplittingInstance h;
    h.element_count = 2 + static_cast<int>(rng() % 5);
    int m = 1 + static_cast<int>(rng() % 4);
    for (int j = 0; j < m; ++j) {
      int size = h.element_count >= 3 && (rng() & 1) ? 3 : 2;
      std::vector<int> pool(h.element_count);
      for (int i = 0; i < h.element_count; ++i) pool[i] = i;
      std::shuffle(pool.begin(), pool.end(), rng);
      h.sets.push_back({pool.begin(), pool.begin() + size});
    }
    cases.push_back({h, 1 + static_cast<int>(rng() % 3)});
  }

  Failures fails;
  parallel_for(static_cast<int>(cases.size()), fails, [&](int i) {
    const SetSplittingInstance& h = cases[i].h;
    bool expect = false;
    for (std::uint32_t mask = 0; mask < (1u << h.element_count); ++mask) {
      bool all_split = true;
      for (const auto& s : h.sets) {
        bool has0 = false, has1 = false;
        for (int el : s) ((mask >> el) & 1 ? has1 : has0) = true;
        all_split = all_split && has0 && has1;
      }
      expect = expect || all_split;
    }
    ReductionArtifact art = setsplitting_to_stablecut(h, cases[i].delta);
    int rho = (h.element_count + cases[i].delta - 1) / cases[i].delta;
    if (art.companion_pd.width() > 2 * rho + 5) {
      std::ostringstream ss;
      ss << "case " << i << ": companion width " << art.companion_pd.width() << " > "
         << 2 * rho + 5;
      fails.add(ss.str());
      return;
    }
    bool got = decide_within(art, art.threshold).has_value();
    if (got != expect) {
      std::ostringstream ss;
      ss << "case " << i << " (n=" << h.element_count << ", m=" << h.sets.size()
         << ", delta=" << cases[i].delta << "): expected " << expect << " got " << got;
      fails.add(ss.str());
    }
  });
  return fails.outcome();
}

// --------------------------------------------------------------------- 7
Outcome criterion_mcis_reduction() {
  // Heavy-edge gadgets shrunk to A = 4 to keep the exhaustive sweep tractable;
  // the decision equivalence must survive the reduction in size.
  const Int kReducedA = 4;
  Failures fails;
  for (int n : {2, 3}) {
    int pairs = n * n;
    parallel_for(1 << pairs, fails, [&, n](int mask) {
      MCISInstance mc;
      mc.k = 2;
      mc.n = n;
      for (int a = 1; a <= n; ++a)
        for (int b = 1; b <= n; ++b)
          if (mask & (1 << ((a - 1) * n + (b - 1)))) mc.edges.push_back({{1, a}, {2, b}});
      std::vector<int> independent;
      for (int s1 = 1; s1 <= n && independent.empty(); ++s1)
        for (int s2 = 1; s2 <= n && independent.empty(); ++s2)
          if (!(mask & (1 << ((s1 - 1) * n + (s2 - 1))))) independent = {s1, s2};

      ReductionArtifact art = mcis_to_unweighted(mc, kReducedA);
      ValidationResult vr = validate(art.graph, art.companion_pd);
      if (!vr.ok() || art.companion_pd.width() > 2 * mc.k + 9) {
        std::ostringstream ss;
        ss << "n=" << n << " mask=" << mask << ": companion invalid or too wide";
        fails.add(ss.str());
        return;
      }
      if (!independent.empty()) {
        // Yes-instance: a lifted certificate of weight exactly the threshold,
        // and extraction recovers a verified independent selection.
        SourceWitness w;
        w.selection = independent;
        Cut c = lift_witness(art, w);
        bool ok = is_stable(art.graph, c) && cut_weight(art.graph, c) == art.threshold;
        if (ok && !mc.edges.empty()) {
          SourceWitness back = extract_witness(art, c);  // self-verifying
          ok = static_cast<int>(back.selection.size()) == mc.k;
        }
        if (!ok) {
          std::ostringstream ss;
          ss << "n=" << n << " mask=" << mask << ": certificate failed";
          fails.add(ss.str());
        }
      } else {
        std::optional<Int> r = decide_within(art, art.threshold);
        if (r.has_value()) {
          std::ostringstream ss;
          ss << "n=" << n << " mask=" << mask << ": no-instance solvable at " << *r;
          fails.add(ss.str());
        }
      }
    });
  }
  return fails.outcome();
}

// --------------------------------------------------------------------- 8
Outcome criterion_approximation_contract() {
  Failures fails;
  std::mt19937_64 rng(108);
  std::vector<WeightedGraph> graphs;
  for (int trial = 0; trial < 200; ++trial) {
    int n = 2 + static_cast<int>(rng() % 7);
    graphs.push_back(testutil::random_connected(rng, n, static_cast<int>(rng() % 8), 1000));
  }
  parallel_for(static_cast<int>(graphs.size()), fails, [&](int i) {
    const WeightedGraph& g = graphs[i];
    Int opt = brute_min_stable_cut(g).weight;
    NiceDecomposition nd = testutil::nice_for(g);
    for (Rational eps : {Rational(1, 10), Rational(1, 2)}) {
      ApproxCut r = solve_approx(g, nd, eps);
      bool ok = r.weight <= opt && cut_weight(g, r.cut) == r.weight;
      for (int v = 0; v < g.vertex_count() && ok; ++v) {
        Int crossing = 0;
        for (int e : g.incident(v))
          if (r.cut[g.edge(e).u] != r.cut[g.edge(e).v]) crossing += g.edge(e).weight;
        ok = Rational(2 * crossing) >= (Rational(1) - eps) * Rational(g.weighted_degree(v));
      }
      if (!ok) {
        std::ostringstream ss;
        ss << "graph " << i << " eps " << eps.numerator() << "/" << eps.denominator()
           << ": weight " << r.weight << " opt " << opt;
        fails.add(ss.str());
      }
    }
  });
  return fails.outcome();
}

// --------------------------------------------------------------------- 9
Outcome criterion_rescaling_bracket() {
  Failures fails;
  std::mt19937_64 rng(109);
  for (int trial = 0; trial < 200; ++trial) {
    int n = 2 + static_cast<int>(rng() % 7);
    WeightedGraph g = testutil::random_connected(rng, n, static_cast<int>(rng() % 6));
    ExtendedInstance ext = extend_from_plain(g);
    for (auto& [a, b] : ext.s) {
      a = Int(1 + rng() % 9);
      b = Int(1 + rng() % 9);
    }
    ExtendedInstance scaled = rescale_stability(ext);
    Rational lo = Rational(1) - Rational(1, n), hi = Rational(1) + Rational(1, n);
    detail::enumerate_assignments(g, [&](const Cut& c) {
      for (int v = 0; v < n; ++v) {
        Int cs = 0, ds = 0, cs2 = 0, ds2 = 0;
        for (int e : g.incident(v)) {
          bool cut = c[g.edge(e).u] != c[g.edge(e).v];
          ds += ext.s_at(e, v);
          ds2 += scaled.s_at(e, v);
          if (cut) {
            cs += ext.s_at(e, v);
            cs2 += scaled.s_at(e, v);
          }
        }
        if (ds == 0 || ds2 == 0) continue;
        Rational f(cs, ds), f2(cs2, ds2);
        if (f2 < f * lo || f2 > f * hi) {
          std::ostringstream ss;
          ss << "trial " << trial << " vertex " << v << ": fraction " << cs << "/" << ds
             << " rescaled to " << cs2 << "/" << ds2 << " outside [1-1/" << n << ", 1+1/" << n
             << "]";
          fails.add(ss.str());
        }
      }
    });
  }
  return fails.outcome();
}

// -------------------------------------------------------------------- 10
Outcome criterion_local_search() {
  Failures fails;
  std::vector<WeightedGraph> fixtures;
  fixtures.push_back(testutil::cycle_graph(4));
  fixtures.push_back(testutil::cycle_graph(3));
  fixtures.push_back(testutil::complete_graph(4));
  fixtures.push_back(testutil::path_graph(5));
  {
    std::mt19937_64 rng(110);
    fixtures.push_back(testutil::random_connected(rng, 7, 5, 6));
    fixtures.push_back(testutil::random_connected(rng, 8, 8, 4));
  }
  parallel_for(static_cast<int>(fixtures.size()), fails, [&](int i) {
    const WeightedGraph& g = fixtures[i];
    Int lo = brute_min_stable_cut(g).weight, hi = brute_max_cut(g);
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
      std::mt19937_64 srng(seed * 977 + i);
      Cut start(g.vertex_count());
      for (auto& s : start) s = srng() & 1;
      for (auto pivot : {PivotRule::FirstImprovement, PivotRule::BestImprovement}) {
        LocalSearchResult r = local_search(g, start, pivot, seed);
        Int w = cut_weight(g, r.cut);
        if (!is_stable(g, r.cut) || w < lo || w > hi || r.flip_count > g.total_weight()) {
          std::ostringstream ss;
          ss << "fixture " << i << " seed " << seed << ": weight " << w << " not in [" << lo
             << ", " << hi << "]";
          fails.add(ss.str());
        }
      }
    }
  });
  return fails.outcome();
}

struct Criterion {
  const char* summary;
  Outcome (*run)();
};

const Criterion kCriteria[10] = {
    {"exact solvers agree with enumeration on 500 random graphs", criterion_oracle_equivalence},
    {"four-cycle: min stable cut 2, max cut 4, price of anarchy 2", criterion_c4_facts},
    {"every stable cut carries at least half the total weight (all graphs n<=6)",
     criterion_half_weight},
    {"partition reductions decide exactly on all small even-sum multisets",
     criterion_partition_reductions},
    {"max-cut reduction is tight on all subcubic graphs n<=6", criterion_maxcut_reduction},
    {"set-splitting reduction decides exactly on random instances",
     criterion_setsplitting_reduction},
    {"independent-set reduction decides exactly at reduced heavy size",
     criterion_mcis_reduction},
    {"approximation: never above optimum, relaxed stability verified exactly",
     criterion_approximation_contract},
    {"rescaled crossing fractions stay within [1-1/n, 1+1/n] on all cuts",
     criterion_rescaling_bracket},
    {"local search: stable results in [min stable, max cut] within weight-many flips",
     criterion_local_search},
};

}  // namespace

int main(int argc, char** argv) {
  if (argc != 2) {
    std::cerr << "usage: acceptance <criterion 1..10>\n";
    return 2;
  }
  int idx = std::atoi(argv[1]);
  if (idx < 1 || idx > 10) {
    std::cerr << "criterion out of range: " << argv[1] << "\n";
    return 2;
  }
  const Criterion& cr = kCriteria[idx - 1];
  Outcome out;
  try {
    out = cr.run();
  } catch (const std::exception& e) {
    out = {false, std::string("uncaught: ") + e.what()};
  }
  std::cout << "criterion " << idx << " [" << (out.pass ? "PASS" : "FAIL") << "] " << cr.summary;
  if (!out.detail.empty()) std::cout << " -- " << out.detail;
  std::cout << "\n";
  return out.pass ? 0 : 1;
}
