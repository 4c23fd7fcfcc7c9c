#include <doctest.h>

#include "helpers.hpp"
#include "msc/exact_solver.hpp"
#include "msc/oracle.hpp"

using namespace msc;

TEST_CASE("solve_pseudo on small fixtures") {
  SUBCASE("unit C4: minimum stable cut 2") {
    WeightedGraph g = testutil::cycle_graph(4);
    OptimalCut r = solve_pseudo(g, testutil::nice_for(g));
    CHECK(r.weight == 2);
    CHECK(is_stable(g, r.cut));
    CHECK(cut_weight(g, r.cut) == 2);
  }
  SUBCASE("single weighted edge must be cut") {
    WeightedGraph g(2);
    g.add_edge(0, 1, 9);
    OptimalCut r = solve_pseudo(g, testutil::nice_for(g));
    CHECK(r.weight == 9);
    CHECK(r.cut[0] != r.cut[1]);
  }
  SUBCASE("unit triangle") {
    WeightedGraph g = testutil::cycle_graph(3);
    OptimalCut r = solve_pseudo(g, testutil::nice_for(g));
    CHECK(r.weight == 2);
    CHECK(is_stable(g, r.cut));
  }
  SUBCASE("edgeless graph: weight 0") {
    WeightedGraph g(3);
    OptimalCut r = solve_pseudo(g, testutil::nice_for(g));
    CHECK(r.weight == 0);
    CHECK(is_stable(g, r.cut));
  }
  SUBCASE("invalid decomposition rejected") {
    WeightedGraph g = testutil::path_graph(3);
    NiceDecomposition nd = testutil::nice_for(testutil::path_graph(2));
    CHECK_THROWS_AS(solve_pseudo(g, nd), InputError);
  }
}

TEST_CASE("solve_pseudo matches the enumeration oracle") {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 60; ++trial) {
    int n = 2 + static_cast<int>(rng() % 6);
    WeightedGraph g = testutil::random_connected(rng, n, static_cast<int>(rng() % 6), 10);
    OptimalCut expect = brute_min_stable_cut(g);
    OptimalCut got = solve_pseudo(g, testutil::nice_for(g));
    CAPTURE(trial);
    CHECK(got.weight == expect.weight);
    CHECK(is_stable(g, got.cut));
    CHECK(cut_weight(g, got.cut) == got.weight);
  }
}

TEST_CASE("dominance pruning does not change results") {
  std::mt19937_64 rng(22);
  for (int trial = 0; trial < 25; ++trial) {
    int n = 2 + static_cast<int>(rng() % 6);
    WeightedGraph g = testutil::random_connected(rng, n, static_cast<int>(rng() % 6), 8);
    NiceDecomposition nd = testutil::nice_for(g);
    SolveOptions no_prune;
    no_prune.prune_dominated = false;
    CHECK(solve_pseudo(g, nd).weight == solve_pseudo(g, nd, no_prune).weight);
  }
}

TEST_CASE("budgeted decision variant") {
  WeightedGraph g = testutil::cycle_graph(4);
  NiceDecomposition nd = testutil::nice_for(g);
  CHECK(min_stable_cut_within(g, nd, 2) == Int(2));
  CHECK(min_stable_cut_within(g, nd, 5) == Int(2));
  CHECK_FALSE(min_stable_cut_within(g, nd, 1).has_value());

  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 25; ++trial) {
    int n = 2 + static_cast<int>(rng() % 6);
    WeightedGraph g2 = testutil::random_connected(rng, n, static_cast<int>(rng() % 6), 10);
    NiceDecomposition nd2 = testutil::nice_for(g2);
    Int opt = brute_min_stable_cut(g2).weight;
    CHECK(min_stable_cut_within(g2, nd2, opt) == opt);
    if (opt > 0) CHECK_FALSE(min_stable_cut_within(g2, nd2, opt - 1).has_value());
  }
}

TEST_CASE("solve_degree agrees with solve_pseudo") {
  std::mt19937_64 rng(24);
  for (int trial = 0; trial < 40; ++trial) {
    int n = 2 + static_cast<int>(rng() % 6);
    WeightedGraph g = testutil::random_connected(rng, n, static_cast<int>(rng() % 6), 9);
    TreeDecomposition td = heuristic_decompose(g, EliminationStrategy::MinDegree);
    OptimalCut a = solve_degree(g, td);
    OptimalCut b = solve_pseudo(g, make_nice(td));
    CHECK(a.weight == b.weight);
    CHECK(is_stable(g, a.cut));
    CHECK(cut_weight(g, a.cut) == a.weight);
  }
}

TEST_CASE("solve_unweighted requires unit weights") {
  WeightedGraph g = testutil::cycle_graph(4);
  CHECK(solve_unweighted(g, testutil::nice_for(g)).weight == 2);
  WeightedGraph w(2);
  w.add_edge(0, 1, 2);
  CHECK_THROWS_AS(solve_unweighted(w, testutil::nice_for(w)), InputError);
}

TEST_CASE("solve_max_cut matches enumeration") {
  SUBCASE("fixtures") {
    WeightedGraph c4 = testutil::cycle_graph(4);
    CHECK(solve_max_cut(c4, testutil::nice_for(c4)) == 4);
    WeightedGraph k3 = testutil::cycle_graph(3);
    CHECK(solve_max_cut(k3, testutil::nice_for(k3)) == 2);
  }
  SUBCASE("random graphs") {
    std::mt19937_64 rng(25);
    for (int trial = 0; trial < 40; ++trial) {
      int n = 2 + static_cast<int>(rng() % 6);
      WeightedGraph g = testutil::random_connected(rng, n, static_cast<int>(rng() % 6), 7);
      CHECK(solve_max_cut(g, testutil::nice_for(g)) == brute_max_cut(g));
    }
  }
}

TEST_CASE("DP works on the trivial single-bag decomposition") {
  WeightedGraph g = testutil::complete_graph(4);
  NiceDecomposition nd = make_nice(trivial_decomposition(g));
  CHECK(solve_pseudo(g, nd).weight == brute_min_stable_cut(g).weight);
}
