// Command-line front end: solve / verify / generate / decompose / poa.
// Exit codes: 0 success, 1 negative verify, 2 input error, 3 resource limit,
// 4 internal error.

#include <CLI11.hpp>
#include <fstream>
#include <json.hpp>
#include <iostream>
#include <sstream>

#include "msc/msc.hpp"

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw msc::InputError("cannot open file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void spit(const std::string& path, const std::string& content) {
  std::ofstream out(path);
  if (!out) throw msc::InputError("cannot write file: " + path);
  out << content;
}

msc::Rational parse_eps(const std::string& s) {
  auto slash = s.find('/');
  try {
    if (slash == std::string::npos) return msc::Rational(msc::Int(s));
    return msc::Rational(msc::Int(s.substr(0, slash)), msc::Int(s.substr(slash + 1)));
  } catch (const std::exception&) {
    throw msc::InputError("eps must be a rational p/q, got: " + s);
  }
}

std::vector<msc::Int> parse_value_list(const std::string& s) {
  std::vector<msc::Int> out;
  std::string tok;
  std::istringstream in(s);
  while (std::getline(in, tok, ','))
    if (!tok.empty()) out.push_back(msc::detail::parse_int(tok, "value"));
  return out;
}

msc::NiceDecomposition decomposition_for(const msc::WeightedGraph& g, const std::string& td_path) {
  msc::TreeDecomposition td =
      td_path.empty() ? msc::heuristic_decompose(g, msc::EliminationStrategy::MinDegree)
                      : msc::parse_td(slurp(td_path));
  msc::ValidationResult vr = msc::validate(g, td);
  if (!vr.ok()) throw msc::InputError("invalid tree decomposition: " + vr.violations.front());
  return msc::make_nice(td);
}

void print_report(const msc::WeightedGraph& g, const msc::Cut& cut, const std::string& alg,
                  bool structured) {
  msc::StabilityReport rep = msc::evaluate_cut(g, cut);
  if (structured) {
    std::cout << "alg " << alg << "\n";
    std::cout << "weight " << rep.cut_weight << "\n";
    std::cout << "stable " << (rep.stable ? 1 : 0) << "\n";
    std::cout << "assignment " << msc::write_cut(cut);
    for (int v = 0; v < g.vertex_count(); ++v)
      std::cout << "vertex " << v + 1 << " degree " << rep.per_vertex[v].weighted_degree
                << " crossing " << rep.per_vertex[v].cut_incident_weight << " stable "
                << (rep.per_vertex[v].stable ? 1 : 0) << "\n";
  } else {
    std::cout << "algorithm: " << alg << "\n";
    std::cout << "cut weight: " << rep.cut_weight << "\n";
    std::cout << "stable: " << (rep.stable ? "yes" : "no") << "\n";
    std::cout << "assignment: " << msc::write_cut(cut);
    for (int v = 0; v < g.vertex_count(); ++v)
      if (!rep.per_vertex[v].stable)
        std::cout << "unstable vertex " << v + 1 << ": crossing "
                  << rep.per_vertex[v].cut_incident_weight << " of degree "
                  << rep.per_vertex[v].weighted_degree << "\n";
  }
}

int run(int argc, char** argv) {
  CLI::App app{"Min Stable Cut toolkit"};
  app.require_subcommand(1);

  std::string graph_path, td_path, cut_path, alg = "dp-pseudo", eps_str = "1/10";
  std::string format = "text", pivot = "best", strategy = "min-degree", out_prefix;
  std::uint64_t seed = 0;
  int limit = msc::kDefaultEnumerationLimit;

  auto* solve = app.add_subcommand("solve", "compute a minimum (or near-minimum) stable cut");
  solve->add_option("graph", graph_path, "graph file")->required();
  solve->add_option("--alg", alg, "brute | dp-pseudo | dp-degree | approx | local-search");
  solve->add_option("--td", td_path, "tree decomposition file");
  solve->add_option("--eps", eps_str, "approximation parameter p/q in (0, 1/2]");
  solve->add_option("--seed", seed, "seed for local search");
  solve->add_option("--pivot", pivot, "first | best (local search)");
  solve->add_option("--limit", limit, "enumeration limit for brute force");
  solve->add_option("--format", format, "text | structured");

  auto* verify = app.add_subcommand("verify", "check a cut file against a graph");
  verify->add_option("graph", graph_path, "graph file")->required();
  verify->add_option("cut", cut_path, "cut file")->required();
  verify->add_option("--format", format, "text | structured");

  std::string family, values_str, sets_str, edges_str;
  int elements = 0, ss_delta = 1, mcis_k = 0, mcis_n = 0;
  std::string maxcut_k_str = "0", heavy_str;
  auto* generate = app.add_subcommand("generate", "emit a hardness-reduction instance");
  generate->add_option("family", family,
                       "partition-tree | partition-k2n | maxcut | setsplitting | mcis")
      ->required();
  generate->add_option("--out", out_prefix, "output prefix (.gr/.td/.json)")->required();
  generate->add_option("--values", values_str, "partition values, comma separated");
  generate->add_option("--graph", graph_path, "source graph file (maxcut)");
  generate->add_option("--k", maxcut_k_str, "cut target k (maxcut)");
  generate->add_option("--elements", elements, "element count (setsplitting)");
  generate->add_option("--sets", sets_str, "sets as 1-based lists, e.g. 1,2;1,2,3");
  generate->add_option("--delta", ss_delta, "group size delta (setsplitting)");
  generate->add_option("--classes", mcis_k, "number of color classes (mcis)");
  generate->add_option("--per-class", mcis_n, "vertices per class (mcis)");
  generate->add_option("--edges", edges_str, "edges as i,j-i,j;... (mcis, 1-based)");
  generate->add_option("--heavy-A", heavy_str, "heavy edge size override (mcis)");

  auto* decompose = app.add_subcommand("decompose", "heuristic tree decomposition");
  decompose->add_option("graph", graph_path, "graph file")->required();
  decompose->add_option("--strategy", strategy, "min-degree | min-fill");

  auto* poa = app.add_subcommand("poa", "price of anarchy report");
  poa->add_option("graph", graph_path, "graph file")->required();
  poa->add_option("--td", td_path, "tree decomposition file (enables DP solvers)");
  poa->add_option("--limit", limit, "enumeration limit for brute force");
  poa->add_option("--format", format, "text | structured");

  CLI11_PARSE(app, argc, argv);
  const bool structured = format == "structured";
  if (format != "text" && format != "structured")
    throw msc::InputError("unknown format: " + format);

  if (*solve) {
    msc::ExtendedInstance inst = msc::parse_extended(slurp(graph_path));
    const msc::WeightedGraph& g = inst.graph;
    if (alg == "brute") {
      msc::OptimalCut r = msc::brute_min_stable_cut(g, limit);
      print_report(g, r.cut, alg, structured);
    } else if (alg == "dp-pseudo") {
      msc::OptimalCut r = msc::solve_pseudo(g, decomposition_for(g, td_path));
      print_report(g, r.cut, alg, structured);
    } else if (alg == "dp-degree") {
      msc::TreeDecomposition td =
          td_path.empty() ? msc::heuristic_decompose(g, msc::EliminationStrategy::MinDegree)
                          : msc::parse_td(slurp(td_path));
      msc::OptimalCut r = msc::solve_degree(g, td);
      print_report(g, r.cut, alg, structured);
    } else if (alg == "approx") {
      msc::ApproxCut r = msc::solve_approx(g, decomposition_for(g, td_path), parse_eps(eps_str));
      print_report(g, r.cut, alg, structured);
    } else if (alg == "local-search") {
      msc::PivotRule rule;
      if (pivot == "first")
        rule = msc::PivotRule::FirstImprovement;
      else if (pivot == "best")
        rule = msc::PivotRule::BestImprovement;
      else
        throw msc::InputError("unknown pivot rule: " + pivot);
      msc::Cut start(g.vertex_count(), 0);
      msc::LocalSearchResult r = msc::local_search(g, start, rule, seed);
      print_report(g, r.cut, alg, structured);
      std::cout << (structured ? "flips " : "flips: ") << r.flip_count << "\n";
    } else {
      throw msc::InputError("unknown algorithm: " + alg);
    }
    return 0;
  }

  if (*verify) {
    msc::WeightedGraph g = msc::parse_graph(slurp(graph_path));
    msc::Cut c = msc::parse_cut(slurp(cut_path), g.vertex_count());
    print_report(g, c, "verify", structured);
    return msc::is_stable(g, c) ? 0 : 1;
  }

  if (*generate) {
    msc::ReductionArtifact art;
    if (family == "partition-tree" || family == "partition-k2n") {
      msc::PartitionInstance p{parse_value_list(values_str)};
      art = family == "partition-tree" ? msc::partition_to_tree(p) : msc::partition_to_k2n(p);
    } else if (family == "maxcut") {
      art = msc::maxcut_to_unweighted(msc::parse_graph(slurp(graph_path)),
                                      msc::detail::parse_int(maxcut_k_str, "k"));
    } else if (family == "setsplitting") {
      msc::SetSplittingInstance h;
      h.element_count = elements;
      std::istringstream in(sets_str);
      std::string set_tok;
      while (std::getline(in, set_tok, ';')) {
        std::vector<int> s;
        std::istringstream ss(set_tok);
        std::string el;
        while (std::getline(ss, el, ','))
          if (!el.empty()) s.push_back(msc::detail::parse_vertex(el, elements, "element"));
        h.sets.push_back(std::move(s));
      }
      art = msc::setsplitting_to_stablecut(h, ss_delta);
    } else if (family == "mcis") {
      msc::MCISInstance mc;
      mc.k = mcis_k;
      mc.n = mcis_n;
      std::istringstream in(edges_str);
      std::string edge_tok;
      while (std::getline(in, edge_tok, ';')) {
        int a, b, c, d;
        char c1, c2, c3;
        std::istringstream es(edge_tok);
        if (!(es >> a >> c1 >> b >> c2 >> c >> c3 >> d) || c1 != ',' || c2 != '-' || c3 != ',')
          throw msc::InputError("malformed mcis edge: " + edge_tok);
        mc.edges.push_back({{a, b}, {c, d}});
      }
      std::optional<msc::Int> heavy;
      if (!heavy_str.empty()) heavy = msc::detail::parse_int(heavy_str, "heavy-A");
      art = msc::mcis_to_unweighted(mc, heavy);
    } else {
      throw msc::InputError("unknown family: " + family);
    }
    spit(out_prefix + ".gr", msc::write_graph(art.graph));
    spit(out_prefix + ".td", msc::write_td(art.companion_pd, art.graph.vertex_count()));
    nlohmann::json side;
    side["family"] = family;
    side["threshold"] = art.threshold.str();
    side["vertices"] = art.graph.vertex_count();
    side["pd_width"] = art.companion_pd.width();
    for (const auto& [key, value] : art.metadata) side["metadata"][key] = value.str();
    side["roles"] = art.vertex_roles;
    spit(out_prefix + ".json", side.dump(2) + "\n");
    std::cout << "threshold " << art.threshold << "\n";
    std::cout << "vertices " << art.graph.vertex_count() << "\n";
    std::cout << "pd_width " << art.companion_pd.width() << "\n";
    return 0;
  }

  if (*decompose) {
    msc::WeightedGraph g = msc::parse_graph(slurp(graph_path));
    msc::EliminationStrategy st;
    if (strategy == "min-degree")
      st = msc::EliminationStrategy::MinDegree;
    else if (strategy == "min-fill")
      st = msc::EliminationStrategy::MinFill;
    else
      throw msc::InputError("unknown strategy: " + strategy);
    msc::TreeDecomposition td = msc::heuristic_decompose(g, st);
    std::cout << msc::write_td(td, g.vertex_count());
    return 0;
  }

  if (*poa) {
    msc::WeightedGraph g = msc::parse_graph(slurp(graph_path));
    msc::PoAReport rep = td_path.empty()
                             ? msc::price_of_anarchy(g, limit)
                             : msc::price_of_anarchy(g, decomposition_for(g, td_path));
    if (structured) {
      std::cout << "max_cut " << rep.max_cut << "\n";
      std::cout << "min_stable_cut " << rep.min_stable_cut << "\n";
      std::cout << "poa " << rep.ratio.numerator() << "/" << rep.ratio.denominator() << "\n";
    } else {
      std::cout << "max cut: " << rep.max_cut << "\n";
      std::cout << "min stable cut: " << rep.min_stable_cut << "\n";
      std::cout << "price of anarchy: " << rep.ratio.numerator() << "/"
                << rep.ratio.denominator() << "\n";
    }
    return 0;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const msc::InputError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const msc::ResourceError& e) {
    std::cerr << "resource error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 4;
  }
}
