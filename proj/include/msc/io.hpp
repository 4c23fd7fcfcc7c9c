#pragma once

#include <sstream>
#include <string>
#include <vector>

#include "msc/extended.hpp"
#include "msc/graph.hpp"
#include "msc/tree_decomposition.hpp"

namespace msc {

// On-disk formats use 1-based vertex and bag ids; in memory everything is
// 0-based. Lines starting with `c` are comments.
//
//   graph:  p msc <n> <m>      edge lines `u v [w]` (w defaults to 1)
//           p msc-ext <n> <m>  edge lines `u v w s_u s_v`
//   td:     s td <bags> <width+1> <n>, bag lines `b <id> v...`, then `a b`
//           tree edges between bag ids
//   cut:    n whitespace-separated sides (0/1), vertex order

namespace detail {

inline std::vector<std::string> content_lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    std::istringstream probe(line);
    std::string first;
    if (!(probe >> first) || first == "c") continue;
    out.push_back(line);
  }
  return out;
}

inline Int parse_int(const std::string& tok, const char* what) {
  try {
    return Int(tok);
  } catch (const std::exception&) {
    throw InputError(std::string("malformed ") + what + ": " + tok);
  }
}

inline int parse_vertex(const std::string& tok, int n, const char* what) {
  Int v = parse_int(tok, what);
  if (v < 1 || v > n) throw InputError(std::string("out-of-range ") + what + ": " + tok);
  return static_cast<int>(v) - 1;
}

}  // namespace detail

inline ExtendedInstance parse_extended(const std::string& text) {
  auto lines = detail::content_lines(text);
  if (lines.empty()) throw InputError("missing problem line");
  std::istringstream head(lines[0]);
  std::string p, fmt;
  long long n = -1, m = -1;
  if (!(head >> p >> fmt >> n >> m) || p != "p" || (fmt != "msc" && fmt != "msc-ext") || n < 0 ||
      m < 0)
    throw InputError("malformed problem line: " + lines[0]);
  const bool ext = fmt == "msc-ext";
  if (static_cast<long long>(lines.size()) - 1 != m)
    throw InputError("edge line count does not match the problem line");
  ExtendedInstance inst;
  inst.graph = WeightedGraph(static_cast<int>(n));
  std::vector<std::pair<Int, Int>> svals;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    std::istringstream es(lines[i]);
    std::vector<std::string> toks;
    std::string t;
    while (es >> t) toks.push_back(t);
    if (ext ? toks.size() != 5 : (toks.size() != 2 && toks.size() != 3))
      throw InputError("malformed edge line: " + lines[i]);
    int u = detail::parse_vertex(toks[0], static_cast<int>(n), "vertex id");
    int v = detail::parse_vertex(toks[1], static_cast<int>(n), "vertex id");
    Int w = toks.size() >= 3 ? detail::parse_int(toks[2], "weight") : Int(1);
    int before = inst.graph.edge_count();
    inst.graph.add_edge(u, v, w);
    if (ext) {
      Int su = detail::parse_int(toks[3], "stability weight");
      Int sv = detail::parse_int(toks[4], "stability weight");
      if (su < 0 || sv < 0) throw InputError("negative stability weight");
      if (u > v) std::swap(su, sv);  // edges are stored with u < v
      if (inst.graph.edge_count() == before) {  // merged parallel edge
        svals.back().first += su;
        svals.back().second += sv;
      } else {
        svals.emplace_back(std::move(su), std::move(sv));
      }
    }
  }
  if (ext)
    inst.s = std::move(svals);
  else
    inst = extend_from_plain(inst.graph);
  inst.check();
  return inst;
}

inline WeightedGraph parse_graph(const std::string& text) { return parse_extended(text).graph; }

inline TreeDecomposition parse_td(const std::string& text) {
  auto lines = detail::content_lines(text);
  if (lines.empty()) throw InputError("missing s-line");
  std::istringstream head(lines[0]);
  std::string s, td_tok;
  long long bags = -1, w1 = -1, n = -1;
  if (!(head >> s >> td_tok >> bags >> w1 >> n) || s != "s" || td_tok != "td" || bags < 0 ||
      n < 0)
    throw InputError("malformed s-line: " + lines[0]);
  TreeDecomposition td;
  td.bags.assign(bags, {});
  std::vector<char> seen(bags, 0);
  for (std::size_t i = 1; i < lines.size(); ++i) {
    std::istringstream ls(lines[i]);
    std::string first;
    ls >> first;
    if (first == "b") {
      std::string id_tok;
      if (!(ls >> id_tok)) throw InputError("malformed bag line: " + lines[i]);
      int id = detail::parse_vertex(id_tok, static_cast<int>(bags), "bag id");
      if (seen[id]) throw InputError("duplicate bag id: " + id_tok);
      seen[id] = 1;
      std::string vt;
      while (ls >> vt)
        td.bags[id].push_back(detail::parse_vertex(vt, static_cast<int>(n), "bag vertex"));
    } else {
      std::string bt;
      if (!(ls >> bt)) throw InputError("malformed tree edge line: " + lines[i]);
      int a = detail::parse_vertex(first, static_cast<int>(bags), "bag id");
      int b = detail::parse_vertex(bt, static_cast<int>(bags), "bag id");
      std::string extra;
      if (ls >> extra) throw InputError("malformed tree edge line: " + lines[i]);
      td.tree_edges.push_back({a, b});
    }
  }
  td.normalize();
  return td;
}

inline Cut parse_cut(const std::string& text, int n) {
  auto lines = detail::content_lines(text);
  Cut c;
  for (const auto& line : lines) {
    std::istringstream ls(line);
    std::string t;
    while (ls >> t) {
      if (t != "0" && t != "1") throw InputError("cut sides must be 0 or 1, got: " + t);
      c.push_back(t == "1");
    }
  }
  if (static_cast<int>(c.size()) != n)
    throw InputError("cut file has " + std::to_string(c.size()) + " sides, expected " +
                     std::to_string(n));
  return c;
}

inline std::string write_graph(const WeightedGraph& g) {
  std::ostringstream out;
  out << "p msc " << g.vertex_count() << " " << g.edge_count() << "\n";
  for (const Edge& e : g.edges()) out << e.u + 1 << " " << e.v + 1 << " " << e.weight << "\n";
  return out.str();
}

inline std::string write_extended(const ExtendedInstance& inst) {
  inst.check();
  std::ostringstream out;
  out << "p msc-ext " << inst.graph.vertex_count() << " " << inst.graph.edge_count() << "\n";
  for (int e = 0; e < inst.graph.edge_count(); ++e) {
    const Edge& ed = inst.graph.edge(e);
    out << ed.u + 1 << " " << ed.v + 1 << " " << ed.weight << " " << inst.s[e].first << " "
        << inst.s[e].second << "\n";
  }
  return out.str();
}

inline std::string write_td(const TreeDecomposition& td, int n) {
  std::ostringstream out;
  out << "s td " << td.node_count() << " " << td.width() + 1 << " " << n << "\n";
  for (int i = 0; i < td.node_count(); ++i) {
    out << "b " << i + 1;
    for (int v : td.bags[i]) out << " " << v + 1;
    out << "\n";
  }
  for (auto [a, b] : td.tree_edges) out << a + 1 << " " << b + 1 << "\n";
  return out.str();
}

inline std::string write_cut(const Cut& c) {
  std::ostringstream out;
  for (std::size_t i = 0; i < c.size(); ++i) out << (i ? " " : "") << int(c[i]);
  out << "\n";
  return out.str();
}

}  // namespace msc
