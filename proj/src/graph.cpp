#include "tncount/graph.hpp"

#include <algorithm>
#include <deque>
#include <iostream>
#include <set>
#include <sstream>

#include "tncount/errors.hpp"

namespace tnc {

int Multigraph::add_vertex() {
  incident_.emplace_back();
  return num_vertices() - 1;
}

int Multigraph::add_edge(int u, int v) {
  if (u < 0 || v < 0 || u >= num_vertices() || v >= num_vertices())
    throw InvalidArgument("edge endpoint out of range");
  if (u == v) throw InvalidArgument("self-loop on vertex " + std::to_string(u));
  int e = num_edges();
  ends_.emplace_back(u, v);
  incident_[u].push_back(e);
  incident_[v].push_back(e);
  return e;
}

std::vector<std::vector<int>> Multigraph::simple_adjacency() const {
  std::vector<std::vector<int>> adj(num_vertices());
  for (const auto& [u, v] : ends_) {
    adj[u].push_back(v);
    adj[v].push_back(u);
  }
  for (auto& a : adj) {
    std::sort(a.begin(), a.end());
    a.erase(std::unique(a.begin(), a.end()), a.end());
  }
  return adj;
}

bool Multigraph::is_simple() const {
  std::set<std::pair<int, int>> seen;
  for (auto [u, v] : ends_)
    if (!seen.insert(std::minmax(u, v)).second) return false;
  return true;
}

bool Multigraph::is_connected() const {
  if (num_vertices() == 0) return true;
  std::vector<bool> seen(num_vertices(), false);
  std::deque<int> q{0};
  seen[0] = true;
  int count = 1;
  while (!q.empty()) {
    int v = q.front();
    q.pop_front();
    for (int e : incident_[v]) {
      int w = other_end(e, v);
      if (!seen[w]) {
        seen[w] = true;
        ++count;
        q.push_back(w);
      }
    }
  }
  return count == num_vertices();
}

std::vector<std::string> validate_clique_cover(const EdgeCliqueCover& cover, const Multigraph& g) {
  std::vector<std::string> problems;
  std::vector<bool> covered(g.num_vertices(), false);
  auto adj = g.simple_adjacency();
  for (std::size_t a = 0; a < cover.sets.size(); ++a) {
    const auto& s = cover.sets[a];
    for (int v : s) {
      if (v < 0 || v >= g.num_vertices()) {
        problems.push_back("label " + std::to_string(a) + " names unknown vertex " + std::to_string(v));
        continue;
      }
      covered[v] = true;
    }
    for (std::size_t i = 0; i < s.size(); ++i)
      for (std::size_t j = i + 1; j < s.size(); ++j) {
        int u = s[i], v = s[j];
        if (u < 0 || v < 0 || u >= g.num_vertices() || v >= g.num_vertices()) continue;
        if (u == v || !std::binary_search(adj[u].begin(), adj[u].end(), v))
          problems.push_back("label " + std::to_string(a) + " is not a clique: " + std::to_string(u) + " and " +
                             std::to_string(v) + " are not adjacent");
      }
  }
  for (int v = 0; v < g.num_vertices(); ++v)
    if (!covered[v]) problems.push_back("vertex " + std::to_string(v) + " is in no set");
  return problems;
}

Multigraph line_graph(const Multigraph& g) {
  Multigraph line(g.num_edges());
  // each shared endpoint contributes one edge, so parallel edges of g end up
  // joined twice
  for (int v = 0; v < g.num_vertices(); ++v) {
    const auto& inc = g.incident(v);
    for (std::size_t i = 0; i < inc.size(); ++i)
      for (std::size_t j = i + 1; j < inc.size(); ++j) line.add_edge(inc[i], inc[j]);
  }
  return line;
}

EdgeCliqueCover edge_incidence_cover(const Multigraph& g) {
  EdgeCliqueCover cover;
  cover.sets.reserve(g.num_vertices());
  for (int v = 0; v < g.num_vertices(); ++v) {
    auto s = g.incident(v);
    std::sort(s.begin(), s.end());
    cover.sets.push_back(std::move(s));
  }
  return cover;
}

EdgeCliqueCover edge_endpoint_cover(const Multigraph& g) {
  EdgeCliqueCover cover;
  cover.sets.reserve(g.num_edges());
  for (int e = 0; e < g.num_edges(); ++e) {
    auto [u, v] = g.endpoints(e);
    cover.sets.push_back({std::min(u, v), std::max(u, v)});
  }
  return cover;
}

Multigraph read_pace_graph(std::istream& in) {
  std::string line;
  std::size_t lineno = 0;
  Multigraph g;
  bool header = false;
  int expected_edges = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream ss(line);
    std::string tok;
    if (!(ss >> tok) || tok == "c") continue;
    if (tok == "p") {
      std::string fmt;
      int n = 0;
      if (header || !(ss >> fmt >> n >> expected_edges) || fmt != "tw" || n < 0 || expected_edges < 0)
        throw ParseError(lineno, "bad header, expected 'p tw <n> <m>'");
      g = Multigraph(n);
      header = true;
      continue;
    }
    if (!header) throw ParseError(lineno, "edge before header");
    long u = 0, v = 0;
    std::istringstream es(line);
    if (!(es >> u >> v)) throw ParseError(lineno, "expected an edge 'u v'");
    if (u < 1 || v < 1 || u > g.num_vertices() || v > g.num_vertices())
      throw ParseError(lineno, "vertex out of range");
    if (u == v) throw ParseError(lineno, "self-loop");
    g.add_edge(static_cast<int>(u - 1), static_cast<int>(v - 1));
  }
  if (!header) throw ParseError(lineno, "missing 'p tw' header");
  if (g.num_edges() != expected_edges)
    throw ParseError(lineno, "header announces " + std::to_string(expected_edges) + " edges, found " +
                                 std::to_string(g.num_edges()));
  return g;
}

std::size_t write_pace_graph(const Multigraph& g, std::ostream& out) {
  std::set<std::pair<int, int>> edges;
  for (int e = 0; e < g.num_edges(); ++e) {
    auto [u, v] = g.endpoints(e);
    edges.insert(std::minmax(u, v));
  }
  out << "p tw " << g.num_vertices() << ' ' << edges.size() << '\n';
  for (auto [u, v] : edges) out << u + 1 << ' ' << v + 1 << '\n';
  return static_cast<std::size_t>(g.num_edges()) - edges.size();
}

}  // namespace tnc
