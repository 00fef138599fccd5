#pragma once

#include <cstddef>
#include <istream>
#include <string>
#include <utility>
#include <vector>

namespace tnc {

/// Undirected multigraph with explicit incidence maps.
///
/// Vertex and edge ids are dense integers handed out in construction order.
/// Every edge joins two distinct vertices; parallel edges are allowed and
/// self-loops are rejected.
class Multigraph {
 public:
  Multigraph() = default;
  explicit Multigraph(int num_vertices) : incident_(num_vertices) {}

  int add_vertex();
  /// Throws InvalidArgument on a self-loop or unknown vertex.
  int add_edge(int u, int v);

  int num_vertices() const { return static_cast<int>(incident_.size()); }
  int num_edges() const { return static_cast<int>(ends_.size()); }

  /// ε(e): the two endpoints of an edge.
  const std::pair<int, int>& endpoints(int e) const { return ends_[e]; }
  /// δ(v): incident edges in insertion order.
  const std::vector<int>& incident(int v) const { return incident_[v]; }
  int degree(int v) const { return static_cast<int>(incident_[v].size()); }
  int other_end(int e, int v) const { return ends_[e].first == v ? ends_[e].second : ends_[e].first; }

  /// Neighbor lists with parallel edges collapsed, sorted ascending.
  std::vector<std::vector<int>> simple_adjacency() const;
  bool is_simple() const;
  bool is_connected() const;

 private:
  std::vector<std::pair<int, int>> ends_;
  std::vector<std::vector<int>> incident_;
};

/// Labeled family of vertex sets; label a maps to sets[a].
struct EdgeCliqueCover {
  std::vector<std::vector<int>> sets;
};

/// Problems with `cover` as an edge clique cover of `g`, empty when valid.
std::vector<std::string> validate_clique_cover(const EdgeCliqueCover& cover, const Multigraph& g);

/// Line(G): one vertex per edge of g; e and f are joined by |ε(e) ∩ ε(f)|
/// parallel edges.
Multigraph line_graph(const Multigraph& g);

/// Cover of Line(g) labeled by the vertices of g: label v ↦ δ(v).
EdgeCliqueCover edge_incidence_cover(const Multigraph& g);

/// Cover of g labeled by its edges: label e ↦ ε(e).
EdgeCliqueCover edge_endpoint_cover(const Multigraph& g);

/// PACE-2017 `.gr` format. Vertex ids are 1-based in the file.
Multigraph read_pace_graph(std::istream& in);
/// Writes the simple graph underlying `g`; returns how many parallel edges
/// were dropped.
std::size_t write_pace_graph(const Multigraph& g, std::ostream& out);

}  // namespace tnc
