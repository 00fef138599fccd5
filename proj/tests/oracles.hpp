// Reference implementations for tests. Everything here is deliberately naive
// and shares no code with the library beyond its data types.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "tncount/contraction.hpp"
#include "tncount/formula.hpp"
#include "tncount/graph.hpp"
#include "tncount/network.hpp"

namespace oracle {

// Weighted model count by enumerating assignments and testing each clause
// literal by literal.
inline double wmc(const tnc::CnfFormula& f) {
  const int n = f.num_vars();
  double total = 0.0;
  for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << n); ++bits) {
    auto val = [&](int v) { return ((bits >> (v - 1)) & 1) != 0; };
    bool ok = true;
    for (const auto& clause : f.clauses()) {
      bool sat = false;
      for (int lit : clause) sat = sat || (lit > 0 ? val(lit) : !val(-lit));
      if (!sat) {
        ok = false;
        break;
      }
    }
    if (!ok) continue;
    double w = 1.0;
    for (int v = 1; v <= n; ++v) w *= val(v) ? f.weight(v).w1 : f.weight(v).w0;
    total += w;
  }
  return total;
}

// Contraction straight from the definition: sum over every joint assignment
// of all indices of the product of entries. Returns the entries over the
// free indices in the order of `free` (row-major).
inline std::vector<double> sum_of_products(const tnc::TensorNetwork& n, const std::vector<tnc::Index>& free) {
  std::vector<tnc::Tensor> dense;
  for (const auto& t : n.tensors()) dense.push_back(t.materialize());
  const int k = n.num_indices();
  std::vector<std::uint32_t> value(k, 0);
  std::vector<int> free_local;
  for (const auto& i : free) free_local.push_back(n.local_id(i));
  std::size_t out_size = 1;
  for (const auto& i : free) out_size *= i.dim;
  std::vector<double> out(out_size, 0.0);
  for (;;) {
    double prod = 1.0;
    for (std::size_t t = 0; t < dense.size() && prod != 0.0; ++t) {
      std::vector<std::uint32_t> a;
      for (int l : n.local_indices(t)) a.push_back(value[l]);
      prod *= dense[t].at(a);
    }
    std::size_t off = 0;
    for (std::size_t j = 0; j < free.size(); ++j) off = off * free[j].dim + value[free_local[j]];
    out[off] += prod;
    int pos = 0;
    while (pos < k && ++value[pos] == n.index(pos).dim) value[pos++] = 0;
    if (pos == k) break;
  }
  return out;
}

inline double sum_of_products(const tnc::TensorNetwork& n) { return sum_of_products(n, {})[0]; }

// Unrooted binary tree as an explicit edge list; leaves are labelled.
struct LabelledTree {
  int nodes = 0;
  std::vector<std::pair<int, int>> edges;
  std::map<int, int> leaf_label;  // node → label
};

// Every unrooted binary tree with the given labelled leaves, built by
// inserting leaf k onto every edge of each tree on the first k leaves.
inline void for_each_binary_tree(int leaves, const std::function<void(const LabelledTree&)>& visit) {
  if (leaves == 1) {
    LabelledTree t;
    t.nodes = 1;
    t.leaf_label[0] = 0;
    visit(t);
    return;
  }
  std::function<void(LabelledTree&, int)> grow = [&](LabelledTree& t, int next) {
    if (next == leaves) {
      visit(t);
      return;
    }
    const std::size_t m = t.edges.size();
    for (std::size_t e = 0; e < m; ++e) {
      auto [a, b] = t.edges[e];
      int mid = t.nodes, leaf = t.nodes + 1;
      t.nodes += 2;
      t.edges[e] = {a, mid};
      t.edges.push_back({mid, b});
      t.edges.push_back({mid, leaf});
      t.leaf_label[leaf] = next;
      grow(t, next + 1);
      t.leaf_label.erase(leaf);
      t.edges.pop_back();
      t.edges.pop_back();
      t.edges[e] = {a, b};
      t.nodes -= 2;
    }
  };
  LabelledTree t;
  t.nodes = 2;
  t.edges = {{0, 1}};
  t.leaf_label = {{0, 0}, {1, 1}};
  grow(t, 2);
}

// Carving width computed by removing each tree edge and counting the graph
// edges whose endpoints fall on different sides.
inline int naive_carving_width(const LabelledTree& t, const tnc::Multigraph& g, const std::vector<int>& vertex_of_label) {
  int width = 0;
  std::vector<std::vector<int>> adj(t.nodes);
  for (auto [a, b] : t.edges) {
    adj[a].push_back(b);
    adj[b].push_back(a);
  }
  for (auto [a, b] : t.edges) {
    std::vector<int> side(t.nodes, 0);
    std::vector<int> stack{a};
    side[a] = 1;
    while (!stack.empty()) {
      int x = stack.back();
      stack.pop_back();
      for (int y : adj[x])
        if (!side[y] && !(x == a && y == b)) {
          side[y] = 1;
          stack.push_back(y);
        }
    }
    std::vector<int> vside(g.num_vertices(), 0);
    for (auto [node, label] : t.leaf_label) vside[vertex_of_label[label]] = side[node];
    int cut = 0;
    for (int e = 0; e < g.num_edges(); ++e) {
      auto [u, v] = g.endpoints(e);
      if (vside[u] != vside[v]) ++cut;
    }
    width = std::max(width, cut);
  }
  return width;
}

// Exact treewidth by dynamic programming over vertex subsets (elimination
// orderings). Feasible up to about 16 vertices.
inline int exact_treewidth(const tnc::Multigraph& g) {
  const int n = g.num_vertices();
  if (n == 0) return -1;
  std::vector<std::uint32_t> nbr(n, 0);
  for (int e = 0; e < g.num_edges(); ++e) {
    auto [u, v] = g.endpoints(e);
    nbr[u] |= 1u << v;
    nbr[v] |= 1u << u;
  }
  // q(S, v): vertices outside S ∪ {v} reachable from v through S
  auto q = [&](std::uint32_t s, int v) {
    std::uint32_t seen = 1u << v, frontier = 1u << v, out = 0;
    while (frontier) {
      int x = __builtin_ctz(frontier);
      frontier &= frontier - 1;
      std::uint32_t next = nbr[x] & ~seen;
      seen |= next;
      out |= next & ~s;
      frontier |= next & s;
    }
    return __builtin_popcount(out);
  };
  std::vector<int> tw(std::size_t{1} << n, 1 << 20);
  tw[0] = -1;
  for (std::uint32_t s = 1; s < (1u << n); ++s)
    for (int v = 0; v < n; ++v)
      if (s & (1u << v)) {
        std::uint32_t rest = s & ~(1u << v);
        tw[s] = std::min(tw[s], std::max(tw[rest], q(rest, v)));
      }
  return tw[(1u << n) - 1];
}

// Number of vertex covers of a graph by subset enumeration.
inline double vertex_cover_count(const tnc::Multigraph& g) {
  const int n = g.num_vertices();
  double count = 0;
  for (std::uint64_t s = 0; s < (std::uint64_t{1} << n); ++s) {
    bool ok = true;
    for (int e = 0; e < g.num_edges() && ok; ++e) {
      auto [u, v] = g.endpoints(e);
      ok = ((s >> u) & 1) || ((s >> v) & 1);
    }
    if (ok) count += 1;
  }
  return count;
}

// Random CNF: clause lengths 1..max_len, literals drawn uniformly, weights
// uniform in [0,1] when `weighted`.
inline tnc::CnfFormula random_cnf(std::mt19937_64& rng, int vars, int clauses, int max_len, bool weighted) {
  tnc::CnfFormula f(vars);
  std::uniform_int_distribution<int> var(1, vars), len(1, max_len), sign(0, 1);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int c = 0; c < clauses; ++c) {
    std::vector<int> lits;
    int l = len(rng);
    for (int j = 0; j < l; ++j) lits.push_back(sign(rng) ? var(rng) : -var(rng));
    f.add_clause(lits);
  }
  if (weighted)
    for (int v = 1; v <= vars; ++v) f.set_weight(v, {unit(rng), unit(rng)});
  return f;
}

// Random multigraph with parallel edges but no self-loops.
inline tnc::Multigraph random_multigraph(std::mt19937_64& rng, int vertices, int edges) {
  tnc::Multigraph g(vertices);
  if (vertices < 2) return g;
  std::uniform_int_distribution<int> pick(0, vertices - 1);
  for (int e = 0; e < edges; ++e) {
    int u = pick(rng), v = pick(rng);
    if (u != v) g.add_edge(u, v);
  }
  return g;
}

// Copy of g without its isolated vertices (edges keep their order).
inline tnc::Multigraph strip_isolated(const tnc::Multigraph& g) {
  std::vector<int> id(g.num_vertices(), -1);
  int k = 0;
  for (int v = 0; v < g.num_vertices(); ++v)
    if (g.degree(v) > 0) id[v] = k++;
  tnc::Multigraph h(k);
  for (int e = 0; e < g.num_edges(); ++e) h.add_edge(id[g.endpoints(e).first], id[g.endpoints(e).second]);
  return h;
}

inline bool close(double a, double b, double rel) {
  double scale = std::max(std::abs(a), std::abs(b));
  return std::abs(a - b) <= rel * scale || (scale < 1e-300);
}

}  // namespace oracle
