#include "tncount/methods.hpp"

#include <algorithm>
#include <cstdio>
#include <numeric>
#include <queue>
#include <sstream>
#include <tuple>

#include "rng.hpp"
#include "tncount/errors.hpp"

namespace tnc {

const char* to_string(Method m) {
  switch (m) {
    case Method::greedy:
      return "greedy";
    case Method::lg:
      return "lg";
    case Method::ft:
      return "ft";
    case Method::portfolio:
      return "portfolio";
  }
  return "?";
}

std::optional<Method> method_from_string(std::string_view name) {
  if (name == "greedy") return Method::greedy;
  if (name == "lg") return Method::lg;
  if (name == "ft") return Method::ft;
  if (name == "portfolio") return Method::portfolio;
  return std::nullopt;
}

std::vector<std::string> validate_plan(const PlanResult& plan) {
  std::vector<std::string> problems;
  try {
    plan.tree.validate(plan.network.size());
  } catch (const Error& e) {
    problems.push_back(e.what());
    return problems;
  }
  int r = max_rank(plan.network, plan.tree);
  if (r != plan.max_rank)
    problems.push_back("recorded max rank " + std::to_string(plan.max_rank) + " but the tree needs " + std::to_string(r));
  return problems;
}

std::string format_plan(const PlanResult& plan) {
  std::ostringstream out;
  char flops[64];
  std::snprintf(flops, sizeof flops, "%.6g", plan.flops);
  out << "method " << to_string(plan.method) << '\n'
      << "source_width " << plan.source_width << '\n'
      << "max_rank " << plan.max_rank << '\n'
      << "tensors " << plan.network.size() << '\n'
      << "flops " << flops << '\n'
      << "tree " << plan.tree.to_string() << '\n';
  return out.str();
}

namespace {

PlanResult finish(Method m, TensorNetwork network, ContractionTree tree, int source_width) {
  PlanResult p{m, std::move(network), std::move(tree)};
  p.max_rank = max_rank(p.network, p.tree);
  p.flops = contraction_flops(p.network, p.tree);
  p.source_width = source_width;
  return p;
}

std::vector<int> sym_diff(const std::vector<int>& a, const std::vector<int>& b) {
  std::vector<int> out;
  std::set_symmetric_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

}  // namespace

PlanResult plan_greedy(const TensorNetwork& n, std::uint64_t seed) {
  detail::Rng rng(seed);
  ContractionTree tree;
  struct Item {
    std::vector<int> indices;  // sorted local ids
    int node;
    bool alive;
  };
  std::vector<Item> items;
  std::vector<std::vector<int>> holders(n.num_indices());  // items ever holding a local index
  for (std::size_t t = 0; t < n.size(); ++t) {
    auto idx = n.local_indices(t);
    std::sort(idx.begin(), idx.end());
    for (int i : idx) holders[i].push_back(static_cast<int>(t));
    items.push_back({std::move(idx), tree.add_leaf(static_cast<int>(t)), true});
  }

  using Candidate = std::tuple<int, std::uint64_t, int, int>;  // rank, tie key, a, b
  std::priority_queue<Candidate, std::vector<Candidate>, std::greater<>> queue;
  auto offer = [&](int a) {
    for (int i : items[a].indices)
      for (int b : holders[i])
        if (b != a && items[b].alive)
          queue.push({static_cast<int>(sym_diff(items[a].indices, items[b].indices).size()), rng.below(~0ULL),
                      std::min(a, b), std::max(a, b)});
  };
  for (std::size_t t = 0; t < items.size(); ++t) offer(static_cast<int>(t));

  std::size_t alive = items.size();
  auto merge = [&](int a, int b) {
    items[a].alive = items[b].alive = false;
    Item c{sym_diff(items[a].indices, items[b].indices), tree.add_join(items[a].node, items[b].node), true};
    items.push_back(std::move(c));
    int id = static_cast<int>(items.size()) - 1;
    for (int i : items[id].indices) holders[i].push_back(id);
    --alive;
    return id;
  };
  while (!queue.empty()) {
    auto [r, key, a, b] = queue.top();
    queue.pop();
    if (!items[a].alive || !items[b].alive) continue;
    offer(merge(a, b));
  }
  // whatever is left shares no index; join smallest ranks first
  while (alive > 1) {
    std::vector<int> live;
    for (std::size_t i = 0; i < items.size(); ++i)
      if (items[i].alive) live.push_back(static_cast<int>(i));
    std::partial_sort(live.begin(), live.begin() + 2, live.end(), [&](int x, int y) {
      return std::make_pair(items[x].indices.size(), x) < std::make_pair(items[y].indices.size(), y);
    });
    merge(live[0], live[1]);
  }
  for (const auto& it : items)
    if (it.alive) tree.set_root(it.node);
  return finish(Method::greedy, n, std::move(tree), -1);
}

CarvingDecomposition line_graph_carving(const Multigraph& g, const TreeDecomposition& line_td) {
  if (g.num_edges() == 0) throw InvalidArgument("the line graph method needs a graph with at least one edge");
  Multigraph line = line_graph(g);
  auto simplified = simplify_leaves(line_td, line, edge_incidence_cover(g));
  CarvingDecomposition s;
  s.tree = std::move(simplified.td.tree);
  s.vertex_at.assign(s.tree.size(), -1);
  for (int v = 0; v < g.num_vertices(); ++v) s.vertex_at[simplified.leaf_of_label[v]] = v;
  return s;
}

PlanResult plan_lg(const TensorNetwork& n, const TreeDecomposition& line_td) {
  auto sg = structure_graph(n);
  auto carving = line_graph_carving(sg.graph, line_td);
  return finish(Method::lg, n, carving_to_tree(carving, n), line_td.width());
}

std::vector<int> compress_dimension_tree(DimensionTree& dt, std::vector<int>* survivor) {
  auto& tree = dt.tree;
  const int size = tree.size();
  std::vector<int> into(size);
  std::iota(into.begin(), into.end(), 0);
  auto rank = [&](int n) { return static_cast<int>(dt.node_indices[n].size()) + tree.degree(n); };
  for (bool changed = true; changed;) {
    changed = false;
    for (int u = 0; u < size; ++u) {
      if (!tree.alive(u) || tree.live_count() <= 1 || rank(u) > 2) continue;
      int s = tree.neighbors(u)[0];
      for (int m : std::vector<int>(tree.neighbors(u)))
        if (m != s) tree.add_arc(s, m);
      tree.remove_node(u);
      auto& dst = dt.node_indices[s];
      dst.insert(dst.end(), dt.node_indices[u].begin(), dt.node_indices[u].end());
      dt.node_indices[u].clear();
      into[u] = s;
      changed = true;
    }
  }
  auto remap = tree.compact();
  std::vector<std::vector<Index>> indices(tree.size());
  if (survivor) survivor->assign(tree.size(), -1);
  for (int old = 0; old < size; ++old) {
    if (remap[old] < 0) continue;
    indices[remap[old]] = std::move(dt.node_indices[old]);
    if (survivor) (*survivor)[remap[old]] = old;
  }
  dt.node_indices = std::move(indices);
  std::vector<int> out(size);
  for (int old = 0; old < size; ++old) {
    int r = old;
    while (into[r] != r) r = into[r];
    out[old] = remap[r];
  }
  return out;
}

FactoredTensor factor_tensor(const NetworkTensor& a, const DimensionTree& dt, int root) {
  const auto& tree = dt.tree;
  const int size = tree.size();
  if (static_cast<int>(dt.node_indices.size()) != size) throw InvalidArgument("dimension tree index lists do not match its nodes");
  if (tree.live_count() != size) throw InvalidArgument("dimension tree has removed nodes; compact it first");
  if (!tree.is_tree()) throw InvalidArgument("dimension tree is not a tree");
  {
    std::vector<std::uint64_t> want, have;
    for (const auto& i : a.indices()) want.push_back(i.id);
    for (const auto& list : dt.node_indices)
      for (const auto& i : list) have.push_back(i.id);
    std::sort(want.begin(), want.end());
    std::sort(have.begin(), have.end());
    if (want != have) throw InvalidArgument("dimension tree does not carry exactly the tensor's indices");
  }
  if (size == 1) return FactoredTensor{{a}};
  if (a.kind() == TensorKind::dense) throw InvalidArgument("dense tensors can only be factored over a single node");
  if (root < 0) root = 0;
  if (root >= size) throw InvalidArgument("factoring root outside the dimension tree");

  const std::uint32_t dim = a.indices().front().dim;
  std::vector<int> parent, order;
  tree.root_at(root, parent, order);
  std::vector<Index> up(size);  // bond to the parent
  for (int n = 0; n < size; ++n)
    if (parent[n] >= 0) up[n] = Index::fresh(dim);

  FactoredTensor out;
  for (int n = 0; n < size; ++n) {
    std::vector<Index> own = dt.node_indices[n];
    std::vector<Index> kids;
    for (int m : tree.neighbors(n))
      if (parent[m] == n) kids.push_back(up[m]);
    std::vector<Index> idx = own;
    idx.insert(idx.end(), kids.begin(), kids.end());
    if (parent[n] >= 0) idx.push_back(up[n]);

    if (a.kind() == TensorKind::weighted_copy) {
      LiteralWeights w = n == root ? a.weights() : LiteralWeights{};
      out.pieces.push_back(NetworkTensor::weighted_copy(std::move(idx), w));
      continue;
    }
    // clause: the bond to the parent carries "some literal below is satisfied"
    std::vector<Polarity> pol;
    for (const auto& i : own) {
      auto it = std::find(a.indices().begin(), a.indices().end(), i);
      pol.push_back(a.polarity()[it - a.indices().begin()]);
    }
    const std::size_t n_own = own.size(), n_kids = kids.size();
    const bool is_root = parent[n] < 0;
    Tensor t = tensor_from_entries(idx, [&](std::span<const std::uint32_t> v) {
      bool any = false;
      for (std::size_t k = 0; k < n_own; ++k) any = any || literal_satisfied(pol[k], v[k]);
      for (std::size_t k = 0; k < n_kids; ++k) any = any || v[n_own + k] == 1;
      if (is_root) return any ? 1.0 : 0.0;
      return (v[n_own + n_kids] == 1) == any ? 1.0 : 0.0;
    });
    out.pieces.push_back(NetworkTensor::dense(std::move(t)));
  }
  return out;
}

PlanResult plan_ft(const TensorNetwork& n, const TreeDecomposition& td) {
  if (n.free_indices().size() > 3) throw InvalidArgument("the factor-tree method allows at most three free indices");
  const auto sg = structure_graph(n);
  const Multigraph& full = sg.graph;
  const int k = sg.free_vertex;  // vertices 0..k-1 are tensors, k is free
  if (full.num_edges() == 0) throw InvalidArgument("the factor-tree method needs a network with at least one index");

  // Drop isolated vertices; edges keep their ids.
  std::vector<int> to_g(full.num_vertices(), -1), from_g;
  for (int v = 0; v < full.num_vertices(); ++v)
    if (full.degree(v) > 0) {
      to_g[v] = static_cast<int>(from_g.size());
      from_g.push_back(v);
    }
  Multigraph g(static_cast<int>(from_g.size()));
  for (int e = 0; e < full.num_edges(); ++e) {
    auto [u, v] = full.endpoints(e);
    g.add_edge(to_g[u], to_g[v]);
  }
  TreeDecomposition gtd = td;
  for (auto& bag : gtd.bags) {
    std::vector<int> kept;
    for (int v : bag) {
      if (v < 0 || v >= full.num_vertices()) throw InvalidArgument("tree decomposition names an unknown vertex");
      if (to_g[v] >= 0) kept.push_back(to_g[v]);
    }
    std::sort(kept.begin(), kept.end());
    bag = std::move(kept);
  }

  auto simplified = simplify_leaves(gtd, g, edge_endpoint_cover(g));
  const UnrootedTree& t = simplified.td.tree;
  const auto& leaf_of_edge = simplified.leaf_of_label;
  const int tsize = t.size();
  const int center = t.centroid();
  std::vector<int> tparent, torder;
  t.root_at(center, tparent, torder);

  // For every vertex of g: nodes of its spanning subtree and the topmost one.
  const int gv = g.num_vertices();
  std::vector<std::vector<int>> span_nodes(gv);
  std::vector<int> top(gv, -1);
  std::vector<int> marked(tsize, 0), below(tsize, 0);
  for (int v = 0; v < gv; ++v) {
    const auto& inc = g.incident(v);
    for (int e : inc) marked[leaf_of_edge[e]] = 1;
    const int total = static_cast<int>(inc.size());
    for (auto it = torder.rbegin(); it != torder.rend(); ++it) {
      int x = *it;
      below[x] = marked[x];
      for (int m : t.neighbors(x))
        if (tparent[m] == x) below[x] += below[m];
    }
    for (int x : torder) {
      if (below[x] == 0) continue;
      bool in = below[x] < total;
      if (!in) {
        in = true;  // x is the top unless a child already holds everything
        for (int m : t.neighbors(x))
          if (tparent[m] == x && below[m] == total) in = false;
        if (in) top[v] = x;
      }
      if (in) span_nodes[v].push_back(x);
    }
    std::sort(span_nodes[v].begin(), span_nodes[v].end());
    for (int e : inc) marked[leaf_of_edge[e]] = 0;
  }

  // Dimension trees, compressed so that every piece has rank 3 or less.
  // piece_of[v][i] is the piece holding span_nodes[v][i]; rep_node[v][p] is
  // the tree node whose copy in the carving stays as piece p's leaf.
  std::vector<std::vector<int>> piece_of(gv), rep_node(gv);
  std::vector<FactoredTensor> factored(gv);
  for (int v = 0; v < gv; ++v) {
    const auto& nodes = span_nodes[v];
    DimensionTree dt;
    dt.tree = UnrootedTree(static_cast<int>(nodes.size()));
    dt.node_indices.resize(nodes.size());
    auto local = [&](int x) {
      return static_cast<int>(std::lower_bound(nodes.begin(), nodes.end(), x) - nodes.begin());
    };
    for (std::size_t i = 0; i < nodes.size(); ++i)
      for (int m : t.neighbors(nodes[i]))
        if (m > nodes[i] && std::binary_search(nodes.begin(), nodes.end(), m)) dt.tree.add_arc(static_cast<int>(i), local(m));
    for (int e : g.incident(v)) dt.node_indices[local(leaf_of_edge[e])].push_back(n.index(e));
    std::vector<int> survivor;
    piece_of[v] = compress_dimension_tree(dt, &survivor);
    rep_node[v].resize(survivor.size());
    for (std::size_t p = 0; p < survivor.size(); ++p) rep_node[v][p] = nodes[survivor[p]];
    const int orig = from_g[v];
    if (orig != k) factored[v] = factor_tensor(n.tensor(orig), dt, piece_of[v][local(top[v])]);
  }

  // Factored network: tensors in original order, pieces in node order.
  std::vector<NetworkTensor> pieces;
  std::vector<std::vector<int>> piece_id(full.num_vertices());
  for (int orig = 0; orig < k; ++orig) {
    if (to_g[orig] < 0) {
      piece_id[orig].push_back(static_cast<int>(pieces.size()));
      pieces.push_back(n.tensor(orig));
      continue;
    }
    for (const auto& p : factored[to_g[orig]].pieces) {
      piece_id[orig].push_back(static_cast<int>(pieces.size()));
      pieces.push_back(p);
    }
  }
  TensorNetwork m(std::move(pieces));
  const int free_label = static_cast<int>(m.size());

  // Carving decomposition: copies of the spanning subtrees hang as leaves
  // along the arcs of t, split three ways at inner nodes.
  CarvingDecomposition s;
  std::vector<int> label_at;  // carving node → piece label, -1 if dropped or inner
  auto add = [&](int label) {
    label_at.push_back(label);
    return s.tree.add_node();
  };
  std::vector<std::vector<int>> at_node(tsize);  // vertices v with node in span_nodes[v]
  for (int v = 0; v < gv; ++v)
    for (int x : span_nodes[v]) at_node[x].push_back(v);
  auto label_for = [&](int v, int x) {
    const auto& nodes = span_nodes[v];
    int i = static_cast<int>(std::lower_bound(nodes.begin(), nodes.end(), x) - nodes.begin());
    int p = piece_of[v][i];
    if (rep_node[v][p] != x) return -1;  // merged into another copy
    int orig = from_g[v];
    return orig == k ? free_label : piece_id[orig][p];
  };

  if (t.live_count() == 1) {
    int prev = -1;
    for (int v : at_node[0]) {
      int leaf = add(label_for(v, 0));
      if (prev >= 0) s.tree.add_arc(prev, leaf);
      prev = leaf;
    }
  } else {
    std::vector<int> y(tsize);
    std::vector<std::vector<int>> zn(tsize);
    for (int x = 0; x < tsize; ++x) {
      y[x] = add(-1);
      for (std::size_t j = 0; j < t.neighbors(x).size(); ++j) zn[x].push_back(add(-1));
    }
    for (int x = 0; x < tsize; ++x) {
      const auto& nb = t.neighbors(x);
      for (std::size_t j = 0; j < nb.size(); ++j) {
        int o = nb[j];
        if (o < x) continue;
        auto back = std::find(t.neighbors(o).begin(), t.neighbors(o).end(), x) - t.neighbors(o).begin();
        s.tree.add_arc(zn[x][j], zn[o][back]);
      }
      const auto& members = at_node[x];
      const std::size_t groups = nb.size();
      std::size_t next = 0;
      for (std::size_t j = 0; j < groups; ++j) {
        std::size_t count = members.size() / groups + (j < members.size() % groups ? 1 : 0);
        int prev = y[x];
        for (std::size_t c = 0; c < count; ++c, ++next) {
          int xv = add(-1);
          s.tree.add_arc(prev, xv);
          int leaf = add(label_for(members[next], x));
          s.tree.add_arc(xv, leaf);
          prev = xv;
        }
        s.tree.add_arc(prev, zn[x][j]);
      }
    }
  }
  // Copies merged into another piece are unlabeled, so pruning drops their
  // leaves together with the bare y and z scaffolding.
  prune_and_suppress(s.tree, [&](int node) { return label_at[node] >= 0; });

  // Isolated vertices of the structure graph: rank-0 tensors and, without
  // free indices, the free vertex.
  auto attach = [&](int label) {
    int leaf = add(label);
    int host = -1;
    for (int node = 0; node < s.tree.size() && host < 0; ++node)
      if (s.tree.alive(node) && node != leaf) host = node;
    if (s.tree.degree(host) == 0) {
      s.tree.add_arc(host, leaf);
    } else {
      int mid = s.tree.subdivide(host, s.tree.neighbors(host)[0]);
      label_at.push_back(-1);
      s.tree.add_arc(mid, leaf);
    }
  };
  for (int orig = 0; orig < k; ++orig)
    if (to_g[orig] < 0) attach(piece_id[orig][0]);
  if (to_g[k] < 0) attach(free_label);

  auto remap = s.tree.compact();
  s.vertex_at.assign(s.tree.size(), -1);
  for (std::size_t old = 0; old < remap.size(); ++old)
    if (remap[old] >= 0) s.vertex_at[remap[old]] = label_at[old];
  auto tree = carving_to_tree(s, m);
  PlanResult built = finish(Method::ft, std::move(m), std::move(tree), td.width());

  // The construction only guarantees the bound; a rank-greedy pass over the
  // factored network often does better, so keep whichever tree is narrower.
  PlanResult polished = plan_greedy(built.network, 0);
  if (std::tie(polished.max_rank, polished.flops) < std::tie(built.max_rank, built.flops)) {
    polished.method = Method::ft;
    polished.source_width = built.source_width;
    return polished;
  }
  return built;
}

}  // namespace tnc
