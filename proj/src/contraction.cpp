#include "tncount/contraction.hpp"

#include <algorithm>
#include <cctype>
#include <optional>
#include <sstream>

#include "tncount/errors.hpp"

namespace tnc {

int ContractionTree::add_leaf(int tensor) {
  nodes_.push_back({tensor, -1, -1});
  return static_cast<int>(nodes_.size()) - 1;
}

int ContractionTree::add_join(int left, int right) {
  nodes_.push_back({-1, left, right});
  return static_cast<int>(nodes_.size()) - 1;
}

std::size_t ContractionTree::num_leaves() const {
  std::size_t n = 0;
  for (int i : postorder())
    if (is_leaf(i)) ++n;
  return n;
}

std::vector<int> ContractionTree::postorder() const {
  std::vector<int> out;
  if (root_ < 0) return out;
  std::vector<std::pair<int, bool>> stack{{root_, false}};
  while (!stack.empty()) {
    auto [i, expanded] = stack.back();
    stack.pop_back();
    if (i < 0 || i >= static_cast<int>(nodes_.size())) throw InvalidArgument("contraction tree refers to a missing node");
    if (expanded || is_leaf(i)) {
      out.push_back(i);
      continue;
    }
    stack.push_back({i, true});
    stack.push_back({nodes_[i].right, false});
    stack.push_back({nodes_[i].left, false});
    if (out.size() + stack.size() > 4 * nodes_.size() + 4) throw InvalidArgument("contraction tree has a cycle");
  }
  return out;
}

void ContractionTree::validate(std::size_t num_tensors) const {
  if (root_ < 0) throw InvalidArgument("contraction tree has no root");
  std::vector<int> seen_node(nodes_.size(), 0);
  std::vector<int> seen_leaf(num_tensors, 0);
  for (int i : postorder()) {
    if (++seen_node[i] > 1) throw InvalidArgument("contraction tree node reached twice");
    const auto& nd = nodes_[i];
    if (nd.leaf >= 0) {
      if (static_cast<std::size_t>(nd.leaf) >= num_tensors)
        throw InvalidArgument("leaf names tensor " + std::to_string(nd.leaf) + " outside the network");
      if (++seen_leaf[nd.leaf] > 1) throw InvalidArgument("tensor " + std::to_string(nd.leaf) + " is a leaf twice");
    }
  }
  for (std::size_t t = 0; t < num_tensors; ++t)
    if (!seen_leaf[t]) throw InvalidArgument("tensor " + std::to_string(t) + " is missing from the tree");
}

std::string ContractionTree::to_string() const {
  std::vector<std::string> text(nodes_.size());
  for (int i : postorder()) {
    const auto& nd = nodes_[i];
    if (nd.leaf >= 0)
      text[i] = std::to_string(nd.leaf);
    else
      text[i] = "(" + std::move(text[nd.left]) + " " + std::move(text[nd.right]) + ")";
  }
  return root_ < 0 ? std::string() : text[root_];
}

ContractionTree ContractionTree::parse(std::string_view s) {
  ContractionTree t;
  std::vector<std::vector<int>> open;  // pending children per '('
  std::optional<int> top;
  std::size_t pos = 0;
  auto attach = [&](int node) {
    if (open.empty()) {
      if (top) throw InvalidArgument("contraction tree text has trailing input");
      top = node;
    } else {
      if (open.back().size() == 2) throw InvalidArgument("contraction tree join with more than two children");
      open.back().push_back(node);
    }
  };
  while (pos < s.size()) {
    char c = s[pos];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++pos;
    } else if (c == '(') {
      open.emplace_back();
      ++pos;
    } else if (c == ')') {
      if (open.empty() || open.back().size() != 2) throw InvalidArgument("contraction tree join needs two children");
      auto kids = open.back();
      open.pop_back();
      attach(t.add_join(kids[0], kids[1]));
      ++pos;
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t end = pos;
      while (end < s.size() && std::isdigit(static_cast<unsigned char>(s[end]))) ++end;
      attach(t.add_leaf(std::stoi(std::string(s.substr(pos, end - pos)))));
      pos = end;
    } else {
      throw InvalidArgument(std::string("unexpected character '") + c + "' in contraction tree");
    }
  }
  if (!open.empty() || !top) throw InvalidArgument("incomplete contraction tree text");
  t.set_root(*top);
  return t;
}

namespace {

std::vector<int> sym_diff(const std::vector<int>& a, const std::vector<int>& b) {
  std::vector<int> out;
  std::set_symmetric_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

std::size_t entries_of(const TensorNetwork& n, const std::vector<int>& locals) {
  std::vector<Index> idx;
  idx.reserve(locals.size());
  for (int i : locals) idx.push_back(n.index(i));
  return entry_count(idx);
}

}  // namespace

std::vector<std::vector<int>> node_index_sets(const TensorNetwork& n, const ContractionTree& t) {
  t.validate(n.size());
  std::vector<std::vector<int>> sets(t.nodes().size());
  for (int i : t.postorder()) {
    const auto& nd = t.node(i);
    if (nd.leaf >= 0) {
      sets[i] = n.local_indices(nd.leaf);
      std::sort(sets[i].begin(), sets[i].end());
    } else {
      sets[i] = sym_diff(sets[nd.left], sets[nd.right]);
    }
  }
  return sets;
}

int max_rank(const TensorNetwork& n, const ContractionTree& t) {
  auto sets = node_index_sets(n, t);
  int best = 0;
  for (int i : t.postorder()) best = std::max(best, static_cast<int>(sets[i].size()));
  return best;
}

double contraction_flops(const TensorNetwork& n, const ContractionTree& t) {
  auto sets = node_index_sets(n, t);
  double total = 0.0;
  for (int i : t.postorder()) {
    const auto& nd = t.node(i);
    if (nd.leaf >= 0) continue;
    std::vector<int> all;
    std::set_union(sets[nd.left].begin(), sets[nd.left].end(), sets[nd.right].begin(), sets[nd.right].end(),
                   std::back_inserter(all));
    double prod = 1.0;
    for (int k : all) prod *= n.index(k).dim;
    total += prod;
  }
  return total;
}

Tensor contract(const TensorNetwork& n, const ContractionTree& t, const ContractOptions& opts, ContractStats* stats) {
  auto sets = node_index_sets(n, t);
  auto order = t.postorder();
  for (int i : order) {
    if (entries_of(n, sets[i]) > opts.mem_cap_entries)
      throw MemoryCapError("plan needs a rank-" + std::to_string(sets[i].size()) + " tensor, above the cap of " +
                               std::to_string(opts.mem_cap_entries) + " entries",
                           static_cast<int>(sets[i].size()));
  }
  ContractStats local;
  std::vector<std::optional<Tensor>> value(t.nodes().size());
  for (int i : order) {
    const auto& nd = t.node(i);
    if (nd.leaf >= 0) {
      value[i] = n.tensor(nd.leaf).materialize();
    } else {
      opts.deadline.check();
      value[i] = pairwise_contract(*value[nd.left], *value[nd.right]);
      value[nd.left].reset();
      value[nd.right].reset();
      ++local.pairwise_contractions;
    }
    local.peak_rank = std::max(local.peak_rank, value[i]->rank());
  }
  if (stats) *stats = local;
  return std::move(*value[t.root()]);
}

std::vector<std::string> validate_carving(const CarvingDecomposition& s, const Multigraph& g) {
  std::vector<std::string> problems;
  const auto& tree = s.tree;
  if (static_cast<int>(s.vertex_at.size()) != tree.size()) {
    problems.push_back("vertex map size does not match the tree");
    return problems;
  }
  if (!tree.is_tree()) problems.push_back("not a tree");
  if (!tree.is_binary()) problems.push_back("some node has degree other than 1 or 3");
  std::vector<int> seen(g.num_vertices(), 0);
  for (int x = 0; x < tree.size(); ++x) {
    if (!tree.alive(x)) continue;
    bool leaf = tree.degree(x) <= 1;
    int v = s.vertex_at[x];
    if (leaf && v < 0) problems.push_back("leaf " + std::to_string(x) + " carries no vertex");
    if (!leaf && v >= 0) problems.push_back("internal node " + std::to_string(x) + " carries vertex " + std::to_string(v));
    if (v >= g.num_vertices()) problems.push_back("node " + std::to_string(x) + " carries unknown vertex");
    else if (v >= 0) ++seen[v];
  }
  for (int v = 0; v < g.num_vertices(); ++v)
    if (seen[v] != 1) problems.push_back("vertex " + std::to_string(v) + " appears " + std::to_string(seen[v]) + " times");
  return problems;
}

int carving_width(const CarvingDecomposition& s, const Multigraph& g) {
  auto problems = validate_carving(s, g);
  if (!problems.empty()) throw InvalidArgument("invalid carving decomposition: " + problems.front());
  const auto& tree = s.tree;
  std::vector<int> leaf_of(g.num_vertices(), -1);
  int root = -1;
  for (int x = 0; x < tree.size(); ++x) {
    if (!tree.alive(x)) continue;
    if (root < 0) root = x;
    if (s.vertex_at[x] >= 0) leaf_of[s.vertex_at[x]] = x;
  }
  std::vector<int> parent, order;
  tree.root_at(root, parent, order);
  // binary lifting for LCA
  const int N = tree.size();
  int levels = 1;
  while ((1 << levels) < N) ++levels;
  std::vector<int> depth(N, 0);
  std::vector<std::vector<int>> up(levels, std::vector<int>(N, root));
  for (int x : order) {
    if (parent[x] >= 0) {
      depth[x] = depth[parent[x]] + 1;
      up[0][x] = parent[x];
    }
  }
  for (int l = 1; l < levels; ++l)
    for (int x : order) up[l][x] = up[l - 1][up[l - 1][x]];
  auto lca = [&](int a, int b) {
    if (depth[a] < depth[b]) std::swap(a, b);
    for (int l = levels - 1; l >= 0; --l)
      if (depth[a] - (1 << l) >= depth[b]) a = up[l][a];
    if (a == b) return a;
    for (int l = levels - 1; l >= 0; --l)
      if (up[l][a] != up[l][b]) {
        a = up[l][a];
        b = up[l][b];
      }
    return parent[a];
  };
  std::vector<long> deg_sum(N, 0), inside(N, 0);
  for (int v = 0; v < g.num_vertices(); ++v) deg_sum[leaf_of[v]] += g.degree(v);
  for (int e = 0; e < g.num_edges(); ++e) {
    auto [u, v] = g.endpoints(e);
    ++inside[lca(leaf_of[u], leaf_of[v])];
  }
  long width = 0;
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    int x = *it;
    if (parent[x] < 0) continue;
    width = std::max(width, deg_sum[x] - 2 * inside[x]);
    deg_sum[parent[x]] += deg_sum[x];
    inside[parent[x]] += inside[x];
  }
  return static_cast<int>(width);
}

CarvingDecomposition tree_to_carving(const ContractionTree& t, const TensorNetwork& n) {
  t.validate(n.size());
  CarvingDecomposition s;
  std::vector<int> node_of(t.nodes().size(), -1);
  for (int i : t.postorder()) {
    node_of[i] = s.tree.add_node();
    const auto& nd = t.node(i);
    s.vertex_at.push_back(nd.leaf);
    if (nd.leaf < 0) {
      s.tree.add_arc(node_of[i], node_of[nd.left]);
      s.tree.add_arc(node_of[i], node_of[nd.right]);
    }
  }
  int z = s.tree.add_node();
  s.vertex_at.push_back(static_cast<int>(n.size()));
  s.tree.add_arc(z, node_of[t.root()]);
  return s;
}

ContractionTree carving_to_tree(const CarvingDecomposition& s, const TensorNetwork& n) {
  const int z = static_cast<int>(n.size());
  const auto& tree = s.tree;
  if (static_cast<int>(s.vertex_at.size()) != tree.size()) throw InvalidArgument("vertex map size does not match the tree");
  int z_node = -1;
  std::vector<int> seen(n.size() + 1, 0);
  int leaves = 0;
  for (int x = 0; x < tree.size(); ++x) {
    if (!tree.alive(x)) continue;
    int v = s.vertex_at[x];
    if (v < 0) continue;
    if (v > z) throw InvalidArgument("carving decomposition names a vertex outside the structure graph");
    if (tree.degree(x) > 1) throw InvalidArgument("carving decomposition puts a vertex on an internal node");
    ++seen[v];
    ++leaves;
    if (v == z) z_node = x;
  }
  if (leaves != z + 1 || std::any_of(seen.begin(), seen.end(), [](int c) { return c != 1; }))
    throw InvalidArgument("carving decomposition leaves are not the structure graph's vertices");
  if (!tree.is_tree()) throw InvalidArgument("carving decomposition is not a tree");
  if (tree.degree(z_node) != 1) throw InvalidArgument("free vertex is not a leaf");
  const int root = tree.neighbors(z_node)[0];

  ContractionTree t;
  // iterative DFS from root, never stepping back into z
  struct Frame {
    int node, from;
    bool expanded;
  };
  std::vector<Frame> stack{{root, z_node, false}};
  std::vector<int> built(tree.size(), -1);
  while (!stack.empty()) {
    Frame f = stack.back();
    stack.pop_back();
    std::vector<int> kids;
    for (int m : tree.neighbors(f.node))
      if (m != f.from) kids.push_back(m);
    if (!f.expanded) {
      if (s.vertex_at[f.node] >= 0) {
        built[f.node] = t.add_leaf(s.vertex_at[f.node]);
        continue;
      }
      if (kids.empty() || kids.size() > 2) throw InvalidArgument("carving decomposition is not binary");
      stack.push_back({f.node, f.from, true});
      for (int k : kids) stack.push_back({k, f.node, false});
      continue;
    }
    built[f.node] = kids.size() == 1 ? built[kids[0]] : t.add_join(built[kids[0]], built[kids[1]]);
  }
  t.set_root(built[root]);
  t.validate(n.size());
  return t;
}

}  // namespace tnc
