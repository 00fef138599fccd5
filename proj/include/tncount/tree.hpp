#pragma once

#include <functional>
#include <vector>

namespace tnc {

/// Adjacency-list tree used by carving decompositions, tree decompositions
/// and dimension trees. Nodes are dense ids; removal marks a node dead until
/// `compact` renumbers the survivors.
class UnrootedTree {
 public:
  UnrootedTree() = default;
  explicit UnrootedTree(int num_nodes) : adj_(num_nodes), alive_(num_nodes, true), live_(num_nodes) {}

  int add_node();
  void add_arc(int a, int b);
  void remove_arc(int a, int b);
  /// Removes a node and all its arcs.
  void remove_node(int n);
  /// Replaces arc a-b by a-m-b with a fresh node m; returns m.
  int subdivide(int a, int b);
  /// Removes a degree-2 node, joining its two neighbors directly.
  void suppress(int n);

  int size() const { return static_cast<int>(adj_.size()); }
  int live_count() const { return live_; }
  bool alive(int n) const { return alive_[n]; }
  int degree(int n) const { return static_cast<int>(adj_[n].size()); }
  const std::vector<int>& neighbors(int n) const { return adj_[n]; }
  int num_arcs() const;

  /// Drops dead nodes; returns old id → new id (-1 for removed nodes).
  std::vector<int> compact();

  /// Connected and acyclic over the live nodes (the empty tree is not).
  bool is_tree() const;
  /// True when every live node has degree 1 or 3, allowing the one- and
  /// two-node trees.
  bool is_binary() const;

  /// Parent of each live node when rooted at `root` (-1 for the root and for
  /// dead nodes), plus nodes in BFS order.
  void root_at(int root, std::vector<int>& parent, std::vector<int>& order) const;

  /// Node minimizing the largest component left by its removal; ties go to
  /// the smallest id.
  int centroid() const;

 private:
  std::vector<std::vector<int>> adj_;
  std::vector<bool> alive_;
  int live_ = 0;
};

/// Repeatedly removes leaves for which `keep` is false, then suppresses
/// degree-2 nodes for which `keep` is false. Returns the number of live
/// nodes left.
int prune_and_suppress(UnrootedTree& tree, const std::function<bool(int)>& keep);

}  // namespace tnc
