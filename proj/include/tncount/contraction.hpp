#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "tncount/deadline.hpp"
#include "tncount/graph.hpp"
#include "tncount/network.hpp"
#include "tncount/tree.hpp"

namespace tnc {

/// Rooted binary tree whose leaves are network tensors (by position).
class ContractionTree {
 public:
  struct Node {
    int leaf = -1;  // tensor position for leaves, -1 for joins
    int left = -1;
    int right = -1;
  };

  int add_leaf(int tensor);
  int add_join(int left, int right);
  void set_root(int node) { root_ = node; }

  int root() const { return root_; }
  const std::vector<Node>& nodes() const { return nodes_; }
  const Node& node(int i) const { return nodes_[i]; }
  bool is_leaf(int i) const { return nodes_[i].leaf >= 0; }
  std::size_t num_leaves() const;

  /// Nodes reachable from the root with children before parents.
  std::vector<int> postorder() const;

  /// Throws InvalidArgument unless the leaves reachable from the root are
  /// exactly the tensors 0..num_tensors-1, each once.
  void validate(std::size_t num_tensors) const;

  /// Nested parenthesized form: a leaf is its tensor id, a join "(l r)".
  std::string to_string() const;
  static ContractionTree parse(std::string_view text);

 private:
  std::vector<Node> nodes_;
  int root_ = -1;
};

constexpr std::size_t kDefaultMemCapEntries = std::size_t{1} << 30;
constexpr double kDefaultSecondsPerFlop = 1e-10;

struct ContractOptions {
  std::size_t mem_cap_entries = kDefaultMemCapEntries;
  Deadline deadline;
};

struct ContractStats {
  int peak_rank = 0;  // largest rank actually materialized
  std::size_t pairwise_contractions = 0;
};

/// Contracts the network along the tree. Before materializing anything the
/// whole tree is checked symbolically against the entry cap, so a plan that
/// is too wide is refused up front with MemoryCapError. The deadline is
/// checked between pairwise contractions.
Tensor contract(const TensorNetwork& n, const ContractionTree& t, const ContractOptions& opts = {},
                ContractStats* stats = nullptr);

/// Local index ids of the tensor produced at every tree node (sorted).
std::vector<std::vector<int>> node_index_sets(const TensorNetwork& n, const ContractionTree& t);

/// Largest rank of any tensor produced while executing the tree, leaves
/// included. Symbolic; nothing is materialized.
int max_rank(const TensorNetwork& n, const ContractionTree& t);

/// Multiply-adds of all pairwise contractions: for each join, the product of
/// domain sizes over the union of its children's indices.
double contraction_flops(const TensorNetwork& n, const ContractionTree& t);

/// Seconds predicted for `contract`, i.e. flops times a per-flop constant.
inline double estimate_cost(const TensorNetwork& n, const ContractionTree& t,
                            double seconds_per_flop = kDefaultSecondsPerFlop) {
  return contraction_flops(n, t) * seconds_per_flop;
}

/// Unrooted binary tree whose leaves are graph vertices.
struct CarvingDecomposition {
  UnrootedTree tree;
  std::vector<int> vertex_at;  // node → graph vertex, -1 on internal nodes
};

/// Structural problems with `s` as a carving decomposition of `g`.
std::vector<std::string> validate_carving(const CarvingDecomposition& s, const Multigraph& g);

/// Largest number of edges crossing the bipartition of any arc; 0 when the
/// graph has no edges. Throws InvalidArgument if leaves ≠ vertices.
int carving_width(const CarvingDecomposition& s, const Multigraph& g);

/// Attaches the free vertex at the root. A one-tensor tree becomes the
/// two-leaf decomposition {tensor, free vertex}.
CarvingDecomposition tree_to_carving(const ContractionTree& t, const TensorNetwork& n);

/// Drops the free-vertex leaf and roots the rest at its former neighbor.
/// Degree-2 nodes (other than that root) are tolerated and skipped.
ContractionTree carving_to_tree(const CarvingDecomposition& s, const TensorNetwork& n);

}  // namespace tnc
