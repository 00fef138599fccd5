#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "tncount/contraction.hpp"
#include "tncount/decomp.hpp"
#include "tncount/network.hpp"

namespace tnc {

enum class Method { greedy, lg, ft, portfolio };

const char* to_string(Method m);
std::optional<Method> method_from_string(std::string_view name);

/// A network together with the contraction tree chosen for it. For FT the
/// network is the factored one.
struct PlanResult {
  Method method = Method::greedy;
  TensorNetwork network;
  ContractionTree tree;
  int max_rank = 0;
  int source_width = -1;  // width of the decomposition used; -1 for greedy
  double flops = 0.0;
  double plan_seconds = 0.0;
};

/// Problems with the plan (tree not valid for the network, stale max_rank).
std::vector<std::string> validate_plan(const PlanResult& plan);

/// Line-oriented dump: method, widths, max rank, tensor count and the tree.
std::string format_plan(const PlanResult& plan);

/// Repeatedly merges the pair of connected tensors whose product has the
/// smallest rank; ties are broken by a seeded RNG. Disconnected remainders
/// are joined smallest-rank first.
PlanResult plan_greedy(const TensorNetwork& n, std::uint64_t seed);

/// Carving decomposition of g built from a tree decomposition of Line(g) of
/// width w; its width is at most w + 1. Throws InvalidArgument if g has no
/// edges or the decomposition does not fit Line(g).
CarvingDecomposition line_graph_carving(const Multigraph& g, const TreeDecomposition& line_td);

/// Line-Graph method: `line_td` decomposes Line(structure graph of n).
PlanResult plan_lg(const TensorNetwork& n, const TreeDecomposition& line_td);

/// Unrooted tree over which a tensor is factored. Node n carries the
/// original indices listed in node_indices[n]; in the textbook form each
/// leaf carries one index and internal nodes carry none.
struct DimensionTree {
  UnrootedTree tree;
  std::vector<std::vector<Index>> node_indices;
};

/// Merges every node whose rank (indices plus arcs) is at most 2 into a
/// neighbor until none is left, except a lone node. Node ranks never grow.
/// The tree is compacted afterwards. Returns old node → new id of the node it
/// ended up in; if `survivor` is given it receives new id → the old node
/// that absorbed the others.
std::vector<int> compress_dimension_tree(DimensionTree& dt, std::vector<int>* survivor = nullptr);

struct FactoredTensor {
  std::vector<NetworkTensor> pieces;  // piece n sits on dimension-tree node n (no dead nodes allowed)
};

/// Hierarchical factoring of a weighted-copy or clause tensor along a
/// dimension tree: contracting the pieces gives back `a`, each original
/// index lives on its node's piece, and every bond has the domain size of
/// a's indices. `root` picks the piece carrying the weights (copy) or the
/// "clause satisfied" check (clause); -1 means node 0. Dense tensors of rank
/// at most 3 are accepted only on a single-node tree.
FactoredTensor factor_tensor(const NetworkTensor& a, const DimensionTree& dim_tree, int root = -1);

/// Factor-Tree method: `td` decomposes the structure graph of n. Every
/// tensor of rank 4 or more is factored into rank-3 pieces along the
/// decomposition; the plan's max rank is at most ceil(4(w+1)/3). Throws
/// InvalidArgument when n has more than three free indices or a tensor
/// cannot be factored.
PlanResult plan_ft(const TensorNetwork& n, const TreeDecomposition& td);

/// ceil(4(w+1)/3).
inline int ft_rank_bound(int width) { return (4 * (width + 1) + 2) / 3; }

}  // namespace tnc
