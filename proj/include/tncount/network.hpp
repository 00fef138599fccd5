#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <unordered_map>
#include <vector>

#include "tncount/formula.hpp"
#include "tncount/graph.hpp"
#include "tncount/tensor.hpp"

namespace tnc {

/// Structured families a network tensor may carry. Structured tensors stay
/// symbolic until materialized, so a rank-100 variable tensor costs nothing
/// until a contraction actually needs its entries.
enum class TensorKind { dense, weighted_copy, clause };

/// Which literal of a variable a clause contains at one index.
enum class Polarity : std::uint8_t { positive, negative, both };

inline bool literal_satisfied(Polarity p, std::uint32_t value) {
  return p == Polarity::both || (p == Polarity::positive) == (value == 1);
}

class NetworkTensor {
 public:
  static NetworkTensor dense(Tensor t);
  /// Entries W1 on the all-ones assignment, W0 on all-zeros, 0 elsewhere.
  /// Over no indices the tensor is the scalar W0 + W1.
  static NetworkTensor weighted_copy(std::vector<Index> indices, LiteralWeights w);
  /// Entry 1 iff some index value satisfies its literal.
  static NetworkTensor clause(std::vector<Index> indices, std::vector<Polarity> polarity);

  const std::vector<Index>& indices() const { return indices_; }
  int rank() const { return static_cast<int>(indices_.size()); }
  TensorKind kind() const { return kind_; }
  const LiteralWeights& weights() const { return weights_; }
  std::span<const Polarity> polarity() const { return polarity_; }

  Tensor materialize() const;

 private:
  TensorKind kind_ = TensorKind::dense;
  std::vector<Index> indices_;
  LiteralWeights weights_;
  std::vector<Polarity> polarity_;
  std::shared_ptr<const Tensor> dense_;
};

/// A non-empty set of tensors in which no index appears more than twice.
///
/// Indices are also numbered locally (0..num_indices-1) in order of first
/// appearance, which is what the symbolic routines work with.
class TensorNetwork {
 public:
  /// Throws InvalidArgument for an empty set, an index used three or more
  /// times, an index repeated on one tensor, or inconsistent domain sizes.
  explicit TensorNetwork(std::vector<NetworkTensor> tensors);

  std::size_t size() const { return tensors_.size(); }
  const NetworkTensor& tensor(std::size_t i) const { return tensors_[i]; }
  const std::vector<NetworkTensor>& tensors() const { return tensors_; }

  int num_indices() const { return static_cast<int>(indices_.size()); }
  const Index& index(int local) const { return indices_[local]; }
  int local_id(const Index& i) const;
  /// Local ids of a tensor's indices, in its index order.
  const std::vector<int>& local_indices(std::size_t t) const { return local_[t]; }
  /// Tensors holding a local index: one entry for free, two for bond.
  const std::vector<int>& holders(int local) const { return holders_[local]; }
  bool is_free(int local) const { return holders_[local].size() == 1; }

  std::vector<Index> free_indices() const;
  std::vector<Index> bond_indices() const;
  /// Largest domain over bond indices, 0 when there are none.
  std::uint32_t bond_dimension() const;

 private:
  std::vector<NetworkTensor> tensors_;
  std::vector<Index> indices_;
  std::unordered_map<std::uint64_t, int> local_of_;
  std::vector<std::vector<int>> local_;
  std::vector<std::vector<int>> holders_;
};

/// Network whose contraction is the weighted model count of a formula.
/// Tensor v-1 is A_v for variable v; tensor num_vars + c is B_c for clause c.
TensorNetwork reduce_wmc(const CnfFormula& f);

/// Tensors as vertices 0..size-1 plus the free vertex; one edge per index,
/// numbered by local index id.
struct StructureGraph {
  Multigraph graph;
  int free_vertex = 0;
};

StructureGraph structure_graph(const TensorNetwork& n);

}  // namespace tnc
