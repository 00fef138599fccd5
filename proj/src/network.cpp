#include "tncount/network.hpp"

#include <algorithm>
#include <map>

#include "tncount/errors.hpp"

namespace tnc {

NetworkTensor NetworkTensor::dense(Tensor t) {
  NetworkTensor n;
  n.kind_ = TensorKind::dense;
  n.indices_ = t.indices();
  n.dense_ = std::make_shared<const Tensor>(std::move(t));
  return n;
}

NetworkTensor NetworkTensor::weighted_copy(std::vector<Index> indices, LiteralWeights w) {
  for (const auto& i : indices)
    if (i.dim != 2) throw InvalidArgument("weighted copy tensors are binary");
  NetworkTensor n;
  n.kind_ = TensorKind::weighted_copy;
  n.indices_ = std::move(indices);
  n.weights_ = w;
  return n;
}

NetworkTensor NetworkTensor::clause(std::vector<Index> indices, std::vector<Polarity> polarity) {
  if (indices.empty()) throw InvalidArgument("clause tensor needs at least one index");
  if (indices.size() != polarity.size()) throw InvalidArgument("clause polarity does not match its indices");
  for (const auto& i : indices)
    if (i.dim != 2) throw InvalidArgument("clause tensors are binary");
  NetworkTensor n;
  n.kind_ = TensorKind::clause;
  n.indices_ = std::move(indices);
  n.polarity_ = std::move(polarity);
  return n;
}

Tensor NetworkTensor::materialize() const {
  switch (kind_) {
    case TensorKind::dense:
      return *dense_;
    case TensorKind::weighted_copy: {
      if (indices_.empty()) return Tensor::scalar(weights_.w0 + weights_.w1);
      std::vector<double> values(entry_count(indices_), 0.0);
      values.front() = weights_.w0;
      values.back() = weights_.w1;
      return Tensor(indices_, std::move(values));
    }
    case TensorKind::clause:
      return tensor_from_entries(indices_, [&](std::span<const std::uint32_t> a) {
        for (std::size_t k = 0; k < a.size(); ++k)
          if (literal_satisfied(polarity_[k], a[k])) return 1.0;
        return 0.0;
      });
  }
  throw Error("unknown tensor kind");
}

TensorNetwork::TensorNetwork(std::vector<NetworkTensor> tensors) : tensors_(std::move(tensors)) {
  if (tensors_.empty()) throw InvalidArgument("a tensor network needs at least one tensor");
  local_.resize(tensors_.size());
  for (std::size_t t = 0; t < tensors_.size(); ++t) {
    const auto& idx = tensors_[t].indices();
    for (std::size_t k = 0; k < idx.size(); ++k) {
      for (std::size_t j = 0; j < k; ++j)
        if (idx[j] == idx[k]) throw InvalidArgument("tensor " + std::to_string(t) + " lists an index twice");
      auto [it, inserted] = local_of_.try_emplace(idx[k].id, static_cast<int>(indices_.size()));
      if (inserted) {
        indices_.push_back(idx[k]);
        holders_.emplace_back();
      } else if (indices_[it->second].dim != idx[k].dim) {
        throw InvalidArgument("index appears with two different domain sizes");
      }
      auto& h = holders_[it->second];
      if (h.size() == 2) throw InvalidArgument("index appears more than twice");
      h.push_back(static_cast<int>(t));
      local_[t].push_back(it->second);
    }
  }
}

int TensorNetwork::local_id(const Index& i) const {
  auto it = local_of_.find(i.id);
  return it == local_of_.end() ? -1 : it->second;
}

std::vector<Index> TensorNetwork::free_indices() const {
  std::vector<Index> out;
  for (int i = 0; i < num_indices(); ++i)
    if (is_free(i)) out.push_back(indices_[i]);
  return out;
}

std::vector<Index> TensorNetwork::bond_indices() const {
  std::vector<Index> out;
  for (int i = 0; i < num_indices(); ++i)
    if (!is_free(i)) out.push_back(indices_[i]);
  return out;
}

std::uint32_t TensorNetwork::bond_dimension() const {
  std::uint32_t d = 0;
  for (int i = 0; i < num_indices(); ++i)
    if (!is_free(i)) d = std::max(d, indices_[i].dim);
  return d;
}

TensorNetwork reduce_wmc(const CnfFormula& f) {
  const int n = f.num_vars();
  std::vector<std::vector<Index>> var_indices(n + 1);
  std::vector<NetworkTensor> clause_tensors;
  clause_tensors.reserve(f.num_clauses());
  for (std::size_t c = 0; c < f.num_clauses(); ++c) {
    std::vector<Index> idx;
    std::vector<Polarity> pol;
    for (int v : f.support(c)) {
      bool pos = false, neg = false;
      for (Literal l : f.clause(c))
        if (var_of(l) == v) (l > 0 ? pos : neg) = true;
      Index i = Index::fresh(2);
      idx.push_back(i);
      pol.push_back(pos && neg ? Polarity::both : (pos ? Polarity::positive : Polarity::negative));
      var_indices[v].push_back(i);
    }
    clause_tensors.push_back(NetworkTensor::clause(std::move(idx), std::move(pol)));
  }
  std::vector<NetworkTensor> tensors;
  tensors.reserve(n + f.num_clauses());
  for (int v = 1; v <= n; ++v) tensors.push_back(NetworkTensor::weighted_copy(var_indices[v], f.weight(v)));
  for (auto& t : clause_tensors) tensors.push_back(std::move(t));
  // no variables at all: the empty product
  if (tensors.empty()) tensors.push_back(NetworkTensor::dense(Tensor::scalar(1.0)));
  return TensorNetwork(std::move(tensors));
}

StructureGraph structure_graph(const TensorNetwork& n) {
  StructureGraph s;
  s.graph = Multigraph(static_cast<int>(n.size()) + 1);
  s.free_vertex = static_cast<int>(n.size());
  for (int i = 0; i < n.num_indices(); ++i) {
    const auto& h = n.holders(i);
    s.graph.add_edge(h[0], h.size() == 2 ? h[1] : s.free_vertex);
  }
  return s;
}

}  // namespace tnc
