#include "tncount/tensor.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <optional>

#include "tncount/errors.hpp"

namespace tnc {

Index Index::fresh(std::uint32_t dim) {
  static std::atomic<std::uint64_t> next{1};
  if (dim == 0) throw InvalidArgument("index domain must be non-empty");
  return Index{next.fetch_add(1, std::memory_order_relaxed), dim};
}

std::size_t entry_count(std::span<const Index> indices) {
  std::size_t n = 1;
  for (const auto& i : indices) {
    if (n > std::numeric_limits<std::size_t>::max() / i.dim) return std::numeric_limits<std::size_t>::max();
    n *= i.dim;
  }
  return n;
}

Tensor::Tensor(std::vector<Index> indices, std::vector<double> values)
    : indices_(std::move(indices)), values_(std::move(values)) {
  for (std::size_t i = 0; i < indices_.size(); ++i)
    for (std::size_t j = i + 1; j < indices_.size(); ++j)
      if (indices_[i] == indices_[j]) throw InvalidArgument("tensor lists an index twice");
  if (values_.size() != entry_count(indices_)) throw InvalidArgument("tensor value count does not match its indices");
}

int Tensor::position(const Index& i) const {
  for (std::size_t k = 0; k < indices_.size(); ++k)
    if (indices_[k] == i) return static_cast<int>(k);
  return -1;
}

std::size_t Tensor::offset(std::span<const std::uint32_t> assignment) const {
  if (assignment.size() != indices_.size()) throw InvalidArgument("assignment has the wrong length");
  std::size_t off = 0;
  for (std::size_t k = 0; k < indices_.size(); ++k) {
    if (assignment[k] >= indices_[k].dim) throw InvalidArgument("assignment value outside the index domain");
    off = off * indices_[k].dim + assignment[k];
  }
  return off;
}

std::vector<std::uint32_t> Tensor::assignment_at(std::size_t off) const {
  std::vector<std::uint32_t> a(indices_.size());
  for (std::size_t k = indices_.size(); k-- > 0;) {
    a[k] = static_cast<std::uint32_t>(off % indices_[k].dim);
    off /= indices_[k].dim;
  }
  return a;
}

namespace {

std::vector<std::size_t> strides_of(std::span<const Index> indices) {
  std::vector<std::size_t> s(indices.size(), 1);
  for (std::size_t k = indices.size(); k-- > 1;) s[k - 1] = s[k] * indices[k].dim;
  return s;
}

// Gathers src into dst, where dst's axis k walks src with stride step[k].
void gather(std::span<const double> src, std::span<double> dst, std::span<const Index> dst_indices,
            std::span<const std::size_t> step) {
  const std::size_t r = dst_indices.size();
  if (r == 0) {
    dst[0] = src[0];
    return;
  }
  std::vector<std::uint32_t> counter(r, 0);
  std::size_t from = 0;
  const std::size_t inner_dim = dst_indices[r - 1].dim;
  const std::size_t inner_step = step[r - 1];
  for (std::size_t out = 0; out < dst.size();) {
    for (std::size_t j = 0; j < inner_dim; ++j) dst[out++] = src[from + j * inner_step];
    // advance the outer axes
    std::size_t k = r - 1;
    while (k-- > 0) {
      from += step[k];
      if (++counter[k] < dst_indices[k].dim) break;
      from -= step[k] * dst_indices[k].dim;
      counter[k] = 0;
    }
  }
}

}  // namespace

Tensor Tensor::permuted(std::span<const Index> order) const {
  if (order.size() != indices_.size()) throw InvalidArgument("permutation has the wrong length");
  auto old_strides = strides_of(indices_);
  std::vector<std::size_t> step(order.size());
  bool identity = true;
  for (std::size_t k = 0; k < order.size(); ++k) {
    int p = position(order[k]);
    if (p < 0) throw InvalidArgument("permutation names an unknown index");
    step[k] = old_strides[p];
    identity = identity && p == static_cast<int>(k);
  }
  std::vector<Index> idx(order.begin(), order.end());
  if (identity) return Tensor(std::move(idx), values_);
  std::vector<double> out(values_.size());
  gather(values_, out, idx, step);
  return Tensor(std::move(idx), std::move(out));
}

Tensor copy_tensor(std::vector<Index> indices) {
  for (const auto& i : indices)
    if (i.dim != indices.front().dim) throw InvalidArgument("copy tensor needs one shared domain size");
  std::vector<double> values(entry_count(indices), 0.0);
  if (indices.empty()) {
    values[0] = 1.0;
    return Tensor(std::move(indices), std::move(values));
  }
  const std::size_t d = indices.front().dim;
  // constant assignment c sits at offset c * (1 + d + d^2 + ...)
  std::size_t diag = 0;
  for (std::size_t k = 0; k < indices.size(); ++k) diag = diag * d + 1;
  for (std::size_t c = 0; c < d; ++c) values[c * diag] = 1.0;
  return Tensor(std::move(indices), std::move(values));
}

Tensor tensor_from_entries(std::vector<Index> indices,
                           const std::function<double(std::span<const std::uint32_t>)>& entry) {
  std::vector<double> values(entry_count(indices));
  std::vector<std::uint32_t> a(indices.size(), 0);
  for (std::size_t off = 0; off < values.size(); ++off) {
    values[off] = entry(a);
    for (std::size_t k = a.size(); k-- > 0;) {
      if (++a[k] < indices[k].dim) break;
      a[k] = 0;
    }
  }
  return Tensor(std::move(indices), std::move(values));
}

Tensor pairwise_contract(const Tensor& a, const Tensor& b) {
  std::vector<Index> shared, free_a, free_b;
  for (const auto& i : a.indices()) {
    int p = b.position(i);
    if (p < 0) {
      free_a.push_back(i);
    } else {
      if (b.indices()[p].dim != i.dim) throw InvalidArgument("shared index has mismatched domain sizes");
      shared.push_back(i);
    }
  }
  for (const auto& i : b.indices())
    if (a.position(i) < 0) free_b.push_back(i);

  std::vector<Index> order_a = free_a;
  order_a.insert(order_a.end(), shared.begin(), shared.end());
  std::vector<Index> order_b = shared;
  order_b.insert(order_b.end(), free_b.begin(), free_b.end());

  // (m x k) * (k x n) over the permuted operands
  std::optional<Tensor> pa, pb;
  if (!std::equal(order_a.begin(), order_a.end(), a.indices().begin())) pa = a.permuted(order_a);
  if (!std::equal(order_b.begin(), order_b.end(), b.indices().begin())) pb = b.permuted(order_b);
  std::span<const double> lhs = pa ? pa->values() : a.values();
  std::span<const double> rhs = pb ? pb->values() : b.values();

  const std::size_t m = entry_count(free_a);
  const std::size_t k = entry_count(shared);
  const std::size_t n = entry_count(free_b);
  std::vector<Index> out_idx = free_a;
  out_idx.insert(out_idx.end(), free_b.begin(), free_b.end());
  std::vector<double> out(m * n, 0.0);
  for (std::size_t i = 0; i < m; ++i) {
    double* row = out.data() + i * n;
    const double* arow = lhs.data() + i * k;
    for (std::size_t p = 0; p < k; ++p) {
      const double av = arow[p];
      if (av == 0.0) continue;
      const double* brow = rhs.data() + p * n;
      for (std::size_t j = 0; j < n; ++j) row[j] += av * brow[j];
    }
  }
  return Tensor(std::move(out_idx), std::move(out));
}

bool approx_equal(const Tensor& a, const Tensor& b, double rel_tol, double abs_tol) {
  if (a.rank() != b.rank()) return false;
  for (const auto& i : a.indices())
    if (b.position(i) < 0) return false;
  Tensor bb = b.permuted(a.indices());
  for (std::size_t k = 0; k < a.size(); ++k) {
    double x = a.values()[k], y = bb.values()[k];
    if (std::abs(x - y) > abs_tol + rel_tol * std::max(std::abs(x), std::abs(y))) return false;
  }
  return true;
}

}  // namespace tnc
