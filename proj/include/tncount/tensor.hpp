#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

namespace tnc {

/// A tensor index: an opaque token plus the size of its domain [i].
/// Identity is the token alone; `fresh` never hands out the same token twice
/// within a process.
struct Index {
  std::uint64_t id = 0;
  std::uint32_t dim = 2;

  static Index fresh(std::uint32_t dim = 2);
  bool operator==(const Index& o) const { return id == o.id; }
};

/// Dense real tensor over an ordered list of distinct indices, stored
/// row-major (the last index varies fastest).
class Tensor {
 public:
  Tensor() : values_(1, 0.0) {}
  Tensor(std::vector<Index> indices, std::vector<double> values);
  static Tensor scalar(double v) { return Tensor({}, {v}); }

  const std::vector<Index>& indices() const { return indices_; }
  int rank() const { return static_cast<int>(indices_.size()); }
  std::size_t size() const { return values_.size(); }
  std::span<const double> values() const { return values_; }
  std::span<double> values() { return values_; }

  /// Position of `i` in the index list, or -1.
  int position(const Index& i) const;
  /// Row-major offset of an assignment given in index-list order.
  std::size_t offset(std::span<const std::uint32_t> assignment) const;
  /// Inverse of `offset`.
  std::vector<std::uint32_t> assignment_at(std::size_t offset) const;
  double at(std::span<const std::uint32_t> assignment) const { return values_[offset(assignment)]; }

  /// Same tensor with its indices listed in `order` (a permutation of the
  /// current index list).
  Tensor permuted(std::span<const Index> order) const;

 private:
  std::vector<Index> indices_;
  std::vector<double> values_;
};

/// Number of entries of a dense tensor over `indices`; saturates at
/// SIZE_MAX instead of overflowing.
std::size_t entry_count(std::span<const Index> indices);

/// COPY_I: 1 on constant assignments, 0 elsewhere. Throws InvalidArgument
/// when the indices do not share one domain size.
Tensor copy_tensor(std::vector<Index> indices);

/// Dense materialization of an entry function over all assignments.
Tensor tensor_from_entries(std::vector<Index> indices,
                           const std::function<double(std::span<const std::uint32_t>)>& entry);

/// A · B: sums all shared indices at once. The result lists A's remaining
/// indices followed by B's. Throws InvalidArgument on a domain mismatch.
Tensor pairwise_contract(const Tensor& a, const Tensor& b);

/// Entrywise comparison after aligning index order; false if the index sets
/// differ.
bool approx_equal(const Tensor& a, const Tensor& b, double rel_tol, double abs_tol = 0.0);

}  // namespace tnc
