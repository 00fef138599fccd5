#pragma once

#include <condition_variable>
#include <cstdint>
#include <deque>
#include <functional>
#include <istream>
#include <mutex>
#include <optional>
#include <span>
#include <stop_token>
#include <string>
#include <thread>
#include <vector>

#include "tncount/deadline.hpp"
#include "tncount/graph.hpp"
#include "tncount/tree.hpp"

namespace tnc {

/// Tree plus a bag (sorted vertex list) per node.
struct TreeDecomposition {
  UnrootedTree tree;
  std::vector<std::vector<int>> bags;

  /// Largest bag size minus one.
  int width() const;
};

inline int td_width(const TreeDecomposition& td) { return td.width(); }

/// Every violated property, one message each; empty when `td` is a valid
/// decomposition of `g` (and binary, if asked).
std::vector<std::string> validate_td(const TreeDecomposition& td, const Multigraph& g, bool require_binary = true);

enum class TdStrategy { min_degree, min_fill };

const char* to_string(TdStrategy s);
std::optional<TdStrategy> td_strategy_from_string(std::string_view name);

/// Greedy elimination: repeatedly eliminates a vertex of least degree (or
/// least fill), ties broken by a seeded RNG, and records bag = vertex plus
/// its current neighbors. The bag tree is then binarized. A stop request on
/// `stop` aborts with Cancelled.
TreeDecomposition heuristic_td(const Multigraph& g, TdStrategy strategy, std::uint64_t seed,
                               std::stop_token stop = {});

/// Degeneracy of the simple graph underlying g; a lower bound on treewidth.
int degeneracy(const Multigraph& g);

/// Restarts heuristic_td with fresh seeds, alternating strategies, and calls
/// `emit` on every strictly narrower decomposition. The first decomposition
/// is always emitted, deadline or not. Stops when the deadline passes,
/// `emit` returns false, the width reaches the degeneracy bound, or (if
/// nonzero) `max_restarts` restarts have run.
void anytime_td(const Multigraph& g, std::span<const TdStrategy> strategies, const Deadline& deadline,
                std::uint64_t seed, const std::function<bool(const TreeDecomposition&)>& emit,
                unsigned max_restarts = 0);

/// anytime_td on a worker thread, handing emissions to one consumer.
class TdStream {
 public:
  TdStream(Multigraph g, std::vector<TdStrategy> strategies, Deadline deadline, std::uint64_t seed,
           unsigned max_restarts = 0);
  ~TdStream();
  TdStream(const TdStream&) = delete;
  TdStream& operator=(const TdStream&) = delete;

  /// Next emission; nullopt once the stream has ended or `wait` expires.
  std::optional<TreeDecomposition> next(const Deadline& wait);

 private:
  std::mutex mu_;
  std::condition_variable_any cv_;
  std::deque<TreeDecomposition> queue_;
  bool done_ = false;
  std::jthread worker_;
};

/// Makes every node degree 1 or 3 without changing the width: nodes of
/// degree > 3 become chains of copies, degree-2 nodes are merged into a
/// neighbor whose bag contains theirs or else given a duplicate leaf.
TreeDecomposition binarize(TreeDecomposition td);

struct SimplifiedTd {
  TreeDecomposition td;
  std::vector<int> leaf_of_label;  // label a → leaf whose bag is cover.sets[a]
};

/// Rebuilds a decomposition of `g` so its leaves are exactly the cover's
/// sets, one leaf per label, without increasing the width. For each label a
/// node whose bag contains the set is found (first by id) and a new leaf is
/// spliced onto its arc toward the centroid; unused leaves are then pruned
/// and degree-2 nodes suppressed. Throws InvalidArgument on an invalid
/// cover or decomposition.
SimplifiedTd simplify_leaves(const TreeDecomposition& td, const Multigraph& g, const EdgeCliqueCover& cover);

/// PACE-2017 `.td` format; bag contents are 1-based in the file.
TreeDecomposition read_pace_td(std::istream& in);
void write_pace_td(const TreeDecomposition& td, int num_vertices, std::ostream& out);

}  // namespace tnc
