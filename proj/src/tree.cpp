#include "tncount/tree.hpp"

#include <algorithm>
#include <deque>

#include "tncount/errors.hpp"

namespace tnc {

int UnrootedTree::add_node() {
  adj_.emplace_back();
  alive_.push_back(true);
  ++live_;
  return size() - 1;
}

void UnrootedTree::add_arc(int a, int b) {
  if (a == b) throw InvalidArgument("tree arc would be a loop");
  adj_[a].push_back(b);
  adj_[b].push_back(a);
}

void UnrootedTree::remove_arc(int a, int b) {
  auto drop = [](std::vector<int>& v, int x) {
    auto it = std::find(v.begin(), v.end(), x);
    if (it == v.end()) throw InvalidArgument("no such tree arc");
    v.erase(it);
  };
  drop(adj_[a], b);
  drop(adj_[b], a);
}

void UnrootedTree::remove_node(int n) {
  for (int m : std::vector<int>(adj_[n])) remove_arc(n, m);
  if (alive_[n]) --live_;
  alive_[n] = false;
}

int UnrootedTree::subdivide(int a, int b) {
  int m = add_node();
  // keep a's and b's neighbor order stable by replacing in place
  *std::find(adj_[a].begin(), adj_[a].end(), b) = m;
  *std::find(adj_[b].begin(), adj_[b].end(), a) = m;
  adj_[m] = {a, b};
  return m;
}

void UnrootedTree::suppress(int n) {
  if (degree(n) != 2) throw InvalidArgument("suppress needs a degree-2 node");
  int a = adj_[n][0];
  int b = adj_[n][1];
  *std::find(adj_[a].begin(), adj_[a].end(), n) = b;
  *std::find(adj_[b].begin(), adj_[b].end(), n) = a;
  adj_[n].clear();
  alive_[n] = false;
  --live_;
}

int UnrootedTree::num_arcs() const {
  std::size_t total = 0;
  for (const auto& a : adj_) total += a.size();
  return static_cast<int>(total / 2);
}

std::vector<int> UnrootedTree::compact() {
  std::vector<int> remap(adj_.size(), -1);
  int next = 0;
  for (std::size_t i = 0; i < adj_.size(); ++i)
    if (alive_[i]) remap[i] = next++;
  std::vector<std::vector<int>> adj(next);
  for (std::size_t i = 0; i < adj_.size(); ++i) {
    if (!alive_[i]) continue;
    auto& out = adj[remap[i]];
    for (int m : adj_[i]) out.push_back(remap[m]);
  }
  adj_ = std::move(adj);
  alive_.assign(next, true);
  live_ = next;
  return remap;
}

bool UnrootedTree::is_tree() const {
  int live = live_count();
  if (live == 0) return false;
  if (num_arcs() != live - 1) return false;
  int start = static_cast<int>(std::find(alive_.begin(), alive_.end(), true) - alive_.begin());
  std::vector<int> parent, order;
  root_at(start, parent, order);
  return static_cast<int>(order.size()) == live;
}

bool UnrootedTree::is_binary() const {
  int live = live_count();
  for (int n = 0; n < size(); ++n) {
    if (!alive_[n]) continue;
    int d = degree(n);
    if (live == 1 ? d != 0 : (d != 1 && d != 3)) return false;
  }
  return true;
}

void UnrootedTree::root_at(int root, std::vector<int>& parent, std::vector<int>& order) const {
  parent.assign(adj_.size(), -1);
  order.clear();
  std::vector<bool> seen(adj_.size(), false);
  std::deque<int> q{root};
  seen[root] = true;
  while (!q.empty()) {
    int n = q.front();
    q.pop_front();
    order.push_back(n);
    for (int m : adj_[n]) {
      if (seen[m]) continue;
      seen[m] = true;
      parent[m] = n;
      q.push_back(m);
    }
  }
}

int UnrootedTree::centroid() const {
  int start = -1;
  for (int n = 0; n < size(); ++n)
    if (alive_[n]) {
      start = n;
      break;
    }
  if (start < 0) return -1;
  std::vector<int> parent, order;
  root_at(start, parent, order);
  int total = static_cast<int>(order.size());
  std::vector<int> below(adj_.size(), 1);
  for (auto it = order.rbegin(); it != order.rend(); ++it)
    if (parent[*it] >= 0) below[parent[*it]] += below[*it];
  int best = -1;
  int best_load = total + 1;
  for (int n : order) {
    int load = total - below[n];
    for (int m : adj_[n])
      if (parent[m] == n) load = std::max(load, below[m]);
    if (load < best_load || (load == best_load && n < best)) {
      best_load = load;
      best = n;
    }
  }
  return best;
}

int prune_and_suppress(UnrootedTree& tree, const std::function<bool(int)>& keep) {
  std::deque<int> work;
  for (int n = 0; n < tree.size(); ++n)
    if (tree.alive(n)) work.push_back(n);
  while (!work.empty()) {
    int n = work.front();
    work.pop_front();
    if (!tree.alive(n) || keep(n)) continue;
    if (tree.degree(n) <= 1 && tree.live_count() > 1) {
      std::vector<int> nbrs = tree.neighbors(n);
      tree.remove_node(n);
      for (int m : nbrs) work.push_back(m);
    } else if (tree.degree(n) == 2) {
      std::vector<int> nbrs = tree.neighbors(n);
      tree.suppress(n);
      for (int m : nbrs) work.push_back(m);
    }
  }
  return tree.live_count();
}

}  // namespace tnc
