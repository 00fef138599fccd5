#include "tncount/decomp.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "rng.hpp"
#include "tncount/errors.hpp"

namespace tnc {

int TreeDecomposition::width() const {
  int w = -1;
  for (int n = 0; n < tree.size(); ++n)
    if (tree.alive(n)) w = std::max(w, static_cast<int>(bags[n].size()) - 1);
  return w;
}

std::vector<std::string> validate_td(const TreeDecomposition& td, const Multigraph& g, bool require_binary) {
  std::vector<std::string> problems;
  const auto& tree = td.tree;
  if (static_cast<int>(td.bags.size()) != tree.size()) {
    problems.push_back("bag count does not match the tree");
    return problems;
  }
  if (!tree.is_tree()) {
    problems.push_back("not a tree");
    return problems;
  }
  if (require_binary && !tree.is_binary()) problems.push_back("some node has degree other than 1 or 3");

  const int nv = g.num_vertices();
  std::vector<std::vector<int>> holders(nv);  // nodes whose bag contains v
  std::vector<std::vector<int>> sorted(tree.size());
  for (int n = 0; n < tree.size(); ++n) {
    if (!tree.alive(n)) continue;
    auto bag = td.bags[n];
    std::sort(bag.begin(), bag.end());
    if (std::adjacent_find(bag.begin(), bag.end()) != bag.end())
      problems.push_back("bag " + std::to_string(n) + " repeats a vertex");
    bag.erase(std::unique(bag.begin(), bag.end()), bag.end());
    for (int v : bag) {
      if (v < 0 || v >= nv)
        problems.push_back("bag " + std::to_string(n) + " names unknown vertex " + std::to_string(v));
      else
        holders[v].push_back(n);
    }
    sorted[n] = std::move(bag);
  }
  for (int v = 0; v < nv; ++v) {
    if (holders[v].empty()) {
      problems.push_back("vertex " + std::to_string(v) + " is in no bag");
      continue;
    }
    // the holders induce a subtree iff they span exactly |holders|-1 arcs
    int arcs = 0;
    for (int n : holders[v])
      for (int m : tree.neighbors(n))
        if (m > n && std::binary_search(sorted[m].begin(), sorted[m].end(), v)) ++arcs;
    if (arcs != static_cast<int>(holders[v].size()) - 1)
      problems.push_back("bags holding vertex " + std::to_string(v) + " are not connected");
  }
  for (int e = 0; e < g.num_edges(); ++e) {
    auto [u, v] = g.endpoints(e);
    bool ok = std::any_of(holders[u].begin(), holders[u].end(), [&, v = v](int n) {
      return std::binary_search(sorted[n].begin(), sorted[n].end(), v);
    });
    if (!ok) problems.push_back("edge " + std::to_string(u) + "-" + std::to_string(v) + " is in no bag");
  }
  return problems;
}

const char* to_string(TdStrategy s) {
  switch (s) {
    case TdStrategy::min_degree:
      return "min-degree";
    case TdStrategy::min_fill:
      return "min-fill";
  }
  return "?";
}

std::optional<TdStrategy> td_strategy_from_string(std::string_view name) {
  if (name == "min-degree" || name == "min_degree") return TdStrategy::min_degree;
  if (name == "min-fill" || name == "min_fill") return TdStrategy::min_fill;
  return std::nullopt;
}

namespace {

// Contracts arc (a, into): `into` inherits a's other arcs and a dies.
void merge_into(UnrootedTree& tree, int a, int into) {
  for (int m : std::vector<int>(tree.neighbors(a)))
    if (m != into) tree.add_arc(into, m);
  tree.remove_node(a);
}

bool subset_of(const std::vector<int>& small, const std::vector<int>& big) {
  return std::includes(big.begin(), big.end(), small.begin(), small.end());
}

TreeDecomposition compacted(TreeDecomposition td) {
  auto remap = td.tree.compact();
  std::vector<std::vector<int>> bags(td.tree.size());
  for (std::size_t old = 0; old < remap.size(); ++old)
    if (remap[old] >= 0) bags[remap[old]] = std::move(td.bags[old]);
  td.bags = std::move(bags);
  return td;
}

int score_of(const std::vector<std::set<int>>& adj, int v, TdStrategy s) {
  if (s == TdStrategy::min_degree) return static_cast<int>(adj[v].size());
  int missing = 0;
  for (auto i = adj[v].begin(); i != adj[v].end(); ++i)
    for (auto j = std::next(i); j != adj[v].end(); ++j)
      if (!adj[*i].count(*j)) ++missing;
  return missing;
}

}  // namespace

TreeDecomposition heuristic_td(const Multigraph& g, TdStrategy strategy, std::uint64_t seed, std::stop_token stop) {
  const int n = g.num_vertices();
  TreeDecomposition td;
  if (n == 0) {
    td.tree = UnrootedTree(1);
    td.bags.assign(1, {});
    return td;
  }
  auto simple = g.simple_adjacency();
  std::vector<std::set<int>> adj(n);
  for (int v = 0; v < n; ++v) adj[v] = std::set<int>(simple[v].begin(), simple[v].end());

  std::vector<std::uint64_t> key(n);
  detail::Rng rng(seed);
  for (auto& k : key) k = rng.below(~std::uint64_t{0});

  std::vector<int> score(n);
  std::set<std::tuple<int, std::uint64_t, int>> queue;
  for (int v = 0; v < n; ++v) {
    score[v] = score_of(adj, v, strategy);
    queue.insert({score[v], key[v], v});
  }

  std::vector<int> pos(n, -1);
  std::vector<int> order;
  std::vector<std::vector<int>> later(n);  // neighbors at elimination time
  while (!queue.empty()) {
    if ((order.size() & 63) == 0 && stop.stop_requested()) throw Cancelled();
    auto [s, k, v] = *queue.begin();
    queue.erase(queue.begin());
    pos[v] = static_cast<int>(order.size());
    order.push_back(v);
    later[v].assign(adj[v].begin(), adj[v].end());

    std::set<int> touched(adj[v].begin(), adj[v].end());
    for (int a : adj[v]) {
      adj[a].erase(v);
      for (int b : adj[v])
        if (a != b) adj[a].insert(b);
    }
    if (strategy == TdStrategy::min_fill)
      for (int a : later[v]) touched.insert(adj[a].begin(), adj[a].end());
    adj[v].clear();
    for (int u : touched) {
      if (pos[u] >= 0) continue;
      int fresh = score_of(adj, u, strategy);
      if (fresh == score[u]) continue;
      queue.erase({score[u], key[u], u});
      score[u] = fresh;
      queue.insert({fresh, key[u], u});
    }
  }

  td.tree = UnrootedTree(n);
  td.bags.resize(n);
  for (int i = 0; i < n; ++i) {
    int v = order[i];
    auto& bag = td.bags[i];
    bag = later[v];
    bag.push_back(v);
    std::sort(bag.begin(), bag.end());
    int parent = -1;
    for (int u : later[v])
      if (parent < 0 || pos[u] < parent) parent = pos[u];
    if (parent < 0 && i + 1 < n) parent = i + 1;
    if (parent >= 0) td.tree.add_arc(i, parent);
  }

  // absorb bags contained in a neighbor's bag
  for (bool changed = true; changed;) {
    changed = false;
    for (int a = 0; a < td.tree.size() && td.tree.live_count() > 1; ++a) {
      if (!td.tree.alive(a)) continue;
      for (int b : td.tree.neighbors(a)) {
        if (subset_of(td.bags[a], td.bags[b])) {
          merge_into(td.tree, a, b);
          changed = true;
          break;
        }
      }
    }
  }
  return binarize(compacted(std::move(td)));
}

int degeneracy(const Multigraph& g) {
  auto adj = g.simple_adjacency();
  const int n = g.num_vertices();
  std::vector<int> deg(n);
  std::set<std::pair<int, int>> queue;
  for (int v = 0; v < n; ++v) {
    deg[v] = static_cast<int>(adj[v].size());
    queue.insert({deg[v], v});
  }
  std::vector<bool> gone(n, false);
  int best = 0;
  while (!queue.empty()) {
    auto [d, v] = *queue.begin();
    queue.erase(queue.begin());
    gone[v] = true;
    best = std::max(best, d);
    for (int u : adj[v]) {
      if (gone[u]) continue;
      queue.erase({deg[u], u});
      queue.insert({--deg[u], u});
    }
  }
  return best;
}

void anytime_td(const Multigraph& g, std::span<const TdStrategy> strategies, const Deadline& deadline,
                std::uint64_t seed, const std::function<bool(const TreeDecomposition&)>& emit,
                unsigned max_restarts) {
  static constexpr TdStrategy kDefault[] = {TdStrategy::min_fill, TdStrategy::min_degree};
  if (strategies.empty()) strategies = kDefault;
  const int floor = degeneracy(g);
  int best = -1;
  std::uint64_t state = seed;
  for (unsigned run = 0;; ++run) {
    if (max_restarts != 0 && run >= max_restarts) return;
    if (run > 0 && deadline.expired()) return;
    state = detail::splitmix64(state);
    auto td = heuristic_td(g, strategies[run % strategies.size()], state, deadline.stop);
    int w = td.width();
    if (best < 0 || w < best) {
      best = w;
      if (!emit(td)) return;
    }
    if (best <= floor) return;
  }
}

TdStream::TdStream(Multigraph g, std::vector<TdStrategy> strategies, Deadline deadline, std::uint64_t seed,
                   unsigned max_restarts) {
  worker_ = std::jthread([this, g = std::move(g), strategies = std::move(strategies), deadline, seed,
                          max_restarts](std::stop_token st) {
    Deadline inner{deadline.at, st};
    try {
      anytime_td(g, strategies, inner, seed,
                 [&](const TreeDecomposition& td) {
                   std::lock_guard lock(mu_);
                   queue_.push_back(td);
                   cv_.notify_all();
                   return !st.stop_requested() && !deadline.stop.stop_requested();
                 },
                 max_restarts);
    } catch (...) {
      // a failing heuristic just ends the stream
    }
    std::lock_guard lock(mu_);
    done_ = true;
    cv_.notify_all();
  });
}

TdStream::~TdStream() {
  worker_.request_stop();
  cv_.notify_all();
}

std::optional<TreeDecomposition> TdStream::next(const Deadline& wait) {
  std::unique_lock lock(mu_);
  auto ready = [&] { return !queue_.empty() || done_; };
  if (wait.at == Clock::time_point::max())
    cv_.wait(lock, wait.stop, ready);
  else
    cv_.wait_until(lock, wait.stop, wait.at, ready);
  if (queue_.empty()) return std::nullopt;
  TreeDecomposition td = std::move(queue_.front());
  queue_.pop_front();
  return td;
}

TreeDecomposition binarize(TreeDecomposition td) {
  auto& tree = td.tree;
  for (auto& b : td.bags) std::sort(b.begin(), b.end());
  auto clone = [&](int n) {
    int c = tree.add_node();
    td.bags.push_back(td.bags[n]);
    return c;
  };
  // split high-degree nodes into chains of copies
  for (int n = 0; n < tree.size(); ++n) {
    if (!tree.alive(n)) continue;
    int cur = n;
    while (tree.degree(cur) > 3) {
      std::vector<int> moved(tree.neighbors(cur).begin() + 2, tree.neighbors(cur).end());
      int c = clone(cur);
      for (int m : moved) {
        tree.remove_arc(cur, m);
        tree.add_arc(c, m);
      }
      tree.add_arc(cur, c);
      cur = c;
    }
  }
  if (tree.live_count() > 2) {
    for (int n = 0; n < tree.size(); ++n) {
      if (!tree.alive(n) || tree.degree(n) != 2) continue;
      int target = -1;
      for (int m : tree.neighbors(n))
        if (subset_of(td.bags[n], td.bags[m])) {
          target = m;
          break;
        }
      if (target >= 0) {
        merge_into(tree, n, target);
      } else {
        int c = clone(n);
        tree.add_arc(n, c);
      }
    }
  }
  return compacted(std::move(td));
}

SimplifiedTd simplify_leaves(const TreeDecomposition& input, const Multigraph& g, const EdgeCliqueCover& cover) {
  if (auto p = validate_clique_cover(cover, g); !p.empty()) throw InvalidArgument("invalid clique cover: " + p.front());
  if (auto p = validate_td(input, g, false); !p.empty())
    throw InvalidArgument("invalid tree decomposition: " + p.front());

  TreeDecomposition td = input.tree.is_binary() ? compacted(input) : binarize(input);
  for (auto& b : td.bags) std::sort(b.begin(), b.end());
  auto& tree = td.tree;
  if (tree.live_count() == 1) {
    tree.add_arc(0, tree.add_node());
    td.bags.push_back(td.bags[0]);
  }
  const int original = tree.size();
  const int center = tree.centroid();
  std::vector<int> parent, order;
  tree.root_at(center, parent, order);

  auto splice = [&](int a, int b) {
    int m = tree.subdivide(a, b);
    td.bags.push_back(td.bags[a]);
    parent.push_back(-1);
    if (parent[a] == b) {
      parent[m] = b;
      parent[a] = m;
    } else {
      parent[m] = a;
      parent[b] = m;
    }
    return m;
  };

  SimplifiedTd out;
  out.leaf_of_label.resize(cover.sets.size());
  std::vector<bool> is_label(tree.size(), false);
  for (std::size_t a = 0; a < cover.sets.size(); ++a) {
    auto set = cover.sets[a];
    std::sort(set.begin(), set.end());
    int host = 0;
    if (!set.empty()) {
      host = -1;
      for (int n = 0; n < original && host < 0; ++n)
        if (subset_of(set, td.bags[n])) host = n;
      if (host < 0) throw InvalidArgument("no bag contains the set of label " + std::to_string(a));
    }
    int toward = host == center ? tree.neighbors(host)[0] : parent[host];
    int m = splice(host, toward);
    int leaf = tree.add_node();
    td.bags.push_back(set);
    parent.push_back(m);
    tree.add_arc(m, leaf);
    is_label.resize(tree.size(), false);
    is_label[leaf] = true;
    out.leaf_of_label[a] = leaf;
  }
  is_label.resize(tree.size(), false);
  prune_and_suppress(tree, [&](int n) { return is_label[n]; });

  auto remap = tree.compact();
  std::vector<std::vector<int>> bags(tree.size());
  for (std::size_t old = 0; old < remap.size(); ++old)
    if (remap[old] >= 0) bags[remap[old]] = std::move(td.bags[old]);
  td.bags = std::move(bags);
  for (auto& l : out.leaf_of_label) l = remap[l];
  out.td = std::move(td);
  return out;
}

TreeDecomposition read_pace_td(std::istream& in) {
  std::string line;
  std::size_t lineno = 0;
  bool header = false;
  long num_bags = 0, num_vertices = 0;
  TreeDecomposition td;
  std::vector<bool> bag_seen;
  int arcs = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream ss(line);
    std::vector<std::string> toks;
    for (std::string t; ss >> t;) toks.push_back(t);
    if (toks.empty() || toks[0] == "c") continue;
    auto num = [&](const std::string& t) {
      try {
        std::size_t used = 0;
        long v = std::stol(t, &used);
        if (used != t.size()) throw std::invalid_argument(t);
        return v;
      } catch (const std::exception&) {
        throw ParseError(lineno, "expected an integer, got '" + t + "'");
      }
    };
    if (toks[0] == "s") {
      if (header) throw ParseError(lineno, "second 's td' header");
      if (toks.size() != 5 || toks[1] != "td") throw ParseError(lineno, "malformed header, expected 's td <bags> <width+1> <vertices>'");
      num_bags = num(toks[2]);
      num_vertices = num(toks[4]);
      if (num_bags < 1 || num_vertices < 0) throw ParseError(lineno, "bad counts in header");
      td.tree = UnrootedTree(static_cast<int>(num_bags));
      td.bags.resize(num_bags);
      bag_seen.assign(num_bags, false);
      header = true;
      continue;
    }
    if (!header) throw ParseError(lineno, "content before the 's td' header");
    if (toks[0] == "b") {
      if (toks.size() < 2) throw ParseError(lineno, "bag line without an id");
      long id = num(toks[1]);
      if (id < 1 || id > num_bags) throw ParseError(lineno, "bag id out of range");
      if (bag_seen[id - 1]) throw ParseError(lineno, "bag " + std::to_string(id) + " listed twice");
      bag_seen[id - 1] = true;
      auto& bag = td.bags[id - 1];
      for (std::size_t k = 2; k < toks.size(); ++k) {
        long v = num(toks[k]);
        if (v < 1 || v > num_vertices) throw ParseError(lineno, "vertex " + toks[k] + " out of range");
        bag.push_back(static_cast<int>(v - 1));
      }
      std::sort(bag.begin(), bag.end());
      bag.erase(std::unique(bag.begin(), bag.end()), bag.end());
      continue;
    }
    if (toks.size() != 2) throw ParseError(lineno, "expected a tree edge 'i j'");
    long a = num(toks[0]), b = num(toks[1]);
    if (a < 1 || b < 1 || a > num_bags || b > num_bags || a == b) throw ParseError(lineno, "tree edge endpoint out of range");
    td.tree.add_arc(static_cast<int>(a - 1), static_cast<int>(b - 1));
    ++arcs;
  }
  if (!header) throw ParseError(lineno, "missing 's td' header");
  if (arcs != num_bags - 1 || !td.tree.is_tree()) throw ParseError(lineno, "bags do not form a tree");
  return td;
}

void write_pace_td(const TreeDecomposition& input, int num_vertices, std::ostream& out) {
  TreeDecomposition td = compacted(input);
  out << "s td " << td.tree.size() << ' ' << td.width() + 1 << ' ' << num_vertices << '\n';
  for (int n = 0; n < td.tree.size(); ++n) {
    out << "b " << n + 1;
    for (int v : td.bags[n]) out << ' ' << v + 1;
    out << '\n';
  }
  for (int n = 0; n < td.tree.size(); ++n)
    for (int m : td.tree.neighbors(n))
      if (m > n) out << n + 1 << ' ' << m + 1 << '\n';
}

}  // namespace tnc
