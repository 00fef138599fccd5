#include <doctest.h>

#include <random>
#include <set>
#include <sstream>

#include "oracles.hpp"
#include "tncount/decomp.hpp"
#include "tncount/errors.hpp"

using namespace tnc;

namespace {

Multigraph cycle(int n) {
  Multigraph g(n);
  for (int i = 0; i < n; ++i) g.add_edge(i, (i + 1) % n);
  return g;
}

Multigraph clique(int n) {
  Multigraph g(n);
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v) g.add_edge(u, v);
  return g;
}

Multigraph random_tree_graph(std::mt19937_64& rng, int n) {
  Multigraph g(n);
  for (int v = 1; v < n; ++v) g.add_edge(v, static_cast<int>(rng() % v));
  return g;
}

TreeDecomposition one_bag(int n) {
  TreeDecomposition td;
  td.tree = UnrootedTree(1);
  td.bags.resize(1);
  for (int v = 0; v < n; ++v) td.bags[0].push_back(v);
  return td;
}

constexpr TdStrategy kBoth[] = {TdStrategy::min_fill, TdStrategy::min_degree};

}  // namespace

TEST_CASE("validate_td") {
  auto g = cycle(4);
  auto td = one_bag(4);
  CHECK(td.width() == 3);
  CHECK(validate_td(td, g).empty());

  TreeDecomposition missing;
  missing.tree = UnrootedTree(2);
  missing.tree.add_arc(0, 1);
  missing.bags = {{0, 1, 2}, {0, 2, 3}};  // edge 1-2 yes, 2-3 yes, 3-0 yes, 0-1 yes
  CHECK(validate_td(missing, g).empty());
  missing.bags = {{0, 1}, {2, 3}};
  auto problems = validate_td(missing, g);
  REQUIRE_FALSE(problems.empty());
  bool named = false;
  for (const auto& p : problems) named = named || p.find("edge") != std::string::npos;
  CHECK(named);

  TreeDecomposition broken;
  broken.tree = UnrootedTree(3);
  broken.tree.add_arc(0, 1);
  broken.tree.add_arc(1, 2);
  broken.bags = {{0, 1, 2}, {2, 3}, {0, 3}};  // vertex 0 not connected
  CHECK_FALSE(validate_td(broken, g, false).empty());
}

TEST_CASE("heuristic_td widths on standard graphs") {
  std::mt19937_64 rng(41);
  for (auto s : kBoth) {
    for (int k = 0; k < 10; ++k) {
      auto t = random_tree_graph(rng, 2 + k * 3);
      auto td = heuristic_td(t, s, k);
      CHECK(validate_td(td, t).empty());
      CHECK(td.width() == 1);
    }
    CHECK(heuristic_td(clique(4), s, 1).width() == 3);
    CHECK(heuristic_td(cycle(5), s, 1).width() == 2);
    CHECK(oracle::exact_treewidth(cycle(5)) == 2);
    auto single = heuristic_td(Multigraph(1), s, 0);
    CHECK(single.width() == 0);
    CHECK(validate_td(single, Multigraph(1)).empty());
  }
}

TEST_CASE("heuristic_td is repeatable and never below treewidth") {
  std::mt19937_64 rng(42);
  for (int trial = 0; trial < 60; ++trial) {
    int n = 1 + trial % 8;
    auto g = oracle::random_multigraph(rng, n, static_cast<int>(rng() % 14));
    int tw = oracle::exact_treewidth(g);
    for (auto s : kBoth) {
      auto td = heuristic_td(g, s, trial);
      CHECK(validate_td(td, g).empty());
      CHECK(td.width() >= tw);
      auto again = heuristic_td(g, s, trial);
      CHECK(again.bags == td.bags);
    }
    CHECK(degeneracy(g) <= tw);
  }
}

TEST_CASE("heuristic_td honours a stop request") {
  std::stop_source src;
  src.request_stop();
  std::mt19937_64 rng(1);
  auto g = oracle::random_multigraph(rng, 300, 900);
  CHECK_THROWS_AS(heuristic_td(g, TdStrategy::min_fill, 0, src.get_token()), Cancelled);
}

TEST_CASE("anytime_td emits strictly improving decompositions") {
  SUBCASE("expired deadline still emits once") {
    int emitted = 0;
    anytime_td(cycle(6), kBoth, Deadline::in(-1.0), 0, [&](const TreeDecomposition&) {
      ++emitted;
      return true;
    });
    CHECK(emitted == 1);
  }
  SUBCASE("trees stop at width 1") {
    std::mt19937_64 rng(43);
    auto t = random_tree_graph(rng, 30);
    std::vector<int> widths;
    anytime_td(t, kBoth, Deadline::in(5.0), 0, [&](const TreeDecomposition& td) {
      widths.push_back(td.width());
      return true;
    });
    CHECK(widths == std::vector<int>{1});
  }
  SUBCASE("cubic graph widths decrease") {
    auto g = random_cubic_graph(20, 3);
    std::vector<int> widths;
    anytime_td(
        g, kBoth, Deadline::in(2.0), 5,
        [&](const TreeDecomposition& td) {
          CHECK(validate_td(td, g).empty());
          widths.push_back(td.width());
          return true;
        },
        30);
    REQUIRE_FALSE(widths.empty());
    for (std::size_t k = 1; k < widths.size(); ++k) CHECK(widths[k] < widths[k - 1]);
  }
}

TEST_CASE("TdStream hands over emissions") {
  auto g = random_cubic_graph(16, 1);
  TdStream stream(g, {TdStrategy::min_fill}, Deadline::in(5.0), 2, 10);
  int last = 1 << 20, count = 0;
  while (auto td = stream.next(Deadline::in(5.0))) {
    CHECK(td->width() < last);
    last = td->width();
    ++count;
  }
  CHECK(count >= 1);
}

TEST_CASE("binarize") {
  // star of bags around a centre of degree 5
  TreeDecomposition star;
  star.tree = UnrootedTree(6);
  star.bags = {{0, 1}, {0, 2}, {0, 3}, {0, 4}, {0, 5}, {0, 6}};
  for (int i = 1; i < 6; ++i) star.tree.add_arc(0, i);
  Multigraph g(7);
  for (int v = 1; v <= 6; ++v) g.add_edge(0, v);
  CHECK_FALSE(validate_td(star, g, false).size());
  auto b = binarize(star);
  CHECK(validate_td(b, g).empty());
  CHECK(b.width() == 1);

  TreeDecomposition two;
  two.tree = UnrootedTree(2);
  two.tree.add_arc(0, 1);
  two.bags = {{0, 1}, {1, 2}};
  Multigraph p(3);
  p.add_edge(0, 1);
  p.add_edge(1, 2);
  auto b2 = binarize(two);
  CHECK(b2.tree.live_count() == 2);
  CHECK(validate_td(b2, p).empty());

  // path of bags has degree-2 nodes
  TreeDecomposition path;
  path.tree = UnrootedTree(3);
  path.tree.add_arc(0, 1);
  path.tree.add_arc(1, 2);
  path.bags = {{0}, {0, 1}, {1, 2}};
  auto b3 = binarize(path);
  CHECK(validate_td(b3, p).empty());
  CHECK(b3.width() == 1);
}

TEST_CASE("simplify_leaves") {
  SUBCASE("single edge") {
    Multigraph g(2);
    g.add_edge(0, 1);
    auto s = simplify_leaves(one_bag(2), g, edge_endpoint_cover(g));
    REQUIRE(s.leaf_of_label.size() == 1);
    CHECK(s.td.bags[s.leaf_of_label[0]] == std::vector<int>{0, 1});
    CHECK(validate_td(s.td, g).empty());
  }
  SUBCASE("triangle by its edges") {
    Multigraph g(3);
    g.add_edge(0, 1);
    g.add_edge(1, 2);
    g.add_edge(0, 2);
    auto s = simplify_leaves(one_bag(3), g, edge_endpoint_cover(g));
    CHECK(s.td.width() == 2);
    CHECK(validate_td(s.td, g).empty());
    std::set<int> leaves(s.leaf_of_label.begin(), s.leaf_of_label.end());
    CHECK(leaves.size() == 3);
    for (int n = 0; n < s.td.tree.size(); ++n)
      if (s.td.tree.degree(n) == 1) CHECK(leaves.count(n) == 1);
    for (int e = 0; e < 3; ++e) CHECK(s.td.bags[s.leaf_of_label[e]].size() == 2);
  }
  SUBCASE("invalid cover") {
    Multigraph g(3);
    g.add_edge(0, 1);
    EdgeCliqueCover bad{{{0, 2}}};
    CHECK_THROWS_AS(simplify_leaves(one_bag(3), g, bad), InvalidArgument);
  }
}

TEST_CASE("simplify_leaves never widens and maps labels onto leaves") {
  std::mt19937_64 rng(44);
  for (int trial = 0; trial < 100; ++trial) {
    auto g = oracle::strip_isolated(oracle::random_multigraph(rng, 2 + trial % 12, 1 + trial % 20));
    if (g.num_edges() == 0) continue;
    auto td = heuristic_td(g, kBoth[trial % 2], trial);
    auto cover = edge_endpoint_cover(g);
    auto s = simplify_leaves(td, g, cover);
    CHECK(s.td.width() <= td.width());
    CHECK(validate_td(s.td, g).empty());
    std::set<int> leaves;
    for (std::size_t a = 0; a < cover.sets.size(); ++a) {
      auto bag = s.td.bags[s.leaf_of_label[a]];
      auto want = cover.sets[a];
      std::sort(want.begin(), want.end());
      CHECK(bag == want);
      leaves.insert(s.leaf_of_label[a]);
    }
    int degree_one = 0;
    for (int n = 0; n < s.td.tree.size(); ++n) degree_one += s.td.tree.degree(n) <= 1;
    CHECK(degree_one == static_cast<int>(leaves.size()));
  }
}

TEST_CASE("PACE td I/O round-trips") {
  auto g = cycle(6);
  auto td = heuristic_td(g, TdStrategy::min_fill, 3);
  std::ostringstream out;
  write_pace_td(td, g.num_vertices(), out);
  std::istringstream in(out.str());
  auto back = read_pace_td(in);
  CHECK(back.bags == td.bags);
  CHECK(validate_td(back, g).empty());

  std::istringstream bad("s td 2 2 3\nb 1 1 2\nb 2 2 9\n1 2\n");
  CHECK_THROWS(read_pace_td(bad));
}

TEST_CASE("strategy names") {
  CHECK(td_strategy_from_string("min-fill") == TdStrategy::min_fill);
  CHECK(td_strategy_from_string("min-degree") == TdStrategy::min_degree);
  CHECK_FALSE(td_strategy_from_string("exact").has_value());
  CHECK(std::string(to_string(TdStrategy::min_fill)) == "min-fill");
}
