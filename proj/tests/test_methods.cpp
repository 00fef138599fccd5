#include <doctest.h>

#include <random>

#include "fixtures.hpp"
#include "oracles.hpp"
#include "tncount/errors.hpp"
#include "tncount/methods.hpp"

using namespace tnc;

namespace {

// Random dimension tree: leaves carry one index each, inner nodes none.
DimensionTree random_dim_tree(const std::vector<Index>& idx, std::mt19937_64& rng) {
  DimensionTree dt;
  const int k = static_cast<int>(idx.size());
  dt.tree = UnrootedTree(1);
  dt.node_indices = {{idx[0]}};
  if (k == 1) return dt;
  dt.tree.add_node();
  dt.tree.add_arc(0, 1);
  dt.node_indices.push_back({idx[1]});
  std::vector<std::pair<int, int>> arcs{{0, 1}};
  for (int j = 2; j < k; ++j) {
    auto [a, b] = arcs[rng() % arcs.size()];
    int mid = dt.tree.subdivide(a, b);
    dt.node_indices.push_back({});
    int leaf = dt.tree.add_node();
    dt.node_indices.push_back({idx[j]});
    dt.tree.add_arc(mid, leaf);
    arcs.erase(std::find(arcs.begin(), arcs.end(), std::make_pair(a, b)));
    arcs.push_back({a, mid});
    arcs.push_back({mid, b});
    arcs.push_back({mid, leaf});
  }
  return dt;
}

Tensor contract_all(const std::vector<NetworkTensor>& pieces) {
  TensorNetwork n(pieces);
  auto p = plan_greedy(n, 0);
  return contract(n, p.tree);
}

TreeDecomposition best_td(const Multigraph& g, int restarts) {
  constexpr TdStrategy both[] = {TdStrategy::min_fill, TdStrategy::min_degree};
  std::optional<TreeDecomposition> best;
  anytime_td(g, both, Deadline::in(30.0), 1, [&](const TreeDecomposition& td) {
    best = td;
    return true;
  }, restarts);
  return *best;
}

}  // namespace

TEST_CASE("method names") {
  CHECK(method_from_string("ft") == Method::ft);
  CHECK(method_from_string("portfolio") == Method::portfolio);
  CHECK_FALSE(method_from_string("metis").has_value());
  CHECK(std::string(to_string(Method::lg)) == "lg");
}

TEST_CASE("plan_greedy") {
  auto i = Index::fresh(), j = Index::fresh(), k = Index::fresh(), l = Index::fresh();
  TensorNetwork two({NetworkTensor::dense(copy_tensor({i, j})), NetworkTensor::dense(copy_tensor({j, k}))});
  auto p2 = plan_greedy(two, 0);
  CHECK(p2.tree.num_leaves() == 2);
  CHECK(p2.max_rank == 2);
  CHECK(validate_plan(p2).empty());

  // chain M1 M2 M3: both end-first orders keep rank 2
  TensorNetwork chain({NetworkTensor::dense(copy_tensor({i, j})), NetworkTensor::dense(copy_tensor({j, k})),
                       NetworkTensor::dense(copy_tensor({k, l}))});
  for (std::uint64_t s = 0; s < 5; ++s) CHECK(plan_greedy(chain, s).max_rank == 2);

  auto n = reduce_wmc(fixture::four_clause());
  for (std::uint64_t s = 0; s < 5; ++s) {
    auto p = plan_greedy(n, s);
    CHECK(p.max_rank >= 4);
    CHECK(p.source_width == -1);
    CHECK(contract(p.network, p.tree).values()[0] == doctest::Approx(7.0));
  }

  // disconnected pieces are still joined
  TensorNetwork apart({NetworkTensor::dense(Tensor::scalar(2)), NetworkTensor::dense(Tensor::scalar(3)),
                       NetworkTensor::dense(copy_tensor({i}))});
  auto pa = plan_greedy(apart, 0);
  pa.tree.validate(3);
  CHECK(contract(apart, pa.tree).values()[1] == 6.0);
}

TEST_CASE("line_graph_carving width bound") {
  std::mt19937_64 rng(51);
  for (int trial = 0; trial < 40; ++trial) {
    auto g = oracle::random_multigraph(rng, 3 + trial % 10, 2 + trial % 15);
    if (g.num_edges() == 0) continue;
    auto line = line_graph(g);
    auto td = heuristic_td(line, TdStrategy::min_fill, trial);
    auto s = line_graph_carving(g, td);
    CHECK(validate_carving(s, g).empty());
    CHECK(carving_width(s, g) <= td.width() + 1);
  }
  CHECK_THROWS_AS(line_graph_carving(Multigraph(3), TreeDecomposition{}), InvalidArgument);
}

TEST_CASE("plan_lg") {
  auto n = reduce_wmc(fixture::four_clause());
  auto sg = structure_graph(n);
  auto line = line_graph(sg.graph);
  auto td = best_td(line, 40);
  auto p = plan_lg(n, td);
  CHECK(p.method == Method::lg);
  CHECK(p.source_width == td.width());
  CHECK(validate_plan(p).empty());
  CHECK(p.max_rank <= td.width() + 1);
  CHECK(p.max_rank == 4);
  CHECK(contract(p.network, p.tree).values()[0] == doctest::Approx(7.0));

  auto i = Index::fresh(), j = Index::fresh(), k = Index::fresh();
  TensorNetwork pair({NetworkTensor::dense(copy_tensor({i, j, k})), NetworkTensor::dense(copy_tensor({i, j, k}))});
  auto ps = structure_graph(pair);
  auto pp = plan_lg(pair, heuristic_td(line_graph(ps.graph), TdStrategy::min_fill, 0));
  CHECK(pp.max_rank == 3);
  CHECK(contract(pair, pp.tree).values()[0] == 2.0);

  TensorNetwork bare({NetworkTensor::dense(Tensor::scalar(1.0))});
  CHECK_THROWS_AS(plan_lg(bare, TreeDecomposition{}), InvalidArgument);
}

TEST_CASE("factor_tensor on copy tensors") {
  std::vector<Index> idx{Index::fresh(), Index::fresh(), Index::fresh(), Index::fresh()};
  // path dimension tree: a,b - p - q - c,d
  DimensionTree dt;
  dt.tree = UnrootedTree(6);
  dt.node_indices = {{idx[0]}, {idx[1]}, {}, {}, {idx[2]}, {idx[3]}};
  dt.tree.add_arc(0, 2);
  dt.tree.add_arc(1, 2);
  dt.tree.add_arc(2, 3);
  dt.tree.add_arc(3, 4);
  dt.tree.add_arc(3, 5);
  compress_dimension_tree(dt);
  REQUIRE(dt.tree.size() == 2);
  auto unit = NetworkTensor::weighted_copy(idx, {});
  auto f = factor_tensor(unit, dt);
  REQUIRE(f.pieces.size() == 2);
  for (const auto& p : f.pieces) {
    CHECK(p.rank() == 3);
    CHECK(approx_equal(p.materialize(), copy_tensor(p.indices()), 0.0));
  }
  CHECK(approx_equal(contract_all(f.pieces), unit.materialize(), 0.0));

  std::mt19937_64 rng(52);
  for (int trial = 0; trial < 30; ++trial) {
    std::vector<Index> many;
    for (int k = 0; k < 2 + trial % 7; ++k) many.push_back(Index::fresh());
    auto w = NetworkTensor::weighted_copy(many, {0.3 + trial * 0.01, 0.8});
    auto tree = random_dim_tree(many, rng);
    int root = static_cast<int>(rng() % tree.tree.size());
    auto fac = factor_tensor(w, tree, root);
    CHECK(fac.pieces.size() == static_cast<std::size_t>(tree.tree.size()));
    for (const auto& p : fac.pieces)
      for (const auto& i : p.indices()) CHECK(i.dim == 2);
    CHECK(approx_equal(contract_all(fac.pieces), w.materialize(), 1e-12));
  }
}

TEST_CASE("factor_tensor on clause tensors") {
  std::vector<Index> idx{Index::fresh(), Index::fresh(), Index::fresh(), Index::fresh()};
  auto clause = NetworkTensor::clause(idx, {Polarity::positive, Polarity::negative, Polarity::positive, Polarity::positive});
  std::mt19937_64 rng(53);
  for (int trial = 0; trial < 20; ++trial) {
    auto dt = random_dim_tree(idx, rng);
    int root = static_cast<int>(rng() % dt.tree.size());
    auto fac = factor_tensor(clause, dt, root);
    auto got = contract_all(fac.pieces);
    REQUIRE(got.size() == 16);
    CHECK(approx_equal(got, clause.materialize(), 0.0));
  }
  for (int trial = 0; trial < 30; ++trial) {
    std::vector<Index> many;
    std::vector<Polarity> pol;
    for (int k = 0; k < 2 + trial % 7; ++k) {
      many.push_back(Index::fresh());
      pol.push_back(static_cast<Polarity>(rng() % 3));
    }
    auto c = NetworkTensor::clause(many, pol);
    auto dt = random_dim_tree(many, rng);
    std::vector<int> survivor;
    compress_dimension_tree(dt, &survivor);
    auto fac = factor_tensor(c, dt, static_cast<int>(rng() % dt.tree.size()));
    for (const auto& p : fac.pieces) CHECK(p.rank() <= 3);
    CHECK(approx_equal(contract_all(fac.pieces), c.materialize(), 0.0));
  }
}

TEST_CASE("factor_tensor rejects mismatched trees") {
  auto i = Index::fresh(), j = Index::fresh();
  auto t = NetworkTensor::weighted_copy({i, j}, {});
  DimensionTree one;
  one.tree = UnrootedTree(1);
  one.node_indices = {{i}};
  CHECK_THROWS_AS(factor_tensor(t, one), InvalidArgument);
  one.node_indices = {{i, j}};
  CHECK(factor_tensor(t, one).pieces.size() == 1);
}

TEST_CASE("plan_ft on the width-3 decomposition") {
  auto n = reduce_wmc(fixture::four_clause());
  auto td = fixture::width3_td();
  auto p = plan_ft(n, td);
  CHECK(p.method == Method::ft);
  CHECK(p.source_width == 3);
  CHECK(validate_plan(p).empty());
  CHECK(p.max_rank == 3);
  CHECK(p.network.size() == 9);
  for (const auto& t : p.network.tensors()) CHECK(t.rank() <= 3);
  CHECK(contract(p.network, p.tree).values()[0] == doctest::Approx(7.0).epsilon(1e-12));
}

TEST_CASE("plan_ft keeps small tensors whole") {
  // each variable in at most three clauses of length at most three
  auto f = parse_dimacs(std::string_view("p cnf 4 3\n1 2 3 0\n-1 -2 4 0\n1 -3 -4 0\n"));
  auto n = reduce_wmc(f);
  auto p = plan_ft(n, heuristic_td(structure_graph(n).graph, TdStrategy::min_fill, 0));
  CHECK(p.network.size() == n.size());
  CHECK(contract(p.network, p.tree).values()[0] == doctest::Approx(brute_force_wmc(f)));
}

TEST_CASE("plan_ft preconditions") {
  std::vector<Index> idx{Index::fresh(), Index::fresh(), Index::fresh(), Index::fresh()};
  TensorNetwork loose({NetworkTensor::weighted_copy(idx, {})});
  auto g = structure_graph(loose).graph;
  CHECK_THROWS_AS(plan_ft(loose, heuristic_td(g, TdStrategy::min_fill, 0)), InvalidArgument);
  TensorNetwork bare({NetworkTensor::dense(Tensor::scalar(1.0))});
  CHECK_THROWS_AS(plan_ft(bare, TreeDecomposition{}), InvalidArgument);
}

TEST_CASE("plan_ft with free indices") {
  auto i = Index::fresh(), j = Index::fresh();
  std::vector<Index> hub{i, j, Index::fresh(), Index::fresh(), Index::fresh()};
  std::vector<NetworkTensor> ts{NetworkTensor::weighted_copy(hub, {0.5, 2.0})};
  for (std::size_t k = 2; k < hub.size(); ++k)
    ts.push_back(NetworkTensor::clause({hub[k]}, {Polarity::positive}));
  TensorNetwork n(ts);
  auto p = plan_ft(n, heuristic_td(structure_graph(n).graph, TdStrategy::min_degree, 0));
  CHECK(p.max_rank <= ft_rank_bound(p.source_width));
  auto got = contract(p.network, p.tree);
  auto want = contract(n, plan_greedy(n, 0).tree);
  CHECK(approx_equal(got, want, 1e-12));
}

TEST_CASE("ft_rank_bound") {
  CHECK(ft_rank_bound(1) == 3);
  CHECK(ft_rank_bound(2) == 4);
  CHECK(ft_rank_bound(3) == 6);
  CHECK(ft_rank_bound(5) == 8);
}

TEST_CASE("format_plan and validate_plan") {
  auto n = reduce_wmc(fixture::four_clause());
  auto p = plan_greedy(n, 0);
  auto text = format_plan(p);
  CHECK(text.find("method greedy") != std::string::npos);
  CHECK(text.find("tree " + p.tree.to_string()) != std::string::npos);
  p.max_rank += 1;
  CHECK_FALSE(validate_plan(p).empty());
}
