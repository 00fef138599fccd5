#include <doctest.h>

#include <random>

#include "fixtures.hpp"
#include "oracles.hpp"
#include "tncount/errors.hpp"
#include "tncount/network.hpp"

using namespace tnc;

TEST_CASE("TensorNetwork rejects malformed sets") {
  auto i = Index::fresh();
  auto v = NetworkTensor::dense(copy_tensor({i}));
  CHECK_THROWS_AS(TensorNetwork({}), InvalidArgument);
  CHECK_THROWS_AS(TensorNetwork({v, v, v}), InvalidArgument);
  CHECK_THROWS_AS(TensorNetwork({NetworkTensor::dense(Tensor({i, i}, {1, 0, 0, 1}))}), InvalidArgument);
  Index wide{i.id, 3};
  CHECK_THROWS_AS(TensorNetwork({v, NetworkTensor::dense(copy_tensor({wide}))}), InvalidArgument);
}

TEST_CASE("free and bond indices partition the index set") {
  auto i = Index::fresh(), j = Index::fresh(), k = Index::fresh(3);
  TensorNetwork n({NetworkTensor::dense(copy_tensor({i, j})), NetworkTensor::dense(copy_tensor({j})),
                   NetworkTensor::dense(copy_tensor({k}))});
  CHECK(n.num_indices() == 3);
  CHECK(n.free_indices().size() == 2);
  CHECK(n.bond_indices().size() == 1);
  CHECK(n.bond_dimension() == 2);
  CHECK(n.holders(n.local_id(j)).size() == 2);
  CHECK(n.is_free(n.local_id(k)));
}

TEST_CASE("structured tensors materialize to their definitions") {
  auto i = Index::fresh(), j = Index::fresh(), k = Index::fresh();
  auto wc = NetworkTensor::weighted_copy({i, j, k}, {0.3, 0.6}).materialize();
  for (std::size_t o = 0; o < 8; ++o) CHECK(wc.values()[o] == (o == 0 ? 0.3 : o == 7 ? 0.6 : 0.0));
  CHECK(NetworkTensor::weighted_copy({}, {0.3, 0.6}).materialize().values()[0] == doctest::Approx(0.9));

  auto cl = NetworkTensor::clause({i, j}, {Polarity::positive, Polarity::negative}).materialize();
  // x ∨ ¬y fails only at x=0, y=1
  CHECK(std::vector<double>(cl.values().begin(), cl.values().end()) == std::vector<double>{1, 0, 1, 1});
  auto taut = NetworkTensor::clause({i}, {Polarity::both}).materialize();
  CHECK(taut.values()[0] == 1.0);
  CHECK(taut.values()[1] == 1.0);
}

TEST_CASE("reduce_wmc on the four-clause example") {
  auto n = reduce_wmc(fixture::four_clause());
  CHECK(n.size() == 8);
  CHECK(n.num_indices() == 10);
  CHECK(n.free_indices().empty());
  CHECK(n.tensor(2).rank() == 4);  // y occurs in every clause
  CHECK(n.tensor(2).kind() == TensorKind::weighted_copy);
  CHECK(n.tensor(4).kind() == TensorKind::clause);
  CHECK(oracle::sum_of_products(n) == 7.0);
}

TEST_CASE("reduce_wmc tensor shapes") {
  CnfFormula f(3);
  f.add_clause({1, 2});
  f.add_clause({2, -3});
  f.add_clause({2});
  f.set_weight(1, {0.4, 0.9});
  auto n = reduce_wmc(f);
  auto a1 = n.tensor(0).materialize();
  CHECK(a1.rank() == 1);
  CHECK(a1.values()[0] == doctest::Approx(0.4));
  CHECK(a1.values()[1] == doctest::Approx(0.9));
  auto a2 = n.tensor(1).materialize();
  CHECK(approx_equal(a2, copy_tensor(a2.indices()), 0.0));
  CHECK(a2.rank() == 3);
}

TEST_CASE("unused variables and the empty formula") {
  CnfFormula f(2);
  f.add_clause({1});
  f.set_weight(2, {0.3, 0.7});
  auto n = reduce_wmc(f);
  CHECK(n.tensor(1).rank() == 0);
  CHECK(oracle::sum_of_products(n) == doctest::Approx(1.0));
  auto e = reduce_wmc(CnfFormula(0));
  CHECK(e.size() == 1);
  CHECK(oracle::sum_of_products(e) == 1.0);
}

TEST_CASE("reduction agrees with brute force") {
  std::mt19937_64 rng(21);
  for (int t = 0; t < 60; ++t) {
    auto f = oracle::random_cnf(rng, 2 + t % 6, 1 + t % 5, 3, t % 2 == 1);
    auto n = reduce_wmc(f);
    CHECK(oracle::close(oracle::sum_of_products(n), oracle::wmc(f), 1e-12));
  }
}
