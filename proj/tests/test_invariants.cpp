#include "doctest.h"
#include "support.hpp"

#include "symdyn/error.hpp"
#include "symdyn/invariants.hpp"
#include "symdyn/moves.hpp"

using namespace symdyn;

namespace {

// Order of coker(m) for square nonsingular m is |det m|.
Integer group_order(const AbelianGroupFP& g) {
  Integer n = 1;
  for (const auto& t : g.torsion) n *= t;
  return n;
}

}  // namespace

TEST_CASE("bowen-franks groups") {
  const AbelianGroupFP bf = bowen_franks(int_matrix({{1, 2}, {1, 0}}));
  CHECK(bf.torsion == std::vector<Integer>{2});
  CHECK(bf.rank == 0);
  CHECK(bf.str() == "Z/2");
  CHECK(bowen_franks(int_matrix({{2}})).str() == "0");
  CHECK(bowen_franks(int_matrix({{1}})).str() == "Z");
  CHECK(cokernel(int_matrix({{2, 0}, {0, 0}})).str() == "Z/2 + Z");
}

TEST_CASE("cokernel order is |det| on random nonsingular matrices") {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 100; ++trial) {
    const Eigen::Index n = 1 + static_cast<Eigen::Index>(rng() % 4);
    const IntMatrix m = testing::random_matrix(rng, n, n, -4, 4);
    const Integer d = testing::leibniz_det(m);
    const AbelianGroupFP g = cokernel(m);
    if (d == 0) {
      CHECK(g.rank > 0);
    } else {
      CHECK(g.rank == 0);
      CHECK(group_order(g) == abs(d));
    }
    for (const auto& t : g.torsion) CHECK(t > 1);
  }
}

TEST_CASE("det(I - A) and char poly away from zero") {
  CHECK(det_i_minus_a(int_matrix({{1, 2}, {1, 0}})) == -2);
  CHECK(det_i_minus_a(int_matrix({{19, 5}, {4, 1}})) == -20);
  CHECK(char_poly_away_from_zero(int_matrix({{1, 1}, {1, 0}})).str() == "x^2 - x - 1");
  CHECK(char_poly_away_from_zero(int_matrix({{1, 1}, {1, 1}})).str() == "x - 2");
}

TEST_CASE("flow equivalence") {
  const IntMatrix a = int_matrix({{1, 2}, {1, 0}});
  CHECK(flow_equivalent(a, a.transpose()));
  CHECK_FALSE(flow_equivalent(int_matrix({{2}}), int_matrix({{3}})));
  CHECK_THROWS_AS(flow_equivalent(int_matrix({{0, 1}, {1, 0}}), a), Error);
  CHECK_THROWS_AS(flow_equivalent(int_matrix({{1, 1}, {0, 1}}), a), Error);
  CHECK(is_trivial_matrix(int_matrix({{0, 1}, {1, 0}})));
  CHECK_FALSE(is_trivial_matrix(a));
}

TEST_CASE("invariants are preserved by random splits") {
  std::mt19937_64 rng(32);
  for (int trial = 0; trial < 60; ++trial) {
    const IntMatrix a = testing::random_primitive(rng, 1 + static_cast<Eigen::Index>(rng() % 3), 2);
    const Graph g = Graph::from_adjacency(a);
    const Split s = trial % 2 ? out_split(g, testing::random_partition(rng, g, true))
                              : in_split(g, testing::random_partition(rng, g, false));
    const IntMatrix b = s.graph.adjacency();
    CHECK(bowen_franks(a) == bowen_franks(b));
    CHECK(det_i_minus_a(a) == det_i_minus_a(b));
    CHECK(char_poly_away_from_zero(a) == char_poly_away_from_zero(b));
    CHECK(flow_equivalent(a, b));
  }
}

TEST_CASE("bratteli levels") {
  const BratteliDiagram d = bratteli(Graph::from_adjacency(int_matrix({{1, 2}, {1, 0}})), 2);
  REQUIRE(d.levels.size() == 3);
  CHECK(exactly_equal(d.levels[0], IntVector::Ones(2)));
  CHECK(d.levels[1](0) == 2);
  CHECK(d.levels[1](1) == 2);
  CHECK(d.levels[2](0) == 4);
  CHECK(d.levels[2](1) == 4);

  const BratteliDiagram two = bratteli(Graph::from_adjacency(int_matrix({{2}})), 5);
  for (std::size_t n = 0; n < two.levels.size(); ++n) CHECK(two.levels[n](0) == Integer(1) << n);

  CHECK_THROWS_AS(bratteli(Graph::from_adjacency(int_matrix({{0, 1}, {0, 0}})), 1), Error);
}
