#include "doctest.h"
#include "support.hpp"

#include "symdyn/equivalences.hpp"
#include "symdyn/error.hpp"
#include "symdyn/moves.hpp"

using namespace symdyn;

namespace {

const IntMatrix kA = int_matrix({{1, 2}, {1, 0}});
const IntMatrix kR1 = int_matrix({{1, 1, 0}, {0, 0, 1}});
const IntMatrix kS1 = int_matrix({{1, 1}, {0, 1}, {1, 0}});
const IntMatrix kR2 = int_matrix({{0, 1, 1}, {1, 0, 0}, {0, 0, 1}});
const IntMatrix kS2 = int_matrix({{0, 0, 1}, {0, 0, 1}, {1, 1, 0}});
const IntMatrix kR3 = int_matrix({{1, 0}, {1, 0}, {1, 1}});
const IntMatrix kS3 = int_matrix({{0, 0, 1}, {1, 1, 0}});

Chain example_chain() {
  Chain c;
  c.matrices = {kA, kS1 * kR1, kS2 * kR2, kS3 * kR3};
  c.links = {{kR1, kS1}, {kR2, kS2}, {kR3, kS3}};
  return c;
}

}  // namespace

TEST_CASE("elementary equivalences and chains") {
  const IntMatrix e1 = kS1 * kR1;
  CHECK(exactly_equal(e1, int_matrix({{1, 1, 1}, {0, 0, 1}, {1, 1, 0}})));
  CHECK(verify_esse(kA, e1, {kR1, kS1}));
  CHECK_FALSE(verify_esse(kA, e1, {kR1, IntMatrix(kS1 * 2)}));
  CHECK_THROWS_AS(verify_esse(kA, e1, {kS1, kR1}), Error);

  const Chain c = example_chain();
  CHECK(exactly_equal(c.matrices.back(), int_matrix({{1, 1}, {2, 0}})));
  CHECK(verify_chain(kA, kA.transpose(), c));
  CHECK_FALSE(verify_chain(kA, kA, c));
  Chain broken = c;
  broken.links[1].R(0, 0) = 1;
  CHECK_FALSE(verify_chain(kA, kA.transpose(), broken));
  CHECK(verify_chain(kA, kA, Chain{}));
  CHECK_FALSE(verify_chain(kA, kA.transpose(), Chain{}));
}

TEST_CASE("shift equivalence witnesses") {
  const Chain c = example_chain();
  for (std::size_t i = 0; i < c.links.size(); ++i)
    CHECK(verify_se(c.matrices[i], c.matrices[i + 1], {c.links[i].R, c.links[i].S, 1}));
  // Composing the chain gives a lag-3 witness.
  const IntMatrix r = kR1 * kR2 * kR3;
  const IntMatrix s = kS3 * kS2 * kS1;
  CHECK(verify_se(kA, kA.transpose(), {r, s, 3}));
  CHECK_FALSE(verify_se(kA, kA.transpose(), {r, s, 2}));
  CHECK_FALSE(verify_se(kA, kA.transpose(), {r, s, 0}));
  CHECK_FALSE(verify_se(kA, kA, {kR1, kS1, 1}));

  const SEWitness t = transpose_witness({r, s, 3});
  CHECK(verify_se(kA.transpose(), kA, t));
}

TEST_CASE("transposed witnesses verify on random splits") {
  std::mt19937_64 rng(51);
  for (int trial = 0; trial < 60; ++trial) {
    const Eigen::Index n = 1 + static_cast<Eigen::Index>(rng() % 3);
    const IntMatrix a = testing::random_matrix(rng, n, n, 0, 2);
    const Graph g = Graph::from_adjacency(a);
    const Split s = out_split(g, testing::random_partition(rng, g, true));
    const SEWitness w{s.witness.R, s.witness.S, 1};
    const IntMatrix b = s.graph.adjacency();
    REQUIRE(verify_se(a, b, w));
    CHECK(verify_se(a.transpose(), b.transpose(), transpose_witness(w)));
  }
}

TEST_CASE("invariant prefilter") {
  const PrefilterReport same = compare_invariants(kA, kA.transpose());
  CHECK(same.all());
  const PrefilterReport diff = compare_invariants(int_matrix({{2}}), int_matrix({{3}}));
  CHECK_FALSE(diff.trace);
  CHECK_FALSE(diff.all());
  CHECK_THROWS_AS(compare_invariants(kR1, kA), Error);
}

TEST_CASE("shift equivalence search") {
  const SESearchResult r = search_se(kA, kS1 * kR1, 1, 2);
  REQUIRE(r.witness);
  CHECK(verify_se(kA, kS1 * kR1, *r.witness));

  const SESearchResult none = search_se(int_matrix({{2}}), int_matrix({{3}}), 3, 3);
  CHECK_FALSE(none.witness);
  CHECK_FALSE(none.prefilter.all());

  const SESearchResult self = search_se(kA, kA, 1, 1);
  REQUIRE(self.witness);
  CHECK(verify_se(kA, kA, *self.witness));
}

TEST_CASE("elementary equivalence search") {
  const SSESearchResult r = search_esse(kA, kS1 * kR1, 3, 1);
  REQUIRE(r.witness);
  CHECK(verify_esse(kA, kS1 * kR1, *r.witness));
  CHECK_FALSE(search_esse(int_matrix({{2}}), int_matrix({{3}}), 2, 3).witness);
  CHECK_FALSE(search_esse(kA, kS1 * kR1, 2, 1).witness);
}

TEST_CASE("every returned search witness verifies on random splits") {
  std::mt19937_64 rng(52);
  for (int trial = 0; trial < 30; ++trial) {
    const IntMatrix a = testing::random_primitive(rng, 1 + static_cast<Eigen::Index>(rng() % 2), 2);
    const Graph g = Graph::from_adjacency(a);
    const IntMatrix b = in_split(g, testing::random_partition(rng, g, false)).graph.adjacency();
    const SESearchResult se = search_se(a, b, 1, 3);
    if (se.witness) CHECK(verify_se(a, b, *se.witness));
    const SSESearchResult sse = search_esse(a, b, 4, 2);
    if (sse.witness) CHECK(verify_esse(a, b, *sse.witness));
  }
}
