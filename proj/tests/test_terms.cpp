#include "doctest.h"
#include "support.hpp"

#include "symdyn/error.hpp"
#include "symdyn/moves.hpp"
#include "symdyn/terms.hpp"

using namespace symdyn;

namespace {

const Graph kExample = Graph::from_adjacency(int_matrix({{1, 2}, {1, 0}}));

Word random_word(std::mt19937_64& rng, const Graph& g, std::size_t max_len) {
  const std::size_t len = 1 + rng() % max_len;
  Word w;
  for (std::size_t i = 0; i < len; ++i) {
    const auto kind = static_cast<GeneratorKind>(rng() % 3);
    const std::size_t limit = kind == GeneratorKind::Vertex ? g.vertex_count() : g.edge_count();
    w.push_back({kind, static_cast<std::size_t>(rng() % limit)});
  }
  return w;
}

std::size_t src(const Graph& g, const Generator& x) {
  if (x.kind == GeneratorKind::Vertex) return x.index;
  const Edge& e = g.edges()[x.index];
  return x.kind == GeneratorKind::Edge ? e.src : e.dst;
}

std::size_t rng_of(const Graph& g, const Generator& x) {
  if (x.kind == GeneratorKind::Vertex) return x.index;
  const Edge& e = g.edges()[x.index];
  return x.kind == GeneratorKind::Edge ? e.dst : e.src;
}

// Reference rewriting: picks a random reducible adjacent pair each step.
std::optional<Word> reference_reduce(std::mt19937_64& rng, const Graph& g, Word w) {
  for (;;) {
    std::vector<std::size_t> spots;
    for (std::size_t i = 0; i + 1 < w.size(); ++i) {
      const Generator &x = w[i], &y = w[i + 1];
      const bool ghost_edge = x.kind == GeneratorKind::Ghost && y.kind == GeneratorKind::Edge;
      if (rng_of(g, x) != src(g, y) || ghost_edge || x.kind == GeneratorKind::Vertex ||
          y.kind == GeneratorKind::Vertex)
        spots.push_back(i);
    }
    if (spots.empty()) return w;
    const std::size_t i = spots[rng() % spots.size()];
    const Generator x = w[i], y = w[i + 1];
    if (rng_of(g, x) != src(g, y)) return std::nullopt;
    if (x.kind == GeneratorKind::Ghost && y.kind == GeneratorKind::Edge) {
      if (x.index != y.index) return std::nullopt;
      w[i] = {GeneratorKind::Vertex, g.edges()[x.index].dst};
    } else if (x.kind == GeneratorKind::Vertex) {
      w[i] = y;
    }
    w.erase(w.begin() + static_cast<std::ptrdiff_t>(i) + 1);
  }
}

Rational degree_of(const WeightMap& w, const Word& x) { return w.degree(x); }

}  // namespace

TEST_CASE("basic relations") {
  const Graph& g = kExample;
  const auto v1 = vertex_term(g, "v1"), v2 = vertex_term(g, "v2");
  const auto e1 = edge_term(g, "e1"), e2 = edge_term(g, "e2");
  const auto e1s = ghost_term(g, "e1"), e2s = ghost_term(g, "e2");
  CHECK(reduce(g, v1 * v1) == v1);
  CHECK(reduce(g, v1 * v2).is_zero());
  CHECK(reduce(g, v1 * e2) == e2);
  CHECK(reduce(g, e2 * v2) == e2);
  CHECK(reduce(g, e2 * v1).is_zero());
  CHECK(reduce(g, e2s * e2) == v2);
  CHECK(reduce(g, e1s * e2).is_zero());
  CHECK(reduce(g, e2s * e1).is_zero());
  CHECK(reduce(g, e1 * e1s) == e1 * e1s);
  CHECK_THROWS_AS(vertex_term(g, "v9"), Error);
  CHECK_THROWS_AS(reduce(g, AlgebraElement::of({{GeneratorKind::Edge, 99}})), Error);
}

TEST_CASE("reduce is confluent and agrees with random-order rewriting") {
  std::mt19937_64 rng(61);
  for (int trial = 0; trial < 500; ++trial) {
    const Word w = random_word(rng, kExample, 8);
    const AlgebraElement x = AlgebraElement::of(w);
    const AlgebraElement left = reduce(kExample, x, RewriteStrategy::Leftmost);
    CHECK(left == reduce(kExample, x, RewriteStrategy::Rightmost));
    const auto ref = reference_reduce(rng, kExample, w);
    CHECK(left == (ref ? AlgebraElement::of(*ref) : AlgebraElement{}));
    CHECK(is_normal(kExample, left));
    CHECK(reduce(kExample, left) == left);
  }
}

TEST_CASE("normal forms are monomials mu gamma*") {
  const auto m = as_monomial(kExample, parse_element(kExample, "e1 e2 e2*").terms().begin()->first);
  REQUIRE(m);
  CHECK(m->mu.size() == 2);
  CHECK(m->gamma.size() == 1);
  CHECK_FALSE(m->vertex);
  const auto v = as_monomial(kExample, {{GeneratorKind::Vertex, 1}});
  REQUIRE(v);
  CHECK(v->vertex == 1u);
  CHECK_FALSE(as_monomial(kExample, parse_element(kExample, "e2* e1").terms().begin()->first));
}

TEST_CASE("degrees") {
  const WeightMap std_w = WeightMap::standard(kExample);
  const WeightMap half = WeightMap::uniform(kExample, Rational(1, 2));
  const Word w = parse_element(kExample, "e1 e2 e2*").terms().begin()->first;
  CHECK(degree_of(std_w, w) == 1);
  CHECK(degree_of(half, parse_element(kExample, "e1 e2").terms().begin()->first) == 1);
  const auto parts = graded_decompose(kExample, std_w, parse_element(kExample, "e1 + v1 + e1 e1 + e1*"));
  REQUIRE(parts.size() == 4);
  CHECK(parts.at(Rational(-1)) == parse_element(kExample, "e1*"));
}

TEST_CASE("reduction and ck2 expansion preserve degree") {
  std::mt19937_64 rng(62);
  const WeightMap weights[] = {WeightMap::standard(kExample), WeightMap::uniform(kExample, Rational(1, 2)),
                               WeightMap({Rational(1), Rational(-2), Rational(3, 2), Rational(0)})};
  for (int trial = 0; trial < 300; ++trial) {
    const Word w = random_word(rng, kExample, 8);
    const AlgebraElement r = reduce(kExample, AlgebraElement::of(w));
    const AlgebraElement ex = ck2_expand(kExample, r, rng() % 2);
    for (const auto& wm : weights) {
      const Rational d = wm.degree(w);
      for (const auto& [word, c] : r.terms()) CHECK(wm.degree(word) == d);
      for (const auto& [word, c] : ex.terms()) CHECK(wm.degree(word) == d);
    }
  }
}

TEST_CASE("ck2 expansion") {
  const AlgebraElement ex = ck2_expand(kExample, vertex_term(kExample, "v1"), 0);
  CHECK(ex.terms().size() == 3);
  CHECK(ex == parse_element(kExample, "e1 e1* + e2 e2* + e3 e3*"));
  const Graph sink = Graph::from_adjacency(int_matrix({{0, 1}, {0, 0}}));
  CHECK_THROWS_AS(ck2_expand(sink, vertex_term(sink, "v2"), 1), Error);
}

TEST_CASE("canonical form identifies ck2-equivalent elements") {
  const AlgebraElement ck2 = parse_element(kExample, "e1 e1* + e2 e2* + e3 e3* - v1");
  CHECK_FALSE(reduce(kExample, ck2).is_zero());
  CHECK(canonical_form(kExample, ck2).is_zero());
  std::mt19937_64 rng(63);
  for (int trial = 0; trial < 200; ++trial) {
    const AlgebraElement x = reduce(kExample, AlgebraElement::of(random_word(rng, kExample, 6)));
    const AlgebraElement c = canonical_form(kExample, x);
    CHECK(canonical_form(kExample, c) == c);
    CHECK(canonical_form(kExample, ck2_expand(kExample, x, rng() % 2)) == c);
    const AlgebraElement y = AlgebraElement::of(random_word(rng, kExample, 6));
    CHECK(canonical_form(kExample, x + Rational(3) * y) == c + Rational(3) * canonical_form(kExample, y));
  }
}

TEST_CASE("adjoint is an involution and reverses products") {
  std::mt19937_64 rng(64);
  for (int trial = 0; trial < 100; ++trial) {
    const AlgebraElement x = AlgebraElement::of(random_word(rng, kExample, 5));
    const AlgebraElement y = AlgebraElement::of(random_word(rng, kExample, 5));
    CHECK(adjoint(adjoint(x)) == x);
    CHECK(adjoint(x * y) == adjoint(y) * adjoint(x));
    CHECK(reduce(kExample, adjoint(reduce(kExample, x))) == reduce(kExample, adjoint(x)));
  }
}

TEST_CASE("families") {
  CHECK(verify_family(identity_family(kExample), kExample));

  const EdgePartition p{{"v1", {{"e1"}, {"e4"}}}, {"v2", {{"e2", "e3"}}}};
  CHECK(verify_family(in_split_family(kExample, p), kExample));

  const BridgeGraph b = bridge_from_factorization(kExample.adjacency(), int_matrix({{1, 1, 0}, {0, 0, 1}}),
                                                  int_matrix({{1, 1}, {0, 1}, {1, 0}}));
  CHECK(verify_family(bridge_family(b), b.e1));

  FamilyAssignment broken = identity_family(kExample);
  std::swap(broken.edges[1], broken.edges[3]);
  const FamilyCheck c = check_family(broken, kExample);
  CHECK_FALSE(c.ok);
  CHECK_FALSE(c.failures.empty());

  FamilyAssignment no_ck2 = identity_family(kExample);
  no_ck2.edges[2] = AlgebraElement{};
  no_ck2.ghosts[2] = AlgebraElement{};
  CHECK_FALSE(verify_family(no_ck2, kExample));
}

TEST_CASE("in-split families on random graphs") {
  std::mt19937_64 rng(65);
  int checked = 0;
  while (checked < 20) {
    const Eigen::Index n = 1 + static_cast<Eigen::Index>(rng() % 3);
    const Graph g = Graph::from_adjacency(testing::random_matrix(rng, n, n, 0, 2));
    bool sink = false;
    for (std::size_t v = 0; v < g.vertex_count(); ++v) sink |= g.out_edges(v).empty();
    if (sink || g.edge_count() > 8) continue;
    CHECK(verify_family(in_split_family(g, testing::random_partition(rng, g, false)), g));
    ++checked;
  }
}

TEST_CASE("parsing and printing") {
  const AlgebraElement x = parse_element(kExample, "2 e1 e2* - 1/2 v1 + e3");
  CHECK(parse_element(kExample, to_string(kExample, x)) == x);
  CHECK(parse_element(kExample, "0").is_zero());
  CHECK(to_string(kExample, AlgebraElement{}) == "0");
  CHECK_THROWS_AS(parse_element(kExample, "2 e1 +"), Error);
  CHECK_THROWS_AS(parse_element(kExample, "q1"), Error);
  std::mt19937_64 rng(66);
  for (int trial = 0; trial < 100; ++trial) {
    AlgebraElement y = AlgebraElement::of(random_word(rng, kExample, 4), Rational(static_cast<long>(rng() % 7) - 3, 2));
    y += AlgebraElement::of(random_word(rng, kExample, 4));
    CHECK(parse_element(kExample, to_string(kExample, y)) == y);
  }
}
