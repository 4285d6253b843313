#include "doctest.h"
#include "support.hpp"

#include "symdyn/dim_group.hpp"
#include "symdyn/error.hpp"

#include <Eigen/Dense>

using namespace symdyn;

namespace {

const IntMatrix kActing = int_matrix({{1, 1}, {2, 0}});

IntVector vec(std::initializer_list<long long> xs) {
  IntVector v(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index i = 0;
  for (long long x : xs) v(i++) = x;
  return v;
}

// [a, k] = [b, l] iff M^(N-k) a = M^(N-l) b for some N; tries N up to a
// generous fixed horizon instead of the library's rank-based level.
bool equal_by_iteration(const IntMatrix& m, const DimElement& x, const DimElement& y, unsigned long horizon) {
  for (unsigned long n = std::max(x.k, y.k); n <= horizon; ++n)
    if (exactly_equal(matrix_power(m, n - x.k) * x.a, matrix_power(m, n - y.k) * y.a)) return true;
  return false;
}

DimElement random_element(std::mt19937_64& rng, Eigen::Index n, unsigned long kmax) {
  return DimElement{testing::random_matrix(rng, n, 1, -3, 3).col(0), rng() % (kmax + 1)};
}

}  // namespace

TEST_CASE("dimension triple of a graph acts by the transpose") {
  CHECK(exactly_equal(from_graph(Graph::from_adjacency(int_matrix({{1, 2}, {1, 0}}))).action, kActing));
  CHECK(exactly_equal(from_graph(Graph::from_adjacency(int_matrix({{2}}))).action, int_matrix({{2}})));
  CHECK_THROWS_AS(from_graph(Graph::from_adjacency(int_matrix({{0, 1}, {0, 0}}))), Error);
  CHECK_THROWS_AS(dimension_triple(int_matrix({{1, -1}, {0, 1}})), Error);
}

TEST_CASE("equality in the direct limit") {
  const DimensionTriple t = dimension_triple(kActing);
  CHECK(dg_equal(t, DimElement{kActing * vec({1, -1}), 1}, DimElement{vec({1, -1}), 0}));
  CHECK_FALSE(dg_equal(t, DimElement{vec({1, -2}), 0}, dg_zero(t)));
  const DimensionTriple two = dimension_triple(int_matrix({{2}}));
  const DimElement half = dg_element({1}, 1);
  CHECK(dg_equal(two, dg_add(two, half, half), dg_element({4}, 2)));
  CHECK(dg_equal(two, dg_add(two, half, half), dg_element({1}, 0)));
}

TEST_CASE("equality agrees with a long iteration on singular and nonsingular actions") {
  std::mt19937_64 rng(41);
  int equal_pairs = 0;
  for (int trial = 0; trial < 300; ++trial) {
    const Eigen::Index n = 1 + static_cast<Eigen::Index>(rng() % 3);
    const IntMatrix m = testing::random_matrix(rng, n, n, 0, 2);
    const DimensionTriple t = dimension_triple(m);
    const DimElement x = random_element(rng, n, 3);
    // Half the time build y as a genuine representative of x.
    DimElement y = random_element(rng, n, 3);
    if (trial % 2) y = DimElement{matrix_power(m, 2) * x.a, x.k + 2};
    const bool expected = equal_by_iteration(m, x, y, 20);
    equal_pairs += expected;
    CHECK(dg_equal(t, x, y) == expected);
  }
  CHECK(equal_pairs >= 150);
}

TEST_CASE("group laws") {
  std::mt19937_64 rng(42);
  const DimensionTriple t = dimension_triple(kActing);
  for (int trial = 0; trial < 50; ++trial) {
    const DimElement x = random_element(rng, 2, 3), y = random_element(rng, 2, 3), z = random_element(rng, 2, 3);
    CHECK(dg_equal(t, dg_add(t, x, y), dg_add(t, y, x)));
    CHECK(dg_equal(t, dg_add(t, dg_add(t, x, y), z), dg_add(t, x, dg_add(t, y, z))));
    CHECK(dg_equal(t, dg_add(t, x, dg_negate(x)), dg_zero(t)));
    CHECK(dg_equal(t, dg_add(t, x, dg_zero(t)), x));
    CHECK(dg_equal(t, dg_shift(t, dg_shift(t, x, 1), -1), x));
    CHECK(dg_equal(t, dg_shift(t, dg_add(t, x, y), 1), dg_add(t, dg_shift(t, x, 1), dg_shift(t, y, 1))));
  }
}

TEST_CASE("shift acts as x(a, b) = (a + b, 2a)") {
  const DimensionTriple t = dimension_triple(kActing);
  for (long a = -2; a <= 2; ++a)
    for (long b = -2; b <= 2; ++b) {
      const DimElement x = DimElement{vec({a, b}), 3};
      CHECK(dg_equal(t, dg_shift(t, x, 1), DimElement{vec({a + b, 2 * a}), 3}));
    }
}

TEST_CASE("positive cone for the two-vertex example") {
  const DimensionTriple t = dimension_triple(kActing);
  const PositivityResult p = dg_positive(t, dg_element({1, -1}));
  CHECK(p.status == ConeStatus::InCone);
  REQUIRE(p.certificate);
  CHECK(is_nonnegative(matrix_power(kActing, *p.certificate) * vec({1, -1})));
  CHECK(dg_positive(t, dg_element({-1, 1})).status == ConeStatus::NotInCone);
  CHECK(dg_positive(t, dg_element({1, -2})).status == ConeStatus::NotInCone);
  CHECK(dg_positive(t, dg_zero(t)).status == ConeStatus::InCone);
  CHECK(std::string(cone_status_name(ConeStatus::Unknown)) == "unknown");
}

TEST_CASE("positivity certificates check and negatives never iterate into the cone") {
  std::mt19937_64 rng(43);
  for (int trial = 0; trial < 150; ++trial) {
    const Eigen::Index n = 1 + static_cast<Eigen::Index>(rng() % 3);
    const IntMatrix m = trial % 3 == 0 ? testing::random_matrix(rng, n, n, 0, 2) : testing::random_primitive(rng, n, 2);
    const DimensionTriple t = dimension_triple(m);
    const DimElement x = random_element(rng, n, 2);
    const PositivityResult p = dg_positive(t, x);
    bool reached = false;
    for (unsigned long j = 0; j <= 60 && !reached; ++j) reached = is_nonnegative(matrix_power(m, j) * x.a);
    if (p.status == ConeStatus::InCone) {
      REQUIRE(p.certificate);
      CHECK(is_nonnegative(matrix_power(m, *p.certificate) * x.a));
    } else if (p.status == ConeStatus::NotInCone) {
      CHECK_FALSE(reached);
    }
    if (reached) CHECK(p.status == ConeStatus::InCone);
  }
}

TEST_CASE("periodic positivity") {
  // Period 2: M^2 is diagonal-block; (1, -1) oscillates in sign and is never positive.
  const DimensionTriple t = dimension_triple(int_matrix({{0, 2}, {2, 0}}));
  CHECK(dg_positive(t, dg_element({1, -1})).status == ConeStatus::NotInCone);
  CHECK(dg_positive(t, dg_element({1, 0})).status == ConeStatus::InCone);
}

TEST_CASE("order unit") {
  const DimensionTriple t = from_graph(Graph::from_adjacency(int_matrix({{1, 2}, {1, 0}})));
  const DimElement u = order_unit(t);
  CHECK(exactly_equal(u.a, vec({1, 1})));
  CHECK(u.k == 0);
  const DimensionTriple fib = from_graph(Graph::from_adjacency(int_matrix({{1, 1}, {1, 0}})));
  CHECK(exactly_equal(order_unit(fib).a, vec({1, 1})));
}

TEST_CASE("integrality power and rational application") {
  RatVector q(1);
  q << Rational(1, 4);
  CHECK(integrality_power(int_matrix({{2}}), q) == 2u);
  RatVector h(2);
  h << Rational(1, 2), Rational(1, 2);
  CHECK(integrality_power(kActing, h) == 1u);
  h << Rational(1, 2), 0;
  CHECK_FALSE(integrality_power(kActing, h));

  const DimensionTriple two = dimension_triple(int_matrix({{2}}));
  RatMatrix u(1, 1);
  u << Rational(1, 2);
  const auto img = apply_rational(two, u, dg_element({1}));
  REQUIRE(img);
  CHECK(dg_equal(two, *img, dg_element({1}, 1)));
  CHECK_THROWS_AS(apply_rational(two, RatMatrix::Identity(2, 2), dg_element({1})), Error);
}

TEST_CASE("module isomorphism verification") {
  const DimensionTriple two = dimension_triple(int_matrix({{2}}));
  RatMatrix u(1, 1);
  u << 2;
  CHECK(verify_module_iso(two, two, {u, false}));
  CHECK_FALSE(verify_module_iso(two, two, {u, true}));

  const DimensionTriple e = dimension_triple(kActing);
  const DimensionTriple op = dimension_triple(int_matrix({{1, 2}, {1, 0}}));
  // b = c, d = (a - b)/2 and a + b = 1 at a = 1, b = 0.
  RatMatrix cand(2, 2);
  cand << 1, 0, 0, Rational(1, 2);
  CHECK_FALSE(verify_module_iso(e, op, {cand, true}));
  CHECK_THROWS_AS(verify_module_iso(e, two, {u, false}), Error);
}

TEST_CASE("intertwiner searches") {
  const DimensionTriple e = dimension_triple(kActing);
  const DimensionTriple op = dimension_triple(int_matrix({{1, 2}, {1, 0}}));

  const IntertwinerSearchResult pointed = search_pointed_intertwiner(e, op);
  CHECK(pointed.outcome == IntertwinerOutcome::Infeasible);
  REQUIRE(pointed.certificate.size() == pointed.system.rhs.size());
  CHECK(is_zero(pointed.certificate.transpose() * pointed.system.coefficients));
  CHECK(pointed.certificate.dot(pointed.system.rhs) == 1);

  const IntertwinerSearchResult free = search_intertwiner(e, op, false);
  REQUIRE(free.outcome == IntertwinerOutcome::Candidate);
  CHECK(verify_module_iso(e, op, {free.U, false}));

  const DimensionTriple two = dimension_triple(int_matrix({{2}}));
  const DimensionTriple four = dimension_triple(int_matrix({{4}}));
  CHECK(search_pointed_intertwiner(two, four).outcome == IntertwinerOutcome::Infeasible);
  CHECK(search_intertwiner(two, four, false).outcome == IntertwinerOutcome::Infeasible);

  const IntertwinerSearchResult self = search_pointed_intertwiner(two, two);
  REQUIRE(self.outcome == IntertwinerOutcome::Candidate);
  CHECK(self.U(0, 0) == 1);
}

TEST_CASE("tensor product maps") {
  const DimensionTriple a = from_graph(Graph::from_adjacency(int_matrix({{1, 1}, {1, 0}})));
  const DimensionTriple b = from_graph(Graph::from_adjacency(int_matrix({{0, 1, 0}, {1, 0, 1}, {0, 1, 0}})));
  const DimensionTriple ab = tensor_triple(a, b);
  CHECK(ab.dim() == 6);
  CHECK(dg_equal(ab, tensor_phi(a, b, order_unit(a), order_unit(b)), order_unit(ab)));

  std::mt19937_64 rng(44);
  for (int trial = 0; trial < 40; ++trial) {
    const DimElement x = random_element(rng, 2, 3);
    const DimElement y = random_element(rng, 3, 3);
    const DimElement z = random_element(rng, 6, 3);
    CHECK(dg_equal(ab, tensor_phi(a, b, tensor_psi(a, b, z)), z));
    CHECK(tensor_equal(a, b, tensor_psi(a, b, tensor_phi(a, b, x, y)), {{x, y}}));
    // Module map: x acts diagonally.
    CHECK(dg_equal(ab, tensor_phi(a, b, dg_shift(a, x, 1), dg_shift(b, y, 1)),
                   dg_shift(ab, tensor_phi(a, b, x, y), 1)));
    // Bilinearity in the first slot.
    const DimElement x2 = random_element(rng, 2, 3);
    CHECK(tensor_equal(a, b, {{dg_add(a, x, x2), y}}, {{x, y}, {x2, y}}));
  }
  CHECK_FALSE(tensor_equal(a, b, {{order_unit(a), order_unit(b)}}, {}));
}
