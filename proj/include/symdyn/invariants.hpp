#pragma once

#include "symdyn/graph.hpp"
#include "symdyn/polynomial.hpp"
#include "symdyn/scalar.hpp"

#include <string>
#include <vector>

namespace symdyn {

/// Finitely generated abelian group Z/d1 + ... + Z/dk + Z^rank with
/// d1 | d2 | ... and every d_i > 1.
struct AbelianGroupFP {
  std::vector<Integer> torsion;
  int rank = 0;

  /// "Z/2 + Z", "0" for the trivial group.
  std::string str() const;
  friend bool operator==(const AbelianGroupFP&, const AbelianGroupFP&) = default;
};

/// Cokernel of m : Z^cols -> Z^rows.
AbelianGroupFP cokernel(const IntMatrix& m);

/// coker(I - A).
AbelianGroupFP bowen_franks(const IntMatrix& a);

Integer det_i_minus_a(const IntMatrix& a);

/// Characteristic polynomial with the factor x^k removed.
IntPolynomial char_poly_away_from_zero(const IntMatrix& a);

/// Flow equivalence of irreducible, nontrivial matrices: equal Bowen-Franks
/// groups and equal det(I - A). Throws Error(NotIrreducibleNontrivial).
bool flow_equivalent(const IntMatrix& a, const IntMatrix& b);

/// True for the adjacency matrix of a single cycle.
bool is_trivial_matrix(const IntMatrix& a);

/// Levels 0..depth of the stationary Bratteli diagram of a graph. Vertex
/// labels: levels[n] = (A^t)^n applied to the all-ones vector. Each vertex v
/// of level n is joined to w of level n + 1 by A(v, w) strands.
struct BratteliDiagram {
  std::vector<std::string> vertices;
  IntMatrix adjacency;
  std::vector<IntVector> levels;
};

/// Throws Error(HasSinks).
BratteliDiagram bratteli(const Graph& g, unsigned depth);

}  // namespace symdyn
