#pragma once

#include "symdyn/polynomial.hpp"
#include "symdyn/scalar.hpp"

#include <optional>
#include <utility>
#include <vector>

namespace symdyn {

// ---------------------------------------------------------------------------
// Integer kernels

/// U * m * V == D with U, V unimodular and D diagonal, d1 | d2 | ..., d_i >= 0.
struct SmithForm {
  IntMatrix U;
  IntMatrix D;
  IntMatrix V;

  /// Diagonal of D (length min(rows, cols)).
  std::vector<Integer> diagonal() const;
};

SmithForm smith_normal_form(const IntMatrix& m);

/// Fraction-free (Bareiss) determinant.
Integer determinant(const IntMatrix& m);

/// det(xI - m) together with the coefficient matrices of adj(xI - m),
/// computed by the Faddeev-LeVerrier recurrence over the integers.
struct CharacteristicData {
  IntPolynomial char_poly;
  /// adj(xI - m) = sum_k adjugate[k] * x^k.
  std::vector<IntMatrix> adjugate;
};

CharacteristicData characteristic_data(const IntMatrix& m);
IntPolynomial char_poly(const IntMatrix& m);

/// p(m) by Horner's rule.
IntMatrix evaluate(const IntPolynomial& p, const IntMatrix& m);

// ---------------------------------------------------------------------------
// Rational elimination

struct RowEchelon {
  RatMatrix reduced;                   ///< reduced row echelon form
  std::vector<Eigen::Index> pivots;    ///< pivot column of each nonzero row
  RatMatrix transform;                 ///< transform * input == reduced
};

RowEchelon row_echelon(const RatMatrix& m);
Eigen::Index rank(const RatMatrix& m);

/// Echelon basis of {x : m x = 0}: one vector per free column, with a 1 in
/// that column and 0 in every other free column.
std::vector<RatVector> null_space(const RatMatrix& m);

/// Linear system coefficients * x == rhs over Q.
struct LinearSystem {
  RatMatrix coefficients;
  RatVector rhs;
};

struct AffineSolution {
  bool feasible = false;
  RatVector particular;               ///< free variables set to 0
  std::vector<RatVector> null_basis;  ///< echelon basis of the homogeneous space
  /// When infeasible: y with y^T coefficients == 0 and y^T rhs == 1.
  RatVector certificate;
};

AffineSolution solve_affine_exact(const LinearSystem& system);

/// Coefficient matrix of the map vec(U) -> vec(U a - b U) for U of shape
/// b.rows() x a.rows(), vec taken row-major.
RatMatrix intertwiner_system(const IntMatrix& a, const IntMatrix& b);

/// Echelon basis of {U : U a == b U}.
std::vector<RatMatrix> intertwiner_space(const IntMatrix& a, const IntMatrix& b);

RatMatrix unflatten(const RatVector& v, Eigen::Index rows, Eigen::Index cols);
RatVector flatten(const RatMatrix& m);

/// Exact inverse; std::nullopt if singular.
std::optional<RatMatrix> inverse(const RatMatrix& m);

// ---------------------------------------------------------------------------
// Perron-Frobenius

/// Strong connectivity of the support digraph using paths of positive length
/// (so the 1x1 zero matrix is reducible).
bool is_irreducible(const IntMatrix& a);

/// gcd of cycle lengths of an irreducible matrix's digraph.
int period(const IntMatrix& a);

/// Cyclic classes of an irreducible matrix (vertex -> class in [0, period)).
std::vector<int> cyclic_classes(const IntMatrix& a);

enum class Sign { Negative, Zero, Positive };

const char* sign_name(Sign s);

/// The Perron root of an irreducible nonnegative integer matrix, held as an
/// isolating rational interval (lo, hi] of the squarefree part of its
/// characteristic polynomial.
class PerronRoot {
 public:
  explicit PerronRoot(const IntMatrix& a);

  const IntMatrix& matrix() const { return a_; }
  const RatPolynomial& squarefree_poly() const { return sturm_.polynomial(); }
  std::pair<Rational, Rational> interval() const { return {lo_, hi_}; }
  /// True when the root is rational and hi() is the exact value.
  bool exact() const { return exact_; }

  /// Halves the isolating interval.
  void refine();
  /// Refines until hi - lo <= width.
  void refine_to(const Rational& width);

  /// Exact sign of q(lambda). Zero is decided with gcd(q, p) on the interval.
  Sign sign_at(const RatPolynomial& q);

  /// Exact sign of w . v with w the positive left Perron eigenvector.
  Sign pairing_sign(const RatVector& v);

 private:
  IntMatrix a_;
  CharacteristicData data_;
  SturmSequence sturm_;
  Rational lo_;
  Rational hi_;
  bool exact_ = false;
};

/// Sign of w . v for the left Perron eigenvector w of a. Throws
/// Error(NotIrreducible) for reducible a.
Sign perron_pairing_sign(const IntMatrix& a, const RatVector& v);

}  // namespace symdyn
