#pragma once

#include "symdyn/graph.hpp"
#include "symdyn/linalg.hpp"
#include "symdyn/scalar.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace symdyn {

/// Direct limit of Z^n under the acting matrix M, with cone and shift.
struct DimensionTriple {
  IntMatrix action;

  Eigen::Index dim() const { return action.rows(); }
};

/// Throws Error(InvalidMatrix) unless m is square and nonnegative.
DimensionTriple dimension_triple(const IntMatrix& m);

/// Triple acting by the transposed adjacency matrix. Throws Error(HasSinks).
DimensionTriple from_graph(const Graph& g);

/// The class [a, k]: the image of a at stage k of the limit.
struct DimElement {
  IntVector a;
  unsigned long k = 0;
};

DimElement dg_element(const std::vector<long long>& a, unsigned long k = 0);

bool dg_equal(const DimensionTriple& t, const DimElement& x, const DimElement& y);
DimElement dg_add(const DimensionTriple& t, const DimElement& x, const DimElement& y);
DimElement dg_negate(const DimElement& x);
DimElement dg_zero(const DimensionTriple& t);
/// x^power acting on the class; negative powers raise the stage.
DimElement dg_shift(const DimensionTriple& t, const DimElement& x, long power);
DimElement order_unit(const DimensionTriple& t);

enum class ConeStatus { InCone, NotInCone, Unknown };

const char* cone_status_name(ConeStatus s);

struct PositivityResult {
  ConeStatus status = ConeStatus::Unknown;
  /// m with M^m a >= 0, when one was found.
  std::optional<unsigned long> certificate;
  /// Iteration bound used for Unknown.
  unsigned long bound = 0;
  std::string reason;
};

struct PositivityOptions {
  unsigned long iteration_bound = 64;
};

PositivityResult dg_positive(const DimensionTriple& t, const DimElement& x, const PositivityOptions& opts = {});

/// Smallest j with M^j v integral, found by walking the orbit of the
/// fractional part of v; std::nullopt when the orbit cycles without reaching 0.
std::optional<unsigned long> integrality_power(const IntMatrix& m, const RatVector& v);

/// The class of U x in the target triple, if U x lies in its lattice.
std::optional<DimElement> apply_rational(const DimensionTriple& target, const RatMatrix& u, const DimElement& x);

struct ModuleIsoCandidate {
  RatMatrix U;
  bool pointed = false;
};

/// Throws Error(ShapeError) on dimension mismatch. An Unknown positivity
/// result counts as failure.
bool verify_module_iso(const DimensionTriple& ta, const DimensionTriple& tb, const ModuleIsoCandidate& cand,
                       const PositivityOptions& opts = {});

enum class IntertwinerOutcome { Infeasible, Candidate, NotFoundWithinBounds };

const char* intertwiner_outcome_name(IntertwinerOutcome o);

struct IntertwinerSearchOptions {
  /// Numerators and denominators of grid values |p/q| <= coordinate_bound,
  /// q <= denominator_bound.
  int coordinate_bound = 2;
  int denominator_bound = 2;
  std::size_t max_candidates = 100000;
  PositivityOptions positivity;
};

struct IntertwinerSearchResult {
  IntertwinerOutcome outcome = IntertwinerOutcome::NotFoundWithinBounds;
  /// Unknowns are the entries of U, row-major.
  LinearSystem system;
  /// For Infeasible with a nonzero right-hand side: y^T C = 0, y^T rhs = 1.
  RatVector certificate;
  RatMatrix U;
  std::size_t examined = 0;
  std::string note;
};

/// Affine system {U M_A = M_B U} plus, when pointed, the unit condition
/// U 1 = 1 (pushed forward by M_B^n when M_B is singular).
LinearSystem intertwiner_equations(const DimensionTriple& ta, const DimensionTriple& tb, bool pointed);

IntertwinerSearchResult search_intertwiner(const DimensionTriple& ta, const DimensionTriple& tb, bool pointed,
                                           const IntertwinerSearchOptions& opts = {});

inline IntertwinerSearchResult search_pointed_intertwiner(const DimensionTriple& ta, const DimensionTriple& tb,
                                                          const IntertwinerSearchOptions& opts = {}) {
  return search_intertwiner(ta, tb, true, opts);
}

/// Triple acting by kron(M_A, M_B).
DimensionTriple tensor_triple(const DimensionTriple& ta, const DimensionTriple& tb);

/// [a, k] (x) [b, l] -> [M_A^l a (x) M_B^k b, k + l].
DimElement tensor_phi(const DimensionTriple& ta, const DimensionTriple& tb, const DimElement& x, const DimElement& y);

using TensorSum = std::vector<std::pair<DimElement, DimElement>>;

DimElement tensor_phi(const DimensionTriple& ta, const DimensionTriple& tb, const TensorSum& s);

/// [c, k] -> sum_i [e_i, k] (x) [c_i, k], c_i the i-th block of c; zero blocks skipped.
TensorSum tensor_psi(const DimensionTriple& ta, const DimensionTriple& tb, const DimElement& z);

/// Equality of formal sums in the tensor product of the two limits.
bool tensor_equal(const DimensionTriple& ta, const DimensionTriple& tb, const TensorSum& x, const TensorSum& y);

}  // namespace symdyn
