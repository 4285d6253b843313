#pragma once

#include "symdyn/scalar.hpp"
#include "symdyn/witness.hpp"

#include <optional>
#include <string>

namespace symdyn {

/// R, S nonnegative, R S == a and S R == b. Throws Error(ShapeError) when
/// the shapes cannot compose.
bool verify_esse(const IntMatrix& a, const IntMatrix& b, const SSEWitness& w);

/// Every link elementary, endpoints a and b, consecutive matrices chained.
bool verify_chain(const IntMatrix& a, const IntMatrix& b, const Chain& c);

bool verify_se(const IntMatrix& a, const IntMatrix& b, const SEWitness& w);

/// (R, S, l) -> (S^t, R^t, l): a witness for the transposed pair.
SEWitness transpose_witness(const SEWitness& w);

/// Necessary conditions checked before any enumeration.
struct PrefilterReport {
  bool trace = true;
  bool char_poly_away_from_zero = true;
  bool bowen_franks = true;

  bool all() const { return trace && char_poly_away_from_zero && bowen_franks; }
};

PrefilterReport compare_invariants(const IntMatrix& a, const IntMatrix& b);

/// Bounded searches are semi-decisions: an empty witness never means the
/// matrices are inequivalent.
struct SESearchResult {
  std::optional<SEWitness> witness;
  PrefilterReport prefilter;
  std::size_t candidates = 0;
};

/// Lags 1..l_max; R ranges over the nonnegative integer points of the
/// intertwiner space {R : a R = R b} with entries <= entry_bound, in
/// lexicographic order of its free coordinates. S is solved exactly.
SESearchResult search_se(const IntMatrix& a, const IntMatrix& b, unsigned l_max, int entry_bound);

struct SSESearchResult {
  std::optional<SSEWitness> witness;
  PrefilterReport prefilter;
  std::size_t candidates = 0;
};

/// Factorizations a = R S with the inner dimension equal to dim b (bounded by
/// inner_dim_max) and entries <= entry_bound, first with S R == b.
SSESearchResult search_esse(const IntMatrix& a, const IntMatrix& b, int inner_dim_max, int entry_bound);

}  // namespace symdyn
