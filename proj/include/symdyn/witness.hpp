#pragma once

#include "symdyn/scalar.hpp"

#include <vector>

namespace symdyn {

/// Elementary strong shift equivalence A = R S, B = S R.
struct SSEWitness {
  IntMatrix R;
  IntMatrix S;
};

/// Shift equivalence of lag `lag`: A R = R B, S A = B S, R S = A^lag, S R = B^lag.
struct SEWitness {
  IntMatrix R;
  IntMatrix S;
  unsigned lag = 1;
};

/// A_0 ~ A_1 ~ ... ~ A_n by elementary steps. links[i] carries A_i to A_{i+1}.
/// matrices.size() == links.size() + 1.
struct Chain {
  std::vector<IntMatrix> matrices;
  std::vector<SSEWitness> links;
};

}  // namespace symdyn
