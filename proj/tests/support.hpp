#pragma once

#include "symdyn/graph.hpp"
#include "symdyn/linalg.hpp"
#include "symdyn/moves.hpp"
#include "symdyn/scalar.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <vector>

namespace symdyn::testing {

inline IntMatrix random_matrix(std::mt19937_64& rng, Eigen::Index rows, Eigen::Index cols, int lo, int hi) {
  std::uniform_int_distribution<int> d(lo, hi);
  IntMatrix m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i)
    for (Eigen::Index j = 0; j < cols; ++j) m(i, j) = d(rng);
  return m;
}

/// Nonnegative matrix whose digraph is strongly connected with period 1 and
/// some vertex carrying two loops or more, so it is nontrivial.
inline IntMatrix random_primitive(std::mt19937_64& rng, Eigen::Index n, int hi) {
  for (;;) {
    IntMatrix m = random_matrix(rng, n, n, 0, hi);
    if (!is_irreducible(m) || period(m) != 1) continue;
    Integer total = 0;
    for (Eigen::Index i = 0; i < n; ++i)
      for (Eigen::Index j = 0; j < n; ++j) total += m(i, j);
    if (total > n) return m;
  }
}

/// Random partition of every vertex's out-edges (or in-edges).
inline EdgePartition random_partition(std::mt19937_64& rng, const Graph& g, bool out_side) {
  EdgePartition p;
  for (std::size_t v = 0; v < g.vertex_count(); ++v) {
    std::vector<std::size_t> es = out_side ? g.out_edges(v) : g.in_edges(v);
    if (es.empty()) continue;
    std::shuffle(es.begin(), es.end(), rng);
    std::uniform_int_distribution<std::size_t> blocks(1, es.size());
    const std::size_t k = blocks(rng);
    VertexPartition vp{g.vertices()[v], std::vector<std::vector<std::string>>(k)};
    for (std::size_t i = 0; i < es.size(); ++i) {
      const std::size_t b = i < k ? i : std::uniform_int_distribution<std::size_t>(0, k - 1)(rng);
      vp.blocks[b].push_back(g.edges()[es[i]].id);
    }
    p.push_back(vp);
  }
  return p;
}

/// Leibniz expansion over all permutations; only for small n.
template <class Scalar>
Scalar leibniz_det(const Matrix<Scalar>& m) {
  const Eigen::Index n = m.rows();
  std::vector<Eigen::Index> perm(static_cast<std::size_t>(n));
  std::iota(perm.begin(), perm.end(), 0);
  Scalar total(0);
  do {
    int inversions = 0;
    for (Eigen::Index i = 0; i < n; ++i)
      for (Eigen::Index j = i + 1; j < n; ++j)
        if (perm[i] > perm[j]) ++inversions;
    Scalar term(1);
    for (Eigen::Index i = 0; i < n; ++i) term *= m(i, perm[i]);
    total += inversions % 2 ? Scalar(-term) : term;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return total;
}

/// Elementary row and column operations preserve the gcd of k x k minors;
/// compares them for every k as an independent SNF check.
inline Integer gcd_of_minors(const IntMatrix& m, Eigen::Index k) {
  const Eigen::Index r = m.rows(), c = m.cols();
  Integer g = 0;
  std::vector<bool> rs(static_cast<std::size_t>(r), false), cs(static_cast<std::size_t>(c), false);
  std::fill(rs.begin(), rs.begin() + k, true);
  do {
    std::fill(cs.begin(), cs.end(), false);
    std::fill(cs.begin(), cs.begin() + k, true);
    do {
      IntMatrix sub(k, k);
      Eigen::Index si = 0;
      for (Eigen::Index i = 0; i < r; ++i) {
        if (!rs[i]) continue;
        Eigen::Index sj = 0;
        for (Eigen::Index j = 0; j < c; ++j)
          if (cs[j]) sub(si, sj++) = m(i, j);
        ++si;
      }
      g = gcd(g, leibniz_det(sub));
    } while (std::prev_permutation(cs.begin(), cs.end()));
  } while (std::prev_permutation(rs.begin(), rs.end()));
  return abs(g);
}

}  // namespace symdyn::testing
