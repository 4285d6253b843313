#pragma once

#include "symdyn/graph.hpp"
#include "symdyn/witness.hpp"

#include <string>
#include <utility>
#include <vector>

namespace symdyn {

/// Blocks of edge ids at one vertex: a partition of the edges it emits
/// (out-splits) or receives (in-splits).
struct VertexPartition {
  std::string vertex;
  std::vector<std::vector<std::string>> blocks;
};

using EdgePartition = std::vector<VertexPartition>;

/// Result of a split. Split vertex v into copies "v_1", "v_2", ...; each edge
/// copy is named "<edge>_<k>". The origin tables map every new vertex and
/// edge back to (original index, copy index).
struct Split {
  Graph graph;
  SSEWitness witness;
  std::vector<std::pair<std::size_t, std::size_t>> vertex_origin;
  std::vector<std::pair<std::size_t, std::size_t>> edge_origin;
};

/// Out-split. Non-sink vertices must be covered exactly; sinks get one copy.
/// The witness satisfies A = R S, A' = S R. Throws Error(BadPartition).
Split out_split(const Graph& g, const EdgePartition& p);

/// In-split. Non-source vertices must be covered exactly; sources get one copy.
Split in_split(const Graph& g, const EdgePartition& p);

/// One block per vertex (the identity move).
EdgePartition trivial_out_partition(const Graph& g);
EdgePartition trivial_in_partition(const Graph& g);

/// Product graph on pairs "v.w" with edges "e.f"; adjacency is kron(A, B).
Graph kronecker_product(const Graph& g, const Graph& h);

/// Bipartite graph E3 on the vertices of E1 (adjacency R S) and E2
/// (adjacency S R), with theta maps sending each edge of E1 (resp. E2) to
/// a length-2 path of E3 through the other class.
struct BridgeGraph {
  Graph e1;
  Graph e2;
  Graph e3;
  std::vector<std::size_t> class1;  ///< E3 index of each E1 vertex
  std::vector<std::size_t> class2;  ///< E3 index of each E2 vertex
  std::vector<std::pair<std::size_t, std::size_t>> theta1;  ///< per E1 edge
  std::vector<std::pair<std::size_t, std::size_t>> theta2;  ///< per E2 edge
};

/// Builds the bridge for a = r s. Throws Error(InvalidWitness) on negative
/// entries, Error(ShapeError) on mismatched shapes and
/// Error(NotAFactorization) when r s != a.
BridgeGraph bridge_from_factorization(const IntMatrix& a, const IntMatrix& r, const IntMatrix& s);

bool verify_bridge(const BridgeGraph& b);

}  // namespace symdyn
