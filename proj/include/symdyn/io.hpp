#pragma once

#include "symdyn/dim_group.hpp"
#include "symdyn/graph.hpp"
#include "symdyn/invariants.hpp"
#include "symdyn/moves.hpp"
#include "symdyn/polynomial.hpp"
#include "symdyn/terms.hpp"
#include "symdyn/witness.hpp"

#include "json.hpp"

#include <string>

namespace symdyn {

/// Insertion-ordered so reports read in a fixed, meaningful order.
using Json = nlohmann::ordered_json;

// Malformed documents throw Error(Parse); semantic problems keep their own
// codes (InvalidMatrix, InvalidGraph, ...).

Json to_json(const Integer& x);
Json to_json(const Rational& x);
Json to_json(const IntMatrix& m);
Json to_json(const RatMatrix& m);
Json to_json(const IntVector& v);
Json to_json(const IntPolynomial& p);
Json to_json(const Graph& g);
Json to_json(const GraphReport& r);
Json to_json(const AbelianGroupFP& g);
Json to_json(const DimElement& x);
Json to_json(const SSEWitness& w);
Json to_json(const SEWitness& w);
Json to_json(const Chain& c);
Json to_json(const EdgePartition& p);
Json to_json(const BridgeGraph& b);
Json to_json(const BratteliDiagram& d);

Integer integer_from_json(const Json& j);
Rational rational_from_json(const Json& j);
IntMatrix int_matrix_from_json(const Json& j);
RatMatrix rat_matrix_from_json(const Json& j);
IntVector int_vector_from_json(const Json& j);
/// {"vertices": [...], "edges": [...]} or {"adjacency": [[...]]} or a bare matrix.
Graph graph_from_json(const Json& j);
/// A bare matrix, or a graph document (its adjacency matrix).
IntMatrix matrix_or_graph_from_json(const Json& j);
DimElement element_from_json(const Json& j);
SSEWitness sse_witness_from_json(const Json& j);
SEWitness se_witness_from_json(const Json& j);
/// List of {"matrix", "witness"} links closed by a terminal {"matrix"}. When
/// the last entry carries a witness, its S R is appended as the terminal.
Chain chain_from_json(const Json& j);
EdgePartition partition_from_json(const Json& j);
/// {"e1": "1/2", ...} with every edge listed.
WeightMap weights_from_json(const Graph& g, const Json& j);

/// Parses text, reporting syntax errors as Error(Parse).
Json parse_json(const std::string& text);
/// Inline JSON when the argument starts with '{' or '[', else a file path.
Json load_json_argument(const std::string& arg);

std::string to_dot(const Graph& g);
/// Levels as ranked rows labelled with k_n(v); A(v, w) strands from level n
/// vertex v to level n + 1 vertex w.
std::string to_dot(const BratteliDiagram& d);

}  // namespace symdyn
