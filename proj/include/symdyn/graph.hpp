#pragma once

#include "symdyn/scalar.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

namespace symdyn {

struct Edge {
  std::size_t src = 0;
  std::size_t dst = 0;
  std::string id;
};

/// Finite directed multigraph. Vertex order is part of the graph's identity:
/// adjacency matrices are indexed by it. Immutable after construction.
class Graph {
 public:
  Graph() = default;
  /// Validates endpoints and name uniqueness (vertex names and edge ids
  /// share one namespace). Throws Error(InvalidGraph).
  Graph(std::vector<std::string> vertices, std::vector<Edge> edges);

  /// Vertices v1..vn; edges e1, e2, ... in row-major order, then by
  /// multiplicity. Throws Error(InvalidMatrix) on negative or non-square input.
  static Graph from_adjacency(const IntMatrix& m, const std::string& vertex_prefix = "v",
                              const std::string& edge_prefix = "e");

  const std::vector<std::string>& vertices() const { return vertices_; }
  const std::vector<Edge>& edges() const { return edges_; }
  std::size_t vertex_count() const { return vertices_.size(); }
  std::size_t edge_count() const { return edges_.size(); }
  bool empty() const { return vertices_.empty(); }

  std::optional<std::size_t> find_vertex(const std::string& name) const;
  std::optional<std::size_t> find_edge(const std::string& id) const;
  /// Throws Error(InvalidGraph) for unknown names.
  std::size_t vertex_index(const std::string& name) const;
  std::size_t edge_index(const std::string& id) const;

  const std::vector<std::size_t>& out_edges(std::size_t v) const { return out_[v]; }
  const std::vector<std::size_t>& in_edges(std::size_t v) const { return in_[v]; }

  IntMatrix adjacency() const;

  friend bool operator==(const Graph& a, const Graph& b);

 private:
  std::vector<std::string> vertices_;
  std::vector<Edge> edges_;
  std::vector<std::vector<std::size_t>> out_;
  std::vector<std::vector<std::size_t>> in_;
  std::unordered_map<std::string, std::size_t> vertex_lookup_;
  std::unordered_map<std::string, std::size_t> edge_lookup_;
};

struct GraphReport {
  std::vector<std::string> sinks;
  std::vector<std::string> sources;
  bool essential = false;
  bool irreducible = false;
  bool trivial = false;
  bool purely_infinite_simple = false;
  bool strongly_graded = false;
};

GraphReport classify(const Graph& g);

/// Removes the source v and every edge it emits.
/// Throws Error(NotASource) or Error(WouldEmpty).
Graph eliminate_source(const Graph& g, const std::string& v);

/// Fixed point of removing all sources, then all sinks, repeatedly.
Graph essentialize(const Graph& g);

/// Every arrow reversed; vertex order and edge ids kept.
Graph transpose(const Graph& g);

/// Subgraph on the vertices with keep[v] true, keeping edges between them.
Graph induced_subgraph(const Graph& g, const std::vector<bool>& keep);

}  // namespace symdyn
