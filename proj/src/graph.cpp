#include "symdyn/graph.hpp"

#include "symdyn/error.hpp"
#include "symdyn/linalg.hpp"

#include <queue>

namespace symdyn {

Graph::Graph(std::vector<std::string> vertices, std::vector<Edge> edges)
    : vertices_(std::move(vertices)), edges_(std::move(edges)) {
  out_.resize(vertices_.size());
  in_.resize(vertices_.size());
  for (std::size_t i = 0; i < vertices_.size(); ++i) {
    if (vertices_[i].empty()) throw Error(ErrorCode::InvalidGraph, "empty vertex name");
    if (!vertex_lookup_.emplace(vertices_[i], i).second)
      throw Error(ErrorCode::InvalidGraph, "duplicate vertex name: " + vertices_[i]);
  }
  for (std::size_t k = 0; k < edges_.size(); ++k) {
    const Edge& e = edges_[k];
    if (e.src >= vertices_.size() || e.dst >= vertices_.size())
      throw Error(ErrorCode::InvalidGraph, "edge endpoint out of range: " + e.id);
    if (e.id.empty()) throw Error(ErrorCode::InvalidGraph, "empty edge id");
    if (vertex_lookup_.count(e.id) != 0)
      throw Error(ErrorCode::InvalidGraph, "edge id collides with a vertex name: " + e.id);
    if (!edge_lookup_.emplace(e.id, k).second) throw Error(ErrorCode::InvalidGraph, "duplicate edge id: " + e.id);
    out_[e.src].push_back(k);
    in_[e.dst].push_back(k);
  }
}

Graph Graph::from_adjacency(const IntMatrix& m, const std::string& vertex_prefix, const std::string& edge_prefix) {
  if (m.rows() != m.cols()) throw Error(ErrorCode::InvalidMatrix, "adjacency matrix must be square");
  if (!is_nonnegative(m)) throw Error(ErrorCode::InvalidMatrix, "adjacency matrix has a negative entry");
  std::vector<std::string> vertices;
  for (Eigen::Index i = 0; i < m.rows(); ++i) vertices.push_back(vertex_prefix + std::to_string(i + 1));
  std::vector<Edge> edges;
  std::size_t next = 1;
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j)
      for (Integer t = 0; t < m(i, j); ++t)
        edges.push_back({static_cast<std::size_t>(i), static_cast<std::size_t>(j), edge_prefix + std::to_string(next++)});
  return Graph(std::move(vertices), std::move(edges));
}

std::optional<std::size_t> Graph::find_vertex(const std::string& name) const {
  auto it = vertex_lookup_.find(name);
  if (it == vertex_lookup_.end()) return std::nullopt;
  return it->second;
}

std::optional<std::size_t> Graph::find_edge(const std::string& id) const {
  auto it = edge_lookup_.find(id);
  if (it == edge_lookup_.end()) return std::nullopt;
  return it->second;
}

std::size_t Graph::vertex_index(const std::string& name) const {
  auto v = find_vertex(name);
  if (!v) throw Error(ErrorCode::InvalidGraph, "unknown vertex: " + name);
  return *v;
}

std::size_t Graph::edge_index(const std::string& id) const {
  auto e = find_edge(id);
  if (!e) throw Error(ErrorCode::InvalidGraph, "unknown edge: " + id);
  return *e;
}

IntMatrix Graph::adjacency() const {
  const auto n = static_cast<Eigen::Index>(vertices_.size());
  IntMatrix a = IntMatrix::Zero(n, n);
  for (const Edge& e : edges_) a(static_cast<Eigen::Index>(e.src), static_cast<Eigen::Index>(e.dst)) += 1;
  return a;
}

bool operator==(const Graph& a, const Graph& b) {
  if (a.vertices_ != b.vertices_ || a.edges_.size() != b.edges_.size()) return false;
  for (std::size_t k = 0; k < a.edges_.size(); ++k) {
    const Edge& x = a.edges_[k];
    const Edge& y = b.edges_[k];
    if (x.src != y.src || x.dst != y.dst || x.id != y.id) return false;
  }
  return true;
}

namespace {

// Vertices lying on some cycle (reachable from themselves by a positive path).
std::vector<bool> on_cycle(const Graph& g) {
  const std::size_t n = g.vertex_count();
  std::vector<bool> result(n, false);
  for (std::size_t v = 0; v < n; ++v) {
    std::vector<bool> seen(n, false);
    std::queue<std::size_t> q;
    for (std::size_t e : g.out_edges(v)) {
      std::size_t w = g.edges()[e].dst;
      if (!seen[w]) {
        seen[w] = true;
        q.push(w);
      }
    }
    while (!q.empty() && !seen[v]) {
      std::size_t u = q.front();
      q.pop();
      for (std::size_t e : g.out_edges(u)) {
        std::size_t w = g.edges()[e].dst;
        if (!seen[w]) {
          seen[w] = true;
          q.push(w);
        }
      }
    }
    result[v] = seen[v];
  }
  return result;
}

// Reachability by paths of length >= 0.
std::vector<std::vector<bool>> reach(const Graph& g) {
  const std::size_t n = g.vertex_count();
  std::vector<std::vector<bool>> r(n, std::vector<bool>(n, false));
  for (std::size_t v = 0; v < n; ++v) {
    std::queue<std::size_t> q;
    r[v][v] = true;
    q.push(v);
    while (!q.empty()) {
      std::size_t u = q.front();
      q.pop();
      for (std::size_t e : g.out_edges(u)) {
        std::size_t w = g.edges()[e].dst;
        if (!r[v][w]) {
          r[v][w] = true;
          q.push(w);
        }
      }
    }
  }
  return r;
}

// A cycle without an exit: its strongly connected component is exactly the
// cycle and every vertex on it emits one edge.
bool has_exitless_cycle(const Graph& g) {
  const std::size_t n = g.vertex_count();
  auto r = reach(g);
  auto cyc = on_cycle(g);
  for (std::size_t v = 0; v < n; ++v) {
    if (!cyc[v]) continue;
    bool exitless = true;
    for (std::size_t u = 0; u < n && exitless; ++u)
      if (r[v][u] && r[u][v] && g.out_edges(u).size() != 1) exitless = false;
    if (exitless) return true;
  }
  return false;
}

}  // namespace

GraphReport classify(const Graph& g) {
  GraphReport report;
  const std::size_t n = g.vertex_count();
  for (std::size_t v = 0; v < n; ++v) {
    if (g.out_edges(v).empty()) report.sinks.push_back(g.vertices()[v]);
    if (g.in_edges(v).empty()) report.sources.push_back(g.vertices()[v]);
  }
  report.essential = report.sinks.empty() && report.sources.empty();
  report.strongly_graded = report.sinks.empty();
  report.irreducible = is_irreducible(g.adjacency());

  bool single_cycle = n > 0 && g.edge_count() == n && report.irreducible;
  for (std::size_t v = 0; v < n && single_cycle; ++v)
    if (g.out_edges(v).size() != 1 || g.in_edges(v).size() != 1) single_cycle = false;
  report.trivial = single_cycle;

  if (n > 0) {
    auto cyc = on_cycle(g);
    auto r = reach(g);
    bool every_vertex_reaches_cycle = true;
    for (std::size_t v = 0; v < n && every_vertex_reaches_cycle; ++v) {
      bool found = false;
      for (std::size_t u = 0; u < n && !found; ++u) found = r[v][u] && cyc[u];
      every_vertex_reaches_cycle = found;
    }
    const Graph core = essentialize(g);
    report.purely_infinite_simple = every_vertex_reaches_cycle && !has_exitless_cycle(g) && !core.empty() &&
                                    is_irreducible(core.adjacency());
  }
  return report;
}

Graph induced_subgraph(const Graph& g, const std::vector<bool>& keep) {
  std::vector<std::string> vertices;
  std::vector<std::size_t> remap(g.vertex_count(), 0);
  for (std::size_t v = 0; v < g.vertex_count(); ++v)
    if (keep[v]) {
      remap[v] = vertices.size();
      vertices.push_back(g.vertices()[v]);
    }
  std::vector<Edge> edges;
  for (const Edge& e : g.edges())
    if (keep[e.src] && keep[e.dst]) edges.push_back({remap[e.src], remap[e.dst], e.id});
  return Graph(std::move(vertices), std::move(edges));
}

Graph eliminate_source(const Graph& g, const std::string& v) {
  const std::size_t idx = g.vertex_index(v);
  if (!g.in_edges(idx).empty()) throw Error(ErrorCode::NotASource, "vertex is not a source: " + v);
  if (g.vertex_count() == 1) throw Error(ErrorCode::WouldEmpty, "cannot eliminate the only vertex: " + v);
  std::vector<bool> keep(g.vertex_count(), true);
  keep[idx] = false;
  return induced_subgraph(g, keep);
}

Graph essentialize(const Graph& g) {
  Graph current = g;
  while (true) {
    bool changed = false;
    for (int pass = 0; pass < 2; ++pass) {
      std::vector<bool> keep(current.vertex_count(), true);
      bool removed = false;
      for (std::size_t v = 0; v < current.vertex_count(); ++v) {
        const bool drop = pass == 0 ? current.in_edges(v).empty() : current.out_edges(v).empty();
        if (drop) {
          keep[v] = false;
          removed = true;
        }
      }
      if (removed) {
        current = induced_subgraph(current, keep);
        changed = true;
      }
    }
    if (!changed) return current;
  }
}

Graph transpose(const Graph& g) {
  std::vector<Edge> edges;
  edges.reserve(g.edge_count());
  for (const Edge& e : g.edges()) edges.push_back({e.dst, e.src, e.id});
  return Graph(g.vertices(), std::move(edges));
}

}  // namespace symdyn
