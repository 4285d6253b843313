#include "symdyn/moves.hpp"

#include "symdyn/error.hpp"

#include <map>
#include <set>

namespace symdyn {

namespace {

enum class Side { Out, In };

struct Blocks {
  std::vector<std::size_t> copies;    // per vertex
  std::vector<std::size_t> block_of;  // per edge, block at the split endpoint
};

Blocks validate(const Graph& g, const EdgePartition& p, Side side) {
  const std::size_t n = g.vertex_count();
  Blocks b;
  b.copies.assign(n, 1);
  b.block_of.assign(g.edge_count(), 0);
  std::vector<bool> listed(n, false);
  for (const VertexPartition& vp : p) {
    auto v = g.find_vertex(vp.vertex);
    if (!v) throw Error(ErrorCode::BadPartition, "unknown vertex in partition: " + vp.vertex);
    if (listed[*v]) throw Error(ErrorCode::BadPartition, "vertex listed twice: " + vp.vertex);
    listed[*v] = true;
    const auto& incident = side == Side::Out ? g.out_edges(*v) : g.in_edges(*v);
    std::set<std::size_t> expected(incident.begin(), incident.end());
    std::set<std::size_t> seen;
    for (std::size_t i = 0; i < vp.blocks.size(); ++i) {
      if (vp.blocks[i].empty()) throw Error(ErrorCode::BadPartition, "empty block at " + vp.vertex);
      for (const std::string& id : vp.blocks[i]) {
        auto e = g.find_edge(id);
        if (!e || expected.count(*e) == 0)
          throw Error(ErrorCode::BadPartition, "edge " + id + " is not incident to " + vp.vertex + " on this side");
        if (!seen.insert(*e).second) throw Error(ErrorCode::BadPartition, "edge listed twice: " + id);
        b.block_of[*e] = i;
      }
    }
    if (seen != expected) throw Error(ErrorCode::BadPartition, "partition does not cover the edges at " + vp.vertex);
    if (!expected.empty()) b.copies[*v] = vp.blocks.size();
  }
  for (std::size_t v = 0; v < n; ++v) {
    const auto& incident = side == Side::Out ? g.out_edges(v) : g.in_edges(v);
    if (!listed[v] && !incident.empty())
      throw Error(ErrorCode::BadPartition, "vertex missing from partition: " + g.vertices()[v]);
  }
  return b;
}

struct Copies {
  std::vector<std::size_t> base;
  std::vector<std::string> names;
  std::vector<std::pair<std::size_t, std::size_t>> origin;
};

Copies make_copies(const Graph& g, const std::vector<std::size_t>& copies) {
  Copies c;
  for (std::size_t v = 0; v < g.vertex_count(); ++v) {
    c.base.push_back(c.names.size());
    for (std::size_t i = 0; i < copies[v]; ++i) {
      c.names.push_back(g.vertices()[v] + "_" + std::to_string(i + 1));
      c.origin.emplace_back(v, i);
    }
  }
  return c;
}

Eigen::Index idx(std::size_t i) { return static_cast<Eigen::Index>(i); }

}  // namespace

Split out_split(const Graph& g, const EdgePartition& p) {
  const Blocks b = validate(g, p, Side::Out);
  const Copies c = make_copies(g, b.copies);
  const std::size_t n = g.vertex_count();
  const std::size_t n2 = c.names.size();

  Split out;
  std::vector<Edge> edges;
  for (std::size_t k = 0; k < g.edge_count(); ++k) {
    const Edge& e = g.edges()[k];
    const std::size_t from = c.base[e.src] + b.block_of[k];
    for (std::size_t j = 0; j < b.copies[e.dst]; ++j) {
      edges.push_back({from, c.base[e.dst] + j, e.id + "_" + std::to_string(j + 1)});
      out.edge_origin.emplace_back(k, j);
    }
  }
  out.graph = Graph(c.names, std::move(edges));
  out.vertex_origin = c.origin;

  // R: division matrix (vertex -> its copies); S: edges from a block to a vertex.
  out.witness.R = IntMatrix::Zero(idx(n), idx(n2));
  out.witness.S = IntMatrix::Zero(idx(n2), idx(n));
  for (std::size_t v = 0; v < n2; ++v) out.witness.R(idx(c.origin[v].first), idx(v)) = 1;
  for (std::size_t k = 0; k < g.edge_count(); ++k) {
    const Edge& e = g.edges()[k];
    out.witness.S(idx(c.base[e.src] + b.block_of[k]), idx(e.dst)) += 1;
  }
  return out;
}

Split in_split(const Graph& g, const EdgePartition& p) {
  const Blocks b = validate(g, p, Side::In);
  const Copies c = make_copies(g, b.copies);
  const std::size_t n = g.vertex_count();
  const std::size_t n2 = c.names.size();

  Split out;
  std::vector<Edge> edges;
  for (std::size_t k = 0; k < g.edge_count(); ++k) {
    const Edge& e = g.edges()[k];
    const std::size_t to = c.base[e.dst] + b.block_of[k];
    for (std::size_t j = 0; j < b.copies[e.src]; ++j) {
      edges.push_back({c.base[e.src] + j, to, e.id + "_" + std::to_string(j + 1)});
      out.edge_origin.emplace_back(k, j);
    }
  }
  out.graph = Graph(c.names, std::move(edges));
  out.vertex_origin = c.origin;

  // R: edges from a vertex into a block; S: transposed division matrix.
  out.witness.R = IntMatrix::Zero(idx(n), idx(n2));
  out.witness.S = IntMatrix::Zero(idx(n2), idx(n));
  for (std::size_t k = 0; k < g.edge_count(); ++k) {
    const Edge& e = g.edges()[k];
    out.witness.R(idx(e.src), idx(c.base[e.dst] + b.block_of[k])) += 1;
  }
  for (std::size_t v = 0; v < n2; ++v) out.witness.S(idx(v), idx(c.origin[v].first)) = 1;
  return out;
}

namespace {

EdgePartition trivial_partition(const Graph& g, Side side) {
  EdgePartition p;
  for (std::size_t v = 0; v < g.vertex_count(); ++v) {
    const auto& incident = side == Side::Out ? g.out_edges(v) : g.in_edges(v);
    if (incident.empty()) continue;
    VertexPartition vp{g.vertices()[v], {{}}};
    for (std::size_t e : incident) vp.blocks[0].push_back(g.edges()[e].id);
    p.push_back(std::move(vp));
  }
  return p;
}

}  // namespace

EdgePartition trivial_out_partition(const Graph& g) { return trivial_partition(g, Side::Out); }
EdgePartition trivial_in_partition(const Graph& g) { return trivial_partition(g, Side::In); }

Graph kronecker_product(const Graph& g, const Graph& h) {
  const std::size_t m = h.vertex_count();
  std::vector<std::string> vertices;
  for (const auto& v : g.vertices())
    for (const auto& w : h.vertices()) vertices.push_back(v + "." + w);
  std::vector<Edge> edges;
  for (const Edge& e : g.edges())
    for (const Edge& f : h.edges()) edges.push_back({e.src * m + f.src, e.dst * m + f.dst, e.id + "." + f.id});
  return Graph(std::move(vertices), std::move(edges));
}

BridgeGraph bridge_from_factorization(const IntMatrix& a, const IntMatrix& r, const IntMatrix& s) {
  if (a.rows() != a.cols() || r.rows() != a.rows() || s.cols() != a.rows() || r.cols() != s.rows())
    throw Error(ErrorCode::ShapeError, "factorization shapes do not match");
  if (!is_nonnegative(r) || !is_nonnegative(s))
    throw Error(ErrorCode::InvalidWitness, "factorization has a negative entry");
  if (!exactly_equal(IntMatrix(r * s), a)) throw Error(ErrorCode::NotAFactorization, "R * S differs from A");

  const std::size_t m = static_cast<std::size_t>(a.rows());
  const std::size_t k = static_cast<std::size_t>(r.cols());
  BridgeGraph b;
  b.e1 = Graph::from_adjacency(a, "v", "e");
  b.e2 = Graph::from_adjacency(IntMatrix(s * r), "w", "f");

  std::vector<std::string> vertices = b.e1.vertices();
  vertices.insert(vertices.end(), b.e2.vertices().begin(), b.e2.vertices().end());
  for (std::size_t i = 0; i < m; ++i) b.class1.push_back(i);
  for (std::size_t j = 0; j < k; ++j) b.class2.push_back(m + j);

  std::vector<Edge> edges;
  std::vector<std::vector<std::size_t>> r_start(m, std::vector<std::size_t>(k));
  std::vector<std::vector<std::size_t>> s_start(k, std::vector<std::size_t>(m));
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < k; ++j) {
      r_start[i][j] = edges.size();
      const long count = r(idx(i), idx(j)).convert_to<long>();
      for (long t = 0; t < count; ++t)
        edges.push_back({i, m + j,
                         "r" + std::to_string(i + 1) + "_" + std::to_string(j + 1) + "_" + std::to_string(t + 1)});
    }
  for (std::size_t j = 0; j < k; ++j)
    for (std::size_t i = 0; i < m; ++i) {
      s_start[j][i] = edges.size();
      const long count = s(idx(j), idx(i)).convert_to<long>();
      for (long t = 0; t < count; ++t)
        edges.push_back({m + j, i,
                         "s" + std::to_string(j + 1) + "_" + std::to_string(i + 1) + "_" + std::to_string(t + 1)});
    }
  b.e3 = Graph(std::move(vertices), std::move(edges));

  // E1 edges i -> i2 are matched in order with the paths i -> w_j -> i2,
  // listed by (j, r-edge, s-edge). E2 likewise through the first class.
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> used;
  for (const Edge& e : b.e1.edges()) {
    std::size_t& c = used[{e.src, e.dst}];
    std::size_t seen = 0;
    bool placed = false;
    for (std::size_t j = 0; j < k && !placed; ++j) {
      const long rc = r(idx(e.src), idx(j)).convert_to<long>();
      const long sc = s(idx(j), idx(e.dst)).convert_to<long>();
      const std::size_t here = static_cast<std::size_t>(rc * sc);
      if (c < seen + here) {
        const std::size_t off = c - seen;
        b.theta1.emplace_back(r_start[e.src][j] + off / static_cast<std::size_t>(sc),
                              s_start[j][e.dst] + off % static_cast<std::size_t>(sc));
        placed = true;
      }
      seen += here;
    }
    ++c;
  }
  used.clear();
  for (const Edge& e : b.e2.edges()) {
    std::size_t& c = used[{e.src, e.dst}];
    std::size_t seen = 0;
    bool placed = false;
    for (std::size_t i = 0; i < m && !placed; ++i) {
      const long sc = s(idx(e.src), idx(i)).convert_to<long>();
      const long rc = r(idx(i), idx(e.dst)).convert_to<long>();
      const std::size_t here = static_cast<std::size_t>(sc * rc);
      if (c < seen + here) {
        const std::size_t off = c - seen;
        b.theta2.emplace_back(s_start[e.src][i] + off / static_cast<std::size_t>(rc),
                              r_start[i][e.dst] + off % static_cast<std::size_t>(rc));
        placed = true;
      }
      seen += here;
    }
    ++c;
  }
  return b;
}

namespace {

// theta must be a bijection from the edges of `base` onto the length-2 paths
// of e3 that start and end in `home` (passing through the other class),
// preserving endpoints.
bool theta_ok(const Graph& base, const Graph& e3, const std::vector<std::size_t>& home,
              const std::vector<bool>& in_home, const std::vector<std::pair<std::size_t, std::size_t>>& theta) {
  if (theta.size() != base.edge_count()) return false;
  std::set<std::pair<std::size_t, std::size_t>> images;
  for (std::size_t l = 0; l < theta.size(); ++l) {
    const auto [x, y] = theta[l];
    if (x >= e3.edge_count() || y >= e3.edge_count()) return false;
    const Edge& ex = e3.edges()[x];
    const Edge& ey = e3.edges()[y];
    if (ex.dst != ey.src) return false;
    if (ex.src != home[base.edges()[l].src] || ey.dst != home[base.edges()[l].dst]) return false;
    if (!images.insert({x, y}).second) return false;
  }
  std::size_t paths = 0;
  for (const Edge& ex : e3.edges()) {
    if (!in_home[ex.src]) continue;
    for (std::size_t y : e3.out_edges(ex.dst))
      if (in_home[e3.edges()[y].dst]) ++paths;
  }
  return paths == images.size();
}

}  // namespace

bool verify_bridge(const BridgeGraph& b) {
  const std::size_t n3 = b.e3.vertex_count();
  if (b.class1.size() != b.e1.vertex_count() || b.class2.size() != b.e2.vertex_count()) return false;
  if (b.class1.size() + b.class2.size() != n3) return false;
  std::vector<int> side(n3, 0);
  for (std::size_t i = 0; i < b.class1.size(); ++i) {
    const std::size_t v = b.class1[i];
    if (v >= n3 || side[v] != 0 || b.e3.vertices()[v] != b.e1.vertices()[i]) return false;
    side[v] = 1;
  }
  for (std::size_t j = 0; j < b.class2.size(); ++j) {
    const std::size_t v = b.class2[j];
    if (v >= n3 || side[v] != 0 || b.e3.vertices()[v] != b.e2.vertices()[j]) return false;
    side[v] = 2;
  }
  for (const Edge& e : b.e3.edges())
    if (side[e.src] == side[e.dst]) return false;
  std::vector<bool> in1(n3), in2(n3);
  for (std::size_t v = 0; v < n3; ++v) {
    in1[v] = side[v] == 1;
    in2[v] = side[v] == 2;
  }
  return theta_ok(b.e1, b.e3, b.class1, in1, b.theta1) && theta_ok(b.e2, b.e3, b.class2, in2, b.theta2);
}

}  // namespace symdyn
