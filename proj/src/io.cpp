#include "symdyn/io.hpp"

#include "symdyn/error.hpp"

#include <fstream>
#include <limits>
#include <sstream>

namespace symdyn {

using Eigen::Index;

namespace {

[[noreturn]] void parse_fail(const std::string& why) { throw Error(ErrorCode::Parse, why); }

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) parse_fail(std::string("missing field \"") + key + "\"");
  return j.at(key);
}

std::string quoted(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

}  // namespace

Json to_json(const Integer& x) {
  if (x >= std::numeric_limits<long long>::min() && x <= std::numeric_limits<long long>::max())
    return x.convert_to<long long>();
  return x.str();
}

Json to_json(const Rational& x) { return to_string(x); }

Json to_json(const IntMatrix& m) {
  Json rows = Json::array();
  for (Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Index j = 0; j < m.cols(); ++j) row.push_back(to_json(m(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

Json to_json(const RatMatrix& m) {
  Json rows = Json::array();
  for (Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Index j = 0; j < m.cols(); ++j) row.push_back(to_json(m(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

Json to_json(const IntVector& v) {
  Json out = Json::array();
  for (Index i = 0; i < v.size(); ++i) out.push_back(to_json(v(i)));
  return out;
}

Json to_json(const IntPolynomial& p) {
  Json c = Json::array();
  for (const auto& x : p.coefficients()) c.push_back(to_json(x));
  return Json{{"coefficients", c}, {"text", p.str()}};
}

Json to_json(const Graph& g) {
  Json edges = Json::array();
  for (const Edge& e : g.edges())
    edges.push_back(Json{{"src", g.vertices()[e.src]}, {"dst", g.vertices()[e.dst]}, {"id", e.id}});
  return Json{{"vertices", g.vertices()}, {"edges", edges}};
}

Json to_json(const GraphReport& r) {
  return Json{{"sinks", r.sinks},
              {"sources", r.sources},
              {"essential", r.essential},
              {"irreducible", r.irreducible},
              {"trivial", r.trivial},
              {"purely_infinite_simple", r.purely_infinite_simple},
              {"strongly_graded", r.strongly_graded}};
}

Json to_json(const AbelianGroupFP& g) {
  Json f = Json::array();
  for (const auto& d : g.torsion) f.push_back(to_json(d));
  return Json{{"factors", f}, {"rank", g.rank}};
}

Json to_json(const DimElement& x) { return Json{{"a", to_json(x.a)}, {"k", x.k}}; }

Json to_json(const SSEWitness& w) { return Json{{"R", to_json(w.R)}, {"S", to_json(w.S)}}; }

Json to_json(const SEWitness& w) { return Json{{"R", to_json(w.R)}, {"S", to_json(w.S)}, {"l", w.lag}}; }

Json to_json(const Chain& c) {
  Json out = Json::array();
  for (std::size_t i = 0; i < c.matrices.size(); ++i) {
    Json link{{"matrix", to_json(c.matrices[i])}};
    if (i < c.links.size()) link["witness"] = to_json(c.links[i]);
    out.push_back(std::move(link));
  }
  return out;
}

Json to_json(const EdgePartition& p) {
  Json out = Json::array();
  for (const auto& vp : p) out.push_back(Json{{"vertex", vp.vertex}, {"blocks", vp.blocks}});
  return out;
}

Json to_json(const BridgeGraph& b) {
  auto names = [&](const std::vector<std::size_t>& cls) {
    Json out = Json::array();
    for (std::size_t v : cls) out.push_back(b.e3.vertices()[v]);
    return out;
  };
  auto theta = [&](const Graph& base, const std::vector<std::pair<std::size_t, std::size_t>>& t) {
    Json out = Json::array();
    for (std::size_t l = 0; l < t.size(); ++l)
      out.push_back(Json{{"edge", base.edges()[l].id},
                         {"path", Json::array({b.e3.edges()[t[l].first].id, b.e3.edges()[t[l].second].id})}});
    return out;
  };
  return Json{{"graph", to_json(b.e3)},
              {"class1", names(b.class1)},
              {"class2", names(b.class2)},
              {"e1", to_json(b.e1)},
              {"e2", to_json(b.e2)},
              {"theta1", theta(b.e1, b.theta1)},
              {"theta2", theta(b.e2, b.theta2)}};
}

Json to_json(const BratteliDiagram& d) {
  Json levels = Json::array();
  for (const auto& k : d.levels) levels.push_back(to_json(k));
  return Json{{"vertices", d.vertices}, {"transition_matrix", to_json(IntMatrix(d.adjacency.transpose()))},
              {"levels", levels}};
}

Integer integer_from_json(const Json& j) {
  if (j.is_number_integer()) return Integer(j.get<long long>());
  if (j.is_string()) {
    const Rational q = parse_rational(j.get<std::string>());
    if (!is_integral(q)) parse_fail("expected an integer, got " + j.get<std::string>());
    return mp::numerator(q);
  }
  parse_fail("expected an integer");
}

Rational rational_from_json(const Json& j) {
  if (j.is_number_integer()) return Rational(j.get<long long>());
  if (j.is_string()) return parse_rational(j.get<std::string>());
  parse_fail("expected a rational number or a fraction string");
}

namespace {

template <class Scalar, class Read>
Matrix<Scalar> matrix_from_json(const Json& j, Read read) {
  if (!j.is_array()) parse_fail("expected a matrix (array of rows)");
  const auto rows = static_cast<Index>(j.size());
  Index cols = -1;
  for (const auto& row : j) {
    if (!row.is_array()) parse_fail("matrix rows must be arrays");
    if (cols >= 0 && static_cast<Index>(row.size()) != cols) throw Error(ErrorCode::ShapeError, "ragged matrix rows");
    cols = static_cast<Index>(row.size());
  }
  if (cols < 0) cols = 0;
  Matrix<Scalar> m(rows, cols);
  for (Index i = 0; i < rows; ++i)
    for (Index k = 0; k < cols; ++k) m(i, k) = read(j[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)]);
  return m;
}

}  // namespace

IntMatrix int_matrix_from_json(const Json& j) { return matrix_from_json<Integer>(j, integer_from_json); }
RatMatrix rat_matrix_from_json(const Json& j) { return matrix_from_json<Rational>(j, rational_from_json); }

IntVector int_vector_from_json(const Json& j) {
  if (!j.is_array()) parse_fail("expected a vector (array of integers)");
  IntVector v(static_cast<Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) v(static_cast<Index>(i)) = integer_from_json(j[i]);
  return v;
}

Graph graph_from_json(const Json& j) {
  if (j.is_array()) return Graph::from_adjacency(int_matrix_from_json(j));
  if (!j.is_object()) parse_fail("expected a graph object");
  if (j.contains("adjacency")) return Graph::from_adjacency(int_matrix_from_json(j.at("adjacency")));
  const Json& vs = field(j, "vertices");
  const Json& es = field(j, "edges");
  if (!vs.is_array() || !es.is_array()) parse_fail("graph vertices and edges must be arrays");
  std::vector<std::string> vertices;
  for (const auto& v : vs) {
    if (!v.is_string()) parse_fail("vertex names must be strings");
    vertices.push_back(v.get<std::string>());
  }
  std::unordered_map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < vertices.size(); ++i) index.emplace(vertices[i], i);
  std::vector<Edge> edges;
  for (const auto& e : es) {
    const Json& src = field(e, "src");
    const Json& dst = field(e, "dst");
    const Json& id = field(e, "id");
    if (!src.is_string() || !dst.is_string() || !id.is_string()) parse_fail("edge fields must be strings");
    auto s = index.find(src.get<std::string>());
    auto d = index.find(dst.get<std::string>());
    if (s == index.end() || d == index.end())
      throw Error(ErrorCode::InvalidGraph, "edge " + id.get<std::string>() + " has an unlisted endpoint");
    edges.push_back({s->second, d->second, id.get<std::string>()});
  }
  return Graph(std::move(vertices), std::move(edges));
}

IntMatrix matrix_or_graph_from_json(const Json& j) {
  if (j.is_array()) return int_matrix_from_json(j);
  return graph_from_json(j).adjacency();
}

DimElement element_from_json(const Json& j) {
  if (j.is_array()) return DimElement{int_vector_from_json(j), 0};
  DimElement x{int_vector_from_json(field(j, "a")), 0};
  if (j.contains("k")) {
    if (!j.at("k").is_number_unsigned()) parse_fail("k must be a natural number");
    x.k = j.at("k").get<unsigned long>();
  }
  return x;
}

SSEWitness sse_witness_from_json(const Json& j) {
  return SSEWitness{int_matrix_from_json(field(j, "R")), int_matrix_from_json(field(j, "S"))};
}

SEWitness se_witness_from_json(const Json& j) {
  SEWitness w{int_matrix_from_json(field(j, "R")), int_matrix_from_json(field(j, "S")), 1};
  if (j.contains("l")) {
    if (!j.at("l").is_number_unsigned()) parse_fail("lag must be a positive integer");
    w.lag = j.at("l").get<unsigned>();
  }
  return w;
}

Chain chain_from_json(const Json& j) {
  const Json& list = j.is_object() ? field(j, "chain") : j;
  if (!list.is_array()) parse_fail("a chain is a list of links");
  Chain c;
  for (std::size_t i = 0; i < list.size(); ++i) {
    const Json& link = list[i];
    c.matrices.push_back(int_matrix_from_json(field(link, "matrix")));
    if (link.contains("witness")) {
      c.links.push_back(sse_witness_from_json(link.at("witness")));
    } else if (i + 1 != list.size()) {
      parse_fail("only the terminal chain entry may omit its witness");
    }
  }
  if (!c.links.empty() && c.links.size() == c.matrices.size()) {
    const SSEWitness& last = c.links.back();
    if (last.S.cols() != last.R.rows()) throw Error(ErrorCode::ShapeError, "terminal witness shapes do not compose");
    c.matrices.push_back(last.S * last.R);
  }
  return c;
}

EdgePartition partition_from_json(const Json& j) {
  if (!j.is_array()) parse_fail("a partition is a list of {vertex, blocks}");
  EdgePartition p;
  for (const auto& vp : j) {
    VertexPartition out;
    const Json& v = field(vp, "vertex");
    if (!v.is_string()) parse_fail("partition vertex must be a string");
    out.vertex = v.get<std::string>();
    const Json& blocks = field(vp, "blocks");
    if (!blocks.is_array()) parse_fail("blocks must be a list of lists");
    for (const auto& b : blocks) {
      if (!b.is_array()) parse_fail("blocks must be a list of lists");
      std::vector<std::string> ids;
      for (const auto& id : b) {
        if (!id.is_string()) parse_fail("block entries must be edge ids");
        ids.push_back(id.get<std::string>());
      }
      out.blocks.push_back(std::move(ids));
    }
    p.push_back(std::move(out));
  }
  return p;
}

WeightMap weights_from_json(const Graph& g, const Json& j) {
  if (!j.is_object()) parse_fail("weights must map edge ids to rationals");
  std::vector<Rational> w(g.edge_count());
  std::vector<bool> seen(g.edge_count(), false);
  for (const auto& [id, value] : j.items()) {
    auto e = g.find_edge(id);
    if (!e) throw Error(ErrorCode::UnknownGenerator, "weight for unknown edge: " + id);
    w[*e] = rational_from_json(value);
    seen[*e] = true;
  }
  for (std::size_t e = 0; e < seen.size(); ++e)
    if (!seen[e]) parse_fail("no weight for edge " + g.edges()[e].id);
  return WeightMap(std::move(w));
}

Json parse_json(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    parse_fail(std::string("malformed JSON: ") + e.what());
  }
}

Json load_json_argument(const std::string& arg) {
  const auto first = arg.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && (arg[first] == '{' || arg[first] == '[')) return parse_json(arg);
  std::ifstream in(arg);
  if (!in) parse_fail("cannot read file: " + arg);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_json(buf.str());
}

std::string to_dot(const Graph& g) {
  std::string out = "digraph G {\n";
  for (const auto& v : g.vertices()) out += "  " + quoted(v) + ";\n";
  for (const Edge& e : g.edges())
    out += "  " + quoted(g.vertices()[e.src]) + " -> " + quoted(g.vertices()[e.dst]) + " [label=" + quoted(e.id) +
           "];\n";
  return out + "}\n";
}

std::string to_dot(const BratteliDiagram& d) {
  auto node = [&](std::size_t level, std::size_t v) { return quoted(std::to_string(level) + ":" + d.vertices[v]); };
  std::string out = "digraph bratteli {\n  rankdir=TB;\n  edge [arrowhead=none];\n";
  for (std::size_t n = 0; n < d.levels.size(); ++n) {
    out += "  { rank=same;";
    for (std::size_t v = 0; v < d.vertices.size(); ++v)
      out += " " + node(n, v) + " [label=" + quoted(d.levels[n](static_cast<Index>(v)).str()) + "];";
    out += " }\n";
  }
  for (std::size_t n = 0; n + 1 < d.levels.size(); ++n)
    for (std::size_t v = 0; v < d.vertices.size(); ++v)
      for (std::size_t w = 0; w < d.vertices.size(); ++w) {
        const long strands = d.adjacency(static_cast<Index>(v), static_cast<Index>(w)).convert_to<long>();
        for (long s = 0; s < strands; ++s) out += "  " + node(n, v) + " -> " + node(n + 1, w) + ";\n";
      }
  return out + "}\n";
}

}  // namespace symdyn
