#include "symdyn/cli.hpp"

#include "symdyn/dim_group.hpp"
#include "symdyn/equivalences.hpp"
#include "symdyn/error.hpp"
#include "symdyn/graph.hpp"
#include "symdyn/invariants.hpp"
#include "symdyn/io.hpp"
#include "symdyn/linalg.hpp"
#include "symdyn/moves.hpp"
#include "symdyn/terms.hpp"

#include "CLI11.hpp"

#include <chrono>
#include <cstdint>
#include <functional>
#include <optional>
#include <sstream>

namespace symdyn {

namespace {

struct Outcome {
  Json result = Json::object();
  int exit_code = kExitOk;
  /// Printed verbatim instead of a report (DOT output).
  std::optional<std::string> raw;
};

// Canonical dumps of every loaded input, hashed into the report.
class Inputs {
 public:
  Json load(const std::string& arg) {
    Json j = load_json_argument(arg);
    seen_.push_back(j.dump());
    return j;
  }
  void note(const std::string& s) { seen_.push_back(s); }

  std::string digest() const {
    std::uint64_t h = 1469598103934665603ull;  // FNV-1a
    for (const auto& s : seen_) {
      for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
      }
      h ^= 0xff;
      h *= 1099511628211ull;
    }
    std::ostringstream out;
    out << "fnv1a64:" << std::hex << h;
    return out.str();
  }

 private:
  std::vector<std::string> seen_;
};

std::string unknown_name(Eigen::Index i, Eigen::Index j, Eigen::Index rows, Eigen::Index cols) {
  if (rows < 10 && cols < 10) return "u" + std::to_string(i + 1) + std::to_string(j + 1);
  return "u" + std::to_string(i + 1) + "_" + std::to_string(j + 1);
}

std::string equation_text(const std::vector<Rational>& coefficients, const std::vector<std::string>& names,
                          const Rational& rhs) {
  std::string lhs;
  for (std::size_t k = 0; k < coefficients.size(); ++k) {
    const Rational& x = coefficients[k];
    if (x == 0) continue;
    const bool negative = x < 0;
    const Rational mag = negative ? Rational(-x) : x;
    if (lhs.empty())
      lhs += negative ? "-" : "";
    else
      lhs += negative ? " - " : " + ";
    if (mag != 1) lhs += to_string(mag) + " ";
    lhs += names[k];
  }
  return (lhs.empty() ? "0" : lhs) + " = " + to_string(rhs);
}

Json prefilter_json(const PrefilterReport& p) {
  return Json{{"trace", p.trace}, {"char_poly_away_from_zero", p.char_poly_away_from_zero},
              {"bowen_franks", p.bowen_franks}};
}

std::string se_conclusion(bool found, const PrefilterReport& p) {
  if (found) return "equivalent: witness verified";
  if (!p.all()) return "not equivalent: a necessary invariant differs";
  return "inconclusive: no witness within the search bounds; all computed necessary invariants agree";
}

Json vector_argument(const std::string& text) {
  const auto first = text.find_first_not_of(" \t");
  if (first != std::string::npos && text[first] == '[') return parse_json(text);
  return parse_json("[" + text + "]");
}

std::string human(const Json& report) {
  std::string out;
  for (const auto& [key, value] : report.items()) {
    if (key == "result" && value.is_object()) {
      for (const auto& [k, v] : value.items()) out += k + ": " + (v.is_string() ? v.get<std::string>() : v.dump()) + "\n";
      continue;
    }
    out += key + ": " + (value.is_string() ? value.get<std::string>() : value.dump()) + "\n";
  }
  return out;
}

void print_error(std::ostream& out, const std::string& code, const std::string& message) {
  out << Json{{"error", Json{{"code", code}, {"message", message}}}}.dump(2) << "\n";
}

FamilyAssignment family_from_json(const Json& j, Graph& source) {
  const std::string construction = j.contains("construction") ? j.at("construction").get<std::string>() : "explicit";
  if (construction == "identity") {
    source = graph_from_json(j.at("graph"));
    return identity_family(source);
  }
  if (construction == "in-split") {
    source = graph_from_json(j.at("graph"));
    return in_split_family(source, partition_from_json(j.at("partition")));
  }
  if (construction == "bridge") {
    const BridgeGraph b = bridge_from_factorization(int_matrix_from_json(j.at("matrix")), int_matrix_from_json(j.at("R")),
                                                    int_matrix_from_json(j.at("S")));
    source = b.e1;
    return bridge_family(b);
  }
  if (construction != "explicit") throw Error(ErrorCode::Parse, "unknown family construction: " + construction);
  source = graph_from_json(j.at("source"));
  FamilyAssignment fa{graph_from_json(j.at("target")), {}, {}, {}};
  auto image = [&](const char* table, const std::string& name) -> std::optional<AlgebraElement> {
    if (!j.contains(table) || !j.at(table).contains(name)) return std::nullopt;
    return parse_element(fa.target, j.at(table).at(name).get<std::string>());
  };
  for (const auto& v : source.vertices()) {
    auto x = image("vertices", v);
    if (!x) throw Error(ErrorCode::Parse, "no image for vertex " + v);
    fa.vertices.push_back(*x);
  }
  for (const auto& e : source.edges()) {
    auto x = image("edges", e.id);
    if (!x) throw Error(ErrorCode::Parse, "no image for edge " + e.id);
    auto y = image("ghosts", e.id);
    fa.ghosts.push_back(y ? *y : adjoint(*x));
    fa.edges.push_back(*x);
  }
  return fa;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out) {
  CLI::App app{"Exact invariants and equivalences for shifts of finite type", "sse"};
  app.require_subcommand(1);
  app.fallthrough();
  bool json = false;
  bool timing = false;
  app.add_flag("--json", json, "Machine-readable JSON report");
  app.add_flag("--timing", timing, "Include wall-clock time in the report");

  Inputs inputs;
  std::string command;
  std::function<Outcome()> action;
  std::string a1, a2, a3, a4;
  bool dot = false;
  bool pointed = false;
  bool canonical = false;
  unsigned depth = 3;
  unsigned lag_max = 2;
  int entry_bound = 3;
  int inner_dim_max = 4;
  int coord_bound = 2;
  int den_bound = 2;
  std::size_t max_candidates = 100000;
  unsigned long iteration_bound = 64;
  unsigned long stage = 0;
  std::string strategy = "leftmost";
  std::string weights = "standard";
  std::string from;
  std::string to;

  auto on = [&](CLI::App* sub, std::string name, std::function<Outcome()> f) {
    sub->callback([&, name, f] {
      command = name;
      action = f;
    });
  };

  // analyze / invariants / flow / dot
  auto* analyze = app.add_subcommand("analyze", "Structural predicates of a graph");
  analyze->add_option("graph", a1, "Graph JSON file or inline JSON")->required();
  on(analyze, "analyze", [&] {
    const Graph g = graph_from_json(inputs.load(a1));
    Outcome o;
    o.result["vertex_count"] = g.vertex_count();
    o.result["edge_count"] = g.edge_count();
    o.result["adjacency"] = to_json(g.adjacency());
    const Json report = to_json(classify(g));
    for (const auto& [k, v] : report.items()) o.result[k] = v;
    return o;
  });

  auto* invariants = app.add_subcommand("invariants", "Bowen-Franks group, det(I - A), characteristic polynomial");
  invariants->add_option("graph", a1, "Graph or matrix")->required();
  on(invariants, "invariants", [&] {
    const IntMatrix a = matrix_or_graph_from_json(inputs.load(a1));
    Outcome o;
    const AbelianGroupFP bf = bowen_franks(a);
    o.result["bf"] = to_json(bf);
    o.result["bf_group"] = bf.str();
    o.result["det"] = to_json(det_i_minus_a(a));
    o.result["trace"] = to_json(Integer(a.trace()));
    o.result["char_poly"] = to_json(char_poly(a));
    o.result["char_poly_away_from_zero"] = to_json(char_poly_away_from_zero(a));
    return o;
  });

  auto* flow = app.add_subcommand("flow", "Flow equivalence of irreducible nontrivial matrices");
  flow->add_option("first", a1, "Graph or matrix")->required();
  flow->add_option("second", a2, "Graph or matrix")->required();
  on(flow, "flow", [&] {
    const IntMatrix a = matrix_or_graph_from_json(inputs.load(a1));
    const IntMatrix b = matrix_or_graph_from_json(inputs.load(a2));
    Outcome o;
    const bool eq = flow_equivalent(a, b);
    o.result["flow_equivalent"] = eq;
    o.result["bf"] = Json::array({bowen_franks(a).str(), bowen_franks(b).str()});
    o.result["det"] = Json::array({to_json(det_i_minus_a(a)), to_json(det_i_minus_a(b))});
    o.exit_code = eq ? kExitOk : kExitNegative;
    return o;
  });

  auto* dotcmd = app.add_subcommand("dot", "Render a graph as DOT");
  dotcmd->add_option("graph", a1, "Graph JSON")->required();
  on(dotcmd, "dot", [&] {
    Outcome o;
    o.raw = to_dot(graph_from_json(inputs.load(a1)));
    return o;
  });

  // dimgroup
  auto* dimgroup = app.add_subcommand("dimgroup", "Dimension group of a graph (acting by the transpose)");
  dimgroup->require_subcommand(1);
  auto* pos = dimgroup->add_subcommand("pos", "Decide whether [a, k] lies in the positive cone");
  pos->add_option("graph", a1, "Graph JSON")->required();
  pos->add_option("vector", a2, "Integer vector, e.g. [1,-1]")->required();
  pos->add_option("k", stage, "Stage of the class");
  pos->add_option("--bound", iteration_bound, "Iteration bound before the Perron test");
  on(pos, "dimgroup pos", [&] {
    const DimensionTriple t = from_graph(graph_from_json(inputs.load(a1)));
    const Json v = vector_argument(a2);
    inputs.note(v.dump());
    inputs.note(std::to_string(stage));
    const DimElement x{int_vector_from_json(v), stage};
    const PositivityResult r = dg_positive(t, x, PositivityOptions{iteration_bound});
    Outcome o;
    o.result["element"] = to_json(x);
    o.result["status"] = cone_status_name(r.status);
    o.result["certificate"] = r.certificate ? Json(*r.certificate) : Json(nullptr);
    o.result["reason"] = r.reason;
    if (r.status == ConeStatus::Unknown) o.result["bound"] = r.bound;
    o.exit_code = r.status == ConeStatus::InCone ? kExitOk : kExitNegative;
    return o;
  });
  auto* unit = dimgroup->add_subcommand("unit", "Order unit [1, 0]");
  unit->add_option("graph", a1, "Graph JSON")->required();
  on(unit, "dimgroup unit", [&] {
    const DimensionTriple t = from_graph(graph_from_json(inputs.load(a1)));
    Outcome o;
    o.result["acting_matrix"] = to_json(t.action);
    o.result["unit"] = to_json(order_unit(t));
    return o;
  });

  // iso
  auto* iso = app.add_subcommand("iso", "Module isomorphisms of dimension groups");
  iso->require_subcommand(1);
  auto* isosearch = iso->add_subcommand("search", "Search for an order-preserving module isomorphism");
  isosearch->add_option("first", a1, "Graph JSON")->required();
  isosearch->add_option("second", a2, "Graph JSON")->required();
  isosearch->add_flag("--pointed", pointed, "Require the order unit to be preserved");
  isosearch->add_option("--coord-bound", coord_bound, "Largest |value| on the rational grid");
  isosearch->add_option("--den-bound", den_bound, "Largest denominator on the rational grid");
  isosearch->add_option("--max-candidates", max_candidates, "Candidate limit");
  on(isosearch, "iso search", [&] {
    const DimensionTriple ta = from_graph(graph_from_json(inputs.load(a1)));
    const DimensionTriple tb = from_graph(graph_from_json(inputs.load(a2)));
    inputs.note(pointed ? "pointed" : "unpointed");
    IntertwinerSearchOptions opts;
    opts.coordinate_bound = coord_bound;
    opts.denominator_bound = den_bound;
    opts.max_candidates = max_candidates;
    const IntertwinerSearchResult r = search_intertwiner(ta, tb, pointed, opts);
    Outcome o;
    o.result["pointed"] = pointed;
    o.result["outcome"] = intertwiner_outcome_name(r.outcome);
    std::vector<std::string> unknowns;
    for (Eigen::Index k = 0; k < tb.dim() * ta.dim(); ++k)
      unknowns.push_back(unknown_name(k / ta.dim(), k % ta.dim(), tb.dim(), ta.dim()));
    const RatMatrix& coeffs = r.system.coefficients;
    Json eqs = Json::array();
    for (Eigen::Index i = 0; i < coeffs.rows(); ++i)
      eqs.push_back(equation_text(std::vector<Rational>(coeffs.row(i).begin(), coeffs.row(i).end()), unknowns,
                                  r.system.rhs(i)));
    o.result["equations"] = eqs;
    if (r.certificate.size() > 0) {
      Json weights_json = Json::array();
      Json used = Json::array();
      for (Eigen::Index i = 0; i < r.certificate.size(); ++i) {
        weights_json.push_back(to_json(r.certificate(i)));
        if (r.certificate(i) != 0) used.push_back(eqs[static_cast<std::size_t>(i)]);
      }
      o.result["certificate"] = weights_json;
      o.result["inconsistent_equations"] = used;
      o.result["combination"] = "0 = 1";
    }
    if (pointed && r.outcome == IntertwinerOutcome::Infeasible) {
      // The unit rows restated on the intertwiner space, one parameter per
      // free unknown of its echelon basis.
      const auto basis = intertwiner_space(ta.action, tb.action);
      const Eigen::Index unit_rows = tb.dim();
      const Eigen::Index first = coeffs.rows() - unit_rows;
      if (!basis.empty() && first >= 0) {
        std::vector<std::string> params;
        std::vector<RatVector> flat;
        for (const auto& m : basis) {
          flat.push_back(flatten(m));
          Eigen::Index free = flat.back().size() - 1;
          while (free > 0 && flat.back()(free) == 0) --free;
          params.push_back(unknowns[static_cast<std::size_t>(free)]);
        }
        Json conds = Json::array();
        for (Eigen::Index i = 0; i < unit_rows; ++i) {
          std::vector<Rational> c;
          for (const auto& v : flat) c.push_back(coeffs.row(first + i).dot(v));
          conds.push_back(equation_text(c, params, r.system.rhs(first + i)));
        }
        o.result["intertwiner_parameters"] = params;
        o.result["unit_conditions_on_intertwiners"] = conds;
      }
    }
    if (r.outcome == IntertwinerOutcome::Candidate) o.result["U"] = to_json(r.U);
    o.result["examined"] = r.examined;
    o.result["note"] = r.note;
    o.exit_code = r.outcome == IntertwinerOutcome::Candidate ? kExitOk : kExitNegative;
    return o;
  });

  // se
  auto* se = app.add_subcommand("se", "Shift equivalence");
  se->require_subcommand(1);
  auto* severify = se->add_subcommand("verify", "Check a shift-equivalence witness {R, S, l}");
  severify->add_option("first", a1, "Graph or matrix")->required();
  severify->add_option("second", a2, "Graph or matrix")->required();
  severify->add_option("witness", a3, "Witness JSON")->required();
  on(severify, "se verify", [&] {
    const IntMatrix a = matrix_or_graph_from_json(inputs.load(a1));
    const IntMatrix b = matrix_or_graph_from_json(inputs.load(a2));
    const SEWitness w = se_witness_from_json(inputs.load(a3));
    Outcome o;
    const bool ok = verify_se(a, b, w);
    o.result["verified"] = ok;
    o.result["lag"] = w.lag;
    o.exit_code = ok ? kExitOk : kExitNegative;
    return o;
  });
  auto* sesearch = se->add_subcommand("search", "Bounded search for a shift-equivalence witness");
  sesearch->add_option("first", a1, "Graph or matrix")->required();
  sesearch->add_option("second", a2, "Graph or matrix")->required();
  sesearch->add_option("--lag-max", lag_max, "Largest lag");
  sesearch->add_option("--entry-bound", entry_bound, "Entry bound for R");
  on(sesearch, "se search", [&] {
    const IntMatrix a = matrix_or_graph_from_json(inputs.load(a1));
    const IntMatrix b = matrix_or_graph_from_json(inputs.load(a2));
    inputs.note(std::to_string(lag_max) + "/" + std::to_string(entry_bound));
    const SESearchResult r = search_se(a, b, lag_max, entry_bound);
    Outcome o;
    o.result["outcome"] = r.witness ? "witness" : "not_found_within_bounds";
    if (r.witness) o.result["witness"] = to_json(*r.witness);
    o.result["prefilter"] = prefilter_json(r.prefilter);
    o.result["invariants_agree"] = r.prefilter.all();
    o.result["candidates"] = r.candidates;
    o.result["bounds"] = Json{{"lag_max", lag_max}, {"entry_bound", entry_bound}};
    o.result["conclusion"] = se_conclusion(r.witness.has_value(), r.prefilter);
    o.exit_code = r.witness ? kExitOk : kExitNegative;
    return o;
  });

  // sse
  auto* sse = app.add_subcommand("sse", "Strong shift equivalence");
  sse->require_subcommand(1);
  auto* chain = sse->add_subcommand("verify-chain", "Check a chain of elementary equivalences");
  chain->add_option("chain", a1, "Chain JSON")->required();
  chain->add_option("--from", from, "Expected first matrix (defaults to the chain's)");
  chain->add_option("--to", to, "Expected last matrix (defaults to the chain's)");
  on(chain, "sse verify-chain", [&] {
    const Chain c = chain_from_json(inputs.load(a1));
    if (c.matrices.empty() && (from.empty() || to.empty()))
      throw Error(ErrorCode::Parse, "an empty chain needs --from and --to");
    const IntMatrix a = from.empty() ? c.matrices.front() : matrix_or_graph_from_json(inputs.load(from));
    const IntMatrix b = to.empty() ? c.matrices.back() : matrix_or_graph_from_json(inputs.load(to));
    Outcome o;
    const bool ok = verify_chain(a, b, c);
    Json lag1 = Json::array();
    for (std::size_t i = 0; i < c.links.size() && i + 1 < c.matrices.size(); ++i)
      lag1.push_back(verify_se(c.matrices[i], c.matrices[i + 1], SEWitness{c.links[i].R, c.links[i].S, 1}));
    o.result["verified"] = ok;
    o.result["links"] = c.links.size();
    o.result["links_lag1_se"] = lag1;
    o.result["from"] = to_json(a);
    o.result["to"] = to_json(b);
    o.exit_code = ok ? kExitOk : kExitNegative;
    return o;
  });
  auto* ssesearch = sse->add_subcommand("search", "Bounded search for one elementary equivalence");
  ssesearch->add_option("first", a1, "Graph or matrix")->required();
  ssesearch->add_option("second", a2, "Graph or matrix")->required();
  ssesearch->add_option("--inner-dim-max", inner_dim_max, "Largest inner dimension");
  ssesearch->add_option("--entry-bound", entry_bound, "Entry bound for R and S");
  on(ssesearch, "sse search", [&] {
    const IntMatrix a = matrix_or_graph_from_json(inputs.load(a1));
    const IntMatrix b = matrix_or_graph_from_json(inputs.load(a2));
    inputs.note(std::to_string(inner_dim_max) + "/" + std::to_string(entry_bound));
    const SSESearchResult r = search_esse(a, b, inner_dim_max, entry_bound);
    Outcome o;
    o.result["outcome"] = r.witness ? "witness" : "not_found_within_bounds";
    if (r.witness) o.result["witness"] = to_json(*r.witness);
    o.result["prefilter"] = prefilter_json(r.prefilter);
    o.result["candidates"] = r.candidates;
    o.exit_code = r.witness ? kExitOk : kExitNegative;
    return o;
  });

  // graph moves
  auto* product = app.add_subcommand("product", "Kronecker product of two graphs");
  product->add_option("first", a1, "Graph JSON")->required();
  product->add_option("second", a2, "Graph JSON")->required();
  product->add_flag("--dot", dot, "Emit DOT");
  on(product, "product", [&] {
    const Graph g = kronecker_product(graph_from_json(inputs.load(a1)), graph_from_json(inputs.load(a2)));
    Outcome o;
    if (dot) {
      o.raw = to_dot(g);
      return o;
    }
    o.result["adjacency"] = to_json(g.adjacency());
    o.result["graph"] = to_json(g);
    return o;
  });

  auto* split = app.add_subcommand("split", "Out- or in-split a graph");
  split->require_subcommand(1);
  for (const std::string side : {"out", "in"}) {
    auto* sub = split->add_subcommand(side, side + "-split along an edge partition");
    sub->add_option("graph", a1, "Graph JSON")->required();
    sub->add_option("partition", a2, "Partition JSON")->required();
    sub->add_flag("--dot", dot, "Emit DOT");
    on(sub, "split " + side, [&, side] {
      const Graph g = graph_from_json(inputs.load(a1));
      const EdgePartition p = partition_from_json(inputs.load(a2));
      const Split s = side == "out" ? out_split(g, p) : in_split(g, p);
      Outcome o;
      if (dot) {
        o.raw = to_dot(s.graph);
        return o;
      }
      o.result["adjacency"] = to_json(s.graph.adjacency());
      o.result["graph"] = to_json(s.graph);
      o.result["witness"] = to_json(s.witness);
      o.result["verified"] = verify_esse(g.adjacency(), s.graph.adjacency(), s.witness);
      return o;
    });
  }

  auto* bridge = app.add_subcommand("bridge", "Bridge graph of a factorization A = R S");
  bridge->add_option("matrix", a1, "Matrix A")->required();
  bridge->add_option("R", a2, "Matrix R")->required();
  bridge->add_option("S", a3, "Matrix S")->required();
  on(bridge, "bridge", [&] {
    const BridgeGraph b = bridge_from_factorization(int_matrix_from_json(inputs.load(a1)),
                                                    int_matrix_from_json(inputs.load(a2)),
                                                    int_matrix_from_json(inputs.load(a3)));
    Outcome o;
    const bool ok = verify_bridge(b);
    o.result["verified"] = ok;
    o.result["bridge"] = to_json(b);
    o.exit_code = ok ? kExitOk : kExitNegative;
    return o;
  });

  auto* brat = app.add_subcommand("bratteli", "Stationary Bratteli diagram of the zero-degree part");
  brat->add_option("graph", a1, "Graph JSON")->required();
  brat->add_option("--depth", depth, "Number of levels after the first")->required();
  brat->add_flag("--dot", dot, "Emit DOT");
  on(brat, "bratteli", [&] {
    const BratteliDiagram d = bratteli(graph_from_json(inputs.load(a1)), depth);
    inputs.note(std::to_string(depth));
    Outcome o;
    if (dot) {
      o.raw = to_dot(d);
      return o;
    }
    o.result = to_json(d);
    return o;
  });

  // terms
  auto* terms = app.add_subcommand("terms", "Leavitt path algebra term calculus");
  terms->require_subcommand(1);
  auto* treduce = terms->add_subcommand("reduce", "Normal form of an expression");
  treduce->add_option("graph", a1, "Graph JSON")->required();
  treduce->add_option("expr", a2, "Expression, e.g. \"e1* e1 + 2 v1\"")->required();
  treduce->add_option("--strategy", strategy, "leftmost or rightmost")->check(CLI::IsMember({"leftmost", "rightmost"}));
  treduce->add_flag("--canonical", canonical, "Also rewrite modulo the CK2 relation");
  on(treduce, "terms reduce", [&] {
    const Graph g = graph_from_json(inputs.load(a1));
    inputs.note(a2);
    const AlgebraElement x = parse_element(g, a2);
    const AlgebraElement r =
        reduce(g, x, strategy == "rightmost" ? RewriteStrategy::Rightmost : RewriteStrategy::Leftmost);
    Outcome o;
    o.result["input"] = to_string(g, x);
    o.result["normal_form"] = to_string(g, r);
    if (canonical) o.result["canonical_form"] = to_string(g, canonical_form(g, x));
    return o;
  });
  auto* tdec = terms->add_subcommand("decompose", "Split an expression into homogeneous components");
  tdec->add_option("graph", a1, "Graph JSON")->required();
  tdec->add_option("expr", a2, "Expression")->required();
  tdec->add_option("--weights", weights, "standard, half, or a JSON map from edge ids to rationals");
  on(tdec, "terms decompose", [&] {
    const Graph g = graph_from_json(inputs.load(a1));
    inputs.note(a2);
    WeightMap w;
    if (weights == "standard")
      w = WeightMap::standard(g);
    else if (weights == "half")
      w = WeightMap::uniform(g, Rational(1, 2));
    else
      w = weights_from_json(g, inputs.load(weights));
    Outcome o;
    Json parts = Json::array();
    for (const auto& [deg, part] : graded_decompose(g, w, reduce(g, parse_element(g, a2))))
      parts.push_back(Json{{"degree", to_string(deg)}, {"element", to_string(g, part)}});
    o.result["components"] = parts;
    return o;
  });
  auto* texp = terms->add_subcommand("expand", "Expand a vertex by the CK2 relation");
  texp->add_option("graph", a1, "Graph JSON")->required();
  texp->add_option("expr", a2, "Expression")->required();
  texp->add_option("vertex", a3, "Vertex name")->required();
  on(texp, "terms expand", [&] {
    const Graph g = graph_from_json(inputs.load(a1));
    inputs.note(a2);
    inputs.note(a3);
    Outcome o;
    o.result["expanded"] = to_string(g, ck2_expand(g, parse_element(g, a2), g.vertex_index(a3)));
    return o;
  });
  auto* tfam = terms->add_subcommand("family", "Verify that an assignment is a family for the source graph");
  tfam->add_option("family", a1, "Family JSON")->required();
  on(tfam, "terms family", [&] {
    Graph source;
    const FamilyAssignment fa = family_from_json(inputs.load(a1), source);
    const FamilyCheck c = check_family(fa, source);
    Outcome o;
    o.result["verified"] = c.ok;
    o.result["failures"] = c.failures;
    o.exit_code = c.ok ? kExitOk : kExitNegative;
    return o;
  });

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, out);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, out);
  } catch (const CLI::ParseError& e) {
    print_error(out, "Usage", e.what());
    return kExitError;
  }
  if (!action) {
    print_error(out, "Usage", "no command given");
    return kExitError;
  }

  const auto start = std::chrono::steady_clock::now();
  try {
    Outcome o = action();
    if (o.raw) {
      out << *o.raw;
      return o.exit_code;
    }
    Json report{{"command", command}, {"inputs_digest", inputs.digest()}, {"result", o.result}};
    if (timing) {
      const auto us =
          std::chrono::duration_cast<std::chrono::microseconds>(std::chrono::steady_clock::now() - start).count();
      report["timing_ms"] = static_cast<double>(us) / 1000.0;
    }
    out << (json ? report.dump(2) + "\n" : human(report));
    return o.exit_code;
  } catch (const Error& e) {
    print_error(out, std::string(error_code_name(e.code())), e.what());
  } catch (const nlohmann::json::exception& e) {
    print_error(out, "Parse", e.what());
  } catch (const std::exception& e) {
    print_error(out, "Internal", e.what());
  }
  return kExitError;
}

}  // namespace symdyn
