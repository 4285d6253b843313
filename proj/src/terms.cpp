#include "symdyn/terms.hpp"

#include "symdyn/error.hpp"

#include <cctype>

namespace symdyn {

AlgebraElement AlgebraElement::of(Word w, const Rational& c) {
  AlgebraElement x;
  x.add(w, c);
  return x;
}

void AlgebraElement::add(const Word& w, const Rational& c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.emplace(w, c);
  if (inserted) return;
  it->second += c;
  if (it->second == 0) terms_.erase(it);
}

AlgebraElement& AlgebraElement::operator+=(const AlgebraElement& o) {
  for (const auto& [w, c] : o.terms_) add(w, c);
  return *this;
}

AlgebraElement& AlgebraElement::operator-=(const AlgebraElement& o) {
  for (const auto& [w, c] : o.terms_) add(w, -c);
  return *this;
}

AlgebraElement operator*(const AlgebraElement& a, const AlgebraElement& b) {
  AlgebraElement out;
  for (const auto& [u, c] : a.terms_)
    for (const auto& [v, d] : b.terms_) {
      Word w = u;
      w.insert(w.end(), v.begin(), v.end());
      out.add(w, c * d);
    }
  return out;
}

AlgebraElement operator*(const Rational& c, const AlgebraElement& a) {
  AlgebraElement out;
  for (const auto& [w, d] : a.terms_) out.add(w, c * d);
  return out;
}

AlgebraElement vertex_term(const Graph& g, const std::string& v) {
  auto i = g.find_vertex(v);
  if (!i) throw Error(ErrorCode::UnknownGenerator, "unknown vertex: " + v);
  return AlgebraElement::of({{GeneratorKind::Vertex, *i}});
}

AlgebraElement edge_term(const Graph& g, const std::string& e) {
  auto i = g.find_edge(e);
  if (!i) throw Error(ErrorCode::UnknownGenerator, "unknown edge: " + e);
  return AlgebraElement::of({{GeneratorKind::Edge, *i}});
}

AlgebraElement ghost_term(const Graph& g, const std::string& e) {
  auto i = g.find_edge(e);
  if (!i) throw Error(ErrorCode::UnknownGenerator, "unknown edge: " + e);
  return AlgebraElement::of({{GeneratorKind::Ghost, *i}});
}

namespace {

void check_generators(const Graph& g, const Word& w) {
  if (w.empty()) throw Error(ErrorCode::UnknownGenerator, "empty word");
  for (const Generator& x : w) {
    const std::size_t limit = x.kind == GeneratorKind::Vertex ? g.vertex_count() : g.edge_count();
    if (x.index >= limit) throw Error(ErrorCode::UnknownGenerator, "generator index outside the graph");
  }
}

enum class PairRule { Keep, Zero, Merge };

// Adjacent pair xy: irreducible (Keep), zero, or a single generator.
PairRule pair_rule(const Graph& g, const Generator& x, const Generator& y, Generator& merged) {
  using K = GeneratorKind;
  const auto& E = g.edges();
  auto merge_if = [&](bool cond, Generator out) {
    if (!cond) return PairRule::Zero;
    merged = out;
    return PairRule::Merge;
  };
  switch (x.kind) {
    case K::Vertex:
      switch (y.kind) {
        case K::Vertex: return merge_if(x.index == y.index, x);
        case K::Edge: return merge_if(E[y.index].src == x.index, y);
        case K::Ghost: return merge_if(E[y.index].dst == x.index, y);
      }
      break;
    case K::Edge:
      switch (y.kind) {
        case K::Vertex: return merge_if(E[x.index].dst == y.index, x);
        case K::Edge: return E[x.index].dst == E[y.index].src ? PairRule::Keep : PairRule::Zero;
        case K::Ghost: return E[x.index].dst == E[y.index].dst ? PairRule::Keep : PairRule::Zero;
      }
      break;
    case K::Ghost:
      switch (y.kind) {
        case K::Vertex: return merge_if(E[x.index].src == y.index, x);
        case K::Edge: return merge_if(x.index == y.index, Generator{K::Vertex, E[x.index].dst});
        case K::Ghost: return E[x.index].src == E[y.index].dst ? PairRule::Keep : PairRule::Zero;
      }
      break;
  }
  return PairRule::Keep;
}

std::optional<Word> reduce_word(const Graph& g, Word w, RewriteStrategy strategy) {
  while (w.size() > 1) {
    std::optional<std::size_t> at;
    Generator merged;
    PairRule rule = PairRule::Keep;
    for (std::size_t k = 0; k + 1 < w.size(); ++k) {
      const std::size_t i = strategy == RewriteStrategy::Leftmost ? k : w.size() - 2 - k;
      Generator m;
      const PairRule r = pair_rule(g, w[i], w[i + 1], m);
      if (r != PairRule::Keep) {
        at = i;
        rule = r;
        merged = m;
        break;
      }
    }
    if (!at) break;
    if (rule == PairRule::Zero) return std::nullopt;
    w[*at] = merged;
    w.erase(w.begin() + static_cast<long>(*at) + 1);
  }
  return w;
}

}  // namespace

AlgebraElement reduce(const Graph& g, const AlgebraElement& x, RewriteStrategy s) {
  AlgebraElement out;
  for (const auto& [w, c] : x.terms()) {
    check_generators(g, w);
    if (auto r = reduce_word(g, w, s)) out.add(*r, c);
  }
  return out;
}

std::optional<Monomial> as_monomial(const Graph& g, const Word& w) {
  check_generators(g, w);
  Monomial m;
  if (w.size() == 1 && w[0].kind == GeneratorKind::Vertex) {
    m.vertex = w[0].index;
    return m;
  }
  std::size_t p = 0;
  while (p < w.size() && w[p].kind == GeneratorKind::Edge) ++p;
  for (std::size_t i = p; i < w.size(); ++i)
    if (w[i].kind != GeneratorKind::Ghost) return std::nullopt;
  for (std::size_t i = 0; i < p; ++i) m.mu.push_back(w[i].index);
  for (std::size_t i = w.size(); i-- > p;) m.gamma.push_back(w[i].index);
  const auto& E = g.edges();
  for (std::size_t i = 1; i < m.mu.size(); ++i)
    if (E[m.mu[i - 1]].dst != E[m.mu[i]].src) return std::nullopt;
  for (std::size_t i = 1; i < m.gamma.size(); ++i)
    if (E[m.gamma[i - 1]].dst != E[m.gamma[i]].src) return std::nullopt;
  if (!m.mu.empty() && !m.gamma.empty() && E[m.mu.back()].dst != E[m.gamma.back()].dst) return std::nullopt;
  return m;
}

bool is_normal(const Graph& g, const AlgebraElement& x) {
  for (const auto& [w, c] : x.terms())
    if (!as_monomial(g, w)) return false;
  return true;
}

WeightMap WeightMap::standard(const Graph& g) { return uniform(g, Rational(1)); }

WeightMap WeightMap::uniform(const Graph& g, const Rational& w) {
  return WeightMap(std::vector<Rational>(g.edge_count(), w));
}

Rational WeightMap::degree(const Word& w) const {
  Rational d = 0;
  for (const Generator& x : w) {
    if (x.kind == GeneratorKind::Vertex) continue;
    if (x.index >= weights_.size()) throw Error(ErrorCode::UnknownGenerator, "edge without a weight");
    if (x.kind == GeneratorKind::Edge)
      d += weights_[x.index];
    else
      d -= weights_[x.index];
  }
  return d;
}

std::map<Rational, AlgebraElement> graded_decompose(const Graph& g, const WeightMap& w, const AlgebraElement& x) {
  std::map<Rational, AlgebraElement> out;
  for (const auto& [word, c] : x.terms()) {
    check_generators(g, word);
    out[w.degree(word)].add(word, c);
  }
  return out;
}

AlgebraElement ck2_expand(const Graph& g, const AlgebraElement& x, std::size_t v) {
  if (v >= g.vertex_count()) throw Error(ErrorCode::UnknownGenerator, "vertex index outside the graph");
  if (g.out_edges(v).empty()) throw Error(ErrorCode::SinkVertex, "vertex emits no edges: " + g.vertices()[v]);
  const Word lone{{GeneratorKind::Vertex, v}};
  const AlgebraElement r = reduce(g, x);
  AlgebraElement out;
  for (const auto& [w, c] : r.terms()) {
    if (w != lone) {
      out.add(w, c);
      continue;
    }
    for (std::size_t e : g.out_edges(v)) out.add({{GeneratorKind::Edge, e}, {GeneratorKind::Ghost, e}}, c);
  }
  return reduce(g, out);
}

AlgebraElement adjoint(const AlgebraElement& x) {
  AlgebraElement out;
  for (const auto& [w, c] : x.terms()) {
    Word r(w.rbegin(), w.rend());
    for (Generator& g : r) {
      if (g.kind == GeneratorKind::Edge)
        g.kind = GeneratorKind::Ghost;
      else if (g.kind == GeneratorKind::Ghost)
        g.kind = GeneratorKind::Edge;
    }
    out.add(r, c);
  }
  return out;
}

AlgebraElement canonical_form(const Graph& g, const AlgebraElement& x) {
  std::vector<std::optional<std::size_t>> special(g.vertex_count());
  for (std::size_t v = 0; v < g.vertex_count(); ++v)
    if (!g.out_edges(v).empty()) special[v] = g.out_edges(v).front();

  // Index p of the first ghost when the word ends its real path with e and
  // starts its ghost path with e*, e special.
  auto junction = [&](const Word& w) -> std::optional<std::size_t> {
    std::size_t p = 0;
    while (p < w.size() && w[p].kind == GeneratorKind::Edge) ++p;
    if (p == 0 || p >= w.size() || w[p].kind != GeneratorKind::Ghost) return std::nullopt;
    const std::size_t e = w[p - 1].index;
    if (w[p].index != e || special[g.edges()[e].src] != e) return std::nullopt;
    return p;
  };

  AlgebraElement cur = reduce(g, x);
  while (true) {
    AlgebraElement keep;
    AlgebraElement rewritten;
    bool changed = false;
    for (const auto& [w, c] : cur.terms()) {
      const auto p = junction(w);
      if (!p) {
        keep.add(w, c);
        continue;
      }
      changed = true;
      const std::size_t e = w[*p - 1].index;
      const std::size_t u = g.edges()[e].src;
      const Word head(w.begin(), w.begin() + static_cast<long>(*p) - 1);
      const Word tail(w.begin() + static_cast<long>(*p) + 1, w.end());
      Word lone = head;
      lone.push_back({GeneratorKind::Vertex, u});
      lone.insert(lone.end(), tail.begin(), tail.end());
      rewritten.add(lone, c);
      for (std::size_t f : g.out_edges(u)) {
        if (f == e) continue;
        Word other = head;
        other.push_back({GeneratorKind::Edge, f});
        other.push_back({GeneratorKind::Ghost, f});
        other.insert(other.end(), tail.begin(), tail.end());
        rewritten.add(other, -c);
      }
    }
    if (!changed) return cur;
    cur = keep + reduce(g, rewritten);
  }
}

FamilyCheck check_family(const FamilyAssignment& fa, const Graph& source) {
  FamilyCheck out;
  const Graph& t = fa.target;
  if (fa.vertices.size() != source.vertex_count() || fa.edges.size() != source.edge_count() ||
      fa.ghosts.size() != source.edge_count()) {
    out.ok = false;
    out.failures.push_back("assignment does not cover every generator of the source graph");
    return out;
  }
  auto holds = [&](const AlgebraElement& lhs, const AlgebraElement& rhs, const std::string& what) {
    if (!canonical_form(t, lhs - rhs).is_zero()) {
      out.ok = false;
      out.failures.push_back(what);
    }
  };
  const auto& V = source.vertices();
  const auto& E = source.edges();
  const std::size_t nv = source.vertex_count();
  const std::size_t ne = source.edge_count();
  for (std::size_t v = 0; v < nv; ++v)
    for (std::size_t w = 0; w < nv; ++w)
      holds(fa.vertices[v] * fa.vertices[w], v == w ? fa.vertices[v] : AlgebraElement(),
            "vertex products fail for " + V[v] + ", " + V[w]);
  for (std::size_t e = 0; e < ne; ++e) {
    const std::string& id = E[e].id;
    holds(fa.vertices[E[e].src] * fa.edges[e], fa.edges[e], "source relation fails for " + id);
    holds(fa.edges[e] * fa.vertices[E[e].dst], fa.edges[e], "range relation fails for " + id);
    holds(fa.vertices[E[e].dst] * fa.ghosts[e], fa.ghosts[e], "range relation fails for " + id + "*");
    holds(fa.ghosts[e] * fa.vertices[E[e].src], fa.ghosts[e], "source relation fails for " + id + "*");
  }
  for (std::size_t e = 0; e < ne; ++e)
    for (std::size_t f = 0; f < ne; ++f)
      holds(fa.ghosts[e] * fa.edges[f], e == f ? fa.vertices[E[e].dst] : AlgebraElement(),
            "ghost-edge products fail for " + E[e].id + "*, " + E[f].id);
  for (std::size_t v = 0; v < nv; ++v) {
    if (source.out_edges(v).empty()) continue;
    AlgebraElement sum;
    for (std::size_t e : source.out_edges(v)) sum += fa.edges[e] * fa.ghosts[e];
    holds(sum, fa.vertices[v], "CK2 fails at " + V[v]);
  }
  return out;
}

bool verify_family(const FamilyAssignment& fa, const Graph& source) { return check_family(fa, source).ok; }

FamilyAssignment identity_family(const Graph& g) {
  FamilyAssignment fa{g, {}, {}, {}};
  for (std::size_t v = 0; v < g.vertex_count(); ++v) fa.vertices.push_back(AlgebraElement::of({{GeneratorKind::Vertex, v}}));
  for (std::size_t e = 0; e < g.edge_count(); ++e) {
    fa.edges.push_back(AlgebraElement::of({{GeneratorKind::Edge, e}}));
    fa.ghosts.push_back(AlgebraElement::of({{GeneratorKind::Ghost, e}}));
  }
  return fa;
}

FamilyAssignment in_split_family(const Graph& g, const EdgePartition& p) {
  Split s = in_split(g, p);
  std::vector<std::vector<std::size_t>> vertex_of(g.vertex_count());
  for (std::size_t i = 0; i < s.vertex_origin.size(); ++i) vertex_of[s.vertex_origin[i].first].push_back(i);
  std::vector<std::vector<std::size_t>> edge_of(g.edge_count());
  for (std::size_t i = 0; i < s.edge_origin.size(); ++i) edge_of[s.edge_origin[i].first].push_back(i);

  FamilyAssignment fa{s.graph, {}, {}, {}};
  const Graph& t = fa.target;
  for (std::size_t v = 0; v < g.vertex_count(); ++v)
    fa.vertices.push_back(AlgebraElement::of({{GeneratorKind::Vertex, vertex_of[v][0]}}));
  for (std::size_t e = 0; e < g.edge_count(); ++e) {
    const std::size_t e1 = edge_of[e][0];
    const std::size_t block = s.vertex_origin[t.edges()[e1].dst].second;
    const std::size_t v = g.edges()[e].dst;
    AlgebraElement te;
    for (std::size_t f : g.out_edges(v))
      te.add({{GeneratorKind::Edge, e1}, {GeneratorKind::Edge, edge_of[f][block]}, {GeneratorKind::Ghost, edge_of[f][0]}},
             Rational(1));
    fa.edges.push_back(te);
    fa.ghosts.push_back(adjoint(te));
  }
  return fa;
}

FamilyAssignment bridge_family(const BridgeGraph& b) {
  FamilyAssignment fa{b.e3, {}, {}, {}};
  for (std::size_t v = 0; v < b.e1.vertex_count(); ++v)
    fa.vertices.push_back(AlgebraElement::of({{GeneratorKind::Vertex, b.class1[v]}}));
  for (const auto& [x, y] : b.theta1) {
    AlgebraElement path = AlgebraElement::of({{GeneratorKind::Edge, x}, {GeneratorKind::Edge, y}});
    fa.ghosts.push_back(adjoint(path));
    fa.edges.push_back(std::move(path));
  }
  return fa;
}

namespace {

class TermParser {
 public:
  TermParser(const Graph& g, std::string_view text) : g_(g), s_(text) {}

  AlgebraElement parse() {
    skip();
    if (pos_ < s_.size() && s_[pos_] == '0') {
      std::size_t save = pos_;
      ++pos_;
      skip();
      if (pos_ == s_.size()) return {};
      pos_ = save;
    }
    AlgebraElement out;
    bool first = true;
    while (true) {
      skip();
      if (pos_ == s_.size()) {
        if (first) fail("empty expression");
        break;
      }
      Rational sign = 1;
      if (s_[pos_] == '+' || s_[pos_] == '-') {
        if (s_[pos_] == '-') sign = -1;
        ++pos_;
        skip();
      } else if (!first) {
        fail("expected '+' or '-'");
      }
      first = false;
      term(out, sign);
    }
    return out;
  }

 private:
  [[noreturn]] void fail(const std::string& why) const {
    throw Error(ErrorCode::Parse, why + " at offset " + std::to_string(pos_));
  }

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  void term(AlgebraElement& out, const Rational& sign) {
    Rational coeff = 1;
    if (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
      const std::size_t start = pos_;
      while (pos_ < s_.size() && (std::isdigit(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '/')) ++pos_;
      coeff = parse_rational(s_.substr(start, pos_ - start));
      skip();
    }
    Word w;
    while (pos_ < s_.size() && (std::isalpha(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) {
      const std::size_t start = pos_;
      while (pos_ < s_.size() &&
             (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_' || s_[pos_] == '.'))
        ++pos_;
      const std::string name(s_.substr(start, pos_ - start));
      bool ghost = false;
      if (pos_ < s_.size() && s_[pos_] == '*') {
        ghost = true;
        ++pos_;
      }
      if (ghost) {
        auto e = g_.find_edge(name);
        if (!e) throw Error(ErrorCode::UnknownGenerator, "unknown edge: " + name);
        w.push_back({GeneratorKind::Ghost, *e});
      } else if (auto v = g_.find_vertex(name)) {
        w.push_back({GeneratorKind::Vertex, *v});
      } else if (auto e = g_.find_edge(name)) {
        w.push_back({GeneratorKind::Edge, *e});
      } else {
        throw Error(ErrorCode::UnknownGenerator, "unknown generator: " + name);
      }
      skip();
    }
    if (w.empty()) fail("a term needs at least one generator");
    out.add(w, sign * coeff);
  }

  const Graph& g_;
  std::string_view s_;
  std::size_t pos_ = 0;
};

}  // namespace

AlgebraElement parse_element(const Graph& g, std::string_view text) { return TermParser(g, text).parse(); }

std::string to_string(const Graph& g, const Word& w) {
  std::string out;
  for (const Generator& x : w) {
    if (!out.empty()) out += ' ';
    switch (x.kind) {
      case GeneratorKind::Vertex: out += g.vertices().at(x.index); break;
      case GeneratorKind::Edge: out += g.edges().at(x.index).id; break;
      case GeneratorKind::Ghost: out += g.edges().at(x.index).id + "*"; break;
    }
  }
  return out;
}

std::string to_string(const Graph& g, const AlgebraElement& x) {
  if (x.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [w, c] : x.terms()) {
    const bool negative = c < 0;
    const Rational mag = negative ? Rational(-c) : c;
    if (first)
      out += negative ? "-" : "";
    else
      out += negative ? " - " : " + ";
    if (mag != 1) out += to_string(mag) + " ";
    out += to_string(g, w);
    first = false;
  }
  return out;
}

}  // namespace symdyn
