#pragma once

#include "symdyn/graph.hpp"
#include "symdyn/moves.hpp"
#include "symdyn/scalar.hpp"

#include <compare>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace symdyn {

enum class GeneratorKind { Vertex, Edge, Ghost };

/// v, e or e*; index into the graph's vertices or edges.
struct Generator {
  GeneratorKind kind = GeneratorKind::Vertex;
  std::size_t index = 0;

  auto operator<=>(const Generator&) const = default;
};

using Word = std::vector<Generator>;

/// Finite formal sum of nonempty words with rational coefficients. Zero
/// coefficients are never stored.
class AlgebraElement {
 public:
  using Terms = std::map<Word, Rational>;

  AlgebraElement() = default;
  static AlgebraElement of(Word w, const Rational& c = Rational(1));

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  void add(const Word& w, const Rational& c);

  AlgebraElement& operator+=(const AlgebraElement& o);
  AlgebraElement& operator-=(const AlgebraElement& o);
  friend AlgebraElement operator+(AlgebraElement a, const AlgebraElement& b) { return a += b; }
  friend AlgebraElement operator-(AlgebraElement a, const AlgebraElement& b) { return a -= b; }
  /// Concatenation product, bilinear.
  friend AlgebraElement operator*(const AlgebraElement& a, const AlgebraElement& b);
  friend AlgebraElement operator*(const Rational& c, const AlgebraElement& a);
  friend bool operator==(const AlgebraElement&, const AlgebraElement&) = default;

 private:
  Terms terms_;
};

AlgebraElement vertex_term(const Graph& g, const std::string& v);
AlgebraElement edge_term(const Graph& g, const std::string& e);
AlgebraElement ghost_term(const Graph& g, const std::string& e);

enum class RewriteStrategy { Leftmost, Rightmost };

/// Rewrites every word with the vertex, path and ghost relations until each
/// is a monomial mu gamma* or vanishes. Throws Error(UnknownGenerator) for
/// indices outside g.
AlgebraElement reduce(const Graph& g, const AlgebraElement& x, RewriteStrategy s = RewriteStrategy::Leftmost);

/// mu gamma* with r(mu) = r(gamma); a lone vertex when both paths are empty.
struct Monomial {
  std::vector<std::size_t> mu;
  std::vector<std::size_t> gamma;
  std::optional<std::size_t> vertex;
};

std::optional<Monomial> as_monomial(const Graph& g, const Word& w);
bool is_normal(const Graph& g, const AlgebraElement& x);

/// Rational degree per edge; ghosts carry the negated degree, vertices 0.
class WeightMap {
 public:
  WeightMap() = default;
  explicit WeightMap(std::vector<Rational> edge_weights) : weights_(std::move(edge_weights)) {}
  static WeightMap standard(const Graph& g);
  static WeightMap uniform(const Graph& g, const Rational& w);

  const std::vector<Rational>& weights() const { return weights_; }
  Rational degree(const Word& w) const;

 private:
  std::vector<Rational> weights_;
};

/// Terms of x grouped by degree.
std::map<Rational, AlgebraElement> graded_decompose(const Graph& g, const WeightMap& w, const AlgebraElement& x);

/// Replaces every lone occurrence of v in reduce(x) by the sum of e e* over
/// the edges v emits. Throws Error(SinkVertex).
AlgebraElement ck2_expand(const Graph& g, const AlgebraElement& x, std::size_t v);

/// The involution: reverses words and swaps edges with ghosts.
AlgebraElement adjoint(const AlgebraElement& x);

/// Normal form modulo all four relations. Each non-sink vertex's first
/// emitted edge is declared special; monomials ending in e e* with e special
/// are rewritten until none remain, leaving x in the monomial basis that
/// omits them.
AlgebraElement canonical_form(const Graph& g, const AlgebraElement& x);

struct FamilyAssignment {
  Graph target;
  std::vector<AlgebraElement> vertices;  ///< per source vertex
  std::vector<AlgebraElement> edges;     ///< per source edge
  std::vector<AlgebraElement> ghosts;    ///< per source edge
};

struct FamilyCheck {
  bool ok = true;
  std::vector<std::string> failures;
};

/// Substitutes the assignment into every defining relation of the source
/// graph and compares canonical forms in the target.
FamilyCheck check_family(const FamilyAssignment& fa, const Graph& source);
bool verify_family(const FamilyAssignment& fa, const Graph& source);

FamilyAssignment identity_family(const Graph& g);

/// Q_v = v_1, T_e = sum over f leaving r(e) of e_1 f_i f_1*, with i the
/// block of e, and T_e* its adjoint. Target: in_split(g, p).
FamilyAssignment in_split_family(const Graph& g, const EdgePartition& p);

/// v -> v, l -> theta1(l) in the bridge graph.
FamilyAssignment bridge_family(const BridgeGraph& b);

/// Terms like "2 e1 e2* - 1/2 v1 + e3". Throws Error(Parse) or
/// Error(UnknownGenerator).
AlgebraElement parse_element(const Graph& g, std::string_view text);
std::string to_string(const Graph& g, const Word& w);
std::string to_string(const Graph& g, const AlgebraElement& x);

}  // namespace symdyn
