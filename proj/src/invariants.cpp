#include "symdyn/invariants.hpp"

#include "symdyn/error.hpp"
#include "symdyn/linalg.hpp"

namespace symdyn {

std::string AbelianGroupFP::str() const {
  std::string out;
  for (const auto& d : torsion) {
    if (!out.empty()) out += " + ";
    out += "Z/" + d.str();
  }
  for (int i = 0; i < rank; ++i) {
    if (!out.empty()) out += " + ";
    out += "Z";
  }
  return out.empty() ? "0" : out;
}

AbelianGroupFP cokernel(const IntMatrix& m) {
  AbelianGroupFP g;
  const auto diag = smith_normal_form(m).diagonal();
  int nonzero = 0;
  for (const auto& d : diag) {
    if (d == 0) continue;
    ++nonzero;
    if (d > 1) g.torsion.push_back(d);
  }
  g.rank = static_cast<int>(m.rows()) - nonzero;
  return g;
}

AbelianGroupFP bowen_franks(const IntMatrix& a) {
  if (a.rows() != a.cols()) throw Error(ErrorCode::ShapeError, "matrix must be square");
  return cokernel(IntMatrix(identity<Integer>(a.rows()) - a));
}

Integer det_i_minus_a(const IntMatrix& a) {
  if (a.rows() != a.cols()) throw Error(ErrorCode::ShapeError, "matrix must be square");
  return determinant(IntMatrix(identity<Integer>(a.rows()) - a));
}

IntPolynomial char_poly_away_from_zero(const IntMatrix& a) { return char_poly(a).without_zero_roots(); }

bool is_trivial_matrix(const IntMatrix& a) {
  if (a.rows() != a.cols() || a.rows() == 0 || !is_nonnegative(a)) return false;
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    if (a.row(i).sum() != 1 || a.col(i).sum() != 1) return false;
  return is_irreducible(a);
}

bool flow_equivalent(const IntMatrix& a, const IntMatrix& b) {
  for (const IntMatrix* m : {&a, &b})
    if (m->rows() != m->cols() || !is_nonnegative(*m) || !is_irreducible(*m) || is_trivial_matrix(*m))
      throw Error(ErrorCode::NotIrreducibleNontrivial, "flow equivalence needs irreducible nontrivial matrices");
  return bowen_franks(a) == bowen_franks(b) && det_i_minus_a(a) == det_i_minus_a(b);
}

BratteliDiagram bratteli(const Graph& g, unsigned depth) {
  for (std::size_t v = 0; v < g.vertex_count(); ++v)
    if (g.out_edges(v).empty()) throw Error(ErrorCode::HasSinks, "graph has a sink: " + g.vertices()[v]);
  BratteliDiagram d;
  d.vertices = g.vertices();
  d.adjacency = g.adjacency();
  IntVector k = IntVector::Ones(static_cast<Eigen::Index>(g.vertex_count()));
  const IntMatrix at = d.adjacency.transpose();
  for (unsigned n = 0; n <= depth; ++n) {
    d.levels.push_back(k);
    k = at * k;
  }
  return d;
}

}  // namespace symdyn
