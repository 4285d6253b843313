#include "symdyn/equivalences.hpp"

#include "symdyn/error.hpp"
#include "symdyn/invariants.hpp"
#include "symdyn/linalg.hpp"

#include <functional>
#include <map>

namespace symdyn {

using Eigen::Index;

bool verify_esse(const IntMatrix& a, const IntMatrix& b, const SSEWitness& w) {
  const IntMatrix& r = w.R;
  const IntMatrix& s = w.S;
  if (a.rows() != a.cols() || b.rows() != b.cols() || r.rows() != a.rows() || s.cols() != a.cols() ||
      r.cols() != s.rows() || b.rows() != r.cols())
    throw Error(ErrorCode::ShapeError, "witness shapes do not compose with the matrices");
  if (!is_nonnegative(r) || !is_nonnegative(s)) return false;
  return exactly_equal(IntMatrix(r * s), a) && exactly_equal(IntMatrix(s * r), b);
}

bool verify_chain(const IntMatrix& a, const IntMatrix& b, const Chain& c) {
  if (c.matrices.empty()) return c.links.empty() && exactly_equal(a, b);
  if (c.matrices.size() != c.links.size() + 1) return false;
  if (!exactly_equal(c.matrices.front(), a) || !exactly_equal(c.matrices.back(), b)) return false;
  for (std::size_t i = 0; i < c.links.size(); ++i) {
    try {
      if (!verify_esse(c.matrices[i], c.matrices[i + 1], c.links[i])) return false;
    } catch (const Error&) {
      return false;
    }
  }
  return true;
}

bool verify_se(const IntMatrix& a, const IntMatrix& b, const SEWitness& w) {
  const IntMatrix& r = w.R;
  const IntMatrix& s = w.S;
  if (w.lag == 0 || a.rows() != a.cols() || b.rows() != b.cols()) return false;
  if (r.rows() != a.rows() || r.cols() != b.rows() || s.rows() != b.rows() || s.cols() != a.rows()) return false;
  if (!is_nonnegative(r) || !is_nonnegative(s)) return false;
  return exactly_equal(IntMatrix(r * s), matrix_power(a, w.lag)) &&
         exactly_equal(IntMatrix(s * r), matrix_power(b, w.lag)) && exactly_equal(IntMatrix(a * r), IntMatrix(r * b)) &&
         exactly_equal(IntMatrix(s * a), IntMatrix(b * s));
}

SEWitness transpose_witness(const SEWitness& w) { return SEWitness{w.S.transpose(), w.R.transpose(), w.lag}; }

PrefilterReport compare_invariants(const IntMatrix& a, const IntMatrix& b) {
  if (a.rows() != a.cols() || b.rows() != b.cols()) throw Error(ErrorCode::ShapeError, "matrices must be square");
  PrefilterReport p;
  p.trace = a.trace() == b.trace();
  p.char_poly_away_from_zero = char_poly_away_from_zero(a) == char_poly_away_from_zero(b);
  p.bowen_franks = bowen_franks(a) == bowen_franks(b);
  return p;
}

namespace {

// Points offset + sum t_j basis_j with integer t_j in [0, bound] whose every
// coordinate is an integer in [0, bound], in lexicographic order of t. A
// coordinate is checked as soon as the last basis vector it depends on is
// fixed.
class BoxEnumerator {
 public:
  BoxEnumerator(RatVector offset, std::vector<RatVector> basis, const Integer& bound)
      : offset_(std::move(offset)), basis_(std::move(basis)), bound_(bound) {
    const Index len = offset_.size();
    last_dep_.assign(static_cast<std::size_t>(len), -1);
    for (std::size_t j = 0; j < basis_.size(); ++j)
      for (Index q = 0; q < len; ++q)
        if (basis_[j](q) != 0) last_dep_[static_cast<std::size_t>(q)] = static_cast<int>(j);
    for (Index q = 0; q < len; ++q) checks_[last_dep_[static_cast<std::size_t>(q)]].push_back(q);
  }

  /// Calls visit on each point; stops early when visit returns true.
  bool run(const std::function<bool(const RatVector&)>& visit) {
    RatVector point = offset_;
    if (!entries_ok(point, -1)) return false;
    return descend(0, point, visit);
  }

 private:
  bool entries_ok(const RatVector& point, int depth) const {
    auto it = checks_.find(depth);
    if (it == checks_.end()) return true;
    for (Index q : it->second) {
      const Rational& v = point(q);
      if (v < 0 || v > Rational(bound_) || !is_integral(v)) return false;
    }
    return true;
  }

  bool descend(std::size_t j, RatVector& point, const std::function<bool(const RatVector&)>& visit) {
    if (j == basis_.size()) return visit(point);
    for (Integer t = 0; t <= bound_; ++t) {
      RatVector next = point + Rational(t) * basis_[j];
      if (!entries_ok(next, static_cast<int>(j))) continue;
      if (descend(j + 1, next, visit)) return true;
    }
    return false;
  }

  RatVector offset_;
  std::vector<RatVector> basis_;
  Integer bound_;
  std::vector<int> last_dep_;
  std::map<int, std::vector<Index>> checks_;
};

}  // namespace

SESearchResult search_se(const IntMatrix& a, const IntMatrix& b, unsigned l_max, int entry_bound) {
  SESearchResult result;
  result.prefilter = compare_invariants(a, b);
  if (!result.prefilter.all()) return result;

  const Index n = a.rows();
  const Index m = b.rows();
  // R with a R = R b, and S with S a = b S.
  std::vector<RatVector> r_basis;
  for (const auto& u : intertwiner_space(b, a)) r_basis.push_back(flatten(u));
  const std::vector<RatMatrix> s_basis = intertwiner_space(a, b);
  if (r_basis.empty() || s_basis.empty()) return result;

  const Integer bound(entry_bound);
  for (unsigned lag = 1; lag <= l_max && !result.witness; ++lag) {
    const IntMatrix al = matrix_power(a, lag);
    const IntMatrix bl = matrix_power(b, lag);
    const RatVector target = flatten(to_rational(al));
    const RatMatrix blr = to_rational(bl);

    BoxEnumerator rs(RatVector::Zero(n * m), r_basis, bound);
    rs.run([&](const RatVector& rv) {
      if (is_zero(rv)) return false;
      ++result.candidates;
      const RatMatrix r = unflatten(rv, n, m);
      LinearSystem sys;
      sys.coefficients.resize(n * n, static_cast<Index>(s_basis.size()));
      for (std::size_t i = 0; i < s_basis.size(); ++i)
        sys.coefficients.col(static_cast<Index>(i)) = flatten(RatMatrix(r * s_basis[i]));
      sys.rhs = target;
      const AffineSolution sol = solve_affine_exact(sys);
      if (!sol.feasible) return false;

      auto to_s = [&](const RatVector& coeff) {
        RatMatrix s = RatMatrix::Zero(m, n);
        for (std::size_t i = 0; i < s_basis.size(); ++i)
          if (coeff(static_cast<Index>(i)) != 0) s += coeff(static_cast<Index>(i)) * s_basis[i];
        return s;
      };
      auto accept = [&](const RatMatrix& s) {
        if (!is_integral(s) || !is_nonnegative(s)) return false;
        if (!exactly_equal(RatMatrix(s * r), blr)) return false;
        result.witness = SEWitness{to_integer(r), to_integer(s), lag};
        return true;
      };
      if (sol.null_basis.empty()) return accept(to_s(sol.particular));

      // Free coefficients are entries of S at the basis' free positions, so
      // the same box bound applies to them.
      std::vector<RatVector> s_free;
      for (const auto& v : sol.null_basis) s_free.push_back(flatten(to_s(v)));
      BoxEnumerator ss(flatten(to_s(sol.particular)), s_free, bound);
      return ss.run([&](const RatVector& sv) { return accept(unflatten(sv, m, n)); });
    });
  }
  return result;
}

SSESearchResult search_esse(const IntMatrix& a, const IntMatrix& b, int inner_dim_max, int entry_bound) {
  SSESearchResult result;
  result.prefilter = compare_invariants(a, b);
  const Index n = a.rows();
  const Index k = b.rows();
  if (!result.prefilter.all() || k > inner_dim_max || entry_bound < 0) return result;

  const long top = entry_bound;
  IntMatrix r = IntMatrix::Zero(n, k);

  // All s in [0, bound]^k with r s == column.
  auto column_solutions = [&](const IntVector& column) {
    std::vector<IntVector> out;
    IntVector s = IntVector::Zero(k);
    std::function<void(Index)> rec = [&](Index i) {
      if (i == k) {
        if (exactly_equal(IntVector(r * s), column)) out.push_back(s);
        return;
      }
      for (long v = 0; v <= top; ++v) {
        s(i) = v;
        rec(i + 1);
      }
      s(i) = 0;
    };
    rec(0);
    return out;
  };

  std::function<bool(Index)> fill = [&](Index pos) -> bool {
    if (pos == n * k) {
      ++result.candidates;
      std::vector<std::vector<IntVector>> columns;
      for (Index j = 0; j < n; ++j) {
        columns.push_back(column_solutions(a.col(j)));
        if (columns.back().empty()) return false;
      }
      IntMatrix s(k, n);
      std::function<bool(Index)> pick = [&](Index j) -> bool {
        if (j == n) {
          if (!exactly_equal(IntMatrix(s * r), b)) return false;
          result.witness = SSEWitness{r, s};
          return true;
        }
        for (const auto& col : columns[static_cast<std::size_t>(j)]) {
          s.col(j) = col;
          if (pick(j + 1)) return true;
        }
        return false;
      };
      return pick(0);
    }
    const Index i = pos / k;
    const Index j = pos % k;
    for (long v = 0; v <= top; ++v) {
      r(i, j) = v;
      // A zero row of R forces a zero row of a.
      if (j == k - 1 && is_zero(r.row(i)) && !is_zero(a.row(i))) continue;
      if (fill(pos + 1)) return true;
    }
    r(i, j) = 0;
    return false;
  };
  fill(0);
  return result;
}

}  // namespace symdyn
