#include "symdyn/linalg.hpp"

#include "symdyn/error.hpp"

#include <numeric>
#include <queue>

namespace symdyn {

using Index = Eigen::Index;

// ---------------------------------------------------------------------------
// Smith normal form

std::vector<Integer> SmithForm::diagonal() const {
  std::vector<Integer> out;
  for (Index i = 0; i < std::min(D.rows(), D.cols()); ++i) out.push_back(D(i, i));
  return out;
}

namespace {

Integer floor_div(const Integer& a, const Integer& b) {
  Integer q = a / b;  // truncates toward zero
  if ((a % b != 0) && ((a < 0) != (b < 0))) q -= 1;
  return q;
}

// Row/column operations applied to D and mirrored into U or V.
struct SmithWork {
  IntMatrix U, D, V;

  void swap_rows(Index a, Index b) {
    if (a == b) return;
    D.row(a).swap(D.row(b));
    U.row(a).swap(U.row(b));
  }
  void swap_cols(Index a, Index b) {
    if (a == b) return;
    D.col(a).swap(D.col(b));
    V.col(a).swap(V.col(b));
  }
  // row[target] += factor * row[source]
  void add_row(Index target, Index source, const Integer& factor) {
    D.row(target) += factor * D.row(source);
    U.row(target) += factor * U.row(source);
  }
  void add_col(Index target, Index source, const Integer& factor) {
    D.col(target) += factor * D.col(source);
    V.col(target) += factor * V.col(source);
  }
  void negate_row(Index r) {
    D.row(r) = -D.row(r);
    U.row(r) = -U.row(r);
  }
};

}  // namespace

SmithForm smith_normal_form(const IntMatrix& m) {
  const Index rows = m.rows();
  const Index cols = m.cols();
  SmithWork w{identity<Integer>(rows), m, identity<Integer>(cols)};

  for (Index t = 0; t < std::min(rows, cols); ++t) {
    while (true) {
      // Pivot on the entry of minimal absolute value in the trailing block.
      Index pr = -1, pc = -1;
      Integer best = 0;
      for (Index i = t; i < rows; ++i)
        for (Index j = t; j < cols; ++j) {
          if (w.D(i, j) == 0) continue;
          Integer a = mp::abs(w.D(i, j));
          if (pr < 0 || a < best) {
            best = a;
            pr = i;
            pc = j;
          }
        }
      if (pr < 0) break;  // trailing block is zero
      w.swap_rows(t, pr);
      w.swap_cols(t, pc);

      bool clean = true;
      const Integer pivot = w.D(t, t);
      for (Index i = t + 1; i < rows; ++i) {
        if (w.D(i, t) == 0) continue;
        w.add_row(i, t, -floor_div(w.D(i, t), pivot));
        if (w.D(i, t) != 0) clean = false;
      }
      for (Index j = t + 1; j < cols; ++j) {
        if (w.D(t, j) == 0) continue;
        w.add_col(j, t, -floor_div(w.D(t, j), pivot));
        if (w.D(t, j) != 0) clean = false;
      }
      if (!clean) continue;

      // Enforce divisibility of the trailing block by the pivot.
      bool divides = true;
      for (Index i = t + 1; i < rows && divides; ++i)
        for (Index j = t + 1; j < cols; ++j)
          if (w.D(i, j) % pivot != 0) {
            w.add_row(t, i, Integer(1));
            divides = false;
            break;
          }
      if (divides) break;
    }
    if (t < rows && w.D(t, t) < 0) w.negate_row(t);
  }
  return {std::move(w.U), std::move(w.D), std::move(w.V)};
}

Integer determinant(const IntMatrix& m) {
  if (m.rows() != m.cols()) throw Error(ErrorCode::ShapeError, "determinant of non-square matrix");
  const Index n = m.rows();
  if (n == 0) return 1;
  IntMatrix a = m;
  Integer sign = 1;
  Integer prev = 1;
  for (Index k = 0; k < n - 1; ++k) {
    if (a(k, k) == 0) {
      Index swap = -1;
      for (Index i = k + 1; i < n; ++i)
        if (a(i, k) != 0) {
          swap = i;
          break;
        }
      if (swap < 0) return 0;
      a.row(k).swap(a.row(swap));
      sign = -sign;
    }
    for (Index i = k + 1; i < n; ++i)
      for (Index j = k + 1; j < n; ++j) a(i, j) = (a(i, j) * a(k, k) - a(i, k) * a(k, j)) / prev;
    prev = a(k, k);
  }
  return sign * a(n - 1, n - 1);
}

CharacteristicData characteristic_data(const IntMatrix& m) {
  if (m.rows() != m.cols()) throw Error(ErrorCode::ShapeError, "characteristic polynomial of non-square matrix");
  const Index n = m.rows();
  std::vector<Integer> c(static_cast<std::size_t>(n + 1), Integer(0));
  c[static_cast<std::size_t>(n)] = 1;
  std::vector<IntMatrix> adj(static_cast<std::size_t>(std::max<Index>(n, 0)));
  // M_k is the coefficient of x^(n-k) in adj(xI - m).
  IntMatrix mk = identity<Integer>(n);
  for (Index k = 1; k <= n; ++k) {
    if (k > 1) mk = m * mk + c[static_cast<std::size_t>(n - k + 1)] * identity<Integer>(n);
    adj[static_cast<std::size_t>(n - k)] = mk;
    Integer tr = (m * mk).trace();
    if (tr % k != 0) throw Error(ErrorCode::InvalidMatrix, "Faddeev-LeVerrier trace not divisible");
    c[static_cast<std::size_t>(n - k)] = -tr / k;
  }
  return {IntPolynomial(std::move(c)), std::move(adj)};
}

IntPolynomial char_poly(const IntMatrix& m) { return characteristic_data(m).char_poly; }

IntMatrix evaluate(const IntPolynomial& p, const IntMatrix& m) {
  IntMatrix acc = IntMatrix::Zero(m.rows(), m.cols());
  const auto& c = p.coefficients();
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * m + *it * identity<Integer>(m.rows());
  return acc;
}

// ---------------------------------------------------------------------------
// Rational elimination

RowEchelon row_echelon(const RatMatrix& m) {
  RowEchelon out{m, {}, identity<Rational>(m.rows())};
  RatMatrix& a = out.reduced;
  RatMatrix& t = out.transform;
  Index row = 0;
  for (Index col = 0; col < a.cols() && row < a.rows(); ++col) {
    Index pivot = -1;
    for (Index i = row; i < a.rows(); ++i)
      if (a(i, col) != 0) {
        pivot = i;
        break;
      }
    if (pivot < 0) continue;
    a.row(row).swap(a.row(pivot));
    t.row(row).swap(t.row(pivot));
    const Rational inv = Rational(1) / a(row, col);
    a.row(row) *= inv;
    t.row(row) *= inv;
    for (Index i = 0; i < a.rows(); ++i) {
      if (i == row || a(i, col) == 0) continue;
      const Rational f = a(i, col);
      a.row(i) -= f * a.row(row);
      t.row(i) -= f * t.row(row);
    }
    out.pivots.push_back(col);
    ++row;
  }
  return out;
}

Index rank(const RatMatrix& m) { return static_cast<Index>(row_echelon(m).pivots.size()); }

namespace {

std::vector<RatVector> null_space_from(const RowEchelon& e, Index cols) {
  std::vector<bool> is_pivot(static_cast<std::size_t>(cols), false);
  for (Index p : e.pivots) is_pivot[static_cast<std::size_t>(p)] = true;
  std::vector<RatVector> basis;
  for (Index free = 0; free < cols; ++free) {
    if (is_pivot[static_cast<std::size_t>(free)]) continue;
    RatVector v = RatVector::Zero(cols);
    v(free) = 1;
    for (std::size_t r = 0; r < e.pivots.size(); ++r) v(e.pivots[r]) = -e.reduced(static_cast<Index>(r), free);
    basis.push_back(std::move(v));
  }
  return basis;
}

}  // namespace

std::vector<RatVector> null_space(const RatMatrix& m) { return null_space_from(row_echelon(m), m.cols()); }

AffineSolution solve_affine_exact(const LinearSystem& system) {
  const RatMatrix& a = system.coefficients;
  if (a.rows() != system.rhs.size()) throw Error(ErrorCode::ShapeError, "rhs length does not match equations");
  RowEchelon e = row_echelon(a);
  RatVector rhs = e.transform * system.rhs;
  AffineSolution out;
  const auto r = static_cast<Index>(e.pivots.size());
  for (Index i = r; i < a.rows(); ++i) {
    if (rhs(i) != 0) {
      out.feasible = false;
      out.certificate = e.transform.row(i).transpose() / rhs(i);
      return out;
    }
  }
  out.feasible = true;
  out.particular = RatVector::Zero(a.cols());
  for (Index i = 0; i < r; ++i) out.particular(e.pivots[static_cast<std::size_t>(i)]) = rhs(i);
  out.null_basis = null_space_from(e, a.cols());
  return out;
}

RatMatrix intertwiner_system(const IntMatrix& a, const IntMatrix& b) {
  if (a.rows() != a.cols() || b.rows() != b.cols())
    throw Error(ErrorCode::ShapeError, "intertwiner of non-square matrices");
  const Index n = a.rows();
  const Index m = b.rows();
  RatMatrix c = RatMatrix::Zero(m * n, m * n);
  for (Index i = 0; i < m; ++i)
    for (Index j = 0; j < n; ++j) {
      const Index r = i * n + j;
      for (Index k = 0; k < n; ++k) c(r, i * n + k) += Rational(a(k, j));
      for (Index k = 0; k < m; ++k) c(r, k * n + j) -= Rational(b(i, k));
    }
  return c;
}

RatMatrix unflatten(const RatVector& v, Index rows, Index cols) {
  RatMatrix out(rows, cols);
  for (Index i = 0; i < rows; ++i)
    for (Index j = 0; j < cols; ++j) out(i, j) = v(i * cols + j);
  return out;
}

RatVector flatten(const RatMatrix& m) {
  RatVector out(m.rows() * m.cols());
  for (Index i = 0; i < m.rows(); ++i)
    for (Index j = 0; j < m.cols(); ++j) out(i * m.cols() + j) = m(i, j);
  return out;
}

std::vector<RatMatrix> intertwiner_space(const IntMatrix& a, const IntMatrix& b) {
  std::vector<RatMatrix> out;
  for (const auto& v : null_space(intertwiner_system(a, b))) out.push_back(unflatten(v, b.rows(), a.rows()));
  return out;
}

std::optional<RatMatrix> inverse(const RatMatrix& m) {
  if (m.rows() != m.cols()) return std::nullopt;
  RowEchelon e = row_echelon(m);
  if (static_cast<Index>(e.pivots.size()) != m.rows()) return std::nullopt;
  return e.transform;
}

// ---------------------------------------------------------------------------
// Perron-Frobenius

namespace {

std::vector<bool> reachable_from(const IntMatrix& a, Index start) {
  // Vertices reachable by paths of positive length.
  std::vector<bool> seen(static_cast<std::size_t>(a.rows()), false);
  std::queue<Index> q;
  for (Index j = 0; j < a.cols(); ++j)
    if (a(start, j) != 0 && !seen[static_cast<std::size_t>(j)]) {
      seen[static_cast<std::size_t>(j)] = true;
      q.push(j);
    }
  while (!q.empty()) {
    Index u = q.front();
    q.pop();
    for (Index j = 0; j < a.cols(); ++j)
      if (a(u, j) != 0 && !seen[static_cast<std::size_t>(j)]) {
        seen[static_cast<std::size_t>(j)] = true;
        q.push(j);
      }
  }
  return seen;
}

}  // namespace

bool is_irreducible(const IntMatrix& a) {
  if (a.rows() != a.cols() || a.rows() == 0) return false;
  for (Index i = 0; i < a.rows(); ++i) {
    auto seen = reachable_from(a, i);
    for (bool s : seen)
      if (!s) return false;
  }
  return true;
}

std::vector<int> cyclic_classes(const IntMatrix& a) {
  const Index n = a.rows();
  std::vector<long> level(static_cast<std::size_t>(n), -1);
  level[0] = 0;
  std::queue<Index> q;
  q.push(0);
  while (!q.empty()) {
    Index u = q.front();
    q.pop();
    for (Index j = 0; j < n; ++j)
      if (a(u, j) != 0 && level[static_cast<std::size_t>(j)] < 0) {
        level[static_cast<std::size_t>(j)] = level[static_cast<std::size_t>(u)] + 1;
        q.push(j);
      }
  }
  long g = 0;
  for (Index u = 0; u < n; ++u)
    for (Index j = 0; j < n; ++j)
      if (a(u, j) != 0)
        g = std::gcd(g, std::labs(level[static_cast<std::size_t>(u)] + 1 - level[static_cast<std::size_t>(j)]));
  std::vector<int> classes(static_cast<std::size_t>(n), 0);
  if (g == 0) return classes;
  for (Index u = 0; u < n; ++u) classes[static_cast<std::size_t>(u)] = static_cast<int>(level[static_cast<std::size_t>(u)] % g);
  return classes;
}

int period(const IntMatrix& a) {
  if (!is_irreducible(a)) throw Error(ErrorCode::NotIrreducible, "period of a reducible matrix");
  auto classes = cyclic_classes(a);
  int p = 1;
  for (int c : classes) p = std::max(p, c + 1);
  return p;
}

const char* sign_name(Sign s) {
  switch (s) {
    case Sign::Negative: return "Negative";
    case Sign::Zero: return "Zero";
    case Sign::Positive: return "Positive";
  }
  return "?";
}

namespace {

Sign sign_of(const Rational& v) { return v > 0 ? Sign::Positive : (v < 0 ? Sign::Negative : Sign::Zero); }

}  // namespace

PerronRoot::PerronRoot(const IntMatrix& a)
    : a_(a),
      data_(characteristic_data(a)),
      sturm_(squarefree_part(to_rational(data_.char_poly))) {
  if (!is_nonnegative(a)) throw Error(ErrorCode::InvalidMatrix, "Perron root of a matrix with negative entries");
  if (!is_irreducible(a)) throw Error(ErrorCode::NotIrreducible, "Perron root of a reducible matrix");
  // lambda <= max row sum < hi; lambda > 0 for an irreducible matrix.
  Integer max_row = 0;
  for (Index i = 0; i < a.rows(); ++i) max_row = std::max(max_row, Integer(a.row(i).sum()));
  lo_ = 0;
  hi_ = Rational(max_row + 1);
  // Invariant: no root above hi_, and the largest root lies in (lo_, hi_].
  while (sturm_.count_roots(lo_, hi_) > 1) {
    Rational mid = (lo_ + hi_) / 2;
    if (sturm_.count_roots(mid, hi_) >= 1)
      lo_ = mid;
    else
      hi_ = mid;
  }
  if (sturm_.polynomial()(hi_) == 0) {
    exact_ = true;
    lo_ = hi_;
  }
}

void PerronRoot::refine() {
  if (exact_) return;
  Rational mid = (lo_ + hi_) / 2;
  if (sturm_.polynomial()(mid) == 0) {
    exact_ = true;
    lo_ = hi_ = mid;
    return;
  }
  if (sturm_.count_roots(lo_, mid) == 1)
    hi_ = mid;
  else
    lo_ = mid;
}

void PerronRoot::refine_to(const Rational& width) {
  while (!exact_ && hi_ - lo_ > width) refine();
}

Sign PerronRoot::sign_at(const RatPolynomial& q) {
  if (q.is_zero()) return Sign::Zero;
  if (exact_) return sign_of(q(hi_));
  // Zero test: lambda is a root of q iff it is a root of gcd(q, p).
  RatPolynomial g = gcd(q, sturm_.polynomial());
  if (g.degree() >= 1 && SturmSequence(g).count_roots(lo_, hi_) >= 1) return Sign::Zero;
  SturmSequence q_sturm(squarefree_part(q));
  while (q_sturm.count_roots(lo_, hi_) != 0) refine();
  return sign_of(q(hi_));
}

Sign PerronRoot::pairing_sign(const RatVector& v) {
  const Index n = a_.rows();
  if (v.size() != n) throw Error(ErrorCode::ShapeError, "pairing vector has wrong length");
  // Rows of adj(lambda I - a) are left null vectors of (lambda I - a); they are
  // positive for irreducible a. Use row 0.
  std::vector<Rational> pairing(data_.adjugate.size(), Rational(0));
  std::vector<Rational> first(data_.adjugate.size(), Rational(0));
  for (std::size_t k = 0; k < data_.adjugate.size(); ++k) {
    for (Index j = 0; j < n; ++j) pairing[k] += Rational(data_.adjugate[k](0, j)) * v(j);
    first[k] = Rational(data_.adjugate[k](0, 0));
  }
  Sign scale = sign_at(RatPolynomial(first));
  if (scale == Sign::Zero) throw Error(ErrorCode::InvalidMatrix, "degenerate Perron eigenvector");
  Sign s = sign_at(RatPolynomial(std::move(pairing)));
  if (scale == Sign::Negative && s != Sign::Zero) s = s == Sign::Positive ? Sign::Negative : Sign::Positive;
  return s;
}

Sign perron_pairing_sign(const IntMatrix& a, const RatVector& v) {
  PerronRoot root(a);
  return root.pairing_sign(v);
}

}  // namespace symdyn
