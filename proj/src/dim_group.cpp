#include "symdyn/dim_group.hpp"

#include "symdyn/error.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace symdyn {

namespace {

void check_shape(const DimensionTriple& t, const DimElement& x) {
  if (x.a.size() != t.dim()) throw Error(ErrorCode::ShapeError, "element length differs from the triple's dimension");
}

IntVector apply_power(const IntMatrix& m, IntVector v, unsigned long p) {
  for (unsigned long i = 0; i < p; ++i) v = m * v;
  return v;
}

}  // namespace

DimensionTriple dimension_triple(const IntMatrix& m) {
  if (m.rows() != m.cols()) throw Error(ErrorCode::InvalidMatrix, "acting matrix must be square");
  if (!is_nonnegative(m)) throw Error(ErrorCode::InvalidMatrix, "acting matrix has a negative entry");
  return DimensionTriple{m};
}

DimensionTriple from_graph(const Graph& g) {
  for (std::size_t v = 0; v < g.vertex_count(); ++v)
    if (g.out_edges(v).empty()) throw Error(ErrorCode::HasSinks, "graph has a sink: " + g.vertices()[v]);
  return DimensionTriple{g.adjacency().transpose()};
}

DimElement dg_element(const std::vector<long long>& a, unsigned long k) {
  DimElement x;
  x.a.resize(static_cast<Eigen::Index>(a.size()));
  for (std::size_t i = 0; i < a.size(); ++i) x.a(static_cast<Eigen::Index>(i)) = Integer(a[i]);
  x.k = k;
  return x;
}

bool dg_equal(const DimensionTriple& t, const DimElement& x, const DimElement& y) {
  check_shape(t, x);
  check_shape(t, y);
  const unsigned long top = std::max(x.k, y.k) + static_cast<unsigned long>(t.dim());
  return exactly_equal(apply_power(t.action, x.a, top - x.k), apply_power(t.action, y.a, top - y.k));
}

DimElement dg_add(const DimensionTriple& t, const DimElement& x, const DimElement& y) {
  check_shape(t, x);
  check_shape(t, y);
  return DimElement{IntVector(apply_power(t.action, x.a, y.k) + apply_power(t.action, y.a, x.k)), x.k + y.k};
}

DimElement dg_negate(const DimElement& x) { return DimElement{IntVector(-x.a), x.k}; }

DimElement dg_zero(const DimensionTriple& t) { return DimElement{IntVector::Zero(t.dim()), 0}; }

DimElement dg_shift(const DimensionTriple& t, const DimElement& x, long power) {
  check_shape(t, x);
  if (power >= 0) return DimElement{apply_power(t.action, x.a, static_cast<unsigned long>(power)), x.k};
  return DimElement{x.a, x.k + static_cast<unsigned long>(-power)};
}

DimElement order_unit(const DimensionTriple& t) { return DimElement{IntVector::Ones(t.dim()), 0}; }

const char* cone_status_name(ConeStatus s) {
  switch (s) {
    case ConeStatus::InCone: return "in_cone";
    case ConeStatus::NotInCone: return "not_in_cone";
    case ConeStatus::Unknown: return "unknown";
  }
  return "unknown";
}

namespace {

IntMatrix principal_submatrix(const IntMatrix& m, const std::vector<Eigen::Index>& idx) {
  const auto n = static_cast<Eigen::Index>(idx.size());
  IntMatrix out(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) out(i, j) = m(idx[i], idx[j]);
  return out;
}

// Iterates until M^m a >= 0. Only called when membership is already decided.
PositivityResult certify(const IntMatrix& m, IntVector y, std::string reason) {
  PositivityResult r;
  r.status = ConeStatus::InCone;
  r.reason = std::move(reason);
  unsigned long power = 0;
  while (!is_nonnegative(y)) {
    y = m * y;
    ++power;
  }
  r.certificate = power;
  return r;
}

// Decides the primitive case for one block: false means not eventually >= 0.
bool primitive_block_ok(const IntMatrix& b, const IntVector& z, std::string& why) {
  const Sign s = perron_pairing_sign(b, to_rational(IntMatrix(z)).col(0));
  if (s == Sign::Negative) {
    why = "negative Perron pairing";
    return false;
  }
  if (s == Sign::Zero && !is_zero(apply_power(b, z, static_cast<unsigned long>(b.rows())))) {
    why = "zero Perron pairing on a nonzero class";
    return false;
  }
  return true;
}

}  // namespace

PositivityResult dg_positive(const DimensionTriple& t, const DimElement& x, const PositivityOptions& opts) {
  check_shape(t, x);
  const IntMatrix& m = t.action;
  IntVector y = x.a;
  for (unsigned long power = 0; power <= opts.iteration_bound; ++power) {
    if (is_nonnegative(y)) {
      PositivityResult r;
      r.status = ConeStatus::InCone;
      r.certificate = power;
      r.reason = "nonnegative iterate";
      return r;
    }
    y = m * y;
  }

  PositivityResult r;
  r.bound = opts.iteration_bound;
  if (t.dim() == 0 || !is_irreducible(m)) {
    r.status = ConeStatus::Unknown;
    r.reason = "reducible acting matrix; no nonnegative iterate within the bound";
    return r;
  }

  const int p = period(m);
  if (p == 1) {
    std::string why;
    if (!primitive_block_ok(m, x.a, why)) {
      r.status = ConeStatus::NotInCone;
      r.reason = why;
      return r;
    }
    return certify(m, x.a, "Perron pairing decides membership");
  }

  const std::vector<int> cls = cyclic_classes(m);
  const IntMatrix mpow = matrix_power(m, static_cast<unsigned>(p));
  IntVector shifted = x.a;
  for (int res = 0; res < p; ++res) {
    for (int c = 0; c < p; ++c) {
      std::vector<Eigen::Index> idx;
      for (Eigen::Index v = 0; v < m.rows(); ++v)
        if (cls[static_cast<std::size_t>(v)] == c) idx.push_back(v);
      IntVector z(static_cast<Eigen::Index>(idx.size()));
      for (std::size_t i = 0; i < idx.size(); ++i) z(static_cast<Eigen::Index>(i)) = shifted(idx[i]);
      std::string why;
      if (!primitive_block_ok(principal_submatrix(mpow, idx), z, why)) {
        r.status = ConeStatus::NotInCone;
        r.reason = why + " on a cyclic class";
        return r;
      }
    }
    shifted = m * shifted;
  }
  return certify(m, x.a, "Perron pairing on every cyclic class decides membership");
}

std::optional<unsigned long> integrality_power(const IntMatrix& m, const RatVector& v) {
  const Integer d = lcm_of_denominators(RatMatrix(v));
  IntVector s(v.size());
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    const Rational scaled = v(i) * d;
    Integer num = boost::multiprecision::numerator(scaled);
    num %= d;
    if (num < 0) num += d;
    s(i) = num;
  }
  std::set<std::vector<Integer>> seen;
  for (unsigned long power = 0;; ++power) {
    if (is_zero(s)) return power;
    std::vector<Integer> key(s.data(), s.data() + s.size());
    if (!seen.insert(key).second) return std::nullopt;
    s = m * s;
    for (Eigen::Index i = 0; i < s.size(); ++i) {
      s(i) %= d;
      if (s(i) < 0) s(i) += d;
    }
  }
}

std::optional<DimElement> apply_rational(const DimensionTriple& target, const RatMatrix& u, const DimElement& x) {
  if (u.rows() != target.dim() || u.cols() != x.a.size())
    throw Error(ErrorCode::ShapeError, "candidate shape differs from the triples");
  const RatVector v = u * to_rational(IntMatrix(x.a)).col(0);
  const auto j = integrality_power(target.action, v);
  if (!j) return std::nullopt;
  RatVector w = v;
  const RatMatrix mr = to_rational(target.action);
  for (unsigned long i = 0; i < *j; ++i) w = mr * w;
  return DimElement{IntVector(to_integer(RatMatrix(w)).col(0)), x.k + *j};
}

bool verify_module_iso(const DimensionTriple& ta, const DimensionTriple& tb, const ModuleIsoCandidate& cand,
                       const PositivityOptions& opts) {
  const RatMatrix& u = cand.U;
  if (ta.dim() != tb.dim() || u.rows() != tb.dim() || u.cols() != ta.dim())
    throw Error(ErrorCode::ShapeError, "isomorphism candidate must be square and match both triples");
  const RatMatrix ma = to_rational(ta.action);
  const RatMatrix mb = to_rational(tb.action);
  if (!exactly_equal(RatMatrix(u * ma), RatMatrix(mb * u))) return false;
  const auto inv = inverse(u);
  if (!inv) return false;

  const auto n = ta.dim();
  for (Eigen::Index i = 0; i < n; ++i) {
    DimElement e{IntVector::Zero(n), 0};
    e.a(i) = 1;
    const auto forward = apply_rational(tb, u, e);
    const auto backward = apply_rational(ta, *inv, e);
    if (!forward || !backward) return false;
    if (dg_positive(tb, *forward, opts).status != ConeStatus::InCone) return false;
    if (dg_positive(ta, *backward, opts).status != ConeStatus::InCone) return false;
  }
  if (cand.pointed) {
    const auto unit = apply_rational(tb, u, order_unit(ta));
    if (!unit || !dg_equal(tb, *unit, order_unit(tb))) return false;
  }
  return true;
}

const char* intertwiner_outcome_name(IntertwinerOutcome o) {
  switch (o) {
    case IntertwinerOutcome::Infeasible: return "infeasible";
    case IntertwinerOutcome::Candidate: return "candidate";
    case IntertwinerOutcome::NotFoundWithinBounds: return "not_found_within_bounds";
  }
  return "not_found_within_bounds";
}

LinearSystem intertwiner_equations(const DimensionTriple& ta, const DimensionTriple& tb, bool pointed) {
  const RatMatrix c = intertwiner_system(ta.action, tb.action);
  const Eigen::Index na = ta.dim();
  const Eigen::Index nb = tb.dim();
  LinearSystem sys;
  if (!pointed) {
    sys.coefficients = c;
    sys.rhs = RatVector::Zero(c.rows());
    return sys;
  }
  const bool singular = determinant(tb.action) == 0;
  const IntMatrix push = singular ? matrix_power(tb.action, static_cast<unsigned>(nb)) : identity<Integer>(nb);
  sys.coefficients = RatMatrix::Zero(c.rows() + nb, nb * na);
  sys.coefficients.topRows(c.rows()) = c;
  sys.rhs = RatVector::Zero(c.rows() + nb);
  const IntVector target = push * IntVector::Ones(nb);
  for (Eigen::Index i = 0; i < nb; ++i) {
    for (Eigen::Index k = 0; k < nb; ++k)
      for (Eigen::Index j = 0; j < na; ++j) sys.coefficients(c.rows() + i, k * na + j) = Rational(push(i, k));
    sys.rhs(c.rows() + i) = Rational(target(i));
  }
  return sys;
}

namespace {

// 0, 1, -1, 2, -2, 1/2, -1/2, ... ordered by height max(|p|, q), then by
// denominator, then by |p|, positive first.
std::vector<Rational> grid_values(int coordinate_bound, int denominator_bound) {
  struct Entry {
    long p, q;
  };
  std::vector<Entry> entries{{0, 1}};
  for (long q = 1; q <= denominator_bound; ++q)
    for (long p = 1; p <= static_cast<long>(coordinate_bound) * q; ++p)
      if (std::gcd(p, q) == 1) {
        entries.push_back({p, q});
        entries.push_back({-p, q});
      }
  std::stable_sort(entries.begin() + 1, entries.end(), [](const Entry& x, const Entry& y) {
    const long hx = std::max(std::abs(x.p), x.q);
    const long hy = std::max(std::abs(y.p), y.q);
    if (hx != hy) return hx < hy;
    if (x.q != y.q) return x.q < y.q;
    if (std::abs(x.p) != std::abs(y.p)) return std::abs(x.p) < std::abs(y.p);
    return x.p > y.p;
  });
  std::vector<Rational> out;
  for (const Entry& e : entries) out.emplace_back(Integer(e.p), Integer(e.q));
  return out;
}

}  // namespace

IntertwinerSearchResult search_intertwiner(const DimensionTriple& ta, const DimensionTriple& tb, bool pointed,
                                           const IntertwinerSearchOptions& opts) {
  IntertwinerSearchResult result;
  result.system = intertwiner_equations(ta, tb, pointed);
  const AffineSolution sol = solve_affine_exact(result.system);
  if (!sol.feasible) {
    result.outcome = IntertwinerOutcome::Infeasible;
    result.certificate = sol.certificate;
    result.note = "the affine system has no rational solution";
    return result;
  }
  if (!pointed && sol.null_basis.empty()) {
    result.outcome = IntertwinerOutcome::Infeasible;
    result.note = "the only intertwiner is zero";
    return result;
  }
  if (ta.dim() != tb.dim()) {
    result.outcome = IntertwinerOutcome::NotFoundWithinBounds;
    result.note = "dimensions differ; only square candidates are enumerated";
    return result;
  }

  const auto values = grid_values(opts.coordinate_bound, opts.denominator_bound);
  const std::size_t f = sol.null_basis.size();
  const std::size_t levels = values.size();
  const Eigen::Index nb = tb.dim();
  const Eigen::Index na = ta.dim();

  auto try_point = [&](const std::vector<std::size_t>& idx) {
    RatVector u = sol.particular;
    for (std::size_t i = 0; i < f; ++i)
      if (values[idx[i]] != 0) u += values[idx[i]] * sol.null_basis[i];
    ++result.examined;
    if (is_zero(u)) return false;
    ModuleIsoCandidate cand{unflatten(u, nb, na), pointed};
    if (verify_module_iso(ta, tb, cand, opts.positivity)) {
      result.U = cand.U;
      return true;
    }
    return false;
  };

  auto next = [&](std::vector<std::size_t>& idx, std::size_t shell) {
    for (std::size_t pos = f; pos-- > 0;) {
      if (idx[pos] < shell) {
        ++idx[pos];
        std::fill(idx.begin() + static_cast<long>(pos) + 1, idx.end(), 0);
        return true;
      }
    }
    return false;
  };

  // Shells by the largest grid index used, lexicographic within a shell.
  const std::size_t shells = f == 0 ? 1 : levels;
  for (std::size_t shell = 0; shell < shells; ++shell) {
    std::vector<std::size_t> idx(f, 0);
    do {
      if (f != 0 && *std::max_element(idx.begin(), idx.end()) != shell) continue;
      if (result.examined >= opts.max_candidates) {
        result.outcome = IntertwinerOutcome::NotFoundWithinBounds;
        result.note = "candidate limit reached";
        return result;
      }
      if (try_point(idx)) {
        result.outcome = IntertwinerOutcome::Candidate;
        return result;
      }
    } while (f != 0 && next(idx, shell));
  }
  result.outcome = IntertwinerOutcome::NotFoundWithinBounds;
  result.note = "no candidate on the rational grid passed verification";
  return result;
}

DimensionTriple tensor_triple(const DimensionTriple& ta, const DimensionTriple& tb) {
  return DimensionTriple{kronecker(ta.action, tb.action)};
}

namespace {

IntVector kron_vec(const IntVector& a, const IntVector& b) {
  IntVector out(a.size() * b.size());
  for (Eigen::Index i = 0; i < a.size(); ++i) out.segment(i * b.size(), b.size()) = a(i) * b;
  return out;
}

}  // namespace

DimElement tensor_phi(const DimensionTriple& ta, const DimensionTriple& tb, const DimElement& x, const DimElement& y) {
  check_shape(ta, x);
  check_shape(tb, y);
  return DimElement{kron_vec(apply_power(ta.action, x.a, y.k), apply_power(tb.action, y.a, x.k)), x.k + y.k};
}

DimElement tensor_phi(const DimensionTriple& ta, const DimensionTriple& tb, const TensorSum& s) {
  const DimensionTriple t = tensor_triple(ta, tb);
  DimElement acc = dg_zero(t);
  for (const auto& [x, y] : s) acc = dg_add(t, acc, tensor_phi(ta, tb, x, y));
  return acc;
}

TensorSum tensor_psi(const DimensionTriple& ta, const DimensionTriple& tb, const DimElement& z) {
  const Eigen::Index m = ta.dim();
  const Eigen::Index n = tb.dim();
  if (z.a.size() != m * n) throw Error(ErrorCode::ShapeError, "element length differs from the product dimension");
  TensorSum out;
  for (Eigen::Index i = 0; i < m; ++i) {
    IntVector block = z.a.segment(i * n, n);
    if (is_zero(block)) continue;
    DimElement e{IntVector::Zero(m), z.k};
    e.a(i) = 1;
    out.emplace_back(e, DimElement{block, z.k});
  }
  return out;
}

bool tensor_equal(const DimensionTriple& ta, const DimensionTriple& tb, const TensorSum& x, const TensorSum& y) {
  unsigned long top_k = 0;
  unsigned long top_l = 0;
  for (const TensorSum* s : {&x, &y})
    for (const auto& [a, b] : *s) {
      check_shape(ta, a);
      check_shape(tb, b);
      top_k = std::max(top_k, a.k);
      top_l = std::max(top_l, b.k);
    }
  auto level = [&](const TensorSum& s) {
    IntVector acc = IntVector::Zero(ta.dim() * tb.dim());
    for (const auto& [a, b] : s)
      acc += kron_vec(apply_power(ta.action, a.a, top_k - a.k), apply_power(tb.action, b.a, top_l - b.k));
    return acc;
  };
  const IntVector diff = level(x) - level(y);
  const IntMatrix push = kronecker(matrix_power(ta.action, static_cast<unsigned>(ta.dim())),
                                   matrix_power(tb.action, static_cast<unsigned>(tb.dim())));
  return is_zero(IntVector(push * diff));
}

}  // namespace symdyn
