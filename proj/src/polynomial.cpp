#include "symdyn/polynomial.hpp"

#include "symdyn/error.hpp"

namespace symdyn {

RatPolynomial to_rational(const IntPolynomial& p) {
  std::vector<Rational> c;
  c.reserve(p.coefficients().size());
  for (const auto& v : p.coefficients()) c.emplace_back(v);
  return RatPolynomial(std::move(c));
}

std::pair<RatPolynomial, RatPolynomial> divmod(const RatPolynomial& a, const RatPolynomial& b) {
  if (b.is_zero()) throw Error(ErrorCode::ShapeError, "polynomial division by zero");
  std::vector<Rational> rem = a.coefficients();
  const int db = b.degree();
  if (a.degree() < db) return {RatPolynomial(), a};
  std::vector<Rational> quot(static_cast<std::size_t>(a.degree() - db + 1), Rational(0));
  const Rational lead = b.leading();
  for (int k = a.degree() - db; k >= 0; --k) {
    Rational factor = rem[static_cast<std::size_t>(k + db)] / lead;
    quot[static_cast<std::size_t>(k)] = factor;
    if (factor == 0) continue;
    for (int j = 0; j <= db; ++j)
      rem[static_cast<std::size_t>(k + j)] -= factor * b.coefficients()[static_cast<std::size_t>(j)];
  }
  rem.resize(static_cast<std::size_t>(db));
  return {RatPolynomial(std::move(quot)), RatPolynomial(std::move(rem))};
}

RatPolynomial monic(const RatPolynomial& p) {
  if (p.is_zero()) return p;
  return (Rational(1) / p.leading()) * p;
}

RatPolynomial gcd(RatPolynomial a, RatPolynomial b) {
  while (!b.is_zero()) {
    auto r = divmod(a, b).second;
    a = std::move(b);
    b = std::move(r);
  }
  return monic(a);
}

RatPolynomial squarefree_part(const RatPolynomial& p) {
  if (p.degree() <= 0) return monic(p);
  auto g = gcd(p, p.derivative());
  return monic(divmod(p, g).first);
}

SturmSequence::SturmSequence(const RatPolynomial& squarefree) {
  chain_.push_back(squarefree);
  if (squarefree.degree() <= 0) return;
  chain_.push_back(squarefree.derivative());
  while (true) {
    auto r = divmod(chain_[chain_.size() - 2], chain_.back()).second;
    if (r.is_zero()) break;
    chain_.push_back(-r);
  }
}

int SturmSequence::sign_changes(const Rational& at) const {
  int changes = 0;
  int last = 0;
  for (const auto& p : chain_) {
    Rational v = p(at);
    int s = v > 0 ? 1 : (v < 0 ? -1 : 0);
    if (s == 0) continue;
    if (last != 0 && s != last) ++changes;
    last = s;
  }
  return changes;
}

int SturmSequence::count_roots(const Rational& lo, const Rational& hi) const {
  if (!(lo < hi)) return 0;
  return sign_changes(lo) - sign_changes(hi);
}

}  // namespace symdyn
